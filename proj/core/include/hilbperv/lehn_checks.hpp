#pragma once

#include "hilbperv/check_options.hpp"
#include "hilbperv/report.hpp"
#include "hilbperv/wreath.hpp"

namespace hilbperv {

/// 1·id is a two-sided unit on every basis element.
CheckReport check_unit(const WreathAlgebra& algebra);

/// Every term of x·y has degree deg x + deg y, over all basis pairs.
CheckReport check_degree_additivity(const WreathAlgebra& algebra, const CheckOptions& options = {});

/// (x·y)·z = x·(y·z) over basis triples.
///
/// Exhaustive mode skips triples whose degree exceeds the top degree (both sides vanish), triples
/// containing the unit (covered by the unit law, which is checked first) and triples that are not
/// minimal in their 𝔖ₙ-orbit (the associator is equivariant; see check_equivariance).
CheckReport check_associativity(const WreathAlgebra& algebra, const CheckOptions& options = {});

/// τ·(x·y) = (τ·x)·(τ·y).
///
/// Exhaustive mode verifies that the action is a group action on the basis, then checks the product
/// for the generators (1 2) and (1 2 … n) over all basis pairs.
CheckReport check_equivariance(const WreathAlgebra& algebra, const CheckOptions& options = {});

/// X·Y = (-1)^{deg X deg Y} Y·X on the invariant subalgebra, for orbit sums X, Y of basis elements.
CheckReport check_graded_commutativity(const WreathAlgebra& algebra, const CheckOptions& options = {});

/// x·y = (-1)^{deg x deg y} (σ·y)·x for x in the σ-summand: the twisted commutativity of A{𝔖ₙ}.
CheckReport check_twisted_commutativity(const WreathAlgebra& algebra, const CheckOptions& options = {});

/// Top cohomological degree of A{𝔖ₙ}: 4n for compact rings, 2n for open ones.
int top_degree(const WreathAlgebra& algebra);

}  // namespace hilbperv
