#pragma once

#include <cstddef>
#include <vector>

#include "hilbperv/report.hpp"
#include "hilbperv/surface_ring.hpp"

namespace hilbperv {

/// Basis β^d_{p,i} adapted to the perverse filtration and signed orthonormal for the pairing.
struct FilteredBasis {
  struct Block {
    int perversity = 0;
    int degree = 0;
    std::vector<RingClass> elements;  // β^d_{p,1}, ..., β^d_{p,k}
  };

  std::vector<Block> blocks;      // nonempty blocks in lexicographic order of (p, d)
  std::vector<int> middle_signs;  // <β_i, β_i> for the middle block (p, d) = (1, 2)

  std::size_t size() const;
  const Block* find(int perversity, int degree) const;
};

/// Gram-Schmidt construction in lexicographic order of (p, d).
/// Throws ModeError for rings without a pairing and DataError when a graded pairing degenerates.
FilteredBasis filtered_basis(const SurfaceRing& ring);

/// Evaluates every pairing of the basis. Complementary elements (p + p' = 2, d + d' = 4, same index)
/// pair to ±1 and everything else to 0. Outside the middle block the value is +1 with the later block
/// of the lexicographic order in the first slot, and the Koszul sign (-1)^{d d'} in the other order.
CheckReport check_signed_orthonormal(const SurfaceRing& ring, const FilteredBasis& basis);

}  // namespace hilbperv
