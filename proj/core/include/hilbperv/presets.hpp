#pragma once

#include <string>
#include <vector>

#include "hilbperv/surface_ring.hpp"

namespace hilbperv {

/// Names accepted by preset(), in catalog order.
std::vector<std::string> preset_names();

/// The five open families a0, d4, e6, e7, e8 and the compact surfaces k3, abelian.
/// Throws UsageError for unknown names.
SurfaceRing preset(const std::string& name);

/// Ring document a preset is loaded from.
std::string preset_document(const std::string& name);

}  // namespace hilbperv
