#pragma once

#include <string_view>
#include <vector>

namespace hilbperv::detail {

struct PresetDocument {
  std::string_view name;
  std::string_view text;
};

const std::vector<PresetDocument>& preset_documents();

}  // namespace hilbperv::detail
