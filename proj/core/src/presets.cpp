#include "hilbperv/presets.hpp"

#include <map>
#include <mutex>

#include "hilbperv/errors.hpp"
#include "hilbperv/ring_io.hpp"
#include "preset_data.hpp"

namespace hilbperv {
namespace {

const detail::PresetDocument& find_document(const std::string& name) {
  for (const auto& doc : detail::preset_documents()) {
    if (doc.name == name) return doc;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace

std::vector<std::string> preset_names() { return {"a0", "d4", "e6", "e7", "e8", "k3", "abelian"}; }

SurfaceRing preset(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, SurfaceRing> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  SurfaceRing ring = load_ring(find_document(name).text);
  cache.emplace(name, ring);
  return ring;
}

std::string preset_document(const std::string& name) { return std::string(find_document(name).text); }

}  // namespace hilbperv
