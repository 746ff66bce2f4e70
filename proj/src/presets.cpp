#include "ovc/presets.h"

#include "ovc/errors.h"

namespace ovc {

namespace {

NamedScheme chunked_entry(std::uint32_t k, std::uint32_t d) {
  return {"chunked-d" + std::to_string(d), make_chunked(k, d)};
}

NamedScheme grid_entry(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes) {
  const std::uint32_t full_layers = k / d;
  std::vector<std::uint32_t> angles;
  for (std::uint32_t used = 0; used < num_classes; used += full_layers)
    angles.push_back(angles.empty() ? 0u : 1u);
  return {"grid-d" + std::to_string(d) + "-L" + std::to_string(num_classes),
          make_diag_grid(k, d, num_classes, angles)};
}

}  // namespace

std::vector<NamedScheme> preset_k1000_grids() {
  constexpr std::uint32_t k = 1000;
  std::vector<NamedScheme> out;
  for (std::uint32_t d : {25u, 40u, 50u, 100u, 125u, 200u, 250u, 500u, 1000u})
    out.push_back(chunked_entry(k, d));
  out.push_back(grid_entry(k, 50, 28));
  out.push_back(grid_entry(k, 100, 12));
  out.push_back(grid_entry(k, 125, 9));
  out.push_back(grid_entry(k, 500, 2));
  return out;
}

std::vector<SchemePair> preset_k1000_grid_pairs() {
  return {{"grid-d50-L28", "chunked-d50"},
          {"grid-d100-L12", "chunked-d100"},
          {"grid-d125-L9", "chunked-d125"},
          {"grid-d500-L2", "chunked-d500"}};
}

std::vector<NamedScheme> preset_k1024_mixed(std::uint64_t seed) {
  constexpr std::uint32_t k = 1024;
  std::vector<NamedScheme> out;
  for (std::uint32_t d : {8u, 16u, 32u}) out.push_back(chunked_entry(k, d));
  const struct {
    std::uint32_t d, num_classes, big;
  } grids[] = {{8, 200, 512}, {16, 86, 256}, {32, 38, 128}};
  std::uint64_t salt = 1;
  for (const auto& g : grids) {
    NamedScheme base = grid_entry(k, g.d, g.num_classes);
    NamedScheme mixed{"mixed-d" + std::to_string(g.d) + "-L" + std::to_string(g.num_classes) +
                          "-big" + std::to_string(g.big),
                      make_mixed(base.scheme, g.big, seed ^ salt)};
    ++salt;
    out.push_back(std::move(base));
    out.push_back(std::move(mixed));
  }
  return out;
}

std::vector<SchemePair> preset_k1024_mixed_pairs() {
  return {{"mixed-d8-L200-big512", "grid-d8-L200"},
          {"mixed-d16-L86-big256", "grid-d16-L86"},
          {"mixed-d32-L38-big128", "grid-d32-L38"}};
}

std::vector<NamedScheme> load_preset(const std::string& name, std::uint64_t seed) {
  if (name == "k1000-grids") return preset_k1000_grids();
  if (name == "k1024-mixed") return preset_k1024_mixed(seed);
  throw SchemeError("unknown preset \"" + name + "\" (available: k1000-grids, k1024-mixed)");
}

}  // namespace ovc
