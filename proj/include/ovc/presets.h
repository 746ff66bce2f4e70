#pragma once

// Named scheme collections for the tradeoff sweeps.
//
// "k1000-grids" (k = 1000, deterministic): chunked schemes for every divisor class
// size >= 25, plus two-layer diagonal grids at matched class sizes. Each
// grid pairs with the chunked scheme of equal class size to expose the
// overhead reduction at equal decoding bound. The (d=500, L=2) grid is
// degenerate by construction — two size-500 classes covering 1000 packets
// must partition them, so it coincides with chunked-d500.
//
// "k1024-mixed" (k = 1024): two-layer diagonal grids with class sizes d in
// {8, 16, 32} and class counts L in {200, 86, 38}, each also extended with
// one large random class of size 512/256/128 (mixed scheme), plus matching
// chunked schemes. Many small classes keep the per-class draw dilution
// 1/(L+1) low; that is what lets the rarely-drawn big class pay for itself
// by bridging the decoding endgame. The seed drives the mixed schemes'
// big-class draw only.

#include <cstdint>
#include <string>
#include <vector>

#include "ovc/sim.h"

namespace ovc {

std::vector<NamedScheme> preset_k1000_grids();
std::vector<NamedScheme> preset_k1024_mixed(std::uint64_t seed);

// Dispatch by name ("k1000-grids", "k1024-mixed"); unknown names raise SchemeError.
std::vector<NamedScheme> load_preset(const std::string& name, std::uint64_t seed);

struct SchemePair {
  std::string overlapped;  // id of the overlapping-class scheme
  std::string baseline;    // id of the non-overlapping baseline
};
std::vector<SchemePair> preset_k1000_grid_pairs();
std::vector<SchemePair> preset_k1024_mixed_pairs();

}  // namespace ovc
