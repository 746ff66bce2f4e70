#pragma once

// Class schemes: the combinatorial layer of the code.
//
// A scheme over k data packets is a list of L classes — subsets of
// {0..k-1} — plus a sampling probability per class. Encoded packets mix only
// the members of one class, so the class structure fixes both the decoding
// cost (small classes = cheap elimination) and the coupling between classes
// (overlaps let a decoded class unlock others by back-substitution).
//
// Constructors provided here:
//   chunked       non-overlapping contiguous blocks (the classic baseline)
//   rect_grid     row classes + column classes of a d' x d arrangement
//   diag_grid     layered partitions; layer s shifts block i by an "angle"
//                 theta_s, wrapping modulo the layer count, so consecutive
//                 layers cut across each other
//   random_layer  layer 0 is the identity partition, further layers are
//                 uniform random permutations of {0..k-1} cut into blocks
//   mixed         a base scheme plus one large uniformly drawn class that
//                 serves as a bridge once most packets are known
//
// All indices are 0-based and every class is stored sorted ascending.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ovc {

struct ClassScheme {
  std::uint32_t k = 0;
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<double> probs;

  std::size_t num_classes() const { return classes.size(); }
  std::uint32_t class_size(std::size_t l) const {
    return static_cast<std::uint32_t>(classes[l].size());
  }
  std::uint32_t max_class_size() const;

  bool operator==(const ClassScheme&) const = default;
};

ClassScheme make_chunked(std::uint32_t k, std::uint32_t d);
ClassScheme make_rect_grid(std::uint32_t k, std::uint32_t d, std::uint32_t d_prime);

// Diagonal grid with an explicit angle set: layer s uses angle angles[s].
// Requires d | k; with l0 = k / d blocks per layer, class l (member j) is
// packet ((l % l0 + j * angles[l / l0]) * d + j) mod k. Layer 0 with angle 0
// is the chunked partition; nonzero angles must be coprime with l0.
ClassScheme make_diag_grid(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes,
                           const std::vector<std::uint32_t>& angles);

// Angle set {0, theta, 2*theta, ...} reduced modulo the layer count.
ClassScheme make_diag_grid_angle(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes,
                                 std::uint32_t theta);

ClassScheme make_random_layer(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes,
                              std::uint64_t seed);

// Base scheme plus one uniformly random class of size big_size; class
// probabilities are reset to uniform over the enlarged list.
ClassScheme make_mixed(const ClassScheme& base, std::uint32_t big_size, std::uint64_t seed);

// Structural validation. Returns human-readable violations; empty = valid.
// min_class_size is the deployment floor for class sizes (1 = no floor).
std::vector<std::string> validate_scheme(const ClassScheme& s, std::uint32_t min_class_size = 1);

struct OverlapReport {
  std::vector<std::vector<std::uint32_t>> pairwise;  // |C_a intersect C_b|
  std::vector<std::uint32_t> packet_degree;          // classes covering each packet
  std::uint32_t max_offdiag = 0;
  std::uint32_t min_degree = 0;
  std::uint32_t max_degree = 0;
};

OverlapReport overlap_report(const ClassScheme& s);

// Worst-case decoding cost in field multiplications per data symbol,
// maximizing per-class residual work subject to every packet being solved
// exactly once: sort class sizes descending, take the smallest prefix t
// covering k, then bound = d_t + (1/k) * sum_{i<t} d_i (d_i - d_t).
// The scaled variant returns k * bound as an exact integer.
double complexity_bound(const ClassScheme& s);
std::uint64_t complexity_bound_scaled(const ClassScheme& s);

// Per-packet header cost in symbols of an alphabet of size q: a class index
// (at least one symbol) plus one coding coefficient per member of the
// largest class.
std::uint64_t header_cost(const ClassScheme& s, std::uint64_t q);

// JSON round-trip: {"k": ..., "classes": [[...], ...], "probs": [...]}.
std::string scheme_to_json(const ClassScheme& s);
ClassScheme scheme_from_json(const std::string& text);
ClassScheme load_scheme_file(const std::string& path);
void save_scheme_file(const ClassScheme& s, const std::string& path);

}  // namespace ovc
