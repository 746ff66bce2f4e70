#include "ovc/scheme.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ovc/errors.h"
#include "ovc/rng.h"

namespace ovc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw SchemeError(msg);
}

std::vector<double> uniform_probs(std::size_t l) {
  return std::vector<double>(l, 1.0 / static_cast<double>(l));
}

// First `take` entries of a seeded uniform permutation of {0..n-1}
// (partial Fisher-Yates).
std::vector<std::uint32_t> random_subset(std::uint32_t n, std::uint32_t take, Pcg32& rng) {
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::uint32_t i = 0; i < take; ++i) {
    const std::uint32_t j = i + rng.bounded(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

}  // namespace

std::uint32_t ClassScheme::max_class_size() const {
  std::uint32_t m = 0;
  for (const auto& c : classes) m = std::max<std::uint32_t>(m, static_cast<std::uint32_t>(c.size()));
  return m;
}

ClassScheme make_chunked(std::uint32_t k, std::uint32_t d) {
  require(k > 0 && d > 0, "chunked: k and d must be positive");
  require(k % d == 0, "chunked: class size must divide k");
  ClassScheme s;
  s.k = k;
  const std::uint32_t l = k / d;
  s.classes.resize(l);
  for (std::uint32_t i = 0; i < l; ++i) {
    s.classes[i].resize(d);
    std::iota(s.classes[i].begin(), s.classes[i].end(), i * d);
  }
  s.probs = uniform_probs(l);
  return s;
}

ClassScheme make_rect_grid(std::uint32_t k, std::uint32_t d, std::uint32_t d_prime) {
  require(k > 0 && d > 0 && d_prime > 0, "rect_grid: parameters must be positive");
  require(k == d * d_prime, "rect_grid: k must equal d * d_prime");
  ClassScheme s;
  s.k = k;
  // Row classes: d' contiguous blocks of size d.
  for (std::uint32_t i = 0; i < d_prime; ++i) {
    std::vector<std::uint32_t> c(d);
    std::iota(c.begin(), c.end(), i * d);
    s.classes.push_back(std::move(c));
  }
  // Column classes: one member out of each block, stride d.
  for (std::uint32_t j = 0; j < d; ++j) {
    std::vector<std::uint32_t> c(d_prime);
    for (std::uint32_t i = 0; i < d_prime; ++i) c[i] = i * d + j;
    s.classes.push_back(std::move(c));
  }
  s.probs = uniform_probs(s.classes.size());
  return s;
}

ClassScheme make_diag_grid(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes,
                           const std::vector<std::uint32_t>& angles) {
  require(k > 0 && d > 0, "diag_grid: k and d must be positive");
  require(k % d == 0, "diag_grid: class size must divide k");
  const std::uint32_t l0 = k / d;
  require(num_classes >= 1, "diag_grid: need at least one class");
  require(num_classes <= l0 * l0, "diag_grid: class count exceeds l0^2");
  const std::uint32_t layers = (num_classes + l0 - 1) / l0;
  require(angles.size() == layers, "diag_grid: need exactly ceil(L / l0) angles");
  for (const std::uint32_t th : angles) {
    require(th < l0, "diag_grid: angles must be reduced modulo l0");
    require(th == 0 || std::gcd(th, l0) == 1,
            "diag_grid: nonzero angles must be coprime with l0");
  }
  ClassScheme s;
  s.k = k;
  s.classes.resize(num_classes);
  for (std::uint32_t l = 0; l < num_classes; ++l) {
    const std::uint32_t i = l % l0;
    const std::uint32_t theta = angles[l / l0];
    auto& c = s.classes[l];
    c.resize(d);
    for (std::uint32_t j = 0; j < d; ++j)
      c[j] = ((i + static_cast<std::uint64_t>(j) * theta) * d + j) % k;
    std::sort(c.begin(), c.end());
  }
  s.probs = uniform_probs(num_classes);
  return s;
}

ClassScheme make_diag_grid_angle(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes,
                                 std::uint32_t theta) {
  require(d > 0 && k % d == 0, "diag_grid: class size must divide k");
  const std::uint32_t l0 = k / d;
  const std::uint32_t layers = (num_classes + l0 - 1) / l0;
  std::vector<std::uint32_t> angles(layers);
  for (std::uint32_t sidx = 0; sidx < layers; ++sidx)
    angles[sidx] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(sidx) * theta) % l0);
  return make_diag_grid(k, d, num_classes, angles);
}

ClassScheme make_random_layer(std::uint32_t k, std::uint32_t d, std::uint32_t num_classes,
                              std::uint64_t seed) {
  require(k > 0 && d > 0, "random_layer: k and d must be positive");
  require(k % d == 0, "random_layer: class size must divide k");
  const std::uint32_t l0 = k / d;
  require(num_classes >= 1, "random_layer: need at least one class");
  ClassScheme s;
  s.k = k;
  const std::uint32_t layers = (num_classes + l0 - 1) / l0;
  std::vector<std::uint32_t> perm(k);
  for (std::uint32_t layer = 0; layer < layers; ++layer) {
    std::iota(perm.begin(), perm.end(), 0u);
    if (layer > 0) {
      // Layer 0 is the identity partition; each further layer gets its own
      // deterministic stream so layers are independent of one another.
      Pcg32 rng(seed, layer);
      for (std::uint32_t i = k - 1; i > 0; --i) {
        const std::uint32_t j = rng.bounded(i + 1);
        std::swap(perm[i], perm[j]);
      }
    }
    for (std::uint32_t b = 0; b < l0; ++b) {
      const std::uint32_t l = layer * l0 + b;
      if (l >= num_classes) break;
      std::vector<std::uint32_t> c(perm.begin() + b * d, perm.begin() + (b + 1) * d);
      std::sort(c.begin(), c.end());
      s.classes.push_back(std::move(c));
    }
  }
  s.probs = uniform_probs(num_classes);
  return s;
}

ClassScheme make_mixed(const ClassScheme& base, std::uint32_t big_size, std::uint64_t seed) {
  require(!base.classes.empty(), "mixed: base scheme has no classes");
  std::uint32_t d_min = base.k;
  for (const auto& c : base.classes)
    d_min = std::min<std::uint32_t>(d_min, static_cast<std::uint32_t>(c.size()));
  require(big_size >= d_min && big_size <= base.k,
          "mixed: big class size must lie in [min class size, k]");
  ClassScheme s = base;
  Pcg32 rng(seed, 0x6D69786564ULL);  // stream tag: "mixed"
  auto big = random_subset(base.k, big_size, rng);
  std::sort(big.begin(), big.end());
  s.classes.push_back(std::move(big));
  s.probs = uniform_probs(s.classes.size());
  return s;
}

std::vector<std::string> validate_scheme(const ClassScheme& s, std::uint32_t min_class_size) {
  std::vector<std::string> out;
  if (s.k == 0) out.push_back("k must be positive");
  if (s.classes.empty()) out.push_back("scheme has no classes");
  if (s.probs.size() != s.classes.size())
    out.push_back("probability list length differs from class count");

  std::vector<bool> covered(s.k, false);
  std::uint64_t total_size = 0;
  for (std::size_t l = 0; l < s.classes.size(); ++l) {
    const auto& c = s.classes[l];
    const std::string tag = "class " + std::to_string(l);
    if (c.empty()) out.push_back(tag + ": empty");
    if (!std::is_sorted(c.begin(), c.end()) ||
        std::adjacent_find(c.begin(), c.end()) != c.end())
      out.push_back(tag + ": members must be strictly ascending");
    for (const auto idx : c) {
      if (idx >= s.k)
        out.push_back(tag + ": member " + std::to_string(idx) + " out of range");
      else
        covered[idx] = true;
    }
    if (c.size() < min_class_size)
      out.push_back(tag + ": size " + std::to_string(c.size()) + " below minimum " +
                    std::to_string(min_class_size));
    total_size += c.size();
  }
  for (std::uint32_t i = 0; i < s.k; ++i)
    if (!covered[i]) {
      out.push_back("packet " + std::to_string(i) + " not covered by any class");
      break;  // one representative is enough
    }
  if (total_size < s.k) out.push_back("class sizes sum below k");

  double p_sum = 0;
  bool p_ok = true;
  for (const double p : s.probs) {
    if (!(p >= 0.0)) {
      out.push_back("negative class probability");
      p_ok = false;
      break;
    }
    p_sum += p;
  }
  if (p_ok && !s.probs.empty() && std::abs(p_sum - 1.0) > 1e-12)
    out.push_back("class probabilities must sum to 1");
  return out;
}

OverlapReport overlap_report(const ClassScheme& s) {
  const std::size_t l = s.classes.size();
  OverlapReport rep;
  rep.pairwise.assign(l, std::vector<std::uint32_t>(l, 0));
  for (std::size_t a = 0; a < l; ++a) {
    rep.pairwise[a][a] = static_cast<std::uint32_t>(s.classes[a].size());
    for (std::size_t b = a + 1; b < l; ++b) {
      // Sorted-merge intersection count.
      std::uint32_t n = 0;
      auto ia = s.classes[a].begin(), ib = s.classes[b].begin();
      while (ia != s.classes[a].end() && ib != s.classes[b].end()) {
        if (*ia < *ib)
          ++ia;
        else if (*ib < *ia)
          ++ib;
        else {
          ++n, ++ia, ++ib;
        }
      }
      rep.pairwise[a][b] = rep.pairwise[b][a] = n;
      rep.max_offdiag = std::max(rep.max_offdiag, n);
    }
  }
  rep.packet_degree.assign(s.k, 0);
  for (const auto& c : s.classes)
    for (const auto idx : c)
      if (idx < s.k) ++rep.packet_degree[idx];
  if (s.k > 0) {
    const auto [mn, mx] = std::minmax_element(rep.packet_degree.begin(), rep.packet_degree.end());
    rep.min_degree = *mn;
    rep.max_degree = *mx;
  }
  return rep;
}

std::uint64_t complexity_bound_scaled(const ClassScheme& s) {
  std::vector<std::uint64_t> sizes;
  sizes.reserve(s.classes.size());
  for (const auto& c : s.classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::uint64_t prefix = 0;
  std::size_t t = 0;
  while (t < sizes.size() && prefix < s.k) prefix += sizes[t++];
  require(prefix >= s.k, "complexity_bound: class sizes sum below k");
  const std::uint64_t d_t = sizes[t - 1];
  std::uint64_t excess = 0;
  for (std::size_t i = 0; i + 1 < t; ++i) excess += sizes[i] * (sizes[i] - d_t);
  return static_cast<std::uint64_t>(s.k) * d_t + excess;
}

double complexity_bound(const ClassScheme& s) {
  return static_cast<double>(complexity_bound_scaled(s)) / static_cast<double>(s.k);
}

std::uint64_t header_cost(const ClassScheme& s, std::uint64_t q) {
  require(q >= 2, "header_cost: alphabet size must be at least 2");
  const std::uint64_t l = s.classes.size();
  std::uint64_t symbols = 1, reach = q;
  while (reach < l) {
    reach *= q;
    ++symbols;
  }
  return symbols + s.max_class_size();
}

std::string scheme_to_json(const ClassScheme& s) {
  nlohmann::json j;
  j["k"] = s.k;
  j["classes"] = s.classes;
  j["probs"] = s.probs;
  return j.dump(2) + "\n";
}

ClassScheme scheme_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("scheme JSON parse error: ") + e.what());
  }
  ClassScheme s;
  try {
    j.at("k").get_to(s.k);
    j.at("classes").get_to(s.classes);
    j.at("probs").get_to(s.probs);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("scheme JSON shape error: ") + e.what());
  }
  return s;
}

ClassScheme load_scheme_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scheme file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scheme_from_json(buf.str());
}

void save_scheme_file(const ClassScheme& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write scheme file: " + path);
  out << scheme_to_json(s);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace ovc
