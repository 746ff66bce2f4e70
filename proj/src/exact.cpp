#include "ovc/exact.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ovc/errors.h"
#include "ovc/sim.h"

namespace ovc {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

double Probability::to_double() const {
  return cpp_rational(num, den).convert_to<double>();
}

std::string format_ratio(const Probability& p) {
  return p.num.str() + "/" + p.den.str();
}

namespace {

constexpr double kGuardLimit = 1e7;

cpp_int binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  cpp_int v = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    v *= static_cast<unsigned long long>(n - r + i);
    v /= static_cast<unsigned long long>(i);
  }
  return v;
}

// Success test on a packed rank vector, memoized. The cascade closure of the
// clamped innovative counts decides success.
class SuccessOracle {
 public:
  SuccessOracle(const ClassScheme& scheme, const SchemeIndex& index)
      : receiver_(scheme, index), digits_(scheme.num_classes()) {
    radix_.reserve(scheme.num_classes());
    for (std::uint32_t l = 0; l < scheme.num_classes(); ++l)
      radix_.push_back(scheme.class_size(l) + std::uint64_t(1));
  }

  bool operator()(std::uint64_t packed) {
    auto it = memo_.find(packed);
    if (it != memo_.end()) return it->second;
    std::uint64_t rest = packed;
    for (std::size_t l = 0; l < radix_.size(); ++l) {
      digits_[l] = static_cast<std::uint32_t>(rest % radix_[l]);
      rest /= radix_[l];
    }
    receiver_.set_state(digits_);
    receiver_.cascade();
    const bool ok = receiver_.complete();
    memo_.emplace(packed, ok);
    return ok;
  }

 private:
  IdealReceiver receiver_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::uint32_t> digits_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace

Probability exact_success_prob(const ClassScheme& scheme, std::uint64_t n, ExactMode mode,
                               std::span<const std::uint32_t> start_ranks) {
  const std::size_t L = scheme.num_classes();
  if (L == 0) throw SchemeError("exact engine: scheme has no classes");
  for (double p : scheme.probs)
    if (std::abs(p - 1.0 / static_cast<double>(L)) > 1e-9)
      throw SchemeError("exact engine requires uniform class probabilities");
  if (!start_ranks.empty() && start_ranks.size() != L)
    throw std::invalid_argument("exact_success_prob: start_ranks length mismatch");

  // State-space guard: prod (d_l + 1) * 2^k must stay within the configured
  // budget; evaluated in log space to avoid overflow.
  double log2_states = static_cast<double>(scheme.k);
  for (std::size_t l = 0; l < L; ++l)
    log2_states += std::log2(static_cast<double>(scheme.class_size(l)) + 1.0);
  if (log2_states > std::log2(kGuardLimit))
    throw GuardError("exact engine: state-space estimate 2^" + std::to_string(log2_states) +
                     " exceeds the 1e7 budget; reduce k or class sizes");

  // Mixed-radix packing of rank vectors: digit l in [0, d_l], stride prod of
  // earlier radices. The guard keeps the packed range far below 2^64.
  std::vector<std::uint64_t> stride(L);
  std::uint64_t span = 1;
  for (std::size_t l = 0; l < L; ++l) {
    stride[l] = span;
    span *= scheme.class_size(l) + 1;
  }

  std::vector<std::uint32_t> start(L, 0);
  for (std::size_t l = 0; l < start_ranks.size(); ++l)
    start[l] = std::min(start_ranks[l], scheme.class_size(l));
  std::uint64_t start_packed = 0;
  for (std::size_t l = 0; l < L; ++l) start_packed += stride[l] * start[l];

  const SchemeIndex index(scheme);
  SuccessOracle success(scheme, index);

  if (mode == ExactMode::sequential) {
    // Distribution over rank vectors after t receptions; counts out of L^t.
    std::unordered_map<std::uint64_t, cpp_int> dist;
    dist.emplace(start_packed, 1);
    std::vector<std::uint32_t> digits(L);
    for (std::uint64_t t = 0; t < n; ++t) {
      std::unordered_map<std::uint64_t, cpp_int> next;
      next.reserve(dist.size() * 2);
      for (const auto& [packed, cnt] : dist) {
        std::uint64_t rest = packed;
        for (std::size_t l = 0; l < L; ++l) {
          const std::uint64_t radix = scheme.class_size(l) + std::uint64_t(1);
          digits[l] = static_cast<std::uint32_t>(rest % radix);
          rest /= radix;
        }
        std::uint64_t wasted = 0;
        for (std::size_t l = 0; l < L; ++l) {
          if (digits[l] < scheme.class_size(l))
            next[packed + stride[l]] += cnt;
          else
            ++wasted;
        }
        if (wasted != 0) next[packed] += cnt * static_cast<unsigned long long>(wasted);
      }
      dist = std::move(next);
    }
    Probability out;
    out.den = boost::multiprecision::pow(cpp_int(static_cast<unsigned long long>(L)),
                                         static_cast<unsigned>(n));
    out.num = 0;
    for (const auto& [packed, cnt] : dist)
      if (success(packed)) out.num += cnt;
    return out;
  }

  // Multiset mode: every unordered reception multiset equally likely.
  const cpp_int total = binomial(static_cast<std::uint64_t>(L) + n - 1, n);
  if (total > static_cast<unsigned long long>(kGuardLimit))
    throw GuardError("exact engine: " + total.str() +
                     " reception multisets exceed the 1e7 enumeration budget");
  Probability out;
  out.den = total;
  out.num = 0;
  cpp_int enumerated = 0;
  std::vector<std::uint32_t> counts(L, 0);
  // Depth-first over class multiplicities.
  auto rec = [&](auto&& self, std::size_t l, std::uint64_t left) -> void {
    if (l + 1 == L) {
      counts[l] = static_cast<std::uint32_t>(left);
      std::uint64_t packed = 0;
      for (std::size_t j = 0; j < L; ++j) {
        const std::uint32_t r = std::min(start[j] + counts[j], scheme.class_size(j));
        packed += stride[j] * r;
      }
      ++enumerated;
      if (success(packed)) ++out.num;
      return;
    }
    for (std::uint64_t c = 0; c <= left; ++c) {
      counts[l] = static_cast<std::uint32_t>(c);
      self(self, l + 1, left - c);
    }
  };
  rec(rec, 0, n);
  if (enumerated != total)
    throw std::logic_error("exact engine: multiset enumeration count mismatch");
  return out;
}

}  // namespace ovc
