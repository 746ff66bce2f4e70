#pragma once

// Exact success-probability engine (no sampling).
//
// Computes the probability that an idealized receiver fully recovers all k
// data packets after exactly n receptions, classes drawn uniformly. Success
// depends only on the per-class innovative counts (clamped at d_l) plus the
// terminal back-substitution cascade, and is monotone in those counts, so
// "complete within n" and "complete given the counts at n" coincide.
//
// Two reception models:
//   sequential — receptions are an i.i.d. ordered sequence; denominator L^n.
//   multiset   — all C(L+n-1, n) unordered class multisets equally likely.
//
// Results are exact rationals kept UNREDUCED (e.g. "4/10", not "2/5") so
// they can be compared against published worked examples digit for digit.
//
// Guards (GuardError): the state-space bound  prod_l (d_l + 1) * 2^k <= 1e7
// applies to both modes; the multiset mode additionally requires
// C(L+n-1, n) <= 1e7 enumerated multisets. Non-uniform class probabilities
// are rejected with SchemeError.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>

#include "ovc/scheme.h"

namespace ovc {

struct Probability {
  boost::multiprecision::cpp_int num;
  boost::multiprecision::cpp_int den;

  double to_double() const;
  bool operator==(const Probability&) const = default;
};

// "num/den", unreduced.
std::string format_ratio(const Probability& p);

enum class ExactMode { sequential, multiset };

// start_ranks (optional, length L) seeds per-class innovative counts before
// the n receptions, clamped at d_l; used to replay worked examples.
Probability exact_success_prob(const ClassScheme& scheme, std::uint64_t n, ExactMode mode,
                               std::span<const std::uint32_t> start_ranks = {});

}  // namespace ovc
