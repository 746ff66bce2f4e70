#include "ovc/sim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ovc/codec.h"

namespace ovc {

SchemeIndex::SchemeIndex(const ClassScheme& s) : classes_of_packet(s.k) {
  for (std::uint32_t l = 0; l < s.num_classes(); ++l)
    for (auto p : s.classes[l]) classes_of_packet[p].push_back(l);
}

IdealReceiver::IdealReceiver(const ClassScheme& scheme, const SchemeIndex& index)
    : scheme_(&scheme),
      index_(&index),
      rank_(scheme.num_classes(), 0),
      members_known_(scheme.num_classes(), 0),
      frozen_(scheme.num_classes(), 0),
      decoded_(scheme.num_classes(), 0),
      recovered_(scheme.k, 0) {}

bool IdealReceiver::receive(std::uint32_t cls) {
  ++receptions_;
  if (decoded_[cls]) return false;
  if (rank_[cls] + members_known_[cls] >= scheme_->class_size(cls)) return false;
  ++rank_[cls];
  return true;
}

void IdealReceiver::freeze_display(std::uint32_t l, std::uint32_t value) {
  frozen_[l] = std::min(scheme_->class_size(l), value);
}

std::uint32_t IdealReceiver::cascade() {
  std::uint32_t newly = 0;
  for (;;) {
    const std::uint32_t L = scheme_->num_classes();
    std::uint32_t best = L, best_residual = 0;
    for (std::uint32_t l = 0; l < L; ++l) {
      if (decoded_[l]) continue;
      const std::uint32_t d = scheme_->class_size(l);
      if (rank_[l] + members_known_[l] < d) continue;
      const std::uint32_t residual = d - members_known_[l];
      if (best == L || residual < best_residual) {
        best = l;
        best_residual = residual;
      }
    }
    if (best == L) break;

    const std::uint32_t d = scheme_->class_size(best);
    ops_scaled_ += static_cast<std::uint64_t>(best_residual) * d;
    residual_sum_ += best_residual;
    decoded_[best] = 1;
    freeze_display(best, rank_[best] + members_known_[best]);

    for (auto p : scheme_->classes[best]) {
      if (recovered_[p]) continue;
      recovered_[p] = 1;
      ++recovered_total_;
      ++newly;
      for (auto c : index_->classes_of_packet[p]) {
        if (c == best || decoded_[c]) continue;
        ++members_known_[c];
        if (members_known_[c] == scheme_->class_size(c)) {
          // Every member arrived from other classes: decoded for free. The
          // displayed state freezes without counting the completing packet.
          decoded_[c] = 1;
          freeze_display(c, rank_[c] + members_known_[c] - 1);
        }
      }
    }
  }
  return newly;
}

void IdealReceiver::set_state(std::span<const std::uint32_t> ranks) {
  if (ranks.size() != scheme_->num_classes())
    throw std::invalid_argument("set_state: rank vector length mismatch");
  std::fill(members_known_.begin(), members_known_.end(), 0);
  std::fill(frozen_.begin(), frozen_.end(), 0);
  std::fill(decoded_.begin(), decoded_.end(), 0);
  std::fill(recovered_.begin(), recovered_.end(), 0);
  recovered_total_ = 0;
  receptions_ = 0;
  ops_scaled_ = 0;
  residual_sum_ = 0;
  for (std::uint32_t l = 0; l < scheme_->num_classes(); ++l) {
    rank_[l] = std::min(ranks[l], scheme_->class_size(l));
    receptions_ += rank_[l];
  }
}

std::vector<std::uint32_t> IdealReceiver::state() const {
  std::vector<std::uint32_t> out(scheme_->num_classes());
  for (std::uint32_t l = 0; l < scheme_->num_classes(); ++l)
    out[l] = decoded_[l] ? frozen_[l]
                         : std::min(scheme_->class_size(l), rank_[l] + members_known_[l]);
  return out;
}

bool IdealReceiver::would_complete() const {
  IdealReceiver probe(*this);
  probe.cascade();
  return probe.complete();
}

TrialResult run_trial(const ClassScheme& scheme, const SchemeIndex& index, Pcg32& rng,
                      CascadeTiming timing) {
  IdealReceiver rx(scheme, index);
  const std::vector<std::uint8_t> all(scheme.num_classes(), 1);
  if (timing == CascadeTiming::per_reception) {
    while (!rx.complete()) {
      const auto cls = select_class(scheme, all, rng);
      if (rx.receive(cls)) rx.cascade();
    }
  } else {
    for (;;) {
      const auto cls = select_class(scheme, all, rng);
      if (rx.receive(cls) && rx.would_complete()) {
        rx.cascade();
        break;
      }
    }
  }
  return {rx.receptions(), rx.ops_scaled()};
}

SimResult expected_overhead_mc(const ClassScheme& scheme, std::uint64_t trials, std::uint64_t seed,
                               CascadeTiming timing,
                               std::map<std::uint64_t, std::uint64_t>* completion_hist) {
  if (trials == 0) throw std::invalid_argument("expected_overhead_mc: trials must be >= 1");
  const SchemeIndex index(scheme);
  const double k = static_cast<double>(scheme.k);
  std::vector<double> overheads(trials), ops(trials);
  for (std::uint64_t i = 0; i < trials; ++i) {
    Pcg32 rng(seed, i);  // stream-per-trial: results independent of scheduling
    const TrialResult t = run_trial(scheme, index, rng, timing);
    overheads[i] = (static_cast<double>(t.receptions) - k) / k;
    ops[i] = static_cast<double>(t.ops_scaled) / k;
    if (completion_hist) ++(*completion_hist)[t.receptions];
  }
  SimResult r;
  r.trials = trials;
  double sum = 0.0, ops_sum = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    sum += overheads[i];
    ops_sum += ops[i];
  }
  r.overhead_mean = sum / static_cast<double>(trials);
  r.ops_mean = ops_sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      const double d = overheads[i] - r.overhead_mean;
      ss += d * d;
    }
    r.overhead_std = std::sqrt(ss / static_cast<double>(trials - 1));
    r.overhead_se = r.overhead_std / std::sqrt(static_cast<double>(trials));
  }
  return r;
}

std::vector<TradeoffPoint> tradeoff_sweep(std::span<const NamedScheme> schemes,
                                          std::uint64_t trials, std::uint64_t seed) {
  std::vector<TradeoffPoint> points;
  points.reserve(schemes.size());
  for (const auto& ns : schemes) {
    const SimResult r = expected_overhead_mc(ns.scheme, trials, seed);
    TradeoffPoint p;
    p.id = ns.id;
    p.k = ns.scheme.k;
    p.num_classes = static_cast<std::uint32_t>(ns.scheme.num_classes());
    p.max_d = ns.scheme.max_class_size();
    p.bound = complexity_bound(ns.scheme);
    p.ops_mean = r.ops_mean;
    p.overhead_mean = r.overhead_mean;
    p.overhead_se = r.overhead_se;
    p.trials = trials;
    p.seed = seed;
    points.push_back(std::move(p));
  }
  std::sort(points.begin(), points.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id < b.id;
  });
  return points;
}

std::string tradeoff_csv(std::span<const TradeoffPoint> points) {
  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
  };
  std::string out = "scheme_id,k,L,max_d,bound,ops_mean,overhead_mean,overhead_se,trials,seed\n";
  for (const auto& p : points) {
    out += p.id;
    out += ',' + std::to_string(p.k);
    out += ',' + std::to_string(p.num_classes);
    out += ',' + std::to_string(p.max_d);
    out += ',' + fmt(p.bound);
    out += ',' + fmt(p.ops_mean);
    out += ',' + fmt(p.overhead_mean);
    out += ',' + fmt(p.overhead_se);
    out += ',' + std::to_string(p.trials);
    out += ',' + std::to_string(p.seed);
    out += '\n';
  }
  return out;
}

}  // namespace ovc
