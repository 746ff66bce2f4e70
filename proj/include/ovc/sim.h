#pragma once

// Idealized rank-evolution model and Monte-Carlo evaluation.
//
// The idealized receiver tracks, per class, how many innovative packets have
// arrived (rank) and how many of the class's members were recovered through
// other classes (members_known). Under the idealization that received
// combinations are always as independent as the data allows:
//   - a reception on class l is innovative iff rank_l + members_known_l < d_l
//     and the class is not yet decoded;
//   - class l is decodable iff rank_l + members_known_l >= d_l.
// Decoding a class by elimination costs residual_l * d_l scaled operations
// (residual = members still unknown); a class whose members all arrive from
// other classes decodes for free. The displayed per-class state is the
// combined-rank min(d_l, rank_l + members_known_l), frozen at the moment a
// class decodes (a recovery that merely completes an undecoded class marks
// it decoded without raising its frozen state).
//
// Monte-Carlo trials draw classes i.i.d. from the scheme distribution and
// count receptions until full recovery. Trial i uses its own RNG stream
// (seed, i), so results are independent of scheduling and trial count.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ovc/rng.h"
#include "ovc/scheme.h"

namespace ovc {

struct SchemeIndex {
  explicit SchemeIndex(const ClassScheme& s);
  std::vector<std::vector<std::uint32_t>> classes_of_packet;
};

class IdealReceiver {
 public:
  IdealReceiver(const ClassScheme& scheme, const SchemeIndex& index);

  // Count one reception on class cls; returns true iff innovative.
  bool receive(std::uint32_t cls);

  // Decode every decodable class, propagating recoveries (smallest residual
  // first, ties to the lowest index). Returns packets newly recovered.
  std::uint32_t cascade();

  // Reset and force per-class received ranks (clamped to d_l); used to
  // replay published worked examples and by the exact engine.
  void set_state(std::span<const std::uint32_t> ranks);

  // Combined-rank display per class (frozen at decode time).
  std::vector<std::uint32_t> state() const;

  bool complete() const { return recovered_total_ == scheme_->k; }
  std::uint32_t recovered_count() const { return recovered_total_; }
  bool is_recovered(std::uint32_t packet) const { return recovered_[packet] != 0; }
  std::uint64_t receptions() const { return receptions_; }
  std::uint64_t ops_scaled() const { return ops_scaled_; }       // sum residual*d
  std::uint64_t residual_sum() const { return residual_sum_; }   // over elimination decodes
  bool class_decoded(std::uint32_t l) const { return decoded_[l] != 0; }

  // Would a cascade started now reach full recovery? (Runs on a copy.)
  bool would_complete() const;

 private:
  void freeze_display(std::uint32_t l, std::uint32_t value);

  const ClassScheme* scheme_;
  const SchemeIndex* index_;
  std::vector<std::uint32_t> rank_, members_known_, frozen_;
  std::vector<std::uint8_t> decoded_, recovered_;
  std::uint32_t recovered_total_ = 0;
  std::uint64_t receptions_ = 0;
  std::uint64_t ops_scaled_ = 0;
  std::uint64_t residual_sum_ = 0;
};

enum class CascadeTiming {
  per_reception,  // cascade after every innovative reception
  terminal,       // cascade once, at the first reception where it completes
};

struct TrialResult {
  std::uint64_t receptions = 0;
  std::uint64_t ops_scaled = 0;
};

TrialResult run_trial(const ClassScheme& scheme, const SchemeIndex& index, Pcg32& rng,
                      CascadeTiming timing = CascadeTiming::per_reception);

struct SimResult {
  std::uint64_t trials = 0;
  double overhead_mean = 0.0;  // mean of (n - k) / k
  double overhead_std = 0.0;   // sample standard deviation (n-1)
  double overhead_se = 0.0;    // overhead_std / sqrt(trials)
  double ops_mean = 0.0;       // mean of ops_scaled / k (mults per data symbol)
};

SimResult expected_overhead_mc(const ClassScheme& scheme, std::uint64_t trials, std::uint64_t seed,
                               CascadeTiming timing = CascadeTiming::per_reception,
                               std::map<std::uint64_t, std::uint64_t>* completion_hist = nullptr);

struct NamedScheme {
  std::string id;
  ClassScheme scheme;
};

struct TradeoffPoint {
  std::string id;
  std::uint32_t k = 0;
  std::uint32_t num_classes = 0;
  std::uint32_t max_d = 0;
  double bound = 0.0;  // worst-case mults per data symbol
  double ops_mean = 0.0;
  double overhead_mean = 0.0;
  double overhead_se = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// One Monte-Carlo point per scheme, sorted by complexity bound ascending
// (ties by id) so the rows trace the tradeoff curve.
std::vector<TradeoffPoint> tradeoff_sweep(std::span<const NamedScheme> schemes,
                                          std::uint64_t trials, std::uint64_t seed);

// Header: scheme_id,k,L,max_d,bound,ops_mean,overhead_mean,overhead_se,trials,seed
std::string tradeoff_csv(std::span<const TradeoffPoint> points);

}  // namespace ovc
