#pragma once

// Real GF(2^8) codec over a class scheme.
//
// A coded packet carries its class tag, one local coefficient per class
// member (aligned with the class's ascending member order), and an m-symbol
// payload equal to the coefficient-weighted sum of the members' payloads.
// Intermediate nodes recode packets of the same class without decoding;
// the receiver runs propagative Gaussian elimination: each class keeps an
// incrementally reduced system, solved classes reveal data packets, and a
// revealed packet enters every other class that contains it as a unit row,
// which can make further classes solvable (back-substitution cascade).
//
// Cost accounting: `mul_count` is the exact number of field multiplications
// performed by the decoder (reduction, normalization, back-substitution).
// `ideal_ops_scaled` is the closed-form accounting used by the analysis:
// every class solved by elimination contributes residual * d_l, where the
// residual is the number of its members still unknown at solve time; divide
// by k for multiplications per data symbol.

#include <cstdint>
#include <span>
#include <vector>

#include "ovc/matrix.h"
#include "ovc/rng.h"
#include "ovc/scheme.h"

namespace ovc {

struct CodedPacket {
  std::uint16_t class_index = 0;
  std::vector<std::uint8_t> coefficients;  // one per class member, ascending member order
  std::vector<std::uint8_t> payload;       // m symbols

  bool operator==(const CodedPacket&) const = default;
};

// Source data: one row per data packet, m columns.
FieldMatrix make_random_source(std::uint32_t k, std::uint32_t m, Pcg32& rng);

// Encode one packet of the given class at the source (uniform coefficients;
// the all-zero draw is legal and simply non-innovative).
CodedPacket source_encode(const FieldMatrix& data, const ClassScheme& scheme, std::uint32_t cls,
                          Pcg32& rng);

// Draw a class index from the scheme's distribution conditioned on the
// available set (rejection sampling). `available[l]` nonzero = class l held.
std::uint32_t select_class(const ClassScheme& scheme, std::span<const std::uint8_t> available,
                           Pcg32& rng);
std::uint32_t select_class(const ClassScheme& scheme, Pcg32& rng);  // all available

// Deterministic recombination core: out = sum_r coeffs[r] * packets[r].
// All packets must carry the same class tag.
CodedPacket combine_packets(std::span<const CodedPacket> packets,
                            std::span<const std::uint8_t> coeffs);

// Recode with uniform random combination coefficients.
CodedPacket recode(std::span<const CodedPacket> packets, Pcg32& rng);

class Decoder {
 public:
  Decoder(const ClassScheme& scheme, std::uint32_t m);

  // Feed one packet. Returns true iff it added a dimension to its class's
  // system (combined with already-recovered members). Packets for decoded
  // classes are dropped as redundant. Throws DecodeError on dimension
  // mismatch or on a packet that contradicts earlier data.
  bool receive(const CodedPacket& p);

  // Solve every class that became solvable, propagating recovered packets
  // into overlapping classes until nothing more decodes. Smallest residual
  // first, ties to the lowest class index. Returns newly recovered packet
  // indices in recovery order.
  std::vector<std::uint32_t> run_cascade();

  bool complete() const { return recovered_total_ == scheme_->k; }
  std::uint32_t recovered_count() const { return recovered_total_; }
  bool is_recovered(std::uint32_t packet) const { return have_[packet] != 0; }
  std::span<const std::uint8_t> packet(std::uint32_t idx) const { return data_.row(idx); }
  const FieldMatrix& recovered_data() const { return data_; }

  std::uint32_t class_rank(std::uint32_t l) const { return classes_[l].rank; }
  bool class_decoded(std::uint32_t l) const { return classes_[l].decoded; }
  bool class_solvable(std::uint32_t l) const;

  std::uint64_t mul_count() const { return mul_count_; }
  std::uint64_t ideal_ops_scaled() const { return ideal_ops_scaled_; }

  struct DecodeEvent {
    std::uint32_t class_index;
    bool by_elimination;     // false: all members arrived via other classes
    std::uint32_t residual;  // unknown members at solve time (0 if free)
  };
  const std::vector<DecodeEvent>& decode_log() const { return decode_log_; }

  struct OpsPerSymbol {
    double measured;   // mul_count / (k * m)
    double idealized;  // ideal_ops_scaled / k
  };
  OpsPerSymbol ops_per_symbol() const;  // requires complete()

 private:
  struct ClassState {
    // Rows of [coefficients | payload] kept in reduced row-echelon form;
    // row_of_pivot[c] is the stored row whose leading 1 sits at column c.
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<std::int32_t> row_of_pivot;
    std::uint32_t rank = 0;
    std::uint32_t members_known = 0;
    bool decoded = false;
  };

  bool insert_row(std::uint32_t l, std::vector<std::uint8_t>&& row);
  void solve_class(std::uint32_t l, std::vector<std::uint32_t>& newly);
  void publish_packet(std::uint32_t packet, std::uint32_t source_class,
                      std::vector<std::uint32_t>& newly);

  const ClassScheme* scheme_;
  std::uint32_t m_;
  std::vector<std::vector<std::uint32_t>> classes_of_packet_;
  std::vector<ClassState> classes_;
  FieldMatrix data_;
  std::vector<std::uint8_t> have_;
  std::uint32_t recovered_total_ = 0;
  std::uint64_t mul_count_ = 0;
  std::uint64_t ideal_ops_scaled_ = 0;
  std::vector<DecodeEvent> decode_log_;
};

}  // namespace ovc
