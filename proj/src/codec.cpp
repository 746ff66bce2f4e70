#include "ovc/codec.h"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "ovc/errors.h"
#include "ovc/gf256.h"
#include "ovc/gf256_vec.h"

namespace ovc {

namespace {

// dst[from..] ^= c * src[from..]; returns the multiplication count charged.
std::uint64_t axpy_from(std::vector<std::uint8_t>& dst, const std::vector<std::uint8_t>& src,
                        std::uint8_t c, std::size_t from) {
  const std::size_t n = dst.size() - from;
  if (c == 0 || n == 0) return 0;
  if (c == 1) {
    gf::vec_xor(dst.data() + from, src.data() + from, n);
    return 0;
  }
  gf::vec_mul_add(dst.data() + from, src.data() + from, c, n);
  return n;
}

std::uint64_t scale_from(std::vector<std::uint8_t>& dst, std::uint8_t c, std::size_t from) {
  const std::size_t n = dst.size() - from;
  if (c == 1 || n == 0) return 0;
  gf::vec_scale(dst.data() + from, c, n);
  return n;
}

}  // namespace

FieldMatrix make_random_source(std::uint32_t k, std::uint32_t m, Pcg32& rng) {
  return FieldMatrix::random(k, m, rng);
}

CodedPacket source_encode(const FieldMatrix& data, const ClassScheme& scheme, std::uint32_t cls,
                          Pcg32& rng) {
  if (cls >= scheme.num_classes()) throw std::out_of_range("source_encode: class index");
  const auto& members = scheme.classes[cls];
  CodedPacket p;
  p.class_index = static_cast<std::uint16_t>(cls);
  p.coefficients.resize(members.size());
  for (auto& c : p.coefficients) c = rng.byte();
  p.payload.assign(data.cols(), 0);
  for (std::size_t j = 0; j < members.size(); ++j) {
    const auto row = data.row(members[j]);
    if (p.coefficients[j] != 0)
      gf::vec_mul_add(p.payload.data(), row.data(), p.coefficients[j], row.size());
  }
  return p;
}

std::uint32_t select_class(const ClassScheme& scheme, std::span<const std::uint8_t> available,
                           Pcg32& rng) {
  const std::size_t L = scheme.num_classes();
  if (available.size() != L)
    throw std::invalid_argument("select_class: availability vector has wrong length");
  double mass = 0.0;
  for (std::size_t l = 0; l < L; ++l)
    if (available[l]) mass += scheme.probs[l];
  if (mass <= 0.0)
    throw std::invalid_argument("select_class: no available class has positive probability");
  // Rejection sampling preserves the conditional distribution exactly.
  for (;;) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      acc += scheme.probs[l];
      if (u < acc) {
        if (available[l]) return static_cast<std::uint32_t>(l);
        break;  // rejected draw; resample
      }
    }
    // u beyond accumulated mass (floating-point edge): resample.
  }
}

std::uint32_t select_class(const ClassScheme& scheme, Pcg32& rng) {
  const std::vector<std::uint8_t> all(scheme.num_classes(), 1);
  return select_class(scheme, all, rng);
}

CodedPacket combine_packets(std::span<const CodedPacket> packets,
                            std::span<const std::uint8_t> coeffs) {
  if (packets.empty()) throw std::invalid_argument("combine_packets: no input packets");
  if (packets.size() != coeffs.size())
    throw std::invalid_argument("combine_packets: coefficient count mismatch");
  const auto cls = packets[0].class_index;
  const auto d = packets[0].coefficients.size();
  const auto m = packets[0].payload.size();
  for (const auto& p : packets) {
    if (p.class_index != cls)
      throw DecodeError("combine_packets: packets tagged with different classes");
    if (p.coefficients.size() != d || p.payload.size() != m)
      throw DecodeError("combine_packets: packet dimensions disagree");
  }
  CodedPacket out;
  out.class_index = cls;
  out.coefficients.assign(d, 0);
  out.payload.assign(m, 0);
  for (std::size_t r = 0; r < packets.size(); ++r) {
    if (coeffs[r] == 0) continue;
    gf::vec_mul_add(out.coefficients.data(), packets[r].coefficients.data(), coeffs[r], d);
    gf::vec_mul_add(out.payload.data(), packets[r].payload.data(), coeffs[r], m);
  }
  return out;
}

CodedPacket recode(std::span<const CodedPacket> packets, Pcg32& rng) {
  if (packets.empty()) throw std::invalid_argument("recode: no input packets");
  std::vector<std::uint8_t> coeffs(packets.size());
  for (auto& c : coeffs) c = rng.byte();
  return combine_packets(packets, coeffs);
}

Decoder::Decoder(const ClassScheme& scheme, std::uint32_t m)
    : scheme_(&scheme),
      m_(m),
      classes_of_packet_(scheme.k),
      classes_(scheme.num_classes()),
      data_(scheme.k, m),
      have_(scheme.k, 0) {
  for (std::uint32_t l = 0; l < scheme.num_classes(); ++l) {
    classes_[l].row_of_pivot.assign(scheme.class_size(l), -1);
    for (auto p : scheme.classes[l]) classes_of_packet_[p].push_back(l);
  }
}

bool Decoder::class_solvable(std::uint32_t l) const {
  const auto& st = classes_[l];
  return !st.decoded && st.rank == scheme_->class_size(l);
}

// Insert a [coefficients | payload] row into class l's reduced system.
// Returns true iff the row raised the rank. A row whose coefficients reduce
// to zero but whose payload does not contradicts earlier data.
bool Decoder::insert_row(std::uint32_t l, std::vector<std::uint8_t>&& row) {
  auto& st = classes_[l];
  const std::size_t d = scheme_->class_size(l);

  // Reduce against existing pivots, left to right.
  for (std::size_t c = 0; c < d; ++c) {
    if (row[c] == 0 || st.row_of_pivot[c] < 0) continue;
    const auto& pivot_row = st.rows[static_cast<std::size_t>(st.row_of_pivot[c])];
    const std::uint8_t f = row[c];
    mul_count_ += axpy_from(row, pivot_row, f, c + 1);
    row[c] = 0;
  }

  std::size_t lead = d;
  for (std::size_t c = 0; c < d; ++c)
    if (row[c] != 0) {
      lead = c;
      break;
    }
  if (lead == d) {
    for (std::size_t t = d; t < row.size(); ++t)
      if (row[t] != 0)
        throw DecodeError("received packet contradicts previously decoded data (class " +
                          std::to_string(l) + ")");
    return false;  // linearly dependent, consistent
  }

  // Normalize the leading coefficient to 1.
  const std::uint8_t inv = gf::inv(row[lead]);
  mul_count_ += scale_from(row, inv, lead + 1);
  row[lead] = 1;

  // Eliminate the new pivot column from rows above it (rows with a later
  // pivot already hold zero there).
  for (std::size_t c = 0; c < lead; ++c) {
    if (st.row_of_pivot[c] < 0) continue;
    auto& other = st.rows[static_cast<std::size_t>(st.row_of_pivot[c])];
    const std::uint8_t f = other[lead];
    if (f == 0) continue;
    mul_count_ += axpy_from(other, row, f, lead + 1);
    other[lead] = 0;
  }

  st.row_of_pivot[lead] = static_cast<std::int32_t>(st.rows.size());
  st.rows.push_back(std::move(row));
  ++st.rank;
  return true;
}

bool Decoder::receive(const CodedPacket& p) {
  if (p.class_index >= scheme_->num_classes())
    throw DecodeError("packet class index " + std::to_string(p.class_index) +
                      " out of range (scheme has " + std::to_string(scheme_->num_classes()) +
                      " classes)");
  const std::size_t d = scheme_->class_size(p.class_index);
  if (p.coefficients.size() != d)
    throw DecodeError("packet carries " + std::to_string(p.coefficients.size()) +
                      " coefficients, class " + std::to_string(p.class_index) + " needs " +
                      std::to_string(d));
  if (p.payload.size() != m_)
    throw DecodeError("packet payload length " + std::to_string(p.payload.size()) +
                      " does not match decoder symbol count " + std::to_string(m_));
  if (classes_[p.class_index].decoded) return false;  // redundant by construction

  std::vector<std::uint8_t> row(d + m_);
  std::copy(p.coefficients.begin(), p.coefficients.end(), row.begin());
  std::copy(p.payload.begin(), p.payload.end(), row.begin() + static_cast<std::ptrdiff_t>(d));
  return insert_row(p.class_index, std::move(row));
}

void Decoder::publish_packet(std::uint32_t packet, std::uint32_t source_class,
                             std::vector<std::uint32_t>& newly) {
  have_[packet] = 1;
  ++recovered_total_;
  newly.push_back(packet);
  for (auto c : classes_of_packet_[packet]) {
    if (c == source_class || classes_[c].decoded) continue;
    auto& st = classes_[c];
    ++st.members_known;
    if (st.members_known == scheme_->class_size(c)) {
      // Every member arrived from elsewhere: decoded for free, no algebra.
      st.decoded = true;
      decode_log_.push_back({c, false, 0});
      continue;
    }
    // Inject the revealed packet as a unit row (pure back-substitution).
    const auto& members = scheme_->classes[c];
    const std::size_t pos = static_cast<std::size_t>(
        std::lower_bound(members.begin(), members.end(), packet) - members.begin());
    std::vector<std::uint8_t> row(members.size() + m_, 0);
    row[pos] = 1;
    const auto payload = data_.row(packet);
    std::copy(payload.begin(), payload.end(),
              row.begin() + static_cast<std::ptrdiff_t>(members.size()));
    insert_row(c, std::move(row));
  }
}

void Decoder::solve_class(std::uint32_t l, std::vector<std::uint32_t>& newly) {
  auto& st = classes_[l];
  const auto& members = scheme_->classes[l];
  const std::size_t d = members.size();
  const std::uint32_t residual = static_cast<std::uint32_t>(d) - st.members_known;
  ideal_ops_scaled_ +=
      static_cast<std::uint64_t>(residual) * static_cast<std::uint64_t>(d);
  st.decoded = true;
  decode_log_.push_back({l, true, residual});

  // Full rank + RREF means row_of_pivot[j] is exactly [e_j | packet j's data].
  std::vector<std::uint32_t> fresh;
  for (std::size_t j = 0; j < d; ++j) {
    const std::uint32_t pkt = members[j];
    if (have_[pkt]) continue;
    const auto& row = st.rows[static_cast<std::size_t>(st.row_of_pivot[j])];
    std::copy(row.begin() + static_cast<std::ptrdiff_t>(d), row.end(), data_.row(pkt).begin());
    fresh.push_back(pkt);
  }
  for (auto pkt : fresh) publish_packet(pkt, l, newly);
}

std::vector<std::uint32_t> Decoder::run_cascade() {
  std::vector<std::uint32_t> newly;
  for (;;) {
    std::uint32_t best = scheme_->num_classes();
    std::uint32_t best_residual = 0;
    for (std::uint32_t l = 0; l < scheme_->num_classes(); ++l) {
      if (!class_solvable(l)) continue;
      const std::uint32_t residual = scheme_->class_size(l) - classes_[l].members_known;
      if (best == scheme_->num_classes() || residual < best_residual) {
        best = l;
        best_residual = residual;
      }
    }
    if (best == scheme_->num_classes()) break;
    solve_class(best, newly);
  }
  return newly;
}

Decoder::OpsPerSymbol Decoder::ops_per_symbol() const {
  if (!complete())
    throw std::logic_error("ops_per_symbol: decoding is not complete");
  const double k = static_cast<double>(scheme_->k);
  return {static_cast<double>(mul_count_) / (k * static_cast<double>(m_)),
          static_cast<double>(ideal_ops_scaled_) / k};
}

}  // namespace ovc
