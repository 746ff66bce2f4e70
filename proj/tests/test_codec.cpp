#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oracles.h"
#include "ovc/codec.h"
#include "ovc/errors.h"
#include "ovc/gf256.h"
#include "ovc/matrix.h"
#include "ovc/rng.h"
#include "ovc/scheme.h"
#include "ovc/wire.h"

using namespace ovc;

namespace {

ClassScheme hand_scheme(std::uint32_t k, std::vector<std::vector<std::uint32_t>> classes) {
  ClassScheme s;
  s.k = k;
  s.classes = std::move(classes);
  s.probs.assign(s.classes.size(), 1.0 / static_cast<double>(s.classes.size()));
  return s;
}

CodedPacket make_packet(const FieldMatrix& data, const ClassScheme& s, std::uint32_t cls,
                        std::vector<std::uint8_t> coeffs) {
  CodedPacket p;
  p.class_index = static_cast<std::uint16_t>(cls);
  p.payload.assign(data.cols(), 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const auto row = data.row(s.classes[cls][j]);
    for (std::size_t t = 0; t < row.size(); ++t)
      p.payload[t] ^= oracle::gf_mul(coeffs[j], row[t]);  // independent field route
  }
  p.coefficients = std::move(coeffs);
  return p;
}

}  // namespace

TEST_CASE("source_encode payload is the coefficient mix of the members") {
  const ClassScheme s = make_rect_grid(4, 2, 2);
  Pcg32 data_rng(1, 1);
  const FieldMatrix data = make_random_source(4, 5, data_rng);
  Pcg32 rng(2, 2);
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint32_t cls = rep % 4;
    const CodedPacket p = source_encode(data, s, cls, rng);
    REQUIRE(p.coefficients.size() == 2);
    REQUIRE(p.payload.size() == 5);
    for (std::size_t t = 0; t < 5; ++t) {
      std::uint8_t want = 0;
      for (std::size_t j = 0; j < 2; ++j)
        want ^= oracle::gf_mul(p.coefficients[j], data.at(s.classes[cls][j], t));
      CHECK(p.payload[t] == want);
    }
  }
  CHECK_THROWS_AS(source_encode(data, s, 4, rng), std::out_of_range);
}

TEST_CASE("select_class honors the conditional distribution") {
  const ClassScheme s = [] {
    ClassScheme t = hand_scheme(3, {{0}, {1}, {2}});
    t.probs = {0.5, 0.25, 0.25};
    return t;
  }();
  Pcg32 rng(7, 0);

  const std::vector<std::uint8_t> only1 = {0, 1, 0};
  for (int i = 0; i < 50; ++i) CHECK(select_class(s, only1, rng) == 1);

  const std::vector<std::uint8_t> no0 = {0, 1, 1};
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) ones += select_class(s, no0, rng) == 1 ? 1 : 0;
  // Conditional P(class 1 | {1,2}) = 0.5; allow 3 sigma.
  const double freq = static_cast<double>(ones) / n;
  CHECK(std::abs(freq - 0.5) < 3.0 * std::sqrt(0.25 / n));

  const std::vector<std::uint8_t> none = {0, 0, 0};
  CHECK_THROWS_AS(select_class(s, none, rng), std::invalid_argument);
  const std::vector<std::uint8_t> short_vec = {1, 1};
  CHECK_THROWS_AS(select_class(s, short_vec, rng), std::invalid_argument);
}

TEST_CASE("combine and recode stay inside the packet span") {
  const ClassScheme s = make_rect_grid(4, 2, 2);
  Pcg32 data_rng(3, 1);
  const FieldMatrix data = make_random_source(4, 4, data_rng);
  Pcg32 rng(3, 2);
  const CodedPacket a = source_encode(data, s, 2, rng);
  const CodedPacket b = source_encode(data, s, 2, rng);

  // Identity combination reproduces the packet.
  const CodedPacket same = combine_packets({&a, 1}, std::vector<std::uint8_t>{1});
  CHECK(same == a);

  const std::vector<CodedPacket> in = {a, b};
  const CodedPacket r = recode(in, rng);
  CHECK(r.class_index == 2);

  // The recoded local coefficient vector lies in the span of the inputs.
  FieldMatrix two(2, 2), three(3, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    two.at(0, j) = a.coefficients[j];
    two.at(1, j) = b.coefficients[j];
    three.at(0, j) = a.coefficients[j];
    three.at(1, j) = b.coefficients[j];
    three.at(2, j) = r.coefficients[j];
  }
  CHECK(three.rank() == two.rank());

  // And its payload is consistent with that combination of the source rows.
  Decoder probe(s, 4);
  probe.receive(a);
  probe.receive(b);
  probe.receive(r);  // must not throw: consistent with the span

  // Mixed class tags are rejected.
  const CodedPacket other = source_encode(data, s, 1, rng);
  const std::vector<CodedPacket> mixed = {a, other};
  CHECK_THROWS_AS(recode(mixed, rng), DecodeError);
  CHECK_THROWS_AS(recode(std::span<const CodedPacket>{}, rng), std::invalid_argument);
}

TEST_CASE("receive counts innovation and rejects malformed packets") {
  const ClassScheme s = make_chunked(8, 8);
  Pcg32 data_rng(5, 1);
  const FieldMatrix data = make_random_source(8, 4, data_rng);
  Decoder dec(s, 4);

  const CodedPacket unit = make_packet(data, s, 0, {1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(dec.receive(unit));
  CHECK_FALSE(dec.receive(unit));  // exact duplicate: dependent
  CHECK(dec.class_rank(0) == 1);

  CodedPacket bad = unit;
  bad.class_index = 3;
  CHECK_THROWS_AS(dec.receive(bad), DecodeError);
  bad = unit;
  bad.coefficients.pop_back();
  CHECK_THROWS_AS(dec.receive(bad), DecodeError);
  bad = unit;
  bad.payload.push_back(0);
  CHECK_THROWS_AS(dec.receive(bad), DecodeError);

  // All-zero packet: dependent but consistent.
  CodedPacket zero;
  zero.class_index = 0;
  zero.coefficients.assign(8, 0);
  zero.payload.assign(4, 0);
  CHECK_FALSE(dec.receive(zero));
}

TEST_CASE("d+1 random packets are almost always exactly d innovative") {
  const ClassScheme s = make_chunked(8, 8);
  Pcg32 data_rng(6, 1);
  const FieldMatrix data = make_random_source(8, 2, data_rng);
  int exact = 0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    Pcg32 rng(100, static_cast<std::uint64_t>(rep));
    Decoder dec(s, 2);
    int innovative = 0;
    for (int i = 0; i < 9; ++i)
      innovative += dec.receive(source_encode(data, s, 0, rng)) ? 1 : 0;
    CHECK(innovative <= 8);
    exact += innovative == 8 ? 1 : 0;
  }
  // Expected success rate >= 1 - d/254 ~ 0.9685; 0.92 leaves 3+ sigma slack.
  CHECK(static_cast<double>(exact) / reps >= 0.92);
}

TEST_CASE("worked 2x2 grid example: decode order and back-substitution cascade") {
  const ClassScheme s = make_rect_grid(4, 2, 2);  // {0,1},{2,3},{0,2},{1,3}
  Pcg32 data_rng(9, 1);
  const FieldMatrix data = make_random_source(4, 6, data_rng);
  Decoder dec(s, 6);

  // Ranks (2, 1, 1, 0): two packets of class 0, one of class 1, one of class 2.
  CHECK(dec.receive(make_packet(data, s, 0, {1, 0})));
  CHECK(dec.receive(make_packet(data, s, 0, {0, 1})));
  CHECK(dec.receive(make_packet(data, s, 1, {1, 1})));
  CHECK(dec.receive(make_packet(data, s, 2, {1, 1})));

  CHECK(dec.class_solvable(0));
  CHECK_FALSE(dec.class_solvable(1));
  CHECK_THROWS_AS(dec.ops_per_symbol(), std::logic_error);

  const auto recovered = dec.run_cascade();
  CHECK(recovered == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK(dec.complete());

  // Order: class 0 by elimination (residual 2), then class 2 (residual 1),
  // then class 1 (residual 1), and class 3 decodes for free.
  const auto& log = dec.decode_log();
  REQUIRE(log.size() == 4);
  CHECK(log[0].class_index == 0);
  CHECK(log[0].by_elimination);
  CHECK(log[0].residual == 2);
  CHECK(log[1].class_index == 2);
  CHECK(log[1].by_elimination);
  CHECK(log[1].residual == 1);
  CHECK(log[2].class_index == 1);
  CHECK(log[2].by_elimination);
  CHECK(log[2].residual == 1);
  CHECK(log[3].class_index == 3);
  CHECK_FALSE(log[3].by_elimination);
  CHECK(log[3].residual == 0);

  // Idealized accounting: 2*2 + 1*2 + 1*2 = 8 scaled ops; conservation: the
  // elimination residuals sum to k.
  CHECK(dec.ideal_ops_scaled() == 8);
  std::uint64_t residuals = 0;
  for (const auto& ev : log)
    if (ev.by_elimination) residuals += ev.residual;
  CHECK(residuals == 4);

  CHECK(dec.recovered_data() == data);
  const auto ops = dec.ops_per_symbol();
  CHECK(ops.idealized == doctest::Approx(2.0));
  CHECK(ops.measured >= 0.0);
}

TEST_CASE("decoder output matches a one-shot global linear solve") {
  const ClassScheme s = make_rect_grid(4, 2, 2);
  Pcg32 data_rng(10, 1);
  const FieldMatrix data = make_random_source(4, 3, data_rng);
  const std::vector<CodedPacket> packets = {
      make_packet(data, s, 0, {1, 0}), make_packet(data, s, 0, {0, 1}),
      make_packet(data, s, 1, {1, 1}), make_packet(data, s, 2, {1, 1})};

  Decoder dec(s, 3);
  for (const auto& p : packets) dec.receive(p);
  dec.run_cascade();
  REQUIRE(dec.complete());

  // Expand each packet to a k-wide coefficient row and solve globally.
  FieldMatrix a(4, 4), rhs(4, 3);
  for (std::size_t r = 0; r < packets.size(); ++r) {
    const auto& p = packets[r];
    for (std::size_t j = 0; j < p.coefficients.size(); ++j)
      a.at(r, s.classes[p.class_index][j]) = p.coefficients[j];
    for (std::size_t t = 0; t < 3; ++t) rhs.at(r, t) = p.payload[t];
  }
  const auto solved = solve_system(a, rhs);
  CHECK(solved.solution == data);
  CHECK(dec.recovered_data() == solved.solution);
}

TEST_CASE("non-overlapping classes: idealized cost is exactly d per symbol") {
  const ClassScheme s = make_chunked(8, 2);
  Pcg32 data_rng(11, 1);
  const FieldMatrix data = make_random_source(8, 4, data_rng);
  Decoder dec(s, 4);
  Pcg32 rng(11, 2);
  for (std::uint32_t cls = 0; cls < 4; ++cls) {
    int guard = 0;
    while (dec.class_rank(cls) < 2) {
      dec.receive(source_encode(data, s, cls, rng));
      REQUIRE(++guard < 64);
    }
  }
  dec.run_cascade();
  REQUIRE(dec.complete());
  CHECK(dec.recovered_data() == data);
  CHECK(dec.ideal_ops_scaled() == 16);  // 4 classes * residual 2 * d 2
  CHECK(dec.ops_per_symbol().idealized == doctest::Approx(2.0));
  for (const auto& ev : dec.decode_log()) CHECK(ev.by_elimination);
}

TEST_CASE("end-to-end random run on an overlapping grid stays within the bound") {
  const ClassScheme s = make_diag_grid(15, 3, 10, {0, 1});
  Pcg32 data_rng(12, 1);
  const FieldMatrix data = make_random_source(15, 8, data_rng);
  const std::uint64_t bound = complexity_bound_scaled(s);

  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    Pcg32 rng(13, trial);
    Decoder dec(s, 8);
    int guard = 0;
    while (!dec.complete()) {
      REQUIRE(++guard < 10000);
      const auto cls = select_class(s, rng);
      dec.receive(source_encode(data, s, cls, rng));
      dec.run_cascade();
    }
    CHECK(dec.recovered_data() == data);
    CHECK(dec.ideal_ops_scaled() <= bound);
    std::uint64_t residuals = 0;
    for (const auto& ev : dec.decode_log()) {
      if (ev.by_elimination)
        residuals += ev.residual;
      else
        CHECK(ev.residual == 0);
    }
    CHECK(residuals == 15);  // every packet recovered by exactly one elimination
  }
}

TEST_CASE("contradictory packets are detected") {
  const ClassScheme s = hand_scheme(2, {{0, 1}, {0}});
  Decoder dec(s, 3);
  CodedPacket p1;
  p1.class_index = 0;
  p1.coefficients = {1, 0};
  p1.payload = {10, 20, 30};
  CHECK(dec.receive(p1));
  CodedPacket p2 = p1;
  p2.payload = {10, 20, 31};  // same combination, different data
  CHECK_THROWS_AS(dec.receive(p2), DecodeError);

  // Zero combination with nonzero payload is inconsistent on arrival.
  Decoder dec2(s, 3);
  CodedPacket zero_bad;
  zero_bad.class_index = 0;
  zero_bad.coefficients = {0, 0};
  zero_bad.payload = {0, 0, 1};
  CHECK_THROWS_AS(dec2.receive(zero_bad), DecodeError);
}

TEST_CASE("packets for an already-decoded class are dropped silently") {
  const ClassScheme s = hand_scheme(2, {{0, 1}, {0}});
  Decoder dec(s, 2);
  CodedPacket e0{0, {1, 0}, {5, 6}};
  CodedPacket e1{0, {0, 1}, {7, 8}};
  dec.receive(e0);
  dec.receive(e1);
  dec.run_cascade();
  REQUIRE(dec.complete());
  CHECK(dec.class_decoded(1));  // decoded for free via packet 0

  CodedPacket late{1, {1}, {99, 99}};  // wrong data, but the class is closed
  CHECK_FALSE(dec.receive(late));
}

TEST_CASE("wire format is byte-exact") {
  const ClassScheme s = make_rect_grid(4, 2, 2);
  CodedPacket p;
  p.class_index = 2;
  p.coefficients = {5, 7};
  p.payload = {1, 2, 3};

  std::ostringstream out;
  write_packets(out, 3, {&p, 1});
  const std::string expect = {'O', 'V', 'C', '1', 0, 0, 0, 3, 0, 2, 5, 7, 1, 2, 3};
  CHECK(out.str() == expect);

  std::istringstream in(out.str());
  const PacketStream back = read_packets(in, s);
  CHECK(back.m == 3);
  REQUIRE(back.packets.size() == 1);
  CHECK(back.packets[0] == p);
}

TEST_CASE("wire round trip with heterogeneous class sizes") {
  const ClassScheme s = hand_scheme(6, {{0, 1, 2, 3}, {4, 5}, {1, 2}});
  Pcg32 data_rng(14, 1);
  const FieldMatrix data = make_random_source(6, 5, data_rng);
  Pcg32 rng(14, 2);
  std::vector<CodedPacket> packets;
  for (std::uint32_t cls = 0; cls < 3; ++cls)
    for (int i = 0; i < 3; ++i) packets.push_back(source_encode(data, s, cls, rng));

  std::ostringstream out;
  write_packets(out, 5, packets);
  std::istringstream in(out.str());
  const PacketStream back = read_packets(in, s);
  CHECK(back.m == 5);
  CHECK(back.packets == packets);
}

TEST_CASE("wire rejects malformed streams") {
  const ClassScheme s = make_rect_grid(4, 2, 2);
  CodedPacket p;
  p.class_index = 1;
  p.coefficients = {9, 9};
  p.payload = {1, 1, 1};
  std::ostringstream out;
  write_packets(out, 3, {&p, 1});
  const std::string bytes = out.str();

  {
    std::istringstream in(bytes.substr(0, bytes.size() - 1));  // truncated payload
    CHECK_THROWS_AS(read_packets(in, s), IoError);
  }
  {
    std::istringstream in(bytes.substr(0, 9));  // truncated coefficients
    CHECK_THROWS_AS(read_packets(in, s), IoError);
  }
  {
    std::string corrupt = bytes;
    corrupt[0] = 'X';
    std::istringstream in(corrupt);
    CHECK_THROWS_AS(read_packets(in, s), IoError);
  }
  {
    std::string corrupt = bytes;
    corrupt[9] = 9;  // class index 9: out of range for this scheme
    std::istringstream in(corrupt);
    CHECK_THROWS_AS(read_packets(in, s), IoError);
  }
  {
    CodedPacket wrong = p;
    wrong.payload.pop_back();
    std::ostringstream sink;
    CHECK_THROWS_AS(write_packets(sink, 3, {&wrong, 1}), IoError);
  }
}
