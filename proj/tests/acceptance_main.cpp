// Acceptance gate: one line per criterion, with every tolerance pinned.
// Exit code = number of failed criteria.
//
// Criterion 5 sweeps the k=1000 preset pairs; its (d=500, L=2) pair cannot
// separate from its chunked partner because two size-500 classes covering
// 1000 packets are necessarily disjoint — the "grid" degenerates to the
// chunked partition, the two schemes draw from identical distributions, and
// no honest 3-standard-error gap exists. The suite states that on the
// sub-line and reports the criterion as it measures it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "ovc/codec.h"
#include "ovc/exact.h"
#include "ovc/gf256.h"
#include "ovc/matrix.h"
#include "ovc/presets.h"
#include "ovc/rng.h"
#include "ovc/scheme.h"
#include "ovc/sim.h"

using namespace ovc;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const NamedScheme* find_scheme(const std::vector<NamedScheme>& all, const std::string& id) {
  for (const auto& ns : all)
    if (ns.id == id) return &ns;
  return nullptr;
}

// ---- criterion 1: worked-example exact probabilities --------------------

bool criterion_exact_examples(std::string& detail) {
  std::ostringstream out;
  bool ok = true;

  const Probability ms = exact_success_prob(make_rect_grid(4, 2, 2), 2, ExactMode::multiset,
                                            std::vector<std::uint32_t>{2, 0, 0, 0});
  out << "    multiset model, 2x2 grid, start (2,0,0,0), n=2: " << format_ratio(ms)
      << " (want 4/10 exactly)\n";
  ok = ok && ms.num == 4 && ms.den == 10;

  const Probability sq = exact_success_prob(make_chunked(4, 2), 2, ExactMode::sequential,
                                            std::vector<std::uint32_t>{2, 0});
  out << "    sequential model, chunked 4/2, start (2,0), n=2: " << format_ratio(sq)
      << " (want 1/4 exactly)\n";
  ok = ok && sq.num == 1 && sq.den == 4;

  detail = out.str();
  return ok;
}

// ---- criterion 2: exact dominance of the overlapping grid ---------------

bool criterion_dominance(std::string& detail) {
  const ClassScheme grid = make_rect_grid(4, 2, 2);
  const ClassScheme chunk = make_chunked(4, 2);
  bool ok = true, strict = false;
  for (std::uint64_t n = 4; n <= 20; ++n) {
    const Probability pg = exact_success_prob(grid, n, ExactMode::sequential);
    const Probability pc = exact_success_prob(chunk, n, ExactMode::sequential);
    if (pg.num * pc.den < pc.num * pg.den) ok = false;
    if (pg.num * pc.den > pc.num * pg.den) strict = true;
  }
  std::ostringstream out;
  out << "    P_grid(n) >= P_chunked(n) for all n in [4,20] (exact rationals): "
      << (ok ? "yes" : "NO") << "; strict somewhere: " << (strict ? "yes" : "NO") << "\n";
  detail = out.str();
  return ok && strict;
}

// ---- criterion 3: per-trial cost law at k=1024 ---------------------------

bool criterion_cost_law(std::string& detail) {
  const std::vector<NamedScheme> schemes = {
      {"chunked-1024/32", make_chunked(1024, 32)},
      {"rect-grid-1024", make_rect_grid(1024, 32, 32)},
      {"diag-grid-1024/32x40", make_diag_grid_angle(1024, 32, 40, 1)},
      {"random-layer-1024/32x48", make_random_layer(1024, 32, 48, 7)},
      {"mixed-1024/64x22+256", make_mixed(make_diag_grid_angle(1024, 64, 22, 1), 256, 5)},
  };
  std::ostringstream out;
  bool ok = true;
  std::uint64_t decodes = 0;
  for (const auto& ns : schemes) {
    const SchemeIndex idx(ns.scheme);
    const std::uint64_t bound = complexity_bound_scaled(ns.scheme);
    std::uint64_t worst = 0;
    bool all_within = true;
    for (std::uint64_t i = 0; i < 200; ++i) {
      Pcg32 rng(4242, i);
      const TrialResult t = run_trial(ns.scheme, idx, rng);
      ++decodes;
      worst = std::max(worst, t.ops_scaled);
      if (t.ops_scaled > bound) all_within = false;
    }
    out << "    " << ns.id << ": 200 trials, worst ops(scaled) " << worst << " <= bound "
        << bound << ": " << (all_within ? "yes" : "NO") << "\n";
    ok = ok && all_within;
  }
  out << "    completed decodes: " << decodes << " (need >= 1000)\n";
  ok = ok && decodes >= 1000;

  // Non-overlapping schemes decode at exactly d multiplications per symbol
  // in the idealized accounting.
  for (const auto& [k, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1024, 32},
                                                                                 {16, 4}}) {
    const ClassScheme s = make_chunked(k, d);
    const SchemeIndex idx(s);
    Pcg32 rng(7, 0);
    const TrialResult t = run_trial(s, idx, rng);
    const bool eq = t.ops_scaled == static_cast<std::uint64_t>(k) * d;
    out << "    chunked " << k << "/" << d << ": ideal ops(scaled) " << t.ops_scaled
        << " == k*d " << (static_cast<std::uint64_t>(k) * d) << ": " << (eq ? "yes" : "NO")
        << "\n";
    ok = ok && eq;
  }
  detail = out.str();
  return ok;
}

// ---- criterion 4: Monte Carlo vs first-step analysis ---------------------

bool criterion_mc_oracle(std::string& detail) {
  const double e = oracle::chunked_expected_receptions(2, 2);
  const double want = (e - 4.0) / 4.0;
  const SimResult r = expected_overhead_mc(make_chunked(4, 2), 100000, 20240817);
  std::ostringstream out;
  out << "    first-step analysis: E[n] = " << fmt(e) << " => overhead " << fmt(want)
      << " (want 0.375 +- 1e-9)\n";
  out << "    Monte Carlo (1e5 trials): " << fmt(r.overhead_mean) << " +- " << fmt(r.overhead_se)
      << " (must cover the oracle within 3 SE)\n";
  detail = out.str();
  return std::abs(want - 0.375) <= 1e-9 && std::abs(r.overhead_mean - want) <= 3.0 * r.overhead_se;
}

// ---- criterion 5: k=1000 preset, grids vs equal-size chunked -------------

bool criterion_grid_pairs(std::string& detail) {
  const auto schemes = preset_k1000_grids();
  const std::uint64_t trials = 200, seed = 31;
  std::ostringstream out;
  bool ok = true;
  for (const auto& pair : preset_k1000_grid_pairs()) {
    const NamedScheme* g = find_scheme(schemes, pair.overlapped);
    const NamedScheme* c = find_scheme(schemes, pair.baseline);
    if (!g || !c) {
      out << "    missing scheme ids " << pair.overlapped << "/" << pair.baseline << "\n";
      ok = false;
      continue;
    }
    const SimResult rg = expected_overhead_mc(g->scheme, trials, seed);
    const SimResult rc = expected_overhead_mc(c->scheme, trials, seed + 1);
    const double se = std::sqrt(rg.overhead_se * rg.overhead_se +
                                rc.overhead_se * rc.overhead_se);
    const bool sep = rg.overhead_mean < rc.overhead_mean - 3.0 * se;
    out << "    " << pair.overlapped << " " << fmt(rg.overhead_mean) << " vs " << pair.baseline
        << " " << fmt(rc.overhead_mean) << " (3*SE_diff " << fmt(3.0 * se) << "): "
        << (sep ? "separated" : "NOT separated") << "\n";
    if (pair.overlapped == "grid-d500-L2") {
      out << "      ^ expected: two size-500 classes covering 1000 packets must partition\n"
             "        them, so this \"grid\" IS the chunked scheme; no separation exists.\n";
    } else if (!sep) {
      // Diagnostic only (the pass bar stays at the pinned 200 trials):
      // re-measure with enough trials to resolve a small true margin.
      const SimResult hg = expected_overhead_mc(g->scheme, 20000, seed + 1000);
      const SimResult hc = expected_overhead_mc(c->scheme, 20000, seed + 1001);
      const double hse = std::sqrt(hg.overhead_se * hg.overhead_se +
                                   hc.overhead_se * hc.overhead_se);
      out << "      direction check at 20000 trials: " << fmt(hg.overhead_mean) << " vs "
          << fmt(hc.overhead_mean) << " (z = "
          << fmt((hc.overhead_mean - hg.overhead_mean) / hse)
          << "); the true margin is below the 3 SE resolution of 200 trials\n";
    }
    ok = ok && sep;
  }
  detail = out.str();
  return ok;
}

// ---- criterion 6: large mixed class cuts grid overhead -------------------

bool criterion_mixed_gain(std::string& detail) {
  const auto schemes = preset_k1024_mixed(1);
  const std::uint64_t trials = 200, seed = 47;
  std::ostringstream out;
  bool ok = true;
  double best_reduction = 0.0;
  for (const auto& pair : preset_k1024_mixed_pairs()) {
    const NamedScheme* mx = find_scheme(schemes, pair.overlapped);
    const NamedScheme* base = find_scheme(schemes, pair.baseline);
    if (!mx || !base) {
      out << "    missing scheme ids " << pair.overlapped << "/" << pair.baseline << "\n";
      ok = false;
      continue;
    }
    const SimResult rm = expected_overhead_mc(mx->scheme, trials, seed);
    const SimResult rb = expected_overhead_mc(base->scheme, trials, seed + 1);
    const double reduction =
        rb.overhead_mean > 0 ? 1.0 - rm.overhead_mean / rb.overhead_mean : 0.0;
    best_reduction = std::max(best_reduction, reduction);
    const double bound = complexity_bound(mx->scheme);
    const bool improves = rm.overhead_mean < rb.overhead_mean;
    const bool within = rm.ops_mean <= bound + 1e-9;
    out << "    " << pair.overlapped << " " << fmt(rm.overhead_mean) << " vs " << pair.baseline
        << " " << fmt(rb.overhead_mean) << " (reduction " << fmt(100.0 * reduction)
        << "%, ops " << fmt(rm.ops_mean) << " <= bound " << fmt(bound) << "): "
        << (improves && within ? "ok" : "NO") << "\n";
    ok = ok && improves && within;
  }
  out << "    best overhead reduction: " << fmt(100.0 * best_reduction) << "% (need >= 20%)\n";
  detail = out.str();
  return ok && best_reduction >= 0.20;
}

// ---- criterion 7: real codec tracks the idealized model ------------------

bool criterion_real_vs_ideal(std::string& detail) {
  const std::vector<NamedScheme> schemes = {
      {"chunked-16/4", make_chunked(16, 4)},
      {"rect-grid-16", make_rect_grid(16, 4, 4)},
      {"diag-grid-64/8x10", make_diag_grid_angle(64, 8, 10, 1)},
      {"random-layer-64/8x12", make_random_layer(64, 8, 12, 7)},
  };
  const std::uint32_t m = 8;
  const std::uint64_t trials = 500, seed = 90210;
  std::ostringstream out;
  bool ok = true;
  for (const auto& ns : schemes) {
    const ClassScheme& s = ns.scheme;
    const SchemeIndex idx(s);
    const std::vector<std::uint8_t> all(s.num_classes(), 1);
    Pcg32 data_rng(seed, 0xDA7A);
    const FieldMatrix data = make_random_source(s.k, m, data_rng);

    double real_sum = 0.0, ideal_sum = 0.0;
    bool payloads_ok = true;
    for (std::uint64_t i = 0; i < trials; ++i) {
      // Paired streams: both receivers see the same class draw sequence.
      Pcg32 rng_cls_real(seed, 2 * i), rng_cls_ideal(seed, 2 * i);
      Pcg32 rng_coef(seed, 2 * i + 1);

      Decoder dec(s, m);
      std::uint64_t n_real = 0;
      while (!dec.complete()) {
        const auto cls = select_class(s, all, rng_cls_real);
        dec.receive(source_encode(data, s, cls, rng_coef));
        dec.run_cascade();
        ++n_real;
      }
      if (!(dec.recovered_data() == data)) payloads_ok = false;

      IdealReceiver rx(s, idx);
      while (!rx.complete())
        if (rx.receive(select_class(s, all, rng_cls_ideal))) rx.cascade();

      real_sum += (static_cast<double>(n_real) - s.k) / s.k;
      ideal_sum += (static_cast<double>(rx.receptions()) - s.k) / s.k;
    }
    const double gap = (real_sum - ideal_sum) / static_cast<double>(trials);
    out << "    " << ns.id << ": payloads exact: " << (payloads_ok ? "yes" : "NO")
        << "; mean real-vs-ideal overhead gap " << fmt(gap) << " (need < 0.02)\n";
    ok = ok && payloads_ok && gap < 0.02;
  }
  detail = out.str();
  return ok;
}

// ---- criterion 8: micro-validation of the algebra ------------------------

bool criterion_algebra(std::string& detail) {
  std::ostringstream out;
  bool ok = true;

  Pcg32 rng(515, 0);
  int bad_axioms = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint8_t a = rng.byte(), b = rng.byte(), c = rng.byte();
    if (gf::mul(a, b) != gf::mul(b, a)) ++bad_axioms;
    if (gf::mul(gf::mul(a, b), c) != gf::mul(a, gf::mul(b, c))) ++bad_axioms;
    if (gf::mul(a, gf::add(b, c)) != gf::add(gf::mul(a, b), gf::mul(a, c))) ++bad_axioms;
    if (gf::mul(a, b) != oracle::gf_mul(a, b)) ++bad_axioms;
  }
  out << "    field axioms + oracle agreement on 1e4 random triples: " << bad_axioms
      << " violations\n";
  ok = ok && bad_axioms == 0;

  int bad_inverses = 0;
  for (unsigned a = 1; a < 256; ++a)
    if (gf::mul(static_cast<std::uint8_t>(a), gf::inv(static_cast<std::uint8_t>(a))) != 1)
      ++bad_inverses;
  out << "    inverses of all 255 nonzero elements: " << bad_inverses << " violations\n";
  ok = ok && bad_inverses == 0;

  int bad_rank = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t r = 1 + rng.bounded(4), c = 1 + rng.bounded(4);
    FieldMatrix mtx = FieldMatrix::random(r, c, rng);
    if (r >= 2 && rng.bounded(2) == 0)
      for (std::size_t j = 0; j < c; ++j) mtx.at(r - 1, j) = mtx.at(0, j);
    oracle::ByteMatrix om(mtx.rows(), std::vector<std::uint8_t>(mtx.cols()));
    for (std::size_t i = 0; i < mtx.rows(); ++i)
      for (std::size_t j = 0; j < mtx.cols(); ++j) om[i][j] = mtx.at(i, j);
    if (static_cast<int>(mtx.rank()) != oracle::gf_rank(om)) ++bad_rank;
  }
  out << "    rank vs nonsingular-minor oracle on 100 random matrices: " << bad_rank
      << " mismatches\n";
  ok = ok && bad_rank == 0;

  bool counts_ok = true;
  for (const std::size_t k : {std::size_t(4), std::size_t(8), std::size_t(16)}) {
    const std::size_t mprime = 32;
    FieldMatrix a(k, k);
    do {
      a = FieldMatrix::random(k, k, rng);
    } while (a.rank() != k);
    FieldMatrix sys(k, k + mprime);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c2 = 0; c2 < k; ++c2) sys.at(r, c2) = a.at(r, c2);
      for (std::size_t c2 = 0; c2 < mprime; ++c2) sys.at(r, k + c2) = rng.byte();
    }
    const auto res = sys.rref();
    const std::uint64_t budget = k * k * mprime + k * k * (k - 1) / 2;
    if (res.mul_count > budget) counts_ok = false;
    out << "    Gauss-Jordan count, k=" << k << ", m'=" << mprime << ": " << res.mul_count
        << " <= " << budget << "\n";
  }
  ok = ok && counts_ok;

  detail = out.str();
  return ok;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked-example exact probabilities (4/10 multiset, 1/4 sequential)", 1.0,
       criterion_exact_examples},
      {2, "exact dominance of the overlapping grid over chunked", 1.0, criterion_dominance},
      {3, "per-trial cost law at k=1024 (1000 decodes within the bound)", 120.0,
       criterion_cost_law},
      {4, "Monte Carlo matches first-step analysis (overhead 0.375)", 10.0, criterion_mc_oracle},
      {5, "k=1000 preset: grids beat equal-size chunked at 3 SE", 300.0, criterion_grid_pairs},
      {6, "k=1024 preset: big mixed class cuts grid overhead >= 20%", 600.0,
       criterion_mixed_gain},
      {7, "real codec tracks the idealized receiver (gap < 0.02)", 300.0,
       criterion_real_vs_ideal},
      {8, "field/matrix micro-validation against independent oracles", 30.0, criterion_algebra},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail += "    exception: " + std::string(e.what()) + "\n";
      ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds) {
      ok = false;
      detail += "    OVER BUDGET: " + fmt(elapsed) + "s > " + fmt(c.budget_seconds) + "s\n";
    }
    std::printf("[%s] %d. %s  [%.2fs]\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), elapsed);
    std::fputs(detail.c_str(), stdout);
    if (!ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
