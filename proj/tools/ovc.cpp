// Command-line front end: scheme generation, Monte-Carlo and exact
// evaluation, tradeoff sweeps, and an end-to-end two-hop verification run.
//
// Exit codes: 0 success, 1 I/O error (unreadable/unparseable files, empty
// inputs), 2 invalid scheme or parameters, 3 resource guard exceeded,
// 4 decode/verification failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ovc/codec.h"
#include "ovc/errors.h"
#include "ovc/exact.h"
#include "ovc/gf256_vec.h"
#include "ovc/presets.h"
#include "ovc/rng.h"
#include "ovc/scheme.h"
#include "ovc/sim.h"
#include "ovc/wire.h"

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

ovc::ClassScheme load_and_validate(const std::string& path, std::uint32_t min_class_size = 1) {
  ovc::ClassScheme s = ovc::load_scheme_file(path);  // IoError on unreadable/bad JSON
  const auto violations = ovc::validate_scheme(s, min_class_size);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    throw ovc::SchemeError("scheme in " + path + " failed validation (" +
                           std::to_string(violations.size()) + " violation(s))");
  }
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ovc::IoError("cannot open for writing: " + path);
  f << text;
  if (!f) throw ovc::IoError("write failed: " + path);
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// ---------------------------------------------------------------- gen ----

struct GenCommon {
  std::string out;  // empty/- = stdout
  std::uint32_t dmin = 1;
  std::uint32_t q = 256;
};

void finish_gen(const ovc::ClassScheme& s, const GenCommon& common) {
  const auto violations = ovc::validate_scheme(s, common.dmin);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    throw ovc::SchemeError("generated scheme failed validation (" +
                           std::to_string(violations.size()) + " violation(s))");
  }
  write_text(common.out, ovc::scheme_to_json(s));
  const auto rep = ovc::overlap_report(s);
  std::uint32_t dmin_seen = s.class_size(0), dmax_seen = s.class_size(0);
  for (std::uint32_t l = 0; l < s.num_classes(); ++l) {
    dmin_seen = std::min(dmin_seen, s.class_size(l));
    dmax_seen = std::max(dmax_seen, s.class_size(l));
  }
  std::cerr << "k=" << s.k << " classes=" << s.num_classes() << " sizes=" << dmin_seen << ".."
            << dmax_seen << "\n"
            << "decoding bound: " << fmt(ovc::complexity_bound(s))
            << " mults/symbol (scaled " << ovc::complexity_bound_scaled(s) << ")\n"
            << "header cost (q=" << common.q << "): " << ovc::header_cost(s, common.q)
            << " symbols/packet\n"
            << "overlap: max pairwise " << rep.max_offdiag << ", packet degree " << rep.min_degree
            << ".." << rep.max_degree << "\n";
}

// ----------------------------------------------------------- simulate ----

void cmd_simulate(const std::string& scheme_path, std::uint64_t trials, std::uint64_t seed,
                  const std::string& out, ovc::CascadeTiming timing, bool hist) {
  const ovc::ClassScheme s = load_and_validate(scheme_path);
  std::map<std::uint64_t, std::uint64_t> completions;
  const ovc::SimResult r =
      ovc::expected_overhead_mc(s, trials, seed, timing, hist ? &completions : nullptr);
  ovc::TradeoffPoint p;
  p.id = file_stem(scheme_path);
  p.k = s.k;
  p.num_classes = static_cast<std::uint32_t>(s.num_classes());
  p.max_d = s.max_class_size();
  p.bound = ovc::complexity_bound(s);
  p.ops_mean = r.ops_mean;
  p.overhead_mean = r.overhead_mean;
  p.overhead_se = r.overhead_se;
  p.trials = trials;
  p.seed = seed;
  write_text(out, ovc::tradeoff_csv({&p, 1}));
  if (hist) {
    std::cerr << "receptions,count\n";
    for (const auto& [n, c] : completions) std::cerr << n << "," << c << "\n";
  }
}

// -------------------------------------------------------------- exact ----

void cmd_exact(const std::string& scheme_path, std::uint64_t n, const std::string& mode_name,
               const std::vector<std::uint32_t>& start) {
  const ovc::ClassScheme s = load_and_validate(scheme_path);
  const ovc::ExactMode mode =
      mode_name == "multiset" ? ovc::ExactMode::multiset : ovc::ExactMode::sequential;
  const ovc::Probability p = ovc::exact_success_prob(s, n, mode, start);
  std::cout << ovc::format_ratio(p) << "\n= " << fmt(p.to_double()) << "\n";
}

// ----------------------------------------------------------- tradeoff ----

void cmd_tradeoff(const std::string& preset, const std::vector<std::string>& scheme_paths,
                  std::uint64_t trials, std::uint64_t seed, const std::string& out) {
  std::vector<ovc::NamedScheme> schemes;
  if (!preset.empty()) {
    schemes = ovc::load_preset(preset, seed);
  } else {
    for (const auto& path : scheme_paths)
      schemes.push_back({file_stem(path), load_and_validate(path)});
  }
  if (schemes.empty())
    throw ovc::IoError("tradeoff: no schemes to evaluate (pass --preset or --schemes)");
  const auto points = ovc::tradeoff_sweep(schemes, trials, seed);
  write_text(out, ovc::tradeoff_csv(points));
}

// ------------------------------------------------------------- verify ----

void cmd_verify(const std::string& scheme_path, std::uint32_t m, std::uint64_t seed,
                const std::string& emit, const std::string& in_path) {
  const ovc::ClassScheme s = load_and_validate(scheme_path);
  if (s.k > 256)
    throw ovc::GuardError("verify: k = " + std::to_string(s.k) +
                          " exceeds the 256-packet verification budget");
  if (m == 0) throw std::invalid_argument("verify: --m must be >= 1");

  ovc::Pcg32 rng_data(seed, 0xDA7A);
  const ovc::FieldMatrix source = ovc::make_random_source(s.k, m, rng_data);
  const std::uint64_t bound_scaled = ovc::complexity_bound_scaled(s);

  ovc::Decoder dec(s, m);
  std::vector<ovc::CodedPacket> received;
  std::uint64_t ideal_n = 0;
  bool have_ideal = false;

  if (!in_path.empty()) {
    ovc::PacketStream ps = ovc::read_packet_file(in_path, s);
    if (ps.m != m)
      throw ovc::DecodeError("stream header m=" + std::to_string(ps.m) +
                             " does not match --m " + std::to_string(m));
    for (const auto& p : ps.packets) {
      dec.receive(p);
      dec.run_cascade();
      received.push_back(p);
      if (dec.complete()) break;
    }
  } else {
    // Two-hop path: the relay holds d_l + 2 source-coded packets per class
    // and forwards fresh random recombinations without decoding.
    std::vector<std::vector<ovc::CodedPacket>> relay(s.num_classes());
    ovc::Pcg32 rng_src(seed, 0x5EC);
    for (std::uint32_t l = 0; l < s.num_classes(); ++l)
      for (std::uint32_t i = 0; i < s.class_size(l) + 2; ++i)
        relay[l].push_back(ovc::source_encode(source, s, l, rng_src));

    // Shared lazily-extended class-draw sequence so the idealized twin sees
    // the same channel.
    std::vector<std::uint32_t> draws;
    ovc::Pcg32 rng_sel(seed, 0xCE1);
    const std::vector<std::uint8_t> all(s.num_classes(), 1);
    auto class_at = [&](std::size_t i) {
      while (draws.size() <= i) draws.push_back(ovc::select_class(s, all, rng_sel));
      return draws[i];
    };

    ovc::Pcg32 rng_rec(seed, 0x4EC0DE);
    const std::uint64_t cap = 1000 + 200ULL * s.k;
    for (std::size_t i = 0; !dec.complete(); ++i) {
      if (i >= cap)
        throw ovc::DecodeError("destination not complete after " + std::to_string(cap) +
                               " receptions; relay stream likely rank-deficient");
      const auto cls = class_at(i);
      const ovc::CodedPacket p = ovc::recode(relay[cls], rng_rec);
      received.push_back(p);
      dec.receive(p);
      dec.run_cascade();
    }

    const ovc::SchemeIndex index(s);
    ovc::IdealReceiver ideal(s, index);
    for (std::size_t i = 0; !ideal.complete(); ++i)
      if (ideal.receive(class_at(i))) ideal.cascade();
    ideal_n = ideal.receptions();
    have_ideal = true;
  }

  if (!emit.empty()) ovc::write_packet_file(emit, m, received);

  if (!dec.complete())
    throw ovc::DecodeError("stream exhausted after " + std::to_string(received.size()) +
                           " packets with only " + std::to_string(dec.recovered_count()) + "/" +
                           std::to_string(s.k) + " recovered");

  const double k = static_cast<double>(s.k);
  const std::uint64_t n = received.size();
  std::cout << "[ok] recovered " << s.k << "/" << s.k << " packets after " << n
            << " receptions (overhead " << fmt((static_cast<double>(n) - k) / k) << ")\n";

  for (std::uint32_t i = 0; i < s.k; ++i) {
    const auto got = dec.packet(i);
    const auto want = source.row(i);
    if (!std::equal(got.begin(), got.end(), want.begin(), want.end()))
      throw ovc::DecodeError("recovered packet " + std::to_string(i) +
                             " differs from the source payload");
  }
  std::cout << "[ok] payload matches source exactly\n";

  std::uint64_t residual_sum = 0;
  for (const auto& ev : dec.decode_log())
    if (ev.by_elimination) residual_sum += ev.residual;
  if (residual_sum != s.k)
    throw ovc::DecodeError("accounting: elimination residuals sum to " +
                           std::to_string(residual_sum) + ", expected k=" + std::to_string(s.k));
  std::cout << "[ok] residual accounting conserved (sum = k = " << s.k << ")\n";

  if (dec.ideal_ops_scaled() > bound_scaled)
    throw ovc::DecodeError("idealized ops " + std::to_string(dec.ideal_ops_scaled()) +
                           " exceed the scheme bound " + std::to_string(bound_scaled));
  const auto ops = dec.ops_per_symbol();
  std::cout << "[ok] idealized ops/symbol " << fmt(ops.idealized) << " <= bound "
            << fmt(ovc::complexity_bound(s)) << "\n";
  std::cout << "[ok] measured ops/symbol " << fmt(ops.measured) << " (field multiplications / (k*m))\n";

  if (have_ideal) {
    const double real_ovh = (static_cast<double>(n) - k) / k;
    const double ideal_ovh = (static_cast<double>(ideal_n) - k) / k;
    std::cout << "[ok] idealized twin finished after " << ideal_n << " receptions (overhead "
              << fmt(ideal_ovh) << "); real-vs-ideal gap " << fmt(real_ovh - ideal_ovh) << "\n";
  }
  std::cout << "verification passed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse random linear coding over overlapping packet classes"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "construct a class scheme and write it as JSON");
  gen->require_subcommand(1);
  GenCommon common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--out", common.out, "output path (default: stdout)");
    sub->add_option("--dmin", common.dmin, "minimum admissible class size")->default_val(1);
    sub->add_option("--q", common.q, "alphabet size for the header-cost report")
        ->default_val(256);
  };

  struct {
    std::uint32_t k = 0, d = 0, dprime = 0, classes = 0, big = 0, theta = 0;
    std::uint64_t seed = 1;
    std::vector<std::uint32_t> angles;
    std::string base;
    bool use_theta = false;
  } g;

  auto* g_chunked = gen->add_subcommand("chunked", "k/d disjoint contiguous blocks");
  g_chunked->add_option("--k", g.k, "total data packets")->required();
  g_chunked->add_option("--d", g.d, "class size (must divide k)")->required();
  add_common(g_chunked);
  g_chunked->callback([&] { finish_gen(ovc::make_chunked(g.k, g.d), common); });

  auto* g_rect = gen->add_subcommand("rect-grid", "row and column classes of a d' x d grid");
  g_rect->add_option("--k", g.k, "total data packets (= d * dprime)")->required();
  g_rect->add_option("--d", g.d, "row class size")->required();
  g_rect->add_option("--dprime", g.dprime, "column class size")->required();
  add_common(g_rect);
  g_rect->callback([&] { finish_gen(ovc::make_rect_grid(g.k, g.d, g.dprime), common); });

  auto* g_diag = gen->add_subcommand("diag-grid", "layered diagonal classes over a k/d x d grid");
  g_diag->add_option("--k", g.k, "total data packets")->required();
  g_diag->add_option("--d", g.d, "class size (must divide k)")->required();
  g_diag->add_option("--classes", g.classes, "number of classes")->required();
  auto* angles_opt = g_diag->add_option("--angles", g.angles,
                                        "per-layer slopes (first 0; later coprime with k/d)")
                         ->delimiter(',');
  auto* theta_opt =
      g_diag->add_option("--theta", g.theta, "constant slope step (layer s uses s*theta)");
  theta_opt->excludes(angles_opt);
  add_common(g_diag);
  g_diag->callback([&] {
    if (theta_opt->count())
      finish_gen(ovc::make_diag_grid_angle(g.k, g.d, g.classes, g.theta), common);
    else if (angles_opt->count())
      finish_gen(ovc::make_diag_grid(g.k, g.d, g.classes, g.angles), common);
    else
      finish_gen(ovc::make_diag_grid_angle(g.k, g.d, g.classes, 1), common);
  });

  auto* g_rand = gen->add_subcommand("random-layer", "stacked random partitions into size-d classes");
  g_rand->add_option("--k", g.k, "total data packets")->required();
  g_rand->add_option("--d", g.d, "class size (must divide k)")->required();
  g_rand->add_option("--classes", g.classes, "number of classes")->required();
  g_rand->add_option("--seed", g.seed, "layer shuffle seed")->default_val(1);
  add_common(g_rand);
  g_rand->callback(
      [&] { finish_gen(ovc::make_random_layer(g.k, g.d, g.classes, g.seed), common); });

  auto* g_mixed = gen->add_subcommand("mixed", "extend a base scheme with one large random class");
  g_mixed->add_option("--base", g.base, "base scheme JSON file")->required();
  g_mixed->add_option("--big", g.big, "size of the added class")->required();
  g_mixed->add_option("--seed", g.seed, "big-class member draw seed")->default_val(1);
  add_common(g_mixed);
  g_mixed->callback([&] {
    const ovc::ClassScheme base = load_and_validate(g.base);
    finish_gen(ovc::make_mixed(base, g.big, g.seed), common);
  });

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo overhead/ops for one scheme (CSV)");
  struct {
    std::string scheme, out, timing = "per-reception";
    std::uint64_t trials = 1000, seed = 1;
    bool hist = false;
  } si;
  sim->add_option("--scheme", si.scheme, "scheme JSON file")->required();
  sim->add_option("--trials", si.trials, "Monte-Carlo trials")->default_val(1000);
  sim->add_option("--seed", si.seed, "master seed (trial i uses stream i)")->default_val(1);
  sim->add_option("--out", si.out, "CSV output path (default: stdout)");
  sim->add_option("--timing", si.timing, "cascade timing: per-reception | terminal")
      ->check(CLI::IsMember({"per-reception", "terminal"}));
  sim->add_flag("--hist", si.hist, "print completion-time histogram to stderr");
  sim->callback([&] {
    cmd_simulate(si.scheme, si.trials, si.seed, si.out,
                 si.timing == "terminal" ? ovc::CascadeTiming::terminal
                                         : ovc::CascadeTiming::per_reception,
                 si.hist);
  });

  // ---- exact ----
  auto* ex = app.add_subcommand("exact", "exact success probability after n receptions");
  struct {
    std::string scheme, mode = "sequential";
    std::uint64_t n = 0;
    std::vector<std::uint32_t> start;
  } ec;
  ex->add_option("--scheme", ec.scheme, "scheme JSON file")->required();
  ex->add_option("--n", ec.n, "number of receptions")->required();
  ex->add_option("--mode", ec.mode, "reception model: sequential | multiset")
      ->check(CLI::IsMember({"sequential", "multiset"}));
  ex->add_option("--start", ec.start, "initial per-class innovative counts")->delimiter(',');
  ex->callback([&] { cmd_exact(ec.scheme, ec.n, ec.mode, ec.start); });

  // ---- tradeoff ----
  auto* tr = app.add_subcommand("tradeoff", "sweep schemes: bound vs overhead CSV");
  struct {
    std::string preset, out;
    std::vector<std::string> schemes;
    std::uint64_t trials = 200, seed = 1;
  } tc;
  tr->add_option("--preset", tc.preset, "named collection: k1000-grids | k1024-mixed");
  tr->add_option("--schemes", tc.schemes, "scheme JSON files")->expected(-1);
  tr->add_option("--trials", tc.trials, "Monte-Carlo trials per scheme")->default_val(200);
  tr->add_option("--seed", tc.seed, "master seed")->default_val(1);
  tr->add_option("--out", tc.out, "CSV output path (default: stdout)");
  tr->callback([&] { cmd_tradeoff(tc.preset, tc.schemes, tc.trials, tc.seed, tc.out); });

  // ---- verify ----
  auto* ve = app.add_subcommand("verify", "end-to-end source->relay->destination check");
  struct {
    std::string scheme, emit, in;
    std::uint32_t m = 32;
    std::uint64_t seed = 1;
  } vc;
  ve->add_option("--scheme", vc.scheme, "scheme JSON file")->required();
  ve->add_option("--m", vc.m, "payload symbols per packet")->default_val(32);
  ve->add_option("--seed", vc.seed, "run seed")->default_val(1);
  ve->add_option("--emit", vc.emit, "also write the received packet stream to this file");
  ve->add_option("--in", vc.in, "replay a previously emitted packet stream instead of relaying");
  ve->callback([&] { cmd_verify(vc.scheme, vc.m, vc.seed, vc.emit, vc.in); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ovc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ovc::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ovc::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ovc::SchemeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
