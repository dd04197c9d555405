// Command-line front end: every pipeline behind a subcommand with
// machine-readable output (JSON by default, CSV/DOT where applicable).
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "gowers/apps.hpp"
#include "gowers/norms.hpp"
#include "gowers/report.hpp"
#include "gowers/seq.hpp"
#include "gowers/spectral.hpp"
#include "gowers/version.hpp"
#include "gowers/walk.hpp"

namespace {

using namespace gowers;

constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;

struct Options {
  std::string seq_id = "tm";
  int s = 2;
  std::uint64_t n = 1024;
  bool csv = false;
  std::uint64_t work_budget = kDefaultWorkBudget;
  std::uint64_t vertex_cap = 1'000'000;
  int threads = 0;
};

EnumLimits limits(const Options& opt) {
  return EnumLimits{opt.work_budget, opt.threads};
}

NormMethod parse_method(const std::string& name) {
  if (name == "brute") return NormMethod::brute;
  if (name == "nested") return NormMethod::nested;
  if (name == "dyadic") return NormMethod::dyadic;
  throw CLI::ValidationError("--method", "unknown method: " + name);
}

std::vector<std::uint64_t> parse_ladder(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stoull(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--n-ladder", "empty ladder");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gowers uniformity norms of automatic sequences"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Options opt;
  app.add_option("--work-budget", opt.work_budget,
                 "max elementary cube evaluations per enumeration");
  app.add_option("--vertex-cap", opt.vertex_cap, "walk BFS vertex cap");
  app.add_option("--threads", opt.threads,
                 "maximum concurrent workers (0 = hardware)");
  app.add_flag("--csv", opt.csv, "CSV output where supported");

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "Gowers norm of a sequence on [0,n)");
  std::string method_name_opt = "nested";
  norm_cmd->add_option("--seq", opt.seq_id, "tm | rs | pattern:<bits>");
  norm_cmd->add_option("--s", opt.s, "norm order")->required();
  norm_cmd->add_option("--n", opt.n, "interval length")->required();
  norm_cmd->add_option("--method", method_name_opt, "brute | nested | dyadic");

  // cube-avg
  auto* cube_cmd = app.add_subcommand("cube-avg", "corner-labelled cube average on [2^L]");
  int level = 4;
  std::string offsets_opt, labels_opt;
  cube_cmd->add_option("--seq", opt.seq_id);
  cube_cmd->add_option("--s", opt.s)->required();
  cube_cmd->add_option("--level", level, "domain exponent L")->required();
  cube_cmd->add_option("--offsets", offsets_opt,
                       "comma list, corner mask order (bit i-1 of index = w_i)");
  cube_cmd->add_option("--labels", labels_opt, "comma list of kernel element names");
  std::string cube_method = "nested";
  cube_cmd->add_option("--method", cube_method, "brute | nested");

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "signed walk graph");
  std::string graph_out = "json";
  graph_cmd->add_option("--seq", opt.seq_id);
  graph_cmd->add_option("--s", opt.s)->required();
  graph_cmd->add_option("--out", graph_out, "json | dot");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "spectral gap and discrepancy decay");
  int fit_lo = 10, fit_hi = 30, lmax = 30;
  spec_cmd->add_option("--seq", opt.seq_id);
  spec_cmd->add_option("--s", opt.s)->required();
  spec_cmd->add_option("--max-l", lmax, "largest step count sampled");
  std::string fit_window;
  spec_cmd->add_option("--fit-window", fit_window, "lo,hi (default 10,30)");
  bool spec_plot = false;
  spec_cmd->add_flag("--plot", spec_plot, "two-column l discrepancy output");

  // aps
  auto* aps_cmd = app.add_subcommand("aps", "arithmetic progressions in the +1 set");
  int k = 3;
  std::string ladder_opt;
  bool plot = false;
  aps_cmd->add_option("--seq", opt.seq_id);
  aps_cmd->add_option("--k", k, "progression length")->required();
  aps_cmd->add_option("--n", opt.n, "interval length");
  aps_cmd->add_option("--n-ladder", ladder_opt, "comma list of interval lengths");
  aps_cmd->add_flag("--plot", plot, "two-column n |deviation| output");

  // expsum
  auto* exp_cmd = app.add_subcommand("expsum", "sup of the twisted sum over an alpha grid");
  std::uint64_t grid = 0;
  double exponent = 0.0;
  exp_cmd->add_option("--seq", opt.seq_id);
  exp_cmd->add_option("--n", opt.n)->required();
  exp_cmd->add_option("--grid", grid, "grid size (default 8n, must be >= 4n)");
  exp_cmd->add_option("--exponent", exponent, "normalization exponent (default per sequence)");

  // corr
  auto* corr_cmd = app.add_subcommand("corr", "progression sums and polynomial phases");
  std::uint64_t ca = 1, cb = 0, cm = 0;
  std::string poly_opt;
  corr_cmd->add_option("--seq", opt.seq_id);
  corr_cmd->add_option("--a", ca, "progression step");
  corr_cmd->add_option("--b", cb, "progression offset");
  corr_cmd->add_option("--m", cm, "number of terms");
  corr_cmd->add_option("--poly", poly_opt, "comma coefficients c0,c1,... of a phase polynomial");
  corr_cmd->add_option("--n", opt.n, "interval length for --poly");

  // selfcorr
  auto* self_cmd = app.add_subcommand("selfcorr", "largest shifted self-correlation");
  std::uint64_t h_max = 1;
  self_cmd->add_option("--seq", opt.seq_id);
  self_cmd->add_option("--n", opt.n)->required();
  self_cmd->add_option("--h-max", h_max, "largest shift scanned")->required();

  // scan-conjecture
  auto* scan_cmd = app.add_subcommand("scan-conjecture",
                                      "evidence table for pattern sequences");
  std::string patterns_opt = "1,11,111";
  std::uint64_t q_max = 8;
  scan_cmd->add_option("--patterns", patterns_opt, "comma list of binary words");
  scan_cmd->add_option("--s", opt.s);
  scan_cmd->add_option("--n", opt.n);
  scan_cmd->add_option("--q-max", q_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*norm_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      auto rep = gowers_norm(seq, opt.n, opt.s, parse_method(method_name_opt),
                             limits(opt));
      std::cout << (opt.csv ? to_csv(rep) : to_json(rep) + "\n");
    } else if (*cube_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      CubeSpec spec = CubeSpec::zero(opt.s, level);
      if (!offsets_opt.empty()) {
        auto vals = parse_ladder(offsets_opt);
        if (vals.size() != spec.offsets.size())
          throw std::invalid_argument("--offsets needs 2^s entries");
        for (std::size_t i = 0; i < vals.size(); ++i)
          spec.offsets[i] = static_cast<int>(vals[i]);
      }
      if (!labels_opt.empty()) {
        std::vector<std::string> names;
        std::size_t pos = 0;
        while (pos < labels_opt.size()) {
          auto next = labels_opt.find(',', pos);
          if (next == std::string::npos) next = labels_opt.size();
          names.push_back(labels_opt.substr(pos, next - pos));
          pos = next + 1;
        }
        if (names.size() != spec.labels.size())
          throw std::invalid_argument("--labels needs 2^s entries");
        for (std::size_t i = 0; i < names.size(); ++i) {
          auto e = seq.element_by_name(names[i]);
          if (!e) throw std::invalid_argument("unknown kernel element: " + names[i]);
          spec.labels[i] = *e;
        }
      }
      auto avg = cube_average(seq, spec, parse_method(cube_method), limits(opt));
      std::cout << to_json(seq, spec, avg) << "\n";
    } else if (*graph_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      auto g = build_graph(seq, opt.s, opt.vertex_cap);
      if (graph_out == "dot") {
        std::cout << to_dot(g);
      } else if (graph_out == "json") {
        std::cout << graph_json(g, analyze_graph(g)) << "\n";
      } else {
        throw std::invalid_argument("unknown graph output: " + graph_out);
      }
    } else if (*spec_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      if (!fit_window.empty()) {
        auto vals = parse_ladder(fit_window);
        if (vals.size() != 2) throw std::invalid_argument("--fit-window needs lo,hi");
        fit_lo = static_cast<int>(vals[0]);
        fit_hi = static_cast<int>(vals[1]);
      }
      auto g = build_graph(seq, opt.s, opt.vertex_cap);
      auto est = spectral_gap(g, std::max(lmax, fit_hi), fit_lo, fit_hi);
      if (spec_plot) {
        for (auto [l, d] : est.samples) std::printf("%d %.17g\n", l, d);
      } else {
        std::cout << spectrum_json(seq.id(), opt.s, est) << "\n";
      }
    } else if (*aps_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      std::vector<std::uint64_t> ns =
          ladder_opt.empty() ? std::vector<std::uint64_t>{opt.n}
                             : parse_ladder(ladder_opt);
      std::vector<APCountReport> reps;
      for (auto n : ns) reps.push_back(ap_count(seq, n, k, limits(opt)));
      if (plot) {
        for (const auto& rep : reps)
          std::printf("%llu %.17g\n",
                      static_cast<unsigned long long>(rep.n),
                      std::abs(rep.deviation));
      } else if (opt.csv) {
        std::cout << to_csv(reps);
      } else {
        for (const auto& rep : reps) std::cout << to_json(rep) << "\n";
      }
    } else if (*exp_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      auto rep = exp_sum(seq, opt.n, grid, exponent);
      if (opt.csv)
        std::cout << to_csv(std::vector<ExpSumReport>{rep});
      else
        std::cout << to_json(rep) << "\n";
    } else if (*corr_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      if (!poly_opt.empty()) {
        std::vector<double> coeffs;
        std::size_t pos = 0;
        while (pos < poly_opt.size()) {
          auto next = poly_opt.find(',', pos);
          if (next == std::string::npos) next = poly_opt.size();
          coeffs.push_back(std::stod(poly_opt.substr(pos, next - pos)));
          pos = next + 1;
        }
        double v = poly_phase_corr(seq, opt.n, coeffs);
        std::cout << poly_phase_json(seq.id(), opt.n, coeffs, v) << "\n";
      } else {
        if (cm == 0) throw std::invalid_argument("--m required (or use --poly)");
        long long v = progression_sum(seq, ca, cb, cm);
        std::cout << progression_json(seq.id(), ca, cb, cm, v) << "\n";
      }
    } else if (*self_cmd) {
      auto seq = AutomaticSequence::from_id(opt.seq_id);
      auto best = self_correlation_scan(seq, opt.n, h_max);
      std::cout << to_json(seq.id(), opt.n, h_max, best) << "\n";
    } else if (*scan_cmd) {
      std::vector<BitWord> patterns;
      std::size_t pos = 0;
      while (pos < patterns_opt.size()) {
        auto next = patterns_opt.find(',', pos);
        if (next == std::string::npos) next = patterns_opt.size();
        auto w = BitWord::parse(patterns_opt.substr(pos, next - pos));
        if (!w || !w->valid_pattern())
          throw std::invalid_argument("bad pattern in --patterns");
        patterns.push_back(*w);
        pos = next + 1;
      }
      auto rows = conjecture_scan(patterns, opt.s, opt.n, q_max, limits(opt));
      if (opt.csv)
        std::cout << conjecture_csv(rows);
      else
        std::cout << conjecture_json(rows, opt.s, opt.n, q_max) << "\n";
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
