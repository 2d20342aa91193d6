#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include "grid.hpp"
#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/primes.hpp"
#include "ncorr/rmt.hpp"
#include "ncorr/validation.hpp"
#include "ncorr/zeros.hpp"
#include "ncorr/zeta.hpp"

namespace ncorr::cli {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::InvalidArgument, msg);
}

zeros::Window parse_window(const std::string& s) {
  const auto colon = s.find(':');
  require(colon != std::string::npos, "window must be lo:hi, got '" + s + "'");
  const double lo = std::stod(s.substr(0, colon)), hi = std::stod(s.substr(colon + 1));
  require(lo > 0 && lo < hi, "window needs 0 < lo < hi");
  return {lo, hi};
}

}  // namespace

json echo_config(const RunConfig& c, const std::string& command) {
  json j;
  j["command"] = command;
  if (command == "rmt-correlate") {
    j["n"] = c.n;
    j["size"] = c.size;
    j["grid"] = c.grid;
    j["scaled"] = c.scaled;
  } else if (command == "zeta-correlate") {
    j["n"] = c.n;
    j["t"] = c.t;
    j["prime_cutoff"] = c.prime_cutoff;
    j["quad_nodes"] = c.quad_nodes;
    j["em_terms"] = c.em_terms;
    j["engine"] = c.engine;
    j["chi"] = c.chi;
    j["grid"] = c.grid;
    j["scaled"] = c.scaled;
  } else if (command == "validate") {
    j["checks"] = c.checks;
    j["prime_cutoff"] = c.prime_cutoff;
    j["quad_nodes"] = c.quad_nodes;
    j["em_terms"] = c.em_terms;
    j["samples"] = c.samples;
    j["zeros"] = c.zeros;
  } else if (command == "zeros-check") {
    j["zeros"] = c.zeros;
    j["window"] = c.window;
    j["sigma"] = c.sigma;
    j["prime_cutoff"] = c.prime_cutoff;
    j["heights"] = c.heights;
  }
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["format"] = c.format;
  j["out"] = c.out;
  return j;
}

int cmd_rmt_correlate(const RunConfig& cfg, Document& doc) {
  require(cfg.n >= 1 && cfg.n <= 4, "--n must be in 1..4 (rmt-correlate guard n <= 4)");
  require(cfg.size >= 1 && cfg.size <= 64, "--size must be in 1..64 (matrix size guard)");
  doc.config() = echo_config(cfg, "rmt-correlate");
  const double unit = cfg.scaled ? kTwoPi / cfg.size : 1.0;
  double worst = 0.0;
  for (auto tup : parse_grid(cfg.grid, cfg.n, cfg.seed)) {
    for (auto& x : tup) x *= unit;
    const double r = rmt::correlation_rmt(tup, cfg.size);
    const double d = rmt::determinant_oracle(tup, cfg.size);
    const double disc = std::abs(r - d) / std::max(1.0, std::abs(d));
    worst = std::max(worst, disc);
    doc.add_result({{"point", tup}, {"value", r}, {"determinant", d}, {"discrepancy", disc}});
  }
  doc.summary() = {{"max_discrepancy", worst}};
  return 0;
}

int cmd_zeta_correlate(const RunConfig& cfg, Document& doc) {
  require(cfg.n >= 2 && cfg.n <= 4, "--n must be in 2..4 for zeta-correlate");
  require(cfg.engine == "closed_form" || cfg.engine == "general_machinery" || cfg.engine == "both",
          "--engine must be closed_form, general_machinery or both");
  require(cfg.chi == "approx" || cfg.chi == "exact", "--chi must be approx or exact");
  require(!(cfg.chi == "exact" && cfg.engine != "general_machinery"),
          "closed forms use the ell approximation; use --engine general_machinery with --chi exact");
  require(cfg.quad_nodes >= 32 && (cfg.quad_nodes & (cfg.quad_nodes - 1)) == 0,
          "--quad-nodes must be a power of two >= 32");
  doc.config() = echo_config(cfg, "zeta-correlate");
  const auto ctx = primes::PrimeContext::build(cfg.prime_cutoff, primes::TailPolicy::None);
  const auto h = zeta::HeightContext::at(cfg.t, cfg.chi == "exact" ? zeta::XMode::ExactChi : zeta::XMode::EllApprox);
  zeta::ZetaCorrelationRequest req;
  req.height = h;
  req.config.primes = &ctx;
  req.config.quad.nodes = cfg.quad_nodes;
  req.config.zeta.em_order = cfg.em_terms;
  const double unit = cfg.scaled ? kTwoPi / h.ell : 1.0;
  double worst_agree = 0.0, worst_sine = 0.0;
  for (auto tup : parse_grid(cfg.grid, cfg.n, cfg.seed)) {
    for (auto& x : tup) x *= unit;
    req.points = tup;
    json r;
    r["point"] = tup;
    double value = 0.0;
    if (cfg.engine != "general_machinery") {
      req.engine = zeta::Engine::ClosedForm;
      value = zeta::correlation_zeta(req);
      r["value_closed_form"] = value;
    }
    if (cfg.engine != "closed_form") {
      req.engine = zeta::Engine::GeneralMachinery;
      const double g = zeta::correlation_zeta(req);
      r["value_general_machinery"] = g;
      if (cfg.engine == "both") {
        const double a = std::abs(value - g) / std::max(1.0, std::abs(g));
        worst_agree = std::max(worst_agree, a);
        r["agreement"] = a;
      }
      value = g;
    }
    if (cfg.n == 2) {
      const double rr = std::abs(tup[1] - tup[0]) * h.ell / kTwoPi;
      const double lim = zeta::sine_kernel_limit(rr);
      r["scaled_value"] = value / (h.ell * h.ell);
      r["sine_kernel_limit"] = lim;
      r["sine_kernel_deviation"] = std::abs(value / (h.ell * h.ell) - lim);
      worst_sine = std::max(worst_sine, std::abs(value / (h.ell * h.ell) - lim));
    }
    doc.add_result(std::move(r));
  }
  json s{{"ell", h.ell}};
  if (cfg.engine == "both") s["max_agreement"] = worst_agree;
  if (cfg.n == 2) s["max_sine_kernel_deviation"] = worst_sine;
  doc.summary() = s;
  doc.add_caveat("Values are conjectural: they assume the ratios conjecture and omit its O(T^{1/2+eps}) error term.");
  if (cfg.chi == "approx") doc.add_caveat("chi factors replaced by the ell = log(t/2pi) approximation.");
  doc.add_caveat("Euler products and prime sums truncated at p <= " + std::to_string(cfg.prime_cutoff) + ".");
  return 0;
}

int cmd_validate(const RunConfig& cfg, Document& doc) {
  RunConfig c = cfg;
  if (c.checks.empty()) c.checks = validation::check_names();
  doc.config() = echo_config(c, "validate");
  validation::ValidationConfig vc;
  vc.seed = c.seed;
  vc.samples = c.samples;
  vc.prime_cutoff = c.prime_cutoff;
  vc.quad_nodes = c.quad_nodes;
  vc.em_terms = c.em_terms;
  vc.zeros_path = c.zeros;
  vc.workers = c.workers;
  bool all = true;
  for (const auto& name : c.checks) {
    json r;
    r["check"] = name;
    try {
      const auto res = validation::run_check(name, vc);
      r["passed"] = res.passed;
      r["measured"] = res.measured;
      r["threshold"] = res.threshold;
      r["detail"] = res.detail;
      all = all && res.passed;
    } catch (const Error& e) {
      r["passed"] = false;
      r["error"] = e.what();
      all = false;
    }
    doc.add_result(std::move(r));
  }
  doc.summary() = {{"all_passed", all}};
  return all ? 0 : 1;
}

int cmd_zeros_check(const RunConfig& cfg, Document& doc) {
  if (cfg.zeros.empty()) throw Error(Errc::MissingInput, "zeros-check needs --zeros <path>");
  doc.config() = echo_config(cfg, "zeros-check");
  const auto table = zeros::load_zero_table(cfg.zeros);
  std::vector<double> Ts = cfg.heights;
  if (Ts.empty()) Ts = {100.0, table.gammas.back()};
  bool ok = true;
  for (double T : Ts) {
    const auto c = zeros::counting_check(table, T);
    ok = ok && !c.flagged;
    doc.add_result({{"kind", "counting"}, {"T", T}, {"observed", c.observed}, {"predicted", c.predicted},
                    {"flagged", c.flagged}});
  }
  const auto w = parse_window(cfg.window);
  const auto f = zeros::gaussian_pair(cfg.sigma);
  zeros::EmpiricalOptions opt;
  opt.workers = cfg.workers;
  const auto emp = zeros::empirical_correlation(table, f, w, opt);
  const auto ctx = primes::PrimeContext::build(cfg.prime_cutoff, primes::TailPolicy::None);
  const zeros::PairConjecture pc(ctx, f.support);
  const auto full = pc.window_integral(f, w, opt.sub_windows, zeros::PairModel::FullFormula);
  const auto sine = pc.window_integral(f, w, opt.sub_windows, zeros::PairModel::SineKernel);
  const double z = (emp.value - full.value) / emp.std_error;
  doc.add_result({{"kind", "pair_statistic"},
                  {"test_function", emp.descriptor},
                  {"window", {w.first, w.second}},
                  {"value", emp.value},
                  {"std_error", emp.std_error},
                  {"conjecture_full", full.value},
                  {"conjecture_sine_kernel", sine.value},
                  {"z_full", z},
                  {"z_sine_kernel", (emp.value - sine.value) / emp.std_error}});
  ok = ok && std::abs(z) <= 3.0;
  doc.summary() = {{"count", table.count()}, {"source", table.source}, {"all_passed", ok}};
  doc.add_caveat("Conjecture side integrates the pair density over t within 16 geometric sub-windows.");
  return ok ? 0 : 1;
}

}  // namespace ncorr::cli
