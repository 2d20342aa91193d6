#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ncorr/error.hpp"
#include "ncorr/parallel.hpp"

int main(int argc, char** argv) {
  using namespace ncorr::cli;
  CLI::App app{"ncorr: n-correlation of CUE eigenangles and zeta zeros"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--seed", cfg.seed, "RNG seed");
    sc->add_option("--out", cfg.out, "output path, - for stdout");
    sc->add_option("--workers", cfg.workers, "worker threads, 0 for all cores");
    sc->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto zeta_flags = [&](CLI::App* sc) {
    sc->add_option("--prime-cutoff", cfg.prime_cutoff, "largest prime in Euler products");
    sc->add_option("--quad-nodes", cfg.quad_nodes, "starting theta nodes per prime");
    sc->add_option("--em-terms", cfg.em_terms, "Euler-Maclaurin order for zeta");
  };

  auto* rmt = app.add_subcommand("rmt-correlate", "CUE n-correlation against the sine-kernel determinant");
  rmt->add_option("--n", cfg.n, "number of points (1..4)");
  rmt->add_option("--size", cfg.size, "matrix size N");
  rmt->add_option("--grid", cfg.grid, "lin:a:b:count, random:count or a file");
  rmt->add_flag("--scaled", cfg.scaled, "grid in units of the mean spacing 2pi/N");
  common(rmt);

  auto* zc = app.add_subcommand("zeta-correlate", "conjectural n-correlation of zeta zeros at height t");
  zc->add_option("--n", cfg.n, "number of points (2..4)");
  zc->add_option("--t", cfg.t, "height");
  zc->add_option("--engine", cfg.engine, "closed_form, general_machinery or both");
  zc->add_option("--chi", cfg.chi, "approx (ell) or exact chi factors");
  zc->add_option("--grid", cfg.grid, "lin:a:b:count, random:count or a file");
  zc->add_flag("--scaled", cfg.scaled, "grid in units of the mean spacing 2pi/ell");
  zeta_flags(zc);
  common(zc);

  auto* val = app.add_subcommand("validate", "run named validation checks");
  val->add_option("--check", cfg.checks, "check name (repeatable); default all");
  val->add_option("--samples", cfg.samples, "Monte Carlo samples");
  val->add_option("--zeros", cfg.zeros, "zero table for zeros-pair");
  zeta_flags(val);
  common(val);

  auto* zch = app.add_subcommand("zeros-check", "counting check and pair statistic for a zero table");
  zch->add_option("--zeros", cfg.zeros, "zero table path")->required();
  zch->add_option("--window", cfg.window, "lo:hi");
  zch->add_option("--sigma", cfg.sigma, "Gaussian width of the pair test function");
  zch->add_option("--T", cfg.heights, "heights for the counting check (repeatable)");
  zeta_flags(zch);
  common(zch);

  CLI11_PARSE(app, argc, argv);
  if (val->parsed() && val->count("--prime-cutoff") == 0) cfg.prime_cutoff = 101;
  ncorr::set_default_workers(cfg.workers);

  const std::string name = app.get_subcommands().front()->get_name();
  Document doc(name);
  try {
    int code = 0;
    if (name == "rmt-correlate") code = cmd_rmt_correlate(cfg, doc);
    if (name == "zeta-correlate") code = cmd_zeta_correlate(cfg, doc);
    if (name == "validate") code = cmd_validate(cfg, doc);
    if (name == "zeros-check") code = cmd_zeros_check(cfg, doc);
    doc.write(cfg.out, cfg.format);
    return code;
  } catch (const ncorr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
