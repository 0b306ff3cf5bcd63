#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "packbounds/report.hpp"

using namespace packbounds;

namespace {

struct Flags {
  std::string dims, methods, format, output, config, big_radii;
  double theta = 0.0, r = 0.0, rel_tol = 0.0;
  int degree = 0, threads = 0;
  long long samples = 0;
  unsigned long long seed = 0;
  bool refined = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--dims,--n", f.dims, "dimensions, e.g. 12,24,48 or 90..100");
  sub->add_option("--format", f.format, "csv, json or text");
  sub->add_option("--output,-o", f.output, "write the result to this file");
  sub->add_option("--config", f.config, "key=value file applied before the flags");
  sub->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
  sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds on sphere packing density in Euclidean and hyperbolic space"};
  app.require_subcommand(1);
  Flags f;

  auto* table = app.add_subcommand("table", "bounds for a list of dimensions (default: the reference table)");
  auto* bound = app.add_subcommand("bound", "bounds for the given dimensions and methods");
  auto* crossover = app.add_subcommand("crossover", "best of rogers/levenshtein/kl per dimension");
  auto* lp = app.add_subcommand("lp", "Delsarte LP bound for spherical codes");
  auto* hyper = app.add_subcommand("hyperbolic", "packing bound in hyperbolic space");
  auto* overlap = app.add_subcommand("overlap", "overlap fraction of two hyperbolic balls");
  auto* rate = app.add_subcommand("rate", "optimal angle and exponent of the asymptotic bound");

  for (auto* sub : {table, bound, crossover, lp, hyper, overlap, rate}) add_common(sub, f);
  for (auto* sub : {table, bound}) {
    sub->add_option("--methods", f.methods, "rogers,levenshtein,kl,cz,lp_transfer");
    sub->add_option("--theta", f.theta, "angle for lp_transfer");
    sub->add_option("--degree", f.degree, "LP degree for lp_transfer");
  }
  lp->add_option("--theta", f.theta, "minimal angle");
  lp->add_option("--degree", f.degree, "polynomial degree");
  hyper->add_option("--r", f.r, "packing radius");
  hyper->add_option("--theta", f.theta, "fixed angle (default: optimise over [pi/3, pi])");
  hyper->add_flag("--refined", f.refined, "use the volume ratio instead of sin^{n-1}(theta/2)");
  overlap->add_option("--r", f.r, "distance between the centres");
  overlap->add_option("--R", f.big_radii, "ball radius, or a comma-separated list");
  overlap->add_option("--samples", f.samples, "Monte-Carlo samples at the largest R (0 = none)");
  overlap->add_option("--seed", f.seed, "Monte-Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("invalid_config", e.what()) << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunConfig cfg;
  cfg.command = *parse_command(chosen->get_name());
  auto given = [&](const char* name) {
    try {
      return chosen->get_option(name)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  try {
    if (given("--config")) apply_config(cfg, read_config_file(f.config));
    if (given("--dims")) cfg.dims = parse_dims(f.dims);
    if (given("--methods")) apply_config(cfg, {{"methods", f.methods}});
    if (given("--format")) apply_config(cfg, {{"format", f.format}});
    if (given("--output")) cfg.output_path = f.output;
    if (given("--rel-tol")) cfg.rel_tol = f.rel_tol;
    if (given("--threads")) cfg.threads = f.threads;
    if (given("--theta")) cfg.theta = f.theta;
    if (given("--degree")) cfg.degree = f.degree;
    if (given("--r")) cfg.r = f.r;
    if (given("--R")) cfg.big_radii = parse_reals(f.big_radii);
    if (given("--samples")) cfg.samples = f.samples;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--refined")) cfg.refined = f.refined;
  } catch (const ConfigError& e) {
    std::cerr << error_json("invalid_config", e.what()) << "\n";
    return 2;
  }
  return run(cfg, std::cout, std::cerr);
}
