#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "packbounds/euclid_bounds.hpp"
#include "packbounds/log_scaled.hpp"
#include "packbounds/quadrature.hpp"

namespace packbounds {

/// Scientific notation "m.mmme<exp>" whose mantissa is the smallest
/// sig_digits-digit decimal >= v. Requires v > 0.
std::string render_round_up(const LogScaled& v, int sig_digits = 4);

struct Transition {
  int last_n = 0;   // last dimension of the old winner
  int first_n = 0;  // first dimension of the new winner
  Method from = Method::rogers;
  Method to = Method::rogers;
};

struct CrossoverScan {
  std::vector<std::pair<int, Method>> best;
  std::vector<Transition> transitions;
};

/// best_method for each n in dims (ascending), with the changes of winner.
CrossoverScan crossover_scan(const std::vector<int>& dims, const Quadrature& q = {}, int threads = 0);
CrossoverScan crossover_scan(int lo, int hi, const Quadrature& q = {}, int threads = 0);

/// One output line: n,method,value_log10,value_rounded,k_star,theta_star.
struct OutputRow {
  int n = 0;
  std::string method;
  double value_log10 = 0.0;
  std::string value_rounded;
  std::optional<int> k_star;
  std::optional<double> theta_star;

  friend bool operator==(const OutputRow&, const OutputRow&) = default;
};

inline constexpr const char* kCsvHeader = "n,method,value_log10,value_rounded,k_star,theta_star";

OutputRow make_row(const BoundRecord& rec, std::string method_name = {});

std::string write_csv(const std::vector<OutputRow>& rows);
std::vector<OutputRow> parse_csv(const std::string& text);
std::string write_json(const std::vector<OutputRow>& rows);
std::vector<OutputRow> parse_json(const std::string& text);

/// Bound rows for every (n, method), ordered by n then by the method list.
/// Dimensions are computed concurrently. lp_transfer uses an LP certificate
/// of the given degree at theta.
std::vector<OutputRow> table_rows(const std::vector<int>& dims, const std::vector<Method>& methods,
                                  const Quadrature& q = {}, int threads = 0,
                                  std::optional<double> theta = std::nullopt, int lp_degree = 24);

enum class Command { table, bound, crossover, lp, hyperbolic, overlap, rate };
enum class Format { csv, json, text };

std::optional<Command> parse_command(const std::string& s);
std::optional<Format> parse_format(const std::string& s);

struct RunConfig {
  Command command = Command::table;
  std::vector<int> dims;
  std::vector<std::string> methods;
  std::optional<double> theta;
  std::optional<double> r;
  /// Ball radii for the overlap command.
  std::vector<double> big_radii;
  std::optional<int> degree;
  bool refined = false;
  /// Unset: JSON for rate, CSV otherwise.
  std::optional<Format> format;
  double rel_tol = 1e-11;
  std::uint64_t seed = 20240601;
  std::int64_t samples = 0;
  int threads = 0;
  std::optional<std::string> output_path;
};

/// Raised for malformed configuration; run() maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "12,24,48" and "90..100" (inclusive), mixed freely.
std::vector<int> parse_dims(const std::string& s);
std::vector<double> parse_reals(const std::string& s);

/// Reads key=value lines ('#' comments) into a map; throws ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);
/// Applies recognised keys (rel_tol, seed, threads, samples, format, degree,
/// theta, r, R, dims, methods, output, refined) to cfg; unknown keys are an error.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

/// Executes cfg. Output goes to cfg.output_path when set, else `out`.
/// Returns 0 on success, 2 on invalid configuration, 3 on numerical
/// non-convergence, 1 on any other failure; failures write one JSON object
/// to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// JSON diagnostic for stderr.
std::string error_json(const std::string& kind, const std::string& message,
                       const std::string& where = {}, const std::string& detail = {});

}  // namespace packbounds
