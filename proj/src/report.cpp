#include "packbounds/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "packbounds/errors.hpp"
#include "packbounds/hyperbolic.hpp"
#include "packbounds/spherical_lp.hpp"

namespace packbounds {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRoundUpSlack = 1e-11;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Runs body(i) for i in [0, count) on a small pool; results are written by
// index so completion order never shows in the output. The first exception
// (lowest index) is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int pool_size = static_cast<int>(std::min<std::size_t>(resolve_threads(threads), count));
  std::vector<std::thread> pool;
  for (int t = 1; t < pool_size; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(trim(v), &pos);
    if (pos != trim(v).size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": '" + v + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(trim(v), &pos);
    if (pos != trim(v).size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  }
}

}  // namespace

std::string render_round_up(const LogScaled& v, int sig_digits) {
  if (v.is_zero() || !std::isfinite(v.log())) throw std::domain_error("render_round_up: requires a finite v > 0");
  if (sig_digits < 1 || sig_digits > 15) throw std::domain_error("render_round_up: sig_digits outside [1, 15]");
  const double l10 = v.log10();
  // Values within round-off of a power of ten belong to that decade.
  int exponent = static_cast<int>(std::floor(l10 + 1e-12));
  const double scale = std::pow(10.0, sig_digits - 1);
  const double scaled = std::pow(10.0, l10 - exponent) * scale;
  double digits = std::ceil(scaled * (1.0 - kRoundUpSlack));
  if (digits < scale) digits = scale;
  if (digits >= 10.0 * scale) {
    digits = scale;
    ++exponent;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0f", digits);
  std::string mantissa(buf);
  if (sig_digits > 1) mantissa.insert(1, ".");
  return mantissa + "e" + std::to_string(exponent);
}

CrossoverScan crossover_scan(const std::vector<int>& dims_in, const Quadrature& q, int threads) {
  std::vector<int> dims = dims_in;
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  for (int n : dims)
    if (n < 4 || n > 800) throw std::domain_error("crossover_scan: dimensions must lie in [4, 800]");
  CrossoverScan scan;
  scan.best.resize(dims.size());
  parallel_for(dims.size(), threads, [&](std::size_t i) { scan.best[i] = {dims[i], best_method(dims[i], q)}; });
  for (std::size_t i = 1; i < scan.best.size(); ++i)
    if (scan.best[i].second != scan.best[i - 1].second)
      scan.transitions.push_back(
          {scan.best[i - 1].first, scan.best[i].first, scan.best[i - 1].second, scan.best[i].second});
  return scan;
}

CrossoverScan crossover_scan(int lo, int hi, const Quadrature& q, int threads) {
  if (!(4 <= lo && lo <= hi && hi <= 800)) throw std::domain_error("crossover_scan: requires 4 <= lo <= hi <= 800");
  std::vector<int> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(n);
  return crossover_scan(dims, q, threads);
}

OutputRow make_row(const BoundRecord& rec, std::string method_name) {
  OutputRow row;
  row.n = rec.dimension;
  row.method = method_name.empty() ? std::string(method_id(rec.method)) : std::move(method_name);
  row.value_log10 = rec.value.log10();
  row.value_rounded = render_round_up(rec.value, 4);
  row.k_star = rec.k_star;
  row.theta_star = rec.theta_star;
  return row;
}

std::string write_csv(const std::vector<OutputRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + r.method + "," + format_double(r.value_log10) + "," + r.value_rounded + ",";
    if (r.k_star) out += std::to_string(*r.k_star);
    out += ",";
    if (r.theta_star) out += format_double(*r.theta_star);
    out += "\n";
  }
  return out;
}

std::vector<OutputRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw std::invalid_argument("parse_csv: unexpected header");
  std::vector<OutputRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 6) throw std::invalid_argument("parse_csv: expected 6 fields in '" + line + "'");
    OutputRow r;
    try {
      r.n = std::stoi(f[0]);
      r.method = f[1];
      r.value_log10 = std::stod(f[2]);
      r.value_rounded = f[3];
      if (!f[4].empty()) r.k_star = std::stoi(f[4]);
      if (!f[5].empty()) r.theta_star = std::stod(f[5]);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("parse_csv: malformed row '" + line + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

nlohmann::json rows_to_json(const std::vector<OutputRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["n"] = r.n;
    j["method"] = r.method;
    j["value_log10"] = r.value_log10;
    j["value_rounded"] = r.value_rounded;
    j["k_star"] = r.k_star ? nlohmann::json(*r.k_star) : nlohmann::json(nullptr);
    j["theta_star"] = r.theta_star ? nlohmann::json(*r.theta_star) : nlohmann::json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string write_json(const std::vector<OutputRow>& rows) {
  nlohmann::json doc;
  doc["rows"] = rows_to_json(rows);
  return doc.dump(2) + "\n";
}

std::vector<OutputRow> parse_json(const std::string& text) {
  std::vector<OutputRow> rows;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("rows")) {
      OutputRow r;
      r.n = j.at("n").get<int>();
      r.method = j.at("method").get<std::string>();
      r.value_log10 = j.at("value_log10").get<double>();
      r.value_rounded = j.at("value_rounded").get<std::string>();
      if (!j.at("k_star").is_null()) r.k_star = j.at("k_star").get<int>();
      if (!j.at("theta_star").is_null()) r.theta_star = j.at("theta_star").get<double>();
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("parse_json: ") + e.what());
  }
  return rows;
}

std::vector<OutputRow> table_rows(const std::vector<int>& dims, const std::vector<Method>& methods,
                                  const Quadrature& q, int threads, std::optional<double> theta,
                                  int lp_degree) {
  const std::size_t per_n = methods.size();
  std::vector<OutputRow> rows(dims.size() * per_n);
  parallel_for(dims.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < per_n; ++j) {
      const int n = dims[i];
      if (methods[j] == Method::lp_transfer) {
        if (!theta) throw ConfigError("lp_transfer needs theta");
        const auto p = make_lp_problem(n, *theta, lp_degree);
        const auto cert = lp_solve_spherical(p);
        if (!cert.certified)
          throw NonConvergence("lp_solve_spherical", "certificate failed verification (residual " +
                                                         format_double(cert.max_sign_residual) + ")");
        BoundRecord rec;
        rec.dimension = n;
        rec.method = Method::lp_transfer;
        rec.value = euclid_bound_from_certificate(cert, p);
        rec.k_star = lp_degree;
        rec.theta_star = *theta;
        rows[i * per_n + j] = make_row(rec);
      } else {
        rows[i * per_n + j] = make_row(compute_bound(n, methods[j], q));
      }
    }
  });
  return rows;
}

std::optional<Command> parse_command(const std::string& s) {
  static const std::pair<const char*, Command> table[] = {
      {"table", Command::table}, {"bound", Command::bound}, {"crossover", Command::crossover},
      {"lp", Command::lp}, {"hyperbolic", Command::hyperbolic}, {"overlap", Command::overlap},
      {"rate", Command::rate}};
  for (const auto& [name, c] : table)
    if (s == name) return c;
  return std::nullopt;
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  return std::nullopt;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  for (const auto& raw : split(s, ',')) {
    const auto item = trim(raw);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      dims.push_back(static_cast<int>(parse_integer("dims", item)));
      continue;
    }
    const long long lo = parse_integer("dims", item.substr(0, dots));
    const long long hi = parse_integer("dims", item.substr(dots + 2));
    if (lo > hi || hi - lo > 100000) throw ConfigError("invalid dimension range '" + item + "'");
    for (long long n = lo; n <= hi; ++n) dims.push_back(static_cast<int>(n));
  }
  return dims;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& raw : split(s, ','))
    if (!trim(raw).empty()) out.push_back(parse_real("value", raw));
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "rel_tol") {
      cfg.rel_tol = parse_real(key, value);
    } else if (key == "seed") {
      const long long s = parse_integer(key, value);
      if (s < 0) throw ConfigError("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_integer(key, value));
    } else if (key == "samples") {
      cfg.samples = parse_integer(key, value);
    } else if (key == "format") {
      const auto f = parse_format(value);
      if (!f) throw ConfigError("unknown format '" + value + "'");
      cfg.format = f;
    } else if (key == "degree") {
      cfg.degree = static_cast<int>(parse_integer(key, value));
    } else if (key == "theta") {
      cfg.theta = parse_real(key, value);
    } else if (key == "r") {
      cfg.r = parse_real(key, value);
    } else if (key == "R") {
      cfg.big_radii = parse_reals(value);
    } else if (key == "dims") {
      cfg.dims = parse_dims(value);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& m : split(value, ','))
        if (!trim(m).empty()) cfg.methods.push_back(trim(m));
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "refined") {
      if (value != "true" && value != "false") throw ConfigError("refined must be true or false");
      cfg.refined = value == "true";
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

std::string error_json(const std::string& kind, const std::string& message, const std::string& where,
                       const std::string& detail) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  if (!where.empty()) j["where"] = where;
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

namespace {

std::string text_table(const std::vector<OutputRow>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%6s  %-18s  %-12s  %6s  %s\n", "n", "method", "value", "k*", "theta*");
  out += buf;
  for (const auto& r : rows) {
    const std::string k = r.k_star ? std::to_string(*r.k_star) : "-";
    char theta[32] = "-";
    if (r.theta_star) std::snprintf(theta, sizeof theta, "%.6f", *r.theta_star);
    std::snprintf(buf, sizeof buf, "%6d  %-18s  %-12s  %6s  %s\n", r.n, r.method.c_str(),
                  r.value_rounded.c_str(), k.c_str(), theta);
    out += buf;
  }
  return out;
}

std::string emit_rows(const std::vector<OutputRow>& rows, Format f) {
  switch (f) {
    case Format::csv: return write_csv(rows);
    case Format::json: return write_json(rows);
    case Format::text: return text_table(rows);
  }
  return {};
}

std::vector<Method> resolve_methods(const RunConfig& cfg) {
  std::vector<Method> out;
  if (cfg.methods.empty()) return {Method::rogers, Method::levenshtein, Method::kl, Method::cz};
  for (const auto& m : cfg.methods) {
    const auto parsed = parse_method(m);
    if (!parsed) throw ConfigError("unknown method '" + m + "'");
    out.push_back(*parsed);
  }
  return out;
}

const std::vector<int>& require_dims(const RunConfig& cfg) {
  if (cfg.dims.empty()) throw ConfigError("this command needs --dims");
  return cfg.dims;
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw ConfigError(std::string("this command needs --") + name);
  return *v;
}

std::string run_table(const RunConfig& cfg, const Quadrature& q, Format f) {
  static const std::vector<int> kReferenceDims{12, 24, 36, 48, 60, 72, 84, 96, 108, 120, 240, 360, 480, 600};
  const auto& dims = cfg.command == Command::table && cfg.dims.empty() ? kReferenceDims : require_dims(cfg);
  return emit_rows(table_rows(dims, resolve_methods(cfg), q, cfg.threads, cfg.theta, cfg.degree.value_or(24)), f);
}

std::string run_crossover(const RunConfig& cfg, const Quadrature& q, Format f) {
  const auto scan = crossover_scan(require_dims(cfg), q, cfg.threads);
  std::vector<OutputRow> rows(scan.best.size());
  parallel_for(scan.best.size(), cfg.threads, [&](std::size_t i) {
    rows[i] = make_row(compute_bound(scan.best[i].first, scan.best[i].second, q));
  });
  if (f == Format::csv) return write_csv(rows);
  if (f == Format::json) {
    nlohmann::json doc;
    doc["rows"] = rows_to_json(rows);
    auto tr = nlohmann::json::array();
    for (const auto& t : scan.transitions)
      tr.push_back({{"from", std::string(method_id(t.from))}, {"to", std::string(method_id(t.to))},
                    {"last_n", t.last_n}, {"first_n", t.first_n}});
    doc["transitions"] = tr;
    return doc.dump(2) + "\n";
  }
  std::string out = text_table(rows);
  for (const auto& t : scan.transitions)
    out += std::string(method_id(t.from)) + " -> " + std::string(method_id(t.to)) + " between n=" +
           std::to_string(t.last_n) + " and n=" + std::to_string(t.first_n) + "\n";
  return out;
}

std::string run_lp(const RunConfig& cfg, Format f) {
  const double theta = require(cfg.theta, "theta");
  const int degree = cfg.degree.value_or(24);
  const auto& dims = require_dims(cfg);
  std::vector<LPCertificate> certs(dims.size());
  std::vector<LPProblem> problems(dims.size());
  parallel_for(dims.size(), cfg.threads, [&](std::size_t i) {
    problems[i] = make_lp_problem(dims[i], theta, degree);
    certs[i] = lp_solve_spherical(problems[i]);
  });
  for (const auto& c : certs)
    if (!c.certified)
      throw NonConvergence("lp_solve_spherical", "certificate for n = " + std::to_string(c.n) +
                                                     " failed verification (residual " +
                                                     format_double(c.max_sign_residual) + ")");
  std::vector<OutputRow> rows;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    BoundRecord rec;
    rec.dimension = certs[i].n;
    rec.value = LogScaled::from_value(certs[i].objective);
    rec.k_star = degree;
    rec.theta_star = theta;
    rows.push_back(make_row(rec, "delsarte_lp"));
    if (theta >= kPi / 3.0 - 1e-12) {
      rec.method = Method::lp_transfer;
      rec.value = euclid_bound_from_certificate(certs[i], problems[i]);
      rows.push_back(make_row(rec));
    }
  }
  if (f != Format::json) return emit_rows(rows, f);
  nlohmann::json doc;
  doc["rows"] = rows_to_json(rows);
  auto arr = nlohmann::json::array();
  for (const auto& c : certs) arr.push_back(nlohmann::json::parse(certificate_to_json(c)));
  doc["certificates"] = arr;
  return doc.dump(2) + "\n";
}

std::string run_hyperbolic(const RunConfig& cfg, const Quadrature& q, Format f) {
  const double r = require(cfg.r, "r");
  const auto& dims = require_dims(cfg);
  std::vector<OutputRow> rows(dims.size());
  const std::string name = cfg.refined ? "hyperbolic_refined" : "hyperbolic";
  parallel_for(dims.size(), cfg.threads, [&](std::size_t i) {
    const auto rec = cfg.theta ? hyp_density_bound(dims[i], r, *cfg.theta, cfg.refined, std::nullopt, q)
                               : hyp_bound_optimized(dims[i], r, cfg.refined, q);
    rows[i] = make_row(rec, name);
  });
  return emit_rows(rows, f);
}

std::string run_overlap(const RunConfig& cfg, const Quadrature& q, Format f) {
  const double r = require(cfg.r, "r");
  const auto& dims = require_dims(cfg);
  std::vector<OverlapResult> results(dims.size());
  parallel_for(dims.size(), cfg.threads, [&](std::size_t i) {
    results[i] = overlap_report(dims[i], r, cfg.big_radii, cfg.samples, cfg.seed, q);
  });
  if (f == Format::json) {
    auto arr = nlohmann::json::array();
    for (const auto& res : results) {
      nlohmann::json j;
      j["n"] = res.n;
      j["r"] = res.r;
      j["limit"] = res.limit_value;
      auto fin = nlohmann::json::array();
      for (const auto& [R, v] : res.finite_R_values) fin.push_back({{"R", R}, {"value", v}});
      j["finite"] = fin;
      if (res.mc_estimate)
        j["monte_carlo"] = {{"mean", res.mc_estimate->mean},
                            {"stderr", res.mc_estimate->standard_error},
                            {"samples", res.mc_estimate->samples}};
      else
        j["monte_carlo"] = nullptr;
      arr.push_back(std::move(j));
    }
    nlohmann::json doc;
    doc["overlap"] = arr;
    return doc.dump(2) + "\n";
  }
  std::string out = f == Format::csv ? "n,r,R,kind,value,stderr\n" : "";
  for (const auto& res : results) {
    auto line = [&](const std::string& R, const char* kind, double v, const std::string& se) {
      if (f == Format::csv)
        out += std::to_string(res.n) + "," + format_double(res.r) + "," + R + "," + kind + "," + format_double(v) +
               "," + se + "\n";
      else
        out += std::string(kind) + " n=" + std::to_string(res.n) + " r=" + format_double(res.r) +
               (R.empty() ? "" : " R=" + R) + ": " + format_double(v) + (se.empty() ? "" : " +- " + se) + "\n";
    };
    line("", "limit", res.limit_value, "");
    for (const auto& [R, v] : res.finite_R_values) line(format_double(R), "finite", v, "");
    if (res.mc_estimate && !res.finite_R_values.empty()) {
      double R_max = 0.0;
      for (const auto& p : res.finite_R_values) R_max = std::max(R_max, p.first);
      line(format_double(R_max), "monte_carlo", res.mc_estimate->mean,
           format_double(res.mc_estimate->standard_error));
    }
  }
  return out;
}

std::string run_rate(Format f) {
  const auto res = optimize_asymptotic_rate();
  if (f == Format::json) {
    nlohmann::json j;
    j["theta_star"] = res.theta_star;
    j["rate_log2"] = res.rate_log2;
    return j.dump() + "\n";
  }
  if (f == Format::csv) return "theta_star,rate_log2\n" + format_double(res.theta_star) + "," + format_double(res.rate_log2) + "\n";
  return "theta_star " + format_double(res.theta_star) + "\nrate_log2 " + format_double(res.rate_log2) + "\n";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) throw ConfigError("rel_tol must lie in (0, 1)");
    if (cfg.threads < 0) throw ConfigError("threads must be >= 0");
    if (cfg.samples < 0) throw ConfigError("samples must be >= 0");
    if (cfg.degree && (*cfg.degree < 1 || *cfg.degree > kMaxLPDegree))
      throw ConfigError("degree must lie in [1, " + std::to_string(kMaxLPDegree) + "]");
    const Format f = cfg.format.value_or(cfg.command == Command::rate ? Format::json : Format::csv);
    Quadrature q;
    q.rel_tol = cfg.rel_tol;

    std::string text;
    switch (cfg.command) {
      case Command::table:
      case Command::bound: text = run_table(cfg, q, f); break;
      case Command::crossover: text = run_crossover(cfg, q, f); break;
      case Command::lp: text = run_lp(cfg, f); break;
      case Command::hyperbolic: text = run_hyperbolic(cfg, q, f); break;
      case Command::overlap: text = run_overlap(cfg, q, f); break;
      case Command::rate: text = run_rate(f); break;
    }
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + *cfg.output_path + "'");
      file << text;
      if (!file) throw std::runtime_error("write to '" + *cfg.output_path + "' failed");
    } else {
      out << text;
    }
    return 0;
  } catch (const NonConvergence& e) {
    err << error_json("non_convergence", e.what(), e.where(), e.detail()) << "\n";
    return 3;
  } catch (const ConfigError& e) {
    err << error_json("invalid_config", e.what()) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << error_json("invalid_config", e.what()) << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << error_json("invalid_config", e.what()) << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << error_json("invalid_config", e.what()) << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()) << "\n";
    return 1;
  }
}

}  // namespace packbounds
