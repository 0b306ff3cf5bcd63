#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "packbounds/euclid_bounds.hpp"
#include "packbounds/report.hpp"

using namespace packbounds;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "packbounds_test_report";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult cli(const std::string& args) {
  const auto o = scratch("cli.out");
  const auto e = scratch("cli.err");
  const std::string cmd = std::string("\"") + PACKBOUNDS_CLI + "\" " + args + " >" + o.string() + " 2>" + e.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

int run_capture(const RunConfig& cfg, std::string& out, std::string& err) {
  std::ostringstream o, e;
  const int code = run(cfg, o, e);
  out = o.str();
  err = e.str();
  return code;
}

}  // namespace

TEST_CASE("rounding up to four digits") {
  CHECK(render_round_up(LogScaled::from_value(2.4501e-3)) == "2.451e-3");
  CHECK(render_round_up(LogScaled::from_value(2.451e-3)) == "2.451e-3");
  CHECK(render_round_up(LogScaled::from_value(1.0)) == "1.000e0");
  CHECK(render_round_up(LogScaled::from_value(9.9991e-3)) == "1.000e-2");
  CHECK(render_round_up(LogScaled::from_value(9.99901)) == "1.000e1");
  CHECK(render_round_up(LogScaled::from_value(123.45), 2) == "1.3e2");
  CHECK(render_round_up(LogScaled::from_log(-2000.0)) == "2.577e-869");
  CHECK(render_round_up(cz_bound(24).value) == "2.637e-2");
  CHECK_THROWS(render_round_up(LogScaled::zero()));
  CHECK_THROWS(render_round_up(LogScaled::from_value(1.0), 0));
}

TEST_CASE("crossover scans") {
  const auto a = crossover_scan(90, 100);
  REQUIRE(a.best.size() == 11);
  REQUIRE(a.transitions.size() == 1);
  CHECK(a.transitions[0].last_n == 95);
  CHECK(a.transitions[0].first_n == 96);
  CHECK(a.transitions[0].from == Method::rogers);
  CHECK(a.transitions[0].to == Method::levenshtein);
  const auto b = crossover_scan(110, 120);
  REQUIRE(b.transitions.size() == 1);
  CHECK(b.transitions[0].last_n == 114);
  CHECK(b.transitions[0].first_n == 115);
  CHECK(b.transitions[0].to == Method::kl);
  const auto c = crossover_scan(4, 4);
  REQUIRE(c.best.size() == 1);
  CHECK(c.best[0].second == Method::rogers);
  CHECK(c.transitions.empty());
  // unsorted list input is scanned in ascending order
  const auto d = crossover_scan(std::vector<int>{120, 50, 100});
  REQUIRE(d.best.size() == 3);
  CHECK(d.best[0].first == 50);
  CHECK(d.transitions.size() == 2);
  CHECK_THROWS(crossover_scan(3, 10));
}

TEST_CASE("CSV and JSON round trips") {
  auto rows = table_rows({12, 24, 600}, {Method::rogers, Method::levenshtein, Method::kl, Method::cz});
  REQUIRE(rows.size() == 12);
  CHECK(rows[3].method == "cz");
  CHECK(rows[3].k_star.has_value());
  CHECK_FALSE(rows[0].k_star.has_value());
  const std::string csv = write_csv(rows);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(parse_csv(csv) == rows);
  CHECK(parse_json(write_json(rows)) == rows);
  const auto doc = nlohmann::json::parse(write_json(rows));
  CHECK(doc["rows"][0]["k_star"].is_null());
  CHECK(doc["rows"][3]["value_rounded"] == "9.666e-1");
  CHECK_THROWS(parse_csv("n,method\n1,x\n"));
  CHECK_THROWS(parse_json("{\"rows\": [{\"n\": 1}]}"));
}

TEST_CASE("dims and config parsing") {
  CHECK(parse_dims("12,24,48") == std::vector<int>{12, 24, 48});
  CHECK(parse_dims("4..7,10") == std::vector<int>{4, 5, 6, 7, 10});
  CHECK_THROWS_AS(parse_dims("5..3"), ConfigError);
  CHECK_THROWS_AS(parse_dims("x"), ConfigError);
  CHECK(parse_reals("0.5, 2") == std::vector<double>{0.5, 2.0});

  const auto path = scratch("cfg.txt");
  {
    std::ofstream f(path);
    f << "# comment\nrel_tol = 1e-10\ndims=12..14\nmethods=rogers,cz\nformat=json\nseed=7\n";
  }
  RunConfig cfg;
  apply_config(cfg, read_config_file(path.string()));
  CHECK(cfg.rel_tol == 1e-10);
  CHECK(cfg.dims == std::vector<int>{12, 13, 14});
  CHECK(cfg.methods == std::vector<std::string>{"rogers", "cz"});
  CHECK(cfg.format == Format::json);
  CHECK(cfg.seed == 7u);
  CHECK_THROWS_AS(apply_config(cfg, {{"bogus", "1"}}), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, {{"rel_tol", "abc"}}), ConfigError);
  CHECK_THROWS_AS(read_config_file(scratch("missing.txt").string()), ConfigError);
}

TEST_CASE("run exit codes") {
  std::string out, err;
  RunConfig ok;
  ok.command = Command::bound;
  ok.dims = {12};
  ok.methods = {"rogers"};
  CHECK(run_capture(ok, out, err) == 0);
  CHECK(err.empty());
  CHECK(out == std::string(kCsvHeader) + "\n12,rogers,-1.0575632783831512,8.759e-2,,\n");

  RunConfig bad = ok;
  bad.dims = {0};
  CHECK(run_capture(bad, out, err) == 2);
  CHECK(nlohmann::json::parse(err)["error"] == "invalid_config");
  bad = ok;
  bad.methods = {"nope"};
  CHECK(run_capture(bad, out, err) == 2);
  bad = ok;
  bad.rel_tol = 0.0;
  CHECK(run_capture(bad, out, err) == 2);
  bad = ok;
  bad.command = Command::lp;
  CHECK(run_capture(bad, out, err) == 2);  // no theta

  RunConfig nc = ok;
  nc.rel_tol = 1e-16;
  CHECK(run_capture(nc, out, err) == 3);
  const auto j = nlohmann::json::parse(err);
  CHECK(j["error"] == "non_convergence");
  CHECK(j["where"] == "rogers_bound");
}

TEST_CASE("repeated runs are byte-identical") {
  RunConfig cfg;
  cfg.command = Command::table;
  cfg.dims = {12, 48, 96, 240};
  std::string a, b, e;
  REQUIRE(run_capture(cfg, a, e) == 0);
  cfg.threads = 1;
  REQUIRE(run_capture(cfg, b, e) == 0);
  CHECK(a == b);
  cfg.format = Format::json;
  REQUIRE(run_capture(cfg, a, e) == 0);
  REQUIRE(run_capture(cfg, b, e) == 0);
  CHECK(a == b);

  RunConfig ov;
  ov.command = Command::overlap;
  ov.dims = {3};
  ov.r = 1.0;
  ov.big_radii = {3.0};
  ov.samples = 20000;
  REQUIRE(run_capture(ov, a, e) == 0);
  ov.threads = 3;
  REQUIRE(run_capture(ov, b, e) == 0);
  CHECK(a == b);
}

TEST_CASE("output file") {
  const auto path = scratch("rate.json");
  RunConfig cfg;
  cfg.command = Command::rate;
  cfg.output_path = path.string();
  std::string out, err;
  REQUIRE(run_capture(cfg, out, err) == 0);
  CHECK(out.empty());
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(std::abs(j["theta_star"].get<double>() - 1.0995) < 1e-3);
  CHECK(std::abs(j["rate_log2"].get<double>() + 0.5990) < 1e-3);
  cfg.output_path = "/nonexistent-dir/x.json";
  CHECK(run_capture(cfg, out, err) == 2);
}

TEST_CASE("command line") {
  auto t = cli("table");
  CHECK(t.code == 0);
  const auto rows = parse_csv(t.out);
  REQUIRE(rows.size() == 56);
  std::ifstream ref(PACKBOUNDS_TEST_DATA "/reference_table.txt");
  std::string line;
  std::size_t i = 0;
  while (std::getline(ref, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int n;
    ls >> n;
    for (int m = 0; m < 4; ++m, ++i) {
      std::string v;
      ls >> v;
      CAPTURE(n);
      CHECK(rows[i].n == n);
      CHECK(rows[i].value_rounded == v);
    }
  }
  CHECK(i == 56);

  auto r = cli("rate");
  CHECK(r.code == 0);
  CHECK(std::abs(nlohmann::json::parse(r.out)["theta_star"].get<double>() - 1.0995) < 1e-3);

  auto o = cli("overlap --n 2 --r 0 --R 5");
  CHECK(o.code == 0);
  CHECK(o.out == "n,r,R,kind,value,stderr\n2,0,,limit,1,\n2,0,5,finite,1,\n");

  auto c = cli("crossover --dims 94..97 --format json");
  CHECK(c.code == 0);
  const auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["transitions"][0]["first_n"] == 96);

  auto lp = cli("lp --n 3 --theta 1.5707963267948966 --degree 8 --format json");
  CHECK(lp.code == 0);
  const auto lj = nlohmann::json::parse(lp.out);
  CHECK(std::abs(lj["certificates"][0]["objective"].get<double>() - 6.0) < 1e-4);

  auto h = cli("hyperbolic --n 3 --r 1 --theta 1.0471975511965976");
  CHECK(h.code == 0);
  CHECK(h.out.find("3,hyperbolic,") != std::string::npos);

  const auto cfg = scratch("cli.cfg");
  {
    std::ofstream f(cfg);
    f << "dims=12\nmethods=levenshtein\nformat=csv\n";
  }
  auto b = cli("bound --config " + cfg.string());
  CHECK(b.code == 0);
  CHECK(b.out.find("12,levenshtein,") != std::string::npos);
  auto b2 = cli("bound --config " + cfg.string() + " --methods rogers");
  CHECK(b2.out.find("12,rogers,") != std::string::npos);
  CHECK(b2.out.find("levenshtein") == std::string::npos);

  auto bad = cli("bound --n 12 --methods nope");
  CHECK(bad.code == 2);
  CHECK(nlohmann::json::parse(bad.err)["error"] == "invalid_config");
  auto unknown = cli("bound --frobnicate");
  CHECK(unknown.code == 2);
  CHECK(nlohmann::json::accept(unknown.err));
  auto nc = cli("bound --n 12 --methods rogers --rel-tol 1e-16");
  CHECK(nc.code == 3);
  CHECK(nlohmann::json::parse(nc.err)["error"] == "non_convergence");
}
