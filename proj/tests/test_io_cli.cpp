#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "lrr/io.hpp"
#include "lrr/runner.hpp"
#include "lrr/sim.hpp"
#include "lrr/svg.hpp"
#include "lrr/theory.hpp"

using namespace lrr;
namespace fs = std::filesystem;

static std::string scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "lrr_io_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

TEST_CASE("format_double round-trips doubles exactly") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(-2.5) == "-2.5");
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> scale(-300.0, 300.0);
  for (int t = 0; t < 1000; ++t) {
    const double v = gauss(rng) * std::pow(10.0, int(scale(rng) / 10));
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);  // shortest representation still round-trips
    CHECK(io::format_double(v) == s);
  }
}

TEST_CASE("data record CSV round-trips bitwise") {
  const auto m = sim::SystemModel::fir({1.0, 0.5, -0.25});
  const auto spec = sim::SignalSpec::gaussian(1.0, 0.1, 0.2, 3);
  const auto rec = sim::make_dataset(m, spec, 25, 4, 30);
  const std::string dir = scratch_dir("csv_roundtrip");
  const std::string path = dir + "/data.csv";
  io::write_data_csv(path, rec);

  const auto back = io::read_data_csv(path);
  CHECK(back.N == rec.N);
  CHECK(back.q == rec.q);
  CHECK(back.u == rec.u);
  CHECK(back.u_tilde == rec.u_tilde);
  CHECK(back.y == rec.y);

  // pre-window rows carry no y value
  const std::string text = io::read_text_file(path);
  CHECK(text.rfind("k,u,u_tilde,y\n", 0) == 0);
  const std::string first_row = text.substr(text.find('\n') + 1);
  CHECK(first_row.substr(0, first_row.find('\n')).back() == ',');
}

TEST_CASE("data record CSV rejects malformed files") {
  const std::string dir = scratch_dir("csv_malformed");
  auto write = [&](const std::string& name, const std::string& content) {
    const std::string p = dir + "/" + name;
    io::write_text_file(p, content);
    return p;
  };
  CHECK_THROWS_AS(io::read_data_csv(dir + "/absent.csv"), IoError);
  CHECK_THROWS_AS(io::read_data_csv(write("empty.csv", "")), IoError);
  CHECK_THROWS_AS(io::read_data_csv(write("hdr.csv", "k,u,y\n0,1,2\n")), IoError);
  CHECK_THROWS_AS(
      io::read_data_csv(write("headeronly.csv", "k,u,u_tilde,y\n")), IoError);
  CHECK_THROWS_AS(
      io::read_data_csv(write("gap.csv",
                              "k,u,u_tilde,y\n0,1,1,\n2,1,1,5\n")),
      IoError);  // skipped k = 1
  CHECK_THROWS_AS(
      io::read_data_csv(write("missing_y.csv",
                              "k,u,u_tilde,y\n0,1,1,\n1,1,1,\n")),
      IoError);  // k = 1 needs y
  CHECK_THROWS_AS(
      io::read_data_csv(write("extra_y.csv",
                              "k,u,u_tilde,y\n0,1,1,9\n1,1,1,5\n")),
      IoError);  // k = 0 must not have y
  CHECK_THROWS_AS(
      io::read_data_csv(write("nan.csv",
                              "k,u,u_tilde,y\n0,1,x,\n1,1,1,5\n")),
      IoError);  // non-numeric cell
  CHECK_THROWS_AS(
      io::read_data_csv(write("fields.csv",
                              "k,u,u_tilde,y\n0,1,1\n1,1,1,5\n")),
      IoError);  // wrong field count
  // a well-formed file parses: k = 0 is the single pre-window row (q = 2)
  // and k = 1, 2 are the measured samples (N = 2)
  const auto ok = io::read_data_csv(write(
      "ok.csv", "k,u,u_tilde,y\n0,1.5,1.25,\n1,2,2.5,0.75\n2,3,3.5,1.25\n"));
  CHECK(ok.q == 2);
  CHECK(ok.N == 2);
  CHECK(ok.u(0) == 1.5);
  CHECK(ok.u(2) == 3.0);
  CHECK(ok.y(0) == 0.75);
  CHECK(ok.y(1) == 1.25);
}

TEST_CASE("text file helpers and output directory probing") {
  const std::string dir = scratch_dir("textio");
  const std::string path = dir + "/a/b/file.txt";
  io::ensure_output_dir(dir + "/a/b");
  io::write_text_file(path, "hello\n");
  CHECK(io::read_text_file(path) == "hello\n");
  CHECK_THROWS_AS(io::read_text_file(dir + "/nope.txt"), IoError);
  // a path through a regular file cannot become a directory
  CHECK_THROWS_AS(io::ensure_output_dir(path + "/sub"), IoError);
}

static runner::RunConfig tiny_fir_config() {
  runner::RunConfig cfg = runner::default_config();
  cfg.system = sim::SystemModel::fir({0.8, 0.5, -0.3});
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.0, 0.0, 0);
  cfg.N = 60;
  cfg.q = 8;
  cfg.discard = 50;
  cfg.n_val = 60;
  cfg.trials = 2;
  cfg.seed = 9;
  cfg.gamma_grid = {1e6, 1.0, 0.01};
  cfg.sigma_u_grid = {0.0, 0.05};
  cfg.n_list = {60, 120};
  return cfg;
}

TEST_CASE("config JSON round-trip is lossless") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.weights = "explicit";
  cfg.weight_values.assign(8, 1.0);
  for (int i = 0; i < 4; ++i) cfg.weight_values[i] = 0.5 + 0.1 * i;
  cfg.gamma = 0.75;
  cfg.validate_on_nominal = true;
  cfg.svg = true;
  const io::json j1 = runner::config_to_json(cfg);
  const runner::RunConfig back = runner::config_from_json(j1);
  const io::json j2 = runner::config_to_json(back);
  CHECK(j1.dump(2) == j2.dump(2));
  CHECK(back.weights == "explicit");
  CHECK(back.weight_values == cfg.weight_values);
  CHECK(back.gamma.has_value());
  CHECK(*back.gamma == 0.75);
  CHECK(back.validate_on_nominal);

  // gamma: null means "auto"
  io::json j3 = j1;
  j3["gamma"] = nullptr;
  CHECK_FALSE(runner::config_from_json(j3).gamma.has_value());
}

TEST_CASE("config JSON rejects unknown keys and bad values") {
  io::json j = runner::config_to_json(runner::default_config());
  io::json bad = j;
  bad["grammar"] = 1.0;  // typo'd key
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  bad = j;
  bad["system"]["zeros"] = {1.0};
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  bad = j;
  bad["N"] = "many";
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  bad = j;
  bad["weights"] = 7;
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  bad = j;
  bad["methods"] = {"lrr", "lrr"};
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  bad = j;
  bad["methods"] = {"magic"};
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  bad = j;
  bad["n_list"] = {4000, 1000};
  CHECK_THROWS_AS(runner::config_from_json(bad), ConfigError);
  CHECK_THROWS_AS(runner::config_from_json(io::json::array()), ConfigError);
}

TEST_CASE("load_config reports parse failures as I/O errors") {
  const std::string dir = scratch_dir("config");
  const std::string good = dir + "/good.json";
  io::write_text_file(good,
                      runner::config_to_json(runner::default_config()).dump(2));
  CHECK_NOTHROW(runner::load_config(good));
  const std::string broken = dir + "/broken.json";
  io::write_text_file(broken, "{ not json");
  CHECK_THROWS_AS(runner::load_config(broken), IoError);
  CHECK_THROWS_AS(runner::load_config(dir + "/absent.json"), IoError);
}

TEST_CASE("noise label is the input perturbation percentage") {
  runner::RunConfig cfg = runner::default_config();
  CHECK(cfg.noise_label() == "3%");
  cfg.signal.sigma_u = 0.015;
  CHECK(cfg.noise_label() == "1.5%");
  cfg.signal = sim::SignalSpec::gaussian(4.0, 0.06, 0.0, 0);
  CHECK(cfg.noise_label() == "3%");
}

TEST_CASE("effective gamma: margin times the leading-order bound, or override") {
  runner::RunConfig cfg = runner::default_config();  // 3% scenario, margin 5
  CHECK(cfg.effective_gamma(89) ==
        doctest::Approx(2.7887453468274037).epsilon(1e-12));
  cfg.gamma = 0.4;
  CHECK(cfg.effective_gamma(89) == 0.4);
  cfg.gamma.reset();
  cfg.signal.sigma_y = 0.0;  // noise free: fall back to a tiny positive level
  CHECK(cfg.effective_gamma(500) == 1e-8);
}

TEST_CASE("noise-free FIR study: every method fits perfectly") {
  const runner::RunConfig cfg = tiny_fir_config();
  const auto res = runner::run_monte_carlo(cfg);
  REQUIRE(res.rows.size() == 6);  // 2 trials x 3 methods
  for (const auto& r : res.rows) {
    CHECK(r.ok);
    CHECK(r.fit == doctest::Approx(100.0).epsilon(1e-8));
    CHECK(r.tn0 == 0);  // sigma_y = 0 puts the leading order at q
    CHECK(r.n_l == 8);
  }
  for (const auto& [name, a] : res.aggregates) {
    CHECK(a.count == 2);
    CHECK(a.failures == 0);
    CHECK(a.fit == doctest::Approx(100.0).epsilon(1e-8));
  }
  CHECK(res.gamma == 1e-8);
  CHECK(res.recovery.empty());  // n_l = q leaves nothing to certify
  CHECK(res.trial_seeds.size() == 2);
  CHECK(res.trial_seeds[0][0] == sim::derive_seed(9, 0));
  CHECK(res.trial_seeds[0][1] == sim::derive_seed(9, 1));
  CHECK(res.trial_seeds[1][0] == sim::derive_seed(9, 2));
}

TEST_CASE("benchmark study at 1% noise lands in the reference bands") {
  runner::RunConfig cfg = runner::default_config();
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.01, 0.1, 0);
  cfg.trials = 3;
  cfg.seed = 2;
  cfg.methods = {"lrr"};
  const auto res = runner::run_monte_carlo(cfg);
  CHECK(res.n_l == 105);
  const auto& a = res.aggregates.at("lrr");
  CHECK(a.count == 3);
  CHECK(a.failures == 0);
  CHECK(a.fit > 96.0);
  CHECK(a.fit < 99.9);
  CHECK(a.tn0 <= 25.0);
  CHECK(a.tn1 <= 0.2);
  for (const auto& r : res.rows) {
    CHECK(r.kkt_violation <= 10.0 * cfg.tol);
    CHECK(r.iterations >= 1);
  }
  // the support certificate was evaluated every trial at n = n_l
  CHECK(res.recovery.size() == 3);
  for (const auto& rec : res.recovery) {
    CHECK(rec.n == 105);
    CHECK(rec.n_l == 105);
    CHECK(rec.gamma_leading_lb > 0.0);
  }
}

TEST_CASE("single-point N sweep reproduces monte carlo trial zero") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.05, 0.1, 0);
  cfg.trials = 1;
  const auto mc = runner::run_monte_carlo(cfg);
  const auto sweep = runner::run_n_sweep(cfg, {cfg.N});
  REQUIRE(mc.rows.size() == sweep.rows.size());
  for (std::size_t i = 0; i < mc.rows.size(); ++i) {
    CHECK(sweep.rows[i].method == mc.rows[i].method);
    CHECK(sweep.rows[i].N == cfg.N);
    CHECK(sweep.rows[i].fit == mc.rows[i].fit);  // identical seeds, bitwise
    CHECK(sweep.rows[i].tn0 == mc.rows[i].tn0);
    CHECK(sweep.rows[i].tn1 == mc.rows[i].tn1);
    CHECK(sweep.rows[i].gamma == mc.rows[i].gamma);
  }
  CHECK(sweep.seeds[0][0] == mc.trial_seeds[0][0]);
  CHECK(sweep.seeds[0][1] == mc.trial_seeds[0][1]);
  CHECK_THROWS_AS(runner::run_n_sweep(cfg, {}), ConfigError);
  CHECK_THROWS_AS(runner::run_n_sweep(cfg, {60, 60}), ConfigError);
  CHECK_THROWS_AS(runner::run_n_sweep(cfg, {4}), ConfigError);  // below q
}

TEST_CASE("tradeoff grid: huge gamma empties the model, failures stay marked") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.05, 0.1, 0);
  const auto m = cfg.system;
  auto spec = cfg.signal;
  spec.seed = sim::derive_seed(cfg.seed, 0);
  const auto data = sim::make_dataset(m, spec, cfg.N, cfg.q, cfg.discard);

  const auto g = runner::run_tradeoff_grid(data, cfg);
  CHECK(g.E.rows() == 2);
  CHECK(g.E.cols() == 3);
  for (std::size_t i = 0; i < 2; ++i) {
    // gamma = 1e6 dwarfs every data correlation: zero model, E = ||y||^2
    CHECK(g.ok[i][0]);
    CHECK(g.C(int(i), 0) == 0);
    CHECK(g.E(int(i), 0) == doctest::Approx(data.y.squaredNorm()).epsilon(1e-12));
    for (std::size_t j = 0; j < 3; ++j) CHECK(g.ok[i][j]);
  }

  // a one-sweep budget cannot reach the small-gamma solutions
  runner::RunConfig hard = cfg;
  hard.max_iter = 1;
  hard.gamma_grid = {1e6, 1e-9};
  const auto g2 = runner::run_tradeoff_grid(data, hard);
  CHECK(g2.ok[0][0]);
  CHECK_FALSE(g2.ok[0][1]);
  CHECK(std::isnan(g2.E(0, 1)));
  CHECK(g2.C(0, 1) == -1);

  runner::RunConfig empty_grid = cfg;
  empty_grid.gamma_grid.clear();
  CHECK_THROWS_AS(runner::run_tradeoff_grid(data, empty_grid), ConfigError);
}

TEST_CASE("emitted reports are schema-valid, deterministic, and complete") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.05, 0.1, 0);
  cfg.svg = true;

  const auto res = runner::run_monte_carlo(cfg);
  cfg.out_dir = scratch_dir("emit_a");
  const auto paths_a = runner::emit_reports(res, cfg);
  REQUIRE(paths_a.size() == 3);  // csv, json, svg
  cfg.out_dir = scratch_dir("emit_b");
  const auto paths_b = runner::emit_reports(res, cfg);

  // identical bytes apart from the directory name; config echo excluded
  // because out_dir itself is part of the config
  const std::string csv_a = io::read_text_file(paths_a[0]);
  const std::string csv_b = io::read_text_file(paths_b[0]);
  CHECK(csv_a == csv_b);
  CHECK(csv_a.rfind("trial,method,noise_level,FIT,TN0,TN1,n_l,gamma,"
                    "iterations,kkt_violation\n", 0) == 0);

  io::json rep = io::json::parse(io::read_text_file(paths_a[1]));
  CHECK_NOTHROW(io::validate_report(rep));
  CHECK(rep["kind"] == "montecarlo");
  CHECK(rep["rows"].size() == 6);
  CHECK(rep["noise_level"] == "5%");

  const std::string svg = io::read_text_file(paths_a[2]);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("lrr") != std::string::npos);

  // rerunning the same study gives byte-identical reports
  const auto res2 = runner::run_monte_carlo(cfg);
  cfg.out_dir = scratch_dir("emit_c");
  const auto paths_c = runner::emit_reports(res2, cfg);
  CHECK(io::read_text_file(paths_c[0]) == csv_a);
  io::json rep_c = io::json::parse(io::read_text_file(paths_c[1]));
  rep_c["config"]["out_dir"] = rep["config"]["out_dir"];
  CHECK(rep_c.dump(2) == rep.dump(2));
}

TEST_CASE("sweep and grid emission validate against the schema") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.05, 0.1, 0);
  cfg.svg = true;

  cfg.out_dir = scratch_dir("emit_sweep");
  const auto sweep = runner::run_n_sweep(cfg, cfg.n_list);
  const auto sp = runner::emit_reports(sweep, cfg);
  REQUIRE(sp.size() == 4);  // csv, json, two charts
  io::json srep = io::json::parse(io::read_text_file(sp[1]));
  CHECK_NOTHROW(io::validate_report(srep));
  CHECK(srep["kind"] == "nsweep");
  CHECK(io::read_text_file(sp[0]).rfind("N,method", 0) == 0);
  CHECK(io::read_text_file(sp[2]).rfind("<svg", 0) == 0);

  auto spec = cfg.signal;
  spec.seed = sim::derive_seed(cfg.seed, 0);
  const auto data =
      sim::make_dataset(cfg.system, spec, cfg.N, cfg.q, cfg.discard);
  cfg.out_dir = scratch_dir("emit_grid");
  const auto grid = runner::run_tradeoff_grid(data, cfg);
  const auto gp = runner::emit_reports(grid, cfg);
  REQUIRE(gp.size() == 3);
  io::json grep_ = io::json::parse(io::read_text_file(gp[1]));
  CHECK_NOTHROW(io::validate_report(grep_));
  CHECK(grep_["E"].size() == 2);
  CHECK(grep_["E"][0].size() == 3);
  CHECK(io::read_text_file(gp[0]).rfind("sigma_u,gamma,E,C,ok\n", 0) == 0);
}

TEST_CASE("schema validation pinpoints structural defects") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.05, 0.1, 0);
  cfg.out_dir = scratch_dir("schema");
  const auto res = runner::run_monte_carlo(cfg);
  const auto paths = runner::emit_reports(res, cfg);
  const io::json good = io::json::parse(io::read_text_file(paths[1]));
  CHECK_NOTHROW(io::validate_report(good));

  auto expect_fail = [&](io::json mutated, const std::string& needle) {
    try {
      io::validate_report(mutated);
      FAIL_CHECK("expected IoError mentioning " << needle);
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  io::json m = good;
  m.erase("rows");
  expect_fail(m, "rows");
  m = good;
  m["gamma"] = "big";
  expect_fail(m, "gamma");
  m = good;
  m["kind"] = "summary";
  expect_fail(m, "kind");
  m = good;
  m["rows"][0].erase("method");
  expect_fail(m, "method");
  m = good;
  m["rows"][0]["ok"] = false;  // failed rows must carry an error string
  expect_fail(m, "error");
  m = good;
  m["trial_seeds"][0] = {1, 2, 3};
  expect_fail(m, "trial_seeds");
  m = good;
  m["aggregates"]["lrr"]["count"] = 1.5;
  expect_fail(m, "count");
  m = good;
  m.erase("config");
  expect_fail(m, "config");
}

TEST_CASE("empty studies emit header-only CSV") {
  runner::RunConfig cfg = tiny_fir_config();
  cfg.out_dir = scratch_dir("empty_emit");
  runner::MonteCarloResult empty;
  const auto paths = runner::emit_reports(empty, cfg);
  const std::string csv = io::read_text_file(paths[0]);
  CHECK(csv ==
        "trial,method,noise_level,FIT,TN0,TN1,n_l,gamma,iterations,"
        "kkt_violation\n");
  CHECK_NOTHROW(io::validate_report(io::json::parse(io::read_text_file(paths[1]))));
}

TEST_CASE("an unusable output directory fails loudly, results stay in memory") {
  runner::RunConfig cfg = tiny_fir_config();
  const auto res = runner::run_monte_carlo(cfg);
  const std::string dir = scratch_dir("unusable");
  io::write_text_file(dir + "/blocker", "");
  cfg.out_dir = dir + "/blocker/out";  // path through a regular file
  CHECK_THROWS_AS(runner::emit_reports(res, cfg), IoError);
  CHECK(res.rows.size() == 6);  // untouched by the failed emission
}

TEST_CASE("chart writer is deterministic") {
  const std::string dir = scratch_dir("svg");
  std::vector<svg::Series> series(2);
  series[0].label = "alpha";
  series[0].points = {{1.0, 2.0}, {2.0, 2.5}, {3.0, 1.0}};
  series[1].label = "beta";
  series[1].draw_line = false;
  series[1].points = {{1.5, 0.5}, {2.5, 3.0}};
  svg::write_chart(dir + "/a.svg", "demo", "x", "y", series);
  svg::write_chart(dir + "/b.svg", "demo", "x", "y", series);
  const std::string a = io::read_text_file(dir + "/a.svg");
  CHECK(a == io::read_text_file(dir + "/b.svg"));
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("alpha") != std::string::npos);
  CHECK(a.find("beta") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  // log-scale x variant also renders
  svg::write_chart(dir + "/c.svg", "demo", "x", "y", series, true);
  CHECK(io::read_text_file(dir + "/c.svg").rfind("<svg", 0) == 0);
}
