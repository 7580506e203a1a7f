#include "lrr/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace lrr::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  const fs::path probe = fs::path(dir) / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_data_csv(const std::string& path, const sim::DataRecord& rec) {
  rec.validate();
  std::string out = "k,u,u_tilde,y\n";
  for (int k = 2 - rec.q; k <= rec.N; ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(rec.u_at(k));
    out += ',';
    out += format_double(rec.u_tilde_at(k));
    out += ',';
    if (k >= 1) out += format_double(rec.y(k - 1));
    out += '\n';
  }
  write_text_file(path, out);
}

namespace {

double parse_double(const std::string& s, const std::string& path, int line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw IoError(path + ":" + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

sim::DataRecord read_data_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(f, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "k,u,u_tilde,y")
    throw IoError(path + ": expected header 'k,u,u_tilde,y', got '" + line + "'");

  std::vector<int> ks;
  std::vector<double> us, uts, ys;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 4 fields");
    const int k = int(parse_double(cells[0], path, lineno));
    ks.push_back(k);
    us.push_back(parse_double(cells[1], path, lineno));
    uts.push_back(parse_double(cells[2], path, lineno));
    if (k >= 1) {
      if (cells[3].empty())
        throw IoError(path + ":" + std::to_string(lineno) +
                      ": missing y for in-window sample k = " + std::to_string(k));
      ys.push_back(parse_double(cells[3], path, lineno));
    } else if (!cells[3].empty()) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": unexpected y for pre-window sample k = " + std::to_string(k));
    }
  }
  if (ks.empty()) throw IoError(path + ": no data rows");
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (ks[i] != ks[0] + int(i))
      throw IoError(path + ": sample indices must be contiguous ascending");

  sim::DataRecord rec;
  rec.q = 2 - ks.front();
  rec.N = ks.back();
  rec.u = Eigen::Map<const Eigen::VectorXd>(us.data(), Eigen::Index(us.size()));
  rec.u_tilde = Eigen::Map<const Eigen::VectorXd>(uts.data(), Eigen::Index(uts.size()));
  rec.y = Eigen::Map<const Eigen::VectorXd>(ys.data(), Eigen::Index(ys.size()));
  try {
    rec.validate();
  } catch (const ConfigError& e) {
    throw IoError(path + ": " + e.what());
  }
  return rec;
}

namespace {

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw IoError("report schema: " + path + " " + what);
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object()) fail(path, "must be an object");
  const json* v = find(obj, key);
  if (!v) fail(path + "." + key, "is missing");
  return *v;
}

void require_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "must be a number");
}

void require_number_or_null(const json& v, const std::string& path) {
  if (!v.is_number() && !v.is_null()) fail(path, "must be a number or null");
}

void require_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "must be an integer");
}

void require_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "must be a string");
}

void require_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "must be a boolean");
}

void require_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "must be an array");
}

void check_recovery_entry(const json& r, const std::string& path) {
  require_int(require(r, "n", path), path + ".n");
  require_number(require(r, "upsilon", path), path + ".upsilon");
  require_number(require(r, "lhs", path), path + ".lhs");
  require_number(require(r, "rhs", path), path + ".rhs");
  require_bool(require(r, "holds", path), path + ".holds");
}

void check_row_common(const json& row, const std::string& path) {
  require_string(require(row, "method", path), path + ".method");
  const json& ok = require(row, "ok", path);
  require_bool(ok, path + ".ok");
  if (ok.get<bool>()) {
    require_number(require(row, "fit", path), path + ".fit");
    require_int(require(row, "tn0", path), path + ".tn0");
    require_number(require(row, "tn1", path), path + ".tn1");
  } else {
    require_string(require(row, "error", path), path + ".error");
  }
  require_int(require(row, "n_l", path), path + ".n_l");
  require_number(require(row, "gamma", path), path + ".gamma");
}

}  // namespace

void validate_report(const json& report) {
  if (!report.is_object()) fail("$", "must be an object");
  const json& kind = require(report, "kind", "$");
  require_string(kind, "$.kind");
  const std::string k = kind.get<std::string>();
  if (!report.contains("config") || !report["config"].is_object())
    fail("$.config", "must be an object");
  require_int(require(report, "master_seed", "$"), "$.master_seed");

  if (k == "montecarlo") {
    require_string(require(report, "noise_level", "$"), "$.noise_level");
    require_int(require(report, "n_l", "$"), "$.n_l");
    require_number(require(report, "gamma", "$"), "$.gamma");
    const json& seeds = require(report, "trial_seeds", "$");
    require_array(seeds, "$.trial_seeds");
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const std::string p = "$.trial_seeds[" + std::to_string(i) + "]";
      require_array(seeds[i], p);
      if (seeds[i].size() != 2) fail(p, "must have 2 entries");
      require_int(seeds[i][0], p + "[0]");
      require_int(seeds[i][1], p + "[1]");
    }
    const json& agg = require(report, "aggregates", "$");
    if (!agg.is_object()) fail("$.aggregates", "must be an object");
    for (const auto& [name, a] : agg.items()) {
      const std::string p = "$.aggregates." + name;
      require_number_or_null(require(a, "fit", p), p + ".fit");
      require_number_or_null(require(a, "tn0", p), p + ".tn0");
      require_number_or_null(require(a, "tn1", p), p + ".tn1");
      require_int(require(a, "count", p), p + ".count");
      require_int(require(a, "failures", p), p + ".failures");
    }
    const json& rows = require(report, "rows", "$");
    require_array(rows, "$.rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string p = "$.rows[" + std::to_string(i) + "]";
      require_int(require(rows[i], "trial", p), p + ".trial");
      check_row_common(rows[i], p);
    }
    const json& rec = require(report, "recovery", "$");
    require_array(rec, "$.recovery");
    for (std::size_t i = 0; i < rec.size(); ++i)
      check_recovery_entry(rec[i], "$.recovery[" + std::to_string(i) + "]");
  } else if (k == "nsweep") {
    const json& rows = require(report, "rows", "$");
    require_array(rows, "$.rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string p = "$.rows[" + std::to_string(i) + "]";
      require_int(require(rows[i], "N", p), p + ".N");
      check_row_common(rows[i], p);
    }
    const json& rec = require(report, "recovery", "$");
    require_array(rec, "$.recovery");
    for (std::size_t i = 0; i < rec.size(); ++i)
      check_recovery_entry(rec[i], "$.recovery[" + std::to_string(i) + "]");
  } else if (k == "grid") {
    const json& sg = require(report, "sigma_u_grid", "$");
    require_array(sg, "$.sigma_u_grid");
    const json& gg = require(report, "gamma_grid", "$");
    require_array(gg, "$.gamma_grid");
    const json& E = require(report, "E", "$");
    const json& C = require(report, "C", "$");
    require_array(E, "$.E");
    require_array(C, "$.C");
    if (E.size() != sg.size() || C.size() != sg.size())
      fail("$.E", "row count must match sigma_u_grid");
    for (std::size_t i = 0; i < E.size(); ++i) {
      const std::string pe = "$.E[" + std::to_string(i) + "]";
      const std::string pc = "$.C[" + std::to_string(i) + "]";
      require_array(E[i], pe);
      require_array(C[i], pc);
      if (E[i].size() != gg.size()) fail(pe, "length must match gamma_grid");
      if (C[i].size() != gg.size()) fail(pc, "length must match gamma_grid");
      for (std::size_t j = 0; j < gg.size(); ++j) {
        require_number_or_null(E[i][j], pe + "[" + std::to_string(j) + "]");
        if (!C[i][j].is_null() && !C[i][j].is_number_integer())
          fail(pc + "[" + std::to_string(j) + "]", "must be an integer or null");
      }
    }
  } else if (k == "identify") {
    const json& sol = require(report, "solution", "$");
    require_array(require(sol, "support", "$.solution"), "$.solution.support");
    require_array(require(sol, "x", "$.solution"), "$.solution.x");
    require_number(require(sol, "objective", "$.solution"), "$.solution.objective");
    require_int(require(sol, "iterations", "$.solution"), "$.solution.iterations");
    require_number(require(sol, "kkt_violation", "$.solution"),
                   "$.solution.kkt_violation");
    const json& rec = require(report, "recovery", "$");
    if (!rec.is_null()) check_recovery_entry(rec, "$.recovery");
  } else if (k == "theory") {
    require_int(require(report, "n_l", "$"), "$.n_l");
    require_number(require(report, "kappa", "$"), "$.kappa");
    require_number(require(report, "gamma_order_n", "$"), "$.gamma_order_n");
    require_number_or_null(require(report, "gamma_leading_lb", "$"),
                           "$.gamma_leading_lb");
    const json& rec = require(report, "recovery", "$");
    if (!rec.is_null()) check_recovery_entry(rec, "$.recovery");
  } else if (k == "simulate") {
    require_string(require(report, "data_file", "$"), "$.data_file");
    require_int(require(report, "N", "$"), "$.N");
    require_int(require(report, "q", "$"), "$.q");
  } else {
    fail("$.kind", "unknown kind '" + k + "'");
  }
}

}  // namespace lrr::io
