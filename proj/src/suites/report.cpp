#include "loopfock/suites/report.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace loopfock {

namespace {

// Shortest round-trip representation keeps numeric output byte-stable.
std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string short_num(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct SuiteCount {
  std::size_t total = 0, passed = 0;
};

std::map<std::string, SuiteCount> counts_by_suite(const Report& r) {
  std::map<std::string, SuiteCount> out;
  for (const auto& c : r.cases) {
    auto& s = out[c.suite];
    ++s.total;
    s.passed += c.pass ? 1 : 0;
  }
  return out;
}

}  // namespace

Json report_json(const Report& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json j{{"suite", c.suite},
           {"id", c.id},
           {"provenance", c.exact ? "exact" : "numeric"},
           {"residual", c.residual},
           {"tolerance", c.tolerance},
           {"pass", c.pass},
           {"params", c.params}};
    j["stable_at_D_plus_2"] = c.stable_at_d_plus_2 ? Json(*c.stable_at_d_plus_2) : Json(nullptr);
    cases.push_back(std::move(j));
  }
  Json by_suite = Json::object();
  for (const auto& [name, s] : counts_by_suite(report)) {
    by_suite[name] = Json{{"total", s.total}, {"passed", s.passed}, {"failed", s.total - s.passed}};
  }
  return Json{{"schema", "loopfock-report/1"},
              {"config", to_json(report.config)},
              {"cases", std::move(cases)},
              {"tables", report.tables},
              {"summary",
               {{"total", report.cases.size()},
                {"passed", report.passed()},
                {"failed", report.failed()},
                {"by_suite", by_suite},
                {"version", kLoopfockVersion}}}};
}

std::string tables_text(const Json& tables) {
  std::ostringstream os;
  if (tables.contains("weights")) {
    os << "Highest weight pairings <Lambda_k, E_jj - E_{j+1,j+1}>\n";
    os << "  k  j  measured  expected\n";
    for (const auto& e : tables["weights"]) {
      os << "  " << e["k"].get<int>() << "  " << e["j"].get<int>() << "  " << std::setw(8)
         << e["measured"].get<std::string>() << "  " << std::setw(8) << e["expected"].get<int>() << "\n";
    }
    os << "  <Lambda_k, K> = " << tables.value("dual_level", std::string("?")) << "\n";
  }
  if (tables.contains("levels")) {
    os << "Measured levels\n";
    for (const auto& e : tables["levels"]) {
      os << "  " << e["model"].get<std::string>() << " copy=" << e["copy"].get<std::string>() << " u=" << e["u"].get<int>()
         << " v=" << e["v"].get<int>() << " m=" << e["m"].get<int>() << "  kappa = " << e["kappa"].get<std::string>()
         << "\n";
    }
  }
  if (tables.contains("cocycles")) {
    os << "Cocycle m * kappa of [E_vu t^m, E_uv t^-m]\n";
    for (const auto& e : tables["cocycles"]) {
      os << "  u=" << e["u"].get<int>() << " v=" << e["v"].get<int>() << " m=" << e["m"].get<int>() << "  "
         << e["central_term"].get<std::string>() << "\n";
    }
  }
  return os.str();
}

std::string emit(const Report& report, ReportFormat format) {
  if (format == ReportFormat::json) return report_json(report).dump(2) + "\n";
  if (format == ReportFormat::csv) {
    std::ostringstream os;
    os << "suite,id,provenance,residual,tolerance,stable_at_D_plus_2,pass\n";
    for (const auto& c : report.cases) {
      os << csv_field(c.suite) << "," << csv_field(c.id) << "," << (c.exact ? "exact" : "numeric") << ","
         << num(c.residual) << "," << num(c.tolerance) << ","
         << (c.stable_at_d_plus_2 ? (*c.stable_at_d_plus_2 ? "true" : "false") : "") << ","
         << (c.pass ? "true" : "false") << "\n";
    }
    return os.str();
  }
  std::ostringstream os;
  os << "loopfock " << kLoopfockVersion << "  n=" << report.config.n << " model=" << to_string(report.config.kind)
     << " D=" << report.config.depth << " W=" << report.config.window << " lambda=" << num(report.config.lambda)
     << " nodes=" << report.config.quad.nodes << " seed=" << report.config.seed << "\n\n";
  os << "suite            cases  passed  failed\n";
  for (const auto& [name, s] : counts_by_suite(report)) {
    os << std::left << std::setw(16) << name << std::right << std::setw(6) << s.total << std::setw(8) << s.passed
       << std::setw(8) << s.total - s.passed << "\n";
  }
  bool header = false;
  for (const auto& c : report.cases) {
    if (c.exact) continue;
    if (!header) {
      os << "\nnumeric cases\n";
      header = true;
    }
    os << "  " << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.id << "  residual " << short_num(c.residual)
       << " (tol " << short_num(c.tolerance) << ")\n";
  }
  header = false;
  for (const auto& c : report.cases) {
    if (!c.exact || c.pass) continue;
    if (!header) {
      os << "\nfailed exact cases\n";
      header = true;
    }
    os << "  FAIL " << c.suite << ": " << c.id << "  residual terms " << c.residual << "\n";
  }
  os << "\n" << tables_text(report.tables);
  os << "\ntotal " << report.cases.size() << ", passed " << report.passed() << ", failed " << report.failed() << "\n";
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  out << content;
  out.close();
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
}

}  // namespace loopfock
