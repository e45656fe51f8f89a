// loopfock: suite runner, table computation and loop-matrix decomposition.
//
// Exit codes: 0 all cases pass, 1 some case fails, 2 configuration or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopfock/dvr/smith.hpp"
#include "loopfock/errors.hpp"
#include "loopfock/io/json_io.hpp"
#include "loopfock/suites/report.hpp"
#include "loopfock/suites/suites.hpp"

using namespace loopfock;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::vector<std::string> suites;
  int n = 0;
  std::string model;
  int depth = 0;
  int window = 0;
  double lambda = 0;
  int nodes = 0;
  double half_width = 0;
  int probes = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string config;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses JSON and reports parse failures with line and column.
Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(origin, "JSON syntax error at line " + std::to_string(line) + ", column " +
                                  std::to_string(col));
  }
}

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "matrix size n");
  cmd->add_option("--model", f.model, "vector or matrix");
  cmd->add_option("--depth", f.depth, "ambient depth D");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.format, "json, csv or text");
  cmd->add_option("--config", f.config, "JSON config file; flags override its keys");
}

// Config file first, explicit flags on top.
SuiteConfig build_config(const Flags& f, const CLI::App& cmd) {
  SuiteConfig cfg;
  if (!f.config.empty()) cfg = config_from_json(parse_json_text(read_file(f.config), f.config), cfg);
  auto given = [&](const char* name) {
    const CLI::Option* o = cmd.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--suite")) {
    cfg.suites.clear();
    for (const auto& s : f.suites) {
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) cfg.suites.push_back(item);
      }
    }
  }
  if (given("--n")) cfg.n = f.n;
  if (given("--model")) {
    if (f.model != "vector" && f.model != "matrix") throw ConfigError("model", "expected vector or matrix");
    cfg.kind = f.model == "vector" ? ModelKind::vector : ModelKind::matrix;
  }
  if (given("--depth")) cfg.depth = f.depth;
  if (given("--window")) cfg.window = f.window;
  if (given("--lambda")) cfg.lambda = f.lambda;
  if (given("--nodes")) cfg.quad.nodes = f.nodes;
  if (given("--half-width")) cfg.quad.half_width = f.half_width;
  if (given("--probes")) cfg.probes = f.probes;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--out")) cfg.out = f.out;
  if (given("--format")) cfg.format = parse_format(f.format);
  return cfg;
}

int run_verify(const Flags& f, const CLI::App& cmd) {
  const SuiteConfig cfg = build_config(f, cmd);
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Report report = run(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_output(cfg.out, emit(report, cfg.format));
  std::cerr << "loopfock verify: " << report.cases.size() << " cases, " << report.failed() << " failed, "
            << seconds << " s\n";
  return report.all_pass() ? 0 : kExitFail;
}

int run_compute(const Flags& f, const CLI::App& cmd) {
  SuiteConfig cfg = build_config(f, cmd);
  if (cfg.suites.empty()) cfg.suites = {"levels"};
  cfg.validate();
  const Json tables = compute_tables(cfg);
  std::string text;
  switch (cfg.format) {
    case ReportFormat::json:
      text = tables.dump(2) + "\n";
      break;
    case ReportFormat::csv: {
      std::ostringstream os;
      os << "table,key,value\n";
      for (const auto& e : tables["weights"]) {
        os << "weights,k=" << e["k"].get<int>() << " j=" << e["j"].get<int>() << "," << e["measured"].get<std::string>()
           << "\n";
      }
      os << "dual_level,K," << tables["dual_level"].get<std::string>() << "\n";
      for (const auto& e : tables["levels"]) {
        os << "levels," << e["model"].get<std::string>() << " " << e["copy"].get<std::string>() << " u=" << e["u"].get<int>()
           << " v=" << e["v"].get<int>() << " m=" << e["m"].get<int>() << "," << e["kappa"].get<std::string>() << "\n";
      }
      for (const auto& e : tables["cocycles"]) {
        os << "cocycles,u=" << e["u"].get<int>() << " v=" << e["v"].get<int>() << " m=" << e["m"].get<int>() << ","
           << e["central_term"].get<std::string>() << "\n";
      }
      text = os.str();
      break;
    }
    case ReportFormat::text:
      text = tables_text(tables);
      break;
  }
  write_output(cfg.out, text);
  return 0;
}

int run_decompose(const std::string& matrix, const std::string& out, const std::string& format) {
  const std::string text = !matrix.empty() && matrix[0] == '@' ? read_file(matrix.substr(1)) : matrix;
  const LoopMatrix g = loop_matrix_from_json(parse_json_text(text, "matrix"));
  const SmithDecomposition d = smith_decompose(g);
  const LatticeQuotient q = lattice_quotient(g, d);
  Json k = Json::array();
  for (int e : d.k) k.push_back(e);
  Json basis = Json::array();
  for (const auto& b : q.basis) {
    Json col = Json::array();
    for (const auto& c : b) col.push_back(to_string(c));
    basis.push_back(col);
  }
  const Json result{{"h1", to_json(d.h1)}, {"k", k}, {"h2", to_json(d.h2)}, {"T", d.T}, {"dim_V", q.dim},
                    {"basis_V", basis}};
  const ReportFormat fmt = format.empty() ? ReportFormat::json : parse_format(format);
  if (fmt == ReportFormat::text) {
    std::ostringstream os;
    os << "h1 = " << d.h1.to_string() << "\nk = " << k.dump() << "\nh2 = " << d.h2.to_string()
       << "\ncertified mod t^" << d.T << "\ndim V_g = " << q.dim << "\n";
    write_output(out, os.str());
  } else if (fmt == ReportFormat::csv) {
    std::ostringstream os;
    os << "index,k\n";
    for (std::size_t i = 0; i < d.k.size(); ++i) os << i + 1 << "," << d.k[i] << "\n";
    write_output(out, os.str());
  } else {
    write_output(out, result.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopfock: loop group Fock model verification suites"};
  app.require_subcommand(1);

  Flags vf;
  CLI::App* verify = app.add_subcommand("verify", "run verification suites and emit a report");
  verify->add_option("--suite", vf.suites, "suite name(s), comma separated or repeated; 'all' for every suite");
  add_model_flags(verify, vf);
  verify->add_option("--window", vf.window, "target window W");
  verify->add_option("--lambda", vf.lambda, "lambda for numeric suites");
  verify->add_option("--nodes", vf.nodes, "quadrature nodes per axis");
  verify->add_option("--half-width", vf.half_width, "quadrature half-width L");
  verify->add_option("--probes", vf.probes, "probe points per numeric case");
  verify->add_option("--seed", vf.seed, "seed for sampled cases and probes");

  Flags cf;
  CLI::App* compute = app.add_subcommand("compute", "weight, level and cocycle tables");
  add_model_flags(compute, cf);

  std::string matrix, dout, dformat;
  CLI::App* decompose = app.add_subcommand("decompose", "Smith normal form of a LoopMatrix");
  decompose->add_option("--matrix", matrix, "LoopMatrix JSON, or @path to read it from a file")->required();
  decompose->add_option("--out", dout, "output path (default: stdout)");
  decompose->add_option("--format", dformat, "json, csv or text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*verify) return run_verify(vf, *verify);
    if (*compute) return run_compute(cf, *compute);
    if (*decompose) return run_decompose(matrix, dout, dformat);
  } catch (const ConfigError& e) {
    std::cerr << "loopfock: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "loopfock: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "loopfock: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
