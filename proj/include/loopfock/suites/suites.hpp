#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopfock/action/quadrature.hpp"
#include "loopfock/affine/operators.hpp"
#include "loopfock/errors.hpp"
#include "loopfock/io/json_io.hpp"

namespace loopfock {

inline constexpr const char* kLoopfockVersion = "0.1.0";

// Raised for invalid suite configurations; field names the offending setting.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error("config error in \"" + field + "\": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ReportFormat { json, csv, text };

ReportFormat parse_format(const std::string& s);
std::string to_string(ReportFormat f);

struct SuiteConfig {
  std::vector<std::string> suites;
  int n = 2;
  ModelKind kind = ModelKind::vector;
  int depth = 10;   // D: ambient depth of the vacuum
  int window = 2;   // W: final window every exact case must keep
  double lambda = 1.0;
  QuadPlan quad;
  int probes = 20;
  std::uint64_t seed = 1;
  std::string out;  // empty: standard output
  ReportFormat format = ReportFormat::text;

  // Throws ConfigError naming the field.
  void validate() const;
  FockModel model() const { return {n, kind}; }
};

// Suites in run order; "all" selects every one of them.
const std::vector<std::string>& known_suites();
bool is_exact_suite(const std::string& name);

// Flags override keys from the file; unknown keys are config errors.
SuiteConfig config_from_json(const Json& j, SuiteConfig base = {});
Json to_json(const SuiteConfig& cfg);

struct CaseRecord {
  std::string suite;
  std::string id;
  bool exact = true;
  double residual = 0.0;   // exact suites: count of nonzero window terms
  double tolerance = 0.0;
  bool pass = false;
  // Exact cases recomputed at D + 2 agree on the window; null when not applicable.
  std::optional<bool> stable_at_d_plus_2;
  Json params = Json::object();
};

struct Report {
  SuiteConfig config;
  std::vector<CaseRecord> cases;
  Json tables = Json::object();

  std::size_t passed() const;
  std::size_t failed() const { return cases.size() - passed(); }
  bool all_pass() const { return failed() == 0; }
};

// Weight table, measured levels and the bracket cocycle m * kappa.
Json compute_tables(const SuiteConfig& cfg);

std::vector<CaseRecord> run_suite(const std::string& name, const SuiteConfig& cfg);
Report run(const SuiteConfig& cfg);

}  // namespace loopfock
