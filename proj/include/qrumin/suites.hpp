#ifndef QRUMIN_SUITES_HPP
#define QRUMIN_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qrumin {

struct SuiteConfig {
  std::uint64_t seed = 0;
  int degree = 3;       // max polynomial degree of fixtures
  int cutoff_exp = 8;   // sigma exponent for compactly supported data
  int cases = 5;        // cases per identity
  std::vector<std::string> suites;  // empty = all
  bool numeric = false;             // advisory quadrature cross-checks
  bool timing = false;              // include wall times in reports
  int mutation = 0;                 // test-only single-term mutation id
};

struct CaseRecord {
  bool exact_zero = false;
  std::string witness;  // s-expression of a nonzero residual component
  std::string note;
};

struct IdentityRecord {
  std::string suite;
  std::string id;
  std::string statement;
  std::vector<CaseRecord> cases;
  double wall_ms = 0;
  bool all_zero() const {
    for (const auto& c : cases)
      if (!c.exact_zero) return false;
    return true;
  }
};

struct Report {
  SuiteConfig config;
  std::vector<IdentityRecord> identities;
  int failures() const {
    int n = 0;
    for (const auto& r : identities)
      if (!r.all_zero()) ++n;
    return n;
  }
};

const std::vector<std::string>& suite_names();
bool valid_suite_name(const std::string& name);
Report run_suites(const SuiteConfig& config);

std::string report_json(const Report& r);
std::string report_markdown(const Report& r);

}  // namespace qrumin

#endif
