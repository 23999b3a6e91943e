#ifndef SMZ_VERIFY_HPP
#define SMZ_VERIFY_HPP

// Registry of verification checks and their JSON reports.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace smz {

constexpr int report_schema_version = 1;

enum class Profile { Quick, Full };

struct CheckConfig {
  std::uint64_t seed = 0;
  std::optional<double> tol;  // replaces every part tolerance when set
  int n = 0;                  // 0: the profile default
  Profile profile = Profile::Quick;
};

struct CheckPart {
  std::string name;
  double defect = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string check_id;
  std::string anchor;
  nlohmann::json inputs;
  std::vector<CheckPart> parts;
  // worst part relative to its tolerance; pass iff defect <= tolerance for every part
  double defect = 0;
  double tolerance = 0;
  bool pass = false;
  nlohmann::json details;
  double runtime_s = 0;
  std::string error;  // set when the check threw

  nlohmann::json to_json(bool with_timing = false) const;
};

struct CheckInfo {
  std::string id;
  std::string anchor;
  std::string summary;
};

const std::vector<CheckInfo>& check_registry();
bool is_known_check(const std::string& id);

// Throws std::invalid_argument for unknown ids or invalid configuration.
VerificationReport run_check(const std::string& id, const CheckConfig& cfg = {});

struct SuiteResult {
  std::vector<VerificationReport> reports;  // registry order
  bool all_pass = true;
};
SuiteResult run_suite(const CheckConfig& cfg);

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports, bool with_timing = false);

// Structural validation of a report array (keys, types, pass consistency).
// Returns an empty string when valid.
std::string validate_report_json(const nlohmann::json& j);

}  // namespace smz

#endif
