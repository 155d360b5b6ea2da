#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace msgf::checks {

/// One verified quantity. `lower_bound` rows pass when residual >= tolerance
/// (used where a relation is expected to fail).
struct CheckResult {
    std::string check;
    nlohmann::ordered_json parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool lower_bound = false;
    bool pass = false;
};

struct CheckInfo {
    std::string id;
    std::string summary;
    int criterion = 0;  // acceptance group, 0 for supplementary checks
    double tolerance = 0.0;
    bool lower_bound = false;
};

struct VerifyOptions {
    std::map<std::string, double> tolerances;  // overrides keyed by check id
    int threads = 1;
};

void validate(const VerifyOptions& opt);

/// Registered checks in execution order.
const std::vector<CheckInfo>& catalog();
const CheckInfo& find(const std::string& id);

/// Runs one check; numerical failures become failing rows carrying the message.
std::vector<CheckResult> run(const std::string& id, const VerifyOptions& opt = {});

/// Runs the listed checks (all when empty); rows keep catalog order.
std::vector<CheckResult> run_suite(const std::vector<std::string>& ids, const VerifyOptions& opt = {});

nlohmann::ordered_json to_json(const CheckResult& r);

}  // namespace msgf::checks
