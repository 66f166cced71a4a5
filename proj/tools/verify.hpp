#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fwcli {

using Json = nlohmann::ordered_json;

/// theorem1, theorem2, theorem3, identities.
const std::vector<std::string>& suite_names();

/// Runs one suite. `config` is that suite's object from the config file (or
/// empty); unknown keys raise UsageError. Appends one record per
/// measurement to `records`.
void run_suite(const std::string& suite, const Json& config, Json& records);

/// true when every asserted record passed.
bool all_asserted_pass(const Json& records);

}  // namespace fwcli
