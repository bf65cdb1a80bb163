#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/scenario.hpp"

namespace hetnet {

/// Parses `key = value` lines. `#` starts a comment; blank lines are
/// ignored. Unknown keys, repeated keys and malformed values raise
/// ScenarioError carrying the 1-based line number. Keys not mentioned keep
/// their defaults. The result is checked by building a network from it.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Sets one key from its textual value (line 0 in errors).
void set_scenario_value(Scenario& scenario, std::string_view key, std::string_view value);

/// Textual value of one key, as it appears in canonical_text.
std::string get_scenario_value(const Scenario& scenario, std::string_view key);

/// Whole-scenario checks (ranges, network construction, antenna widths).
/// Throws ScenarioError with line 0.
void validate_scenario(const Scenario& scenario);

/// Every known key, in canonical order.
std::vector<std::string> scenario_keys();

/// Every key with its value, one `key = value` line each, in canonical
/// order. Parsing the result gives back an equal scenario.
std::string canonical_text(const Scenario& scenario);

/// FNV-1a over the canonical text without the `rng_seed` and `algorithm`
/// lines: runs that differ only in seed or scheduler share a hash.
std::uint64_t scenario_hash(const Scenario& scenario);
std::string hash_hex(std::uint64_t hash);

}  // namespace hetnet
