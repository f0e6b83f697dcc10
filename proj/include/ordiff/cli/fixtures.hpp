#pragma once

// Built-in verification fixtures. Each id names the published result it
// reproduces (e.g. "example-3.9", "prop-4.5-ii", "thm-3.1-bound").

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordiff/cli/report.hpp"
#include "ordiff/diffcheck.hpp"
#include "ordiff/operators.hpp"

namespace ordiff::cli {

/// DiscrepancyDocumented marks a fixture whose published statement disagrees
/// with the computed answer and the disagreement itself was confirmed.
enum class FixtureStatus { Pass, Fail, DiscrepancyDocumented };
std::string to_string(FixtureStatus s);

struct FixtureResult {
  std::string fixture_id;
  FixtureStatus status = FixtureStatus::Fail;
  json details;

  friend bool operator==(const FixtureResult&, const FixtureResult&) = default;
};

void to_json(json& j, const FixtureResult& r);
void from_json(const json& j, FixtureResult& r);

std::vector<std::string> fixture_ids();

/// Runs every fixture whose id matches the glob `filter` (all when empty).
/// Throws UsageError when nothing matches.
std::vector<FixtureResult> cmd_verify_paper(const std::optional<std::string>& filter, std::uint64_t seed = 7);

/// The operator family exercised on each space: Power m in {1,2,3,5},
/// three random degree-3 polynomial-type operators, and Sine.
std::vector<OperatorSpec> family_members(const SpaceDescriptor& domain, std::optional<SpaceDescriptor> codomain,
                                         std::uint64_t seed);

/// Worst ||fd - D v|| / (1 + ||D v||) over `pairs` random (xbar, v).
double oracle_sweep_error(const OperatorSpec& op, int pairs, std::uint64_t seed, const DiffConfig& cfg = {});

}  // namespace ordiff::cli
