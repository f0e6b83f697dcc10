#pragma once

// Numerical oracles for the exact derivatives: finite-difference Gâteaux
// quotients, a log-log remainder-slope test for Fréchet differentiability,
// and the explicit remainder bound for the power operator on l_p.

#include <cstdint>
#include <optional>
#include <vector>

#include "ordiff/operators.hpp"
#include "ordiff/spaces.hpp"

namespace ordiff {

enum class FdScheme { Forward, Central };

struct DiffConfig {
  std::vector<double> h_values{1e-2, 1e-3, 1e-4, 1e-5};
  FdScheme scheme = FdScheme::Central;
  std::vector<double> slope_scales{1e-1, 1e-2, 1e-3, 1e-4};
  int num_directions = 16;
  std::uint64_t rng_seed = 7;

  /// Throws InvalidConfig unless both lists are positive and strictly decreasing.
  void validate() const;
};

struct GateauxEstimate {
  Vector value;
  double chosen_h = 0.0;
  double agreement_gap = 0.0;  ///< ||D(h) - D(h_prev)|| for the chosen pair
  bool agreed = false;         ///< false when no consecutive pair met the agreement band
};

/// Relative band for two consecutive step sizes to count as agreeing.
inline constexpr double kRichardsonAgreement = 1e-6;

GateauxEstimate gateaux_fd(const OperatorSpec& op, const Vector& xbar, const Vector& v, const DiffConfig& cfg);

enum class Verdict { Pass, Fail };

inline constexpr double kSlopeThreshold = 0.9;
inline constexpr double kResidualTolerance = 1e-6;
inline constexpr double kDirectionalTolerance = 1e-6;

struct FrechetReport {
  /// max over directions of ||fd - D u|| / (1 + ||D u||)
  double max_directional_error = 0.0;
  /// least-squares slope of log r(s) against log s, r(s) = max_u ||T(x+su) - T(x) - D(su)|| / ||su||
  double remainder_slope = 0.0;
  /// r(s) for each configured scale, aligned with DiffConfig::slope_scales
  std::vector<double> remainder_ratios;
  /// max_u ||T(x+su) - T(x) - D(su)|| at the smallest scale
  double residual_at_smallest = 0.0;
  /// remainder at or below round-off at every scale: the map is its own derivative
  bool exact_zero_remainder = false;
  /// power-operator bound on l_p; absent for other operators
  std::optional<bool> bound_satisfied;
  std::uint64_t seed = 0;
  int num_directions = 0;
  Verdict verdict = Verdict::Fail;

  friend bool operator==(const FrechetReport&, const FrechetReport&) = default;
};

FrechetReport verify_frechet(const OperatorSpec& op, const Vector& xbar, const DiffConfig& cfg,
                             const MultiplierMap& exact);

/// ||Q^m(x+u) - Q^m(x) - D(u)||_p / ||u||_p <= (1 + P(x))^m ||u||_p + 1e-10,
/// for the power operator on l_p and 0 < ||u||_p < 1.
bool check_remainder_bound(const OperatorSpec& op, const Vector& xbar, const Vector& u);

/// Both sides of the bound above, for reporting.
struct RemainderBound {
  double lhs = 0.0;
  double rhs = 0.0;
};
RemainderBound remainder_bound_sides(const OperatorSpec& op, const Vector& xbar, const Vector& u);

/// Unit-norm direction with iid standard-normal coordinates (domain norm).
Vector random_unit_direction(const SpaceDescriptor& space, std::uint64_t seed, std::uint64_t stream);

}  // namespace ordiff
