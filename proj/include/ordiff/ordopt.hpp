#pragma once

// Ordered optimization on top of the operator family: generalized critical
// points (zero derivative), ordered extrema under a cone, and sampled
// order-monotonicity certificates.
//
// Extremum and monotonicity verdicts are falsifiable checks over declared
// sample sets, not proofs over the whole space.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordiff/cones.hpp"
#include "ordiff/operators.hpp"
#include "ordiff/spaces.hpp"

namespace ordiff {

bool is_generalized_critical(const OperatorSpec& op, const Vector& xbar, double tol);

enum class CriticalSetKind { OnlyOrigin, Empty, OriginPlusNonzeroRoots, NonzeroRootsOnly };
std::string to_string(CriticalSetKind k);

struct CriticalSetResult {
  /// Real roots of q(t) = sum_i i a_i t^(i-1), ascending, duplicates merged.
  std::vector<double> root_set;
  /// Critical set of the polynomial-type operator on l_p.
  CriticalSetKind set_kind = CriticalSetKind::Empty;
  /// Same question in a finite truncation, where every coordinate may sit at
  /// any root; differs from set_kind when 0 is not a root but others are.
  CriticalSetKind truncated_kind = CriticalSetKind::Empty;
  std::optional<CriticalSetKind> published_claim;
  bool discrepancy_flag = false;

  friend bool operator==(const CriticalSetResult&, const CriticalSetResult&) = default;
};

/// Real roots of sum_k c_k t^k (c ordered by ascending degree).
std::vector<double> real_polynomial_roots(const std::vector<double>& ascending);

/// With `claim_mode`, also records the published closed-form answer
/// ({origin} when a_1 = 0, empty otherwise) and flags any disagreement.
CriticalSetResult critical_set_polytype(const std::vector<double>& coeffs, bool claim_mode);

enum class ExtremumStatus { Maximum, Minimum, NotExtreme, Inconclusive };
enum class ExtremumScope { Directional, Absolute };
std::string to_string(ExtremumStatus s);
std::string to_string(ExtremumScope s);

struct ExtremumWitness {
  std::optional<double> t_below;       ///< T(x+tv) strictly below T(x)
  std::optional<double> t_above;       ///< T(x+tv) strictly above T(x)
  std::optional<double> t_incomparable;
  std::optional<std::size_t> sample_below;
  std::optional<std::size_t> sample_above;
  std::optional<std::size_t> sample_incomparable;

  bool empty() const noexcept {
    return !t_below && !t_above && !t_incomparable && !sample_below && !sample_above && !sample_incomparable;
  }
  friend bool operator==(const ExtremumWitness&, const ExtremumWitness&) = default;
};

struct ExtremumVerdict {
  ExtremumStatus status = ExtremumStatus::Inconclusive;
  ExtremumScope scope = ExtremumScope::Directional;
  std::string sample_description;
  std::size_t num_samples = 0;
  ExtremumWitness witness;

  friend bool operator==(const ExtremumVerdict&, const ExtremumVerdict&) = default;
};

struct TRange {
  double lo = -1.0;
  double hi = 1.0;
};

inline constexpr int kDefaultNumT = 41;

/// The t values directional_extremum evaluates: num_t evenly spaced points,
/// both endpoints, and +-1e-3 t_max; zero excluded.
std::vector<double> directional_samples(TRange range, int num_t);

ExtremumVerdict directional_extremum(const OperatorSpec& op, const ConeDescriptor& cone, const Vector& xbar,
                                     const Vector& v, TRange range, int num_t = kDefaultNumT);

ExtremumVerdict absolute_extremum(const OperatorSpec& op, const ConeDescriptor& cone, const Vector& xbar,
                                  const std::vector<Vector>& samples, std::string description = {});

/// Constants c = n pi + pi/2 in [lo, hi] with |cos c| <= tol, each confirmed
/// critical for the sine operator on a constant grid function.
std::vector<double> critical_set_sine(double lo, double hi, double tol, const SpaceDescriptor& grid = grid_c01());

struct MonotoneCertificate {
  bool order_increasing_sampled = false;
  bool derivative_cone_positive = false;
  int num_pairs = 0;
  std::uint64_t seed = 0;
  /// (x, x + c) with T(x) not <= T(x + c)
  std::optional<std::pair<std::vector<double>, std::vector<double>>> counterexample;
  /// (xbar, v) with D T(xbar) v outside the codomain cone
  std::optional<std::pair<std::vector<double>, std::vector<double>>> derivative_counterexample;

  friend bool operator==(const MonotoneCertificate&, const MonotoneCertificate&) = default;
};

/// Random element of the cone: |N(0,1)| coordinates, or nonnegative monomial
/// coefficients expanded on the grid for Pn+.
Vector random_cone_element(const ConeDescriptor& cone, const SpaceDescriptor& space, std::uint64_t seed,
                           std::uint64_t stream);
/// Random point with iid N(0,1) coordinates.
Vector random_point(const SpaceDescriptor& space, std::uint64_t seed, std::uint64_t stream);
/// Random grid function with iid uniform samples in [lo, hi].
Vector random_uniform(const SpaceDescriptor& space, double lo, double hi, std::uint64_t seed, std::uint64_t stream);

MonotoneCertificate check_order_monotone(const OperatorSpec& op, const ConeDescriptor& domain_cone,
                                         const ConeDescriptor& codomain_cone, int num_pairs, std::uint64_t seed);

}  // namespace ordiff
