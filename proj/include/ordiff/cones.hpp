#pragma once

// Ordering cones and the partial orders they induce:
//   K      nonnegative sequences in l_p
//   C+     nonnegative functions in C[0,1]
//   Lp+    nonnegative functions in L_p[0,1]
//   Pn+    polynomials of degree <= n with nonnegative monomial coefficients,
//          as a subset of C[0,1]
// x <= y under a cone C means y - x lies in C. Membership is tested with a
// relative tolerance band eps * (1 + ||x||).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordiff/spaces.hpp"

namespace ordiff {

enum class ConeKind { LpPositive, CPositive, LpFunctionPositive, PolyNonneg };

inline constexpr int kMaxPolyDegree = 12;

struct ConeDescriptor {
  ConeKind kind = ConeKind::LpPositive;
  int degree = 0;          ///< n for PolyNonneg
  double eps_cone = 1e-9;  ///< membership band
  double eps_fit = 1e-8;   ///< polynomial fit residual band (PolyNonneg)

  /// Throws InvalidCone on bad tolerances or degree.
  void validate() const;
  bool compatible_with(const SpaceDescriptor& space) const noexcept;

  friend bool operator==(const ConeDescriptor&, const ConeDescriptor&) = default;
};

ConeDescriptor cone_k();
ConeDescriptor cone_c_plus();
ConeDescriptor cone_lp_plus();
ConeDescriptor cone_poly(int degree);

std::string to_string(ConeKind kind);
/// CLI shorthand: "K", "C+", "Lp+", "Pn+:n=3".
std::string shorthand(const ConeDescriptor& cone);

/// Why a vector failed (or nearly failed) membership.
struct ConeDiagnostic {
  std::optional<std::size_t> violating_index;  ///< most negative coordinate
  std::optional<double> violation;             ///< its value
  std::optional<double> fit_residual;          ///< sup-norm residual of the polynomial fit
  std::optional<std::size_t> negative_coefficient;
  std::vector<double> coefficients;            ///< fitted monomial coefficients (PolyNonneg)
  std::optional<double> coefficient_band;      ///< coefficients above -band count as nonnegative

  friend bool operator==(const ConeDiagnostic&, const ConeDiagnostic&) = default;
};

struct Membership {
  bool member = false;
  ConeDiagnostic diagnostic;
};

Membership in_cone(const ConeDescriptor& cone, const Vector& x);

/// Least-squares fit of grid samples in the monomial basis 1, t, ..., t^n.
struct PolyFit {
  std::vector<double> coefficients;
  double residual_sup = 0.0;
  double condition = 1.0;  ///< 2-norm condition number of the Vandermonde matrix
};
PolyFit fit_monomials(const Vector& samples, int degree);

enum class Relation { LessEq, GreaterEq, Equal, Incomparable };
std::string to_string(Relation r);

/// Relation of x to y: LessEq means x <= y.
struct OrderVerdict {
  Relation relation = Relation::Incomparable;
  bool is_strict = false;  ///< ||y - x|| > 10 eps_cone, set for LessEq / GreaterEq
  ConeDiagnostic witness;  ///< populated for Incomparable (from y - x)

  friend bool operator==(const OrderVerdict&, const OrderVerdict&) = default;
};

OrderVerdict compare(const ConeDescriptor& cone, const Vector& x, const Vector& y);

/// For every pair comparable under `fine`, checks `coarse` agrees in direction.
bool cone_refinement_check(const ConeDescriptor& fine, const ConeDescriptor& coarse,
                           const std::vector<std::pair<Vector, Vector>>& pairs);

}  // namespace ordiff
