#include "ordiff/cones.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ordiff/error.hpp"

namespace ordiff {

void ConeDescriptor::validate() const {
  if (!(eps_cone >= 0.0) || !(eps_fit >= 0.0))
    throw Error(ErrorKind::InvalidCone, "tolerances must be nonnegative");
  if (kind == ConeKind::PolyNonneg) {
    if (degree < 0) throw Error(ErrorKind::InvalidCone, "degree bound must be nonnegative");
    if (degree > kMaxPolyDegree)
      throw Error(ErrorKind::InvalidCone, "degree bound " + std::to_string(degree) + " exceeds " +
                                              std::to_string(kMaxPolyDegree) + " (ill-conditioned fit)");
  }
}

bool ConeDescriptor::compatible_with(const SpaceDescriptor& space) const noexcept {
  switch (kind) {
    case ConeKind::LpPositive: return space.kind == SpaceKind::SequenceLp;
    case ConeKind::CPositive: return space.kind == SpaceKind::GridC01;
    case ConeKind::LpFunctionPositive: return space.kind == SpaceKind::GridLp01;
    case ConeKind::PolyNonneg:
      return space.kind == SpaceKind::GridC01 && static_cast<std::size_t>(degree) < space.dim;
  }
  return false;
}

ConeDescriptor cone_k() { return {ConeKind::LpPositive}; }
ConeDescriptor cone_c_plus() { return {ConeKind::CPositive}; }
ConeDescriptor cone_lp_plus() { return {ConeKind::LpFunctionPositive}; }
ConeDescriptor cone_poly(int degree) {
  ConeDescriptor c{ConeKind::PolyNonneg, degree};
  c.validate();
  return c;
}

std::string to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::LpPositive: return "LpPositive";
    case ConeKind::CPositive: return "CPositive";
    case ConeKind::LpFunctionPositive: return "LpFunctionPositive";
    case ConeKind::PolyNonneg: return "PolyNonneg";
  }
  return "?";
}

std::string shorthand(const ConeDescriptor& cone) {
  switch (cone.kind) {
    case ConeKind::LpPositive: return "K";
    case ConeKind::CPositive: return "C+";
    case ConeKind::LpFunctionPositive: return "Lp+";
    case ConeKind::PolyNonneg: return "Pn+:n=" + std::to_string(cone.degree);
  }
  return "?";
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::LessEq: return "LessEq";
    case Relation::GreaterEq: return "GreaterEq";
    case Relation::Equal: return "Equal";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

PolyFit fit_monomials(const Vector& samples, int degree) {
  const auto t = grid_points(samples.space());
  const auto n = static_cast<Eigen::Index>(t.size());
  const Eigen::Index cols = degree + 1;
  Eigen::MatrixXd vander(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    double power = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      vander(i, j) = power;
      power *= t[static_cast<std::size_t>(i)];
    }
  }
  const auto c = samples.coords();
  const Eigen::Map<const Eigen::VectorXd> rhs(c.data(), n);
  const Eigen::VectorXd coef = vander.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd resid = vander * coef - rhs;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(vander).singularValues();

  PolyFit fit;
  fit.condition = sv(0) / sv(sv.size() - 1);
  fit.coefficients.assign(coef.data(), coef.data() + cols);
  fit.residual_sup = resid.size() ? resid.cwiseAbs().maxCoeff() : 0.0;
  return fit;
}

Membership in_cone(const ConeDescriptor& cone, const Vector& x) {
  cone.validate();
  if (!cone.compatible_with(x.space()))
    throw Error(ErrorKind::SpaceMismatch, "cone " + shorthand(cone) + " does not live in " + describe(x.space()));

  Membership m;
  const double scale = 1.0 + norm(x);
  if (cone.kind != ConeKind::PolyNonneg) {
    const auto c = x.coords();
    std::size_t arg = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] < c[arg]) arg = i;
    m.member = c[arg] >= -cone.eps_cone * scale;
    if (!m.member) {
      m.diagnostic.violating_index = arg;
      m.diagnostic.violation = c[arg];
    }
    return m;
  }

  auto fit = fit_monomials(x, cone.degree);
  m.diagnostic.fit_residual = fit.residual_sup;
  // Solve error in the coefficients grows with the Vandermonde condition
  // number; below degree ~7 the band is just eps_cone.
  const double band = std::max(cone.eps_cone, 8.0 * fit.condition * std::numeric_limits<double>::epsilon() * scale);
  m.diagnostic.coefficient_band = band;
  bool coefficients_ok = true;
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
    if (fit.coefficients[j] < -band) {
      if (coefficients_ok) m.diagnostic.negative_coefficient = j;
      coefficients_ok = false;
    }
  }
  m.diagnostic.coefficients = std::move(fit.coefficients);
  m.member = fit.residual_sup <= cone.eps_fit * scale && coefficients_ok;
  return m;
}

OrderVerdict compare(const ConeDescriptor& cone, const Vector& x, const Vector& y) {
  require_same_space(x.space(), y.space(), "compare");
  const Vector d = y - x;
  auto up = in_cone(cone, d);
  const auto down = in_cone(cone, -d);

  OrderVerdict v;
  if (up.member && down.member) {
    v.relation = Relation::Equal;
  } else if (up.member) {
    v.relation = Relation::LessEq;
    v.is_strict = norm(d) > 10.0 * cone.eps_cone;
  } else if (down.member) {
    v.relation = Relation::GreaterEq;
    v.is_strict = norm(d) > 10.0 * cone.eps_cone;
  } else {
    v.relation = Relation::Incomparable;
    v.witness = std::move(up.diagnostic);
  }
  return v;
}

bool cone_refinement_check(const ConeDescriptor& fine, const ConeDescriptor& coarse,
                           const std::vector<std::pair<Vector, Vector>>& pairs) {
  for (const auto& [x, y] : pairs) {
    const auto f = compare(fine, x, y).relation;
    if (f == Relation::Incomparable) continue;
    const auto c = compare(coarse, x, y).relation;
    const bool ok = c == Relation::Equal || c == f || (f == Relation::Equal && c != Relation::Incomparable);
    if (!ok) return false;
  }
  return true;
}

}  // namespace ordiff
