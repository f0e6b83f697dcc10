#include "ordiff/operators.hpp"

#include <cmath>
#include <sstream>

#include "ordiff/error.hpp"
#include "ordiff/kernels.hpp"

namespace ordiff {

namespace k = kernels::parallel;

struct OperatorSpec::Node {
  OpKind kind = OpKind::Power;
  SpaceDescriptor domain;
  SpaceDescriptor codomain;
  int m = 1;
  std::vector<double> coeffs;
  double a = 1.0;
  std::vector<OperatorSpec> children;
};

OperatorSpec make_operator(OperatorSpec::Node node) {
  return OperatorSpec(std::make_shared<const OperatorSpec::Node>(std::move(node)));
}

OpKind OperatorSpec::kind() const noexcept { return node_->kind; }
const SpaceDescriptor& OperatorSpec::domain() const noexcept { return node_->domain; }
const SpaceDescriptor& OperatorSpec::codomain() const noexcept { return node_->codomain; }

int OperatorSpec::exponent() const {
  if (node_->kind != OpKind::Power) throw Error(ErrorKind::InvalidOperator, "not a power operator");
  return node_->m;
}

const std::vector<double>& OperatorSpec::coefficients() const {
  if (node_->kind != OpKind::PolyType) throw Error(ErrorKind::InvalidOperator, "not a polynomial-type operator");
  return node_->coeffs;
}

double OperatorSpec::scalar() const {
  if (node_->kind != OpKind::Scaled) throw Error(ErrorKind::InvalidOperator, "not a scaled operator");
  return node_->a;
}

const OperatorSpec& OperatorSpec::left() const {
  if (node_->children.empty()) throw Error(ErrorKind::InvalidOperator, "leaf operator has no children");
  return node_->children.front();
}

const OperatorSpec& OperatorSpec::right() const {
  if (node_->children.size() < 2) throw Error(ErrorKind::InvalidOperator, "operator has no right child");
  return node_->children[1];
}

namespace {

SpaceDescriptor resolve_codomain(const SpaceDescriptor& domain, const std::optional<SpaceDescriptor>& codomain) {
  domain.validate();
  if (!codomain || *codomain == domain) return domain;
  codomain->validate();
  if (domain.kind == SpaceKind::GridC01 && codomain->kind == SpaceKind::GridLp01 && codomain->dim == domain.dim)
    return *codomain;
  throw Error(ErrorKind::SpaceMismatch,
              "pointwise operators map " + describe(domain) + " only to itself or to L_p[0,1] on the same grid, not " +
                  describe(*codomain));
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_finite(std::span<const double> c, const char* what) {
  if (!k::all_finite(c)) throw Error(ErrorKind::NumericalBreakdown, std::string(what) + " produced a non-finite value");
}

}  // namespace

OperatorSpec power(int m, const SpaceDescriptor& domain, std::optional<SpaceDescriptor> codomain) {
  if (m < 1) throw Error(ErrorKind::InvalidOperator, "power exponent must be >= 1");
  OperatorSpec::Node n;
  n.kind = OpKind::Power;
  n.m = m;
  n.domain = domain;
  n.codomain = resolve_codomain(domain, codomain);
  return make_operator(std::move(n));
}

OperatorSpec polytype(std::vector<double> coefficients, const SpaceDescriptor& domain,
                      std::optional<SpaceDescriptor> codomain) {
  if (coefficients.empty()) throw Error(ErrorKind::InvalidOperator, "polynomial-type operator needs a_1..a_m");
  bool any = false;
  for (double a : coefficients) {
    if (!std::isfinite(a)) throw Error(ErrorKind::InvalidOperator, "coefficients must be finite");
    any = any || a != 0.0;
  }
  if (!any) throw Error(ErrorKind::DegenerateOperator, "all coefficients are zero");
  OperatorSpec::Node n;
  n.kind = OpKind::PolyType;
  n.coeffs = std::move(coefficients);
  n.domain = domain;
  n.codomain = resolve_codomain(domain, codomain);
  return make_operator(std::move(n));
}

OperatorSpec sine(const SpaceDescriptor& domain, std::optional<SpaceDescriptor> codomain) {
  OperatorSpec::Node n;
  n.kind = OpKind::Sine;
  n.domain = domain;
  n.codomain = resolve_codomain(domain, codomain);
  return make_operator(std::move(n));
}

OperatorSpec scaled(double a, const OperatorSpec& inner) {
  if (!std::isfinite(a)) throw Error(ErrorKind::InvalidOperator, "scale must be finite");
  OperatorSpec::Node n;
  n.kind = OpKind::Scaled;
  n.a = a;
  n.domain = inner.domain();
  n.codomain = inner.codomain();
  n.children = {inner};
  return make_operator(std::move(n));
}

OperatorSpec sum(const OperatorSpec& left, const OperatorSpec& right) {
  require_same_space(left.domain(), right.domain(), "sum domain");
  require_same_space(left.codomain(), right.codomain(), "sum codomain");
  OperatorSpec::Node n;
  n.kind = OpKind::Sum;
  n.domain = left.domain();
  n.codomain = left.codomain();
  n.children = {left, right};
  return make_operator(std::move(n));
}

OperatorSpec compose(const OperatorSpec& outer, const OperatorSpec& inner) {
  require_same_space(inner.codomain(), outer.domain(), "compose (inner codomain vs outer domain)");
  OperatorSpec::Node n;
  n.kind = OpKind::Compose;
  n.domain = inner.domain();
  n.codomain = outer.codomain();
  n.children = {outer, inner};
  return make_operator(std::move(n));
}

OperatorSpec retarget_codomain(const OperatorSpec& op, const SpaceDescriptor& codomain) {
  if (op.codomain() == codomain) return op;
  switch (op.kind()) {
    case OpKind::Power: return power(op.exponent(), op.domain(), codomain);
    case OpKind::PolyType: return polytype(op.coefficients(), op.domain(), codomain);
    case OpKind::Sine: return sine(op.domain(), codomain);
    case OpKind::Scaled: return scaled(op.scalar(), retarget_codomain(op.left(), codomain));
    case OpKind::Sum: return sum(retarget_codomain(op.left(), codomain), retarget_codomain(op.right(), codomain));
    case OpKind::Compose: return compose(retarget_codomain(op.left(), codomain), op.right());
  }
  throw Error(ErrorKind::InvalidOperator, "unknown operator kind");
}

std::string to_string(const OperatorSpec& op) {
  switch (op.kind()) {
    case OpKind::Power: return "power:" + std::to_string(op.exponent());
    case OpKind::PolyType: {
      std::string s = "poly:";
      const auto& a = op.coefficients();
      for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + format_number(a[i]);
      return s;
    }
    case OpKind::Sine: return "sin";
    case OpKind::Scaled: return "scale:" + format_number(op.scalar()) + "(" + to_string(op.left()) + ")";
    case OpKind::Sum: return "sum(" + to_string(op.left()) + "," + to_string(op.right()) + ")";
    case OpKind::Compose: return "compose(" + to_string(op.left()) + "," + to_string(op.right()) + ")";
  }
  return "?";
}

double int_power(double t, int m) noexcept {
  double result = 1.0;
  double base = t;
  for (unsigned e = static_cast<unsigned>(m); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}

double poly_value(std::span<const double> a, double t) noexcept {
  // t * (a1 + t * (a2 + ... + t * am))
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + a[i];
  return acc * t;
}

double poly_slope(std::span<const double> a, double t) noexcept {
  // sum_i i a_i t^(i-1)
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + static_cast<double>(i + 1) * a[i];
  return acc;
}

MultiplierMap::MultiplierMap(SpaceDescriptor space_in, SpaceDescriptor space_out, std::vector<double> multipliers)
    : in_(space_in), out_(space_out), m_(std::move(multipliers)) {
  if (in_.dim != out_.dim || m_.size() != in_.dim)
    throw Error(ErrorKind::SpaceMismatch, "multiplier count must equal the dimension of both spaces");
}

MultiplierMap identity_map(const SpaceDescriptor& space) {
  return MultiplierMap(space, space, std::vector<double>(space.dim, 1.0));
}

Vector apply(const OperatorSpec& op, const Vector& x) {
  require_same_space(op.domain(), x.space(), "apply");
  std::vector<double> out(x.size());
  switch (op.kind()) {
    case OpKind::Power: {
      const int m = op.exponent();
      k::transform(x.coords(), out, [m](double t) { return int_power(t, m); });
      break;
    }
    case OpKind::PolyType: {
      const std::span<const double> a = op.coefficients();
      k::transform(x.coords(), out, [a](double t) { return poly_value(a, t); });
      break;
    }
    case OpKind::Sine:
      k::transform(x.coords(), out, [](double t) { return std::sin(t); });
      break;
    case OpKind::Scaled: {
      const Vector inner = apply(op.left(), x);
      const double a = op.scalar();
      k::transform(inner.coords(), out, [a](double t) { return a * t; });
      break;
    }
    case OpKind::Sum: {
      const Vector l = apply(op.left(), x);
      const Vector r = apply(op.right(), x);
      k::transform2(l.coords(), r.coords(), out, [](double u, double v) { return u + v; });
      break;
    }
    case OpKind::Compose: {
      const Vector y = apply(op.left(), apply(op.right(), x));
      out.assign(y.coords().begin(), y.coords().end());
      break;
    }
  }
  require_finite(out, "apply");
  return Vector(op.codomain(), std::move(out));
}

MultiplierMap exact_derivative(const OperatorSpec& op, const Vector& xbar) {
  require_same_space(op.domain(), xbar.space(), "exact_derivative");
  std::vector<double> mult(xbar.size());
  switch (op.kind()) {
    case OpKind::Power: {
      const int m = op.exponent();
      const double dm = m;
      k::transform(xbar.coords(), mult, [m, dm](double t) { return dm * int_power(t, m - 1); });
      break;
    }
    case OpKind::PolyType: {
      const std::span<const double> a = op.coefficients();
      k::transform(xbar.coords(), mult, [a](double t) { return poly_slope(a, t); });
      break;
    }
    case OpKind::Sine:
      k::transform(xbar.coords(), mult, [](double t) { return std::cos(t); });
      break;
    case OpKind::Scaled: {
      const auto d = exact_derivative(op.left(), xbar);
      const double a = op.scalar();
      k::transform(d.multipliers(), mult, [a](double t) { return a * t; });
      break;
    }
    case OpKind::Sum: {
      const auto l = exact_derivative(op.left(), xbar);
      const auto r = exact_derivative(op.right(), xbar);
      k::transform2(l.multipliers(), r.multipliers(), mult, [](double u, double v) { return u + v; });
      break;
    }
    case OpKind::Compose: {
      // chain rule: D(S o T)(x) = DS(T(x)) o DT(x)
      const auto inner = exact_derivative(op.right(), xbar);
      const auto outer = exact_derivative(op.left(), apply(op.right(), xbar));
      k::transform2(outer.multipliers(), inner.multipliers(), mult, [](double u, double v) { return u * v; });
      break;
    }
  }
  require_finite(mult, "exact_derivative");
  return MultiplierMap(op.domain(), op.codomain(), std::move(mult));
}

Vector apply_map(const MultiplierMap& d, const Vector& v) {
  require_same_space(d.space_in(), v.space(), "apply_map");
  std::vector<double> out(v.size());
  k::transform2(d.multipliers(), v.coords(), out, [](double m, double t) { return m * t; });
  require_finite(out, "apply_map");
  return Vector(d.space_out(), std::move(out));
}

double operator_norm(const MultiplierMap& d) { return k::abs_max(d.multipliers()); }

MultiplierMap compose_maps(const MultiplierMap& second, const MultiplierMap& first) {
  require_same_space(first.space_out(), second.space_in(), "compose_maps");
  std::vector<double> m(first.multipliers().size());
  k::transform2(second.multipliers(), first.multipliers(), m, [](double u, double v) { return u * v; });
  return MultiplierMap(first.space_in(), second.space_out(), std::move(m));
}

MultiplierMap combine_maps(double a, const MultiplierMap& d1, double b, const MultiplierMap& d2) {
  require_same_space(d1.space_in(), d2.space_in(), "combine_maps");
  require_same_space(d1.space_out(), d2.space_out(), "combine_maps");
  std::vector<double> m(d1.multipliers().size());
  k::transform2(d1.multipliers(), d2.multipliers(), m, [a, b](double u, double v) { return a * u + b * v; });
  return MultiplierMap(d1.space_in(), d1.space_out(), std::move(m));
}

MultiplierMap perturb_map(const MultiplierMap& d, double delta) {
  std::vector<double> m(d.multipliers().size());
  k::transform(d.multipliers(), m, [delta](double u) { return u + delta; });
  return MultiplierMap(d.space_in(), d.space_out(), std::move(m));
}

}  // namespace ordiff
