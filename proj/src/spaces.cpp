#include "ordiff/spaces.hpp"

#include <cmath>
#include <sstream>

#include "ordiff/error.hpp"
#include "ordiff/kernels.hpp"

namespace ordiff {

namespace k = kernels::parallel;

void SpaceDescriptor::validate() const {
  if (has_exponent() && !(p > 1.0 && std::isfinite(p)))
    throw Error(ErrorKind::InvalidSpace, "exponent p must satisfy 1 < p < inf, got " + std::to_string(p));
  if (is_grid() && dim < 2) throw Error(ErrorKind::InvalidSpace, "grid spaces need at least 2 points");
  if (dim < 1) throw Error(ErrorKind::InvalidSpace, "dimension must be positive");
}

SpaceDescriptor sequence_lp(double p, std::size_t n) {
  SpaceDescriptor s{SpaceKind::SequenceLp, p, n};
  s.validate();
  return s;
}

SpaceDescriptor grid_c01(std::size_t g) {
  SpaceDescriptor s{SpaceKind::GridC01, 0.0, g};
  s.validate();
  return s;
}

SpaceDescriptor grid_lp01(double p, std::size_t g) {
  SpaceDescriptor s{SpaceKind::GridLp01, p, g};
  s.validate();
  return s;
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::SequenceLp: return "SequenceLp";
    case SpaceKind::GridC01: return "GridC01";
    case SpaceKind::GridLp01: return "GridLp01";
  }
  return "?";
}

std::string describe(const SpaceDescriptor& space) {
  std::ostringstream os;
  switch (space.kind) {
    case SpaceKind::SequenceLp: os << "l_" << space.p << " (N=" << space.dim << ")"; break;
    case SpaceKind::GridC01: os << "C[0,1] (G=" << space.dim << ")"; break;
    case SpaceKind::GridLp01: os << "L_" << space.p << "[0,1] (G=" << space.dim << ")"; break;
  }
  return os.str();
}

SpaceDescriptor with_kind(const SpaceDescriptor& space, SpaceKind kind, double p) {
  if (!space.is_grid() || kind == SpaceKind::SequenceLp)
    throw Error(ErrorKind::WrongSpace, "only grid spaces can be relabelled");
  SpaceDescriptor s{kind, kind == SpaceKind::GridC01 ? 0.0 : p, space.dim};
  s.validate();
  return s;
}

std::vector<double> grid_points(const SpaceDescriptor& space) {
  if (!space.is_grid()) throw Error(ErrorKind::WrongSpace, "grid_points needs a grid space");
  std::vector<double> t(space.dim);
  const double h = 1.0 / static_cast<double>(space.dim - 1);
  for (std::size_t i = 0; i < space.dim; ++i) t[i] = static_cast<double>(i) * h;
  t.back() = 1.0;
  return t;
}

Vector::Vector(SpaceDescriptor space, std::vector<double> coords)
    : space_(space), coords_(std::move(coords)) {
  try {
    space_.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidVector, e.what());
  }
  if (coords_.size() != space_.dim)
    throw Error(ErrorKind::InvalidVector, "expected " + std::to_string(space_.dim) + " coordinates, got " +
                                              std::to_string(coords_.size()));
  if (!k::all_finite(coords_)) throw Error(ErrorKind::InvalidVector, "coordinates must be finite");
}

Vector zeros(const SpaceDescriptor& space) { return Vector(space, std::vector<double>(space.dim, 0.0)); }

Vector constant(const SpaceDescriptor& space, double c) {
  return Vector(space, std::vector<double>(space.dim, c));
}

Vector geometric(const SpaceDescriptor& space, double r) {
  std::vector<double> c(space.dim);
  double v = r;
  for (auto& x : c) {
    x = v;
    v *= r;
  }
  return Vector(space, std::move(c));
}

Vector sample(const SpaceDescriptor& space, const std::function<double(double)>& f) {
  const auto t = grid_points(space);
  std::vector<double> c(t.size());
  k::transform(t, c, f);
  return Vector(space, std::move(c));
}

double norm(const Vector& x) {
  const auto c = x.coords();
  const double m = k::abs_max(c);
  const auto& s = x.space();
  if (s.kind == SpaceKind::GridC01 || m == 0.0) return m;
  // Scaling by the max keeps |t|^p away from overflow and underflow.
  if (s.kind == SpaceKind::SequenceLp) return m * std::pow(k::pow_sum(c, s.p, m, false), 1.0 / s.p);
  const double h = 1.0 / static_cast<double>(s.dim - 1);
  return m * std::pow(h * k::pow_sum(c, s.p, m, true), 1.0 / s.p);
}

double sup_functional(const Vector& x) {
  if (x.space().kind != SpaceKind::SequenceLp)
    throw Error(ErrorKind::WrongSpace, "sup functional is defined on l_p only");
  return k::abs_max(x.coords());
}

void require_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b, const char* where) {
  if (!(a == b)) throw Error(ErrorKind::SpaceMismatch, std::string(where) + ": " + describe(a) + " vs " + describe(b));
}

Vector axpy(double a, const Vector& x, double b, const Vector& y) {
  require_same_space(x.space(), y.space(), "axpy");
  std::vector<double> out(x.size());
  k::transform2(x.coords(), y.coords(), out, [a, b](double u, double v) { return a * u + b * v; });
  return Vector(x.space(), std::move(out));
}

Vector scale(double a, const Vector& x) {
  std::vector<double> out(x.size());
  k::transform(x.coords(), out, [a](double u) { return a * u; });
  return Vector(x.space(), std::move(out));
}

Vector operator+(const Vector& x, const Vector& y) { return axpy(1.0, x, 1.0, y); }
Vector operator-(const Vector& x, const Vector& y) { return axpy(1.0, x, -1.0, y); }
Vector operator-(const Vector& x) { return scale(-1.0, x); }

}  // namespace ordiff
