#include "ordiff/ordopt.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ordiff/error.hpp"
#include "ordiff/kernels.hpp"

namespace ordiff {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

double horner(const std::vector<double>& ascending, double t) {
  double acc = 0.0;
  for (std::size_t i = ascending.size(); i-- > 0;) acc = acc * t + ascending[i];
  return acc;
}

double horner_slope(const std::vector<double>& ascending, double t) {
  double acc = 0.0;
  for (std::size_t i = ascending.size(); i-- > 1;) acc = acc * t + static_cast<double>(i) * ascending[i];
  return acc;
}

/// sum |c_k| |t|^k, the scale against which a root residual is judged.
double magnitude(const std::vector<double>& ascending, double t) {
  double acc = 0.0;
  for (std::size_t i = ascending.size(); i-- > 0;) acc = acc * std::abs(t) + std::abs(ascending[i]);
  return acc;
}

double polish(const std::vector<double>& p, double t) {
  for (int it = 0; it < 60; ++it) {
    const double d = horner_slope(p, t);
    if (d == 0.0) break;
    const double step = horner(p, t) / d;
    if (!std::isfinite(step)) break;
    const double next = t - step;
    if (std::abs(horner(p, next)) >= std::abs(horner(p, t)) && it > 0) break;
    t = next;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(t))) break;
  }
  return t;
}

// Ties (non-strict LessEq/GreaterEq, Equal) are compatible with both maximum and minimum.
struct Tally {
  bool any = false;
  bool strictly_above = false;
  bool strictly_below = false;
  bool incomparable = false;
};

ExtremumStatus classify(const Tally& t) {
  if (!t.any) return ExtremumStatus::Inconclusive;
  if (t.incomparable) return ExtremumStatus::NotExtreme;
  if (!t.strictly_above) return ExtremumStatus::Maximum;
  if (!t.strictly_below) return ExtremumStatus::Minimum;
  return ExtremumStatus::NotExtreme;
}

/// Relations of T(sample) to T(xbar), evaluated in parallel, returned in sample order.
std::vector<OrderVerdict> relations_to_base(const OperatorSpec& op, const ConeDescriptor& cone, const Vector& tbase,
                                            const std::vector<Vector>& points) {
  std::vector<std::optional<OrderVerdict>> out(points.size());
  kernels::parallel::for_each_index(points.size(),
                                    [&](std::size_t i) { out[i] = compare(cone, apply(op, points[i]), tbase); });
  std::vector<OrderVerdict> r;
  r.reserve(out.size());
  for (auto& v : out) r.push_back(std::move(*v));
  return r;
}

void require_cone(const ConeDescriptor& cone, const SpaceDescriptor& space, const char* what) {
  cone.validate();
  if (!cone.compatible_with(space))
    throw Error(ErrorKind::SpaceMismatch,
                std::string(what) + ": cone " + shorthand(cone) + " does not live in " + describe(space));
}

}  // namespace

bool is_generalized_critical(const OperatorSpec& op, const Vector& xbar, double tol) {
  return operator_norm(exact_derivative(op, xbar)) <= tol;
}

std::string to_string(CriticalSetKind k) {
  switch (k) {
    case CriticalSetKind::OnlyOrigin: return "OnlyOrigin";
    case CriticalSetKind::Empty: return "Empty";
    case CriticalSetKind::OriginPlusNonzeroRoots: return "OriginPlusNonzeroRoots";
    case CriticalSetKind::NonzeroRootsOnly: return "NonzeroRootsOnly";
  }
  return "?";
}

std::vector<double> real_polynomial_roots(const std::vector<double>& ascending) {
  std::vector<double> p = ascending;
  while (!p.empty() && p.back() == 0.0) p.pop_back();
  if (p.empty()) throw Error(ErrorKind::DegenerateOperator, "zero polynomial has no finite root set");

  std::vector<double> roots;
  std::size_t zeros = 0;
  while (zeros < p.size() && p[zeros] == 0.0) ++zeros;
  if (zeros > 0) {
    roots.push_back(0.0);
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  }

  const auto degree = static_cast<Eigen::Index>(p.size()) - 1;
  if (degree >= 1) {
    // Companion matrix of the monic polynomial; its eigenvalues are the roots.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    const double lead = p.back();
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -p[static_cast<std::size_t>(i)] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalBreakdown, "companion eigenvalues failed");

    // A multiple root splits into a cluster of size ~eps^(1/k), possibly
    // complex; accept near-real eigenvalues and confirm them by residual.
    for (const auto& z : solver.eigenvalues()) {
      if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
      const double t = polish(p, z.real());
      if (std::abs(horner(p, t)) <= 1e-8 * magnitude(p, t)) roots.push_back(t);
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && std::abs(r - merged.back()) <= 1e-6 * (1.0 + std::abs(r))) {
      // keep the exact zero if present, otherwise the better residual
      if (merged.back() != 0.0 && (r == 0.0 || std::abs(horner(p, r)) < std::abs(horner(p, merged.back()))))
        merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

CriticalSetResult critical_set_polytype(const std::vector<double>& coeffs, bool claim_mode) {
  if (coeffs.empty() || std::all_of(coeffs.begin(), coeffs.end(), [](double a) { return a == 0.0; }))
    throw Error(ErrorKind::DegenerateOperator, "at least one coefficient must be nonzero");

  // q(t) = sum_i i a_i t^(i-1), ascending powers of t
  std::vector<double> q(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) q[i] = static_cast<double>(i + 1) * coeffs[i];

  CriticalSetResult r;
  r.root_set = real_polynomial_roots(q);
  const bool has_zero = std::find(r.root_set.begin(), r.root_set.end(), 0.0) != r.root_set.end();
  const bool has_nonzero = r.root_set.size() > (has_zero ? 1U : 0U);

  // In l_p the coordinates of a point tend to 0, while each coordinate of a
  // critical point must be a root; roots are finite in number, so 0 must be
  // one of them and all but finitely many coordinates equal 0.
  if (has_zero)
    r.set_kind = has_nonzero ? CriticalSetKind::OriginPlusNonzeroRoots : CriticalSetKind::OnlyOrigin;
  else
    r.set_kind = CriticalSetKind::Empty;
  r.truncated_kind = r.set_kind;
  if (!has_zero && has_nonzero) r.truncated_kind = CriticalSetKind::NonzeroRootsOnly;

  if (claim_mode) {
    r.published_claim = coeffs.front() == 0.0 ? CriticalSetKind::OnlyOrigin : CriticalSetKind::Empty;
    r.discrepancy_flag = *r.published_claim != r.set_kind;
  }
  return r;
}

std::string to_string(ExtremumStatus s) {
  switch (s) {
    case ExtremumStatus::Maximum: return "Maximum";
    case ExtremumStatus::Minimum: return "Minimum";
    case ExtremumStatus::NotExtreme: return "NotExtreme";
    case ExtremumStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(ExtremumScope s) { return s == ExtremumScope::Directional ? "Directional" : "Absolute"; }

std::vector<double> directional_samples(TRange range, int num_t) {
  if (range.lo > range.hi) std::swap(range.lo, range.hi);
  std::vector<double> t;
  const double tmax = std::max(std::abs(range.lo), std::abs(range.hi));
  if (tmax == 0.0) return t;
  t.push_back(range.lo);
  t.push_back(range.hi);
  if (num_t >= 2) {
    for (int i = 0; i < num_t; ++i)
      t.push_back(range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(num_t - 1));
  }
  for (double small : {-1e-3 * tmax, 1e-3 * tmax})
    if (small >= range.lo && small <= range.hi) t.push_back(small);
  std::erase_if(t, [tmax](double v) { return std::abs(v) <= 1e-15 * tmax; });
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

ExtremumVerdict directional_extremum(const OperatorSpec& op, const ConeDescriptor& cone, const Vector& xbar,
                                     const Vector& v, TRange range, int num_t) {
  require_same_space(op.domain(), xbar.space(), "directional_extremum base point");
  require_same_space(op.domain(), v.space(), "directional_extremum direction");
  require_cone(cone, op.codomain(), "directional_extremum");
  if (norm(v) == 0.0) throw Error(ErrorKind::ZeroDirection, "direction must be nonzero");

  const auto ts = directional_samples(range, num_t);
  std::vector<Vector> points;
  points.reserve(ts.size());
  for (double t : ts) points.push_back(axpy(1.0, xbar, t, v));
  const auto rel = relations_to_base(op, cone, apply(op, xbar), points);

  ExtremumVerdict out;
  out.scope = ExtremumScope::Directional;
  out.num_samples = ts.size();
  out.sample_description = "t in [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "], " +
                           std::to_string(ts.size()) + " nonzero samples";
  Tally tally;
  auto keep_largest = [](std::optional<double>& slot, double t) {
    if (!slot || std::abs(t) > std::abs(*slot)) slot = t;
  };
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tally.any = true;
    const auto& r = rel[i];
    if (r.relation == Relation::Incomparable) {
      tally.incomparable = true;
      keep_largest(out.witness.t_incomparable, ts[i]);
    } else if (r.relation == Relation::LessEq && r.is_strict) {
      tally.strictly_below = true;
      keep_largest(out.witness.t_below, ts[i]);
    } else if (r.relation == Relation::GreaterEq && r.is_strict) {
      tally.strictly_above = true;
      keep_largest(out.witness.t_above, ts[i]);
    }
  }
  out.status = classify(tally);
  // Witnesses are only meaningful for NotExtreme.
  if (out.status != ExtremumStatus::NotExtreme) out.witness = {};
  return out;
}

ExtremumVerdict absolute_extremum(const OperatorSpec& op, const ConeDescriptor& cone, const Vector& xbar,
                                  const std::vector<Vector>& samples, std::string description) {
  require_same_space(op.domain(), xbar.space(), "absolute_extremum base point");
  for (const auto& s : samples) require_same_space(op.domain(), s.space(), "absolute_extremum sample");
  require_cone(cone, op.codomain(), "absolute_extremum");

  const auto rel = relations_to_base(op, cone, apply(op, xbar), samples);
  ExtremumVerdict out;
  out.scope = ExtremumScope::Absolute;
  out.num_samples = samples.size();
  out.sample_description =
      description.empty() ? std::to_string(samples.size()) + " supplied samples" : std::move(description);
  Tally tally;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    tally.any = true;
    const auto& r = rel[i];
    if (r.relation == Relation::Incomparable) {
      tally.incomparable = true;
      if (!out.witness.sample_incomparable) out.witness.sample_incomparable = i;
    } else if (r.relation == Relation::LessEq && r.is_strict) {
      tally.strictly_below = true;
      if (!out.witness.sample_below) out.witness.sample_below = i;
    } else if (r.relation == Relation::GreaterEq && r.is_strict) {
      tally.strictly_above = true;
      if (!out.witness.sample_above) out.witness.sample_above = i;
    }
  }
  out.status = classify(tally);
  if (out.status != ExtremumStatus::NotExtreme) out.witness = {};
  return out;
}

std::vector<double> critical_set_sine(double lo, double hi, double tol, const SpaceDescriptor& grid) {
  std::vector<double> out;
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) return out;
  constexpr double pi = std::numbers::pi;
  const auto first = static_cast<long long>(std::ceil((lo - pi / 2) / pi));
  const auto last = static_cast<long long>(std::floor((hi - pi / 2) / pi));
  const auto s = sine(grid);
  for (long long n = first; n <= last; ++n) {
    const double c = static_cast<double>(n) * pi + pi / 2;
    if (c < lo || c > hi) continue;
    if (std::abs(std::cos(c)) > tol) continue;
    if (is_generalized_critical(s, constant(grid, c), tol)) out.push_back(c);
  }
  return out;
}

Vector random_point(const SpaceDescriptor& space, std::uint64_t seed, std::uint64_t stream) {
  auto rng = make_rng(seed, stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(space.dim);
  for (auto& x : c) x = normal(rng);
  return Vector(space, std::move(c));
}

Vector random_uniform(const SpaceDescriptor& space, double lo, double hi, std::uint64_t seed, std::uint64_t stream) {
  auto rng = make_rng(seed, stream);
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> c(space.dim);
  for (auto& x : c) x = uni(rng);
  return Vector(space, std::move(c));
}

Vector random_cone_element(const ConeDescriptor& cone, const SpaceDescriptor& space, std::uint64_t seed,
                           std::uint64_t stream) {
  require_cone(cone, space, "random_cone_element");
  auto rng = make_rng(seed, stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  if (cone.kind != ConeKind::PolyNonneg) {
    std::vector<double> c(space.dim);
    for (auto& x : c) x = std::abs(normal(rng));
    return Vector(space, std::move(c));
  }
  std::vector<double> coef(static_cast<std::size_t>(cone.degree) + 1);
  for (auto& a : coef) a = std::abs(normal(rng));
  return sample(space, [&coef](double t) { return horner(coef, t); });
}

MonotoneCertificate check_order_monotone(const OperatorSpec& op, const ConeDescriptor& domain_cone,
                                         const ConeDescriptor& codomain_cone, int num_pairs, std::uint64_t seed) {
  require_cone(domain_cone, op.domain(), "check_order_monotone domain");
  require_cone(codomain_cone, op.codomain(), "check_order_monotone codomain");
  if (num_pairs < 1) throw Error(ErrorKind::InvalidConfig, "num_pairs must be positive");

  const auto n = static_cast<std::size_t>(num_pairs);
  // streams: 4i, 4i+1 for the pair test; 4i+2, 4i+3 for the derivative test
  std::vector<char> pair_ok(n, 0), deriv_ok(n, 0);
  kernels::parallel::for_each_index(n, [&](std::size_t i) {
    const Vector x = random_point(op.domain(), seed, 4 * i);
    const Vector y = x + random_cone_element(domain_cone, op.domain(), seed, 4 * i + 1);
    const auto r = compare(codomain_cone, apply(op, x), apply(op, y));
    pair_ok[i] = r.relation == Relation::LessEq || r.relation == Relation::Equal ||
                 (r.relation == Relation::GreaterEq && !r.is_strict);

    const Vector xbar = random_point(op.domain(), seed, 4 * i + 2);
    const Vector v = random_cone_element(domain_cone, op.domain(), seed, 4 * i + 3);
    deriv_ok[i] = in_cone(codomain_cone, apply_map(exact_derivative(op, xbar), v)).member;
  });

  MonotoneCertificate cert;
  cert.num_pairs = num_pairs;
  cert.seed = seed;
  cert.order_increasing_sampled = std::all_of(pair_ok.begin(), pair_ok.end(), [](char c) { return c != 0; });
  cert.derivative_cone_positive = std::all_of(deriv_ok.begin(), deriv_ok.end(), [](char c) { return c != 0; });
  for (std::size_t i = 0; i < n && !cert.counterexample; ++i) {
    if (pair_ok[i]) continue;
    const Vector x = random_point(op.domain(), seed, 4 * i);
    const Vector y = x + random_cone_element(domain_cone, op.domain(), seed, 4 * i + 1);
    cert.counterexample.emplace(std::vector<double>(x.coords().begin(), x.coords().end()),
                                std::vector<double>(y.coords().begin(), y.coords().end()));
  }
  for (std::size_t i = 0; i < n && !cert.derivative_counterexample; ++i) {
    if (deriv_ok[i]) continue;
    const Vector xbar = random_point(op.domain(), seed, 4 * i + 2);
    const Vector v = random_cone_element(domain_cone, op.domain(), seed, 4 * i + 3);
    cert.derivative_counterexample.emplace(std::vector<double>(xbar.coords().begin(), xbar.coords().end()),
                                           std::vector<double>(v.coords().begin(), v.coords().end()));
  }
  return cert;
}

}  // namespace ordiff
