#include "ordiff/diffcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ordiff/error.hpp"
#include "ordiff/kernels.hpp"

namespace ordiff {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
/// Remainders within this many ulps of the operands count as round-off.
constexpr double kRoundoffUlps = 16.0;

void require_decreasing(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw Error(ErrorKind::InvalidConfig, std::string(name) + " must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw Error(ErrorKind::InvalidConfig, std::string(name) + " must be positive and finite");
    if (i > 0 && !(v[i] < v[i - 1]))
      throw Error(ErrorKind::InvalidConfig, std::string(name) + " must be strictly decreasing");
  }
}

/// Evaluates op at x + h v, mapping out-of-range intermediates to NumericalBreakdown.
Vector apply_shifted(const OperatorSpec& op, const Vector& x, double h, const Vector& v) {
  try {
    return apply(op, axpy(1.0, x, h, v));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidVector) throw Error(ErrorKind::NumericalBreakdown, e.what());
    throw;
  }
}

Vector quotient(const Vector& hi, const Vector& lo, double denom) {
  try {
    return axpy(1.0 / denom, hi, -1.0 / denom, lo);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidVector) throw Error(ErrorKind::NumericalBreakdown, e.what());
    throw;
  }
}

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

bool is_lp_power(const OperatorSpec& op) {
  return op.kind() == OpKind::Power && op.domain().kind == SpaceKind::SequenceLp && op.codomain() == op.domain();
}

struct DirectionResult {
  double directional_error = 0.0;
  std::vector<double> remainder;  // ||T(x+su) - T(x) - D(su)|| per scale
  std::vector<double> step;       // ||su|| per scale
  std::vector<double> floor;      // round-off floor per scale
  bool bound_ok = true;
};

}  // namespace

void DiffConfig::validate() const {
  require_decreasing(h_values, "h_values");
  require_decreasing(slope_scales, "slope_scales");
  if (num_directions < 1) throw Error(ErrorKind::InvalidConfig, "num_directions must be positive");
}

Vector random_unit_direction(const SpaceDescriptor& space, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(space.dim);
  for (auto& x : c) x = normal(rng);
  const Vector raw(space, std::move(c));
  return scale(1.0 / norm(raw), raw);
}

GateauxEstimate gateaux_fd(const OperatorSpec& op, const Vector& xbar, const Vector& v, const DiffConfig& cfg) {
  cfg.validate();
  require_same_space(op.domain(), xbar.space(), "gateaux_fd base point");
  require_same_space(op.domain(), v.space(), "gateaux_fd direction");
  if (norm(v) == 0.0) throw Error(ErrorKind::ZeroDirection, "direction must be nonzero");

  std::optional<Vector> base;
  if (cfg.scheme == FdScheme::Forward) base = apply(op, xbar);

  std::vector<Vector> estimates;
  estimates.reserve(cfg.h_values.size());
  for (double h : cfg.h_values) {
    const Vector plus = apply_shifted(op, xbar, h, v);
    if (cfg.scheme == FdScheme::Central)
      estimates.push_back(quotient(plus, apply_shifted(op, xbar, -h, v), 2.0 * h));
    else
      estimates.push_back(quotient(plus, *base, h));
  }

  std::size_t chosen = estimates.size() - 1;
  double gap = 0.0;
  bool agreed = false;
  if (estimates.size() > 1) {
    std::size_t best = 1;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < estimates.size(); ++i) {
      const double g = norm(estimates[i] - estimates[i - 1]);
      if (g <= kRichardsonAgreement * (1.0 + norm(estimates[i]))) {
        chosen = i;
        gap = g;
        agreed = true;
      }
      if (g < best_gap) {
        best_gap = g;
        best = i;
      }
    }
    if (!agreed) {
      chosen = best;
      gap = best_gap;
    }
  }
  return GateauxEstimate{estimates[chosen], cfg.h_values[chosen], gap, agreed};
}

RemainderBound remainder_bound_sides(const OperatorSpec& op, const Vector& xbar, const Vector& u) {
  if (!is_lp_power(op)) throw Error(ErrorKind::InvalidOperator, "remainder bound applies to the power operator on l_p");
  require_same_space(op.domain(), xbar.space(), "remainder bound base point");
  require_same_space(op.domain(), u.space(), "remainder bound step");
  const double un = norm(u);
  if (!(un > 0.0 && un < 1.0)) throw Error(ErrorKind::InvalidScale, "needs 0 < ||u||_p < 1, got " + std::to_string(un));
  const auto d = exact_derivative(op, xbar);
  const Vector rem = apply(op, xbar + u) - apply(op, xbar) - apply_map(d, u);
  const double lhs = norm(rem) / un;
  const double rhs = std::pow(1.0 + sup_functional(xbar), op.exponent()) * un;
  return {lhs, rhs};
}

bool check_remainder_bound(const OperatorSpec& op, const Vector& xbar, const Vector& u) {
  const auto [lhs, rhs] = remainder_bound_sides(op, xbar, u);
  return lhs <= rhs + 1e-10;
}

FrechetReport verify_frechet(const OperatorSpec& op, const Vector& xbar, const DiffConfig& cfg,
                             const MultiplierMap& exact) {
  cfg.validate();
  require_same_space(op.domain(), xbar.space(), "verify_frechet base point");
  require_same_space(op.domain(), exact.space_in(), "verify_frechet derivative domain");
  require_same_space(op.codomain(), exact.space_out(), "verify_frechet derivative codomain");

  const Vector tx = apply(op, xbar);
  const double tx_norm = norm(tx);
  const bool with_bound = is_lp_power(op);
  const std::size_t ndir = static_cast<std::size_t>(cfg.num_directions);
  const std::size_t nscale = cfg.slope_scales.size();

  std::vector<DirectionResult> results(ndir);
  kernels::parallel::for_each_index(ndir, [&](std::size_t i) {
    const Vector u = random_unit_direction(op.domain(), cfg.rng_seed, i);
    auto& r = results[i];

    const Vector du = apply_map(exact, u);
    const auto est = gateaux_fd(op, xbar, u, cfg);
    r.directional_error = norm(est.value - du) / (1.0 + norm(du));

    r.remainder.resize(nscale);
    r.step.resize(nscale);
    r.floor.resize(nscale);
    for (std::size_t k = 0; k < nscale; ++k) {
      const double s = cfg.slope_scales[k];
      const Vector su = scale(s, u);
      const Vector moved = apply_shifted(op, xbar, s, u);
      const Vector lin = apply_map(exact, su);
      const double rem = norm(moved - tx - lin);
      if (!std::isfinite(rem)) throw Error(ErrorKind::NumericalBreakdown, "non-finite remainder");
      r.remainder[k] = rem;
      r.step[k] = norm(su);
      r.floor[k] = kRoundoffUlps * kEps * (norm(moved) + tx_norm + norm(lin));
      if (with_bound && r.step[k] > 0.0 && r.step[k] < 1.0) r.bound_ok = r.bound_ok && check_remainder_bound(op, xbar, su);
    }
  });

  FrechetReport rep;
  rep.seed = cfg.rng_seed;
  rep.num_directions = cfg.num_directions;
  rep.remainder_ratios.assign(nscale, 0.0);
  std::vector<bool> limited(nscale, true);
  bool bound_ok = true;
  for (const auto& r : results) {
    rep.max_directional_error = std::max(rep.max_directional_error, r.directional_error);
    for (std::size_t k = 0; k < nscale; ++k) {
      const double ratio = r.remainder[k] / r.step[k];
      if (!std::isfinite(ratio)) throw Error(ErrorKind::NumericalBreakdown, "non-finite remainder ratio");
      rep.remainder_ratios[k] = std::max(rep.remainder_ratios[k], ratio);
      if (r.remainder[k] > r.floor[k]) limited[k] = false;
    }
    rep.residual_at_smallest = std::max(rep.residual_at_smallest, r.remainder.back());
    bound_ok = bound_ok && r.bound_ok;
  }
  if (with_bound) rep.bound_satisfied = bound_ok;

  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < nscale; ++k) {
    if (limited[k]) continue;
    xs.push_back(std::log(cfg.slope_scales[k]));
    ys.push_back(std::log(rep.remainder_ratios[k]));
  }
  rep.exact_zero_remainder = xs.size() < 2;
  rep.remainder_slope = rep.exact_zero_remainder ? 0.0 : fit_slope(xs, ys);

  const bool slope_ok = rep.exact_zero_remainder || rep.remainder_slope >= kSlopeThreshold;
  const bool pass = rep.max_directional_error <= kDirectionalTolerance && slope_ok &&
                    rep.residual_at_smallest <= kResidualTolerance * (1.0 + tx_norm) &&
                    rep.bound_satisfied.value_or(true);
  rep.verdict = pass ? Verdict::Pass : Verdict::Fail;
  return rep;
}

}  // namespace ordiff
