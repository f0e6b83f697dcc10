#include "ordiff/cli/fixtures.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ordiff/cones.hpp"
#include "ordiff/error.hpp"
#include "ordiff/kernels.hpp"
#include "ordiff/ordopt.hpp"

namespace ordiff::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalTol = 1e-9;

struct Context {
  std::uint64_t seed;
  DiffConfig diff;
};

using Body = std::function<FixtureResult(const Context&)>;

FixtureResult verdict(std::string id, bool ok, json details) {
  return {std::move(id), ok ? FixtureStatus::Pass : FixtureStatus::Fail, std::move(details)};
}

std::vector<double> coords_of(const Vector& v) { return {v.coords().begin(), v.coords().end()}; }

/// Family oracle sweep plus Fréchet checks at 10 base points, with a corrupted derivative that must fail.
json family_check(const SpaceDescriptor& domain, std::optional<SpaceDescriptor> codomain,
                  const std::function<bool(const OperatorSpec&)>& select, const Context& ctx, bool& ok) {
  json rows = json::array();
  for (const auto& op : family_members(domain, codomain, ctx.seed)) {
    if (!select(op)) continue;
    const double err = oracle_sweep_error(op, 50, ctx.seed, ctx.diff);
    bool all_pass = true, corrupted_fail = true;
    double min_slope = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < 10; ++i) {
      const Vector x = random_point(domain, ctx.seed, 5000 + i);
      const auto d = exact_derivative(op, x);
      const auto rep = verify_frechet(op, x, ctx.diff, d);
      all_pass = all_pass && rep.verdict == Verdict::Pass;
      if (!rep.exact_zero_remainder) min_slope = std::min(min_slope, rep.remainder_slope);
      corrupted_fail = corrupted_fail && verify_frechet(op, x, ctx.diff, perturb_map(d, 0.1)).verdict == Verdict::Fail;
    }
    const bool row_ok = err <= kDirectionalTolerance && all_pass && corrupted_fail;
    ok = ok && row_ok;
    rows.push_back({{"op", to_string(op)},
                    {"space", describe(domain)},
                    {"codomain", describe(op.codomain())},
                    {"oracle_max_error", err},
                    {"frechet_all_pass", all_pass},
                    {"min_remainder_slope", std::isfinite(min_slope) ? json(min_slope) : json(nullptr)},
                    {"corrupted_all_fail", corrupted_fail}});
  }
  return rows;
}

bool is_kind(const OperatorSpec& op, OpKind k) { return op.kind() == k; }

FixtureResult formula_fixture(std::string id, std::vector<SpaceDescriptor> domains, std::optional<SpaceDescriptor> cod_p,
                              OpKind kind, const Context& ctx) {
  bool ok = true;
  json rows = json::array();
  for (const auto& dom : domains) {
    std::optional<SpaceDescriptor> cod;
    if (cod_p) cod = grid_lp01(cod_p->p, dom.dim);
    for (auto& r : family_check(dom, cod, [kind](const OperatorSpec& op) { return is_kind(op, kind); }, ctx, ok))
      rows.push_back(std::move(r));
  }
  return verdict(std::move(id), ok, {{"members", rows}});
}

std::vector<SpaceDescriptor> lp_spaces() { return {sequence_lp(1.5), sequence_lp(2.0), sequence_lp(3.0)}; }

// ---- derivative rules ------------------------------------------------------

FixtureResult linearity(const Context& ctx) {
  const auto space = sequence_lp(2.0);
  double worst = 0.0;
  const OperatorSpec parts[] = {power(3, space), sine(space), polytype({1.0, 1.0, 1.0 / 3.0}, space), power(2, space)};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto ab = random_point(sequence_lp(2.0, 2), ctx.seed, 100 + i);
    const double a = ab[0], b = ab[1];
    const auto& A = parts[i % 4];
    const auto& B = parts[(i + 1) % 4];
    const Vector x = random_point(space, ctx.seed, 200 + i);
    const auto lhs = exact_derivative(sum(scaled(a, A), scaled(b, B)), x);
    const auto rhs = combine_maps(a, exact_derivative(A, x), b, exact_derivative(B, x));
    const auto lhs_s = exact_derivative(scaled(a, A), x);
    const auto rhs_s = exact_derivative(A, x);
    for (std::size_t k = 0; k < space.dim; ++k) {
      const double m = rhs.multipliers()[k];
      worst = std::max(worst, std::abs(lhs.multipliers()[k] - m) / (1.0 + std::abs(m)));
      const double ms = a * rhs_s.multipliers()[k];
      worst = std::max(worst, std::abs(lhs_s.multipliers()[k] - ms) / (1.0 + std::abs(ms)));
    }
  }
  return verdict("eq-1.6-1.7", worst <= 1e-12, {{"max_elementwise_error", worst}, {"specs", 20}});
}

FixtureResult chain_rule(const Context& ctx) {
  const auto space = sequence_lp(2.0);
  double worst = 0.0;
  double worst_fd = 0.0;
  for (int m : {2, 3, 5}) {
    const auto outer_pow = compose(power(m, space), sine(space));
    const auto outer_sin = compose(sine(space), power(m, space));
    for (std::uint64_t i = 0; i < 20; ++i) {
      const Vector x = random_point(space, ctx.seed, 300 + i);
      const auto d1 = exact_derivative(outer_pow, x);
      const auto d2 = exact_derivative(outer_sin, x);
      for (std::size_t k = 0; k < space.dim; ++k) {
        const double t = x[k];
        // closed forms: (sin^m)' = m sin^(m-1) cos, (sin(t^m))' = cos(t^m) m t^(m-1)
        const double e1 = m * std::pow(std::sin(t), m - 1) * std::cos(t);
        const double e2 = std::cos(std::pow(t, m)) * m * std::pow(t, m - 1);
        worst = std::max(worst, std::abs(d1.multipliers()[k] - e1) / (1.0 + std::abs(e1)));
        worst = std::max(worst, std::abs(d2.multipliers()[k] - e2) / (1.0 + std::abs(e2)));
      }
    }
    worst_fd = std::max({worst_fd, oracle_sweep_error(outer_pow, 20, ctx.seed, ctx.diff),
                         oracle_sweep_error(outer_sin, 20, ctx.seed, ctx.diff)});
  }
  return verdict("eq-1.8", worst <= 1e-12 && worst_fd <= kDirectionalTolerance,
                 {{"max_elementwise_error", worst}, {"oracle_max_error", worst_fd}, {"points", 20}});
}

// ---- sequence spaces -------------------------------------------------------

FixtureResult thm31_bound(const Context& ctx) {
  bool ok = true;
  double worst_margin = -std::numeric_limits<double>::infinity();
  const double ps[] = {1.5, 2.0, 3.0};
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int m = 1 + static_cast<int>(i % 5);
    const auto space = sequence_lp(ps[i % 3]);
    const auto op = power(m, space);
    const Vector x = random_point(space, ctx.seed, 400 + i);
    const double size = 0.01 + 0.89 * (static_cast<double>(i) + 0.5) / 100.0;
    const Vector u = scale(size, random_unit_direction(space, ctx.seed, 600 + i));
    const auto sides = remainder_bound_sides(op, x, u);
    ok = ok && check_remainder_bound(op, x, u);
    worst_margin = std::max(worst_margin, sides.lhs - sides.rhs);
  }
  return verdict("thm-3.1-bound", ok, {{"pairs", 100}, {"max_lhs_minus_rhs", worst_margin}});
}

FixtureResult cor34_i(const Context&) {
  bool ok = true;
  json rows = json::array();
  for (const std::vector<double>& a : {std::vector<double>{0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 0, 2}, {0, -4}}) {
    const auto r = critical_set_polytype(a, true);
    ok = ok && r.set_kind == CriticalSetKind::OnlyOrigin && !r.discrepancy_flag;
    rows.push_back({{"coefficients", a}, {"result", r}});
  }
  return verdict("cor-3.4-i", ok, {{"cases", rows}});
}

FixtureResult cor34_ii(const Context&) {
  bool ok = true;
  json rows = json::array();
  for (const std::vector<double>& a : {std::vector<double>{1, 1, 1.0 / 3.0}, {2, 0, -1}, {-0.5, 3}, {1}}) {
    const auto r = critical_set_polytype(a, true);
    ok = ok && r.set_kind == CriticalSetKind::Empty && !r.discrepancy_flag;
    rows.push_back({{"coefficients", a}, {"result", r}});
  }
  return verdict("cor-3.4-ii", ok, {{"cases", rows}});
}

FixtureResult cor34_nonzero_roots(const Context&) {
  const std::vector<double> a{0.0, -1.5, 1.0};
  const auto r = critical_set_polytype(a, true);
  const auto space = sequence_lp(2.0);
  std::vector<double> e1(space.dim, 0.0);
  e1[0] = 1.0;
  const auto d = exact_derivative(polytype(a, space), Vector(space, e1));
  const double mult = operator_norm(d);
  const bool confirmed = r.set_kind == CriticalSetKind::OriginPlusNonzeroRoots && r.discrepancy_flag && mult <= 1e-12;
  return {"cor-3.4-i-nonzero-roots", confirmed ? FixtureStatus::DiscrepancyDocumented : FixtureStatus::Fail,
          {{"coefficients", a},
           {"result", r},
           {"critical_point", "(1, 0, 0, ...)"},
           {"max_abs_multiplier", mult}}};
}

MonotoneCertificate monotone_k(const OperatorSpec& op, std::uint64_t seed) {
  return check_order_monotone(op, cone_k(), cone_k(), 200, seed);
}

FixtureResult example36(const Context& ctx) {
  const auto op = power(3, sequence_lp(2.0));
  const auto c = monotone_k(op, ctx.seed);
  const bool repeat = c == monotone_k(op, ctx.seed);
  return verdict("example-3.6", c.order_increasing_sampled && c.derivative_cone_positive && repeat,
                 {{"certificate", c}, {"repeatable", repeat}});
}

FixtureResult example37(const Context& ctx) {
  const auto space = sequence_lp(2.0);
  const auto op = polytype({1.0, 1.0, 1.0 / 3.0}, space);
  const auto c = monotone_k(op, ctx.seed);
  const bool repeat = c == monotone_k(op, ctx.seed);
  const Vector x = random_point(space, ctx.seed, 700);
  const auto d = exact_derivative(op, x);
  double worst = 0.0;
  for (std::size_t k = 0; k < space.dim; ++k) {
    const double e = (x[k] + 1.0) * (x[k] + 1.0);
    worst = std::max(worst, std::abs(d.multipliers()[k] - e) / (1.0 + e));
  }
  return verdict("example-3.7", c.order_increasing_sampled && c.derivative_cone_positive && repeat && worst <= 1e-12,
                 {{"certificate", c}, {"repeatable", repeat}, {"multiplier_vs_square_error", worst}});
}

FixtureResult example37_sign(const Context& ctx) {
  // Stated operator u + u^2 + u^3/3 against the displayed expansion u - u^2 + u^3/3.
  const auto space = sequence_lp(2.0);
  const Vector x = random_point(space, ctx.seed, 701);
  const auto stated = exact_derivative(polytype({1.0, 1.0, 1.0 / 3.0}, space), x);
  const auto displayed = exact_derivative(polytype({1.0, -1.0, 1.0 / 3.0}, space), x);
  double stated_gap = 0.0, displayed_gap = 0.0;
  for (std::size_t k = 0; k < space.dim; ++k) {
    const double claimed = (x[k] + 1.0) * (x[k] + 1.0);
    stated_gap = std::max(stated_gap, std::abs(stated.multipliers()[k] - claimed));
    displayed_gap = std::max(displayed_gap, std::abs(displayed.multipliers()[k] - claimed));
  }
  const bool confirmed = stated_gap <= 1e-12 && displayed_gap > 1e-3;
  return {"sign-example-3.7", confirmed ? FixtureStatus::DiscrepancyDocumented : FixtureStatus::Fail,
          {{"implemented_coefficients", {1.0, 1.0, 1.0 / 3.0}},
           {"displayed_coefficients", {1.0, -1.0, 1.0 / 3.0}},
           {"claimed_multiplier", "(t + 1)^2"},
           {"implemented_max_gap", stated_gap},
           {"displayed_max_gap", displayed_gap}}};
}

std::vector<Vector> random_points(const SpaceDescriptor& space, std::size_t n, std::uint64_t seed, std::uint64_t base) {
  std::vector<Vector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_point(space, seed, base + i));
  return out;
}

FixtureResult example38(const Context& ctx) {
  const auto space = sequence_lp(2.0);
  const Vector theta = zeros(space);
  const auto samples = random_points(space, 200, ctx.seed, 800);
  bool ok = true;
  json rows = json::array();
  for (int m : {1, 2}) {
    const auto op = power(2 * m, space);
    const auto v = absolute_extremum(op, cone_k(), theta, samples, "200 N(0,1) points in l_2, N=64");
    const bool crit = is_generalized_critical(op, theta, kCriticalTol);
    ok = ok && v.status == ExtremumStatus::Minimum && crit;
    rows.push_back({{"op", to_string(op)}, {"verdict", v}, {"critical", crit}});
  }
  return verdict("example-3.8", ok, {{"cases", rows}});
}

FixtureResult example39(const Context&) {
  const auto space = sequence_lp(2.0);
  const auto op = power(3, space);
  const Vector theta = zeros(space);
  const auto v = directional_extremum(op, cone_k(), theta, geometric(space, 0.5), {-0.5, 0.5});
  const bool crit = is_generalized_critical(op, theta, kCriticalTol);
  const bool ok = crit && v.status == ExtremumStatus::NotExtreme && v.witness.t_below == -0.5 && v.witness.t_above == 0.5;
  return verdict("example-3.9", ok, {{"critical", crit}, {"direction", "geom:0.5"}, {"verdict", v}});
}

// ---- function spaces -------------------------------------------------------

FixtureResult prop44(const Context& ctx) {
  const auto roots = critical_set_sine(0.0, 8.0, kCriticalTol);
  const double expect[] = {kPi / 2, 3 * kPi / 2, 5 * kPi / 2};
  bool roots_ok = roots.size() == 3;
  for (std::size_t i = 0; roots_ok && i < 3; ++i) roots_ok = std::abs(roots[i] - expect[i]) <= 1e-12;

  const auto grid = grid_c01();
  const Vector xbar = constant(grid, kPi / 2);
  std::vector<Vector> samples;
  for (std::uint64_t i = 0; i < 40; ++i) samples.push_back(random_uniform(grid, 0.0, kPi, ctx.seed, 900 + i));
  for (double a : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0})
    for (int k = 1; k <= 3; ++k)
      samples.push_back(xbar + sample(grid, [a, k](double t) { return a * std::pow(t, k); }));
  const auto v = absolute_extremum(sine(grid), cone_poly(3), xbar, samples,
                                   "40 uniform[0, pi] grid functions and 18 smooth pi/2 + a t^k");
  const bool ok = roots_ok && v.status != ExtremumStatus::Maximum && v.status != ExtremumStatus::Minimum &&
                  v.witness.sample_incomparable.has_value();
  return verdict("prop-4.4", ok, {{"range", {0.0, 8.0}}, {"critical_constants", roots}, {"verdict", v}});
}

FixtureResult refinement(const Context& ctx) {
  const auto grid = grid_c01();
  std::vector<std::pair<Vector, Vector>> pairs;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Vector x = random_uniform(grid, -1.0, 1.0, ctx.seed, 1000 + i);
    pairs.emplace_back(x, x + random_cone_element(cone_poly(3), grid, ctx.seed, 1100 + i));
    pairs.emplace_back(x, x + random_uniform(grid, -1.0, 1.0, ctx.seed, 1200 + i));
  }
  const bool refines = cone_refinement_check(cone_poly(3), cone_c_plus(), pairs);
  const Vector w = sample(grid, [](double t) { return t - t * t; });
  const bool in_c = in_cone(cone_c_plus(), w).member;
  const auto pn = in_cone(cone_poly(3), w);
  return verdict("eq-4.10", refines && in_c && !pn.member,
                 {{"pairs", pairs.size()},
                  {"refines", refines},
                  {"witness", "t - t^2"},
                  {"witness_in_C+", in_c},
                  {"witness_in_P3+", pn.member},
                  {"witness_diagnostic", pn.diagnostic}});
}

FixtureResult sine_extremum(std::string id, double p_codomain, std::vector<double> constants, ExtremumStatus expect,
                            const Context& ctx) {
  const auto grid = grid_c01();
  const bool to_lp = p_codomain > 0.0;
  const auto op = to_lp ? sine(grid, grid_lp01(p_codomain, grid.dim)) : sine(grid);
  const auto cone = to_lp ? cone_lp_plus() : cone_c_plus();
  std::vector<Vector> samples;
  for (std::uint64_t i = 0; i < 50; ++i) samples.push_back(random_uniform(grid, -10.0, 10.0, ctx.seed, 1300 + i));
  for (std::uint64_t i = 0; i < 50; ++i) samples.push_back(random_point(grid, ctx.seed, 1400 + i));
  bool ok = true;
  json rows = json::array();
  for (double c : constants) {
    const Vector xbar = constant(grid, c);
    const auto v = absolute_extremum(op, cone, xbar, samples, "50 uniform[-10, 10] and 50 N(0,1) grid functions");
    const bool crit = is_generalized_critical(op, xbar, kCriticalTol);
    ok = ok && v.status == expect && crit;
    rows.push_back({{"constant", c}, {"verdict", v}, {"critical", crit}});
  }
  return verdict(std::move(id), ok, {{"op", to_string(op)}, {"cone", shorthand(cone)}, {"cases", rows}});
}

FixtureResult cor25(const Context& ctx) {
  // Every sampled extremum of a differentiable family member must be critical.
  const auto grid = grid_c01();
  std::vector<Vector> gsamples;
  for (std::uint64_t i = 0; i < 60; ++i) gsamples.push_back(random_uniform(grid, -10.0, 10.0, ctx.seed, 1500 + i));
  const auto seq = sequence_lp(2.0);
  const auto ssamples = random_points(seq, 60, ctx.seed, 1600);

  int extremes = 0;
  bool ok = true;
  json bad = json::array();
  for (int k = 0; k <= 140; ++k) {
    const double c = 0.05 * k;
    const Vector x = constant(grid, c);
    const auto v = absolute_extremum(sine(grid), cone_c_plus(), x, gsamples);
    if (v.status != ExtremumStatus::Maximum && v.status != ExtremumStatus::Minimum) continue;
    ++extremes;
    if (!is_generalized_critical(sine(grid), x, kCriticalTol)) {
      ok = false;
      bad.push_back({{"op", "sin"}, {"constant", c}});
    }
  }
  for (double c : {kPi / 2, 3 * kPi / 2, 5 * kPi / 2}) {
    const Vector x = constant(grid, c);
    const auto v = absolute_extremum(sine(grid), cone_c_plus(), x, gsamples);
    if (v.status != ExtremumStatus::Maximum && v.status != ExtremumStatus::Minimum) continue;
    ++extremes;
    if (!is_generalized_critical(sine(grid), x, kCriticalTol)) {
      ok = false;
      bad.push_back({{"op", "sin"}, {"constant", c}});
    }
  }
  for (int m : {2, 4}) {
    const auto op = power(m, seq);
    for (const Vector& x : {zeros(seq), geometric(seq, 0.5), scale(-1.0, geometric(seq, 0.5))}) {
      const auto v = absolute_extremum(op, cone_k(), x, ssamples);
      if (v.status != ExtremumStatus::Maximum && v.status != ExtremumStatus::Minimum) continue;
      ++extremes;
      if (!is_generalized_critical(op, x, kCriticalTol)) {
        ok = false;
        bad.push_back({{"op", to_string(op)}, {"point", coords_of(x)}});
      }
    }
  }
  ok = ok && extremes >= 5;
  return verdict("cor-2.5", ok, {{"extremes_found", extremes}, {"non_critical_extremes", bad}});
}

FixtureResult scalar_reduction(const Context& ctx) {
  const auto line = sequence_lp(2.0, 1);
  std::vector<Vector> samples;
  for (int k = -30; k <= 30; ++k)
    if (k != 0) samples.emplace_back(line, std::vector<double>{0.1 * k});
  const Vector zero = zeros(line);
  const Vector one(line, {1.0});

  const auto sq = power(2, line);
  const auto sq_v = absolute_extremum(sq, cone_k(), zero, samples, "60 points of [-3, 3]");
  const auto cube = power(3, line);
  const auto cube_v = directional_extremum(cube, cone_k(), zero, one, {-1.0, 1.0});
  const Vector half_pi(line, {kPi / 2});
  std::vector<Vector> sin_samples;
  for (const auto& s : samples) sin_samples.push_back(half_pi + s);
  const auto sin_v = absolute_extremum(sine(line), cone_k(), half_pi, sin_samples, "pi/2 + 60 points of [-3, 3]");

  const bool sq_crit = is_generalized_critical(sq, zero, kCriticalTol);
  const bool cube_crit = is_generalized_critical(cube, zero, kCriticalTol);
  const bool sin_crit = is_generalized_critical(sine(line), half_pi, kCriticalTol);
  const bool ok = sq_v.status == ExtremumStatus::Minimum && sq_crit && cube_crit &&
                  cube_v.status == ExtremumStatus::NotExtreme && sin_v.status == ExtremumStatus::Maximum && sin_crit;
  (void)ctx;
  return verdict("cor-2.7-2.8", ok,
                 {{"square_at_0", {{"verdict", sq_v}, {"critical", sq_crit}}},
                  {"cube_at_0", {{"verdict", cube_v}, {"critical", cube_crit}}},
                  {"sin_at_half_pi", {{"verdict", sin_v}, {"critical", sin_crit}}}});
}

FixtureResult monotone_implication(const Context& ctx) {
  const auto seq = sequence_lp(2.0);
  const auto grid = grid_c01();
  struct Case {
    OperatorSpec op;
    ConeDescriptor cone;
  };
  const std::vector<Case> cases{{power(1, seq), cone_k()},
                                {power(2, seq), cone_k()},
                                {power(3, seq), cone_k()},
                                {polytype({1.0, 1.0, 1.0 / 3.0}, seq), cone_k()},
                                {sine(seq), cone_k()},
                                {power(3, grid), cone_c_plus()},
                                {sine(grid), cone_c_plus()}};
  bool ok = true;
  bool square_refuted = false;
  json rows = json::array();
  for (const auto& c : cases) {
    const auto cert = check_order_monotone(c.op, c.cone, c.cone, 200, ctx.seed);
    if (cert.order_increasing_sampled && !cert.derivative_cone_positive) ok = false;
    if (c.op.kind() == OpKind::Power && c.op.exponent() == 2 && cert.counterexample) {
      const auto& x = cert.counterexample->first;
      square_refuted = !cert.order_increasing_sampled && std::any_of(x.begin(), x.end(), [](double t) { return t < 0; });
    }
    rows.push_back({{"op", to_string(c.op)}, {"cone", shorthand(c.cone)}, {"certificate", cert}});
  }
  return verdict("thm-2.9", ok && square_refuted, {{"cases", rows}, {"square_refuted", square_refuted}});
}

struct Fixture {
  std::string id;
  Body run;
};

std::vector<Fixture> registry() {
  const auto c01 = grid_c01();
  const SpaceDescriptor lp01 = grid_lp01(2.0);
  std::vector<Fixture> f;
  f.push_back({"eq-1.6-1.7", linearity});
  f.push_back({"eq-1.8", chain_rule});
  f.push_back({"thm-2.9", monotone_implication});
  f.push_back({"cor-2.5", cor25});
  f.push_back({"cor-2.7-2.8", scalar_reduction});
  f.push_back({"thm-3.1", [](const Context& c) { return formula_fixture("thm-3.1", lp_spaces(), {}, OpKind::Power, c); }});
  f.push_back({"thm-3.1-bound", thm31_bound});
  f.push_back({"thm-3.2", [](const Context& c) { return formula_fixture("thm-3.2", lp_spaces(), {}, OpKind::PolyType, c); }});
  f.push_back({"cor-3.4-i", cor34_i});
  f.push_back({"cor-3.4-ii", cor34_ii});
  f.push_back({"cor-3.4-i-nonzero-roots", cor34_nonzero_roots});
  f.push_back({"example-3.6", example36});
  f.push_back({"example-3.7", example37});
  f.push_back({"sign-example-3.7", example37_sign});
  f.push_back({"example-3.8", example38});
  f.push_back({"example-3.9", example39});
  f.push_back({"thm-4.1", [c01](const Context& c) { return formula_fixture("thm-4.1", {c01}, {}, OpKind::Power, c); }});
  f.push_back({"cor-4.2", [c01](const Context& c) { return formula_fixture("cor-4.2", {c01}, {}, OpKind::PolyType, c); }});
  f.push_back({"thm-4.3", [c01](const Context& c) { return formula_fixture("thm-4.3", {c01}, {}, OpKind::Sine, c); }});
  f.push_back({"prop-4.4", prop44});
  f.push_back({"eq-4.10", refinement});
  f.push_back({"prop-4.5-ii", [](const Context& c) {
                 return sine_extremum("prop-4.5-ii", 0.0, {kPi / 2, 5 * kPi / 2}, ExtremumStatus::Maximum, c);
               }});
  f.push_back({"prop-4.5-iii", [](const Context& c) {
                 return sine_extremum("prop-4.5-iii", 0.0, {3 * kPi / 2}, ExtremumStatus::Minimum, c);
               }});
  f.push_back({"thm-5.1", [c01, lp01](const Context& c) { return formula_fixture("thm-5.1", {c01}, lp01, OpKind::Power, c); }});
  f.push_back({"cor-5.2", [c01, lp01](const Context& c) { return formula_fixture("cor-5.2", {c01}, lp01, OpKind::PolyType, c); }});
  f.push_back({"thm-5.3", [c01, lp01](const Context& c) { return formula_fixture("thm-5.3", {c01}, lp01, OpKind::Sine, c); }});
  f.push_back({"prop-5.4-ii", [](const Context& c) {
                 return sine_extremum("prop-5.4-ii", 2.0, {kPi / 2, 5 * kPi / 2}, ExtremumStatus::Maximum, c);
               }});
  f.push_back({"prop-5.4-iii", [](const Context& c) {
                 return sine_extremum("prop-5.4-iii", 2.0, {3 * kPi / 2}, ExtremumStatus::Minimum, c);
               }});
  return f;
}

}  // namespace

std::string to_string(FixtureStatus s) {
  switch (s) {
    case FixtureStatus::Pass: return "Pass";
    case FixtureStatus::Fail: return "Fail";
    case FixtureStatus::DiscrepancyDocumented: return "DiscrepancyDocumented";
  }
  return "?";
}

NLOHMANN_JSON_SERIALIZE_ENUM(FixtureStatus, {{FixtureStatus::Pass, "Pass"},
                                             {FixtureStatus::Fail, "Fail"},
                                             {FixtureStatus::DiscrepancyDocumented, "DiscrepancyDocumented"}})

void to_json(json& j, const FixtureResult& r) {
  j = json{{"fixture_id", r.fixture_id}, {"status", r.status}, {"details", r.details}};
}

void from_json(const json& j, FixtureResult& r) {
  j.at("fixture_id").get_to(r.fixture_id);
  j.at("status").get_to(r.status);
  r.details = j.at("details");
}

std::vector<std::string> fixture_ids() {
  std::vector<std::string> ids;
  for (const auto& f : registry()) ids.push_back(f.id);
  return ids;
}

std::vector<FixtureResult> cmd_verify_paper(const std::optional<std::string>& filter, std::uint64_t seed) {
  Context ctx{seed, DiffConfig{}};
  ctx.diff.rng_seed = seed;
  std::vector<FixtureResult> out;
  for (const auto& f : registry()) {
    if (filter && !filter->empty() && fnmatch(filter->c_str(), f.id.c_str(), 0) != 0) continue;
    try {
      out.push_back(f.run(ctx));
    } catch (const Error& e) {
      out.push_back({f.id, FixtureStatus::Fail, {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}});
    }
  }
  if (out.empty()) throw Error(ErrorKind::UsageError, "no fixture matches '" + filter.value_or("") + "'");
  return out;
}

std::vector<OperatorSpec> family_members(const SpaceDescriptor& domain, std::optional<SpaceDescriptor> codomain,
                                         std::uint64_t seed) {
  std::vector<OperatorSpec> ops;
  for (int m : {1, 2, 3, 5}) ops.push_back(power(m, domain, codomain));
  for (std::uint64_t k = 0; k < 3; ++k)
    ops.push_back(polytype(coords_of(random_point(sequence_lp(2.0, 3), seed, 10 + k)), domain, codomain));
  ops.push_back(sine(domain, codomain));
  return ops;
}

double oracle_sweep_error(const OperatorSpec& op, int pairs, std::uint64_t seed, const DiffConfig& cfg) {
  const auto n = static_cast<std::size_t>(pairs);
  std::vector<double> err(n, 0.0);
  kernels::parallel::for_each_index(n, [&](std::size_t i) {
    const Vector x = random_point(op.domain(), seed, 20000 + 2 * i);
    const Vector v = random_unit_direction(op.domain(), seed, 20000 + 2 * i + 1);
    const Vector exact = apply_map(exact_derivative(op, x), v);
    const auto fd = gateaux_fd(op, x, v, cfg);
    err[i] = norm(fd.value - exact) / (1.0 + norm(exact));
  });
  return err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
}

}  // namespace ordiff::cli
