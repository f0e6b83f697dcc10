#include "ordiff/diffcheck.hpp"
#include "ordiff/ordopt.hpp"
#include "support.hpp"

using namespace ordiff;
using support::kind_of;
using support::seq;

TEST_CASE("gateaux_fd examples") {
  const auto s = sequence_lp(2.0, 2);
  const auto e = gateaux_fd(power(2, s), seq({1, 2}), seq({1, 0}), {});
  CHECK(std::abs(e.value[0] - 2.0) <= 1e-9);
  CHECK(std::abs(e.value[1]) <= 1e-9);
  CHECK(e.agreed);

  const auto g = grid_c01();
  const auto sv = gateaux_fd(sine(g), zeros(g), constant(g, 1.0), {});
  const double h = sv.chosen_h;
  const double oracle = (std::sin(h) - std::sin(-h)) / (2 * h);
  for (double v : sv.value.coords()) CHECK(v == doctest::Approx(oracle).epsilon(1e-15));
}

TEST_CASE("gateaux_fd is homogeneous in the direction") {
  const auto s = sequence_lp(3.0, 16);
  const auto op = compose(sine(s), power(3, s));
  const auto x = random_point(s, 2, 0);
  const auto v = random_unit_direction(s, 2, 1);
  const auto a = gateaux_fd(op, x, v, {});
  const auto b = gateaux_fd(op, x, scale(2.5, v), {});
  CHECK(norm(b.value - scale(2.5, a.value)) <= 1e-6 * (1 + norm(b.value)));
}

TEST_CASE("gateaux_fd errors") {
  const auto s = sequence_lp(2.0, 2);
  CHECK(kind_of([&] { gateaux_fd(power(2, s), seq({1, 2}), seq({0, 0}), {}); }) == ErrorKind::ZeroDirection);
  CHECK(kind_of([&] { gateaux_fd(power(5, s), seq({1e80, 1}), seq({1, 0}), {}); }) == ErrorKind::NumericalBreakdown);
  DiffConfig bad;
  bad.h_values = {1e-3, 1e-2};
  CHECK(kind_of([&] { gateaux_fd(power(2, s), seq({1, 2}), seq({1, 0}), bad); }) == ErrorKind::InvalidConfig);
  bad = {};
  bad.slope_scales = {};
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidConfig);
  bad = {};
  bad.num_directions = 0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("forward scheme also tracks the derivative") {
  DiffConfig cfg;
  cfg.scheme = FdScheme::Forward;
  cfg.h_values = {1e-4, 1e-5, 1e-6, 1e-7};
  const auto s = sequence_lp(2.0, 4);
  const auto e = gateaux_fd(power(3, s), seq({1, 2, 3, 4}), seq({1, 1, 1, 1}), cfg);
  CHECK(std::abs(e.value[3] - 48.0) < 1e-4);
}

TEST_CASE("verify_frechet examples") {
  const auto s = sequence_lp(2.0);
  const auto w = geometric(s, 0.5);
  const auto cube = power(3, s);
  const auto rep = verify_frechet(cube, w, {}, exact_derivative(cube, w));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.remainder_slope == doctest::Approx(1.0).epsilon(0.05));
  REQUIRE(rep.bound_satisfied.has_value());
  CHECK(*rep.bound_satisfied);

  const auto lin = polytype({2.0}, s);
  const auto lrep = verify_frechet(lin, w, {}, exact_derivative(lin, w));
  CHECK(lrep.verdict == Verdict::Pass);
  CHECK(lrep.exact_zero_remainder);

  const auto bad = verify_frechet(cube, w, {}, perturb_map(exact_derivative(cube, w), 0.1));
  CHECK(bad.verdict == Verdict::Fail);
  CHECK(std::abs(bad.remainder_slope) < 0.1);
  CHECK(bad.remainder_ratios.back() == doctest::Approx(0.1).epsilon(0.01));
}

TEST_CASE("verify_frechet is deterministic and checks spaces") {
  const auto g = grid_c01();
  const auto op = sine(g, grid_lp01(2.0, g.dim));
  const auto x = random_point(g, 3, 0);
  const auto d = exact_derivative(op, x);
  const auto a = verify_frechet(op, x, {}, d);
  CHECK(a.verdict == Verdict::Pass);
  CHECK_FALSE(a.bound_satisfied.has_value());
  CHECK(a == verify_frechet(op, x, {}, d));
  DiffConfig other;
  other.rng_seed = 8;
  CHECK(verify_frechet(op, x, other, d).seed == 8);
  CHECK(kind_of([&] { verify_frechet(op, x, {}, exact_derivative(sine(g), x)); }) == ErrorKind::SpaceMismatch);
}

TEST_CASE("remainder bound") {
  const auto s = sequence_lp(2.0);
  const auto w = geometric(s, 0.5);
  CHECK(check_remainder_bound(power(2, s), w, scale(0.1, w)));
  CHECK(remainder_bound_sides(power(1, s), w, scale(0.1, w)).lhs <= 1e-14);
  const auto u = scale(0.2, random_unit_direction(s, 1, 0));
  CHECK(check_remainder_bound(power(5, s), zeros(s), u));
  // left side at zero base is ||u^5|| / ||u||
  double acc = 0.0;
  for (double t : u.coords()) acc += std::pow(t, 10);
  CHECK(remainder_bound_sides(power(5, s), zeros(s), u).lhs == doctest::Approx(std::sqrt(acc) / norm(u)));

  CHECK(kind_of([&] { check_remainder_bound(power(2, s), w, scale(2.0, w)); }) == ErrorKind::InvalidScale);
  CHECK(kind_of([&] { check_remainder_bound(power(2, s), w, zeros(s)); }) == ErrorKind::InvalidScale);
  CHECK(kind_of([&] { check_remainder_bound(sine(s), w, scale(0.1, w)); }) == ErrorKind::InvalidOperator);
}
