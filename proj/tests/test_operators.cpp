#include <numbers>

#include "ordiff/operators.hpp"
#include "ordiff/ordopt.hpp"
#include "ordiff/cones.hpp"
#include "support.hpp"

using namespace ordiff;
using support::close;
using support::kind_of;
using support::seq;

namespace {

std::vector<double> mult(const MultiplierMap& d) { return {d.multipliers().begin(), d.multipliers().end()}; }

}  // namespace

TEST_CASE("apply") {
  const auto s = sequence_lp(2.0, 3);
  CHECK(apply(power(3, s), seq({1, 0.5, 0.25})) == seq({1, 0.125, 1.0 / 64}));
  const auto x = seq({0.3, -2, 7});
  CHECK(apply(polytype({1.0}, s), x) == x);
  const auto g = grid_c01();
  const auto y = apply(sine(g), constant(g, std::numbers::pi / 2));
  for (double v : y.coords()) CHECK(v == 1.0);
  CHECK(apply(sum(power(2, s), scaled(-1.5, power(3, s))), seq({2, 1, 0})) == seq({4 - 12, 1 - 1.5, 0}));
  CHECK(apply(compose(power(2, s), sine(s)), seq({0, 0, 0})) == seq({0, 0, 0}));
}

TEST_CASE("exact derivative examples") {
  const auto s = sequence_lp(2.0, 3);
  CHECK(mult(exact_derivative(power(3, s), seq({1, 0, 2}))) == std::vector<double>{3, 0, 12});
  CHECK(mult(exact_derivative(power(1, s), seq({5, -1, 2}))) == std::vector<double>{1, 1, 1});
  const auto x = seq({0.4, -1.7, 3.0});
  const auto d = exact_derivative(polytype({1.0, 1.0, 1.0 / 3.0}, s), x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(close(d.multipliers()[i], (x[i] + 1) * (x[i] + 1)));
  const auto g = grid_c01();
  const auto ds = exact_derivative(sine(g), zeros(g));
  for (double m : ds.multipliers()) CHECK(m == 1.0);
  // a single linear coefficient gives a constant multiple of the identity
  const auto dl = exact_derivative(polytype({-2.5}, s), x);
  for (double m : dl.multipliers()) CHECK(m == -2.5);
}

TEST_CASE("apply_map and operator_norm") {
  const auto s = sequence_lp(2.0, 3);
  const MultiplierMap d(s, s, {3, 0, 12});
  CHECK(apply_map(d, seq({1, 1, 1})) == seq({3, 0, 12}));
  CHECK(apply_map(MultiplierMap(s, s, {0, 0, 0}), seq({4, -2, 9})) == seq({0, 0, 0}));
  CHECK(apply_map(identity_map(s), seq({4, -2, 9})) == seq({4, -2, 9}));
  CHECK(operator_norm(MultiplierMap(s, s, {3, -5, 1})) == 5.0);
  CHECK(operator_norm(MultiplierMap(s, s, {0, 0, 0})) == 0.0);
  CHECK(operator_norm(identity_map(s)) == 1.0);
  CHECK(kind_of([&] { apply_map(d, zeros(sequence_lp(2.0, 4))); }) == ErrorKind::SpaceMismatch);
}

TEST_CASE("construction errors") {
  const auto s = sequence_lp(2.0, 3);
  CHECK(kind_of([&] { power(0, s); }) == ErrorKind::InvalidOperator);
  CHECK(kind_of([&] { polytype({}, s); }) == ErrorKind::InvalidOperator);
  CHECK(kind_of([&] { polytype({0.0, 0.0}, s); }) == ErrorKind::DegenerateOperator);
  CHECK(kind_of([&] { sum(power(2, s), power(2, sequence_lp(3.0, 3))); }) == ErrorKind::SpaceMismatch);
  CHECK(kind_of([&] { apply(power(2, s), zeros(sequence_lp(2.0, 4))); }) == ErrorKind::SpaceMismatch);
  CHECK(kind_of([&] { exact_derivative(sine(s), zeros(grid_c01())); }) == ErrorKind::SpaceMismatch);
  // l_p cannot be relabelled into a function space
  CHECK(kind_of([&] { sine(s, grid_lp01(2.0, 3)); }) == ErrorKind::SpaceMismatch);
  const auto g = grid_c01(9);
  const auto to_lp = sine(g, grid_lp01(2.0, 9));
  CHECK(kind_of([&] { compose(sine(g), to_lp); }) == ErrorKind::SpaceMismatch);
  CHECK_NOTHROW(compose(to_lp, power(2, g)));
}

TEST_CASE("overflow surfaces as numerical breakdown") {
  const auto s = sequence_lp(2.0, 2);
  CHECK(kind_of([&] { apply(power(5, s), seq({1e100, 1})); }) == ErrorKind::NumericalBreakdown);
}

TEST_CASE("mini-language rendering") {
  const auto s = sequence_lp(2.0, 3);
  CHECK(to_string(compose(power(2, s), sine(s))) == "compose(power:2,sin)");
  CHECK(to_string(sum(power(3, s), scaled(-1.5, power(2, s)))) == "sum(power:3,scale:-1.5(power:2))");
}

TEST_CASE("linearity and chain rule on random points") {
  const auto s = sequence_lp(2.0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto x = random_point(s, 3, i);
    const double a = 0.7 - 0.13 * static_cast<double>(i), b = -1.1 + 0.2 * static_cast<double>(i);
    const auto A = power(3, s);
    const auto B = sine(s);
    const auto lhs = exact_derivative(sum(scaled(a, A), scaled(b, B)), x);
    const auto dA = exact_derivative(A, x);
    const auto dB = exact_derivative(B, x);
    const auto chain = exact_derivative(compose(power(4, s), sine(s)), x);
    const auto dSin = exact_derivative(sine(s), x);
    const auto dPowAtSin = exact_derivative(power(4, s), apply(sine(s), x));
    for (std::size_t k = 0; k < s.dim; ++k) {
      const double expect = a * dA.multipliers()[k] + b * dB.multipliers()[k];
      CHECK(close(lhs.multipliers()[k], expect));
      CHECK(close(chain.multipliers()[k], dPowAtSin.multipliers()[k] * dSin.multipliers()[k]));
    }
  }
}

TEST_CASE("multiplier maps commute and associate") {
  const auto s = sequence_lp(2.0, 16);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto mk = [&](std::uint64_t k) {
      const auto v = random_point(s, 5, 3 * i + k);
      return MultiplierMap(s, s, {v.coords().begin(), v.coords().end()});
    };
    const auto A = mk(0), B = mk(1), C = mk(2);
    CHECK(mult(compose_maps(A, B)) == mult(compose_maps(B, A)));
    const auto l = mult(compose_maps(compose_maps(A, B), C));
    const auto r = mult(compose_maps(A, compose_maps(B, C)));
    for (std::size_t k = 0; k < l.size(); ++k) CHECK(close(l[k], r[k]));
  }
}

TEST_CASE("even powers land in K") {
  const auto s = sequence_lp(2.0);
  for (int m : {1, 2, 3})
    for (std::uint64_t i = 0; i < 20; ++i)
      CHECK(in_cone(cone_k(), apply(power(2 * m, s), random_point(s, 9, i))).member);
}

TEST_CASE("scalar helpers") {
  CHECK(int_power(2.0, 10) == 1024.0);
  CHECK(int_power(-3.0, 3) == -27.0);
  CHECK(int_power(0.0, 0) == 1.0);
  const std::vector<double> a{1.0, 1.0, 1.0 / 3.0};
  CHECK(close(poly_value(a, 2.0), 2 + 4 + 8.0 / 3));
  CHECK(close(poly_slope(a, 2.0), 9.0));
}
