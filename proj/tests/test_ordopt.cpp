#include <numbers>

#include "ordiff/ordopt.hpp"
#include "support.hpp"

using namespace ordiff;
using support::kind_of;
using support::seq;

namespace {

constexpr double kPi = std::numbers::pi;

double q_at(const std::vector<double>& a, double t) {
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + static_cast<double>(i + 1) * a[i];
  return acc;
}

}  // namespace

TEST_CASE("generalized critical points") {
  const auto s = sequence_lp(2.0);
  CHECK(is_generalized_critical(power(2, s), zeros(s), 1e-9));
  CHECK(is_generalized_critical(power(4, s), zeros(s), 1e-9));
  CHECK(is_generalized_critical(power(3, s), zeros(s), 1e-9));
  CHECK_FALSE(is_generalized_critical(polytype({1.0}, s), geometric(s, 0.5), 1e-9));
}

TEST_CASE("critical set of polynomial-type operators") {
  auto r = critical_set_polytype({0, 0, 1}, true);
  CHECK(r.root_set == std::vector<double>{0.0});
  CHECK(r.set_kind == CriticalSetKind::OnlyOrigin);
  CHECK_FALSE(r.discrepancy_flag);

  r = critical_set_polytype({1, 1, 1.0 / 3.0}, true);
  REQUIRE(r.root_set.size() == 1);
  CHECK(r.root_set[0] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(r.set_kind == CriticalSetKind::Empty);
  CHECK(r.published_claim == CriticalSetKind::Empty);
  CHECK_FALSE(r.discrepancy_flag);

  r = critical_set_polytype({0, -1.5, 1}, true);
  REQUIRE(r.root_set.size() == 2);
  CHECK(r.root_set[0] == doctest::Approx(0.0));
  CHECK(r.root_set[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.set_kind == CriticalSetKind::OriginPlusNonzeroRoots);
  CHECK(r.published_claim == CriticalSetKind::OnlyOrigin);
  CHECK(r.discrepancy_flag);

  // 0 not a root, but nonzero roots exist: empty in l_p, nonempty in a truncation
  r = critical_set_polytype({-1, 0, 1.0 / 3.0}, false);
  CHECK(r.set_kind == CriticalSetKind::Empty);
  CHECK(r.truncated_kind == CriticalSetKind::NonzeroRootsOnly);
  CHECK_FALSE(r.published_claim.has_value());
  CHECK_FALSE(r.discrepancy_flag);

  CHECK(kind_of([] { critical_set_polytype({0, 0}, true); }) == ErrorKind::DegenerateOperator);
}

TEST_CASE("root finder agrees with a brute-force scan") {
  const double step = 1e-4;
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const auto c = random_point(sequence_lp(2.0, m), 31, trial);
    std::vector<double> a(c.coords().begin(), c.coords().end());
    if (m > 1 && trial % 7 == 0) a[0] = 0.0;
    const auto r = critical_set_polytype(a, false);
    CAPTURE(trial);
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale += std::abs(static_cast<double>(i + 1) * a[i]);
    for (double t : r.root_set) {
      CHECK(std::abs(q_at(a, t)) <= 1e-8 * std::max(1.0, scale * std::pow(std::max(1.0, std::abs(t)), 4)));
      CHECK(std::abs(q_at(a, t)) <= std::abs(q_at(a, t + step)));
      CHECK(std::abs(q_at(a, t)) <= std::abs(q_at(a, t - step)));
    }
    double prev = q_at(a, -10.0);
    for (double t = -10.0 + step; t <= 10.0; t += step) {
      const double cur = q_at(a, t);
      if ((prev < 0) != (cur < 0) && prev != 0.0 && cur != 0.0) {
        bool near = false;
        for (double root : r.root_set) near = near || std::abs(root - (t - step / 2)) <= step;
        CHECK(near);
      }
      prev = cur;
    }
  }
}

TEST_CASE("double roots survive") {
  const auto r = critical_set_polytype({0.0, 0.0, 1.0 / 3.0 * 3.0 / 3.0, -0.5, 0.2}, false);  // q = t^2 (1 - 2t + t^2) = t^2 (t-1)^2
  REQUIRE(r.root_set.size() == 2);
  CHECK(r.root_set[0] == doctest::Approx(0.0));
  CHECK(r.root_set[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("directional extremum") {
  const auto s = sequence_lp(2.0);
  const auto w = geometric(s, 0.5);
  const auto sq = directional_extremum(power(2, s), cone_k(), zeros(s), w, {-1, 1});
  CHECK(sq.status == ExtremumStatus::Minimum);
  CHECK(sq.scope == ExtremumScope::Directional);
  CHECK(sq.witness.empty());

  const auto cube = directional_extremum(power(3, s), cone_k(), zeros(s), w, {-0.5, 0.5});
  CHECK(cube.status == ExtremumStatus::NotExtreme);
  CHECK(cube.witness.t_below == -0.5);
  CHECK(cube.witness.t_above == 0.5);

  CHECK(directional_extremum(power(3, s), cone_k(), zeros(s), w, {0, 0}).status == ExtremumStatus::Inconclusive);
  CHECK(kind_of([&] { directional_extremum(power(3, s), cone_k(), zeros(s), zeros(s), {-1, 1}); }) ==
        ErrorKind::ZeroDirection);
  CHECK(kind_of([&] { directional_extremum(power(3, s), cone_c_plus(), zeros(s), w, {-1, 1}); }) ==
        ErrorKind::SpaceMismatch);

  const auto ts = directional_samples({-1, 1}, kDefaultNumT);
  CHECK(std::find(ts.begin(), ts.end(), -1.0) != ts.end());
  CHECK(std::find(ts.begin(), ts.end(), 1e-3) != ts.end());
  CHECK(std::find(ts.begin(), ts.end(), 0.0) == ts.end());
}

TEST_CASE("absolute extremum of sine") {
  const auto g = grid_c01();
  std::vector<Vector> samples;
  for (std::uint64_t i = 0; i < 100; ++i) samples.push_back(random_uniform(g, -10, 10, 7, i));
  CHECK(absolute_extremum(sine(g), cone_c_plus(), constant(g, kPi / 2), samples).status == ExtremumStatus::Maximum);
  CHECK(absolute_extremum(sine(g), cone_c_plus(), constant(g, 3 * kPi / 2), samples).status ==
        ExtremumStatus::Minimum);
  const auto not_ext = absolute_extremum(sine(g), cone_c_plus(), constant(g, 1.0), samples);
  CHECK(not_ext.status == ExtremumStatus::NotExtreme);
  CHECK_FALSE(not_ext.witness.empty());

  std::vector<Vector> smooth{constant(g, kPi / 2) + sample(g, [](double t) { return 0.3 * t; })};
  const auto pn = absolute_extremum(sine(g), cone_poly(3), constant(g, kPi / 2), smooth, "one ramp");
  CHECK(pn.status == ExtremumStatus::NotExtreme);
  CHECK(pn.witness.sample_incomparable == std::size_t{0});
  CHECK(pn.sample_description == "one ramp");
  CHECK(absolute_extremum(sine(g), cone_c_plus(), constant(g, kPi / 2), {}).status == ExtremumStatus::Inconclusive);
}

TEST_CASE("critical constants of sine") {
  const auto a = critical_set_sine(-2, 2, 1e-9);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(critical_set_sine(0, 1, 1e-9).empty());
  const auto b = critical_set_sine(0, 8, 1e-9);
  REQUIRE(b.size() == 3);
  CHECK(std::abs(b[2] - 5 * kPi / 2) <= 1e-12);
  CHECK(critical_set_sine(0, 7, 1e-9).size() == 2);  // 5 pi / 2 > 7
}

TEST_CASE("order monotonicity certificates") {
  const auto s = sequence_lp(2.0);
  const auto cube = check_order_monotone(power(3, s), cone_k(), cone_k(), 200, 7);
  CHECK(cube.order_increasing_sampled);
  CHECK(cube.derivative_cone_positive);
  CHECK_FALSE(cube.counterexample.has_value());
  CHECK(cube == check_order_monotone(power(3, s), cone_k(), cone_k(), 200, 7));

  const auto poly = check_order_monotone(polytype({1, 1, 1.0 / 3.0}, s), cone_k(), cone_k(), 200, 7);
  CHECK(poly.order_increasing_sampled);
  CHECK(poly.derivative_cone_positive);

  const auto sq = check_order_monotone(power(2, s), cone_k(), cone_k(), 200, 7);
  CHECK_FALSE(sq.order_increasing_sampled);
  REQUIRE(sq.counterexample.has_value());
  const auto& x = sq.counterexample->first;
  CHECK(std::any_of(x.begin(), x.end(), [](double t) { return t < 0; }));

  CHECK(kind_of([&] { check_order_monotone(power(3, s), cone_c_plus(), cone_k(), 10, 7); }) == ErrorKind::SpaceMismatch);
  CHECK(kind_of([&] { check_order_monotone(power(3, s), cone_k(), cone_k(), 0, 7); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("scalar reduction") {
  const auto line = sequence_lp(2.0, 1);
  const Vector one(line, {1.0});
  CHECK(directional_extremum(power(2, line), cone_k(), zeros(line), one, {-1, 1}).status == ExtremumStatus::Minimum);
  CHECK(directional_extremum(power(3, line), cone_k(), zeros(line), one, {-1, 1}).status == ExtremumStatus::NotExtreme);
  const Vector top(line, {kPi / 2});
  CHECK(directional_extremum(sine(line), cone_k(), top, one, {-1, 1}).status == ExtremumStatus::Maximum);
  CHECK(is_generalized_critical(sine(line), top, 1e-9));
  CHECK_FALSE(is_generalized_critical(sine(line), zeros(line), 1e-9));
}

TEST_CASE("random generators are reproducible") {
  const auto g = grid_c01();
  CHECK(random_point(g, 1, 2) == random_point(g, 1, 2));
  CHECK_FALSE(random_point(g, 1, 2) == random_point(g, 1, 3));
  const auto u = random_uniform(g, -1, 1, 1, 0);
  for (double v : u.coords()) CHECK((v >= -1 && v <= 1));
}
