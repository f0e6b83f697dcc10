#include <cmath>
#include <stdexcept>
#include <vector>

#include "ordiff/kernels.hpp"
#include "ordiff/ordopt.hpp"
#include "support.hpp"

using namespace ordiff;
namespace k = ordiff::kernels;

namespace {

std::vector<double> data(std::size_t n) {
  const auto v = random_point(sequence_lp(2.0, n), 1, 0);
  return {v.coords().begin(), v.coords().end()};
}

}  // namespace

TEST_CASE("elementwise kernels agree bit-for-bit") {
  for (std::size_t n : {std::size_t{7}, k::kParallelMin - 1, k::kParallelMin, 3 * k::kParallelMin + 5}) {
    const auto x = data(n);
    std::vector<double> a(n), b(n);
    auto f = [](double t) { return std::sin(t) * t * t; };
    k::serial::transform(x, a, f);
    k::parallel::transform(x, b, f);
    CHECK(a == b);
    auto g = [](double s, double t) { return s * t - 0.5 * s; };
    k::serial::transform2(x, a, a, g);
    k::parallel::transform2(x, b, b, g);
    CHECK(a == b);
    CHECK(k::serial::abs_max(x) == k::parallel::abs_max(x));
    CHECK(k::serial::all_finite(x) == k::parallel::all_finite(x));
  }
}

TEST_CASE("reductions agree with the serial reference") {
  for (std::size_t n : {std::size_t{5}, k::kChunk, k::kParallelMin + 1, std::size_t{50000}}) {
    const auto x = data(n);
    for (bool trap : {false, true})
      for (double p : {1.5, 2.0, 3.0}) {
        const double s = k::serial::pow_sum(x, p, 2.0, trap);
        const double q = k::parallel::pow_sum(x, p, 2.0, trap);
        CHECK(std::abs(s - q) <= 1e-12 * s);
        if (n <= k::kChunk) CHECK(s == q);
      }
  }
}

TEST_CASE("parallel reduction does not depend on the thread count") {
  const auto x = data(100000);
  const double ref = k::parallel::pow_sum(x, 2.5, 1.0, true);
  for (int i = 0; i < 5; ++i) CHECK(k::parallel::pow_sum(x, 2.5, 1.0, true) == ref);
}

TEST_CASE("for_each_index visits every index and rethrows the first failure by index") {
  std::vector<int> hit(10000, 0);
  k::parallel::for_each_index(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  try {
    k::parallel::for_each_index(5000, [](std::size_t i) {
      if (i % 1000 == 999) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "999");
  }
}

TEST_CASE("all_finite detects non-finite values") {
  std::vector<double> x(10000, 1.0);
  x[7777] = std::nan("");
  CHECK_FALSE(k::parallel::all_finite(x));
  CHECK_FALSE(k::serial::all_finite(x));
}
