#pragma once

// Coordinatewise kernels. Every operator in this library acts pointwise on a
// coordinate array, so all heavy lifting funnels through the loops below.
//
// `parallel::` is what the library calls. `serial::` is the plain reference
// kept for tests and the benchmark. Elementwise kernels agree bit-for-bit;
// reductions in `parallel::` sum fixed-size chunks in index order, so their
// result does not depend on the thread count (but may differ from the serial
// left-to-right sum in the last bits once n exceeds one chunk).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace ordiff::kernels {

/// Below this length the parallel kernels run on the calling thread.
inline constexpr std::size_t kParallelMin = 4096;
/// Reduction chunk length; fixed so the summation order is reproducible.
inline constexpr std::size_t kChunk = 1024;

/// Trapezoid weight of grid index i out of n (ends get one half).
inline double trapezoid_weight(std::size_t i, std::size_t n) noexcept {
  return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

namespace serial {

template <class F>
void transform(std::span<const double> in, std::span<double> out, F f) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
}

template <class F>
void transform2(std::span<const double> a, std::span<const double> b, std::span<double> out, F f) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
}

inline double abs_max(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

/// sum_i w_i (|x_i| / scale)^p with w_i = 1, or trapezoid weights if `trapezoid`.
inline double pow_sum(std::span<const double> x, double p, double scale, bool trapezoid) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = trapezoid ? trapezoid_weight(i, x.size()) : 1.0;
    s += w * std::pow(std::abs(x[i]) / scale, p);
  }
  return s;
}

template <class F>
void for_each_index(std::size_t n, F body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace serial

namespace parallel {

template <class F>
void transform(std::span<const double> in, std::span<double> out, F f) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(in[i]);
}

template <class F>
void transform2(std::span<const double> a, std::span<const double> b, std::span<double> out, F f) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(a[i], b[i]);
}

inline double abs_max(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (x.size() >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

inline double pow_sum(std::span<const double> x, double p, double scale, bool trapezoid) {
  const std::size_t n = x.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const std::ptrdiff_t nc = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double w = trapezoid ? trapezoid_weight(i, n) : 1.0;
      s += w * std::pow(std::abs(x[i]) / scale, p);
    }
    partial[static_cast<std::size_t>(c)] = s;
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

inline bool all_finite(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  int bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad) if (x.size() >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) bad += std::isfinite(x[i]) ? 0 : 1;
  return bad == 0;
}

/// Runs body(i) for i in [0, n) across threads. Callers write results into
/// per-index slots and reduce them in index order afterwards. The first
/// exception by index is rethrown on the calling thread.
template <class F>
void for_each_index(std::size_t n, F body) {
  std::vector<std::exception_ptr> errors(n);
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < nn; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace parallel

}  // namespace ordiff::kernels
