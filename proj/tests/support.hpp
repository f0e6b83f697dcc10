#pragma once

#include <doctest.h>

#include <cmath>
#include <vector>

#include "ordiff/error.hpp"
#include "ordiff/spaces.hpp"

namespace support {

inline ordiff::Vector seq(std::vector<double> c, double p = 2.0) {
  const auto n = c.size();
  return ordiff::Vector(ordiff::sequence_lp(p, n), std::move(c));
}

inline bool close(double a, double b, double rel = 1e-12) { return std::abs(a - b) <= rel * (1.0 + std::abs(b)); }

template <class F>
ordiff::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const ordiff::Error& e) {
    return e.kind();
  }
  FAIL("expected an ordiff::Error");
  return ordiff::ErrorKind::UsageError;
}

}  // namespace support
