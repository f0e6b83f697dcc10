#pragma once

// Discretized Banach spaces: truncated l_p, C[0,1] sampled on a uniform grid,
// and L_p[0,1] sampled on the same kind of grid.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ordiff {

enum class SpaceKind { SequenceLp, GridC01, GridLp01 };

inline constexpr std::size_t kDefaultTruncation = 64;
inline constexpr std::size_t kDefaultGrid = 257;

struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::SequenceLp;
  double p = 2.0;  ///< exponent; ignored for GridC01
  std::size_t dim = kDefaultTruncation;

  /// Throws InvalidSpace when p or dim are out of range.
  void validate() const;

  bool has_exponent() const noexcept { return kind != SpaceKind::GridC01; }
  bool is_grid() const noexcept { return kind != SpaceKind::SequenceLp; }

  friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) noexcept {
    return a.kind == b.kind && a.dim == b.dim && (!a.has_exponent() || a.p == b.p);
  }
};

SpaceDescriptor sequence_lp(double p, std::size_t n = kDefaultTruncation);
SpaceDescriptor grid_c01(std::size_t g = kDefaultGrid);
SpaceDescriptor grid_lp01(double p, std::size_t g = kDefaultGrid);

std::string to_string(SpaceKind kind);
std::string describe(const SpaceDescriptor& space);

/// Same grid with a different kind: C[0,1] <-> L_p[0,1]. Coordinates carry over unchanged.
SpaceDescriptor with_kind(const SpaceDescriptor& space, SpaceKind kind, double p);

/// Grid abscissae t_i = i / (G - 1). Throws WrongSpace for sequence spaces.
std::vector<double> grid_points(const SpaceDescriptor& space);

/// Immutable coordinate array bound to a space. Construction validates length
/// and finiteness.
class Vector {
 public:
  Vector(SpaceDescriptor space, std::vector<double> coords);

  const SpaceDescriptor& space() const noexcept { return space_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.space_ == b.space_ && a.coords_ == b.coords_;
  }

 private:
  SpaceDescriptor space_;
  std::vector<double> coords_;
};

Vector zeros(const SpaceDescriptor& space);
Vector constant(const SpaceDescriptor& space, double c);
/// {r^n}_{n=1..N}; on a grid space the same values are laid along the grid.
Vector geometric(const SpaceDescriptor& space, double r);
/// f sampled at the grid points. Throws WrongSpace for sequence spaces.
Vector sample(const SpaceDescriptor& space, const std::function<double(double)>& f);

/// Norm of the space: l_p sum, grid maximum, or trapezoid L_p quadrature.
double norm(const Vector& x);
/// P(x) = max_n |t_n|, defined on SequenceLp only.
double sup_functional(const Vector& x);

Vector axpy(double a, const Vector& x, double b, const Vector& y);
Vector scale(double a, const Vector& x);
Vector operator+(const Vector& x, const Vector& y);
Vector operator-(const Vector& x, const Vector& y);
Vector operator-(const Vector& x);

/// Throws SpaceMismatch unless a == b.
void require_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b, const char* where);

}  // namespace ordiff
