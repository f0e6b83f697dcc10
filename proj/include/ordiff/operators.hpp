#pragma once

// Pointwise operators and their exact Fréchet derivatives.
//
// The family is closed under scaling, sums and composition:
//   power:m      t -> t^m
//   poly:a1..am  t -> a1 t + a2 t^2 + ... + am t^m   (no constant term)
//   sin          t -> sin t
// Each acts coordinatewise, so its derivative at a point is a pointwise
// multiplier (a diagonal map), stored as one multiplier per coordinate.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordiff/spaces.hpp"

namespace ordiff {

enum class OpKind { Power, PolyType, Sine, Scaled, Sum, Compose };

class OperatorSpec {
 public:
  OpKind kind() const noexcept;
  const SpaceDescriptor& domain() const noexcept;
  const SpaceDescriptor& codomain() const noexcept;

  int exponent() const;                           ///< Power
  const std::vector<double>& coefficients() const;  ///< PolyType: a_1..a_m
  double scalar() const;                          ///< Scaled
  const OperatorSpec& left() const;               ///< Sum left, Scaled inner, Compose outer
  const OperatorSpec& right() const;              ///< Sum right, Compose inner

  struct Node;

 private:
  explicit OperatorSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend OperatorSpec make_operator(Node node);
};

/// Leaf constructors. `codomain` defaults to `domain`; the only other
/// accepted codomain is L_p[0,1] on the same grid as a C[0,1] domain.
OperatorSpec power(int m, const SpaceDescriptor& domain,
                   std::optional<SpaceDescriptor> codomain = std::nullopt);
OperatorSpec polytype(std::vector<double> coefficients, const SpaceDescriptor& domain,
                      std::optional<SpaceDescriptor> codomain = std::nullopt);
OperatorSpec sine(const SpaceDescriptor& domain, std::optional<SpaceDescriptor> codomain = std::nullopt);

OperatorSpec scaled(double a, const OperatorSpec& inner);
OperatorSpec sum(const OperatorSpec& left, const OperatorSpec& right);
/// outer o inner; requires inner.codomain() == outer.domain().
OperatorSpec compose(const OperatorSpec& outer, const OperatorSpec& inner);

/// Same operator landing in `codomain` (C[0,1] -> L_p[0,1] relabelling of the outermost result).
OperatorSpec retarget_codomain(const OperatorSpec& op, const SpaceDescriptor& codomain);

/// Mini-language rendering, e.g. "compose(power:2,sin)".
std::string to_string(const OperatorSpec& op);

/// Diagonal linear map: (D v)_i = multipliers_i * v_i.
class MultiplierMap {
 public:
  MultiplierMap(SpaceDescriptor space_in, SpaceDescriptor space_out, std::vector<double> multipliers);

  const SpaceDescriptor& space_in() const noexcept { return in_; }
  const SpaceDescriptor& space_out() const noexcept { return out_; }
  std::span<const double> multipliers() const noexcept { return m_; }

 private:
  SpaceDescriptor in_;
  SpaceDescriptor out_;
  std::vector<double> m_;
};

MultiplierMap identity_map(const SpaceDescriptor& space);

Vector apply(const OperatorSpec& op, const Vector& x);
MultiplierMap exact_derivative(const OperatorSpec& op, const Vector& xbar);
Vector apply_map(const MultiplierMap& d, const Vector& v);

/// max |multiplier|: the exact norm when domain and codomain norms match, an
/// upper bound for C[0,1] -> L_p[0,1] (the L_p grid norm never exceeds the max).
double operator_norm(const MultiplierMap& d);

/// second o first.
MultiplierMap compose_maps(const MultiplierMap& second, const MultiplierMap& first);
/// a * d1 + b * d2.
MultiplierMap combine_maps(double a, const MultiplierMap& d1, double b, const MultiplierMap& d2);
/// Adds `delta` to every multiplier (used to build deliberately wrong derivatives).
MultiplierMap perturb_map(const MultiplierMap& d, double delta);

/// Scalar closed forms shared by the vector kernels: value and slope at t.
double int_power(double t, int m) noexcept;
double poly_value(std::span<const double> a, double t) noexcept;
double poly_slope(std::span<const double> a, double t) noexcept;

}  // namespace ordiff
