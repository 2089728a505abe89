#pragma once

#include "lca/group.hpp"

#include <map>
#include <string>
#include <vector>

namespace lca {

using MultiIndex = std::vector<int>;

// Polynomial in the Z coordinates of a dual group, constant along its circle
// and finite coordinates. Zero coefficients are never stored.
class PolynomialFn {
 public:
  PolynomialFn() = default;
  explicit PolynomialFn(GroupDescriptor dual_owner) : owner_(std::move(dual_owner)) {}
  PolynomialFn(GroupDescriptor dual_owner, const std::map<MultiIndex, Complex>& coeffs);

  /// c * y_i^k on the given group.
  static PolynomialFn monomial(const GroupDescriptor& dual_owner, MultiIndex alpha, Complex c);

  const GroupDescriptor& dual_owner() const { return owner_; }
  const std::map<MultiIndex, Complex>& coeffs() const { return coeffs_; }
  Complex coeff(const MultiIndex& alpha) const;
  /// Total degree; 0 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_real(double tol = 0.0) const;

  Complex operator()(const GroupElement& y) const;
  Complex operator()(const std::vector<std::int64_t>& z) const;

  /// Drops coefficients with modulus below tol.
  PolynomialFn pruned(double tol) const;

  friend PolynomialFn operator+(const PolynomialFn& a, const PolynomialFn& b);
  friend PolynomialFn operator-(const PolynomialFn& a, const PolynomialFn& b);
  friend PolynomialFn operator*(Complex c, const PolynomialFn& p);
  friend bool operator==(const PolynomialFn&, const PolynomialFn&) = default;

 private:
  GroupDescriptor owner_;
  std::map<MultiIndex, Complex> coeffs_;
};

/// Largest coefficient difference in modulus.
double max_coeff_distance(const PolynomialFn& a, const PolynomialFn& b);
std::string to_string(const PolynomialFn& p);

}  // namespace lca
