#pragma once

#include "lca/polynomial.hpp"
#include "lca/window.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace lca {

// A function sampled on a window. The optional log callback supplies some
// branch of log f (used where f underflows); the optional vanish callback
// reports exact zeros.
class LatticeFunction {
 public:
  using ValueFn = std::function<Complex(const GroupElement&)>;
  using VanishFn = std::function<bool(const GroupElement&)>;

  LatticeFunction(Window domain, ValueFn value, ValueFn log = {}, VanishFn vanishes = {});
  /// Values given in the window's dense order.
  static LatticeFunction table(Window domain, std::vector<Complex> values);
  static LatticeFunction from_polynomial(Window domain, PolynomialFn p);

  const Window& domain() const { return domain_; }
  Complex operator()(const GroupElement& y) const;
  bool has_log() const { return static_cast<bool>(log_); }
  /// Some logarithm of f(y); falls back to the principal log.
  Complex log_at(const GroupElement& y) const;
  bool vanishes_at(const GroupElement& y) const;
  /// All values in dense window order.
  std::vector<Complex> tabulate() const;

 private:
  Window domain_;
  ValueFn value_;
  ValueFn log_;
  VanishFn vanishes_;
};

/// y |-> f(y + h) - f(y) on the points where both sides are defined.
LatticeFunction delta(const GroupElement& h, const LatticeFunction& f);

struct DegreeResult {
  std::optional<int> degree;             // empty means NotPolynomial
  std::optional<GroupElement> witness;   // base point of the worst difference
  double residual = 0.0;
};

/// Smallest n <= d_max with every unit-coordinate difference of order n + 1
/// vanishing and f constant along compact coordinates.
DegreeResult polynomial_degree(const LatticeFunction& f, int d_max = 8, double tol = 1e-9);

/// Continuous logarithm with L(0) = 0, accumulated along axis paths through
/// the Z coordinates; compact coordinates are reached by one jump from the
/// Z part of each point.
LatticeFunction branch_log(const LatticeFunction& f);

struct FitResult {
  PolynomialFn poly;
  double residual = 0.0;
  bool ok = false;                       // residual < tol
  std::optional<GroupElement> witness;   // point of the worst residual
};

/// Exact polynomial fit of degree <= d from forward differences at 0.
FitResult fit_polynomial(const LatticeFunction& f, int degree, double tol = 1e-9);

}  // namespace lca
