#pragma once

#include "lca/certificate.hpp"
#include "lca/charfn.hpp"
#include "lca/window.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace lca {

struct BochnerOptions {
  std::int64_t grid_1d = 1024;  // density samples on T
  std::int64_t grid_2d = 256;   // per axis on T^2
  double tol = 1e-12;
};

/// Masses of the law on the finite predual X whose transform is f, in enumerate(X) order.
std::vector<std::pair<GroupElement, Complex>> inverse_transform(const CharFn& f);

/// Bound on sum over ||n||_inf > n_trunc of sum over compact coordinates of |f|,
/// for f on Z^k x F. Empty when no rigorous bound is known for the form.
std::optional<double> tail_bound(const CharFn& f, std::int64_t n_trunc);

/// Certifies that f is positive definite. Finite duals use the exact inverse
/// transform; Z and Z^2 (times a finite group) use density synthesis on the
/// torus with a tail bound and a Lipschitz slack. Truncation is the window radius.
Certificate positive_definiteness(const CharFn& f, const Window& window, const BochnerOptions& opts = {});

}  // namespace lca
