#pragma once
// Finite-difference elimination on the functional equations of the linear
// form problems. Equations are kept with every term on one side:
//   SD:    sum_j phi_j(a_j u + b_j v) - P(u) - Q(v) + q(u, v) = 0
//   Heyde: sum_j [phi_j(u + d_j v) - phi_j(u - d_j v)] + q(u, v) = 0
// where d_j is the adjoint of delta_j and q is the defect polynomial.

#include "lca/homomorphism.hpp"
#include "lca/lattice.hpp"
#include "lca/polynomial.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace lca {

struct SdMode {
  std::vector<std::int64_t> a, b;
};
struct HeydeMode {
  std::vector<Homomorphism> deltas;  // automorphisms of X
};

struct CascadeSpec {
  std::variant<SdMode, HeydeMode> mode;
  std::vector<LatticeFunction> phis;  // on Y
  PolynomialFn q;                     // on Y^2
  std::int64_t sample_radius = 2;     // base points (u, v) range over this box
  std::uint64_t seed = 0xD1CE;
  std::int64_t shift_radius = 2;      // random shifts draw Z coordinates from [-r, r]
  /// Explicit schedule instead of random shifts.
  /// SD: h_n, ..., h_1, h.  Heyde: k_1, ..., k_{2n-1}, h, k.
  std::vector<GroupElement> shifts;
  double base_tol = 1e-9;
  double step_tol = 1e-8;
};

struct TermTrace {
  std::string name;
  std::vector<std::string> shifts;  // effective shifts l_{p,j}, one per applied difference
};

struct CascadeStep {
  int index = 0;  // 1-based
  GroupElement shift_u, shift_v;  // substitution u -> u + shift_u, v -> v + shift_v
  std::vector<std::string> eliminated;
  std::vector<TermTrace> surviving;
  double residual = 0.0;
};

struct EliminationTrace {
  std::string mode;  // "sd" or "heyde"
  int degree_l = 0;  // degree of q
  double base_residual = 0.0;
  std::vector<CascadeStep> steps;
  double terminal_residual = 0.0;
  std::string conclusion;
  std::vector<GroupElement> conclusion_shifts;
  double conclusion_residual = 0.0;
};

/// Replays the elimination, checking every intermediate identity on the
/// sample box. Throws BaseEquationViolated, StepResidual, WindowExhausted.
EliminationTrace elimination_cascade(const CascadeSpec& spec);

}  // namespace lca
