#pragma once

#include "lca/bochner.hpp"
#include "lca/certificate.hpp"
#include "lca/charfn.hpp"
#include "lca/homomorphism.hpp"
#include "lca/window.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lca {

enum class QVerdict { QIndependent, NotQIndependent, PlainIndependent };

std::string_view verdict_name(QVerdict v);

struct QDefectReport {
  std::string setting;  // vector, linear-forms, conditional-symmetry, sumdiff
  std::optional<PolynomialFn> q;
  int degree = -1;
  double residual = 0.0;
  QVerdict verdict = QVerdict::NotQIndependent;
  std::vector<GroupElement> witness;
  std::string reason;
};

Certificate to_certificate(const QDefectReport& r);

/// phi = -Re log f must be nonnegative and satisfy the parallelogram law on
/// window pairs, and the phase must be additive. The witness is the first
/// failing pair in centered order.
Certificate gaussianity_check(const CharFn& f, const Window& w, double tol = 1e-9);

/// Nonvanishing set of f on the window as a coordinatewise subgroup of Y.
/// Throws SupportNotSubgroup when it is not closed under addition.
Subgroup support_subgroup(const CharFn& f, const Window& w);

/// f = (Gaussian) x (indicator of A(Y, K)) for some compact K.
Certificate gamma_i_membership(const CharFn& f, const Window& w, double tol = 1e-9);

/// joint on Y^n against the product of the marginals; w is a window on Y.
QDefectReport qdefect_vector(const CharFn& joint, const std::vector<CharFn>& marginals, const Window& w);
QDefectReport qdefect_linear_forms(const std::vector<CharFn>& marginals, const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, const Window& w);
QDefectReport qdefect_conditional_symmetry(const std::vector<CharFn>& marginals, const std::vector<Homomorphism>& alphas,
                                           const std::vector<Homomorphism>& betas, const Window& w);
/// f(u+v) f(u-v) against f(u)^2 f(v) f(-v). Throws CaseMismatch when exactly one side vanishes.
QDefectReport qdefect_sumdiff(const CharFn& f, const Window& w);

struct QuarticOptions {
  std::int64_t pd_radius = 8;
  std::int64_t defect_radius = 6;
  std::int64_t gaussian_radius = 8;
};

struct Counterexample {
  CharFn f;
  Certificate cert;
};

/// f(n) = exp(-a n^2 - b n^4) on Z with Bochner, defect and Gaussianity sub-certificates.
Counterexample quartic_counterexample(const Rational& a, const Rational& b, const QuarticOptions& opts = {});

struct Lift {
  CharFn h;
  Certificate cert;
};

/// Zero extension of f (a function on the abstract copy of A(Y, K)) to Y,
/// with a Bochner certificate for the extension.
Lift annihilator_lift(const CharFn& f, const Subgroup& k, const Window& w);

}  // namespace lca
