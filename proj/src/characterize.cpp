#include "lca/characterize.hpp"

#include "lca/error.hpp"
#include "lca/json_io.hpp"
#include "lca/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace lca {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  return r <= -kPi ? r + 2.0 * kPi : r;
}

Json pair_json(const GroupElement& u, const GroupElement& v) { return Json{{"u", to_json(u)}, {"v", to_json(v)}}; }

Window abstract_window(const SubgroupIso& iso, const Window& w) {
  const GroupDescriptor& a = iso.abstract_group();
  std::vector<std::int64_t> lo, hi, grid;
  auto floor_div = [](std::int64_t p, std::int64_t q) { return p >= 0 ? p / q : -((-p + q - 1) / q); };
  for (int i = 0; i < a.z_rank; ++i) {
    std::int64_t m = iso.z_scale(i);
    int src = iso.z_source(i);
    lo.push_back(-floor_div(-w.z_lo()[src], m));
    hi.push_back(floor_div(w.z_hi()[src], m));
  }
  for (int i = 0; i < a.t_rank; ++i) grid.push_back(w.t_grid().empty() ? 8 : w.t_grid().front());
  return Window(a, lo, hi, grid);
}

// c * prod a_i^alpha_i on the abstract group becomes c / prod m_i^alpha_i * prod y_src^alpha_i.
PolynomialFn extend_polynomial(const PolynomialFn& p, const SubgroupIso& iso) {
  const GroupDescriptor& owner = iso.subgroup().owner();
  std::map<MultiIndex, Complex> out;
  for (const auto& [alpha, c] : p.coeffs()) {
    MultiIndex beta(owner.z_rank, 0);
    double scale = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      beta[iso.z_source(static_cast<int>(i))] += alpha[i];
      scale *= std::pow(static_cast<double>(iso.z_scale(static_cast<int>(i))), alpha[i]);
    }
    out[beta] += c / scale;
  }
  return PolynomialFn(owner, out);
}

// Shared tail of every defect extractor: continuous log, degree, exact fit.
QDefectReport analyze_defect(std::string setting, const LatticeFunction& ratio) {
  QDefectReport r;
  r.setting = std::move(setting);
  const Window& w = ratio.domain();
  for (const auto& y : w.centered_points())
    if (ratio.vanishes_at(y)) {
      r.verdict = QVerdict::NotQIndependent;
      r.reason = "ratio vanishes";
      r.witness = {y};
      return r;
    }
  std::optional<LatticeFunction> l;
  try {
    l = branch_log(ratio);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BranchInconsistency && e.code() != ErrorCode::StepTooLarge) throw;
    r.verdict = QVerdict::NotQIndependent;
    r.reason = e.what();
    return r;
  }
  int d_max = 0;
  if (w.group().z_rank > 0) {
    if (w.radius() < 2) throw Error(ErrorCode::WindowTooSmall, "defect window radius must be at least 2");
    d_max = static_cast<int>(std::min<std::int64_t>(8, w.radius() - 2));
  }
  DegreeResult deg = polynomial_degree(*l, d_max);
  if (!deg.degree) {
    r.verdict = QVerdict::NotQIndependent;
    r.reason = "defect is not a polynomial of degree <= " + std::to_string(d_max);
    r.residual = deg.residual;
    if (deg.witness) r.witness = {*deg.witness};
    return r;
  }
  FitResult fit = fit_polynomial(*l, *deg.degree);
  r.residual = fit.residual;
  if (!fit.ok) {
    r.verdict = QVerdict::NotQIndependent;
    r.reason = "fit residual too large";
    if (fit.witness) r.witness = {*fit.witness};
    return r;
  }
  r.q = fit.poly;
  r.degree = fit.poly.degree();
  r.verdict = fit.poly.is_zero() ? QVerdict::PlainIndependent : QVerdict::QIndependent;
  return r;
}

void require_nonvanishing(const CharFn& f, const GroupElement& y, const std::string& label) {
  if (f.vanishes_at(y)) throw Error(ErrorCode::VanishingValue, label + " vanishes at " + to_string(y), to_json(y).dump());
}

Certificate gaussian_core(const LatticeFunction& f, double tol) {
  const Window& w = f.domain();
  const GroupDescriptor& y = w.group();
  LatticeFunction l = branch_log(f);
  auto vals = l.tabulate();
  auto phi = [&](const GroupElement& p) { return -vals[w.index(p)].real(); };
  auto theta = [&](const GroupElement& p) { return vals[w.index(p)].imag(); };

  Certificate c;
  c.claim = "gaussianity";
  double min_phi = 0.0;
  for (const auto& p : w.points()) min_phi = std::min(min_phi, phi(p));

  double worst = 0.0, phase = 0.0;
  std::optional<std::pair<GroupElement, GroupElement>> first;
  double first_residual = 0.0;
  Window pairs = product(w, w);
  for (const auto& p : pairs.centered_points()) {
    auto uv = split(p, y, 2);
    const GroupElement &u = uv[0], &v = uv[1];
    if (w.contains(u + v)) phase = std::max(phase, std::abs(wrap_angle(theta(u + v) - theta(u) - theta(v))));
    if (!w.contains(u + v) || !w.contains(u - v)) continue;
    double res = std::abs(phi(u + v) + phi(u - v) - 2.0 * phi(u) - 2.0 * phi(v));
    worst = std::max(worst, res);
    if (!first && res >= tol) {
      first = std::make_pair(u, v);
      first_residual = res;
    }
  }
  c.set_margin("witness_residual", first_residual);
  c.set_margin("max_residual", worst);
  c.set_margin("min_phi", min_phi);
  c.set_margin("phase_residual", phase);
  bool ok = !first && min_phi >= -tol && phase < tol;
  if (first) {
    Json wj = pair_json(first->first, first->second);
    wj["kind"] = "parallelogram";
    wj["residual"] = first_residual;
    c.witnesses.push_back(wj);
  }
  if (min_phi < -tol) c.reason = "phi takes negative values";
  if (phase >= tol) c.reason = "phase is not a character";
  if (first) c.reason = "parallelogram law fails";
  c.status = ok ? Status::Pass : Status::Fail;
  c.verdict = ok ? "gaussian" : "non-gaussian";
  return c;
}

}  // namespace

std::string_view verdict_name(QVerdict v) {
  switch (v) {
    case QVerdict::QIndependent: return "q-independent";
    case QVerdict::NotQIndependent: return "not-q-independent";
    case QVerdict::PlainIndependent: return "plain-independent";
  }
  return "?";
}

Certificate to_certificate(const QDefectReport& r) {
  Certificate c;
  c.claim = "qdefect-" + r.setting;
  c.verdict = std::string(verdict_name(r.verdict));
  c.status = r.verdict == QVerdict::NotQIndependent ? Status::Fail : Status::Pass;
  c.reason = r.reason;
  c.set_margin("residual", r.residual);
  if (r.degree >= 0) c.set_fact("degree", std::to_string(r.degree));
  c.fitted_q = r.q;
  if (!r.witness.empty()) {
    Json pts = Json::array();
    for (const auto& p : r.witness) pts.push_back(to_json(p));
    c.witnesses.push_back(Json{{"kind", "defect"}, {"points", pts}});
  }
  return c;
}

Certificate gaussianity_check(const CharFn& f, const Window& w, double tol) { return gaussian_core(f.on(w), tol); }

Subgroup support_subgroup(const CharFn& f, const Window& w) {
  const GroupDescriptor& y = w.group();
  auto pts = w.points();
  std::vector<char> in(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) in[i] = !f.vanishes_at(pts[i]);
  auto member = [&](const GroupElement& p) { return in[w.index(p)] != 0; };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!in[i]) continue;
    for (std::size_t j = i; j < pts.size(); ++j) {
      if (!in[j]) continue;
      GroupElement s = pts[i] + pts[j];
      if (w.contains(s) && !member(s))
        throw Error(ErrorCode::SupportNotSubgroup, to_string(pts[i]) + " + " + to_string(pts[j]) + " leaves the support",
                    pair_json(pts[i], pts[j]).dump());
    }
  }
  SubgroupFactors fac{std::vector<std::int64_t>(y.z_rank, 0), std::vector<std::int64_t>(y.t_rank, 0),
                      std::vector<std::int64_t>(y.f_rank(), 0)};
  for (int i = 0; i < y.z_rank; ++i)
    for (std::int64_t m = 1; m <= w.z_hi()[i]; ++m)
      if (member(m * GroupElement::z_unit(y, i))) {
        fac.z[i] = m;
        break;
      }
  for (int i = 0; i < y.f_rank(); ++i) {
    std::int64_t n = y.finite_orders[i];
    fac.f[i] = n;
    for (std::int64_t d = 1; d < n; ++d) {
      if (n % d) continue;
      std::vector<std::int64_t> f(y.f_rank(), 0);
      f[i] = d;
      if (member(GroupElement(y, std::vector<std::int64_t>(y.z_rank, 0), std::vector<Rational>(y.t_rank, Rational(0)), f))) {
        fac.f[i] = d;
        break;
      }
    }
  }
  Subgroup s = Subgroup::from_factors(y, fac);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (s.contains(pts[i]) != static_cast<bool>(in[i]))
      throw Error(ErrorCode::UnsupportedSubgroupForm, "support is not a coordinatewise subgroup near " + to_string(pts[i]),
                  to_json(pts[i]).dump());
  return s;
}

Certificate gamma_i_membership(const CharFn& f, const Window& w, double tol) {
  Certificate c;
  c.claim = "gamma-i-membership";
  Subgroup s = support_subgroup(f, w);
  GroupDescriptor x = dual_group(w.group());
  Subgroup k = annihilator(x, s);
  c.set_fact("support", to_string(s));
  c.set_fact("compact_subgroup", to_string(k));
  if (!k.is_compact()) {
    c.status = Status::Fail;
    c.verdict = "non-member";
    c.reason = "support is not the annihilator of a compact subgroup";
    return c;
  }
  SubgroupIso iso(s);
  Window aw = abstract_window(iso, w);
  CharFn self = f;
  auto embed = [iso](const GroupElement& a) { return iso.embed(a); };
  LatticeFunction g(
      aw, [self, embed](const GroupElement& a) { return self(embed(a)); },
      [self, embed](const GroupElement& a) { return self.log_at(embed(a)); },
      [self, embed](const GroupElement& a) { return self.vanishes_at(embed(a)); });
  Certificate gauss = gaussian_core(g, tol);
  gauss.claim = "gaussianity-on-support";
  c.status = gauss.status;
  c.verdict = gauss.pass() ? "member" : "non-member";
  if (!gauss.pass()) c.reason = "restriction to the support is not Gaussian";
  if (auto r = gauss.margin("witness_residual")) c.set_margin("gaussian_residual", *r);
  c.witnesses = gauss.witnesses;
  c.sub.push_back(std::move(gauss));
  return c;
}

QDefectReport qdefect_vector(const CharFn& joint, const std::vector<CharFn>& marginals, const Window& w) {
  const int n = static_cast<int>(marginals.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "no marginals");
  const GroupDescriptor y = w.group();
  for (const auto& m : marginals)
    if (m.dual_owner() != y) throw Error(ErrorCode::MismatchedGroups, "marginal not on the window's group");
  if (joint.dual_owner() != power(y, n)) throw Error(ErrorCode::MismatchedGroups, "joint is not on Y^n");
  for (int j = 0; j < n; ++j)
    for (const auto& p : w.points()) require_nonvanishing(marginals[j], p, "marginal " + std::to_string(j + 1));
  Window wn = power(w, n);
  auto log_ratio = [joint, marginals, y, n](const GroupElement& p) {
    auto parts = split(p, y, n);
    Complex l = joint.log_at(p);
    for (int j = 0; j < n; ++j) l -= marginals[j].log_at(parts[j]);
    return l;
  };
  LatticeFunction ratio(
      wn, [log_ratio](const GroupElement& p) { return std::exp(log_ratio(p)); }, log_ratio,
      [joint](const GroupElement& p) { return joint.vanishes_at(p); });
  return analyze_defect("vector", ratio);
}

namespace {

// Ratio prod f_j(A_j u + B_j v) / [prod g_j(C_j u + D_j v)] on a window of Y^2,
// given as log callbacks over both products.
struct TwoSided {
  std::vector<CharFn> f;
  std::vector<Homomorphism> a, b;  // numerator arguments
  std::vector<CharFn> g;
  std::vector<Homomorphism> c, d;  // denominator arguments
  GroupDescriptor y;
};

QDefectReport two_sided_defect(const std::string& setting, const TwoSided& t, const Window& w) {
  Window w2 = product(w, w);
  for (const auto& p : w2.points()) {
    auto uv = split(p, t.y, 2);
    for (std::size_t j = 0; j < t.f.size(); ++j) require_nonvanishing(t.f[j], t.a[j](uv[0]) + t.b[j](uv[1]), "numerator factor");
    for (std::size_t j = 0; j < t.g.size(); ++j) require_nonvanishing(t.g[j], t.c[j](uv[0]) + t.d[j](uv[1]), "denominator factor");
  }
  auto log_ratio = [t](const GroupElement& p) {
    auto uv = split(p, t.y, 2);
    Complex l = 0.0;
    for (std::size_t j = 0; j < t.f.size(); ++j) l += t.f[j].log_at(t.a[j](uv[0]) + t.b[j](uv[1]));
    for (std::size_t j = 0; j < t.g.size(); ++j) l -= t.g[j].log_at(t.c[j](uv[0]) + t.d[j](uv[1]));
    return l;
  };
  LatticeFunction ratio(w2, [log_ratio](const GroupElement& p) { return std::exp(log_ratio(p)); }, log_ratio,
                        [](const GroupElement&) { return false; });
  return analyze_defect(setting, ratio);
}

}  // namespace

QDefectReport qdefect_linear_forms(const std::vector<CharFn>& marginals, const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, const Window& w) {
  if (marginals.size() != a.size() || marginals.size() != b.size())
    throw Error(ErrorCode::InvalidArgument, "marginals, a and b differ in length");
  const GroupDescriptor y = w.group();
  TwoSided t;
  t.y = y;
  auto zero = Homomorphism::scalar(y, 0);
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    if (marginals[j].dual_owner() != y) throw Error(ErrorCode::MismatchedGroups, "marginal not on the window's group");
    t.f.push_back(marginals[j]);
    t.a.push_back(Homomorphism::scalar(y, a[j]));
    t.b.push_back(Homomorphism::scalar(y, b[j]));
    t.g.push_back(marginals[j]);
    t.c.push_back(Homomorphism::scalar(y, a[j]));
    t.d.push_back(zero);
    t.g.push_back(marginals[j]);
    t.c.push_back(zero);
    t.d.push_back(Homomorphism::scalar(y, b[j]));
  }
  return two_sided_defect("linear-forms", t, w);
}

QDefectReport qdefect_conditional_symmetry(const std::vector<CharFn>& marginals, const std::vector<Homomorphism>& alphas,
                                           const std::vector<Homomorphism>& betas, const Window& w) {
  if (marginals.size() != alphas.size() || marginals.size() != betas.size())
    throw Error(ErrorCode::InvalidArgument, "marginals, alphas and betas differ in length");
  const GroupDescriptor y = w.group();
  TwoSided t;
  t.y = y;
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    if (!alphas[j].is_automorphism()) throw Error(ErrorCode::NotAnAutomorphism, "alpha_" + std::to_string(j + 1));
    if (!betas[j].is_automorphism()) throw Error(ErrorCode::NotAnAutomorphism, "beta_" + std::to_string(j + 1));
    Homomorphism at = adjoint(alphas[j]), bt = adjoint(betas[j]);
    if (at.domain() != y) throw Error(ErrorCode::MismatchedGroups, "automorphisms are not on the predual of Y");
    t.f.push_back(marginals[j]);
    t.a.push_back(at);
    t.b.push_back(bt);
    t.g.push_back(marginals[j]);
    t.c.push_back(at);
    t.d.push_back(-bt);
  }
  return two_sided_defect("conditional-symmetry", t, w);
}

QDefectReport qdefect_sumdiff(const CharFn& f, const Window& w) {
  const GroupDescriptor y = w.group();
  if (f.dual_owner() != y) throw Error(ErrorCode::MismatchedGroups, "function not on the window's group");
  Window w2 = product(w, w);
  for (const auto& p : w2.centered_points()) {
    auto uv = split(p, y, 2);
    const GroupElement &u = uv[0], &v = uv[1];
    bool lhs_zero = f.vanishes_at(u + v) || f.vanishes_at(u - v);
    bool rhs_zero = f.vanishes_at(u) || f.vanishes_at(v) || f.vanishes_at(-v);
    if (lhs_zero != rhs_zero)
      throw Error(ErrorCode::CaseMismatch,
                  "at (" + to_string(u) + ", " + to_string(v) + ") " + (lhs_zero ? "left" : "right") +
                      " side vanishes, the other does not",
                  pair_json(u, v).dump());
  }
  Subgroup s = support_subgroup(f, w);
  SubgroupFactors sf = *s.factors();
  SubgroupFactors ff{sf.z, sf.t, sf.f};
  ff.z.insert(ff.z.end(), sf.z.begin(), sf.z.end());
  ff.t.insert(ff.t.end(), sf.t.begin(), sf.t.end());
  ff.f.insert(ff.f.end(), sf.f.begin(), sf.f.end());
  SubgroupIso iso(Subgroup::from_factors(product(y, y), ff));
  Window aw = abstract_window(iso, w2);
  auto log_ratio = [f, iso, y](const GroupElement& a) {
    auto uv = split(iso.embed(a), y, 2);
    const GroupElement &u = uv[0], &v = uv[1];
    return f.log_at(u + v) + f.log_at(u - v) - 2.0 * f.log_at(u) - f.log_at(v) - f.log_at(-v);
  };
  LatticeFunction ratio(aw, [log_ratio](const GroupElement& a) { return std::exp(log_ratio(a)); }, log_ratio,
                        [](const GroupElement&) { return false; });
  QDefectReport r = analyze_defect("sumdiff", ratio);
  if (r.q) r.q = extend_polynomial(*r.q, iso);
  for (auto& p : r.witness) p = iso.embed(p);
  return r;
}

Counterexample quartic_counterexample(const Rational& a, const Rational& b, const QuarticOptions& opts) {
  if (a < 0 || b < 0 || (a == 0 && b == 0)) throw Error(ErrorCode::InvalidArgument, "need a, b >= 0, not both zero");
  GroupDescriptor t(0, 1), z(1, 0);
  PolynomialFn phi(z, {{{2}, to_double(a)}, {{4}, to_double(b)}});
  CharFn f = exp_poly_charfn(GroupElement::zero(t), phi);

  Certificate c;
  c.claim = "quartic-counterexample";
  c.set_fact("a", to_string(a));
  c.set_fact("b", to_string(b));

  Certificate pd = positive_definiteness(f, Window::box(z, opts.pd_radius));
  if (pd.pass()) f = mark_certified(f);
  if (auto m = pd.margin("margin")) c.set_margin("pd_margin", *m);
  if (auto m = pd.margin("min_density")) c.set_margin("min_density", *m);
  if (auto m = pd.margin("tail_bound")) c.set_margin("tail_bound", *m);

  QDefectReport q = qdefect_sumdiff(f, Window::box(z, opts.defect_radius));
  Certificate qc = to_certificate(q);
  c.set_margin("q_coeff_22", q.q ? q.q->coeff({2, 2}).real() : 0.0);
  c.set_margin("q_residual", q.residual);
  c.fitted_q = q.q;

  Certificate gauss = gaussianity_check(f, Window::box(z, opts.gaussian_radius));
  c.set_margin("gaussian_residual", gauss.margin("witness_residual").value_or(0.0));

  const bool control = b == 0;
  bool defect_ok = control ? q.verdict == QVerdict::PlainIndependent : q.verdict == QVerdict::QIndependent;
  bool gauss_ok = control ? gauss.pass() : !gauss.pass();
  c.sub = {pd, qc, gauss};
  if (!pd.pass()) {
    c.status = pd.status == Status::Fail ? Status::Fail : Status::Inconclusive;
    c.verdict = "bochner-fail";
    c.reason = "density certificate does not establish positive definiteness";
  } else if (defect_ok && gauss_ok) {
    c.status = Status::Pass;
    c.verdict = control ? "gaussian-control" : "qindep-nongaussian";
  } else {
    c.status = Status::Fail;
    c.verdict = "unexpected";
    c.reason = defect_ok ? "Gaussianity verdict does not match b" : "sum/difference defect is not as expected";
  }
  return {f, c};
}

Lift annihilator_lift(const CharFn& f, const Subgroup& k, const Window& w) {
  if (!k.is_compact()) throw Error(ErrorCode::NonCompactSubgroup, to_string(k));
  GroupDescriptor y = dual_group(k.owner());
  Subgroup a = annihilator(y, k);
  CharFn h = zero_extension(f, a);
  Certificate c;
  c.claim = "annihilator-lift";
  c.set_fact("subgroup", to_string(k));
  c.set_fact("annihilator", to_string(a));
  c.set_fact("corwin", k.is_corwin() ? "true" : "false");
  Certificate pd = positive_definiteness(h, w);
  c.status = pd.status;
  c.verdict = pd.pass() ? "lift-pd" : "lift-not-certified";
  if (auto m = pd.margin("margin")) c.set_margin("pd_margin", *m);
  c.sub.push_back(std::move(pd));
  return {h, c};
}

}  // namespace lca
