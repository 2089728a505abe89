#include "lca/bochner.hpp"

#include "lca/error.hpp"
#include "lca/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lca {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double compact_order(const GroupDescriptor& g) {
  double n = 1.0;
  for (auto m : g.finite_orders) n *= static_cast<double>(m);
  return n;
}

// Coefficients of p(c + m) in m, for p given by coefficients in ascending order.
std::vector<double> taylor_shift(const std::vector<double>& p, double c) {
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t d = 0; d < p.size(); ++d) {
    // (c + m)^d = sum_k C(d,k) c^(d-k) m^k
    double binom = 1.0;
    for (std::size_t k = 0; k <= d; ++k) {
      out[k] += p[d] * binom * std::pow(c, static_cast<double>(d - k));
      binom = binom * static_cast<double>(d - k) / static_cast<double>(k + 1);
    }
  }
  return out;
}

double eval(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (std::size_t d = p.size(); d-- > 0;) v = v * x + p[d];
  return v;
}

// Sum over n > N of exp(-psi(n)), or empty if psi is not eventually convex and increasing past N.
std::optional<double> one_sided_tail(const std::vector<double>& psi, std::int64_t n) {
  double a = static_cast<double>(n + 1);
  // Second difference shifted to start at N+1 must have nonnegative coefficients.
  std::vector<double> d2(psi.size(), 0.0);
  auto s0 = taylor_shift(psi, a), s1 = taylor_shift(psi, a + 1), s2 = taylor_shift(psi, a + 2);
  for (std::size_t k = 0; k < psi.size(); ++k) d2[k] = s2[k] - 2.0 * s1[k] + s0[k];
  for (double c : d2)
    if (c < -1e-12) return std::nullopt;
  double step = eval(psi, a + 1) - eval(psi, a);
  if (step <= 0) return std::nullopt;
  return std::exp(-eval(psi, a)) / (1.0 - std::exp(-step));
}

std::optional<double> exp_poly_tail(const ExpPolyForm& e, const GroupDescriptor& y, std::int64_t n) {
  double per_point = compact_order(y);
  if (e.phi.is_zero()) return std::nullopt;
  if (y.z_rank == 1) {
    int deg = e.phi.degree();
    std::vector<double> right(deg + 1, 0.0), left(deg + 1, 0.0);
    for (const auto& [alpha, c] : e.phi.coeffs()) {
      right[alpha[0]] = c.real();
      left[alpha[0]] = (alpha[0] % 2 ? -1.0 : 1.0) * c.real();
    }
    auto r = one_sided_tail(right, n), l = one_sided_tail(left, n);
    if (!r || !l) return std::nullopt;
    return per_point * (*r + *l);
  }
  if (y.z_rank == 2) {
    double a = 0, b = 0, c = 0;
    for (const auto& [alpha, v] : e.phi.coeffs()) {
      if (alpha[0] + alpha[1] != 2) return std::nullopt;
      if (alpha[0] == 2) a = v.real();
      else if (alpha[1] == 2) c = v.real();
      else b = v.real();
    }
    double lambda = (a + c) / 2.0 - std::sqrt((a - c) * (a - c) / 4.0 + b * b / 4.0);
    if (lambda <= 0) return std::nullopt;
    auto t1 = one_sided_tail({0.0, 0.0, lambda}, n);
    if (!t1) return std::nullopt;
    double s_n = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) s_n += 2.0 * std::exp(-lambda * static_cast<double>(k * k));
    double s_all = s_n + 2.0 * *t1;
    return per_point * (s_all * s_all - s_n * s_n);
  }
  return std::nullopt;
}


Certificate structural_pass(const std::string& route) {
  Certificate c;
  c.claim = "bochner";
  c.status = Status::Pass;
  c.verdict = "pd-pass";
  c.set_fact("route", route);
  return c;
}

std::optional<Certificate> structural(const CharFn& f) {
  return std::visit(
      overloaded{[](const AtomicForm& a) -> std::optional<Certificate> {
                   for (const auto& w : a.weights)
                     if (w < 0) return std::nullopt;
                   auto c = structural_pass("atomic");
                   Rational lo = a.weights.empty() ? Rational(0) : *std::min_element(a.weights.begin(), a.weights.end());
                   c.set_fact("min_mass", to_string(lo));
                   return c;
                 },
                 [](const IndicatorForm&) -> std::optional<Certificate> { return structural_pass("indicator"); },
                 [](const ExpPolyForm& e) -> std::optional<Certificate> {
                   if (e.phi.is_zero()) return structural_pass("point-mass");
                   return std::nullopt;
                 },
                 [](const ProductForm& p) -> std::optional<Certificate> {
                   for (const auto& g : p.factors)
                     if (!structural(g)) return std::nullopt;
                   return structural_pass("product");
                 },
                 [](const auto&) -> std::optional<Certificate> { return std::nullopt; }},
      f.node().form);
}

Certificate finite_route(const CharFn& f, const BochnerOptions& opts) {
  Certificate c;
  c.claim = "bochner";
  c.set_fact("route", "inverse-transform");
  auto masses = inverse_transform(f);
  double lo = 1e300;
  double imag = 0.0;
  const GroupElement* where = nullptr;
  for (const auto& [x, m] : masses) {
    imag = std::max(imag, std::abs(m.imag()));
    if (m.real() < lo) {
      lo = m.real();
      where = &x;
    }
  }
  c.set_margin("min_mass", lo);
  c.set_margin("max_imag", imag);
  c.witnesses.push_back(Json{{"kind", "min_mass"}, {"point", to_json(*where)}, {"mass", lo}});
  bool ok = lo >= -opts.tol;
  c.status = ok ? Status::Pass : Status::Fail;
  c.verdict = ok ? "pd-pass" : "pd-fail";
  if (!ok) c.reason = "negative mass at " + to_string(*where);
  return c;
}

Certificate density_route(const CharFn& f, const Window& window, const BochnerOptions& opts) {
  const GroupDescriptor& y = f.dual_owner();
  const GroupDescriptor x = dual_group(y);
  const int k = y.z_rank;
  const std::int64_t n = window.radius();
  const std::int64_t g = k == 1 ? opts.grid_1d : opts.grid_2d;
  Certificate c;
  c.claim = "bochner";
  c.set_fact("route", "density");
  c.set_fact("truncation", std::to_string(n));
  c.set_fact("grid", std::to_string(g));

  if (std::holds_alternative<TableForm>(f.node().form))
    throw Error(ErrorCode::TailBoundUnavailable, "table forms carry no decay information");
  auto tail = tail_bound(f, n);
  if (!tail) {
    c.status = Status::Inconclusive;
    c.verdict = "inconclusive";
    c.reason = "no rigorous tail bound for " + f.form_name() + " form";
    return c;
  }

  GroupDescriptor fin(0, 0, y.finite_orders);
  std::vector<GroupElement> compact = enumerate(fin);
  // Coefficient table: for each lattice point n and each x_f, sum over y_f of f(n, y_f) conj((x_f, y_f)).
  const std::int64_t side = 2 * n + 1;
  const std::size_t lattice = static_cast<std::size_t>(k == 1 ? side : side * side);
  std::vector<std::vector<Complex>> coef(compact.size(), std::vector<Complex>(lattice, 0.0));
  double lipschitz = 0.0;
  for (std::size_t li = 0; li < lattice; ++li) {
    std::vector<std::int64_t> z;
    if (k == 1)
      z = {static_cast<std::int64_t>(li) - n};
    else
      z = {static_cast<std::int64_t>(li) / side - n, static_cast<std::int64_t>(li) % side - n};
    double norm1 = 0;
    for (auto v : z) norm1 += static_cast<double>(std::abs(v));
    double mass = 0.0;
    for (const auto& yf : compact) {
      GroupElement pt(y, z, {}, yf.f());
      Complex v = f(pt);
      mass += std::abs(v);
      for (std::size_t xi = 0; xi < compact.size(); ++xi) coef[xi][li] += v * std::conj(pair(compact[xi], yf));
    }
    lipschitz += norm1 * mass;
  }

  double lo = 1e300;
  double imag = 0.0;
  std::vector<std::int64_t> lo_at;
  std::size_t lo_f = 0;
  for (std::size_t xi = 0; xi < compact.size(); ++xi) {
    if (k == 1) {
      for (std::int64_t j = 0; j < g; ++j) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(g);
        Complex d = 0.0;
        for (std::int64_t m = -n; m <= n; ++m)
          d += coef[xi][static_cast<std::size_t>(m + n)] * std::polar(1.0, static_cast<double>(m) * theta);
        imag = std::max(imag, std::abs(d.imag()));
        if (d.real() < lo) {
          lo = d.real();
          lo_at = {j};
          lo_f = xi;
        }
      }
    } else {
      // Separable synthesis: first along the second axis, then the first.
      std::vector<std::vector<Complex>> partial(static_cast<std::size_t>(side), std::vector<Complex>(g, 0.0));
      for (std::int64_t a = 0; a < side; ++a)
        for (std::int64_t j2 = 0; j2 < g; ++j2) {
          double t2 = 2.0 * std::numbers::pi * static_cast<double>(j2) / static_cast<double>(g);
          Complex s = 0.0;
          for (std::int64_t b = 0; b < side; ++b)
            s += coef[xi][static_cast<std::size_t>(a * side + b)] * std::polar(1.0, static_cast<double>(b - n) * t2);
          partial[a][j2] = s;
        }
      for (std::int64_t j1 = 0; j1 < g; ++j1) {
        double t1 = 2.0 * std::numbers::pi * static_cast<double>(j1) / static_cast<double>(g);
        std::vector<Complex> phase(side);
        for (std::int64_t a = 0; a < side; ++a) phase[a] = std::polar(1.0, static_cast<double>(a - n) * t1);
        for (std::int64_t j2 = 0; j2 < g; ++j2) {
          Complex d = 0.0;
          for (std::int64_t a = 0; a < side; ++a) d += partial[a][j2] * phase[a];
          imag = std::max(imag, std::abs(d.imag()));
          if (d.real() < lo) {
            lo = d.real();
            lo_at = {j1, j2};
            lo_f = xi;
          }
        }
      }
    }
  }
  double slack = lipschitz * std::numbers::pi / static_cast<double>(g);
  double margin = lo - *tail - slack;
  std::vector<Rational> turns;
  for (auto j : lo_at) turns.emplace_back(j, g);
  GroupElement where(x, {}, turns, compact[lo_f].f());
  c.set_margin("min_density", lo);
  c.set_margin("tail_bound", *tail);
  c.set_margin("slack", slack);
  c.set_margin("margin", margin);
  c.set_margin("max_imag", imag);
  c.witnesses.push_back(Json{{"kind", "min_location"}, {"point", to_json(where)}, {"density", lo}});
  if (margin > opts.tol) {
    c.status = Status::Pass;
    c.verdict = "pd-pass";
  } else if (lo + *tail < -opts.tol) {
    c.status = Status::Fail;
    c.verdict = "pd-fail";
    c.reason = "density is negative at " + to_string(where);
  } else {
    c.status = Status::Inconclusive;
    c.verdict = "inconclusive";
    c.reason = "margin within tolerance of zero";
  }
  return c;
}

}  // namespace

std::vector<std::pair<GroupElement, Complex>> inverse_transform(const CharFn& f) {
  const GroupDescriptor& y = f.dual_owner();
  if (!y.is_finite()) throw Error(ErrorCode::InvalidArgument, "inverse transform needs a finite group");
  GroupDescriptor x = dual_group(y);
  auto ys = enumerate(y);
  std::vector<Complex> vals;
  for (const auto& p : ys) vals.push_back(f(p));
  std::vector<std::pair<GroupElement, Complex>> out;
  double scale = 1.0 / static_cast<double>(ys.size());
  for (const auto& p : enumerate(x)) {
    Complex m = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) m += vals[i] * std::conj(pair(p, ys[i]));
    out.emplace_back(p, m * scale);
  }
  return out;
}

std::optional<double> tail_bound(const CharFn& f, std::int64_t n_trunc) {
  const GroupDescriptor& y = f.dual_owner();
  if (y.t_rank != 0) return std::nullopt;
  return std::visit(
      overloaded{[&](const ExpPolyForm& e) -> std::optional<double> {
                   if (e.phi.is_zero()) return std::nullopt;
                   return exp_poly_tail(e, y, n_trunc);
                 },
                 [&](const ZeroExtensionForm& z) -> std::optional<double> {
                   const GroupDescriptor& a = z.iso->abstract_group();
                   std::int64_t scale = 1;
                   for (int i = 0; i < a.z_rank; ++i) scale = std::max(scale, z.iso->z_scale(i));
                   if (a.z_rank == 0) return 0.0;
                   auto inner = tail_bound(z.inner, n_trunc / scale);
                   if (!inner) return std::nullopt;
                   return inner;
                 },
                 [&](const ProductForm& p) -> std::optional<double> {
                   std::optional<double> best;
                   for (const auto& g : p.factors)
                     if (auto t = tail_bound(g, n_trunc)) best = best ? std::min(*best, *t) : *t;
                   return best;
                 },
                 [](const auto&) -> std::optional<double> { return std::nullopt; }},
      f.node().form);
}

Certificate positive_definiteness(const CharFn& f, const Window& window, const BochnerOptions& opts) {
  if (window.group() != f.dual_owner())
    throw Error(ErrorCode::MismatchedGroups, "window is not on the function's group");
  // Normalization and Hermitian symmetry on the window.
  GroupElement zero = GroupElement::zero(f.dual_owner());
  Certificate bad;
  bad.claim = "bochner";
  bad.status = Status::Fail;
  bad.verdict = "pd-fail";
  if (std::abs(f(zero) - 1.0) > 1e-12) {
    bad.reason = "f(0) != 1";
    bad.witnesses.push_back(Json{{"kind", "normalization"}, {"point", to_json(zero)}});
    return bad;
  }
  for (const auto& p : window.points()) {
    if (!window.contains(-p)) continue;
    if (std::abs(f(-p) - std::conj(f(p))) > 1e-12) {
      bad.reason = "not Hermitian at " + to_string(p);
      bad.witnesses.push_back(Json{{"kind", "hermitian"}, {"point", to_json(p)}});
      return bad;
    }
  }
  if (auto s = structural(f)) return *s;
  if (f.dual_owner().is_finite()) return finite_route(f, opts);
  if (f.dual_owner().t_rank == 0 && (f.dual_owner().z_rank == 1 || f.dual_owner().z_rank == 2))
    return density_route(f, window, opts);
  Certificate c;
  c.claim = "bochner";
  c.status = Status::Inconclusive;
  c.verdict = "inconclusive";
  c.reason = "no certification route for " + f.form_name() + " on " + to_string(f.dual_owner());
  return c;
}

}  // namespace lca
