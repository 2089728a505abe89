#include "lca/cascade.hpp"

#include "lca/error.hpp"
#include "lca/window.hpp"

#include <algorithm>
#include <random>

namespace lca {

namespace {

struct Component {
  std::size_t j;  // index into phis
  Homomorphism a, b;
};

struct Term {
  std::string name;
  double sign = 1.0;
  std::vector<Component> parts;  // empty for the q term
  bool is_q = false;
  std::vector<std::pair<GroupElement, GroupElement>> shifts;  // (sigma_u, sigma_v) per step
};

class Engine {
 public:
  Engine(const CascadeSpec& spec, GroupDescriptor y) : spec_(spec), y_(std::move(y)) {}

  // Delta_{s_1} ... Delta_{s_r} phi_j at w.
  double diff_phi(std::size_t j, const GroupElement& w, const std::vector<GroupElement>& s) const {
    const LatticeFunction& f = spec_.phis[j];
    double sum = 0.0;
    const std::size_t r = s.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
      GroupElement p = w;
      int bits = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (mask >> i & 1) {
          p += s[i];
          ++bits;
        }
      if (!f.domain().contains(p))
        throw Error(ErrorCode::WindowExhausted, "phi_" + std::to_string(j + 1) + " needed at " + to_string(p));
      double v = f(p).real();
      sum += ((r - bits) % 2 ? -v : v);
    }
    return sum;
  }

  double diff_q(const GroupElement& u, const GroupElement& v, const std::vector<std::pair<GroupElement, GroupElement>>& s) const {
    double sum = 0.0;
    const std::size_t r = s.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
      GroupElement pu = u, pv = v;
      int bits = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (mask >> i & 1) {
          pu += s[i].first;
          pv += s[i].second;
          ++bits;
        }
      double val = spec_.q(concat(pu, pv)).real();
      sum += ((r - bits) % 2 ? -val : val);
    }
    return sum;
  }

  static std::vector<GroupElement> effective(const Component& c, const Term& t) {
    std::vector<GroupElement> out;
    for (const auto& [su, sv] : t.shifts) out.push_back(c.a(su) + c.b(sv));
    return out;
  }

  static bool alive(const Component& c, const Term& t) {
    for (const auto& e : effective(c, t))
      if (e.is_zero()) return false;
    return true;
  }

  double eval(const Term& t, const GroupElement& u, const GroupElement& v) const {
    if (t.is_q) return t.sign * diff_q(u, v, t.shifts);
    double sum = 0.0;
    for (const auto& c : t.parts) {
      if (!alive(c, t)) continue;
      sum += diff_phi(c.j, c.a(u) + c.b(v), effective(c, t));
    }
    return t.sign * sum;
  }

  double residual(const std::vector<Term>& terms, std::optional<std::pair<GroupElement, GroupElement>>* worst = nullptr) const {
    Window box = Window::box(product(y_, y_), spec_.sample_radius);
    double r = 0.0;
    for (const auto& p : box.points()) {
      auto uv = split(p, y_, 2);
      double s = 0.0;
      for (const auto& t : terms) s += eval(t, uv[0], uv[1]);
      if (std::abs(s) > r) {
        r = std::abs(s);
        if (worst) *worst = std::make_pair(uv[0], uv[1]);
      }
    }
    return r;
  }

 private:
  const CascadeSpec& spec_;
  GroupDescriptor y_;
};

GroupElement random_element(const GroupDescriptor& g, std::mt19937_64& rng, std::int64_t radius, bool nonzero) {
  for (;;) {
    std::vector<std::int64_t> z, f;
    std::vector<Rational> t;
    for (int i = 0; i < g.z_rank; ++i) z.push_back(std::uniform_int_distribution<std::int64_t>(-radius, radius)(rng));
    for (int i = 0; i < g.t_rank; ++i) t.emplace_back(std::uniform_int_distribution<std::int64_t>(0, 7)(rng), 8);
    for (auto n : g.finite_orders) f.push_back(std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng));
    GroupElement x(g, z, t, f);
    if (!nonzero || !x.is_zero()) return x;
  }
}

std::string shift_text(const GroupElement& x) { return to_string(x); }

std::string term_name_sd(std::size_t j, std::int64_t a, std::int64_t b) {
  return "phi_" + std::to_string(j + 1) + "(" + std::to_string(a) + "u + " + std::to_string(b) + "v)";
}

}  // namespace

EliminationTrace elimination_cascade(const CascadeSpec& spec) {
  if (spec.phis.empty()) throw Error(ErrorCode::InvalidArgument, "cascade needs at least one phi");
  const GroupDescriptor y = spec.phis.front().domain().group();
  for (const auto& f : spec.phis)
    if (f.domain().group() != y) throw Error(ErrorCode::MismatchedGroups, "phis live on different groups");
  if (spec.q.dual_owner() != product(y, y)) throw Error(ErrorCode::MismatchedGroups, "q must live on Y^2");
  const std::size_t n = spec.phis.size();
  const GroupElement zero = GroupElement::zero(y);
  Engine engine(spec, y);
  EliminationTrace trace;
  trace.degree_l = spec.q.degree();

  std::vector<Term> terms;
  Term qt;
  qt.name = "q(u,v)";
  qt.is_q = true;
  terms.push_back(qt);

  const bool sd = std::holds_alternative<SdMode>(spec.mode);
  std::vector<Homomorphism> adj;
  if (sd) {
    const auto& m = std::get<SdMode>(spec.mode);
    if (m.a.size() != n || m.b.size() != n) throw Error(ErrorCode::InvalidArgument, "a, b and phis differ in length");
    Term p{"P(u)", -1.0, {}, false, {}}, qq{"Q(v)", -1.0, {}, false, {}};
    for (std::size_t j = 0; j < n; ++j) {
      auto sa = Homomorphism::scalar(y, m.a[j]), sb = Homomorphism::scalar(y, m.b[j]), z0 = Homomorphism::scalar(y, 0);
      terms.push_back(Term{term_name_sd(j, m.a[j], m.b[j]), 1.0, {Component{j, sa, sb}}, false, {}});
      p.parts.push_back(Component{j, sa, z0});
      qq.parts.push_back(Component{j, z0, sb});
    }
    terms.push_back(p);
    terms.push_back(qq);
    trace.mode = "sd";
  } else {
    const auto& m = std::get<HeydeMode>(spec.mode);
    if (m.deltas.size() != n) throw Error(ErrorCode::InvalidArgument, "deltas and phis differ in length");
    for (const auto& d : m.deltas) {
      if (!d.is_automorphism()) throw Error(ErrorCode::NotAnAutomorphism, to_string(d));
      adj.push_back(adjoint(d));
      if (adj.back().domain() != y) throw Error(ErrorCode::MismatchedGroups, "deltas are not on the predual of Y");
    }
    auto id = Homomorphism::identity(y);
    for (std::size_t j = 0; j < n; ++j) {
      std::string s = std::to_string(j + 1);
      terms.push_back(Term{"phi_" + s + "(u + d_" + s + " v)", 1.0, {Component{j, id, adj[j]}}, false, {}});
      terms.push_back(Term{"phi_" + s + "(u - d_" + s + " v)", -1.0, {Component{j, id, -adj[j]}}, false, {}});
    }
    trace.mode = "heyde";
  }

  std::optional<std::pair<GroupElement, GroupElement>> worst;
  trace.base_residual = engine.residual(terms, &worst);
  if (trace.base_residual >= spec.base_tol)
    throw Error(ErrorCode::BaseEquationViolated,
                "residual " + std::to_string(trace.base_residual) + " at (" + to_string(worst->first) + ", " +
                    to_string(worst->second) + ")");

  // Shift schedule.
  std::mt19937_64 rng(spec.seed);
  const std::size_t steps = sd ? n + 1 : 2 * n - 1;
  const std::size_t needed = sd ? n + 1 : 2 * n + 1;
  std::vector<GroupElement> sched = spec.shifts;
  if (!sched.empty() && sched.size() != needed)
    throw Error(ErrorCode::InvalidArgument, "explicit schedule needs " + std::to_string(needed) + " shifts");
  while (sched.size() < needed) sched.push_back(random_element(y, rng, spec.shift_radius, true));

  auto apply_step = [&](int index, const GroupElement& su, const GroupElement& sv) {
    CascadeStep st;
    st.index = index;
    st.shift_u = su;
    st.shift_v = sv;
    std::vector<Term> next;
    for (auto t : terms) {
      t.shifts.emplace_back(su, sv);
      bool live = t.is_q ? !(su.is_zero() && sv.is_zero()) : false;
      for (const auto& c : t.parts) live = live || Engine::alive(c, t);
      if (!live) {
        st.eliminated.push_back(t.name);
        continue;
      }
      TermTrace tt{t.name, {}};
      if (t.is_q)
        for (const auto& [a, b] : t.shifts) tt.shifts.push_back("(" + shift_text(a) + ", " + shift_text(b) + ")");
      else if (t.parts.size() == 1)
        for (const auto& e : Engine::effective(t.parts.front(), t)) tt.shifts.push_back(shift_text(e));
      else
        for (const auto& [a, b] : t.shifts) tt.shifts.push_back(shift_text(a.is_zero() ? b : a));
      st.surviving.push_back(tt);
      next.push_back(std::move(t));
    }
    terms = std::move(next);
    st.residual = engine.residual(terms);
    if (st.residual >= spec.step_tol)
      throw Error(ErrorCode::StepResidual, "step " + std::to_string(index) + " residual " + std::to_string(st.residual));
    trace.steps.push_back(std::move(st));
  };

  if (sd) {
    const auto& m = std::get<SdMode>(spec.mode);
    // h_n, ..., h_1: substitute u + b_m h_m, v - a_m h_m.
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t mi = n - 1 - p;
      const GroupElement& h = sched[p];
      apply_step(static_cast<int>(p + 1), m.b[mi] * h, -(m.a[mi] * h));
    }
    apply_step(static_cast<int>(n + 1), sched[n], zero);
    trace.terminal_residual = trace.steps.back().residual;
    // Delta_h^{l+n+2} P(u) = 0.
    const GroupElement& h = sched[n];
    const int order = trace.degree_l + static_cast<int>(n) + 2;
    Term p{"P", 1.0, {}, false, {}};
    for (std::size_t j = 0; j < n; ++j)
      p.parts.push_back(Component{j, Homomorphism::scalar(y, m.a[j]), Homomorphism::scalar(y, 0)});
    for (int i = 0; i < order; ++i) p.shifts.emplace_back(h, zero);
    trace.conclusion = "Delta_h^" + std::to_string(order) + " P(u) = 0";
    trace.conclusion_shifts = {h};
    Window box = Window::box(y, spec.sample_radius);
    for (const auto& u : box.points())
      trace.conclusion_residual = std::max(trace.conclusion_residual, std::abs(engine.eval(p, u, zero)));
  } else {
    // Steps 1..n remove the minus terms, n+1..2n-1 remove plus terms for phi_n, ..., phi_2.
    for (std::size_t p = 1; p <= steps; ++p) {
      const GroupElement& k = sched[p - 1];
      GroupElement h = p <= n ? adj[n - p](k) : -adj[2 * n - p](k);
      apply_step(static_cast<int>(p), h, k);
    }
    trace.terminal_residual = trace.steps.back().residual;
    // Delta_{2k} Delta_h^{2n+l-1} phi_1(u) = 0.
    const GroupElement& h = sched[steps];
    const GroupElement& k = sched[steps + 1];
    const int order = static_cast<int>(2 * n) + trace.degree_l - 1;
    std::vector<GroupElement> s{2 * k};
    for (int i = 0; i < order; ++i) s.push_back(h);
    trace.conclusion = "Delta_{2k} Delta_h^" + std::to_string(order) + " phi_1(u) = 0";
    trace.conclusion_shifts = {h, k};
    Window box = Window::box(y, spec.sample_radius);
    for (const auto& u : box.points())
      trace.conclusion_residual = std::max(trace.conclusion_residual, std::abs(engine.diff_phi(0, u, s)));
  }
  return trace;
}

}  // namespace lca
