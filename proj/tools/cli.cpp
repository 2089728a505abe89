#include "cli.hpp"

#include "lca/bochner.hpp"
#include "lca/cascade.hpp"
#include "lca/characterize.hpp"
#include "lca/error.hpp"
#include "lca/json_io.hpp"
#include "lca/structure.hpp"
#include "lca/theorems.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace lca::cli {

namespace {

// Input error raised by the front end itself.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  std::string expect;
  std::uint64_t seed = 0xD1CE;
  std::int64_t window = -1;
  std::int64_t grid = 8;
  double tol = -1.0;

  std::string group, subgroup, dist, joint, marginals, at;
  std::string a, b, coeffs, deltas, alphas, betas, phis, q;
  std::int64_t prime = 0;
  int n = 2;
  std::string qa = "1", qb = "1/100";

  bool search = false;
  std::int64_t denominator = 4, support_lo = -2, support_hi = 2, search_grid = 16;
  std::uint64_t samples = 0, budget = 20'000'000;
  int threads = 0;

  std::int64_t phi_radius = 48, sample_radius = 2, shift_radius = 2;
};

Json load(const std::string& text, const std::string& what) {
  if (text.empty()) throw Usage("--" + what + " is required");
  if (text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw Usage("cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), what);
  }
  return parse_json(text, what);
}

const Json& as_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + ": expected an array");
  return j;
}

std::vector<std::int64_t> int_list(const std::string& text, const std::string& what) {
  Json j = load(text, what);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < as_array(j, what).size(); ++i) {
    if (!j[i].is_number_integer()) throw Error(ErrorCode::ParseError, what + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(j[i].get<std::int64_t>());
  }
  return out;
}

std::vector<Homomorphism> hom_list(const std::string& text, const GroupDescriptor& g, const std::string& what) {
  Json j = load(text, what);
  std::vector<Homomorphism> out;
  for (std::size_t i = 0; i < as_array(j, what).size(); ++i)
    out.push_back(homomorphism_from_json(j[i], g, g, what + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Distribution> dist_list(const std::string& text, const GroupDescriptor& g, const std::string& what) {
  Json j = load(text, what);
  std::vector<Distribution> out;
  for (std::size_t i = 0; i < as_array(j, what).size(); ++i)
    out.push_back(distribution_from_json(j[i], g, what + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<CharFn> charfns(const std::vector<Distribution>& ds) {
  std::vector<CharFn> out;
  for (const auto& d : ds) out.push_back(char_fn(d));
  return out;
}

Rational rational_arg(const std::string& s, const std::string& what) {
  try {
    return rational_from_json(Json(s), what);
  } catch (const Error&) {
    throw Usage("--" + what + ": expected a rational such as 1/100");
  }
}

double tightened(const Options& o, double dflt) {
  if (o.tol < 0) return dflt;
  if (o.tol > dflt) throw Usage("tolerances can only be tightened below " + std::to_string(dflt));
  return o.tol;
}

std::string kebab(ErrorCode c) {
  std::string name(error_name(c)), out;
  for (char ch : name) {
    if (std::isupper(static_cast<unsigned char>(ch)) && !out.empty()) out += '-';
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

// Errors that answer the question asked rather than reject the input.
bool verdict_error(ErrorCode c) {
  return c == ErrorCode::CaseMismatch || c == ErrorCode::SupportNotSubgroup || c == ErrorCode::HypothesisNotMet ||
         c == ErrorCode::BaseEquationViolated || c == ErrorCode::StepResidual;
}

bool inconclusive_error(ErrorCode c) { return c == ErrorCode::SearchBudgetExceeded || c == ErrorCode::BochnerFail; }

Certificate error_certificate(const std::string& claim, const Error& e) {
  Certificate c;
  c.claim = claim;
  c.status = inconclusive_error(e.code()) ? Status::Inconclusive : Status::Fail;
  c.verdict = kebab(e.code());
  c.reason = e.what();
  if (!e.witness().empty()) c.witnesses.push_back(Json{{"kind", c.verdict}, {"point", Json::parse(e.witness())}});
  return c;
}

// A report is either a certificate or a plain JSON object with an optional verdict.
struct Report {
  Json body;
  std::string verdict;
  std::optional<Status> status;
};

Report from_certificate(const Certificate& c) { return {to_json(c), c.verdict, c.status}; }

void print_text(const Json& j, std::ostream& out) {
  if (j.contains("claim")) {
    out << j["claim"].get<std::string>() << ": " << j["verdict"].get<std::string>() << " ("
        << j["status"].get<std::string>() << ")\n";
    if (j.contains("reason")) out << "  reason: " << j["reason"].get<std::string>() << "\n";
    for (auto it = j["residuals"].begin(); it != j["residuals"].end(); ++it) out << "  " << it.key() << " = " << it.value().dump() << "\n";
    if (j.contains("facts"))
      for (auto it = j["facts"].begin(); it != j["facts"].end(); ++it) out << "  " << it.key() << ": " << it.value().get<std::string>() << "\n";
    if (!j["fitted_q"].is_null()) out << "  q = " << j["fitted_q"].dump() << "\n";
    for (const auto& w : j["witnesses"]) out << "  witness " << w.dump() << "\n";
    for (const auto& s : j["sub_certificates"]) {
      std::ostringstream sub;
      print_text(s, sub);
      std::istringstream lines(sub.str());
      for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
    }
    return;
  }
  out << j.dump(2) << "\n";
}

int emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.format == "text") print_text(r.body, out);
  else out << r.body.dump(2) << "\n";
  if (!o.expect.empty()) {
    bool match = o.expect == r.verdict;
    if (r.status && (o.expect == "pass" || o.expect == "fail" || o.expect == "inconclusive"))
      match = o.expect == status_name(*r.status);
    if (match) return kOk;
    return r.status == Status::Inconclusive ? kInconclusive : kMismatch;
  }
  return r.status == Status::Inconclusive ? kInconclusive : kOk;
}

GroupDescriptor group_of(const Options& o) { return group_from_json(load(o.group, "group"), "group"); }

Window dual_window(const Options& o, const GroupDescriptor& x, std::int64_t dflt) {
  return Window::box(dual_group(x), o.window > 0 ? o.window : dflt, o.grid);
}

CharFn single_charfn(const Options& o, const GroupDescriptor& x) {
  return char_fn(distribution_from_json(load(o.dist, "dist"), x, "dist"));
}

// ---------------------------------------------------------------- commands

Report cmd_dual(const Options& o) {
  GroupDescriptor x = group_of(o);
  return {Json{{"group", to_json(x)}, {"dual", to_json(dual_group(x))}}, "", {}};
}

Report cmd_annihilator(const Options& o) {
  GroupDescriptor x = group_of(o);
  Subgroup k = subgroup_from_json(load(o.subgroup, "subgroup"), x, "subgroup");
  GroupDescriptor y = dual_group(x);
  Subgroup a = annihilator(y, k);
  return {Json{{"group", to_json(y)}, {"annihilator", to_json(a)}, {"description", to_string(a)}}, "", {}};
}

Report cmd_predicates(const Options& o) {
  GroupDescriptor x = group_of(o);
  std::optional<std::int64_t> p;
  if (o.prime > 0) {
    if (!is_prime(o.prime)) throw Usage("--prime must be prime");
    p = o.prime;
  }
  StructuralPredicates sp = structural_predicates(x, p);
  Json j{{"group", to_json(x)},
         {"torsion_free", sp.torsion_free},
         {"corwin", sp.corwin},
         {"has_order2_element", sp.has_order2_element},
         {"order2_witness", sp.order2_witness ? to_json(*sp.order2_witness) : Json(nullptr)},
         {"connected_component", to_json(sp.connected_component)},
         {"order2_in_component", sp.order2_in_component}};
  if (p) {
    j["prime"] = *p;
    j["p_image_trivial"] = sp.p_image_trivial;
  }
  auto e = exponent_prime(x);
  j["exponent_prime"] = e ? Json(*e) : Json(nullptr);
  return {j, "", {}};
}

Report cmd_admissible(const Options& o) {
  GroupDescriptor x = group_of(o);
  AdmissibleResult r = is_admissible(int_list(o.coeffs, "coeffs"), x);
  std::string v = r.admissible ? "admissible" : "not-admissible";
  return {Json{{"verdict", v}, {"admissible", r.admissible},
               {"failing_index", r.failing_index ? Json(*r.failing_index + 1) : Json(nullptr)}},
          v, r.admissible ? Status::Pass : Status::Fail};
}

Report cmd_heyde(const Options& o) {
  GroupDescriptor x = group_of(o);
  HeydeResult r = heyde_condition(hom_list(o.deltas, x, "deltas"));
  std::string v = r.holds ? "holds" : "fails";
  Json w = nullptr;
  if (r.witness) w = Json{{"i", r.witness->i}, {"j", r.witness->j}, {"sign", std::string(1, r.witness->sign)}};
  return {Json{{"verdict", v}, {"holds", r.holds}, {"witness", w}}, v, r.holds ? Status::Pass : Status::Fail};
}

Report cmd_charfn(const Options& o) {
  GroupDescriptor x = group_of(o);
  CharFn f = single_charfn(o, x);
  GroupDescriptor y = dual_group(x);
  std::vector<GroupElement> pts;
  if (!o.at.empty()) {
    Json j = load(o.at, "at");
    for (std::size_t i = 0; i < as_array(j, "at").size(); ++i) pts.push_back(element_from_json(j[i], y, "at[" + std::to_string(i) + "]"));
  } else {
    pts = dual_window(o, x, 4).centered_points();
  }
  Json vals = Json::array();
  for (const auto& p : pts) {
    Complex v = f(p);
    vals.push_back(Json{{"point", to_json(p)}, {"re", round12(v.real())}, {"im", round12(v.imag())}});
  }
  return {Json{{"form", std::string(f.form_name())}, {"values", vals}}, "", {}};
}

Report cmd_pd(const Options& o) {
  GroupDescriptor x = group_of(o);
  BochnerOptions bo;
  bo.tol = tightened(o, bo.tol);
  return from_certificate(positive_definiteness(single_charfn(o, x), dual_window(o, x, 8), bo));
}

Report cmd_gaussian(const Options& o) {
  GroupDescriptor x = group_of(o);
  return from_certificate(gaussianity_check(single_charfn(o, x), dual_window(o, x, 8), tightened(o, 1e-9)));
}

Report cmd_gamma_i(const Options& o) {
  GroupDescriptor x = group_of(o);
  try {
    return from_certificate(gamma_i_membership(single_charfn(o, x), dual_window(o, x, 8), tightened(o, 1e-9)));
  } catch (const Error& e) {
    if (!verdict_error(e.code())) throw;
    return from_certificate(error_certificate("gamma-i-membership", e));
  }
}

Report cmd_qdefect(const std::string& kind, const Options& o) {
  GroupDescriptor x = group_of(o);
  Window w = dual_window(o, x, 6);
  const std::string claim = "qdefect-" + kind;
  try {
    QDefectReport r;
    if (kind == "vector") {
      GroupDescriptor xn = power(x, o.n);
      Distribution joint = distribution_from_json(load(o.joint, "joint"), xn, "joint");
      std::vector<CharFn> ms;
      if (!o.marginals.empty()) {
        ms = charfns(dist_list(o.marginals, x, "marginals"));
      } else {
        if (!joint.is_atomic()) throw Usage("--marginals is required for a spectral joint");
        for (int j = 0; j < o.n; ++j) ms.push_back(char_fn(marginal(joint, x, o.n, j)));
      }
      r = qdefect_vector(char_fn(joint), ms, w);
    } else if (kind == "forms") {
      r = qdefect_linear_forms(charfns(dist_list(o.marginals, x, "marginals")), int_list(o.a, "a"), int_list(o.b, "b"), w);
    } else if (kind == "symmetry") {
      r = qdefect_conditional_symmetry(charfns(dist_list(o.marginals, x, "marginals")), hom_list(o.alphas, x, "alphas"),
                                       hom_list(o.betas, x, "betas"), w);
    } else {
      r = qdefect_sumdiff(single_charfn(o, x), w);
    }
    return from_certificate(to_certificate(r));
  } catch (const Error& e) {
    if (!verdict_error(e.code())) throw;
    return from_certificate(error_certificate(claim, e));
  }
}

Report cmd_quartic(const Options& o) {
  auto ce = quartic_counterexample(rational_arg(o.qa, "a"), rational_arg(o.qb, "b"));
  return from_certificate(ce.cert);
}

Report cmd_lift(const Options& o) {
  GroupDescriptor x = o.group.empty() ? GroupDescriptor(0, 1) : group_of(o);
  if (x != GroupDescriptor(0, 1)) throw Usage("lift acts on the circle group");
  Subgroup k = subgroup_from_json(load(o.subgroup, "subgroup"), x, "subgroup");
  auto ce = quartic_counterexample(rational_arg(o.qa, "a"), rational_arg(o.qb, "b"));
  GroupDescriptor z(1, 0);
  std::int64_t radius = o.window > 0 ? o.window : 18;
  auto lift = annihilator_lift(ce.f, k, Window::box(z, 8));
  Certificate c;
  c.claim = "lift";
  c.set_fact("subgroup", to_string(k));
  c.set_fact("corwin", k.is_corwin() ? "true" : "false");
  c.sub.push_back(lift.cert);
  try {
    QDefectReport r = qdefect_sumdiff(lift.h, Window::box(z, radius));
    Certificate q = to_certificate(r);
    c.status = q.status;
    c.verdict = q.verdict;
    c.fitted_q = q.fitted_q;
    c.sub.push_back(std::move(q));
    c.sub.push_back(gamma_i_membership(lift.h, Window::box(z, radius)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CaseMismatch) throw;
    Certificate q = error_certificate("qdefect-sumdiff", e);
    c.status = Status::Fail;
    c.verdict = q.verdict;
    c.reason = q.reason;
    c.witnesses = q.witnesses;
    c.sub.push_back(std::move(q));
  }
  if (!lift.cert.pass() && c.status == Status::Pass) {
    c.status = lift.cert.status;
    c.reason = "lifted function is not certified positive definite";
  }
  return from_certificate(c);
}

// q such that the cascade's base equation holds exactly for polynomial phis.
PolynomialFn base_q(const std::variant<SdMode, HeydeMode>& mode, const std::vector<PolynomialFn>& phis, const GroupDescriptor& y) {
  int d = 0;
  for (const auto& p : phis) d = std::max(d, p.degree());
  GroupDescriptor y2 = product(y, y);
  Window w = Window::box(y2, std::max(d, 2) + 2);
  std::function<Complex(const GroupElement&)> q;
  if (auto* sd = std::get_if<SdMode>(&mode)) {
    q = [&phis, sd, y](const GroupElement& p) {
      auto uv = split(p, y, 2);
      Complex s = 0.0;
      for (std::size_t j = 0; j < phis.size(); ++j) {
        auto a = Homomorphism::scalar(y, sd->a[j]), b = Homomorphism::scalar(y, sd->b[j]);
        s += phis[j](a(uv[0])) + phis[j](b(uv[1])) - phis[j](a(uv[0]) + b(uv[1]));
      }
      return s;
    };
  } else {
    const auto& hm = std::get<HeydeMode>(mode);
    std::vector<Homomorphism> adj;
    for (const auto& dl : hm.deltas) adj.push_back(adjoint(dl));
    q = [&phis, adj, y](const GroupElement& p) {
      auto uv = split(p, y, 2);
      Complex s = 0.0;
      for (std::size_t j = 0; j < phis.size(); ++j) s -= phis[j](uv[0] + adj[j](uv[1])) - phis[j](uv[0] - adj[j](uv[1]));
      return s;
    };
  }
  FitResult fit = fit_polynomial(LatticeFunction(w, q), d);
  if (!fit.ok) throw Error(ErrorCode::InvalidArgument, "base defect of the given phis is not polynomial");
  return fit.poly.pruned(1e-10);
}

Json step_json(const CascadeStep& s) {
  Json surv = Json::array();
  for (const auto& t : s.surviving) surv.push_back(Json{{"term", t.name}, {"shifts", t.shifts}});
  return Json{{"kind", "step"},        {"step", s.index},           {"shift_u", to_json(s.shift_u)},
              {"shift_v", to_json(s.shift_v)}, {"eliminated", s.eliminated}, {"surviving", surv},
              {"residual", s.residual}};
}

Report cmd_cascade(const std::string& kind, const Options& o) {
  GroupDescriptor x = group_of(o);
  GroupDescriptor y = dual_group(x);
  Json pj = load(o.phis, "phis");
  std::vector<PolynomialFn> polys;
  for (std::size_t i = 0; i < as_array(pj, "phis").size(); ++i) polys.push_back(polynomial_from_json(pj[i], y, "phis[" + std::to_string(i) + "]"));
  CascadeSpec spec;
  if (kind == "sd") spec.mode = SdMode{int_list(o.a, "a"), int_list(o.b, "b")};
  else spec.mode = HeydeMode{hom_list(o.deltas, x, "deltas")};
  Window pw = Window::box(y, o.phi_radius, o.grid);
  for (const auto& p : polys) spec.phis.push_back(LatticeFunction::from_polynomial(pw, p));
  spec.q = o.q.empty() ? base_q(spec.mode, polys, y) : polynomial_from_json(load(o.q, "q"), product(y, y), "q");
  spec.seed = o.seed;
  spec.sample_radius = o.sample_radius;
  spec.shift_radius = o.shift_radius;
  spec.step_tol = tightened(o, spec.step_tol);
  Certificate c;
  c.claim = "cascade-" + kind;
  try {
    EliminationTrace tr = elimination_cascade(spec);
    double worst = 0.0;
    for (const auto& s : tr.steps) {
      worst = std::max(worst, s.residual);
      c.witnesses.push_back(step_json(s));
    }
    Json shifts = Json::array();
    for (const auto& h : tr.conclusion_shifts) shifts.push_back(to_json(h));
    c.witnesses.push_back(Json{{"kind", "conclusion"}, {"statement", tr.conclusion}, {"shifts", shifts}});
    c.set_fact("degree_l", std::to_string(tr.degree_l));
    c.set_fact("conclusion", tr.conclusion);
    c.set_margin("base_residual", tr.base_residual);
    c.set_margin("max_step_residual", worst);
    c.set_margin("terminal_residual", tr.terminal_residual);
    c.set_margin("conclusion_residual", tr.conclusion_residual);
    c.fitted_q = spec.q;
    bool ok = tr.conclusion_residual < spec.step_tol;
    c.status = ok ? Status::Pass : Status::Fail;
    c.verdict = ok ? "eliminated" : "conclusion-fails";
  } catch (const Error& e) {
    if (!verdict_error(e.code())) throw;
    return from_certificate(error_certificate(c.claim, e));
  }
  return from_certificate(c);
}

Report cmd_verify(const std::string& which, const Options& o) {
  TheoremInstance in;
  in.theorem = which == "t1" ? Theorem::T1 : which == "t2" ? Theorem::T2 : Theorem::T3;
  in.x = group_of(o);
  in.window_grid = o.grid;
  if (o.window > 0) in.window_radius = o.window;
  if (in.theorem == Theorem::T1) {
    in.a = int_list(o.a, "a");
    in.b = int_list(o.b, "b");
  } else if (in.theorem == Theorem::T2) {
    if (!o.deltas.empty()) {
      in.betas = hom_list(o.deltas, in.x, "deltas");
      in.alphas.assign(in.betas.size(), Homomorphism::identity(in.x));
    } else {
      in.alphas = hom_list(o.alphas, in.x, "alphas");
      in.betas = hom_list(o.betas, in.x, "betas");
    }
  }
  if (o.search) {
    SearchOptions so;
    so.denominator = o.denominator;
    so.support_lo = o.support_lo;
    so.support_hi = o.support_hi;
    so.grid = o.search_grid;
    so.samples = o.samples;
    so.seed = o.seed;
    so.budget = o.budget;
    so.threads = o.threads;
    if (o.tol >= 0) so.tol = tightened(o, in.x.is_finite() ? 1e-12 : 1e-9);
    in.search = so;
  } else if (in.theorem == Theorem::T3) {
    if (!o.dist.empty()) in.marginals = {distribution_from_json(load(o.dist, "dist"), in.x, "dist")};
  } else {
    in.marginals = dist_list(o.marginals, in.x, "marginals");
  }
  if (!o.search && in.marginals.empty() && !(in.theorem == Theorem::T3 && structural_predicates(in.x).order2_in_component > 0))
    throw Usage("give marginals or --search");
  try {
    return from_certificate(theorem_verdict(in));
  } catch (const Error& e) {
    if (!verdict_error(e.code()) && !inconclusive_error(e.code())) throw;
    return from_certificate(error_certificate("theorem-" + which, e));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Characterization checks on groups Z^a x T^b x F", "lca-char"};
  app.require_subcommand(1);

  std::function<int()> action;
  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--expect", o.expect, "expected verdict, or pass/fail/inconclusive");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--window", o.window, "window radius on Z coordinates of the dual");
    s->add_option("--grid", o.grid, "circle grid of the dual window");
    s->add_option("--tol", o.tol, "tighter tolerance");
    s->add_option("--group", o.group, "group JSON or @file");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Report()> fn) {
    CLI::App* s = parent->add_subcommand(name, help);
    common(s);
    s->callback([&action, fn, &o, &out] { action = [fn, &o, &out] { return emit(fn(), o, out); }; });
    return s;
  };

  leaf(&app, "dual", "dual group", [&] { return cmd_dual(o); });
  leaf(&app, "annihilator", "annihilator of a subgroup", [&] { return cmd_annihilator(o); })
      ->add_option("--subgroup", o.subgroup, "subgroup JSON");
  leaf(&app, "predicates", "structural predicates", [&] { return cmd_predicates(o); })->add_option("--prime", o.prime);
  leaf(&app, "admissible", "admissibility of integer coefficients", [&] { return cmd_admissible(o); })
      ->add_option("--coeffs", o.coeffs, "integer list");
  leaf(&app, "heyde-cond", "delta_i +- delta_j are automorphisms", [&] { return cmd_heyde(o); })
      ->add_option("--deltas", o.deltas, "list of homomorphisms");
  {
    auto* s = leaf(&app, "charfn", "characteristic function values", [&] { return cmd_charfn(o); });
    s->add_option("--dist", o.dist, "distribution JSON");
    s->add_option("--at", o.at, "list of dual points");
  }
  leaf(&app, "pd-check", "positive definiteness certificate", [&] { return cmd_pd(o); })->add_option("--dist", o.dist);
  leaf(&app, "gaussian-check", "Gaussianity certificate", [&] { return cmd_gaussian(o); })->add_option("--dist", o.dist);
  leaf(&app, "gamma-i-check", "membership in Gaussian * idempotent", [&] { return cmd_gamma_i(o); })->add_option("--dist", o.dist);

  CLI::App* qd = app.add_subcommand("qdefect", "defect polynomial extraction");
  qd->require_subcommand(1);
  {
    auto* s = leaf(qd, "vector", "joint law against its marginals", [&] { return cmd_qdefect("vector", o); });
    s->add_option("--joint", o.joint);
    s->add_option("--marginals", o.marginals);
    s->add_option("--n", o.n);
    s = leaf(qd, "forms", "two integer linear forms", [&] { return cmd_qdefect("forms", o); });
    s->add_option("--marginals", o.marginals);
    s->add_option("--a", o.a);
    s->add_option("--b", o.b);
    s = leaf(qd, "symmetry", "conditional symmetry of two forms", [&] { return cmd_qdefect("symmetry", o); });
    s->add_option("--marginals", o.marginals);
    s->add_option("--alphas", o.alphas);
    s->add_option("--betas", o.betas);
    s = leaf(qd, "sumdiff", "sum and difference of two copies", [&] { return cmd_qdefect("sumdiff", o); });
    s->add_option("--dist", o.dist);
  }

  CLI::App* ce = app.add_subcommand("counterexample", "certified counterexamples");
  ce->require_subcommand(1);
  {
    auto* s = leaf(ce, "quartic", "exp(-a n^2 - b n^4) on the circle", [&] { return cmd_quartic(o); });
    s->add_option("--a", o.qa);
    s->add_option("--b", o.qb);
  }
  {
    auto* s = leaf(&app, "lift", "zero extension of the quartic along A(Y, K)", [&] { return cmd_lift(o); });
    s->add_option("--subgroup", o.subgroup);
    s->add_option("--a", o.qa);
    s->add_option("--b", o.qb);
  }

  CLI::App* cs = app.add_subcommand("cascade", "finite-difference elimination replay");
  cs->require_subcommand(1);
  for (std::string kind : {"sd", "heyde"}) {
    auto* s = leaf(cs, kind, kind == "sd" ? "integer linear forms" : "automorphism forms", [&o, kind] { return cmd_cascade(kind, o); });
    s->add_option("--phis", o.phis, "list of polynomials on the dual");
    s->add_option("--q", o.q, "defect polynomial on the dual squared");
    s->add_option("--phi-radius", o.phi_radius);
    s->add_option("--sample-radius", o.sample_radius);
    s->add_option("--shift-radius", o.shift_radius);
    if (kind == "sd") {
      s->add_option("--a", o.a);
      s->add_option("--b", o.b);
    } else {
      s->add_option("--deltas", o.deltas);
    }
  }

  CLI::App* vf = app.add_subcommand("verify", "theorem verdicts");
  vf->require_subcommand(1);
  for (std::string which : {"t1", "t2", "t3"}) {
    auto* s = leaf(vf, which, "theorem " + which.substr(1), [&o, which] { return cmd_verify(which, o); });
    s->add_flag("--search", o.search, "brute-force search instead of explicit marginals");
    s->add_option("--denominator", o.denominator);
    s->add_option("--support-lo", o.support_lo);
    s->add_option("--support-hi", o.support_hi);
    s->add_option("--search-grid", o.search_grid);
    s->add_option("--samples", o.samples);
    s->add_option("--budget", o.budget);
    s->add_option("--threads", o.threads);
    s->add_option("--marginals", o.marginals);
    s->add_option("--dist", o.dist);
    if (which == "t1") {
      s->add_option("--a", o.a);
      s->add_option("--b", o.b);
    } else if (which == "t2") {
      s->add_option("--deltas", o.deltas);
      s->add_option("--alphas", o.alphas);
      s->add_option("--betas", o.betas);
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }
  if (!action) {
    err << "no command\n";
    return kInputError;
  }
  try {
    return action();
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (!e.witness().empty()) err << "witness: " << e.witness() << "\n";
    return inconclusive_error(e.code()) ? kInconclusive : kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace lca::cli
