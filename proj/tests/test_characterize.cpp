#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lca/bochner.hpp"
#include "lca/characterize.hpp"
#include "lca/distribution.hpp"
#include "lca/error.hpp"
#include "lca/json_io.hpp"
#include "lca/theorems.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace lca;

namespace {

const GroupDescriptor kZ(1, 0), kT(0, 1), kZ2(2, 0), kT2(0, 2);

CharFn gaussian_on_z(double sigma, Rational shift = 0) {
  return exp_poly_charfn(GroupElement(kT, {}, {shift}, {}), PolynomialFn(kZ, {{{2}, sigma}}));
}

CharFn quartic(double a, double b) {
  return exp_poly_charfn(GroupElement::zero(kT), PolynomialFn(kZ, {{{2}, a}, {{4}, b}}));
}

GroupElement z(std::int64_t n) { return GroupElement(kZ, {n}, {}, {}); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

Json witness_pair(const Certificate& c) {
  REQUIRE_FALSE(c.witnesses.empty());
  return c.witnesses.front();
}

GroupDescriptor cyclic(std::int64_t n) { return GroupDescriptor(0, 0, {n}); }

Distribution on_cyclic(std::int64_t n, const std::vector<Rational>& w) {
  GroupDescriptor g = cyclic(n);
  std::vector<GroupElement> pts;
  std::vector<Rational> ws;
  for (std::size_t i = 0; i < w.size(); ++i) {
    pts.emplace_back(g, std::vector<std::int64_t>{}, std::vector<Rational>{}, std::vector<std::int64_t>{std::int64_t(i)});
    ws.push_back(w[i]);
  }
  return Distribution::atomic(g, pts, ws);
}

// All weight vectors on k points with entries in (1/den) Z summing to 1.
std::vector<std::vector<Rational>> compositions(int k, int den) {
  std::vector<std::vector<Rational>> out;
  std::vector<int> c(k, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      c[i] = left;
      std::vector<Rational> w;
      for (int v : c) w.emplace_back(v, den);
      out.push_back(w);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, den);
  return out;
}

}  // namespace

TEST_CASE("gaussianity of Gaussians, quartics and point masses") {
  Window w = Window::box(kZ, 8);
  for (double s : {0.0, 0.3, 1.0, 5.0}) {
    Certificate c = gaussianity_check(gaussian_on_z(s, Rational(1, 3)), w);
    CHECK(c.pass());
    CHECK(c.verdict == "gaussian");
    CHECK(*c.margin("max_residual") < 1e-9);
  }
  for (double b : {0.01, 0.05, 0.25}) {
    Certificate c = gaussianity_check(quartic(1.0, b), w);
    CHECK_FALSE(c.pass());
    Json wj = witness_pair(c);
    CHECK(wj["u"] == to_json(z(1)));
    CHECK(wj["v"] == to_json(z(1)));
    CHECK(std::abs(*c.margin("witness_residual") - 12.0 * b) < 1e-9);
  }
  // a point mass at 2/5 on T has |f| = 1 and a character for its phase
  CharFn delta = atomic_transform(kT, {GroupElement(kT, {}, {Rational(2, 5)}, {})}, {Rational(1)});
  Certificate c = gaussianity_check(delta, w);
  CHECK(c.pass());
  CHECK(*c.margin("min_phi") > -1e-12);
  CHECK(*c.margin("max_residual") < 1e-12);

  CharFn vanish = atomic_transform(kT, {GroupElement(kT, {}, {Rational(0)}, {}), GroupElement(kT, {}, {Rational(1, 2)}, {})},
                                   {Rational(1, 2), Rational(1, 2)});
  CHECK(code_of([&] { gaussianity_check(vanish, w); }) == ErrorCode::VanishingValue);
}

TEST_CASE("Gaussian closure under products") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Window w = Window::box(kZ2, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto quad = [&] {
      double p = u(rng), r = u(rng), c = std::sqrt(p * r) * (u(rng) - 1.0);
      return PolynomialFn(kZ2, {{{2, 0}, p}, {{1, 1}, c}, {{0, 2}, r}});
    };
    GroupElement s1(kT2, {}, {Rational(trial % 7, 7), Rational(1, 3)}, {});
    GroupElement s2(kT2, {}, {Rational(1, 4), Rational(trial % 5, 5)}, {});
    CharFn f = exp_poly_charfn(s1, quad()), g = exp_poly_charfn(s2, quad());
    REQUIRE(gaussianity_check(f, w).pass());
    REQUIRE(gaussianity_check(g, w).pass());
    CHECK(gaussianity_check(product_charfn({f, g}), w).pass());
  }
}

TEST_CASE("unit-modulus functions on a finite dual are Gaussian iff characters") {
  GroupDescriptor y = cyclic(5);
  Window w = Window::box(y, 0);
  auto pts = oracle::points(y);
  int passes = 0;
  for (int code = 0; code < 625; ++code) {
    std::vector<int> k(5, 0);
    int c = code;
    for (int i = 1; i < 5; ++i) {
      k[i] = c % 5;
      c /= 5;
    }
    bool character = true;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if ((k[i] + k[j]) % 5 != k[(i + j) % 5]) character = false;
    std::vector<Complex> vals(5);
    for (int i = 0; i < 5; ++i) vals[w.index(pts[i])] = std::polar(1.0, 2.0 * std::numbers::pi * k[i] / 5.0);
    Certificate cert = gaussianity_check(table_charfn(w, vals), w);
    CHECK(cert.pass() == character);
    passes += cert.pass();
  }
  CHECK(passes == 5);
}

TEST_CASE("Gamma * I membership") {
  Window w = Window::box(kZ, 9);
  Certificate g = gamma_i_membership(gaussian_on_z(1.0), w);
  CHECK(g.pass());
  CHECK(g.verdict == "member");

  // Gaussian on the dual of T / Z_3, pulled back to 3Z
  Subgroup k3 = Subgroup::cyclic_in_t(kT, 0, 3);
  Lift lift = annihilator_lift(gaussian_on_z(1.0), k3, w);
  CHECK(lift.cert.pass());
  for (std::int64_t m = -3; m <= 3; ++m) {
    CHECK(std::abs(lift.h(z(3 * m)) - std::exp(-double(m * m))) < 1e-15);
    CHECK(lift.h(z(3 * m + 1)) == Complex(0.0));
    CHECK(lift.h(z(3 * m + 2)) == Complex(0.0));
    CHECK(std::abs(lift.h(z(3 * m)) - std::exp(-(3.0 * m) * (3.0 * m) / 9.0)) < 1e-15);
  }
  Certificate m = gamma_i_membership(lift.h, w);
  CHECK(m.pass());
  CHECK(m.fact("support").has_value());
  CHECK(same_subgroup(support_subgroup(lift.h, w), Subgroup::multiples_in_z(kZ, 0, 3)));

  Certificate q = gamma_i_membership(quartic(1.0, 0.01), w);
  CHECK_FALSE(q.pass());
  CHECK(q.verdict == "non-member");
  CHECK(std::abs(*q.margin("gaussian_residual") - 0.12) < 1e-9);

  Window small = Window::box(kZ, 3);
  std::vector<Complex> vals(small.size(), 0.0);
  vals[small.index(z(0))] = 1.0;
  vals[small.index(z(1))] = 0.5;
  vals[small.index(z(-1))] = 0.5;
  CHECK(code_of([&] { gamma_i_membership(table_charfn(small, vals), small); }) == ErrorCode::SupportNotSubgroup);
}

TEST_CASE("vector defect") {
  GroupDescriptor y = cyclic(3);
  Distribution mu = on_cyclic(3, {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  Distribution nu = on_cyclic(3, {Rational(1, 3), Rational(2, 3), Rational(0)});
  Distribution joint = product_distribution({mu, nu});
  QDefectReport r = qdefect_vector(char_fn(joint), {char_fn(mu), char_fn(nu)}, Window::box(y, 0));
  CHECK(r.verdict == QVerdict::PlainIndependent);
  REQUIRE(r.q.has_value());
  CHECK(r.q->is_zero());

  // exp(-(u^2 + v^2) + uv / 10) on Z^2 against exp(-u^2), exp(-v^2)
  CharFn j = exp_poly_charfn(GroupElement::zero(kT2), PolynomialFn(kZ2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{1, 1}, -0.1}}));
  REQUIRE(positive_definiteness(j, Window::box(kZ2, 8)).pass());
  QDefectReport v = qdefect_vector(j, {gaussian_on_z(1.0), gaussian_on_z(1.0)}, Window::box(kZ, 5));
  CHECK(v.verdict == QVerdict::QIndependent);
  REQUIRE(v.q.has_value());
  CHECK(std::abs(v.q->coeff({1, 1}) - Complex(0.1)) < 1e-9);
  CHECK(v.q->pruned(1e-10).coeffs().size() == 1);
  CHECK(std::abs((*v.q)(GroupElement::zero(kZ2))) == 0.0);
}

TEST_CASE("linear-form defect") {
  Window w = Window::box(kZ, 6);
  QDefectReport eq = qdefect_linear_forms({gaussian_on_z(1.0), gaussian_on_z(1.0)}, {1, 1}, {1, -1}, w);
  CHECK(eq.verdict == QVerdict::PlainIndependent);
  QDefectReport neq = qdefect_linear_forms({gaussian_on_z(1.0), gaussian_on_z(2.0)}, {1, 1}, {1, -1}, w);
  CHECK(neq.verdict == QVerdict::QIndependent);
  REQUIRE(neq.q.has_value());
  CHECK(std::abs(neq.q->coeff({1, 1}) - Complex(2.0)) < 1e-9);
  CHECK(neq.q->pruned(1e-10).coeffs().size() == 1);
  CHECK(neq.residual < 1e-9);

  GroupDescriptor y = cyclic(5);
  Distribution a = on_cyclic(5, {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  Distribution b = on_cyclic(5, {Rational(1, 4), Rational(0), Rational(3, 4)});
  QDefectReport z5 = qdefect_linear_forms({char_fn(a), char_fn(b)}, {1, 1}, {1, 2}, Window::box(y, 0));
  CHECK(z5.verdict == QVerdict::NotQIndependent);
  CHECK_FALSE(z5.witness.empty());
}

TEST_CASE("conditional-symmetry defect") {
  Window w = Window::box(kZ, 6);
  Homomorphism id = Homomorphism::identity(kT), neg = Homomorphism::scalar(kT, -1);
  for (double s : {0.5, 1.0, 3.0}) {
    QDefectReport r = qdefect_conditional_symmetry({gaussian_on_z(s)}, {id}, {id}, w);
    CHECK(r.verdict == QVerdict::QIndependent);
    REQUIRE(r.q.has_value());
    // log f(u+v) - log f(u-v) = -s[(u+v)^2 - (u-v)^2]
    CHECK(std::abs(r.q->coeff({1, 1}) - Complex(-4.0 * s)) < 1e-9);
  }
  QDefectReport sym = qdefect_conditional_symmetry({gaussian_on_z(2.0), gaussian_on_z(2.0)}, {id, id}, {id, neg}, w);
  CHECK(sym.verdict == QVerdict::PlainIndependent);
  QDefectReport d = qdefect_conditional_symmetry({gaussian_on_z(1.0), gaussian_on_z(2.0)}, {id, id}, {id, neg}, w);
  REQUIRE(d.q.has_value());
  CHECK(std::abs(d.q->coeff({1, 1}) - Complex(4.0)) < 1e-9);

  Homomorphism twice = Homomorphism::scalar(kT, 2);
  CHECK(code_of([&] { qdefect_conditional_symmetry({gaussian_on_z(1.0)}, {id}, {twice}, w); }) ==
        ErrorCode::NotAnAutomorphism);
}

TEST_CASE("sum/difference defect") {
  Window w = Window::box(kZ, 6);
  for (double s : {0.1, 1.0}) CHECK(qdefect_sumdiff(gaussian_on_z(s, Rational(1, 5)), w).verdict == QVerdict::PlainIndependent);
  for (double b : {0.01, 0.1}) {
    QDefectReport r = qdefect_sumdiff(quartic(1.0, b), w);
    CHECK(r.verdict == QVerdict::QIndependent);
    REQUIRE(r.q.has_value());
    CHECK(std::abs(r.q->coeff({2, 2}) - Complex(-12.0 * b)) < 1e-9);
    CHECK(r.q->pruned(1e-9).coeffs().size() == 1);
    // evenness in v
    for (std::int64_t u = -3; u <= 3; ++u)
      for (std::int64_t v = -3; v <= 3; ++v) CHECK(std::abs((*r.q)({u, v}) - (*r.q)({u, -v})) < 1e-9);
  }
}

TEST_CASE("quartic counterexample") {
  Counterexample ce = quartic_counterexample(Rational(1), Rational(1, 100));
  const Certificate& c = ce.cert;
  CHECK(c.pass());
  CHECK(c.verdict == "qindep-nongaussian");
  auto oracle = [](long double n) { return n * n + n * n * n * n / 100.0L; };
  double density_pi = static_cast<double>(oracle::density(oracle, std::numbers::pi_v<long double>));
  CHECK(std::abs(*c.margin("min_density") - density_pi) < 1e-9);
  CHECK(std::abs(density_pi - 0.3027) < 5e-5);
  CHECK(*c.margin("pd_margin") > 0.25);
  CHECK(*c.margin("tail_bound") < 1e-4);
  CHECK(std::abs(*c.margin("q_coeff_22") + 0.12) < 1e-9);
  CHECK(*c.margin("q_residual") < 1e-9);
  CHECK(std::abs(*c.margin("gaussian_residual") - 0.12) < 1e-9);
  REQUIRE(c.sub.size() == 3);
  CHECK(c.sub[0].pass());
  CHECK_FALSE(c.sub[2].pass());
  CHECK_FALSE(ce.f.is_candidate());

  Counterexample ctl = quartic_counterexample(Rational(1), Rational(0));
  CHECK(ctl.cert.pass());
  CHECK(ctl.cert.verdict == "gaussian-control");
  REQUIRE(ctl.cert.fitted_q.has_value());
  CHECK(ctl.cert.fitted_q->is_zero());

  Counterexample pure = quartic_counterexample(Rational(0), Rational(1));
  auto o2 = [](long double n) { return n * n * n * n; };
  CHECK(std::abs(*pure.cert.margin("min_density") - double(oracle::density(o2, std::numbers::pi_v<long double>))) < 1e-9);
  CHECK(std::abs(*pure.cert.margin("min_density") - 0.264241) < 1e-6);

  CHECK(code_of([] { quartic_counterexample(Rational(0), Rational(0)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("quartic separates Q-independence from Gaussianity") {
  for (Rational b : {Rational(1, 1000), Rational(1, 100), Rational(1, 20)}) {
    Counterexample ce = quartic_counterexample(Rational(1), b);
    REQUIRE(ce.cert.sub[0].pass());
    CHECK(qdefect_sumdiff(ce.f, Window::box(kZ, 6)).verdict == QVerdict::QIndependent);
    CHECK_FALSE(gaussianity_check(ce.f, Window::box(kZ, 8)).pass());
  }
}

TEST_CASE("annihilator lifts and the Corwin gate") {
  const double b = 0.01;
  Counterexample ce = quartic_counterexample(Rational(1), Rational(1, 100));
  Window w = Window::box(kZ, 18);

  Lift l3 = annihilator_lift(ce.f, Subgroup::cyclic_in_t(kT, 0, 3), w);
  CHECK(l3.cert.pass());
  CHECK(l3.cert.fact("corwin") == "true");
  QDefectReport r = qdefect_sumdiff(l3.h, w);
  CHECK(r.verdict == QVerdict::QIndependent);
  REQUIRE(r.q.has_value());
  CHECK(std::abs(r.q->coeff({2, 2}) - Complex(-12.0 * b / 81.0)) < 1e-9);
  CHECK_FALSE(gamma_i_membership(l3.h, w).pass());

  Lift l2 = annihilator_lift(ce.f, Subgroup::cyclic_in_t(kT, 0, 2), w);
  CHECK(l2.cert.fact("corwin") == "false");
  try {
    qdefect_sumdiff(l2.h, w);
    FAIL("expected CaseMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CaseMismatch);
    Json wj = Json::parse(e.witness());
    CHECK(wj["u"] == to_json(z(1)));
    CHECK(wj["v"] == to_json(z(1)));
  }

  Lift id = annihilator_lift(gaussian_on_z(1.0), Subgroup::trivial(kT), Window::box(kZ, 8));
  for (std::int64_t n = -8; n <= 8; ++n) CHECK(std::abs(id.h(z(n)) - std::exp(-double(n * n))) < 1e-15);

  CHECK(code_of([&] { annihilator_lift(gaussian_on_z(1.0), Subgroup::whole(kZ), w); }) != ErrorCode::InvalidArgument);
}

TEST_CASE("finite duals never carry a nonconstant defect") {
  GroupDescriptor y = cyclic(5);
  Window w = Window::box(y, 0);
  std::vector<CharFn> fs;
  for (const auto& wt : compositions(5, 5)) fs.push_back(char_fn(on_cyclic(5, wt)));
  int q_indep = 0, mismatched = 0, vanishing = 0;
  auto tally = [&](const QDefectReport& r) {
    CHECK(r.verdict != QVerdict::QIndependent);
    if (r.q) CHECK((r.verdict != QVerdict::PlainIndependent || r.q->is_zero()));
    q_indep += r.verdict == QVerdict::PlainIndependent;
  };
  for (const auto& f : fs) {
    try {
      tally(qdefect_sumdiff(f, w));
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::CaseMismatch);
      ++mismatched;
    }
  }
  for (std::size_t i = 0; i < fs.size(); i += 3)
    for (std::size_t j = 0; j < fs.size(); j += 5) {
      try {
        tally(qdefect_linear_forms({fs[i], fs[j]}, {1, 1}, {1, 2}, w));
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::VanishingValue);
        ++vanishing;
      }
    }
  CHECK(q_indep > 0);
}

TEST_CASE("theorem verdicts") {
  GroupDescriptor z6 = cyclic(6), z5 = cyclic(5);
  TheoremInstance t2;
  t2.theorem = Theorem::T2;
  t2.x = z6;
  t2.alphas = {Homomorphism::identity(z6), Homomorphism::identity(z6)};
  t2.betas = {Homomorphism::identity(z6), Homomorphism::scalar(z6, 5)};
  t2.search = SearchOptions{};
  CHECK(code_of([&] { theorem_verdict(t2); }) == ErrorCode::HypothesisNotMet);

  t2.x = z5;
  t2.alphas = {Homomorphism::identity(z5), Homomorphism::identity(z5)};
  t2.betas = {Homomorphism::identity(z5), Homomorphism::scalar(z5, 2)};
  t2.search->denominator = 6;
  Certificate c2 = theorem_verdict(t2);
  CHECK(c2.pass());
  CHECK(c2.fact("tuples") == "44100");
  CHECK(std::stoi(*c2.fact("kept")) > 0);

  TheoremInstance t1;
  t1.theorem = Theorem::T1;
  t1.x = kZ;
  t1.a = {1, 2};
  t1.b = {2, 1};
  t1.search = SearchOptions{};
  Certificate c1 = theorem_verdict(t1);
  CHECK(c1.pass());
  CHECK(std::stoi(*c1.fact("kept")) > 0);

  // explicit: independent non-degenerate marginals do not satisfy the premise
  TheoremInstance e1;
  e1.theorem = Theorem::T1;
  e1.x = z5;
  e1.a = {1, 1};
  e1.b = {1, 2};
  e1.marginals = {on_cyclic(5, {Rational(1, 2), Rational(1, 2)}), on_cyclic(5, {Rational(1, 3), Rational(2, 3)})};
  Certificate ce1 = theorem_verdict(e1);
  CHECK(ce1.pass());
  CHECK(ce1.verdict == "premise-not-satisfied");
  e1.marginals = {Distribution::degenerate(GroupElement(z5, {}, {}, {2})), Distribution::degenerate(GroupElement(z5, {}, {}, {4}))};
  Certificate cd = theorem_verdict(e1);
  CHECK(cd.pass());
  CHECK(cd.verdict == "conclusion-holds");

  TheoremInstance t3;
  t3.theorem = Theorem::T3;
  t3.x = kT;
  Certificate c3 = theorem_verdict(t3);
  CHECK(c3.pass());
  CHECK(c3.verdict == "necessity-witnessed");

  TheoremInstance s3;
  s3.theorem = Theorem::T3;
  s3.x = GroupDescriptor(0, 0, {3, 3});
  s3.search = SearchOptions{};
  s3.search->denominator = 3;
  CHECK(theorem_verdict(s3).pass());
}

TEST_CASE("search is deterministic across thread counts") {
  GroupDescriptor z5 = cyclic(5);
  TheoremInstance t2;
  t2.theorem = Theorem::T2;
  t2.x = z5;
  t2.alphas = {Homomorphism::identity(z5), Homomorphism::identity(z5)};
  t2.betas = {Homomorphism::identity(z5), Homomorphism::scalar(z5, 2)};
  t2.search = SearchOptions{};
  t2.search->threads = 1;
  std::string one = to_json(theorem_verdict(t2)).dump();
  t2.search->threads = 4;
  CHECK(to_json(theorem_verdict(t2)).dump() == one);

  t2.search->budget = 100;
  Certificate over = theorem_verdict(t2);
  CHECK(over.status == Status::Inconclusive);
  CHECK(over.verdict == "search-budget-exceeded");
}
