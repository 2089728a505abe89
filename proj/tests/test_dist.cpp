#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lca/bochner.hpp"
#include "lca/distribution.hpp"
#include "lca/error.hpp"
#include "oracles.hpp"

#include <random>

using namespace lca;

namespace {

GroupElement fin(const GroupDescriptor& g, std::vector<std::int64_t> f) { return GroupElement(g, {}, {}, f); }
GroupElement zpt(const GroupDescriptor& g, std::vector<std::int64_t> z) { return GroupElement(g, z, {}, std::vector<std::int64_t>(g.f_rank(), 0)); }

// Random atomic law with rational weights over a denominator of 60.
std::pair<Distribution, std::vector<oracle::Atom>> random_atomic(const std::vector<GroupElement>& pool, std::mt19937_64& rng) {
  std::size_t k = 1 + rng() % std::min<std::size_t>(pool.size(), 5);
  std::vector<std::int64_t> cuts{0, 60};
  for (std::size_t i = 1; i < k; ++i) cuts.push_back(1 + static_cast<std::int64_t>(rng() % 59));
  std::sort(cuts.begin(), cuts.end());
  std::vector<GroupElement> pts;
  std::vector<Rational> ws;
  std::vector<oracle::Atom> atoms;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    std::int64_t w = cuts[i + 1] - cuts[i];
    if (w == 0) continue;
    const auto& x = pool[rng() % pool.size()];
    pts.push_back(x);
    ws.emplace_back(w, 60);
    atoms.push_back({x, w / 60.0});
  }
  return {Distribution::atomic(pool.front().owner(), pts, ws), atoms};
}

std::vector<GroupElement> z_box(std::int64_t r) {
  GroupDescriptor z(1, 0);
  std::vector<GroupElement> out;
  for (std::int64_t k = -r; k <= r; ++k) out.push_back(zpt(z, {k}));
  return out;
}

PolynomialFn poly1(std::map<int, double> c) {
  std::map<MultiIndex, Complex> m;
  for (auto [k, v] : c) m[{k}] = v;
  return PolynomialFn(GroupDescriptor(1, 0), m);
}

}  // namespace

TEST_CASE("atomic distributions and their transforms") {
  GroupDescriptor z2(0, 0, {2}), z3(0, 0, {3});
  auto u = Distribution::atomic(z2, {fin(z2, {0}), fin(z2, {1})}, {Rational(1, 2), Rational(1, 2)});
  CHECK(std::abs(char_fn(u)(fin(z2, {0})) - 1.0) < 1e-15);
  CHECK(std::abs(char_fn(u)(fin(z2, {1}))) < 1e-15);
  auto m = Distribution::atomic(z3, {fin(z3, {0}), fin(z3, {1}), fin(z3, {2})}, {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  CHECK(std::abs(char_fn(m)(fin(z3, {1})) - 0.25) < 1e-15);
  auto d = Distribution::atomic(z2, {fin(z2, {0}), fin(z2, {1})}, {Rational(3, 4), Rational(1, 4)});
  CHECK(std::abs(char_fn(d)(fin(z2, {1})) - 0.5) < 1e-15);
  GroupDescriptor t(0, 1), z(1, 0);
  auto q = Distribution::degenerate(GroupElement(t, {}, {Rational(1, 4)}, {}));
  for (int n = -5; n <= 5; ++n) {
    Complex expect = std::pow(Complex(0, 1), n);
    CHECK(std::abs(char_fn(q)(zpt(z, {n})) - expect) < 1e-12);
    CHECK(std::abs(std::abs(char_fn(q)(zpt(z, {n}))) - 1.0) < 1e-15);
  }
  auto un = Distribution::atomic(GroupDescriptor(0, 0, {5}), oracle::points(GroupDescriptor(0, 0, {5})),
                                 std::vector<Rational>(5, Rational(1, 5)));
  for (const auto& y : oracle::points(GroupDescriptor(0, 0, {5})))
    CHECK(std::abs(char_fn(un)(y) - (y.is_zero() ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("atomic construction errors and normalization") {
  GroupDescriptor z2(0, 0, {2}), z3(0, 0, {3});
  CHECK_THROWS_AS(Distribution::atomic(z2, {fin(z2, {0})}, {Rational(1, 2)}), Error);
  CHECK_THROWS_AS(Distribution::atomic(z2, {fin(z3, {0})}, {Rational(1)}), Error);
  auto d = Distribution::atomic(z3, {fin(z3, {1}), fin(z3, {1}), fin(z3, {0})}, {Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  CHECK(d.support().size() == 2);
  CHECK(d.weights()[1] == Rational(1, 2));
  try {
    Distribution::atomic(z2, {fin(z2, {0})}, {Rational(2, 3)});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WeightSumNotOne);
  }
}

TEST_CASE("convolution examples") {
  GroupDescriptor z2(0, 0, {2}), z(1, 0);
  auto a = Distribution::degenerate(zpt(z, {2})), b = Distribution::degenerate(zpt(z, {-5}));
  CHECK(convolve(a, b) == Distribution::degenerate(zpt(z, {-3})));
  auto u = Distribution::atomic(z2, {fin(z2, {0}), fin(z2, {1})}, {Rational(1, 2), Rational(1, 2)});
  auto m = Distribution::atomic(z2, {fin(z2, {0}), fin(z2, {1})}, {Rational(5, 7), Rational(2, 7)});
  CHECK(convolve(u, m) == u);
  auto nu = convolve(m, reflect(m));
  for (const auto& y : oracle::points(z2)) {
    Complex v = char_fn(nu)(y);
    CHECK(std::abs(v - std::norm(char_fn(m)(y))) < 1e-12);
    CHECK(v.real() >= 0.0);
  }
  auto s = Distribution::spectral(GroupDescriptor(0, 1), exp_poly_charfn(GroupElement::zero(GroupDescriptor(0, 1)), poly1({{2, 1.0}})));
  CHECK_THROWS_AS(convolve(s, s), Error);
}

TEST_CASE("Fourier transform turns convolution into products") {
  std::mt19937_64 rng(2024);
  std::vector<std::vector<GroupElement>> pools{oracle::points(GroupDescriptor(0, 0, {6})),
                                                oracle::points(GroupDescriptor(0, 0, {2, 4})), z_box(8)};
  for (const auto& pool : pools) {
    GroupDescriptor x = pool.front().owner();
    GroupDescriptor y = dual_group(x);
    Window w = Window::box(y, 8, 32);
    for (int i = 0; i < 200; ++i) {
      auto [mu, ma] = random_atomic(pool, rng);
      auto [nu, na] = random_atomic(pool, rng);
      auto conv = convolve(mu, nu);
      auto oc = oracle::convolve(ma, na);
      for (const auto& p : w.points()) {
        CHECK(std::abs(char_fn(conv)(p) - char_fn(mu)(p) * char_fn(nu)(p)) < 1e-12);
        CHECK(std::abs(char_fn(conv)(p) - oracle::transform(oc, p)) < 1e-12);
      }
    }
  }
}

TEST_CASE("inverse transform recovers atomic weights on finite groups") {
  std::mt19937_64 rng(5);
  for (const auto& g : {GroupDescriptor(0, 0, {6}), GroupDescriptor(0, 0, {2, 4}), GroupDescriptor(0, 0, {3, 3})}) {
    auto pool = oracle::points(g);
    for (int i = 0; i < 50; ++i) {
      auto [mu, atoms] = random_atomic(pool, rng);
      auto masses = inverse_transform(char_fn(mu));
      for (const auto& [x, m] : masses) {
        double expect = 0.0;
        for (std::size_t k = 0; k < mu.support().size(); ++k)
          if (mu.support()[k] == x) expect = to_double(mu.weights()[k]);
        CHECK(std::abs(m - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("pushforward along multiplication by a") {
  std::mt19937_64 rng(9);
  GroupDescriptor z(1, 0), t(0, 1), z6(0, 0, {6});
  for (const auto& pool : {z_box(4), oracle::points(z6)}) {
    GroupDescriptor x = pool.front().owner();
    GroupDescriptor y = dual_group(x);
    Window w = Window::box(y, 4, 24);
    for (int a = -5; a <= 5; ++a)
      for (int i = 0; i < 5; ++i) {
        auto [mu, atoms] = random_atomic(pool, rng);
        auto pf = pushforward(Homomorphism::scalar(x, a), mu);
        for (const auto& p : w.points()) CHECK(std::abs(char_fn(pf)(p) - char_fn(mu)(a * p)) < 1e-12);
      }
  }
}

TEST_CASE("Haar distributions of compact subgroups") {
  GroupDescriptor t(0, 1), z(1, 0), z6(0, 0, {6});
  CharFn h3 = char_fn(haar_on_subgroup(Subgroup::cyclic_in_t(t, 0, 3)));
  for (int n = -9; n <= 9; ++n) {
    CHECK(h3(zpt(z, {n})) == Complex(n % 3 == 0 ? 1.0 : 0.0));
    CHECK(h3(zpt(z, {n})) * h3(zpt(z, {n})) == h3(zpt(z, {n})));
  }
  CharFn h0 = char_fn(haar_on_subgroup(Subgroup::trivial(z6)));
  CharFn hw = char_fn(haar_on_subgroup(Subgroup::whole(z6)));
  for (const auto& y : oracle::points(z6)) {
    CHECK(h0(y) == Complex(1.0));
    CHECK(hw(y) == Complex(y.is_zero() ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(haar_on_subgroup(Subgroup::multiples_in_z(z, 0, 2)), Error);
}

TEST_CASE("exp-poly characteristic functions") {
  GroupDescriptor t(0, 1), z(1, 0);
  CharFn g = exp_poly_charfn(GroupElement::zero(t), poly1({{2, 0.5}}));
  CHECK(g.is_candidate());
  CHECK(std::abs(g(zpt(z, {2})) - std::exp(-2.0)) < 1e-15);
  CharFn shift = exp_poly_charfn(GroupElement(t, {}, {Rational(1, 8)}, {}), PolynomialFn(z, {}));
  for (int n = -4; n <= 4; ++n) CHECK(std::abs(std::abs(shift(zpt(z, {n}))) - 1.0) < 1e-15);
  CHECK_THROWS_AS(exp_poly_charfn(GroupElement::zero(t), PolynomialFn(z, {{{2}, Complex(0, 1)}})), Error);
  CHECK_THROWS_AS(exp_poly_charfn(GroupElement::zero(t), poly1({{0, 1.0}})), Error);
  CHECK_FALSE(mark_certified(g).is_candidate());
}

TEST_CASE("constructed characteristic functions are Hermitian and bounded") {
  GroupDescriptor t(0, 1), z(1, 0), z6(0, 0, {6});
  std::mt19937_64 rng(13);
  std::vector<CharFn> fs{
      exp_poly_charfn(GroupElement(t, {}, {Rational(1, 5)}, {}), poly1({{2, 0.3}, {4, 0.01}})),
      char_fn(Distribution::atomic(t, {GroupElement(t, {}, {Rational(1, 5)}, {}), GroupElement(t, {}, {Rational(5, 7)}, {})},
                                   {Rational(1, 3), Rational(2, 3)})),
      zero_extension(exp_poly_charfn(GroupElement::zero(t), poly1({{2, 1.0}})), Subgroup::multiples_in_z(z, 0, 3)),
      product_charfn({exp_poly_charfn(GroupElement::zero(t), poly1({{2, 0.2}})), subgroup_indicator(Subgroup::multiples_in_z(z, 0, 2))})};
  for (const auto& f : fs) {
    CHECK(std::abs(f(GroupElement::zero(z)) - 1.0) < 1e-15);
    for (int n = -12; n <= 12; ++n) {
      CHECK(std::abs(f(zpt(z, {-n})) - std::conj(f(zpt(z, {n})))) < 1e-12);
      CHECK(std::abs(f(zpt(z, {n}))) <= 1.0 + 1e-12);
    }
  }
  for (int i = 0; i < 20; ++i) {
    CharFn f = char_fn(random_atomic(oracle::points(z6), rng).first);
    for (const auto& y : oracle::points(z6)) {
      CHECK(std::abs(f(-y) - std::conj(f(y))) < 1e-12);
      CHECK(std::abs(f(y)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("zero extension evaluates through the subgroup") {
  GroupDescriptor t(0, 1), z(1, 0);
  CharFn inner = exp_poly_charfn(GroupElement::zero(t), poly1({{2, 1.0}}));
  CharFn h = zero_extension(inner, Subgroup::multiples_in_z(z, 0, 3));
  for (int m = -4; m <= 4; ++m) {
    CHECK(std::abs(h(zpt(z, {3 * m})) - std::exp(-double(m * m))) < 1e-15);
    CHECK(h(zpt(z, {3 * m + 1})) == Complex(0.0));
    CHECK(h.vanishes_at(zpt(z, {3 * m + 2})));
  }
}

TEST_CASE("positive definiteness on finite duals") {
  GroupDescriptor z2(0, 0, {2});
  Window w = Window::box(z2, 1);
  Certificate bad = positive_definiteness(table_charfn(w, {1.0, -3.0}), w);
  CHECK(bad.status == Status::Fail);
  CHECK(bad.verdict == "pd-fail");
  CHECK_FALSE(bad.witnesses.empty());
  auto masses = inverse_transform(table_charfn(w, {1.0, -3.0}));
  CHECK(std::abs(masses[0].second - (-1.0)) < 1e-12);
  CHECK(std::abs(masses[1].second - 2.0) < 1e-12);
  GroupDescriptor z6(0, 0, {6});
  Certificate one = positive_definiteness(table_charfn(Window::box(z6, 1), std::vector<Complex>(6, 1.0)), Window::box(z6, 1));
  CHECK(one.pass());
}

TEST_CASE("positive definiteness of exp-poly functions on Z") {
  GroupDescriptor t(0, 1), z(1, 0);
  Window w = Window::box(z, 8);
  Certificate g = positive_definiteness(exp_poly_charfn(GroupElement::zero(t), poly1({{2, 1.0}})), w);
  REQUIRE(g.pass());
  double dens = static_cast<double>(oracle::density([](long double n) { return n * n; }, std::numbers::pi_v<long double>));
  CHECK(*g.margin("min_density") == doctest::Approx(dens).epsilon(1e-9));
  CHECK(*g.margin("min_density") == doctest::Approx(0.3006).epsilon(1e-3));

  Certificate q = positive_definiteness(exp_poly_charfn(GroupElement::zero(t), poly1({{2, 1.0}, {4, 0.01}})), w);
  REQUIRE(q.pass());
  double qd = static_cast<double>(oracle::density([](long double n) { return n * n + n * n * n * n / 100; }, std::numbers::pi_v<long double>));
  CHECK(*q.margin("min_density") == doctest::Approx(qd).epsilon(1e-9));
  CHECK(*q.margin("tail_bound") < 1e-4);
  CHECK(*q.margin("margin") > 0.25);

  Certificate q01 = positive_definiteness(exp_poly_charfn(GroupElement::zero(t), poly1({{4, 1.0}})), w);
  REQUIRE(q01.pass());
  double d01 = static_cast<double>(oracle::density([](long double n) { return n * n * n * n; }, std::numbers::pi_v<long double>));
  CHECK(*q01.margin("min_density") == doctest::Approx(d01).epsilon(1e-9));

  Certificate point = positive_definiteness(exp_poly_charfn(GroupElement::zero(t), PolynomialFn(z, {})), w);
  CHECK(point.pass());

  // exp(+n^2 - 2 n^4) is a valid exp-poly but its density goes negative
  Certificate neg = positive_definiteness(exp_poly_charfn(GroupElement::zero(t), poly1({{2, -0.5}, {4, 0.02}})), w);
  CHECK(neg.status != Status::Pass);
}

TEST_CASE("positive definiteness on Z^2 and for lifted functions") {
  GroupDescriptor t2(0, 2), z2(2, 0), t(0, 1), z(1, 0);
  PolynomialFn phi(z2, {{{2, 0}, 1.0}, {{1, 1}, 0.5}, {{0, 2}, 1.0}});
  Certificate c = positive_definiteness(exp_poly_charfn(GroupElement::zero(t2), phi), Window::box(z2, 6));
  CHECK(c.pass());
  CharFn lifted = zero_extension(exp_poly_charfn(GroupElement::zero(t), poly1({{2, 1.0}, {4, 0.01}})),
                                 Subgroup::multiples_in_z(z, 0, 3));
  CHECK(positive_definiteness(lifted, Window::box(z, 8)).pass());
  CHECK_THROWS_AS(tail_bound(table_charfn(Window::box(z, 2), {0.1, 0.5, 1.0, 0.5, 0.1}), 2).value(), std::bad_optional_access);
}
