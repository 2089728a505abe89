#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lca/error.hpp"
#include "lca/homomorphism.hpp"
#include "lca/structure.hpp"
#include "lca/subgroup.hpp"
#include "oracles.hpp"

#include <random>

using namespace lca;

namespace {

GroupElement fin(const GroupDescriptor& g, std::vector<std::int64_t> f) { return GroupElement(g, {}, {}, f); }

GroupElement random_element(const GroupDescriptor& g, std::mt19937_64& rng) {
  std::vector<std::int64_t> z, f;
  std::vector<Rational> t;
  for (int i = 0; i < g.z_rank; ++i) z.push_back(static_cast<std::int64_t>(rng() % 21) - 10);
  for (int i = 0; i < g.t_rank; ++i) t.emplace_back(static_cast<std::int64_t>(rng() % 60), 60);
  for (auto n : g.finite_orders) f.push_back(static_cast<std::int64_t>(rng() % n));
  return GroupElement(g, z, t, f);
}

std::set<GroupElement> as_set(const Subgroup& s) {
  auto e = s.elements();
  return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("dual group swaps Z and T and keeps finite factors") {
  CHECK(dual_group(GroupDescriptor(0, 0, {6})) == GroupDescriptor(0, 0, {6}));
  CHECK(dual_group(GroupDescriptor(0, 1)) == GroupDescriptor(1, 0));
  CHECK(dual_group(GroupDescriptor(0, 1, {2})) == GroupDescriptor(1, 0, {2}));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      GroupDescriptor g(a, b, {2, 9});
      CHECK(dual_group(dual_group(g)) == g);
    }
}

TEST_CASE("descriptor and element validation") {
  CHECK_THROWS_AS(GroupDescriptor(0, 0, {1}), Error);
  GroupDescriptor g(1, 1, {4});
  GroupElement x(g, {3}, {Rational(5, 4)}, {6});
  CHECK(x.t()[0] == Rational(1, 4));
  CHECK(x.f()[0] == 2);
  CHECK_THROWS_AS(GroupElement(g, {}, {Rational(0)}, {0}), Error);
  CHECK((-x + x).is_zero());
  CHECK(fin(GroupDescriptor(0, 0, {6}), {3}).order() == 2);
  CHECK(GroupElement(GroupDescriptor(0, 1), {}, {Rational(1, 3)}, {}).order() == 3);
  CHECK(GroupElement(g, {1}, {Rational(0)}, {0}).order() == 0);
}

TEST_CASE("pairing values") {
  GroupDescriptor z4(0, 0, {4});
  Complex v = pair(fin(z4, {1}), fin(z4, {1}));
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(1.0));
  GroupDescriptor t(0, 1), z(1, 0);
  CHECK(std::abs(pair(GroupElement(t, {}, {Rational(1, 3)}, {}), GroupElement(z, {3}, {}, {})) - 1.0) < 1e-15);
  CHECK(pair(GroupElement(t, {}, {Rational(2, 7)}, {}), GroupElement::zero(z)) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(pair(GroupElement::zero(t), GroupElement::zero(t)), Error);
  // quarter turns are exact
  CHECK(unit_from_turns(Rational(3, 4)) == Complex(0.0, -1.0));
}

TEST_CASE("pairing is bilinear and matches the coordinate formula") {
  std::mt19937_64 rng(7);
  for (const auto& g : {GroupDescriptor(0, 0, {6}), GroupDescriptor(0, 0, {2, 4}), GroupDescriptor(1, 1, {3}),
                        GroupDescriptor(2, 0), GroupDescriptor(0, 2, {5})}) {
    GroupDescriptor y = dual_group(g);
    for (int i = 0; i < 100; ++i) {
      auto x1 = random_element(g, rng), x2 = random_element(g, rng);
      auto y1 = random_element(y, rng), y2 = random_element(y, rng);
      CHECK(std::abs(pair(x1 + x2, y1) - pair(x1, y1) * pair(x2, y1)) < 1e-12);
      CHECK(std::abs(pair(x1, y1 + y2) - pair(x1, y1) * pair(x1, y2)) < 1e-12);
      CHECK(std::abs(pair(x1, y1) - oracle::character(x1, y1)) < 1e-12);
      CHECK(std::abs(std::abs(pair(x1, y1)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("annihilator examples") {
  GroupDescriptor t(0, 1), z(1, 0), z6(0, 0, {6});
  Subgroup a = annihilator(z, Subgroup::cyclic_in_t(t, 0, 3));
  CHECK(same_subgroup(a, Subgroup::multiples_in_z(z, 0, 3)));
  Subgroup b = annihilator(z6, Subgroup::generated(z6, {fin(z6, {3})}));
  CHECK(as_set(b) == std::set<GroupElement>{fin(z6, {0}), fin(z6, {2}), fin(z6, {4})});
  CHECK(annihilator(z6, Subgroup::whole(z6)).is_trivial());
  CHECK(same_subgroup(annihilator(z, Subgroup::whole(t)), Subgroup::trivial(z)));
  CHECK(same_subgroup(annihilator(t, Subgroup::trivial(z)), Subgroup::whole(t)));
}

TEST_CASE("double annihilator on every subgroup of small finite groups") {
  for (const auto& g : {GroupDescriptor(0, 0, {12}), GroupDescriptor(0, 0, {2, 4}), GroupDescriptor(0, 0, {24}),
                        GroupDescriptor(0, 0, {2, 2, 2}), GroupDescriptor(0, 0, {3, 6}), GroupDescriptor(0, 0, {4, 4})}) {
    auto subs = oracle::subgroups(g);
    GroupDescriptor y = dual_group(g);
    for (const auto& k : subs) {
      Subgroup ks = Subgroup::generated(g, std::vector<GroupElement>(k.begin(), k.end()));
      CHECK(as_set(ks) == k);
      Subgroup a = annihilator(y, ks);
      CHECK(as_set(a) == oracle::annihilator(y, k));
      CHECK(as_set(annihilator(g, a)) == k);
    }
  }
}

TEST_CASE("multiplication map images and kernels") {
  GroupDescriptor z6(0, 0, {6}), t(0, 1);
  MulMap m = mul_map(z6, 2);
  CHECK(as_set(m.image) == std::set<GroupElement>{fin(z6, {0}), fin(z6, {2}), fin(z6, {4})});
  CHECK(as_set(m.kernel) == std::set<GroupElement>{fin(z6, {0}), fin(z6, {3})});
  MulMap mt = mul_map(t, 2);
  CHECK(same_subgroup(mt.image, Subgroup::whole(t)));
  CHECK(same_subgroup(mt.kernel, Subgroup::cyclic_in_t(t, 0, 2)));
  MulMap one = mul_map(z6, 1);
  CHECK(same_subgroup(one.image, Subgroup::whole(z6)));
  CHECK(one.kernel.is_trivial());
  MulMap zero = mul_map(z6, 0);
  CHECK(zero.image.is_trivial());
  CHECK(same_subgroup(zero.kernel, Subgroup::whole(z6)));
}

TEST_CASE("Corwin property agrees with the doubling image on cyclic groups") {
  for (std::int64_t n = 2; n <= 12; ++n) {
    GroupDescriptor g(0, 0, {n});
    std::set<GroupElement> doubled;
    for (const auto& x : oracle::points(g)) doubled.insert(x + x);
    bool oracle_corwin = doubled.size() == static_cast<std::size_t>(n);
    CHECK(structural_predicates(g).corwin == oracle_corwin);
    CHECK(same_subgroup(mul_map(g, 2).image, Subgroup::whole(g)) == oracle_corwin);
    CHECK(oracle_corwin == (n % 2 == 1));
  }
}

TEST_CASE("structural predicates") {
  auto z = structural_predicates(GroupDescriptor(1, 0));
  CHECK(z.torsion_free);
  CHECK(z.order2_in_component == 0);
  auto t = structural_predicates(GroupDescriptor(0, 1));
  CHECK(t.corwin);
  CHECK(t.has_order2_element);
  CHECK(t.order2_in_component == 1);
  CHECK(t.order2_witness->t()[0] == Rational(1, 2));
  CHECK(same_subgroup(t.connected_component, Subgroup::whole(GroupDescriptor(0, 1))));
  CHECK(structural_predicates(GroupDescriptor(0, 0, {3})).corwin);
  CHECK_FALSE(structural_predicates(GroupDescriptor(0, 0, {6})).corwin);
  auto p = structural_predicates(GroupDescriptor(0, 0, {3, 3}), 3);
  CHECK(p.p_image_trivial);
  CHECK(exponent_prime(GroupDescriptor(0, 0, {5, 5})) == 5);
  CHECK_FALSE(exponent_prime(GroupDescriptor(0, 0, {6})).has_value());
  CHECK(structural_predicates(GroupDescriptor(0, 2)).order2_in_component == 3);
}

TEST_CASE("admissible coefficient sets") {
  GroupDescriptor z6(0, 0, {6});
  CHECK(is_admissible({2, 3}, z6).admissible);
  auto r = is_admissible({6}, z6);
  CHECK_FALSE(r.admissible);
  CHECK(*r.failing_index == 0);
  CHECK(is_admissible({1, -7, 12}, GroupDescriptor(1, 0)).admissible);
}

TEST_CASE("adjoint satisfies the pairing identity") {
  std::mt19937_64 rng(11);
  GroupDescriptor z6(0, 0, {6});
  Homomorphism five = Homomorphism::scalar(z6, 5);
  CHECK(adjoint(five) == Homomorphism::scalar(z6, 5));
  for (const auto& x : oracle::points(z6))
    for (const auto& y : oracle::points(z6)) CHECK(std::abs(pair(x, adjoint(five)(y)) - pair(five(x), y)) < 1e-12);

  GroupDescriptor t(0, 1), z(1, 0);
  CHECK(adjoint(Homomorphism::scalar(t, -1)) == Homomorphism::scalar(z, -1));

  // a mixed map on Z x T x Z_4
  GroupDescriptor g(1, 1, {4});
  HomBlocks b;
  b.zz = {{3}};
  b.zt = {{Rational(1, 5)}};
  b.zf = {{1}};
  b.tt = {{-2}};
  b.ft = {{Rational(3, 4)}};
  b.ff = {{3}};
  Homomorphism h(g, g, b);
  Homomorphism ha = adjoint(h);
  CHECK(adjoint(ha) == h);
  GroupDescriptor y = dual_group(g);
  for (int i = 0; i < 100; ++i) {
    auto x = random_element(g, rng);
    auto yy = random_element(y, rng);
    CHECK(std::abs(pair(x, ha(yy)) - pair(h(x), yy)) < 1e-12);
  }
}

TEST_CASE("automorphism status is preserved by the adjoint on finite groups") {
  GroupDescriptor g(0, 0, {2, 4});
  int autos = 0;
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b)
      for (std::int64_t c = 0; c < 4; ++c)
        for (std::int64_t d = 0; d < 4; ++d) {
          HomBlocks bl;
          bl.ff = {{a, b}, {c, d}};
          std::optional<Homomorphism> h;
          try {
            h.emplace(g, g, bl);
          } catch (const Error&) {
            continue;
          }
          std::set<GroupElement> image;
          for (const auto& x : oracle::points(g)) image.insert((*h)(x));
          bool bijective = image.size() == 8;
          CHECK(h->is_automorphism() == bijective);
          CHECK(adjoint(*h).is_automorphism() == bijective);
          autos += bijective;
        }
  CHECK(autos == 8);  // |Aut(Z_2 x Z_4)| = 8
}

TEST_CASE("ill-defined homomorphisms are rejected") {
  GroupDescriptor z4(0, 0, {4}), z6(0, 0, {6});
  HomBlocks bl;
  bl.ff = {{1}};
  CHECK_THROWS_AS(Homomorphism(z4, z6, bl), Error);
  bl.ff = {{3}};
  CHECK_NOTHROW(Homomorphism(z4, z6, bl));
}

TEST_CASE("Heyde condition") {
  GroupDescriptor z5(0, 0, {5}), t(0, 1);
  CHECK(heyde_condition({Homomorphism::scalar(z5, 1), Homomorphism::scalar(z5, 2)}).holds);
  auto r = heyde_condition({Homomorphism::scalar(z5, 1), Homomorphism::scalar(z5, 4)});
  CHECK_FALSE(r.holds);
  CHECK(r.witness->i == 1);
  CHECK(r.witness->j == 2);
  CHECK(r.witness->sign == '+');
  CHECK_FALSE(heyde_condition({Homomorphism::scalar(t, 1), Homomorphism::scalar(t, -1)}).holds);
  CHECK_THROWS_AS(heyde_condition({Homomorphism::scalar(z5, 1), Homomorphism::scalar(z5, 0)}), Error);
  GroupDescriptor t2(0, 2);
  HomBlocks fib;
  fib.tt = {{0, 1}, {1, 1}};
  CHECK(heyde_condition({Homomorphism::identity(t2), Homomorphism(t2, t2, fib)}).holds);
}

TEST_CASE("subgroup isomorphism round trips") {
  GroupDescriptor g(1, 1, {6});
  Subgroup s = Subgroup::from_factors(g, SubgroupFactors{{3}, {4}, {2}});
  SubgroupIso iso(s);
  CHECK(iso.abstract_group() == GroupDescriptor(1, 0, {3, 4}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = random_element(iso.abstract_group(), rng);
    auto y = iso.embed(a);
    CHECK(s.contains(y));
    CHECK(iso.restrict(y) == a);
  }
  CHECK_THROWS_AS(iso.restrict(GroupElement(g, {1}, {Rational(0)}, {0})), Error);
}
