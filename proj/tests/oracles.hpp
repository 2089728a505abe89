#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library beyond reading coordinates off its value types.

#include "lca/group.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using C = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double turns(const lca::Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// exp(2 pi i <x, y>) straight from the coordinate formula, in floating point.
inline C character(const lca::GroupElement& x, const lca::GroupElement& y) {
  double a = 0.0;
  for (std::size_t i = 0; i < x.z().size(); ++i) a += static_cast<double>(x.z()[i]) * turns(y.t()[i]);
  for (std::size_t i = 0; i < x.t().size(); ++i) a += turns(x.t()[i]) * static_cast<double>(y.z()[i]);
  const auto& n = x.owner().finite_orders;
  for (std::size_t i = 0; i < n.size(); ++i)
    a += static_cast<double>((x.f()[i] * y.f()[i]) % n[i]) / static_cast<double>(n[i]);
  return std::polar(1.0, kTwoPi * a);
}

struct Atom {
  lca::GroupElement x;
  double w;
};

inline C transform(const std::vector<Atom>& mu, const lca::GroupElement& y) {
  C s = 0.0;
  for (const auto& a : mu) s += a.w * character(a.x, y);
  return s;
}

inline std::vector<Atom> convolve(const std::vector<Atom>& mu, const std::vector<Atom>& nu) {
  std::map<lca::GroupElement, double> m;
  for (const auto& a : mu)
    for (const auto& b : nu) m[a.x + b.x] += a.w * b.w;
  std::vector<Atom> out;
  for (const auto& [x, w] : m) out.push_back({x, w});
  return out;
}

// All points of a finite group, built coordinate by coordinate.
inline std::vector<lca::GroupElement> points(const lca::GroupDescriptor& g) {
  std::vector<std::vector<std::int64_t>> fs{{}};
  for (auto n : g.finite_orders) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& f : fs)
      for (std::int64_t k = 0; k < n; ++k) {
        next.push_back(f);
        next.back().push_back(k);
      }
    fs = std::move(next);
  }
  std::vector<lca::GroupElement> out;
  for (const auto& f : fs) out.emplace_back(g, std::vector<std::int64_t>{}, std::vector<lca::Rational>{}, f);
  return out;
}

inline std::set<lca::GroupElement> closure(const lca::GroupDescriptor& g, const std::vector<lca::GroupElement>& gens) {
  std::set<lca::GroupElement> s{lca::GroupElement::zero(g)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<lca::GroupElement> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : gens)
        if (s.insert(a + b).second) grew = true;
  }
  return s;
}

// Every subgroup of a finite group generated by at most two elements.
inline std::vector<std::set<lca::GroupElement>> subgroups(const lca::GroupDescriptor& g) {
  std::set<std::set<lca::GroupElement>> all;
  auto pts = points(g);
  for (const auto& a : pts)
    for (const auto& b : pts) all.insert(closure(g, {a, b}));
  return {all.begin(), all.end()};
}

// {y : <x, y> = 1 for x in K}, by testing every character.
inline std::set<lca::GroupElement> annihilator(const lca::GroupDescriptor& y, const std::set<lca::GroupElement>& k) {
  std::set<lca::GroupElement> out;
  for (const auto& c : points(y)) {
    bool ok = true;
    for (const auto& x : k) ok = ok && std::abs(character(x, c) - 1.0) < 1e-12;
    if (ok) out.insert(c);
  }
  return out;
}

// Density 1 + 2 sum_{n >= 1} exp(-phi(n)) cos(n theta) of an even exp-poly char fn on Z.
template <class Phi>
long double density(Phi phi, long double theta, int terms = 60) {
  long double s = 1.0L;
  for (int n = 1; n <= terms; ++n) s += 2.0L * std::exp(-phi(static_cast<long double>(n))) * std::cos(n * theta);
  return s;
}

// n-th forward difference with unit step at 0 along one variable.
template <class F>
double forward_difference(F f, int n) {
  double s = 0.0, binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    s += ((n - k) % 2 ? -1.0 : 1.0) * binom * f(k);
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

}  // namespace oracle
