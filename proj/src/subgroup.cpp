#include "lca/subgroup.hpp"

#include "lca/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lca {

namespace {

SubgroupFactors normalized(const GroupDescriptor& g, SubgroupFactors s) {
  if (static_cast<int>(s.z.size()) != g.z_rank || static_cast<int>(s.t.size()) != g.t_rank ||
      static_cast<int>(s.f.size()) != g.f_rank())
    throw Error(ErrorCode::InvalidArgument, "subgroup factor counts do not match " + to_string(g));
  for (auto& m : s.z) m = std::abs(m);
  for (auto& m : s.t) m = std::abs(m);
  for (std::size_t i = 0; i < s.f.size(); ++i) s.f[i] = std::gcd(s.f[i], g.finite_orders[i]);
  return s;
}

std::vector<GroupElement> closure(const GroupDescriptor& g, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> seen{GroupElement::zero(g)};
  std::vector<GroupElement> frontier{GroupElement::zero(g)};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& s : frontier)
      for (const auto& gen : gens) {
        GroupElement x = s + gen;
        if (seen.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Coordinatewise description of a finite generated subgroup when it is a
// product of its axis intersections.
std::optional<SubgroupFactors> factors_of_finite(const GroupDescriptor& g, const std::vector<GroupElement>& elems) {
  SubgroupFactors s{std::vector<std::int64_t>(g.z_rank, 0), std::vector<std::int64_t>(g.t_rank, 1),
                    std::vector<std::int64_t>(g.f_rank(), 0)};
  for (int i = 0; i < g.f_rank(); ++i) s.f[i] = g.finite_orders[i];
  std::int64_t product_size = 1;
  for (int i = 0; i < g.t_rank; ++i) {
    std::int64_t count = 0;
    for (const auto& x : elems) {
      bool on_axis = true;
      for (int j = 0; j < g.t_rank; ++j)
        if (j != i && x.t()[j] != 0) on_axis = false;
      for (int j = 0; j < g.f_rank(); ++j)
        if (x.f()[j] != 0) on_axis = false;
      if (on_axis) ++count;
    }
    s.t[i] = count;
    product_size *= count;
  }
  for (int i = 0; i < g.f_rank(); ++i) {
    std::int64_t count = 0;
    for (const auto& x : elems) {
      bool on_axis = std::all_of(x.t().begin(), x.t().end(), [](const Rational& r) { return r == 0; });
      for (int j = 0; j < g.f_rank(); ++j)
        if (j != i && x.f()[j] != 0) on_axis = false;
      if (on_axis) ++count;
    }
    s.f[i] = g.finite_orders[i] / count;
    product_size *= count;
  }
  if (product_size != static_cast<std::int64_t>(elems.size())) return std::nullopt;
  return s;
}

}  // namespace

Subgroup Subgroup::from_factors(const GroupDescriptor& g, SubgroupFactors factors) {
  Subgroup s(g, Kind::Factors);
  s.factors_ = normalized(g, std::move(factors));
  if (s.is_finite()) s.elements_ = s.elements();
  return s;
}

Subgroup Subgroup::whole(const GroupDescriptor& g) {
  return from_factors(g, {std::vector<std::int64_t>(g.z_rank, 1), std::vector<std::int64_t>(g.t_rank, 0),
                          std::vector<std::int64_t>(g.f_rank(), 1)});
}

Subgroup Subgroup::trivial(const GroupDescriptor& g) {
  return from_factors(g, {std::vector<std::int64_t>(g.z_rank, 0), std::vector<std::int64_t>(g.t_rank, 1),
                          g.finite_orders});
}

Subgroup Subgroup::multiples_in_z(const GroupDescriptor& g, int coord, std::int64_t m) {
  if (coord < 0 || coord >= g.z_rank) throw Error(ErrorCode::InvalidArgument, "no such Z coordinate");
  SubgroupFactors s = trivial(g).factors_.value();
  s.z[coord] = m;
  return from_factors(g, s);
}

Subgroup Subgroup::cyclic_in_t(const GroupDescriptor& g, int coord, std::int64_t m) {
  if (coord < 0 || coord >= g.t_rank) throw Error(ErrorCode::InvalidArgument, "no such circle coordinate");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "cyclic circle subgroup needs m >= 1");
  SubgroupFactors s = trivial(g).factors_.value();
  s.t[coord] = m;
  return from_factors(g, s);
}

Subgroup Subgroup::generated(const GroupDescriptor& g, std::vector<GroupElement> generators) {
  for (const auto& x : generators) {
    if (x.owner() != g) throw Error(ErrorCode::MismatchedGroups, "generator outside " + to_string(g));
    if (x.order() == 0)
      throw Error(ErrorCode::UnsupportedSubgroupForm,
                  "generator " + to_string(x) + " has infinite order; use an mZ tag");
  }
  Subgroup s(g, Kind::Generated);
  s.generators_ = std::move(generators);
  s.elements_ = closure(g, s.generators_);
  s.factors_ = factors_of_finite(g, s.elements_);
  return s;
}

bool Subgroup::contains(const GroupElement& x) const {
  if (x.owner() != owner_) throw Error(ErrorCode::MismatchedGroups, "membership across groups");
  if (kind_ == Kind::Generated) return std::binary_search(elements_.begin(), elements_.end(), x);
  const auto& s = *factors_;
  for (int i = 0; i < owner_.z_rank; ++i) {
    if (s.z[i] == 0 ? x.z()[i] != 0 : x.z()[i] % s.z[i] != 0) return false;
  }
  for (int i = 0; i < owner_.t_rank; ++i) {
    if (s.t[i] != 0 && (x.t()[i] * s.t[i]).denominator() != 1) return false;
  }
  for (int i = 0; i < owner_.f_rank(); ++i) {
    if (x.f()[i] % s.f[i] != 0) return false;
  }
  return true;
}

bool Subgroup::is_compact() const {
  if (kind_ == Kind::Generated) return true;
  return std::all_of(factors_->z.begin(), factors_->z.end(), [](auto m) { return m == 0; });
}

bool Subgroup::is_finite() const {
  if (kind_ == Kind::Generated) return true;
  return is_compact() && std::all_of(factors_->t.begin(), factors_->t.end(), [](auto m) { return m != 0; });
}

bool Subgroup::is_trivial() const {
  if (kind_ == Kind::Generated) return elements_.size() == 1;
  const auto& s = *factors_;
  return std::all_of(s.z.begin(), s.z.end(), [](auto m) { return m == 0; }) &&
         std::all_of(s.t.begin(), s.t.end(), [](auto m) { return m == 1; }) && s.f == owner_.finite_orders;
}

std::vector<GroupElement> Subgroup::elements() const {
  if (!elements_.empty()) return elements_;
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "subgroup " + to_string(*this) + " is infinite");
  const auto& s = *factors_;
  std::vector<GroupElement> out{GroupElement::zero(owner_)};
  for (int i = 0; i < owner_.t_rank; ++i) {
    std::vector<GroupElement> next;
    for (const auto& x : out)
      for (std::int64_t j = 0; j < s.t[i]; ++j) {
        std::vector<Rational> t = x.t();
        t[i] = Rational(j, s.t[i]);
        next.emplace_back(owner_, x.z(), t, x.f());
      }
    out = std::move(next);
  }
  for (int i = 0; i < owner_.f_rank(); ++i) {
    std::vector<GroupElement> next;
    for (const auto& x : out)
      for (std::int64_t j = 0; j < owner_.finite_orders[i]; j += s.f[i]) {
        std::vector<std::int64_t> f = x.f();
        f[i] = j;
        next.emplace_back(owner_, x.z(), x.t(), f);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Subgroup::is_corwin() const {
  if (kind_ == Kind::Generated || is_finite()) {
    auto elems = elements();
    std::set<GroupElement> doubled;
    for (const auto& x : elems) doubled.insert(2 * x);
    return doubled.size() == elems.size();
  }
  const auto& s = *factors_;
  for (auto m : s.z)
    if (m != 0) return false;
  for (auto m : s.t)
    if (m != 0 && m % 2 == 0) return false;
  for (int i = 0; i < owner_.f_rank(); ++i)
    if ((owner_.finite_orders[i] / s.f[i]) % 2 == 0) return false;
  return true;
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  if (a.owner() != b.owner()) return false;
  if (a.is_finite() && b.is_finite()) return a.elements() == b.elements();
  if (a.is_finite() != b.is_finite()) return false;
  return a.factors() && b.factors() && *a.factors() == *b.factors();
}

std::string to_string(const Subgroup& s) {
  if (s.kind() == Subgroup::Kind::Generated) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.generators().size(); ++i)
      out += (i ? ", " : "") + to_string(s.generators()[i]);
    return out + "> in " + to_string(s.owner());
  }
  const auto& f = *s.factors();
  std::string out;
  auto append = [&out](const std::string& part) { out += (out.empty() ? "" : " x ") + part; };
  for (auto m : f.z) append(m == 0 ? "{0}" : m == 1 ? "Z" : std::to_string(m) + "Z");
  for (auto m : f.t) append(m == 0 ? "T" : m == 1 ? "{0}" : "(1/" + std::to_string(m) + ")Z/Z");
  for (std::size_t i = 0; i < f.f.size(); ++i) {
    std::int64_t n = s.owner().finite_orders[i];
    append(f.f[i] == n ? "{0}" : f.f[i] == 1 ? "Z_" + std::to_string(n)
                                             : std::to_string(f.f[i]) + "Z_" + std::to_string(n));
  }
  return out.empty() ? "{0}" : out;
}

Subgroup annihilator(const GroupDescriptor& y, const Subgroup& k) {
  if (dual_group(k.owner()) != y)
    throw Error(ErrorCode::MismatchedGroups,
                "annihilator in " + to_string(y) + " of a subgroup of " + to_string(k.owner()));
  if (k.factors()) {
    const auto& s = *k.factors();
    SubgroupFactors a;
    a.z.resize(y.z_rank);
    a.t.resize(y.t_rank);
    // Z factors of K's owner pair with circle factors of Y and vice versa.
    for (int i = 0; i < y.t_rank; ++i) a.t[i] = s.z[i];
    for (int i = 0; i < y.z_rank; ++i) a.z[i] = s.t[i];
    for (int i = 0; i < y.f_rank(); ++i) a.f.push_back(y.finite_orders[i] / s.f[i]);
    return Subgroup::from_factors(y, a);
  }
  if (y.is_finite()) {
    std::vector<GroupElement> members;
    for (const auto& c : enumerate(y)) {
      bool trivial_on_k = std::all_of(k.generators().begin(), k.generators().end(),
                                      [&c](const GroupElement& x) { return pair_angle(x, c) == 0; });
      if (trivial_on_k) members.push_back(c);
    }
    return Subgroup::generated(y, members);
  }
  throw Error(ErrorCode::UnsupportedSubgroupForm,
              "annihilator of " + to_string(k) + " in the infinite group " + to_string(y));
}

MulMap mul_map(const GroupDescriptor& x, std::int64_t n) {
  SubgroupFactors image, kernel;
  const std::int64_t m = std::abs(n);
  for (int i = 0; i < x.z_rank; ++i) {
    image.z.push_back(m);
    kernel.z.push_back(m == 0 ? 1 : 0);
  }
  for (int i = 0; i < x.t_rank; ++i) {
    image.t.push_back(m == 0 ? 1 : 0);
    kernel.t.push_back(m);
  }
  for (auto order : x.finite_orders) {
    std::int64_t g = std::gcd(m, order);
    image.f.push_back(g);
    kernel.f.push_back(order / g);
  }
  return {Subgroup::from_factors(x, image), Subgroup::from_factors(x, kernel)};
}

SubgroupIso::SubgroupIso(const Subgroup& s) : subgroup_(s) {
  if (!s.factors())
    throw Error(ErrorCode::UnsupportedSubgroupForm, "subgroup " + to_string(s) + " is not coordinatewise");
  const auto& fac = *s.factors();
  const auto& g = s.owner();
  std::vector<std::int64_t> finite;
  for (int i = 0; i < g.z_rank; ++i)
    if (fac.z[i] != 0) {
      z_source_.push_back(i);
      z_scale_.push_back(fac.z[i]);
    }
  for (int i = 0; i < g.t_rank; ++i) {
    if (fac.t[i] == 0) {
      t_source_.push_back(i);
    } else if (fac.t[i] > 1) {
      tcyc_source_.push_back(i);
      tcyc_order_.push_back(fac.t[i]);
    }
  }
  for (int i = 0; i < g.f_rank(); ++i) {
    std::int64_t order = g.finite_orders[i] / fac.f[i];
    if (order > 1) {
      f_source_.push_back(i);
      f_step_.push_back(fac.f[i]);
      finite.push_back(order);
    }
  }
  finite.insert(finite.end(), tcyc_order_.begin(), tcyc_order_.end());
  abstract_ = GroupDescriptor(static_cast<int>(z_source_.size()), static_cast<int>(t_source_.size()), finite);
}

GroupElement SubgroupIso::embed(const GroupElement& a) const {
  if (a.owner() != abstract_) throw Error(ErrorCode::MismatchedGroups, "embed: point is not in the abstract group");
  const auto& g = subgroup_.owner();
  std::vector<std::int64_t> z(g.z_rank, 0), f(g.f_rank(), 0);
  std::vector<Rational> t(g.t_rank, Rational(0));
  for (std::size_t k = 0; k < z_source_.size(); ++k) z[z_source_[k]] = a.z()[k] * z_scale_[k];
  for (std::size_t k = 0; k < t_source_.size(); ++k) t[t_source_[k]] = a.t()[k];
  for (std::size_t k = 0; k < f_source_.size(); ++k) f[f_source_[k]] = a.f()[k] * f_step_[k];
  for (std::size_t k = 0; k < tcyc_source_.size(); ++k)
    t[tcyc_source_[k]] = Rational(a.f()[f_source_.size() + k], tcyc_order_[k]);
  return GroupElement(g, z, t, f);
}

GroupElement SubgroupIso::restrict(const GroupElement& y) const {
  if (!subgroup_.contains(y))
    throw Error(ErrorCode::OutsideValidity, to_string(y) + " is not in " + to_string(subgroup_));
  std::vector<std::int64_t> z, f;
  std::vector<Rational> t;
  for (std::size_t k = 0; k < z_source_.size(); ++k) z.push_back(y.z()[z_source_[k]] / z_scale_[k]);
  for (int src : t_source_) t.push_back(y.t()[src]);
  for (std::size_t k = 0; k < f_source_.size(); ++k) f.push_back(y.f()[f_source_[k]] / f_step_[k]);
  for (std::size_t k = 0; k < tcyc_source_.size(); ++k)
    f.push_back((y.t()[tcyc_source_[k]] * tcyc_order_[k]).numerator());
  return GroupElement(abstract_, z, t, f);
}

}  // namespace lca
