#include "lca/group.hpp"

#include "lca/error.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <tuple>

namespace lca {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MismatchedGroups: return "MismatchedGroups";
    case ErrorCode::UnsupportedSubgroupForm: return "UnsupportedSubgroupForm";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::WeightSumNotOne: return "WeightSumNotOne";
    case ErrorCode::PointOutsideGroup: return "PointOutsideGroup";
    case ErrorCode::SpectralNotSupported: return "SpectralNotSupported";
    case ErrorCode::NonCompactSubgroup: return "NonCompactSubgroup";
    case ErrorCode::PhiNotReal: return "PhiNotReal";
    case ErrorCode::TailBoundUnavailable: return "TailBoundUnavailable";
    case ErrorCode::OutsideValidity: return "OutsideValidity";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::VanishingValue: return "VanishingValue";
    case ErrorCode::BranchInconsistency: return "BranchInconsistency";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::BaseEquationViolated: return "BaseEquationViolated";
    case ErrorCode::StepResidual: return "StepResidual";
    case ErrorCode::SupportNotSubgroup: return "SupportNotSubgroup";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::BochnerFail: return "BochnerFail";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

GroupDescriptor::GroupDescriptor(int z, int t, std::vector<std::int64_t> finite)
    : z_rank(z), t_rank(t), finite_orders(std::move(finite)) {
  if (z_rank < 0 || t_rank < 0) throw Error(ErrorCode::InvalidArgument, "negative rank");
  for (auto n : finite_orders)
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "finite factor orders must be >= 2");
}

std::int64_t GroupDescriptor::order() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "order of an infinite group");
  std::int64_t n = 1;
  for (auto k : finite_orders) n *= k;
  return n;
}

std::string to_string(const GroupDescriptor& g) {
  std::string out;
  auto append = [&out](const std::string& part) {
    if (!out.empty()) out += " x ";
    out += part;
  };
  if (g.z_rank == 1) append("Z");
  if (g.z_rank > 1) append("Z^" + std::to_string(g.z_rank));
  if (g.t_rank == 1) append("T");
  if (g.t_rank > 1) append("T^" + std::to_string(g.t_rank));
  for (auto n : g.finite_orders) append("Z_" + std::to_string(n));
  return out.empty() ? "{0}" : out;
}

GroupDescriptor dual_group(const GroupDescriptor& g) {
  return GroupDescriptor(g.t_rank, g.z_rank, g.finite_orders);
}

GroupDescriptor product(const GroupDescriptor& a, const GroupDescriptor& b) {
  std::vector<std::int64_t> f = a.finite_orders;
  f.insert(f.end(), b.finite_orders.begin(), b.finite_orders.end());
  return GroupDescriptor(a.z_rank + b.z_rank, a.t_rank + b.t_rank, std::move(f));
}

GroupDescriptor power(const GroupDescriptor& g, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power of a group needs n >= 1");
  GroupDescriptor out = g;
  for (int i = 1; i < n; ++i) out = product(out, g);
  return out;
}

GroupElement::GroupElement(GroupDescriptor owner, std::vector<std::int64_t> z, std::vector<Rational> t,
                           std::vector<std::int64_t> f)
    : owner_(std::move(owner)), z_(std::move(z)), t_(std::move(t)), f_(std::move(f)) {
  if (static_cast<int>(z_.size()) != owner_.z_rank || static_cast<int>(t_.size()) != owner_.t_rank ||
      static_cast<int>(f_.size()) != owner_.f_rank())
    throw Error(ErrorCode::PointOutsideGroup,
                "coordinate counts do not match " + to_string(owner_));
  for (auto& r : t_) r = frac(r);
  for (std::size_t i = 0; i < f_.size(); ++i) f_[i] = mod(f_[i], owner_.finite_orders[i]);
}

GroupElement GroupElement::zero(const GroupDescriptor& owner) {
  return GroupElement(owner, std::vector<std::int64_t>(owner.z_rank, 0),
                      std::vector<Rational>(owner.t_rank, Rational(0)),
                      std::vector<std::int64_t>(owner.f_rank(), 0));
}

GroupElement GroupElement::z_unit(const GroupDescriptor& owner, int i) {
  GroupElement e = zero(owner);
  e.z_.at(i) = 1;
  return e;
}

bool GroupElement::is_zero() const {
  return std::all_of(z_.begin(), z_.end(), [](auto v) { return v == 0; }) &&
         std::all_of(t_.begin(), t_.end(), [](auto v) { return v == 0; }) &&
         std::all_of(f_.begin(), f_.end(), [](auto v) { return v == 0; });
}

std::int64_t GroupElement::order() const {
  if (std::any_of(z_.begin(), z_.end(), [](auto v) { return v != 0; })) return 0;
  std::int64_t n = 1;
  for (const auto& r : t_) n = std::lcm(n, r.denominator());
  for (std::size_t i = 0; i < f_.size(); ++i) {
    std::int64_t k = owner_.finite_orders[i];
    n = std::lcm(n, k / std::gcd(f_[i], k));
  }
  return n;
}

GroupElement GroupElement::z_part() const {
  GroupElement out = zero(owner_);
  out.z_ = z_;
  return out;
}

GroupElement GroupElement::operator-() const {
  GroupElement out = *this;
  for (auto& v : out.z_) v = -v;
  for (auto& r : out.t_) r = frac(-r);
  for (std::size_t i = 0; i < out.f_.size(); ++i) out.f_[i] = mod(-out.f_[i], owner_.finite_orders[i]);
  return out;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  if (owner_ != other.owner_)
    throw Error(ErrorCode::MismatchedGroups, "adding points of " + to_string(owner_) + " and " +
                                                 to_string(other.owner_));
  for (std::size_t i = 0; i < z_.size(); ++i) z_[i] += other.z_[i];
  for (std::size_t i = 0; i < t_.size(); ++i) t_[i] = frac(t_[i] + other.t_[i]);
  for (std::size_t i = 0; i < f_.size(); ++i) f_[i] = mod(f_[i] + other.f_[i], owner_.finite_orders[i]);
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) { return *this += -other; }

GroupElement operator*(std::int64_t n, const GroupElement& x) {
  GroupElement out = x;
  for (auto& v : out.z_) v *= n;
  for (auto& r : out.t_) r = frac(r * n);
  for (std::size_t i = 0; i < out.f_.size(); ++i)
    out.f_[i] = mod(out.f_[i] * n, x.owner_.finite_orders[i]);
  return out;
}

bool operator<(const GroupElement& a, const GroupElement& b) {
  return std::tie(a.owner_, a.z_, a.t_, a.f_) < std::tie(b.owner_, b.z_, b.t_, b.f_);
}

std::string to_string(const GroupElement& x) {
  std::string out = "(";
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (auto v : x.z()) { sep(); out += std::to_string(v); }
  for (const auto& r : x.t()) { sep(); out += to_string(r) + "T"; }
  for (auto v : x.f()) { sep(); out += std::to_string(v) + "f"; }
  return out + ")";
}

GroupElement concat(const GroupElement& a, const GroupElement& b) { return concat({a, b}); }

GroupElement concat(const std::vector<GroupElement>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "concat of no points");
  GroupDescriptor g = parts.front().owner();
  std::vector<std::int64_t> z, f;
  std::vector<Rational> t;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) g = product(g, parts[i].owner());
    z.insert(z.end(), parts[i].z().begin(), parts[i].z().end());
    t.insert(t.end(), parts[i].t().begin(), parts[i].t().end());
    f.insert(f.end(), parts[i].f().begin(), parts[i].f().end());
  }
  return GroupElement(g, std::move(z), std::move(t), std::move(f));
}

std::vector<GroupElement> split(const GroupElement& x, const GroupDescriptor& g, int n) {
  if (x.owner() != power(g, n))
    throw Error(ErrorCode::MismatchedGroups, "split: point is not in " + to_string(g) + "^" + std::to_string(n));
  std::vector<GroupElement> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    auto zb = x.z().begin() + k * g.z_rank;
    auto tb = x.t().begin() + k * g.t_rank;
    auto fb = x.f().begin() + k * g.f_rank();
    out.emplace_back(g, std::vector<std::int64_t>(zb, zb + g.z_rank), std::vector<Rational>(tb, tb + g.t_rank),
                     std::vector<std::int64_t>(fb, fb + g.f_rank()));
  }
  return out;
}

std::vector<GroupElement> enumerate(const GroupDescriptor& g) {
  if (!g.is_finite()) throw Error(ErrorCode::InvalidArgument, "cannot enumerate " + to_string(g));
  std::vector<GroupElement> out;
  std::vector<std::int64_t> f(g.f_rank(), 0);
  const std::int64_t total = g.order();
  out.reserve(static_cast<std::size_t>(total));
  for (std::int64_t k = 0; k < total; ++k) {
    out.emplace_back(g, std::vector<std::int64_t>{}, std::vector<Rational>{}, f);
    for (int i = g.f_rank() - 1; i >= 0; --i) {
      if (++f[i] < g.finite_orders[i]) break;
      f[i] = 0;
    }
  }
  return out;
}

Rational pair_angle(const GroupElement& x, const GroupElement& y) {
  if (dual_group(x.owner()) != y.owner())
    throw Error(ErrorCode::MismatchedGroups,
                "pairing " + to_string(x.owner()) + " with " + to_string(y.owner()));
  Rational angle(0);
  for (std::size_t i = 0; i < x.z().size(); ++i) angle = frac(angle + y.t()[i] * x.z()[i]);
  for (std::size_t i = 0; i < x.t().size(); ++i) angle = frac(angle + x.t()[i] * y.z()[i]);
  const auto& orders = x.owner().finite_orders;
  for (std::size_t i = 0; i < x.f().size(); ++i)
    angle = frac(angle + Rational(mod(x.f()[i] * y.f()[i], orders[i]), orders[i]));
  return angle;
}

Complex unit_from_turns(const Rational& r) {
  Rational a = frac(r);
  if (a == 0) return {1.0, 0.0};
  if (a == Rational(1, 4)) return {0.0, 1.0};
  if (a == Rational(1, 2)) return {-1.0, 0.0};
  if (a == Rational(3, 4)) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * to_double(a));
}

Complex pair(const GroupElement& x, const GroupElement& y) { return unit_from_turns(pair_angle(x, y)); }

}  // namespace lca
