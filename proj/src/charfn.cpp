#include "lca/charfn.hpp"

#include "lca/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lca {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTableZero = 1e-12;

void check_owner(const CharFn& f, const GroupElement& y) {
  if (y.owner() != f.dual_owner())
    throw Error(ErrorCode::MismatchedGroups, to_string(y) + " is not in " + to_string(f.dual_owner()));
}

}  // namespace

const GroupDescriptor& CharFn::dual_owner() const { return node_->dual_owner; }

std::string CharFn::form_name() const {
  return std::visit(overloaded{[](const AtomicForm&) { return "atomic"; }, [](const ExpPolyForm&) { return "exp-poly"; },
                               [](const IndicatorForm&) { return "indicator"; },
                               [](const ProductForm&) { return "product"; },
                               [](const ZeroExtensionForm&) { return "zero-extension"; },
                               [](const TableForm&) { return "table"; }},
                    node_->form);
}

bool CharFn::is_candidate() const {
  const auto* e = std::get_if<ExpPolyForm>(&node_->form);
  return e && e->candidate;
}

bool CharFn::valid_at(const GroupElement& y) const {
  if (y.owner() != dual_owner()) return false;
  return std::visit(overloaded{[&](const TableForm& t) { return t.window.contains(y); },
                               [&](const ProductForm& p) {
                                 for (const auto& g : p.factors)
                                   if (!g.valid_at(y)) return false;
                                 return true;
                               },
                               [&](const ZeroExtensionForm& z) {
                                 return !z.iso->subgroup().contains(y) || z.inner.valid_at(z.iso->restrict(y));
                               },
                               [](const auto&) { return true; }},
                    node_->form);
}

Complex CharFn::operator()(const GroupElement& y) const {
  check_owner(*this, y);
  return std::visit(
      overloaded{[&](const AtomicForm& a) {
                   Complex s = 0.0;
                   for (std::size_t k = 0; k < a.points.size(); ++k) s += to_double(a.weights[k]) * pair(a.points[k], y);
                   return s;
                 },
                 [&](const ExpPolyForm& e) { return pair(e.shift, y) * std::exp(-e.phi(y).real()); },
                 [&](const IndicatorForm& s) { return s.subgroup.contains(y) ? Complex(1.0) : Complex(0.0); },
                 [&](const ProductForm& p) {
                   Complex v = 1.0;
                   for (const auto& g : p.factors) v *= g(y);
                   return v;
                 },
                 [&](const ZeroExtensionForm& z) {
                   return z.iso->subgroup().contains(y) ? z.inner(z.iso->restrict(y)) : Complex(0.0);
                 },
                 [&](const TableForm& t) {
                   if (!t.window.contains(y))
                     throw Error(ErrorCode::OutsideValidity, to_string(y) + " is outside the table window");
                   return t.values[t.window.index(y)];
                 }},
      node_->form);
}

Complex CharFn::log_at(const GroupElement& y) const {
  check_owner(*this, y);
  return std::visit(
      overloaded{[&](const ExpPolyForm& e) {
                   return Complex(-e.phi(y).real(), 2.0 * std::numbers::pi * to_double(pair_angle(e.shift, y)));
                 },
                 [&](const IndicatorForm& s) { return Complex(s.subgroup.contains(y) ? 0.0 : kNegInf, 0.0); },
                 [&](const ProductForm& p) {
                   Complex l = 0.0;
                   for (const auto& g : p.factors) l += g.log_at(y);
                   return l;
                 },
                 [&](const ZeroExtensionForm& z) {
                   return z.iso->subgroup().contains(y) ? z.inner.log_at(z.iso->restrict(y)) : Complex(kNegInf, 0.0);
                 },
                 [&](const auto&) {
                   Complex v = (*this)(y);
                   return std::abs(v) < kTableZero ? Complex(kNegInf, 0.0) : std::log(v);
                 }},
      node_->form);
}

bool CharFn::vanishes_at(const GroupElement& y) const {
  check_owner(*this, y);
  return std::visit(overloaded{[](const ExpPolyForm&) { return false; },
                               [&](const IndicatorForm& s) { return !s.subgroup.contains(y); },
                               [&](const ProductForm& p) {
                                 for (const auto& g : p.factors)
                                   if (g.vanishes_at(y)) return true;
                                 return false;
                               },
                               [&](const ZeroExtensionForm& z) {
                                 return !z.iso->subgroup().contains(y) || z.inner.vanishes_at(z.iso->restrict(y));
                               },
                               [&](const auto&) { return std::abs((*this)(y)) < kTableZero; }},
                    node_->form);
}

LatticeFunction CharFn::on(const Window& w) const {
  if (w.group() != dual_owner()) throw Error(ErrorCode::MismatchedGroups, "window is not on the function's group");
  CharFn self = *this;
  return LatticeFunction(
      w, [self](const GroupElement& y) { return self(y); }, [self](const GroupElement& y) { return self.log_at(y); },
      [self](const GroupElement& y) { return self.vanishes_at(y); });
}

CharFn atomic_transform(const GroupDescriptor& x, std::vector<GroupElement> points, std::vector<Rational> weights) {
  if (points.size() != weights.size()) throw Error(ErrorCode::InvalidArgument, "points and weights differ in length");
  for (const auto& p : points)
    if (p.owner() != x) throw Error(ErrorCode::PointOutsideGroup, to_string(p));
  return CharFn(std::make_shared<CharFnNode>(
      CharFnNode{dual_group(x), AtomicForm{std::move(points), std::move(weights)}}));
}

CharFn exp_poly_charfn(const GroupElement& shift, const PolynomialFn& phi) {
  GroupDescriptor y = dual_group(shift.owner());
  if (phi.dual_owner() != y) throw Error(ErrorCode::MismatchedGroups, "phi is not on the dual of the shift's group");
  if (!phi.is_real()) throw Error(ErrorCode::PhiNotReal, to_string(phi));
  if (phi.coeff(MultiIndex(y.z_rank, 0)) != Complex(0.0))
    throw Error(ErrorCode::InvalidArgument, "phi must vanish at 0");
  return CharFn(std::make_shared<CharFnNode>(CharFnNode{y, ExpPolyForm{shift, phi, true}}));
}

CharFn subgroup_indicator(const Subgroup& s) {
  return CharFn(std::make_shared<CharFnNode>(CharFnNode{s.owner(), IndicatorForm{s}}));
}

CharFn product_charfn(std::vector<CharFn> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "empty product");
  GroupDescriptor y = factors.front().dual_owner();
  for (const auto& f : factors)
    if (f.dual_owner() != y) throw Error(ErrorCode::MismatchedGroups, "product factors on different groups");
  return CharFn(std::make_shared<CharFnNode>(CharFnNode{y, ProductForm{std::move(factors)}}));
}

CharFn zero_extension(const CharFn& inner, const Subgroup& a) {
  auto iso = std::make_shared<const SubgroupIso>(a);
  if (inner.dual_owner() != iso->abstract_group())
    throw Error(ErrorCode::MismatchedGroups,
                "inner function lives on " + to_string(inner.dual_owner()) + ", subgroup is " + to_string(iso->abstract_group()));
  return CharFn(std::make_shared<CharFnNode>(CharFnNode{a.owner(), ZeroExtensionForm{inner, iso}}));
}

CharFn table_charfn(const Window& w, std::vector<Complex> values) {
  if (values.size() != w.size()) throw Error(ErrorCode::InvalidArgument, "table size does not match its window");
  return CharFn(std::make_shared<CharFnNode>(CharFnNode{w.group(), TableForm{w, std::move(values)}}));
}

CharFn mark_certified(const CharFn& f) {
  auto node = f.node();
  if (auto* e = std::get_if<ExpPolyForm>(&node.form)) e->candidate = false;
  return CharFn(std::make_shared<CharFnNode>(std::move(node)));
}

}  // namespace lca
