#pragma once
// Characteristic functions on a dual group Y, kept in closed form wherever
// possible so that zeros are exact and logarithms never underflow.

#include "lca/lattice.hpp"
#include "lca/polynomial.hpp"
#include "lca/subgroup.hpp"
#include "lca/window.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lca {

struct CharFnNode;

class CharFn {
 public:
  CharFn() = default;
  explicit CharFn(std::shared_ptr<const CharFnNode> node) : node_(std::move(node)) {}

  const GroupDescriptor& dual_owner() const;
  const CharFnNode& node() const { return *node_; }
  std::string form_name() const;
  /// True for exp-poly forms not yet certified positive definite.
  bool is_candidate() const;

  /// Throws OutsideValidity for table forms queried off their window.
  Complex operator()(const GroupElement& y) const;
  /// A logarithm of f(y); real part -inf where f vanishes.
  Complex log_at(const GroupElement& y) const;
  bool vanishes_at(const GroupElement& y) const;
  bool valid_at(const GroupElement& y) const;

  /// The function sampled on a window, with log and vanish callbacks.
  LatticeFunction on(const Window& w) const;

 private:
  std::shared_ptr<const CharFnNode> node_;
};

struct AtomicForm {
  std::vector<GroupElement> points;  // in the predual X
  std::vector<Rational> weights;
};
struct ExpPolyForm {
  GroupElement shift;  // in X
  PolynomialFn phi;
  bool candidate = true;
};
struct IndicatorForm {
  Subgroup subgroup;  // of Y
};
struct ProductForm {
  std::vector<CharFn> factors;
};
struct ZeroExtensionForm {
  CharFn inner;  // on iso.abstract_group()
  std::shared_ptr<const SubgroupIso> iso;
};
struct TableForm {
  Window window;
  std::vector<Complex> values;  // dense window order
};

using CharFnForm = std::variant<AtomicForm, ExpPolyForm, IndicatorForm, ProductForm, ZeroExtensionForm, TableForm>;

struct CharFnNode {
  GroupDescriptor dual_owner;
  CharFnForm form;
};

/// y |-> sum_k w_k (x_k, y) for points of X = predual of the returned function's group.
CharFn atomic_transform(const GroupDescriptor& x, std::vector<GroupElement> points, std::vector<Rational> weights);
/// y |-> (shift, y) exp(-phi(y)); phi must be real with no constant term.
CharFn exp_poly_charfn(const GroupElement& shift, const PolynomialFn& phi);
CharFn subgroup_indicator(const Subgroup& s);
CharFn product_charfn(std::vector<CharFn> factors);
/// inner (a function on the abstract copy of the subgroup A of Y) extended by zero off A.
CharFn zero_extension(const CharFn& inner, const Subgroup& a);
CharFn table_charfn(const Window& w, std::vector<Complex> values);
/// Copy of an exp-poly form with the candidate flag cleared.
CharFn mark_certified(const CharFn& f);

}  // namespace lca
