#pragma once

#include "lca/charfn.hpp"
#include "lca/homomorphism.hpp"

#include <optional>
#include <vector>

namespace lca {

class Distribution {
 public:
  /// Merges repeated points, drops zero weights; weights must be nonnegative and sum to 1.
  static Distribution atomic(const GroupDescriptor& owner, std::vector<GroupElement> support,
                             std::vector<Rational> weights);
  static Distribution degenerate(const GroupElement& x);
  /// f must live on the dual of owner.
  static Distribution spectral(const GroupDescriptor& owner, CharFn f);

  const GroupDescriptor& owner() const { return owner_; }
  bool is_atomic() const { return !spectral_.has_value(); }
  /// Sorted, distinct points with their weights.
  const std::vector<GroupElement>& support() const { return support_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const CharFn& spectral_charfn() const;
  bool is_degenerate() const { return is_atomic() && support_.size() == 1; }

  friend bool operator==(const Distribution& a, const Distribution& b);

 private:
  GroupDescriptor owner_;
  std::vector<GroupElement> support_;
  std::vector<Rational> weights_;
  std::optional<CharFn> spectral_;
};

CharFn char_fn(const Distribution& mu);
Distribution convolve(const Distribution& mu, const Distribution& nu);
/// The image of mu under x |-> -x.
Distribution reflect(const Distribution& mu);
Distribution pushforward(const Homomorphism& h, const Distribution& mu);
/// Joint law of independent atomic components on X_1 x ... x X_n.
Distribution product_distribution(const std::vector<Distribution>& parts);
/// j-th marginal of an atomic law on g^n.
Distribution marginal(const Distribution& joint, const GroupDescriptor& g, int n, int j);
/// Haar distribution of a compact subgroup K of X; its transform is the indicator of A(Y, K).
Distribution haar_on_subgroup(const Subgroup& k);

}  // namespace lca
