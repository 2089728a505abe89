#include "lca/distribution.hpp"

#include "lca/error.hpp"

#include <map>

namespace lca {

Distribution Distribution::atomic(const GroupDescriptor& owner, std::vector<GroupElement> support,
                                  std::vector<Rational> weights) {
  if (support.size() != weights.size()) throw Error(ErrorCode::InvalidArgument, "support and weights differ in length");
  std::map<GroupElement, Rational> merged;
  Rational total = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k].owner() != owner) throw Error(ErrorCode::PointOutsideGroup, to_string(support[k]));
    if (weights[k] < 0) throw Error(ErrorCode::InvalidArgument, "negative weight " + to_string(weights[k]));
    total += weights[k];
    if (weights[k] != 0) merged[support[k]] += weights[k];
  }
  if (total != 1) throw Error(ErrorCode::WeightSumNotOne, "weights sum to " + to_string(total));
  Distribution d;
  d.owner_ = owner;
  for (auto& [p, w] : merged) {
    d.support_.push_back(p);
    d.weights_.push_back(w);
  }
  return d;
}

Distribution Distribution::degenerate(const GroupElement& x) { return atomic(x.owner(), {x}, {Rational(1)}); }

Distribution Distribution::spectral(const GroupDescriptor& owner, CharFn f) {
  if (f.dual_owner() != dual_group(owner))
    throw Error(ErrorCode::MismatchedGroups, "spectral function is not on the dual of " + to_string(owner));
  Distribution d;
  d.owner_ = owner;
  d.spectral_ = std::move(f);
  return d;
}

const CharFn& Distribution::spectral_charfn() const {
  if (!spectral_) throw Error(ErrorCode::InvalidArgument, "distribution is atomic");
  return *spectral_;
}

bool operator==(const Distribution& a, const Distribution& b) {
  if (!a.is_atomic() || !b.is_atomic()) return false;
  return a.owner_ == b.owner_ && a.support_ == b.support_ && a.weights_ == b.weights_;
}

CharFn char_fn(const Distribution& mu) {
  if (!mu.is_atomic()) return mu.spectral_charfn();
  return atomic_transform(mu.owner(), mu.support(), mu.weights());
}

namespace {

void require_atomic(const Distribution& mu) {
  if (!mu.is_atomic()) throw Error(ErrorCode::SpectralNotSupported, "operation needs an atomic distribution");
}

}  // namespace

Distribution convolve(const Distribution& mu, const Distribution& nu) {
  require_atomic(mu);
  require_atomic(nu);
  if (mu.owner() != nu.owner()) throw Error(ErrorCode::MismatchedGroups, "convolving laws on different groups");
  std::vector<GroupElement> pts;
  std::vector<Rational> ws;
  for (std::size_t i = 0; i < mu.support().size(); ++i)
    for (std::size_t j = 0; j < nu.support().size(); ++j) {
      pts.push_back(mu.support()[i] + nu.support()[j]);
      ws.push_back(mu.weights()[i] * nu.weights()[j]);
    }
  return Distribution::atomic(mu.owner(), std::move(pts), std::move(ws));
}

Distribution reflect(const Distribution& mu) {
  require_atomic(mu);
  std::vector<GroupElement> pts;
  for (const auto& p : mu.support()) pts.push_back(-p);
  return Distribution::atomic(mu.owner(), std::move(pts), mu.weights());
}

Distribution pushforward(const Homomorphism& h, const Distribution& mu) {
  require_atomic(mu);
  if (h.domain() != mu.owner()) throw Error(ErrorCode::MismatchedGroups, "homomorphism domain differs from the law's group");
  std::vector<GroupElement> pts;
  for (const auto& p : mu.support()) pts.push_back(h(p));
  return Distribution::atomic(h.codomain(), std::move(pts), mu.weights());
}

Distribution product_distribution(const std::vector<Distribution>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "empty product of laws");
  std::vector<std::vector<GroupElement>> pts{{}};
  std::vector<Rational> ws{Rational(1)};
  GroupDescriptor owner;
  bool first = true;
  for (const auto& p : parts) {
    require_atomic(p);
    owner = first ? p.owner() : product(owner, p.owner());
    first = false;
    std::vector<std::vector<GroupElement>> next_pts;
    std::vector<Rational> next_ws;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < p.support().size(); ++j) {
        auto v = pts[i];
        v.push_back(p.support()[j]);
        next_pts.push_back(std::move(v));
        next_ws.push_back(ws[i] * p.weights()[j]);
      }
    pts = std::move(next_pts);
    ws = std::move(next_ws);
  }
  std::vector<GroupElement> joint;
  for (const auto& v : pts) joint.push_back(concat(v));
  return Distribution::atomic(owner, std::move(joint), std::move(ws));
}

Distribution marginal(const Distribution& joint, const GroupDescriptor& g, int n, int j) {
  require_atomic(joint);
  if (joint.owner() != power(g, n)) throw Error(ErrorCode::MismatchedGroups, "joint law is not on g^n");
  std::vector<GroupElement> pts;
  for (const auto& p : joint.support()) pts.push_back(split(p, g, n).at(j));
  return Distribution::atomic(g, std::move(pts), joint.weights());
}

Distribution haar_on_subgroup(const Subgroup& k) {
  if (!k.is_compact()) throw Error(ErrorCode::NonCompactSubgroup, to_string(k));
  GroupDescriptor y = dual_group(k.owner());
  return Distribution::spectral(k.owner(), subgroup_indicator(annihilator(y, k)));
}

}  // namespace lca
