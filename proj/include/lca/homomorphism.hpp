#pragma once

// Continuous homomorphisms between groups Z^a x T^b x F in block form.
// With coordinates ordered (Z, F, T) every such map is block lower
// triangular: Z feeds all three sectors, F feeds F and T, T feeds only T.

#include "lca/group.hpp"

#include <optional>
#include <vector>

namespace lca {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RatMatrix = std::vector<std::vector<Rational>>;

struct HomBlocks {
  IntMatrix zz;  // Z -> Z
  RatMatrix zt;  // Z -> T, n |-> r n mod 1
  IntMatrix zf;  // Z -> finite
  IntMatrix tt;  // T -> T
  RatMatrix ft;  // finite -> T, needs n_j r in Z
  IntMatrix ff;  // finite -> finite, needs n_j c = 0 mod n'_i

  friend bool operator==(const HomBlocks&, const HomBlocks&) = default;
};

class Homomorphism {
 public:
  /// Validates and normalizes the blocks; missing blocks are zero.
  Homomorphism(GroupDescriptor domain, GroupDescriptor codomain, HomBlocks blocks);

  static Homomorphism identity(const GroupDescriptor& g);
  /// f_n : x |-> n x.
  static Homomorphism scalar(const GroupDescriptor& g, std::int64_t n);

  const GroupDescriptor& domain() const { return domain_; }
  const GroupDescriptor& codomain() const { return codomain_; }
  const HomBlocks& blocks() const { return blocks_; }
  bool is_automorphism() const { return is_automorphism_; }

  GroupElement operator()(const GroupElement& x) const;

  /// Inverse of an automorphism; throws NotAnAutomorphism otherwise.
  Homomorphism inverse() const;

  friend Homomorphism operator+(const Homomorphism& a, const Homomorphism& b);
  friend Homomorphism operator-(const Homomorphism& a, const Homomorphism& b);
  friend Homomorphism operator-(const Homomorphism& a);
  friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.blocks_ == b.blocks_;
  }

 private:
  GroupDescriptor domain_;
  GroupDescriptor codomain_;
  HomBlocks blocks_;
  bool is_automorphism_ = false;
};

/// g o h.
Homomorphism compose(const Homomorphism& g, const Homomorphism& h);

/// The map Y' -> Y with (x, adjoint(h) y) = (h x, y).
Homomorphism adjoint(const Homomorphism& h);

struct HeydeWitness {
  std::size_t i = 0;  // 1-based
  std::size_t j = 0;
  char sign = '+';
};

struct HeydeResult {
  bool holds = true;
  std::optional<HeydeWitness> witness;
};

/// delta_i + delta_j and delta_i - delta_j are automorphisms for all i != j.
HeydeResult heyde_condition(const std::vector<Homomorphism>& deltas);

std::string to_string(const Homomorphism& h);

}  // namespace lca
