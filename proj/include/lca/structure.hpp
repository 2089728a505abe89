#pragma once

#include "lca/group.hpp"
#include "lca/subgroup.hpp"

#include <optional>
#include <vector>

namespace lca {

struct AdmissibleResult {
  bool admissible = true;
  std::optional<std::size_t> failing_index;  // 0-based position of the first a_j with X^{(a_j)} = {0}
};

/// {a_j} is admissible for X if X^{(a_j)} != {0} for every j.
AdmissibleResult is_admissible(const std::vector<std::int64_t>& coeffs, const GroupDescriptor& x);

struct StructuralPredicates {
  bool torsion_free = false;
  bool corwin = false;            // X^{(2)} = X
  bool has_order2_element = false;
  std::optional<GroupElement> order2_witness;
  Subgroup connected_component;   // {0}^a x T^b x {0}
  /// Number of elements of order exactly 2 in the connected component (2^b - 1).
  std::int64_t order2_in_component = 0;
  std::optional<std::int64_t> prime;
  bool p_image_trivial = false;   // X^{(p)} = {0} for the requested prime
};

StructuralPredicates structural_predicates(const GroupDescriptor& x, std::optional<std::int64_t> prime = {});

bool is_prime(std::int64_t p);
/// Some prime p with X^{(p)} = {0}, if one exists.
std::optional<std::int64_t> exponent_prime(const GroupDescriptor& x);

}  // namespace lca
