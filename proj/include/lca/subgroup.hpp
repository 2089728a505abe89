#pragma once

#include "lca/group.hpp"

#include <optional>
#include <vector>

namespace lca {

// Coordinatewise subgroup description:
//   z[i] = m  ->  mZ in the i-th Z factor (m = 0 is {0}, m = 1 is all of Z)
//   t[i] = m  ->  {0, 1/m, ..., (m-1)/m} in the i-th circle (m = 0 is the whole circle)
//   f[i] = d  ->  d Z_n in the i-th finite factor, d | n (d = n is {0})
struct SubgroupFactors {
  std::vector<std::int64_t> z;
  std::vector<std::int64_t> t;
  std::vector<std::int64_t> f;

  friend bool operator==(const SubgroupFactors&, const SubgroupFactors&) = default;
};

class Subgroup {
 public:
  enum class Kind { Factors, Generated };

  static Subgroup whole(const GroupDescriptor& g);
  static Subgroup trivial(const GroupDescriptor& g);
  static Subgroup multiples_in_z(const GroupDescriptor& g, int coord, std::int64_t m);
  static Subgroup cyclic_in_t(const GroupDescriptor& g, int coord, std::int64_t m);
  static Subgroup from_factors(const GroupDescriptor& g, SubgroupFactors factors);
  /// Subgroup generated by finitely many elements of finite order.
  static Subgroup generated(const GroupDescriptor& g, std::vector<GroupElement> generators);

  const GroupDescriptor& owner() const { return owner_; }
  Kind kind() const { return kind_; }
  const std::optional<SubgroupFactors>& factors() const { return factors_; }
  const std::vector<GroupElement>& generators() const { return generators_; }

  bool contains(const GroupElement& x) const;
  bool is_compact() const;
  bool is_finite() const;
  bool is_trivial() const;
  /// Elements of a finite subgroup, sorted.
  std::vector<GroupElement> elements() const;
  /// 2K = K (for compact K this is the Corwin property of K itself).
  bool is_corwin() const;

 private:
  Subgroup(GroupDescriptor owner, Kind kind) : owner_(std::move(owner)), kind_(kind) {}

  GroupDescriptor owner_;
  Kind kind_;
  std::optional<SubgroupFactors> factors_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;  // closure, Generated only
};

bool same_subgroup(const Subgroup& a, const Subgroup& b);
std::string to_string(const Subgroup& s);

/// A(Y, K) = { y in Y : (x, y) = 1 for all x in K }.
Subgroup annihilator(const GroupDescriptor& y, const Subgroup& k);

struct MulMap {
  Subgroup image;   // X^{(n)}
  Subgroup kernel;  // X_{(n)}
};
MulMap mul_map(const GroupDescriptor& x, std::int64_t n);

/// Isomorphism between a coordinatewise subgroup S and an abstract group of
/// the same family. Z factors mZ become Z (m = 0 drops the coordinate), a
/// finite circle subgroup {j/m} becomes Z_m (appended after the finite
/// factors), and d Z_n becomes Z_{n/d}.
class SubgroupIso {
 public:
  explicit SubgroupIso(const Subgroup& s);

  const GroupDescriptor& abstract_group() const { return abstract_; }
  const Subgroup& subgroup() const { return subgroup_; }
  GroupElement embed(const GroupElement& a) const;
  /// Preimage of a point of the subgroup; throws OutsideValidity otherwise.
  GroupElement restrict(const GroupElement& y) const;
  /// Index step along each Z coordinate of the abstract group.
  std::int64_t z_scale(int abstract_coord) const { return z_scale_.at(abstract_coord); }
  /// Owner-side Z coordinate feeding each abstract Z coordinate.
  int z_source(int abstract_coord) const { return z_source_.at(abstract_coord); }

 private:
  Subgroup subgroup_;
  GroupDescriptor abstract_;
  std::vector<int> z_source_;
  std::vector<std::int64_t> z_scale_;
  std::vector<int> t_source_;              // whole-circle factors
  std::vector<int> tcyc_source_;           // finite circle subgroups
  std::vector<std::int64_t> tcyc_order_;
  std::vector<int> f_source_;
  std::vector<std::int64_t> f_step_;
};

}  // namespace lca
