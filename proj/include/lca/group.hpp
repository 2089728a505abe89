#pragma once

// Groups of the form Z^a x T^b x Z_{n_1} x ... x Z_{n_k} and their duals.
//
// Torus coordinates are exact fractions of a full turn. The dual of
// Z^a x T^b x F is T^a x Z^b x F, and the pairing is
//   (x, y) = exp(2 pi i [ <x.z, y.t> + <x.t, y.z> + sum_i x.f_i y.f_i / n_i ]).

#include "lca/rational.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lca {

using Complex = std::complex<double>;

struct GroupDescriptor {
  int z_rank = 0;
  int t_rank = 0;
  std::vector<std::int64_t> finite_orders;

  GroupDescriptor() = default;
  GroupDescriptor(int z, int t, std::vector<std::int64_t> finite = {});

  int f_rank() const { return static_cast<int>(finite_orders.size()); }
  bool is_finite() const { return z_rank == 0 && t_rank == 0; }
  bool is_discrete() const { return t_rank == 0; }
  bool is_compact() const { return z_rank == 0; }
  bool is_trivial() const { return is_finite() && finite_orders.empty(); }
  /// Order of a finite group; throws for infinite groups.
  std::int64_t order() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
  friend auto operator<=>(const GroupDescriptor&, const GroupDescriptor&) = default;
};

std::string to_string(const GroupDescriptor& g);

GroupDescriptor dual_group(const GroupDescriptor& g);
GroupDescriptor product(const GroupDescriptor& a, const GroupDescriptor& b);
/// g^n with coordinates laid out block by block: z of every copy, then t, then f.
GroupDescriptor power(const GroupDescriptor& g, int n);

class GroupElement {
 public:
  GroupElement() = default;
  /// Validates coordinate counts and reduces t mod 1 and f mod n_i.
  GroupElement(GroupDescriptor owner, std::vector<std::int64_t> z, std::vector<Rational> t,
               std::vector<std::int64_t> f);

  static GroupElement zero(const GroupDescriptor& owner);
  /// Unit vector along the i-th Z coordinate.
  static GroupElement z_unit(const GroupDescriptor& owner, int i);

  const GroupDescriptor& owner() const { return owner_; }
  const std::vector<std::int64_t>& z() const { return z_; }
  const std::vector<Rational>& t() const { return t_; }
  const std::vector<std::int64_t>& f() const { return f_; }

  bool is_zero() const;
  /// Order of the element; 0 when it has infinite order.
  std::int64_t order() const;
  /// Same point with every torus and finite coordinate set to zero.
  GroupElement z_part() const;

  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator*(std::int64_t n, const GroupElement& x);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b);

 private:
  GroupDescriptor owner_;
  std::vector<std::int64_t> z_;
  std::vector<Rational> t_;
  std::vector<std::int64_t> f_;
};

std::string to_string(const GroupElement& x);

/// Concatenates points of g_1, ..., g_n into a point of their product.
GroupElement concat(const std::vector<GroupElement>& parts);
GroupElement concat(const GroupElement& a, const GroupElement& b);
/// Inverse of concat for a point of power(g, n).
std::vector<GroupElement> split(const GroupElement& x, const GroupDescriptor& g, int n);

/// All elements of a finite group in lexicographic coordinate order.
std::vector<GroupElement> enumerate(const GroupDescriptor& g);

/// Angle of (x, y) as an exact fraction of a turn in [0, 1).
Rational pair_angle(const GroupElement& x, const GroupElement& y);
Complex pair(const GroupElement& x, const GroupElement& y);
/// exp(2 pi i r), exact at multiples of a quarter turn.
Complex unit_from_turns(const Rational& r);

std::int64_t mod(std::int64_t a, std::int64_t n);

}  // namespace lca
