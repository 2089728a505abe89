#pragma once

#include "lca/group.hpp"

#include <cstddef>
#include <vector>

namespace lca {

// Finite sampling region of a group: a box [lo_i, hi_i] per Z coordinate,
// the grid {j/M_i} per circle coordinate, and every finite coordinate.
class Window {
 public:
  Window(GroupDescriptor group, std::vector<std::int64_t> z_lo, std::vector<std::int64_t> z_hi,
         std::vector<std::int64_t> t_grid);

  /// Box [-radius, radius] in every Z coordinate and grid denominator `grid` on circles.
  static Window box(const GroupDescriptor& group, std::int64_t radius, std::int64_t grid = 8);

  const GroupDescriptor& group() const { return group_; }
  const std::vector<std::int64_t>& z_lo() const { return z_lo_; }
  const std::vector<std::int64_t>& z_hi() const { return z_hi_; }
  const std::vector<std::int64_t>& t_grid() const { return t_grid_; }

  /// Smallest half-width over the Z coordinates (large when there are none).
  std::int64_t radius() const;
  bool contains(const GroupElement& y) const;
  std::size_t size() const { return size_; }
  std::size_t index(const GroupElement& y) const;
  GroupElement point(std::size_t index) const;
  /// Dense order, matching index().
  std::vector<GroupElement> points() const;
  /// Points ordered by max-norm shell, then 0, 1, -1, 2, -2, ... per coordinate.
  std::vector<GroupElement> centered_points() const;

  /// { y : y and y + h both lie in the window }; throws WindowExhausted when empty.
  Window shifted_intersection(const GroupElement& h) const;

  friend Window product(const Window& a, const Window& b);
  friend bool operator==(const Window&, const Window&) = default;

 private:
  GroupDescriptor group_;
  std::vector<std::int64_t> z_lo_, z_hi_, t_grid_;
  std::vector<std::size_t> radix_;
  std::size_t size_ = 0;
};

Window product(const Window& a, const Window& b);
Window power(const Window& w, int n);

}  // namespace lca
