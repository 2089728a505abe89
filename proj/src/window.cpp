#include "lca/window.hpp"

#include "lca/error.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace lca {

Window::Window(GroupDescriptor group, std::vector<std::int64_t> z_lo, std::vector<std::int64_t> z_hi,
               std::vector<std::int64_t> t_grid)
    : group_(std::move(group)), z_lo_(std::move(z_lo)), z_hi_(std::move(z_hi)), t_grid_(std::move(t_grid)) {
  if (static_cast<int>(z_lo_.size()) != group_.z_rank || static_cast<int>(z_hi_.size()) != group_.z_rank ||
      static_cast<int>(t_grid_.size()) != group_.t_rank)
    throw Error(ErrorCode::InvalidArgument, "window shape does not match " + to_string(group_));
  for (int i = 0; i < group_.z_rank; ++i)
    if (z_hi_[i] < z_lo_[i]) throw Error(ErrorCode::WindowExhausted, "empty Z range in window");
  for (auto m : t_grid_)
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "circle grid denominator must be >= 2");
  size_ = 1;
  for (int i = 0; i < group_.z_rank; ++i) radix_.push_back(static_cast<std::size_t>(z_hi_[i] - z_lo_[i] + 1));
  for (auto m : t_grid_) radix_.push_back(static_cast<std::size_t>(m));
  for (auto n : group_.finite_orders) radix_.push_back(static_cast<std::size_t>(n));
  for (auto r : radix_) size_ *= r;
}

Window Window::box(const GroupDescriptor& group, std::int64_t radius, std::int64_t grid) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative window radius");
  return Window(group, std::vector<std::int64_t>(group.z_rank, -radius), std::vector<std::int64_t>(group.z_rank, radius),
                std::vector<std::int64_t>(group.t_rank, grid));
}

std::int64_t Window::radius() const {
  std::int64_t r = std::numeric_limits<std::int64_t>::max() / 4;
  for (int i = 0; i < group_.z_rank; ++i) r = std::min(r, (z_hi_[i] - z_lo_[i]) / 2);
  return r;
}

bool Window::contains(const GroupElement& y) const {
  if (y.owner() != group_) return false;
  for (int i = 0; i < group_.z_rank; ++i)
    if (y.z()[i] < z_lo_[i] || y.z()[i] > z_hi_[i]) return false;
  for (int i = 0; i < group_.t_rank; ++i)
    if ((y.t()[i] * t_grid_[i]).denominator() != 1) return false;
  return true;
}

std::size_t Window::index(const GroupElement& y) const {
  if (!contains(y)) throw Error(ErrorCode::OutsideValidity, to_string(y) + " is outside the window");
  std::size_t idx = 0;
  std::size_t k = 0;
  for (int i = 0; i < group_.z_rank; ++i, ++k) idx = idx * radix_[k] + static_cast<std::size_t>(y.z()[i] - z_lo_[i]);
  for (int i = 0; i < group_.t_rank; ++i, ++k)
    idx = idx * radix_[k] + static_cast<std::size_t>((y.t()[i] * t_grid_[i]).numerator());
  for (int i = 0; i < group_.f_rank(); ++i, ++k) idx = idx * radix_[k] + static_cast<std::size_t>(y.f()[i]);
  return idx;
}

GroupElement Window::point(std::size_t index) const {
  std::vector<std::size_t> digits(radix_.size());
  for (std::size_t k = radix_.size(); k-- > 0;) {
    digits[k] = index % radix_[k];
    index /= radix_[k];
  }
  std::vector<std::int64_t> z, f;
  std::vector<Rational> t;
  std::size_t k = 0;
  for (int i = 0; i < group_.z_rank; ++i, ++k) z.push_back(z_lo_[i] + static_cast<std::int64_t>(digits[k]));
  for (int i = 0; i < group_.t_rank; ++i, ++k) t.emplace_back(static_cast<std::int64_t>(digits[k]), t_grid_[i]);
  for (int i = 0; i < group_.f_rank(); ++i, ++k) f.push_back(static_cast<std::int64_t>(digits[k]));
  return GroupElement(group_, std::move(z), std::move(t), std::move(f));
}

std::vector<GroupElement> Window::points() const {
  std::vector<GroupElement> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(point(i));
  return out;
}

std::vector<GroupElement> Window::centered_points() const {
  auto rank = [](std::int64_t v) { return v > 0 ? 2 * v - 1 : -2 * v; };
  auto key = [&](const GroupElement& y) {
    std::int64_t shell = 0;
    std::vector<std::int64_t> ranks;
    for (auto v : y.z()) {
      shell = std::max(shell, std::abs(v));
      ranks.push_back(rank(v));
    }
    return std::make_tuple(shell, ranks, y.t(), y.f());
  };
  auto pts = points();
  std::stable_sort(pts.begin(), pts.end(), [&](const GroupElement& a, const GroupElement& b) { return key(a) < key(b); });
  return pts;
}

Window Window::shifted_intersection(const GroupElement& h) const {
  if (h.owner() != group_) throw Error(ErrorCode::MismatchedGroups, "shift is not in the window's group");
  std::vector<std::int64_t> lo = z_lo_, hi = z_hi_;
  for (int i = 0; i < group_.z_rank; ++i) {
    lo[i] = std::max(z_lo_[i], z_lo_[i] - h.z()[i]);
    hi[i] = std::min(z_hi_[i], z_hi_[i] - h.z()[i]);
    if (hi[i] < lo[i]) throw Error(ErrorCode::WindowExhausted, "shift " + to_string(h) + " leaves no window points");
  }
  for (int i = 0; i < group_.t_rank; ++i)
    if ((h.t()[i] * t_grid_[i]).denominator() != 1)
      throw Error(ErrorCode::WindowExhausted, "shift " + to_string(h) + " is off the circle grid");
  return Window(group_, lo, hi, t_grid_);
}

Window product(const Window& a, const Window& b) {
  auto cat = [](std::vector<std::int64_t> x, const std::vector<std::int64_t>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  return Window(product(a.group_, b.group_), cat(a.z_lo_, b.z_lo_), cat(a.z_hi_, b.z_hi_), cat(a.t_grid_, b.t_grid_));
}

Window power(const Window& w, int n) {
  Window out = w;
  for (int i = 1; i < n; ++i) out = product(out, w);
  return out;
}

}  // namespace lca
