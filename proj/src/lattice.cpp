#include "lca/lattice.hpp"

#include "lca/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace lca {

namespace {

constexpr double kVanishFloor = 1e-9;
constexpr double kStepLimit = std::numbers::pi - 0.2;
constexpr double kSquareTol = 1e-6;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All multi-indices of length k with entries summing to exactly n.
void compositions(int k, int n, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = n; i >= 0; --i) {
    cur.push_back(i);
    compositions(k, n - i, cur, out);
    cur.pop_back();
  }
}

std::vector<MultiIndex> indices_of_order(int k, int n) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  if (k == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  compositions(k, n, cur, out);
  return out;
}

// Every beta <= alpha componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out{MultiIndex{}};
  for (int a : alpha) {
    std::vector<MultiIndex> next;
    for (const auto& p : out)
      for (int b = 0; b <= a; ++b) {
        auto q = p;
        q.push_back(b);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

GroupElement z_point(const GroupDescriptor& g, std::vector<std::int64_t> z) {
  return GroupElement(g, std::move(z), std::vector<Rational>(g.t_rank, Rational(0)),
                      std::vector<std::int64_t>(g.f_rank(), 0));
}

// Window points whose circle and finite coordinates are zero.
std::vector<GroupElement> z_points(const Window& w) {
  std::vector<GroupElement> out;
  for (const auto& y : w.points())
    if (y == y.z_part()) out.push_back(y);
  return out;
}

// Iterated difference along a multi-index at base point b.
Complex mixed_difference(const Window& w, const std::vector<Complex>& values, const GroupElement& b,
                         const MultiIndex& alpha, const std::vector<MultiIndex>& subs) {
  Complex sum = 0.0;
  int total = 0;
  for (int a : alpha) total += a;
  for (const auto& beta : subs) {
    double coef = 1.0;
    int s = 0;
    auto z = b.z();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      coef *= binom(alpha[i], beta[i]);
      s += beta[i];
      z[i] += beta[i];
    }
    if ((total - s) % 2) coef = -coef;
    sum += coef * values[w.index(z_point(w.group(), std::move(z)))];
  }
  return sum;
}

bool fits(const Window& w, const GroupElement& b, const MultiIndex& alpha) {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (b.z()[i] + alpha[i] > w.z_hi()[i]) return false;
  return true;
}

Complex wrap(Complex d) {
  double im = std::remainder(d.imag(), 2.0 * std::numbers::pi);
  if (im <= -std::numbers::pi) im += 2.0 * std::numbers::pi;
  return {d.real(), im};
}

}  // namespace

LatticeFunction::LatticeFunction(Window domain, ValueFn value, ValueFn log, VanishFn vanishes)
    : domain_(std::move(domain)), value_(std::move(value)), log_(std::move(log)), vanishes_(std::move(vanishes)) {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "lattice function needs a value callback");
}

LatticeFunction LatticeFunction::table(Window domain, std::vector<Complex> values) {
  if (values.size() != domain.size())
    throw Error(ErrorCode::InvalidArgument, "table size does not match its window");
  auto data = std::make_shared<const std::vector<Complex>>(std::move(values));
  Window w = domain;
  return LatticeFunction(std::move(domain), [data, w](const GroupElement& y) { return (*data)[w.index(y)]; });
}

LatticeFunction LatticeFunction::from_polynomial(Window domain, PolynomialFn p) {
  return LatticeFunction(std::move(domain), [p = std::move(p)](const GroupElement& y) { return p(y); });
}

Complex LatticeFunction::operator()(const GroupElement& y) const {
  if (!domain_.contains(y)) throw Error(ErrorCode::OutsideValidity, to_string(y) + " is outside the window");
  return value_(y);
}

Complex LatticeFunction::log_at(const GroupElement& y) const {
  if (!domain_.contains(y)) throw Error(ErrorCode::OutsideValidity, to_string(y) + " is outside the window");
  return log_ ? log_(y) : std::log(value_(y));
}

bool LatticeFunction::vanishes_at(const GroupElement& y) const {
  if (vanishes_) return vanishes_(y);
  if (log_) return std::isinf(log_(y).real()) && log_(y).real() < 0;
  return std::abs((*this)(y)) < kVanishFloor;
}

std::vector<Complex> LatticeFunction::tabulate() const {
  std::vector<Complex> out(domain_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = value_(domain_.point(i));
  return out;
}

LatticeFunction delta(const GroupElement& h, const LatticeFunction& f) {
  Window w = f.domain().shifted_intersection(h);
  return LatticeFunction(std::move(w), [f, h](const GroupElement& y) { return f(y + h) - f(y); });
}

DegreeResult polynomial_degree(const LatticeFunction& f, int d_max, double tol) {
  const Window& w = f.domain();
  const GroupDescriptor& g = w.group();
  if (d_max < 0) throw Error(ErrorCode::InvalidArgument, "negative degree cap");
  if (g.z_rank > 0 && w.radius() < d_max + 2)
    throw Error(ErrorCode::WindowTooSmall, "window radius " + std::to_string(w.radius()) + " < d_max + 2 = " +
                                               std::to_string(d_max + 2));
  auto values = f.tabulate();
  DegreeResult out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    GroupElement y = w.point(i);
    double r = std::abs(values[i] - values[w.index(y.z_part())]);
    if (r >= tol && r > out.residual) {
      out.residual = r;
      out.witness = y;
    }
  }
  if (out.witness) return out;
  if (g.z_rank == 0) {
    out.degree = 0;
    return out;
  }
  auto bases = z_points(w);
  for (int n = 0; n <= d_max; ++n) {
    double worst = 0.0;
    std::optional<GroupElement> where;
    for (const auto& alpha : indices_of_order(g.z_rank, n + 1)) {
      auto subs = sub_indices(alpha);
      for (const auto& b : bases) {
        if (!fits(w, b, alpha)) continue;
        double r = std::abs(mixed_difference(w, values, b, alpha, subs));
        if (r > worst) {
          worst = r;
          where = b;
        }
      }
    }
    if (worst < tol) {
      out.degree = n;
      out.residual = worst;
      return out;
    }
    out.residual = worst;
    out.witness = where;
  }
  return out;
}

LatticeFunction branch_log(const LatticeFunction& f) {
  const Window& w = f.domain();
  const GroupDescriptor& g = w.group();
  GroupElement zero = GroupElement::zero(g);
  if (!w.contains(zero)) throw Error(ErrorCode::InvalidArgument, "branch_log needs 0 in the window");
  auto pts = w.points();
  for (const auto& y : pts)
    if (f.vanishes_at(y)) throw Error(ErrorCode::VanishingValue, to_string(y));
  std::vector<Complex> logs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) logs[i] = f.log_at(pts[i]);
  if (std::abs(wrap(logs[w.index(zero)])) > 1e-9)
    throw Error(ErrorCode::InvalidArgument, "branch_log needs f(0) = 1");

  auto inc = [&](const GroupElement& a, const GroupElement& b, bool check) {
    Complex d = wrap(logs[w.index(b)] - logs[w.index(a)]);
    if (check && std::abs(d.imag()) > kStepLimit)
      throw Error(ErrorCode::StepTooLarge, to_string(a) + " -> " + to_string(b));
    return d;
  };

  std::vector<Complex> out(pts.size());
  std::vector<char> done(pts.size(), 0);
  auto zs = z_points(w);
  auto l1 = [](const GroupElement& y) {
    std::int64_t s = 0;
    for (auto v : y.z()) s += std::abs(v);
    return s;
  };
  std::stable_sort(zs.begin(), zs.end(), [&](const auto& a, const auto& b) { return l1(a) < l1(b); });
  for (const auto& y : zs) {
    std::size_t idx = w.index(y);
    if (y.is_zero()) {
      done[idx] = 1;
      continue;
    }
    auto z = y.z();
    int last = g.z_rank - 1;
    while (z[last] == 0) --last;
    z[last] += z[last] > 0 ? -1 : 1;
    GroupElement pred = z_point(g, std::move(z));
    out[idx] = out[w.index(pred)] + inc(pred, y, true);
    done[idx] = 1;
  }
  for (const auto& y : zs)
    for (int i = 0; i < g.z_rank; ++i)
      for (int j = i + 1; j < g.z_rank; ++j) {
        GroupElement ei = GroupElement::z_unit(g, i), ej = GroupElement::z_unit(g, j);
        if (!w.contains(y + ei) || !w.contains(y + ej) || !w.contains(y + ei + ej)) continue;
        Complex s = inc(y, y + ei, true) + inc(y + ei, y + ei + ej, true) - inc(y + ej, y + ei + ej, true) -
                    inc(y, y + ej, true);
        if (std::abs(s) >= kSquareTol)
          throw Error(ErrorCode::BranchInconsistency,
                      "square at " + to_string(y) + " along axes " + std::to_string(i) + "," + std::to_string(j));
      }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (done[i]) continue;
    GroupElement base = pts[i].z_part();
    out[i] = out[w.index(base)] + inc(base, pts[i], false);
  }
  return LatticeFunction::table(w, std::move(out));
}

FitResult fit_polynomial(const LatticeFunction& f, int degree, double tol) {
  const Window& w = f.domain();
  const GroupDescriptor& g = w.group();
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative fit degree");
  for (int i = 0; i < g.z_rank; ++i)
    if (w.z_lo()[i] > 0 || w.z_hi()[i] < degree)
      throw Error(ErrorCode::WindowTooSmall, "fit of degree " + std::to_string(degree) + " needs [0, d] in the window");
  auto values = f.tabulate();

  // Stirling numbers of the first kind, signed: C(y, a) = sum_k s(a, k) y^k / a!.
  std::vector<std::vector<double>> s(degree + 1, std::vector<double>(degree + 1, 0.0));
  s[0][0] = 1.0;
  for (int n = 0; n < degree; ++n)
    for (int k = 0; k <= n + 1; ++k)
      s[n + 1][k] = (k > 0 ? s[n][k - 1] : 0.0) - n * s[n][k];
  std::vector<double> fact(degree + 1, 1.0);
  for (int n = 1; n <= degree; ++n) fact[n] = fact[n - 1] * n;

  std::map<MultiIndex, Complex> mono;
  GroupElement zero = GroupElement::zero(g);
  for (int n = 0; n <= degree; ++n)
    for (const auto& alpha : indices_of_order(g.z_rank, n)) {
      auto subs = sub_indices(alpha);
      Complex c = mixed_difference(w, values, zero, alpha, subs);
      for (const auto& beta : subs) {
        double coef = 1.0;
        for (std::size_t i = 0; i < alpha.size(); ++i) coef *= s[alpha[i]][beta[i]] / fact[alpha[i]];
        if (coef != 0.0) mono[beta] += c * coef;
      }
    }
  FitResult out;
  out.poly = PolynomialFn(g, mono).pruned(1e-10);
  for (std::size_t i = 0; i < values.size(); ++i) {
    GroupElement y = w.point(i);
    double r = std::abs(values[i] - out.poly(y));
    if (r > out.residual) {
      out.residual = r;
      out.witness = y;
    }
  }
  out.ok = out.residual < tol;
  if (out.ok) out.witness.reset();
  return out;
}

}  // namespace lca
