#include "lca/homomorphism.hpp"

#include "lca/error.hpp"

#include <set>

namespace lca {

namespace {

template <typename T>
std::vector<std::vector<T>> resized(std::vector<std::vector<T>> m, int rows, int cols, const char* name) {
  if (m.empty()) return std::vector<std::vector<T>>(rows, std::vector<T>(cols, T(0)));
  if (static_cast<int>(m.size()) != rows)
    throw Error(ErrorCode::InvalidArgument, std::string("block ") + name + " has the wrong number of rows");
  for (auto& row : m)
    if (static_cast<int>(row.size()) != cols)
      throw Error(ErrorCode::InvalidArgument, std::string("block ") + name + " has the wrong number of columns");
  return m;
}

template <typename A, typename B>
auto mat_mul(const std::vector<std::vector<A>>& a, const std::vector<std::vector<B>>& b, std::size_t inner,
             std::size_t cols) {
  using R = decltype(A() * B());
  std::vector<std::vector<R>> out(a.size(), std::vector<R>(cols, R(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

template <typename T>
std::vector<std::vector<T>> mat_add(std::vector<std::vector<T>> a, const std::vector<std::vector<T>>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

template <typename T>
std::vector<std::vector<T>> mat_neg(std::vector<std::vector<T>> a) {
  for (auto& row : a)
    for (auto& v : row) v = -v;
  return a;
}

template <typename T>
std::vector<std::vector<T>> transpose(const std::vector<std::vector<T>>& a, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<T>> out(cols, std::vector<T>(rows, T(0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j][i] = a[i][j];
  return out;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out;
  for (const auto& row : m) {
    out.emplace_back();
    for (auto v : row) out.back().emplace_back(v);
  }
  return out;
}

// Inverse of a square integer matrix over Q; nullopt when singular.
std::optional<RatMatrix> rational_inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix a = to_rat(m);
  RatMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
  auto inv = rational_inverse(m);
  if (!inv) return std::nullopt;
  IntMatrix out;
  for (const auto& row : *inv) {
    out.emplace_back();
    for (const auto& v : row) {
      if (v.denominator() != 1) return std::nullopt;
      out.back().push_back(v.numerator());
    }
  }
  return out;
}

GroupDescriptor finite_part(const GroupDescriptor& g) { return GroupDescriptor(0, 0, g.finite_orders); }

std::vector<std::int64_t> apply_ff(const IntMatrix& ff, const std::vector<std::int64_t>& x,
                                   const std::vector<std::int64_t>& orders) {
  std::vector<std::int64_t> out(orders.size(), 0);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc = mod(acc + ff[i][j] * x[j], orders[i]);
    out[i] = acc;
  }
  return out;
}

bool finite_sector_bijective(const HomBlocks& b, const GroupDescriptor& g) {
  if (g.finite_orders.empty()) return true;
  std::set<std::vector<std::int64_t>> images;
  for (const auto& x : enumerate(finite_part(g))) images.insert(apply_ff(b.ff, x.f(), g.finite_orders));
  return static_cast<std::int64_t>(images.size()) == finite_part(g).order();
}

}  // namespace

Homomorphism::Homomorphism(GroupDescriptor domain, GroupDescriptor codomain, HomBlocks blocks)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), blocks_(std::move(blocks)) {
  const int dz = domain_.z_rank, dt = domain_.t_rank, df = domain_.f_rank();
  const int cz = codomain_.z_rank, ct = codomain_.t_rank, cf = codomain_.f_rank();
  auto& b = blocks_;
  b.zz = resized(std::move(b.zz), cz, dz, "zz");
  b.zt = resized(std::move(b.zt), ct, dz, "zt");
  b.zf = resized(std::move(b.zf), cf, dz, "zf");
  b.tt = resized(std::move(b.tt), ct, dt, "tt");
  b.ft = resized(std::move(b.ft), ct, df, "ft");
  b.ff = resized(std::move(b.ff), cf, df, "ff");
  for (auto& row : b.zt)
    for (auto& r : row) r = frac(r);
  for (int i = 0; i < ct; ++i)
    for (int j = 0; j < df; ++j) {
      if ((b.ft[i][j] * domain_.finite_orders[j]).denominator() != 1)
        throw Error(ErrorCode::InvalidArgument, "ft block entry is not killed by the order of its source factor");
      b.ft[i][j] = frac(b.ft[i][j]);
    }
  for (int i = 0; i < cf; ++i) {
    const std::int64_t target = codomain_.finite_orders[i];
    for (int j = 0; j < dz; ++j) b.zf[i][j] = mod(b.zf[i][j], target);
    for (int j = 0; j < df; ++j) {
      b.ff[i][j] = mod(b.ff[i][j], target);
      if (mod(b.ff[i][j] * domain_.finite_orders[j], target) != 0)
        throw Error(ErrorCode::InvalidArgument,
                    "ff block: image of a generator of order " + std::to_string(domain_.finite_orders[j]) +
                        " must have order dividing it");
    }
  }
  if (domain_ == codomain_) {
    auto det_ok = [](const IntMatrix& m) { return unimodular_inverse(m).has_value(); };
    is_automorphism_ = det_ok(b.zz) && det_ok(b.tt) && finite_sector_bijective(b, domain_);
  }
}

Homomorphism Homomorphism::identity(const GroupDescriptor& g) { return scalar(g, 1); }

Homomorphism Homomorphism::scalar(const GroupDescriptor& g, std::int64_t n) {
  HomBlocks b;
  b.zz = IntMatrix(g.z_rank, std::vector<std::int64_t>(g.z_rank, 0));
  b.tt = IntMatrix(g.t_rank, std::vector<std::int64_t>(g.t_rank, 0));
  b.ff = IntMatrix(g.f_rank(), std::vector<std::int64_t>(g.f_rank(), 0));
  for (int i = 0; i < g.z_rank; ++i) b.zz[i][i] = n;
  for (int i = 0; i < g.t_rank; ++i) b.tt[i][i] = n;
  for (int i = 0; i < g.f_rank(); ++i) b.ff[i][i] = n;
  return Homomorphism(g, g, std::move(b));
}

GroupElement Homomorphism::operator()(const GroupElement& x) const {
  if (x.owner() != domain_)
    throw Error(ErrorCode::MismatchedGroups, "applying a map on " + to_string(domain_) + " to " + to_string(x));
  const auto& b = blocks_;
  std::vector<std::int64_t> z(codomain_.z_rank, 0), f(codomain_.f_rank(), 0);
  std::vector<Rational> t(codomain_.t_rank, Rational(0));
  for (int i = 0; i < codomain_.z_rank; ++i)
    for (int j = 0; j < domain_.z_rank; ++j) z[i] += b.zz[i][j] * x.z()[j];
  for (int i = 0; i < codomain_.t_rank; ++i) {
    Rational acc(0);
    for (int j = 0; j < domain_.z_rank; ++j) acc = frac(acc + b.zt[i][j] * x.z()[j]);
    for (int j = 0; j < domain_.t_rank; ++j) acc = frac(acc + x.t()[j] * b.tt[i][j]);
    for (int j = 0; j < domain_.f_rank(); ++j) acc = frac(acc + b.ft[i][j] * x.f()[j]);
    t[i] = acc;
  }
  for (int i = 0; i < codomain_.f_rank(); ++i) {
    const std::int64_t n = codomain_.finite_orders[i];
    std::int64_t acc = 0;
    for (int j = 0; j < domain_.z_rank; ++j) acc = mod(acc + b.zf[i][j] * mod(x.z()[j], n), n);
    for (int j = 0; j < domain_.f_rank(); ++j) acc = mod(acc + b.ff[i][j] * x.f()[j], n);
    f[i] = acc;
  }
  return GroupElement(codomain_, std::move(z), std::move(t), std::move(f));
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& h) {
  if (h.codomain() != g.domain()) throw Error(ErrorCode::MismatchedGroups, "compose: codomain/domain mismatch");
  const auto& A = h.domain();
  const auto& B = h.codomain();
  const auto& gb = g.blocks();
  const auto& hb = h.blocks();
  const std::size_t az = A.z_rank, at = A.t_rank, af = A.f_rank();
  const std::size_t bz = B.z_rank, bt = B.t_rank, bf = B.f_rank();
  HomBlocks c;
  c.zz = mat_mul(gb.zz, hb.zz, bz, az);
  c.zt = mat_add(mat_add(mat_mul(gb.zt, to_rat(hb.zz), bz, az), mat_mul(to_rat(gb.tt), hb.zt, bt, az)),
                 mat_mul(gb.ft, to_rat(hb.zf), bf, az));
  c.zf = mat_add(mat_mul(gb.zf, hb.zz, bz, az), mat_mul(gb.ff, hb.zf, bf, az));
  c.tt = mat_mul(gb.tt, hb.tt, bt, at);
  c.ft = mat_add(mat_mul(to_rat(gb.tt), hb.ft, bt, af), mat_mul(gb.ft, to_rat(hb.ff), bf, af));
  c.ff = mat_mul(gb.ff, hb.ff, bf, af);
  return Homomorphism(A, g.codomain(), std::move(c));
}

Homomorphism operator+(const Homomorphism& a, const Homomorphism& b) {
  if (a.domain() != b.domain() || a.codomain() != b.codomain())
    throw Error(ErrorCode::MismatchedGroups, "sum of maps between different groups");
  const auto& x = a.blocks();
  const auto& y = b.blocks();
  return Homomorphism(a.domain(), a.codomain(),
                      HomBlocks{mat_add(x.zz, y.zz), mat_add(x.zt, y.zt), mat_add(x.zf, y.zf), mat_add(x.tt, y.tt),
                                mat_add(x.ft, y.ft), mat_add(x.ff, y.ff)});
}

Homomorphism operator-(const Homomorphism& a) {
  const auto& x = a.blocks();
  return Homomorphism(a.domain(), a.codomain(),
                      HomBlocks{mat_neg(x.zz), mat_neg(x.zt), mat_neg(x.zf), mat_neg(x.tt), mat_neg(x.ft),
                                mat_neg(x.ff)});
}

Homomorphism operator-(const Homomorphism& a, const Homomorphism& b) { return a + (-b); }

Homomorphism Homomorphism::inverse() const {
  if (!is_automorphism_) throw Error(ErrorCode::NotAnAutomorphism, to_string(*this) + " is not invertible");
  const auto& g = domain_;
  const auto& b = blocks_;
  const std::size_t z = g.z_rank, t = g.t_rank, f = g.f_rank();
  HomBlocks inv;
  inv.zz = *unimodular_inverse(b.zz);
  inv.tt = *unimodular_inverse(b.tt);
  inv.ff = IntMatrix(f, std::vector<std::int64_t>(f, 0));
  if (f > 0) {
    auto finite = enumerate(finite_part(g));
    for (std::size_t j = 0; j < f; ++j) {
      std::vector<std::int64_t> unit(f, 0);
      unit[j] = 1;
      for (const auto& x : finite)
        if (apply_ff(b.ff, x.f(), g.finite_orders) == unit) {
          for (std::size_t i = 0; i < f; ++i) inv.ff[i][j] = x.f()[i];
          break;
        }
    }
  }
  // Off-diagonal blocks from the triangular structure.
  inv.zf = mat_neg(mat_mul(inv.ff, mat_mul(b.zf, inv.zz, z, z), f, z));
  inv.ft = mat_neg(mat_mul(to_rat(inv.tt), mat_mul(b.ft, to_rat(inv.ff), f, f), t, f));
  inv.zt = mat_neg(mat_mul(to_rat(inv.tt),
                           mat_add(mat_mul(b.zt, to_rat(inv.zz), z, z), mat_mul(b.ft, to_rat(inv.zf), f, z)), t, z));
  Homomorphism out(g, g, std::move(inv));
  if (compose(*this, out) != identity(g))
    throw Error(ErrorCode::NotAnAutomorphism, "inverse construction failed for " + to_string(*this));
  return out;
}

Homomorphism adjoint(const Homomorphism& h) {
  const auto& d = h.domain();
  const auto& c = h.codomain();
  const auto& b = h.blocks();
  HomBlocks a;
  a.zz = transpose(b.tt, c.t_rank, d.t_rank);
  a.tt = transpose(b.zz, c.z_rank, d.z_rank);
  a.zt = transpose(b.zt, c.t_rank, d.z_rank);
  a.zf = IntMatrix(d.f_rank(), std::vector<std::int64_t>(c.t_rank, 0));
  for (int j = 0; j < d.f_rank(); ++j)
    for (int i = 0; i < c.t_rank; ++i) {
      Rational v = b.ft[i][j] * d.finite_orders[j];
      a.zf[j][i] = v.numerator();
    }
  a.ft = RatMatrix(d.z_rank, std::vector<Rational>(c.f_rank(), Rational(0)));
  for (int j = 0; j < d.z_rank; ++j)
    for (int i = 0; i < c.f_rank(); ++i) a.ft[j][i] = Rational(b.zf[i][j], c.finite_orders[i]);
  a.ff = IntMatrix(d.f_rank(), std::vector<std::int64_t>(c.f_rank(), 0));
  for (int j = 0; j < d.f_rank(); ++j)
    for (int i = 0; i < c.f_rank(); ++i) a.ff[j][i] = b.ff[i][j] * d.finite_orders[j] / c.finite_orders[i];
  return Homomorphism(dual_group(c), dual_group(d), std::move(a));
}

HeydeResult heyde_condition(const std::vector<Homomorphism>& deltas) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!deltas[i].is_automorphism())
      throw Error(ErrorCode::NotAnAutomorphism, "delta_" + std::to_string(i + 1) + " = " + to_string(deltas[i]));
    if (deltas[i].domain() != deltas.front().domain())
      throw Error(ErrorCode::MismatchedGroups, "deltas act on different groups");
  }
  for (std::size_t i = 0; i < deltas.size(); ++i)
    for (std::size_t j = i + 1; j < deltas.size(); ++j) {
      if (!(deltas[i] + deltas[j]).is_automorphism()) return {false, HeydeWitness{i + 1, j + 1, '+'}};
      if (!(deltas[i] - deltas[j]).is_automorphism()) return {false, HeydeWitness{i + 1, j + 1, '-'}};
    }
  return {};
}

std::string to_string(const Homomorphism& h) {
  const auto& b = h.blocks();
  auto dump_int = [](const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
      s += i ? ";" : "";
      for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    }
    return s + "]";
  };
  std::string out = to_string(h.domain()) + " -> " + to_string(h.codomain());
  if (!b.zz.empty()) out += " zz=" + dump_int(b.zz);
  if (!b.tt.empty()) out += " tt=" + dump_int(b.tt);
  if (!b.ff.empty()) out += " ff=" + dump_int(b.ff);
  return out;
}

}  // namespace lca
