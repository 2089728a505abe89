#include "lca/polynomial.hpp"

#include "lca/error.hpp"

#include <cmath>
#include <sstream>

namespace lca {

namespace {

void check_index(const GroupDescriptor& g, const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != g.z_rank)
    throw Error(ErrorCode::InvalidArgument, "multi-index length does not match the Z rank of " + to_string(g));
  for (int a : alpha)
    if (a < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in multi-index");
}

}  // namespace

PolynomialFn::PolynomialFn(GroupDescriptor dual_owner, const std::map<MultiIndex, Complex>& coeffs)
    : owner_(std::move(dual_owner)) {
  for (const auto& [alpha, c] : coeffs) {
    check_index(owner_, alpha);
    if (c != Complex(0.0)) coeffs_[alpha] = c;
  }
}

PolynomialFn PolynomialFn::monomial(const GroupDescriptor& dual_owner, MultiIndex alpha, Complex c) {
  return PolynomialFn(dual_owner, {{std::move(alpha), c}});
}

Complex PolynomialFn::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

int PolynomialFn::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : coeffs_) {
    int s = 0;
    for (int a : alpha) s += a;
    d = std::max(d, s);
  }
  return d;
}

bool PolynomialFn::is_real(double tol) const {
  for (const auto& [alpha, c] : coeffs_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

Complex PolynomialFn::operator()(const GroupElement& y) const {
  if (y.owner() != owner_) throw Error(ErrorCode::MismatchedGroups, "polynomial evaluated off its group");
  return (*this)(y.z());
}

Complex PolynomialFn::operator()(const std::vector<std::int64_t>& z) const {
  Complex sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    double term = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) term *= std::pow(static_cast<double>(z[i]), alpha[i]);
    sum += c * term;
  }
  return sum;
}

PolynomialFn PolynomialFn::pruned(double tol) const {
  PolynomialFn out(owner_);
  for (const auto& [alpha, c] : coeffs_)
    if (std::abs(c) >= tol) out.coeffs_[alpha] = c;
  return out;
}

PolynomialFn operator+(const PolynomialFn& a, const PolynomialFn& b) {
  if (a.owner_ != b.owner_) throw Error(ErrorCode::MismatchedGroups, "adding polynomials on different groups");
  std::map<MultiIndex, Complex> sum = a.coeffs_;
  for (const auto& [alpha, c] : b.coeffs_) sum[alpha] += c;
  return PolynomialFn(a.owner_, sum);
}

PolynomialFn operator-(const PolynomialFn& a, const PolynomialFn& b) { return a + Complex(-1.0) * b; }

PolynomialFn operator*(Complex c, const PolynomialFn& p) {
  std::map<MultiIndex, Complex> out;
  for (const auto& [alpha, v] : p.coeffs_) out[alpha] = c * v;
  return PolynomialFn(p.owner_, out);
}

double max_coeff_distance(const PolynomialFn& a, const PolynomialFn& b) {
  double d = 0.0;
  const PolynomialFn diff = a - b;
  for (const auto& [alpha, c] : diff.coeffs()) d = std::max(d, std::abs(c));
  return d;
}

std::string to_string(const PolynomialFn& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [alpha, c] : p.coeffs()) {
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0)
      os << c.real();
    else
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] > 0) os << "*y" << i << (alpha[i] > 1 ? "^" + std::to_string(alpha[i]) : "");
  }
  return os.str();
}

}  // namespace lca
