#include "lca/structure.hpp"

#include <algorithm>

namespace lca {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

AdmissibleResult is_admissible(const std::vector<std::int64_t>& coeffs, const GroupDescriptor& x) {
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (mul_map(x, coeffs[j]).image.is_trivial()) return {false, j};
  return {};
}

std::optional<std::int64_t> exponent_prime(const GroupDescriptor& x) {
  if (!x.is_finite() || x.finite_orders.empty()) return std::nullopt;
  const std::int64_t p = x.finite_orders.front();
  if (!is_prime(p)) return std::nullopt;
  if (std::all_of(x.finite_orders.begin(), x.finite_orders.end(), [p](auto n) { return n == p; })) return p;
  return std::nullopt;
}

StructuralPredicates structural_predicates(const GroupDescriptor& x, std::optional<std::int64_t> prime) {
  SubgroupFactors cc{std::vector<std::int64_t>(x.z_rank, 0), std::vector<std::int64_t>(x.t_rank, 0),
                     x.finite_orders};
  StructuralPredicates out{false, false, false, std::nullopt, Subgroup::from_factors(x, cc), 0, std::nullopt, false};
  out.torsion_free = x.t_rank == 0 && x.finite_orders.empty();
  out.corwin = same_subgroup(mul_map(x, 2).image, Subgroup::whole(x));
  if (x.t_rank > 0) {
    std::vector<Rational> t(x.t_rank, Rational(0));
    t[0] = Rational(1, 2);
    out.order2_witness = GroupElement(x, std::vector<std::int64_t>(x.z_rank, 0), t,
                                      std::vector<std::int64_t>(x.f_rank(), 0));
  } else {
    for (int i = 0; i < x.f_rank(); ++i)
      if (x.finite_orders[i] % 2 == 0) {
        std::vector<std::int64_t> f(x.f_rank(), 0);
        f[i] = x.finite_orders[i] / 2;
        out.order2_witness = GroupElement(x, std::vector<std::int64_t>(x.z_rank, 0), {}, f);
        break;
      }
  }
  out.has_order2_element = out.order2_witness.has_value();
  out.order2_in_component = (std::int64_t{1} << x.t_rank) - 1;
  if (prime) {
    out.prime = prime;
    out.p_image_trivial = mul_map(x, *prime).image.is_trivial();
  }
  return out;
}

}  // namespace lca
