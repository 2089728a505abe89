#pragma once
// JSON encodings. Rationals travel as "p/q" strings; floats are written with
// 12 significant digits so reports are byte-stable.

#include "lca/certificate.hpp"
#include "lca/distribution.hpp"
#include "lca/homomorphism.hpp"
#include "lca/polynomial.hpp"
#include "lca/subgroup.hpp"

#include <json.hpp>

#include <string>

namespace lca {

using Json = nlohmann::ordered_json;

double round12(double v);

Json to_json(const GroupDescriptor& g);
Json to_json(const GroupElement& x);
Json to_json(const Subgroup& s);
Json to_json(const Homomorphism& h);
Json to_json(const PolynomialFn& p);
Json to_json(const Distribution& mu);
Json to_json(const Certificate& c);

// Parsers report problems as ParseError naming the offending path.
GroupDescriptor group_from_json(const Json& j, const std::string& path = "group");
GroupElement element_from_json(const Json& j, const GroupDescriptor& g, const std::string& path = "element");
Subgroup subgroup_from_json(const Json& j, const GroupDescriptor& g, const std::string& path = "subgroup");
/// An integer n means x |-> n x; otherwise an object of blocks.
Homomorphism homomorphism_from_json(const Json& j, const GroupDescriptor& domain, const GroupDescriptor& codomain,
                                    const std::string& path = "hom");
PolynomialFn polynomial_from_json(const Json& j, const GroupDescriptor& dual, const std::string& path = "phi");
Distribution distribution_from_json(const Json& j, const GroupDescriptor& g, const std::string& path = "distribution");
Rational rational_from_json(const Json& j, const std::string& path);

/// Parses text; ParseError on malformed input.
Json parse_json(const std::string& text, const std::string& path);

}  // namespace lca
