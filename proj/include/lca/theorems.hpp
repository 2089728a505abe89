#pragma once

// Hypothesis checks and conclusion checks for the three characterization
// theorems, either on explicit marginals or by brute-force search.

#include "lca/certificate.hpp"
#include "lca/distribution.hpp"
#include "lca/homomorphism.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace lca {

enum class Theorem { T1, T2, T3 };
std::string_view theorem_name(Theorem t);

struct SearchOptions {
  std::int64_t denominator = 4;    // weights are multiples of 1/denominator
  std::int64_t support_lo = -2;    // candidate supports on Z coordinates
  std::int64_t support_hi = 2;
  std::int64_t grid = 16;          // circle grid on the dual of Z coordinates
  std::uint64_t samples = 0;       // 0 = exhaustive
  std::uint64_t seed = 0xD1CE;
  std::uint64_t budget = 20'000'000;
  int threads = 0;                 // 0 = LCA_CHAR_THREADS, else hardware
  std::optional<double> tol;       // 1e-12 on finite X, 1e-9 otherwise
};

struct TheoremInstance {
  Theorem theorem = Theorem::T1;
  GroupDescriptor x;
  std::vector<std::int64_t> a, b;           // T1
  std::vector<Homomorphism> alphas, betas;  // T2
  std::vector<Distribution> marginals;      // explicit mode; T3 reads the first
  std::int64_t window_radius = 6;
  std::int64_t window_grid = 8;
  std::optional<SearchOptions> search;
};

/// Throws HypothesisNotMet when the instance is outside the theorem, except
/// for T3 where a failing hypothesis switches to the necessity construction.
Certificate theorem_verdict(const TheoremInstance& inst);

/// Thread count for search mode: LCA_CHAR_THREADS caps hardware concurrency.
int search_threads(int requested = 0);

}  // namespace lca
