#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "torank/groebner.hpp"

namespace torank::testing {

inline ModuleElement element(const FreeModule& f, const std::vector<std::string>& comps) {
  std::vector<Polynomial> polys;
  for (const auto& c : comps) polys.push_back(parse_poly(c, f.ring));
  return ModuleElement(f, std::move(polys));
}

/// Builds a presentation from row-major entries; source degrees are inferred.
inline PresentationMap matrix(const Ring& ring, std::vector<int> target_degrees,
                              const std::vector<std::vector<std::string>>& rows) {
  FreeModule target{ring, std::move(target_degrees)};
  std::vector<ModuleElement> columns;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<std::string> comps;
    for (const auto& row : rows) comps.push_back(row[c]);
    columns.push_back(element(target, comps));
  }
  return make_presentation(target, columns);
}

inline PresentationMap ideal_x_y2() { return matrix(Ring(2, 1), {0}, {{"x", "y^2"}}); }
inline PresentationMap matrix2x3() { return matrix(Ring(2, 1), {0, 0}, {{"0", "x", "y"}, {"x", "y", "0"}}); }
inline PresentationMap matrix3x5() {
  return matrix(Ring(3, 1), {0, 0, 0}, {{"0", "0", "x", "y", "z"}, {"0", "x", "y", "z", "0"}, {"x", "y", "z", "0", "0"}});
}
inline PresentationMap matrix2x5() {
  return matrix(Ring(4, 1), {0, 0}, {{"0", "w", "x", "y", "z"}, {"w", "x", "y", "z", "0"}});
}

// Random homogeneous entry of the given degree: a monomial or a binomial.
inline Polynomial random_entry(std::mt19937& rng, const Ring& ring, int degree) {
  std::uniform_int_distribution<int> coin(0, 2), coeff(1, 3), var(0, ring.num_vars - 1);
  Polynomial p(ring);
  if (degree < 0) return p;
  std::uniform_int_distribution<int> shape(0, 5);
  const int kind = shape(rng);
  const int terms = kind == 0 ? 0 : (kind <= 2 ? 2 : 1);
  for (int t = 0; t < terms; ++t) {
    Exponents m(static_cast<std::size_t>(ring.num_vars), 0);
    for (int d = 0; d < degree; ++d) ++m[static_cast<std::size_t>(var(rng))];
    p.add_term(m, coin(rng) == 0 ? -coeff(rng) : coeff(rng));
  }
  return p;
}

inline std::vector<PresentationMap> random_presentations(std::uint32_t seed, int wanted) {
  std::mt19937 rng(seed);
  std::vector<PresentationMap> out;
  for (int attempt = 0; attempt < 5000 && static_cast<int>(out.size()) < wanted; ++attempt) {
    const int r = std::array{1, 2, 2, 3, 3, 3}[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
    const Ring ring(r, 1);
    // Finite length needs at least k + r - 1 columns; ranks stay at most 4.
    const int k = std::uniform_int_distribution<int>(1, 5 - r)(rng);
    const int l = std::uniform_int_distribution<int>(k + r - 1, 4)(rng);
    FreeModule target{ring, {}};
    for (int s = 0; s < k; ++s) target.generator_degrees.push_back(std::uniform_int_distribution<int>(0, 1)(rng));
    const int top_target = *std::max_element(target.generator_degrees.begin(), target.generator_degrees.end());
    std::vector<ModuleElement> columns;
    for (int c = 0; c < l; ++c) {
      const int degree = std::uniform_int_distribution<int>(top_target, top_target + 2)(rng);
      std::vector<Polynomial> comps;
      for (int s = 0; s < k; ++s) {
        const int entry_degree = degree - target.generator_degrees[static_cast<std::size_t>(s)];
        comps.push_back(entry_degree > 3 ? Polynomial(ring) : random_entry(rng, ring, entry_degree));
      }
      columns.emplace_back(target, std::move(comps));
    }
    const PresentationMap p = make_presentation(target, columns);
    const CokernelInfo info = finite_length_and_hilbert(p);
    if (!info.finite || info.total_dim.value_or(0) == 0) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace torank::testing
