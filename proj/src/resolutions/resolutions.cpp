#include "torank/resolutions.hpp"

#include <algorithm>

namespace torank {

namespace {

ModuleElement drop_component(const ModuleElement& e, const FreeModule& smaller, int index) {
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(smaller.rank()));
  for (int s = 0; s < e.rank(); ++s) {
    if (s != index) comps.push_back(e[s]);
  }
  return ModuleElement(smaller, std::move(comps));
}

FreeModule drop_generator(const FreeModule& f, int index) {
  FreeModule out = f;
  out.generator_degrees.erase(out.generator_degrees.begin() + index);
  return out;
}

struct Pivot {
  int row = -1;
  int col = -1;
};

Pivot find_unit(const PresentationMap& p) {
  for (int row = 0; row < p.rows(); ++row) {
    for (int col = 0; col < p.cols(); ++col) {
      if (p.entry(row, col).constant_term() != 0) return {row, col};
    }
  }
  return {};
}

/// Eliminates the unit at maps[m](a, b).
void eliminate(std::vector<PresentationMap>& maps, std::size_t m, Pivot pivot) {
  PresentationMap& cur = maps[m];
  const Rational c = cur.entry(pivot.row, pivot.col).constant_term();
  const ModuleElement pivot_column = cur.columns[static_cast<std::size_t>(pivot.col)];

  const FreeModule new_target = drop_generator(cur.target, pivot.row);
  const FreeModule new_source = drop_generator(cur.source, pivot.col);
  std::vector<ModuleElement> columns;
  for (int q = 0; q < cur.cols(); ++q) {
    if (q == pivot.col) continue;
    ModuleElement col = cur.columns[static_cast<std::size_t>(q)];
    const Polynomial factor = col[pivot.row];
    if (!factor.is_zero()) col -= pivot_column.scaled(factor.scaled(Rational(1) / c));
    columns.push_back(drop_component(col, new_target, pivot.row));
  }
  cur = PresentationMap{new_source, new_target, std::move(columns)};

  if (m > 0) {
    PresentationMap& prev = maps[m - 1];
    prev.columns.erase(prev.columns.begin() + pivot.row);
    prev.source = drop_generator(prev.source, pivot.row);
  }
  if (m + 1 < maps.size()) {
    PresentationMap& next = maps[m + 1];
    for (ModuleElement& col : next.columns) col = drop_component(col, new_source, pivot.col);
    next.target = new_source;
  }
}

/// All exponent vectors in `num_vars` variables of total degree `degree`.
std::vector<Exponents> monomials_of_degree(int num_vars, int degree) {
  std::vector<Exponents> out;
  Exponents current(static_cast<std::size_t>(num_vars), 0);
  auto fill = [&](auto&& self, int var, int remaining) -> void {
    if (var == num_vars - 1) {
      current[static_cast<std::size_t>(var)] = remaining;
      out.push_back(current);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, remaining - e);
    }
  };
  if (degree >= 0) fill(fill, 0, degree);
  return out;
}

}  // namespace

BettiDiagram Resolution::betti() const {
  BettiDiagram b(std::max(0, length()));
  for (int i = 0; i <= length(); ++i) {
    for (int d : free_module(i).generator_degrees) b.add(i, d, 1);
  }
  return b;
}

bool Resolution::is_minimal() const {
  return std::all_of(maps.begin(), maps.end(), [](const PresentationMap& p) { return p.image_in_maximal_ideal(); });
}

bool Resolution::composes_to_zero() const {
  for (std::size_t i = 1; i < maps.size(); ++i) {
    const PresentationMap& outer = maps[i - 1];
    for (const ModuleElement& col : maps[i].columns) {
      ModuleElement image(outer.target);
      for (int s = 0; s < col.rank(); ++s) {
        if (!col[s].is_zero()) image += outer.columns[static_cast<std::size_t>(s)].scaled(col[s]);
      }
      if (!image.is_zero()) return false;
    }
  }
  return true;
}

std::vector<PresentationMap> cancel_units(std::vector<PresentationMap> maps) {
  for (std::size_t m = 0; m < maps.size();) {
    const Pivot pivot = find_unit(maps[m]);
    if (pivot.row < 0) {
      ++m;
      continue;
    }
    eliminate(maps, m, pivot);
  }
  return maps;
}

Resolution minimal_free_resolution(const PresentationMap& p, const GroebnerOptions& options) {
  p.validate();
  const PresentationMap pruned = cancel_units({p}).front();
  Resolution res{pruned.target, {}};

  std::vector<ModuleElement> gens = minimal_generators(pruned.target, pruned.columns, options);
  if (gens.empty()) return res;
  res.maps.push_back(make_presentation(pruned.target, gens));

  const int max_length = pruned.target.ring.num_vars;
  while (true) {
    const PresentationMap syz = syzygies(res.maps.back(), options);
    gens = minimal_generators(syz.target, syz.columns, options);
    if (gens.empty()) break;
    if (res.length() >= max_length) throw Error("resolution longer than the number of variables");
    res.maps.push_back(make_presentation(syz.target, gens));
  }
  res.maps = cancel_units(std::move(res.maps));
  return res;
}

GradedPieces::GradedPieces(PresentationMap p) : p_(std::move(p)) { p_.validate(); }

const GradedPieces::Basis& GradedPieces::piece(int degree) {
  if (auto it = cache_.find(degree); it != cache_.end()) return it->second;

  const Ring& ring = p_.target.ring;
  const int vd = ring.var_degree;
  Basis basis;
  for (int s = 0; s < p_.target.rank(); ++s) {
    const int excess = degree - p_.target.generator_degrees[static_cast<std::size_t>(s)];
    if (excess < 0 || excess % vd != 0) continue;
    for (Exponents& m : monomials_of_degree(ring.num_vars, excess / vd)) {
      basis.index.emplace(std::make_pair(s, m), static_cast<int>(basis.monomials.size()));
      basis.monomials.emplace_back(s, std::move(m));
    }
  }

  std::vector<linalg::Vector> rows;
  const std::size_t n = basis.monomials.size();
  for (int q = 0; q < p_.cols(); ++q) {
    const int excess = degree - p_.source.generator_degrees[static_cast<std::size_t>(q)];
    if (excess < 0 || excess % vd != 0) continue;
    const ModuleElement& col = p_.columns[static_cast<std::size_t>(q)];
    if (col.is_zero()) continue;
    for (const Exponents& m : monomials_of_degree(ring.num_vars, excess / vd)) {
      linalg::Vector v(n);
      for (int s = 0; s < col.rank(); ++s) {
        for (const auto& [exps, coeff] : col[s].terms()) {
          v[static_cast<std::size_t>(basis.index.at({s, product(exps, m)}))] += coeff;
        }
      }
      rows.push_back(std::move(v));
    }
  }
  linalg::Matrix image(static_cast<int>(rows.size()), static_cast<int>(n));
  for (int i = 0; i < image.rows(); ++i) {
    for (int j = 0; j < image.cols(); ++j) image(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  basis.image = linalg::row_reduce(std::move(image));
  std::vector<bool> pivot(n, false);
  for (int c : basis.image.pivots) pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!pivot[j]) basis.quotient_columns.push_back(static_cast<int>(j));
  }
  return cache_.emplace(degree, std::move(basis)).first->second;
}

linalg::Vector GradedPieces::reduce(int degree, const linalg::Vector& v) {
  const Basis& b = piece(degree);
  linalg::Vector w = v;
  for (int r = 0; r < b.image.rank(); ++r) {
    const Rational c = w[static_cast<std::size_t>(b.image.pivots[static_cast<std::size_t>(r)])];
    if (c == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const Rational& e = b.image.reduced(r, static_cast<int>(j));
      if (e != 0) w[j] -= c * e;
    }
  }
  linalg::Vector out;
  out.reserve(b.quotient_columns.size());
  for (int j : b.quotient_columns) out.push_back(w[static_cast<std::size_t>(j)]);
  return out;
}

linalg::Vector GradedPieces::multiply(int degree, int k, int var) {
  const auto [s, m] = piece(degree).monomials[static_cast<std::size_t>(piece(degree).quotient_columns[static_cast<std::size_t>(k)])];
  Exponents shifted = m;
  ++shifted[static_cast<std::size_t>(var)];
  const int up = degree + p_.target.ring.var_degree;
  const Basis& target = piece(up);
  linalg::Vector v(target.monomials.size());
  v[static_cast<std::size_t>(target.index.at({s, shifted}))] = 1;
  return reduce(up, v);
}

BettiDiagram betti_via_koszul(const PresentationMap& p, int max_degree) {
  GradedPieces pieces(p);
  const int r = p.target.ring.num_vars;
  const int vd = p.target.ring.var_degree;
  BettiDiagram out(r);
  if (p.target.rank() == 0) return out;
  const int min_degree = *std::min_element(p.target.generator_degrees.begin(), p.target.generator_degrees.end());

  std::vector<std::vector<unsigned>> subsets(static_cast<std::size_t>(r + 1));
  for (unsigned mask = 0; mask < (1u << r); ++mask) subsets[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
  auto subset_index = [&](int size, unsigned mask) {
    const auto& list = subsets[static_cast<std::size_t>(size)];
    return static_cast<int>(std::lower_bound(list.begin(), list.end(), mask) - list.begin());
  };

  for (int j = min_degree; j <= max_degree; ++j) {
    // dims[i] = dim C_{i,j}; ranks[i] = rank of d_i : C_{i,j} -> C_{i-1,j}
    std::vector<int> dims(static_cast<std::size_t>(r + 2), 0);
    std::vector<int> ranks(static_cast<std::size_t>(r + 2), 0);
    for (int i = 0; i <= r; ++i) {
      dims[static_cast<std::size_t>(i)] = static_cast<int>(subsets[static_cast<std::size_t>(i)].size()) * pieces.dim(j - i * vd);
    }
    for (int i = 1; i <= r; ++i) {
      const int src_deg = j - i * vd;
      const int dst_deg = src_deg + vd;
      const int src_dim = pieces.dim(src_deg);
      const int dst_dim = pieces.dim(dst_deg);
      if (src_dim == 0 || dst_dim == 0) continue;
      linalg::Matrix d(dims[static_cast<std::size_t>(i - 1)], dims[static_cast<std::size_t>(i)]);
      const auto& sources = subsets[static_cast<std::size_t>(i)];
      for (std::size_t si = 0; si < sources.size(); ++si) {
        const unsigned mask = sources[si];
        for (int k = 0; k < src_dim; ++k) {
          const int col = static_cast<int>(si) * src_dim + k;
          int below = 0;
          for (int a = 0; a < r; ++a) {
            if (!(mask & (1u << a))) continue;
            const Rational sign = below % 2 == 0 ? 1 : -1;
            ++below;
            const int face = subset_index(i - 1, mask & ~(1u << a));
            const linalg::Vector image = pieces.multiply(src_deg, k, a);
            for (int t = 0; t < dst_dim; ++t) {
              const Rational& c = image[static_cast<std::size_t>(t)];
              if (c != 0) d(face * dst_dim + t, col) += sign * c;
            }
          }
        }
      }
      ranks[static_cast<std::size_t>(i)] = linalg::rank(d);
    }
    for (int i = 0; i <= r; ++i) {
      const int beta = dims[static_cast<std::size_t>(i)] - ranks[static_cast<std::size_t>(i)] - ranks[static_cast<std::size_t>(i + 1)];
      if (beta != 0) out.set(i, j, beta);
    }
  }
  return out;
}

Prop41Report verify_prop41(const PresentationMap& p, const GroebnerOptions& options) {
  p.validate();
  if (!p.image_in_maximal_ideal()) throw Error("the image is not contained in I times the target");
  const CokernelInfo info = finite_length_and_hilbert(p, options);
  if (!info.finite) throw Error("the cokernel does not have finite length");

  Prop41Report report;
  report.k = p.rows();
  report.l = p.cols();
  report.r = p.target.ring.num_vars;
  const auto& degrees = p.target.generator_degrees;
  if (!degrees.empty()) {
    const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
    report.uniform_target = *lo == *hi;
    if (info.top_degree) report.N = (*info.top_degree - *lo) / p.target.ring.var_degree;
  }
  report.ratio = Rational(report.N + report.r, report.N + 1);
  report.ratio.canonicalize();
  report.required = ceil(report.ratio * report.k);
  report.holds = report.l >= report.required;

  const BettiDiagram b = minimal_free_resolution(p, options).betti();
  report.beta0 = static_cast<int>(b.total(0).get_num().get_si());
  report.beta1 = static_cast<int>(b.total(1).get_num().get_si());
  return report;
}

}  // namespace torank
