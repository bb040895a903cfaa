#include "torank/hirschbrown.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace torank {

namespace {

AlgebraElement element_from_vector(const AlgebraPtr& algebra, const linalg::Vector& v) {
  AlgebraElement e(algebra);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) e += AlgebraElement::generator(algebra, static_cast<int>(i)).scaled(v[i]);
  }
  return e;
}

}  // namespace

ZSplit split_z(const ActionExtension& e) {
  const GradedAlgebra& base = *e.base.algebra;
  std::vector<int> degree_one;
  for (int i = 0; i < base.size(); ++i) {
    if (base.generator(i).degree == 1) degree_one.push_back(i);
  }
  const std::vector<Word> squares = base.words_of_degree(2);
  std::map<Word, int> square_index;
  for (std::size_t k = 0; k < squares.size(); ++k) square_index.emplace(squares[k], static_cast<int>(k));

  linalg::Matrix d(static_cast<int>(squares.size()), static_cast<int>(degree_one.size()));
  for (std::size_t c = 0; c < degree_one.size(); ++c) {
    for (const auto& [w, coeff] : e.base.d.on_generator(degree_one[c]).terms()) d(square_index.at(w), static_cast<int>(c)) = coeff;
  }
  std::vector<linalg::Vector> cycles;
  for (const linalg::Vector& local : linalg::kernel(d)) {
    linalg::Vector full(static_cast<std::size_t>(base.size()));
    for (std::size_t c = 0; c < degree_one.size(); ++c) full[static_cast<std::size_t>(degree_one[c])] = local[c];
    cycles.push_back(std::move(full));
  }

  // D on a cycle of degree 1 is a linear form in the X_i.
  linalg::Matrix twist(e.torus_rank, static_cast<int>(cycles.size()));
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    AlgebraElement image(e.total);
    for (int i = 0; i < base.size(); ++i) {
      const Rational& coeff = cycles[c][static_cast<std::size_t>(i)];
      if (coeff != 0) image += e.D.on_generator(e.total_index(i)).scaled(coeff);
    }
    for (const auto& [w, coeff] : image.terms()) {
      for (int x = 0; x < e.torus_rank; ++x) {
        if (w[static_cast<std::size_t>(x)] == 1) twist(x, static_cast<int>(c)) = coeff;
      }
    }
  }

  ZSplit out;
  out.b = static_cast<int>(cycles.size());
  linalg::IncrementalSpan span(base.size());
  for (const linalg::Vector& combo : linalg::kernel(twist)) {
    linalg::Vector v(static_cast<std::size_t>(base.size()));
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += combo[c] * cycles[c][i];
    }
    span.add(v);
    out.zprime.push_back(std::move(v));
  }
  for (const linalg::Vector& v : cycles) {
    if (span.add(v)) out.z.push_back(v);
  }
  out.k = static_cast<int>(out.zprime.size());
  return out;
}

RetractData::RetractData(const SullivanModel& model, int cutoff, const std::optional<ZSplit>& seed)
    : h_([&] {
        std::vector<std::vector<AlgebraElement>> preferred;
        if (seed) {
          const AlgebraPtr& alg = model.algebra;
          std::vector<AlgebraElement> z;
          for (const auto& v : seed->z) z.push_back(element_from_vector(alg, v));
          preferred.resize(static_cast<std::size_t>(std::max(cutoff, 0) + 1));
          // Products over subsets of Z, grouped by size.
          const int m = static_cast<int>(z.size());
          for (unsigned mask = 0; mask < (1u << m); ++mask) {
            const int size = std::popcount(mask);
            if (size > cutoff) continue;
            AlgebraElement product = AlgebraElement::constant(alg, 1);
            for (int i = 0; i < m; ++i) {
              if (mask & (1u << i)) product = product * z[static_cast<std::size_t>(i)];
            }
            preferred[static_cast<std::size_t>(size)].push_back(std::move(product));
          }
          for (auto& level : preferred) {
            std::stable_sort(level.begin(), level.end(), [](const AlgebraElement& a, const AlgebraElement& b) {
              return WordOrder{}(a.terms().begin()->first, b.terms().begin()->first);
            });
          }
          if (cutoff >= 1) {
            for (const auto& v : seed->zprime) preferred[1].push_back(element_from_vector(alg, v));
          }
        }
        return Cohomology(model, cutoff, preferred);
      }()),
      seeded_(seed.has_value()) {
  const GradedAlgebra& alg = *model.algebra;
  const int z_count = seed ? static_cast<int>(seed->z.size()) : 0;
  for (int p = 0; p <= cutoff; ++p) {
    int exterior = 0;
    for (unsigned mask = 0; seed && mask < (1u << z_count); ++mask) exterior += std::popcount(mask) == p ? 1 : 0;
    const int zprime = (seed && p == 1) ? static_cast<int>(seed->zprime.size()) : 0;
    std::vector<ClassOrigin> origins;
    for (int k = 0; k < h_.betti(p); ++k) {
      origins.push_back(k < exterior ? ClassOrigin::exterior : k < exterior + zprime ? ClassOrigin::zprime : ClassOrigin::other);
    }
    origins_.push_back(std::move(origins));
  }

  const std::vector<Word> beyond = alg.words_of_degree(cutoff + 1);
  for (int p = 0; p <= cutoff; ++p) {
    const Cohomology::Piece& pc = h_.piece(p);
    const int dim = static_cast<int>(pc.words.size());
    const int nb = static_cast<int>(pc.b_basis.size());
    const int na = static_cast<int>(pc.a_basis.size());
    f_.push_back(linalg::Matrix::from_columns(pc.a_basis, dim));

    linalg::Matrix g(na, dim);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = pc.to_adapted(nb + i, j);
    }
    g_.push_back(std::move(g));

    const int lower = p == 0 ? 0 : static_cast<int>(h_.piece(p - 1).words.size());
    linalg::Matrix phi(lower, dim);
    if (p > 0) {
      const auto& c_lower = h_.piece(p - 1).c_basis;
      for (int col = 0; col < dim; ++col) {
        for (int j = 0; j < nb; ++j) {
          const Rational& beta = pc.to_adapted(j, col);
          if (beta == 0) continue;
          for (int row = 0; row < lower; ++row) phi(row, col) -= beta * c_lower[static_cast<std::size_t>(j)][static_cast<std::size_t>(row)];
        }
      }
    }
    phi_.push_back(std::move(phi));

    const std::vector<Word>& upper = p < cutoff ? h_.piece(p + 1).words : beyond;
    std::map<Word, int> upper_index;
    for (std::size_t k = 0; k < upper.size(); ++k) upper_index.emplace(upper[k], static_cast<int>(k));
    linalg::Matrix d(static_cast<int>(upper.size()), dim);
    for (int col = 0; col < dim; ++col) {
      const AlgebraElement image = model.d.on_word(pc.words[static_cast<std::size_t>(col)]);
      for (const auto& [w, c] : image.terms()) d(upper_index.at(w), col) = c;
    }
    d_.push_back(std::move(d));
  }
}

std::optional<std::string> RetractData::check() const {
  auto sum = [](const linalg::Matrix& a, const linalg::Matrix& b) {
    linalg::Matrix out = a;
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    }
    return out;
  };
  const int cutoff = this->cutoff();
  for (int p = 0; p <= cutoff; ++p) {
    const std::string at = " in degree " + std::to_string(p);
    const int dim = f(p).rows();
    if (!(g(p) * f(p) == linalg::Matrix::identity(f(p).cols()))) return "g f = id" + at;
    if (!(d(p) * f(p)).is_zero()) return "d vanishes on A" + at;
    if (!(phi(p) * f(p)).is_zero()) return "phi f = 0" + at;
    if (p > 0 && !(g(p - 1) * phi(p)).is_zero()) return "g phi = 0" + at;
    if (p > 1 && !(phi(p - 1) * phi(p)).is_zero()) return "phi^2 = 0" + at;
    const bool upper_known = p < cutoff || d(p).rows() == 0;
    if (!upper_known) continue;
    linalg::Matrix lhs = f(p) * g(p);
    for (int i = 0; i < dim; ++i) lhs(i, i) -= 1;
    linalg::Matrix rhs(dim, dim);
    if (p > 0) rhs = sum(rhs, d(p - 1) * phi(p));
    if (p < cutoff) rhs = sum(rhs, phi(p + 1) * d(p));
    if (!(lhs == rhs)) return "f g - id = d phi + phi d" + at;
  }
  return std::nullopt;
}

RetractData build_retract(const SullivanModel& model, int cutoff, const std::optional<ZSplit>& seed) {
  return RetractData(model, cutoff, seed);
}

int HirschBrownModel::class_index(int degree, int k) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].degree == degree && classes[i].index == k) return static_cast<int>(i);
  }
  throw Error("no class " + std::to_string(k) + " in degree " + std::to_string(degree));
}

namespace {

using HVector = std::vector<Polynomial>;

/// The perturbed retract between (R ⊗ H, delta) and (R ⊗ ΛV, D).
class Transfer {
 public:
  Transfer(const ActionExtension& e, const RetractData& rd) : e_(e), rd_(rd), ring_(e.torus_rank, 2) {
    if (e.base.algebra->size() != rd.model().algebra->size()) throw Error("retract and extension use different models");
    int offset = 0;
    for (int p = 0; p <= rd.cutoff(); ++p) {
      offsets_.push_back(offset);
      offset += rd.cohomology().betti(p);
    }
    class_count_ = offset;
  }

  const Ring& ring() const { return ring_; }
  int class_count() const { return class_count_; }
  int class_index(int p, int k) const { return offsets_[static_cast<std::size_t>(p)] + k; }
  int steps() const { return steps_; }

  HVector zero_h() const { return HVector(static_cast<std::size_t>(class_count_), Polynomial(ring_)); }
  HVector unit_h(int i) const {
    HVector v = zero_h();
    v[static_cast<std::size_t>(i)] = Polynomial(ring_, 1);
    return v;
  }

  AlgebraElement lift_word(const Word& base_word) const {
    Word w(static_cast<std::size_t>(e_.torus_rank), 0);
    w.insert(w.end(), base_word.begin(), base_word.end());
    return AlgebraElement::word(e_.total, w);
  }

  AlgebraElement from_polynomial(const Polynomial& p) const {
    AlgebraElement out(e_.total);
    for (const auto& [exps, c] : p.terms()) {
      Word w(exps.begin(), exps.end());
      w.resize(static_cast<std::size_t>(e_.total->size()), 0);
      out.add_term(w, c);
    }
    return out;
  }

  AlgebraElement d_lifted(const AlgebraElement& x) const {
    return apply(x, [&](int p) -> const linalg::Matrix& { return rd_.d(p); }, +1);
  }

  AlgebraElement t(const AlgebraElement& x) const {
    AlgebraElement out(e_.total);
    for (const auto& [w, c] : x.terms()) {
      auto [xpart, base] = split(w);
      auto it = t_cache_.find(base);
      if (it == t_cache_.end()) {
        const AlgebraElement lifted = lift_word(base);
        it = t_cache_.emplace(base, e_.D(lifted) - d_lifted(lifted)).first;
      }
      Word xw = xpart;
      xw.resize(static_cast<std::size_t>(e_.total->size()), 0);
      out += (AlgebraElement::word(e_.total, xw, c) * it->second);
    }
    return out;
  }

  AlgebraElement phi(const AlgebraElement& x) const {
    return apply(x, [&](int p) -> const linalg::Matrix& { return rd_.phi(p); }, -1);
  }

  AlgebraElement sigma(const AlgebraElement& x) const {
    AlgebraElement acc(e_.total);
    AlgebraElement v = t(x);
    const int cap = rd_.cutoff() + 2;
    int steps = 0;
    while (!v.is_zero()) {
      acc += v;
      if (++steps > cap) throw Error("perturbation series does not stabilize; the extension is invalid");
      v = t(phi(v));
    }
    steps_ = std::max(steps_, steps);
    return acc;
  }

  AlgebraElement f(int p, int k) const {
    const Cohomology::Piece& pc = rd_.cohomology().piece(p);
    AlgebraElement out(e_.total);
    const linalg::Vector& a = pc.a_basis[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] != 0) out += lift_word(pc.words[j]).scaled(a[j]);
    }
    return out;
  }

  AlgebraElement f(const HVector& v) const {
    AlgebraElement out(e_.total);
    for (int p = 0; p <= rd_.cutoff(); ++p) {
      for (int k = 0; k < rd_.cohomology().betti(p); ++k) {
        const Polynomial& coeff = v[static_cast<std::size_t>(class_index(p, k))];
        if (!coeff.is_zero()) out += from_polynomial(coeff) * f(p, k);
      }
    }
    return out;
  }

  HVector g(const AlgebraElement& x) const {
    HVector out = zero_h();
    for (const auto& [w, c] : x.terms()) {
      auto [xpart, base] = split(w);
      const int p = e_.base.algebra->degree(base);
      check_degree(p);
      const int col = rd_.cohomology().piece(p).index.at(base);
      const linalg::Matrix& g = rd_.g(p);
      for (int k = 0; k < g.rows(); ++k) {
        if (g(k, col) != 0) out[static_cast<std::size_t>(class_index(p, k))].add_term(xpart, c * g(k, col));
      }
    }
    return out;
  }

  AlgebraElement f_inf(const HVector& v) const {
    const AlgebraElement fv = f(v);
    return fv + phi(sigma(fv));
  }
  HVector g_inf(const AlgebraElement& x) const { return add(g(x), g(sigma(phi(x)))); }
  AlgebraElement phi_inf(const AlgebraElement& x) const {
    const AlgebraElement px = phi(x);
    return px + phi(sigma(px));
  }
  HVector delta_of_class(int p, int k) const { return g(sigma(f(p, k))); }

  HVector add(HVector a, const HVector& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }

  std::string h_to_string(const HVector& v, const std::vector<HClass>& classes) const {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + v[i].to_string() + ")*[" + classes[i].representative + "]";
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::pair<Exponents, Word> split(const Word& w) const {
    return {Exponents(w.begin(), w.begin() + e_.torus_rank), Word(w.begin() + e_.torus_rank, w.end())};
  }

  void check_degree(int p) const {
    if (p > rd_.cutoff()) throw Error("degree " + std::to_string(p) + " exceeds the retract cutoff");
  }

  /// Applies a degreewise matrix to the ΛV factor of every term.
  AlgebraElement apply(const AlgebraElement& x, const std::function<const linalg::Matrix&(int)>& matrix, int shift) const {
    AlgebraElement out(e_.total);
    for (const auto& [w, c] : x.terms()) {
      auto [xpart, base] = split(w);
      const int p = e_.base.algebra->degree(base);
      check_degree(p);
      const int col = rd_.cohomology().piece(p).index.at(base);
      const linalg::Matrix& m = matrix(p);
      const int q = p + shift;
      if (m.rows() == 0) continue;
      const std::vector<Word> target_words =
          q <= rd_.cutoff() ? rd_.cohomology().piece(q).words : e_.base.algebra->words_of_degree(q);
      for (int row = 0; row < m.rows(); ++row) {
        if (m(row, col) == 0) continue;
        Word tw(xpart.begin(), xpart.end());
        const Word& bw = target_words[static_cast<std::size_t>(row)];
        tw.insert(tw.end(), bw.begin(), bw.end());
        out.add_term(tw, c * m(row, col));
      }
    }
    return out;
  }

  const ActionExtension& e_;
  const RetractData& rd_;
  Ring ring_;
  std::vector<int> offsets_;
  int class_count_ = 0;
  mutable std::map<Word, AlgebraElement> t_cache_;
  mutable int steps_ = 0;
};

HVector apply_delta(const HirschBrownModel& hb, const HVector& v) {
  HVector out(v.size(), Polynomial(hb.ring));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t row = 0; row < v.size(); ++row) {
      const Polynomial& e = hb.entry(static_cast<int>(row), static_cast<int>(i));
      if (!e.is_zero()) out[row] += v[i] * e;
    }
  }
  return out;
}

bool is_zero(const HVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

}  // namespace

HirschBrownModel perturb(const ActionExtension& e, const RetractData& rd) {
  const Transfer transfer(e, rd);
  HirschBrownModel hb;
  hb.torus_rank = e.torus_rank;
  hb.ring = transfer.ring();
  std::vector<int> degrees;
  for (int p = 0; p <= rd.cutoff(); ++p) {
    for (int k = 0; k < rd.cohomology().betti(p); ++k) {
      hb.classes.push_back({p, k, rd.origin(p, k), rd.cohomology().representative(p, k).to_string()});
      degrees.push_back(p);
    }
  }
  FreeModule target{hb.ring, degrees};
  FreeModule source{hb.ring, degrees};
  for (int& d : source.generator_degrees) ++d;
  std::vector<ModuleElement> columns;
  for (const HClass& c : hb.classes) columns.emplace_back(target, transfer.delta_of_class(c.degree, c.index));
  hb.delta = PresentationMap{source, target, std::move(columns)};
  hb.perturbation_steps = transfer.steps();
  hb.delta.validate();
  if (!hb.delta.image_in_maximal_ideal()) throw Error("the transferred differential has a constant term");
  for (std::size_t i = 0; i < hb.classes.size(); ++i) {
    if (!is_zero(apply_delta(hb, hb.delta.columns[i].components()))) {
      throw Error("the transferred differential does not square to zero on [" + hb.classes[i].representative + "]");
    }
  }
  return hb;
}

bool TransferReport::ok() const { return first_failure() == nullptr; }

const IdentityCheck* TransferReport::first_failure() const {
  for (const IdentityCheck& c : checks) {
    if (!c.holds) return &c;
  }
  return nullptr;
}

TransferReport verify_transfer(const ActionExtension& e, const RetractData& rd, const HirschBrownModel& hb) {
  const Transfer tr(e, rd);
  if (tr.class_count() != static_cast<int>(hb.classes.size())) throw Error("the model does not match the retract");
  TransferReport report;
  for (const char* name : {"delta^2 = 0", "D f = f delta", "delta g = g D", "g f = id", "f g - id = D phi + phi D",
                           "phi^2 = 0", "phi f = 0", "g phi = 0"}) {
    report.checks.push_back({name, true, ""});
  }
  auto fail = [&](int which, const std::string& witness) {
    IdentityCheck& c = report.checks[static_cast<std::size_t>(which)];
    if (c.holds) {
      c.holds = false;
      c.witness = witness;
    }
  };

  for (std::size_t i = 0; i < hb.classes.size(); ++i) {
    const std::string witness = "[" + hb.classes[i].representative + "]";
    const HVector unit = tr.unit_h(static_cast<int>(i));
    const HVector delta = apply_delta(hb, unit);
    if (!is_zero(apply_delta(hb, delta))) fail(0, witness);
    const AlgebraElement fi = tr.f_inf(unit);
    if (!(e.D(fi) == tr.f_inf(delta))) fail(1, witness);
    if (tr.g_inf(fi) != unit) fail(3, witness);
    if (!tr.phi_inf(fi).is_zero()) fail(6, witness);
  }

  const int cutoff = rd.cutoff();
  const int top = rd.d(cutoff).rows() == 0 ? cutoff : cutoff - 1;
  for (int p = 0; p <= top; ++p) {
    for (const Word& w : rd.cohomology().piece(p).words) {
      const AlgebraElement x = tr.lift_word(w);
      const std::string witness = e.base.algebra->word_to_string(w);
      const AlgebraElement dx = e.D(x);
      if (apply_delta(hb, tr.g_inf(x)) != tr.g_inf(dx)) fail(2, witness);
      const AlgebraElement px = tr.phi_inf(x);
      if (!(tr.f_inf(tr.g_inf(x)) - x == e.D(px) + tr.phi_inf(dx))) fail(4, witness);
      if (!tr.phi_inf(px).is_zero()) fail(5, witness);
      if (!is_zero(tr.g_inf(px))) fail(7, witness);
    }
  }
  return report;
}

HBCohomology hb_cohomology_finite(const HirschBrownModel& hb, const GroebnerOptions& options) {
  const FreeModule& F = hb.delta.target;
  const PresentationMap kernel = syzygies(hb.delta, options);

  std::vector<int> kernel_degrees;
  std::vector<ModuleElement> combined_columns;
  for (const ModuleElement& k : kernel.columns) {
    combined_columns.push_back(k.rebased(F));
  }
  for (int deg : kernel.source.generator_degrees) kernel_degrees.push_back(deg - 1);
  FreeModule combined_source{F.ring, kernel_degrees};
  for (int deg : hb.delta.source.generator_degrees) combined_source.generator_degrees.push_back(deg);
  for (const ModuleElement& c : hb.delta.columns) combined_columns.push_back(c);
  const PresentationMap combined{combined_source, F, combined_columns};

  const FreeModule G{F.ring, kernel_degrees};
  std::vector<ModuleElement> relations;
  for (const ModuleElement& s : syzygies(combined, options).columns) {
    std::vector<Polynomial> head(s.components().begin(), s.components().begin() + static_cast<std::ptrdiff_t>(kernel_degrees.size()));
    ModuleElement rel(G, std::move(head));
    if (!rel.is_zero()) relations.push_back(std::move(rel));
  }

  HBCohomology out;
  out.homology = make_presentation(G, relations);
  out.info = finite_length_and_hilbert(out.homology, options);
  out.finite = out.info.finite;
  out.total_dim = out.info.total_dim;
  return out;
}

int resolution_degree(int cdga_degree, bool as_source) {
  const int shifted = cdga_degree + (as_source ? 1 : 0);
  return shifted >= 0 ? shifted / 2 : -((1 - shifted) / 2);
}

TheoremCMaps theorem_c_maps(const HirschBrownModel& hb, const ZSplit& zs) {
  std::vector<int> zprime_rows, odd_cols, even_cols;
  int exterior = 0;
  for (std::size_t i = 0; i < hb.classes.size(); ++i) {
    const HClass& c = hb.classes[i];
    if (c.origin == ClassOrigin::zprime) zprime_rows.push_back(static_cast<int>(i));
    if (c.origin == ClassOrigin::exterior) ++exterior;
    if (c.degree % 2 == 0 && c.origin != ClassOrigin::exterior) even_cols.push_back(static_cast<int>(i));
    if (c.degree % 2 == 1) odd_cols.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(zprime_rows.size()) != zs.k) throw Error("the split does not match the classes of the model");
  if (exterior != 0 && exterior != (1 << zs.z.size())) throw Error("the split does not match the classes of the model");
  if (exterior == 0 && !zs.z.empty()) throw Error("the model was not built from a retract seeded by this split");

  const Ring ring(hb.torus_rank, 1);
  auto build = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    FreeModule target{ring, {}};
    for (int row : rows) target.generator_degrees.push_back(resolution_degree(hb.classes[static_cast<std::size_t>(row)].degree, false));
    FreeModule source{ring, {}};
    std::vector<ModuleElement> columns;
    for (int col : cols) {
      source.generator_degrees.push_back(resolution_degree(hb.classes[static_cast<std::size_t>(col)].degree, true));
      std::vector<Polynomial> comps;
      for (int row : rows) comps.push_back(hb.entry(row, col).regraded(1));
      columns.emplace_back(target, std::move(comps));
    }
    PresentationMap p{source, target, std::move(columns)};
    p.validate();
    return p;
  };

  TheoremCMaps out;
  out.k = zs.k;
  out.map_even = build(zprime_rows, even_cols);
  out.even_vacuous = zprime_rows.empty();
  if (!odd_cols.empty()) {
    out.odd_degree = hb.classes[static_cast<std::size_t>(odd_cols.front())].degree;
    std::vector<int> low_rows;
    for (std::size_t i = 0; i < hb.classes.size(); ++i) {
      if (hb.classes[i].degree < *out.odd_degree) low_rows.push_back(static_cast<int>(i));
    }
    out.map_odd = build(low_rows, odd_cols);
  } else {
    out.map_odd = build({}, {});
  }
  out.odd_vacuous = out.map_odd.rows() == 0;
  return out;
}

PipelineReport run_pipeline(const ActionExtension& e, std::optional<int> cutoff, const GroebnerOptions& options) {
  auto stage = [](const std::string& name, auto&& body) {
    try {
      return body();
    } catch (const Error& err) {
      throw Error(name + ": " + err.what());
    }
  };
  const int top = cutoff ? *cutoff : stage("cutoff", [&] { return default_cutoff(e.base); });
  PipelineReport out;
  out.split = stage("split_z", [&] { return split_z(e); });
  out.r = e.torus_rank;
  const RetractData rd = stage("build_retract", [&] {
    RetractData built = build_retract(e.base, top, out.split);
    if (auto failure = built.check()) throw Error("retract identity fails: " + *failure);
    return built;
  });
  out.n = rd.cohomology().formal_dimension();
  out.betti = rd.cohomology().betti_numbers();
  out.model = stage("perturb", [&] { return perturb(e, rd); });
  out.transfer = stage("verify_transfer", [&] { return verify_transfer(e, rd, out.model); });
  out.cohomology = stage("hb_cohomology_finite", [&] { return hb_cohomology_finite(out.model, options); });
  out.maps = stage("theorem_c_maps", [&] { return theorem_c_maps(out.model, out.split); });
  if (out.cohomology.finite) {
    stage("verify_prop41", [&] {
      if (!out.maps.even_vacuous) out.prop41_even = verify_prop41(out.maps.map_even, options);
      if (!out.maps.odd_vacuous) out.prop41_odd = verify_prop41(out.maps.map_odd, options);
      return 0;
    });
  }
  return out;
}

}  // namespace torank
