// Acceptance run: one PASS/FAIL line per criterion, each under a time budget.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <tuple>

#include "helpers.hpp"
#include "torank/bounds.hpp"
#include "torank/diagrams.hpp"
#include "torank/hirschbrown.hpp"
#include "torank/resolutions.hpp"
#include "torank/sullivan.hpp"

namespace {

using namespace torank;

/// Collects the first few mismatches of a criterion.
class Findings {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (messages_.size() < 5) messages_.push_back(what);
    ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " mismatch(es)";
    for (const auto& m : messages_) s += "; " + m;
    return s;
  }

 private:
  std::vector<std::string> messages_;
  int count_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return read_file(std::string(TORANK_DATA_DIR) + "/" + name); }

Rational frac(long long num, long long den) {
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

Integer ceiling(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer pow2(int e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return out;
}

// min over k of c 2k + 2^(b-k) with c = (n+r-1)/(n-r+1).
Rational sweep_oracle(int n, int r, int b) {
  const Rational c = frac(n + r - 1, n - r + 1);
  Rational best = -1;
  for (int k = 0; k <= b; ++k) {
    const Rational v = c * 2 * k + Rational(pow2(b - k));
    if (best < 0 || v < best) best = v;
  }
  return best;
}

Rational ratio_product_oracle(int n, int r, int d1) {
  Rational out = 1;
  for (int i = 2; i <= r; ++i) out *= frac(2 * n - r - 1 + 2 * i, 2 * n - r - 1 + 2 * i - 2 * d1);
  return out;
}

void expect_table(Findings& f, PaperTable which, const std::vector<std::vector<long>>& expected) {
  const TableData t = compute_table(which);
  f.expect(t.cells.size() == expected.size(), "row count");
  for (std::size_t row = 0; row < expected.size() && row < t.cells.size(); ++row) {
    for (std::size_t c = 0; c < expected[row].size(); ++c) {
      const auto& cell = t.cells[row][c];
      f.expect(cell.has_value() && *cell == expected[row][c],
               t.row_key + "=" + std::to_string(t.row_values[row]) + " r=" + std::to_string(c + 1));
    }
    for (std::size_t c = expected[row].size(); c < t.cells[row].size(); ++c) {
      f.expect(!t.cells[row][c].has_value(), "unexpected cell");
    }
  }
}

BettiDiagram ideal_x_y2_diagram() {
  BettiDiagram b;
  b.set(0, 0, 1);
  b.set(1, 1, 1);
  b.set(1, 2, 1);
  b.set(2, 3, 1);
  return b;
}

void enumerate_sequences(int length, int max_entry, const std::function<void(const DegreeSequence&)>& visit) {
  std::vector<int> d;
  std::function<void()> walk = [&] {
    if (static_cast<int>(d.size()) == length + 1) {
      visit(DegreeSequence(d));
      return;
    }
    for (int v = d.empty() ? 0 : d.back() + 1; v <= max_entry; ++v) {
      d.push_back(v);
      walk();
      d.pop_back();
    }
  };
  walk();
}

void check_pure_hk(Findings& f, const DegreeSequence& d) {
  const auto residuals = herzog_kuhl_residuals(pure_diagram(d), d.length());
  for (std::size_t t = 0; t < residuals.size(); ++t) f.expect(residuals[t] == 0, d.to_string() + " t=" + std::to_string(t));
}

Rational brute_force_min_ratio(int top, int vars) {
  Rational best = -1;
  std::vector<int> d{0};
  std::function<void()> walk = [&] {
    const int i = static_cast<int>(d.size());
    if (i == vars + 1) {
      const Rational q = hk_ratio(DegreeSequence(d));
      if (best < 0 || q < best) best = q;
      return;
    }
    for (int v = d.back() + 1; v <= top + i; ++v) {
      d.push_back(v);
      walk();
      d.pop_back();
    }
  };
  walk();
  return best;
}

struct Built {
  ActionExtension e;
  RetractData rd;
  HirschBrownModel hb;
};

Built build(const std::string& text) {
  ActionExtension e = parse_extension(text);
  RetractData rd = build_retract(e.base, default_cutoff(e.base), split_z(e));
  HirschBrownModel hb = perturb(e, rd);
  return {std::move(e), std::move(rd), std::move(hb)};
}

// ---------------------------------------------------------------- criteria

std::string betti_sweep_table() {
  Findings f;
  expect_table(f, PaperTable::betti_sweep, {{8, 9, 10, 12, 13, 14, 16, 16, 16, 16},
                                            {12, 14, 16, 19, 22, 26, 32, 39, 50, 64},
                                            {20, 24, 28, 34, 41, 50, 64, 84, 122, 216}});
  return f.ok() ? "" : f.summary();
}

std::string low_degree_table() {
  Findings f;
  expect_table(f, PaperTable::low_degree, {{8, 10, 12, 15, 19, 24, 32, 46, 72, 152},
                                           {12, 15, 18, 23, 28, 36, 48, 68, 108, 228},
                                           {20, 25, 30, 38, 47, 60, 80, 114, 180, 380}});
  return f.ok() ? "" : f.summary();
}

std::string csymplectic_table() {
  Findings f;
  expect_table(f, PaperTable::csymplectic, {{3, 6, 10, 16},
                                            {3, 6, 12, 28, 44, 64},
                                            {3, 7, 13, 25, 40, 65, 110, 214},
                                            {3, 6, 11, 20, 33, 52, 80, 123, 208, 428}});
  for (int n = 2; n <= 5; ++n) {
    for (int r = 1; r <= 2 * n; ++r) {
      const bool large = n % 2 == 1 ? r >= n + 1 : r >= n;
      const std::string expected = large ? "csymplectic_binomial" : "csymplectic_crossing";
      f.expect(csymplectic_rank_bound(n, r).name == expected, "dispatch n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
  }
  return f.ok() ? "" : f.summary();
}

std::string trc_audit_criterion() {
  Findings f;
  const auto rows = trc_audit(4);
  f.expect(rows.size() == 20, "expected 20 rows");
  for (const TrcAuditRow& row : rows) {
    const std::string at = "n=" + std::to_string(row.n) + " r=" + std::to_string(row.r);
    f.expect(row.target == pow2(row.r), at + " target");
    f.expect(row.best >= pow2(row.r), at + " below 2^r");
    if (row.r >= 2 * row.n - 1) f.expect(row.best >= pow2(row.r), at + " exterior bound");
  }
  return f.ok() ? "" : f.summary();
}

std::string ratio_doubling() {
  Findings f;
  for (int n = 4; n <= 40; n += 2) {
    for (int r = 3; r <= n + 1; ++r) {
      const std::string at = "n=" + std::to_string(n) + " r=" + std::to_string(r);
      f.expect(ratio_product(n, r, n / 2) == ratio_product_oracle(n, r, n / 2), at + " product");
      f.expect(ratio_product_oracle(n, r, n / 2) >= 2 * ratio_product_oracle(n, r, 1), at + " oracle inequality");
      f.expect(ratio_product_doubles(n, r), at);
    }
  }
  return f.ok() ? "" : f.summary();
}

std::string ideal_x_y2_resolution() {
  Findings f;
  const PresentationMap p = parse_presentation(data("ideal_x_y2.pres"));
  const Resolution res = minimal_free_resolution(p);
  f.expect(res.betti() == ideal_x_y2_diagram(), "Betti diagram " + res.betti().to_lines());
  f.expect(res.is_minimal() && res.composes_to_zero(), "resolution is not a minimal complex");
  const std::string golden = read_file(std::string(TORANK_GOLDEN_DIR) + "/ideal_x_y2_betti.txt");
  f.expect(res.betti().to_table() == golden, "printed table differs from the golden file");
  return f.ok() ? "" : f.summary();
}

std::string presentation_matrices() {
  Findings f;
  for (const auto& [file, k, l] : std::vector<std::tuple<std::string, int, int>>{
           {"matrix2x3.pres", 2, 3}, {"matrix2x5.pres", 2, 5}, {"matrix3x5.pres", 3, 5}}) {
    const PresentationMap p = parse_presentation(data(file));
    const int r = p.target.ring.num_vars;
    f.expect(static_cast<int>(p.target.generator_degrees.size()) == k, file + " k");
    f.expect(static_cast<int>(p.columns.size()) == l, file + " l");
    f.expect(l == k + r - 1, file + " l = k + r - 1");
    f.expect(finite_length_and_hilbert(p).finite, file + " finite length");
    const Prop41Report rep = verify_prop41(p);
    f.expect(rep.holds, file + " inequality");
  }
  return f.ok() ? "" : f.summary();
}

std::string boij_soderberg() {
  Findings f;
  const BSDecomposition dec = bs_decompose(ideal_x_y2_diagram(), 2);
  f.expect(dec.parts.size() == 2, "two parts");
  if (dec.parts.size() == 2) {
    f.expect(dec.parts[0].coefficient == 2 && dec.parts[0].sequence == DegreeSequence({0, 1, 3}), "first part");
    f.expect(dec.parts[1].coefficient == 2 && dec.parts[1].sequence == DegreeSequence({0, 2, 3}), "second part");
  }
  f.expect(dec.recompose() == ideal_x_y2_diagram(), "recomposition");
  int count = 0;
  for (int c = 1; c <= 3; ++c) {
    enumerate_sequences(c, 6, [&](const DegreeSequence& d) {
      ++count;
      check_pure_hk(f, d);
    });
  }
  f.expect(count > 0, "no sequences enumerated");
  return f.ok() ? "" : f.summary();
}

std::string oracle_equivalence() {
  Findings f;
  const auto presentations = testing::random_presentations(20240917, 24);
  int nonzero = 0;
  for (std::size_t i = 0; i < presentations.size(); ++i) {
    const PresentationMap& p = presentations[i];
    const CokernelInfo info = finite_length_and_hilbert(p);
    if (info.total_dim.value_or(0) > 0) ++nonzero;
    const BettiDiagram resolved = minimal_free_resolution(p).betti();
    int top = info.top_degree.value_or(0) + p.target.ring.num_vars + 1;
    for (const auto& [key, value] : resolved.entries()) top = std::max(top, key.second);
    f.expect(resolved == betti_via_koszul(p, top), "presentation " + std::to_string(i));
  }
  f.expect(nonzero >= 20, "only " + std::to_string(nonzero) + " nonzero finite-length cokernels");
  return f.ok() ? "" : f.summary();
}

std::string perturbation_suite() {
  Findings f;
  for (const std::string file : {"circle.sul", "torus2.sul"}) {
    const Built b = build(data(file));
    const HBCohomology h = hb_cohomology_finite(b.hb);
    f.expect(h.finite && h.total_dim == 1, file + " homology dimension");
  }
  {
    const Built b = build(data("nilmanifold.sul"));
    const HBCohomology h = hb_cohomology_finite(b.hb);
    f.expect(h.finite, "nilmanifold cohomology is not finite");
    const TheoremCMaps maps = theorem_c_maps(b.hb, split_z(b.e));
    f.expect(maps.k >= 3, "nilmanifold has k < 3");
  }
  for (const std::string file : {"circle.sul", "torus2.sul", "torus3.sul", "nilmanifold.sul", "trivial_twist.sul"}) {
    const Built b = build(data(file));
    const TransferReport rep = verify_transfer(b.e, b.rd, b.hb);
    f.expect(rep.ok(), file + " identity " + (rep.ok() ? "" : rep.first_failure()->name));
  }
  {
    const Built b = build(data("trivial_twist.sul"));
    bool zero = true;
    for (const ModuleElement& c : b.hb.delta.columns) zero = zero && c.is_zero();
    f.expect(zero, "zero twist gives nonzero delta");
  }
  return f.ok() ? "" : f.summary();
}

std::string property_suites() {
  Findings f;
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int c = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<int> d{std::uniform_int_distribution<int>(0, 4)(rng)};
    for (int i = 0; i < c; ++i) d.push_back(d.back() + std::uniform_int_distribution<int>(1, 4)(rng));
    check_pure_hk(f, DegreeSequence(d));
  }
  for (int top = 0; top <= 8; ++top) {
    for (int r = 1; r <= 5; ++r) {
      const Rational expected = frac(top + r, top + 1);
      const MinRatio closed = min_ratio_over_sequences(top, r);
      f.expect(closed.ratio == expected && brute_force_min_ratio(top, r) == expected,
               "min ratio N=" + std::to_string(top) + " r=" + std::to_string(r));
    }
  }
  for (int r = 1; r <= 10; ++r) {
    for (int b = 0; b < 16; ++b) {
      f.expect(betti_sweep_bound(10, r, b).exact <= betti_sweep_bound(10, r, b + 1).exact,
               "monotone r=" + std::to_string(r) + " b=" + std::to_string(b));
    }
  }
  for (int n = 7; n <= 12; ++n) {
    for (int r = n % 2 == 1 ? n + 1 : n; r <= 2 * n; ++r) {
      for (int k : binomial_bound(n, r).tied_k) {
        f.expect(k > r - n, "argmin n=" + std::to_string(n) + " r=" + std::to_string(r));
      }
    }
  }
  int cells = 0;
  for (int param : {4, 6, 10}) {
    for (int r = 1; r <= 10; ++r) {
      const BoundEntry sweep = betti_sweep_bound(10, r, param);
      f.expect(sweep.exact == sweep_oracle(10, r, param) && sweep.value == ceiling(sweep_oracle(10, r, param)), "sweep cell");
      const BoundEntry low = low_degree_bound(10, r, param);
      const Rational low_exact = frac(10 + r - 1, 10 - r + 1) * 2 * param;
      f.expect(low.exact == low_exact && low.value == ceiling(low_exact), "low-degree cell");
      cells += 2;
    }
  }
  for (int n = 2; n <= 5; ++n) {
    for (int r = 1; r <= 2 * n; ++r) {
      const BoundEntry e = csymplectic_rank_bound(n, r);
      f.expect(e.value == ceiling(e.exact), "c-symplectic cell n=" + std::to_string(n) + " r=" + std::to_string(r));
      ++cells;
    }
  }
  f.expect(cells == 88, "expected 88 table cells, saw " + std::to_string(cells));
  return f.ok() ? "" : f.summary();
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Betti-sweep table (30 cells)", 1, betti_sweep_table},
      {2, "low-degree table (30 cells)", 1, low_degree_table},
      {3, "c-symplectic table (28 cells) and dispatch", 1, csymplectic_table},
      {4, "toral rank conjecture audit, n <= 4", 1, trc_audit_criterion},
      {5, "ratio-product doubling, even n in [4, 40]", 1, ratio_doubling},
      {6, "resolution of (x, y^2) and golden table", 1, ideal_x_y2_resolution},
      {7, "presentation matrices: finite length and l >= ratio k", 5, presentation_matrices},
      {8, "Boij-Soderberg decomposition and pure diagrams", 5, boij_soderberg},
      {9, "resolution vs Koszul oracle on random presentations", 60, oracle_equivalence},
      {10, "perturbation suite", 60, perturbation_suite},
      {11, "property suites", 30, property_suites},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = c.run();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (problem.empty() && seconds > c.budget_seconds) {
      problem = "took " + std::to_string(seconds) + " s, budget " + std::to_string(c.budget_seconds) + " s";
    }
    std::ostringstream line;
    line << (problem.empty() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << std::fixed
         << std::setprecision(3) << seconds << " s)";
    if (!problem.empty()) line << " -- " << problem;
    std::cout << line.str() << std::endl;
    if (!problem.empty()) ++failures;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
