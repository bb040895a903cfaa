#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "torank/sullivan.hpp"

using namespace torank;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TORANK_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraElement el(const AlgebraPtr& a, const std::string& text) { return parse_element(text, a); }

linalg::Matrix pairing(const Cohomology& h, int p, int q) {
  linalg::Matrix m(h.betti(p), h.betti(q));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) m(i, j) = h.product(p, i, q, j)[0];
  }
  return m;
}

const std::vector<std::string> kModels{"nilmanifold.sul", "circle.sul", "torus2.sul", "torus3.sul", "sphere2.sul"};

}  // namespace

TEST(GradedAlgebra, OddGeneratorsAnticommuteAndSquareToZero) {
  auto a = std::make_shared<const GradedAlgebra>(std::vector<Generator>{{"x", 1}, {"y", 1}, {"z", 2}});
  EXPECT_EQ(el(a, "y*x"), el(a, "-x*y"));
  EXPECT_TRUE(el(a, "x*x").is_zero());
  EXPECT_TRUE(el(a, "x^2").is_zero());
  EXPECT_EQ(el(a, "z*x"), el(a, "x*z"));
  EXPECT_EQ(el(a, "z*z"), el(a, "z^2"));
  EXPECT_EQ(el(a, "x*y*z").degree(), 4);
  EXPECT_FALSE(el(a, "x + z").degree().has_value());
  EXPECT_THROW(el(a, "w"), ParseError);
}

TEST(GradedAlgebra, WordsOfDegree) {
  auto a = std::make_shared<const GradedAlgebra>(std::vector<Generator>{{"x", 1}, {"y", 1}, {"z", 2}});
  EXPECT_EQ(a->words_of_degree(2).size(), 2u);  // xy, z
  EXPECT_EQ(a->words_of_degree(4).size(), 2u);  // xyz, z^2
  auto even = std::make_shared<const GradedAlgebra>(std::vector<Generator>{{"p", 2}, {"q", 2}, {"s", 2}});
  EXPECT_EQ(even->words_of_degree(40).size(), 231u);
  EXPECT_THROW(even->words_of_degree(40, 5), Error);
  EXPECT_FALSE(a->top_degree().has_value());
}

TEST(GradedAlgebra, KoszulSignCoherence) {
  std::mt19937 rng(2718);
  auto a = std::make_shared<const GradedAlgebra>(
      std::vector<Generator>{{"u", 1}, {"v", 1}, {"w", 3}, {"s", 2}, {"t", 1}, {"q", 4}});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> gens;
    for (int i = 0; i < a->size(); ++i) {
      if (rng() % 2) gens.push_back(i);
    }
    std::vector<int> perm = gens;
    std::shuffle(perm.begin(), perm.end(), rng);
    AlgebraElement sorted = AlgebraElement::constant(a, 1);
    for (int g : gens) sorted = sorted * AlgebraElement::generator(a, g);
    AlgebraElement shuffled = AlgebraElement::constant(a, 1);
    for (int g : perm) shuffled = shuffled * AlgebraElement::generator(a, g);
    // sign of the permutation restricted to odd generators
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        if (a->is_odd(perm[i]) && a->is_odd(perm[j]) && perm[i] > perm[j]) ++inversions;
      }
    }
    EXPECT_EQ(shuffled, sorted.scaled(inversions % 2 == 0 ? 1 : -1));
  }
}

TEST(SullivanModel, ParsesNilmanifoldAndExtension) {
  const ModelFile f = parse_model_file(read_data("nilmanifold.sul"));
  const auto& alg = f.model.algebra;
  EXPECT_EQ(alg->size(), 6);
  EXPECT_EQ(f.model.d(el(alg, "b1")), el(alg, "a2*a3"));
  EXPECT_EQ(f.model.d(el(alg, "b2")), el(alg, "a3*a1"));
  EXPECT_TRUE(f.model.warnings.empty());
  ASSERT_TRUE(f.extension.has_value());
  const ActionExtension& ext = *f.extension;
  EXPECT_EQ(ext.torus_rank, 3);
  EXPECT_EQ(ext.D(el(ext.total, "b1")), el(ext.total, "a2*a3 + X1"));
  EXPECT_TRUE(ext.D(el(ext.total, "X2")).is_zero());
}

TEST(SullivanModel, CircleAndOmittedDifferentials) {
  const SullivanModel circle = parse_model(read_data("circle.sul"));
  EXPECT_EQ(circle.algebra->size(), 1);
  EXPECT_TRUE(circle.d.on_generator(0).is_zero());
  const ActionExtension t3 = parse_extension(read_data("torus3.sul"));
  EXPECT_EQ(t3.D(el(t3.total, "x2")), el(t3.total, "X2"));
}

TEST(SullivanModel, RejectsBadInput) {
  EXPECT_THROW(parse_model(read_data("corrupted.sul")), Error);
  try {
    parse_model(read_data("corrupted.sul"));
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("generator a"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_model("gen x deg=1\nd x = x"), Error);              // wrong degree
  EXPECT_THROW(parse_model("gen X1 deg=1\n"), ParseError);                // reserved name
  EXPECT_THROW(parse_model("gen x deg=0\n"), ParseError);
  EXPECT_THROW(parse_model("gen x deg=1\nd y = 0\n"), ParseError);
  EXPECT_THROW(parse_model("gen x deg=1\nfoo\n"), ParseError);
  EXPECT_THROW(parse_model("gen x deg=1\nD x = 0\n"), ParseError);        // D before torus
  EXPECT_THROW(parse_extension("gen x deg=1\n"), ParseError);
  // D must reduce to d modulo the X_i
  EXPECT_THROW(parse_extension("gen x deg=1\ngen y deg=1\ntorus r=1\nD x = x*y\n"), Error);
  // D^2 != 0
  EXPECT_THROW(parse_extension("gen x deg=1\ngen y deg=3\ntorus r=1\nD x = X1\nD y = x*X1\n"), Error);
}

TEST(SullivanModel, MinimalityWarning) {
  const SullivanModel m = parse_model("gen x deg=1\ngen y deg=2\nd x = y\n");
  ASSERT_EQ(m.warnings.size(), 1u);
}

TEST(SullivanModel, SquareZeroAndLeibnizOnRandomWords) {
  std::mt19937 rng(1618);
  for (const std::string& name : kModels) {
    const ModelFile f = parse_model_file(read_data(name));
    std::vector<std::pair<AlgebraPtr, const Derivation*>> cases{{f.model.algebra, &f.model.d}};
    if (f.extension) cases.emplace_back(f.extension->total, &f.extension->D);
    for (const auto& [alg, d] : cases) {
      std::vector<Word> pool;
      for (int deg = 0; deg <= 6; ++deg) {
        for (const Word& w : alg->words_of_degree(deg)) pool.push_back(w);
      }
      for (int trial = 0; trial < 60; ++trial) {
        const Word& wa = pool[rng() % pool.size()];
        const Word& wb = pool[rng() % pool.size()];
        const AlgebraElement x = AlgebraElement::word(alg, wa);
        const AlgebraElement y = AlgebraElement::word(alg, wb);
        EXPECT_TRUE((*d)((*d)(x)).is_zero()) << name;
        const int sign = alg->degree(wa) % 2 == 0 ? 1 : -1;
        EXPECT_EQ((*d)(x * y), (*d)(x) * y + (x * (*d)(y)).scaled(sign)) << name;
      }
    }
  }
}

TEST(Cohomology, Nilmanifold) {
  const SullivanModel m = parse_model(read_data("nilmanifold.sul"));
  const Cohomology h(m, default_cutoff(m));
  EXPECT_EQ(h.betti_numbers(), (std::vector<int>{1, 3, 8, 12, 8, 3, 1}));
  EXPECT_EQ(h.formal_dimension(), 6);
  EXPECT_EQ(h.euler_characteristic(), 0);
  for (int i = 0; i < 3; ++i) {
    const AlgebraElement a = el(m.algebra, "a" + std::to_string(i + 1));
    EXPECT_FALSE(linalg::is_zero(h.class_of(a, 1)));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(linalg::is_zero(h.product(1, i, 1, j)));
  }
  EXPECT_THROW(h.class_of(el(m.algebra, "b1"), 1), Error);
}

TEST(Cohomology, SmallModels) {
  const SullivanModel circle = parse_model(read_data("circle.sul"));
  EXPECT_EQ(Cohomology(circle, 1).betti_numbers(), (std::vector<int>{1, 1}));
  const SullivanModel torus = parse_model(read_data("torus2.sul"));
  const Cohomology ht(torus, default_cutoff(torus));
  EXPECT_EQ(ht.betti_numbers(), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(ht.formal_dimension(), 2);
  EXPECT_EQ(ht.euler_characteristic(), 0);
  const SullivanModel point = make_model({}, {});
  const Cohomology hp(point, default_cutoff(point));
  EXPECT_EQ(hp.formal_dimension(), 0);
  EXPECT_EQ(hp.euler_characteristic(), 1);
  const SullivanModel sphere = parse_model(read_data("sphere2.sul"));
  EXPECT_THROW(default_cutoff(sphere), Error);
  EXPECT_EQ(Cohomology(sphere, 8).betti_numbers(), (std::vector<int>{1, 0, 1, 0, 0, 0, 0, 0, 0}));
}

TEST(Cohomology, RepresentativesAreCyclesAndDimensionsMatchDuality) {
  for (const std::string& name : {"nilmanifold.sul", "torus3.sul"}) {
    const SullivanModel m = parse_model(read_data(name));
    const Cohomology h(m, default_cutoff(m));
    const int fd = h.formal_dimension();
    for (int p = 0; p <= fd; ++p) {
      for (int k = 0; k < h.betti(p); ++k) EXPECT_TRUE(h.is_cycle(h.representative(p, k)));
      const linalg::Matrix forward = pairing(h, p, fd - p);
      EXPECT_EQ(linalg::rank(forward), h.betti(p)) << name << " degree " << p;
      const linalg::Matrix backward = pairing(h, fd - p, p).transposed();
      const int sign = (p * (fd - p)) % 2 == 0 ? 1 : -1;
      for (int i = 0; i < forward.rows(); ++i) {
        for (int j = 0; j < forward.cols(); ++j) EXPECT_EQ(forward(i, j), sign * backward(i, j));
      }
    }
  }
}

TEST(Csymplectic, NilmanifoldWithGivenOmega) {
  const SullivanModel m = parse_model(read_data("nilmanifold.sul"));
  const Cohomology h(m, 6);
  const AlgebraElement omega = el(m.algebra, "a1*b2 + a2*b3 + a3*b1");
  EXPECT_EQ(omega.power(3), el(m.algebra, "-6*a1*a2*a3*b1*b2*b3"));
  const CsymplecticResult res = c_symplectic_check(h, omega);
  EXPECT_EQ(res.verdict, Verdict::yes);
  EXPECT_EQ(res.n, 3);
  EXPECT_TRUE(res.poincare_duality);
  ASSERT_TRUE(res.omega_power.has_value());
  EXPECT_EQ(*res.omega_power, el(m.algebra, "-6*a1*a2*a3*b1*b2*b3"));
  ASSERT_TRUE(res.lefschetz_type.has_value());
}

TEST(Csymplectic, NilmanifoldSearch) {
  const SullivanModel m = parse_model(read_data("nilmanifold.sul"));
  const CsymplecticResult res = c_symplectic_check(Cohomology(m, 6));
  EXPECT_EQ(res.verdict, Verdict::yes);
  ASSERT_TRUE(res.omega.has_value());
  EXPECT_FALSE(res.omega->power(3).is_zero());
}

TEST(Csymplectic, TorusCircleAndPoint) {
  const SullivanModel torus = parse_model(read_data("torus2.sul"));
  const CsymplecticResult res = c_symplectic_check(Cohomology(torus, 2));
  EXPECT_EQ(res.verdict, Verdict::yes);
  EXPECT_EQ(res.n, 1);
  EXPECT_EQ(res.lefschetz_type, true);
  const SullivanModel circle = parse_model(read_data("circle.sul"));
  EXPECT_THROW(c_symplectic_check(Cohomology(circle, 1)), Error);
  const SullivanModel t3 = parse_model(read_data("torus3.sul"));
  EXPECT_THROW(c_symplectic_check(Cohomology(t3, 3)), Error);
}

TEST(Csymplectic, SuppliedOmegaWithVanishingPowerIsUnknown) {
  const SullivanModel m = parse_model("gen x1 deg=1\ngen x2 deg=1\ngen x3 deg=1\ngen x4 deg=1\n");
  const Cohomology h(m, 4);
  EXPECT_EQ(c_symplectic_check(h, el(m.algebra, "x1*x2")).verdict, Verdict::unknown);
  EXPECT_EQ(c_symplectic_check(h, el(m.algebra, "x1*x2 + x3*x4")).verdict, Verdict::yes);
  EXPECT_EQ(c_symplectic_check(h).verdict, Verdict::yes);
}
