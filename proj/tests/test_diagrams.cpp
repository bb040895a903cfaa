#include <gtest/gtest.h>

#include <functional>

#include "torank/diagrams.hpp"

namespace torank {
namespace {

BettiDiagram diagram(std::initializer_list<std::tuple<int, int, Rational>> entries) {
  BettiDiagram b;
  for (const auto& [i, j, v] : entries) b.set(i, j, v);
  return b;
}

BettiDiagram ideal_x_y2_diagram() { return diagram({{0, 0, 1}, {1, 1, 1}, {1, 2, 1}, {2, 3, 1}}); }

TEST(PureDiagram, ZeroOneThree) {
  EXPECT_EQ(pure_diagram(DegreeSequence({0, 1, 3})), diagram({{0, 0, Rational(1, 3)}, {1, 1, Rational(1, 2)}, {2, 3, Rational(1, 6)}}));
}

TEST(PureDiagram, ZeroOne) { EXPECT_EQ(pure_diagram(DegreeSequence({0, 1})), diagram({{0, 0, 1}, {1, 1, 1}})); }

TEST(PureDiagram, ZeroTwoThree) {
  EXPECT_EQ(pure_diagram(DegreeSequence({0, 2, 3})), diagram({{0, 0, Rational(1, 6)}, {1, 2, Rational(1, 2)}, {2, 3, Rational(1, 3)}}));
}

TEST(DegreeSequence, MustIncrease) {
  EXPECT_THROW(DegreeSequence({0, 2, 2}), Error);
  EXPECT_THROW(DegreeSequence(std::vector<int>{}), Error);
}

TEST(HkRatio, Telescoping) {
  for (int N = 0; N <= 5; ++N) {
    for (int r = 1; r <= 5; ++r) {
      std::vector<int> d{0, 1};
      for (int i = 2; i <= r; ++i) d.push_back(N + i);
      Rational expected(N + r, N + 1);
      expected.canonicalize();
      EXPECT_EQ(hk_ratio(DegreeSequence(d)), expected);
    }
  }
}

TEST(HkRatio, SmallCases) {
  EXPECT_EQ(hk_ratio(DegreeSequence({0, 1})), 1);
  EXPECT_EQ(hk_ratio(DegreeSequence({0, 1, 3})), Rational(3, 2));
  EXPECT_EQ(hk_ratio(DegreeSequence({5, 6, 8})), Rational(3, 2));
  EXPECT_THROW(hk_ratio(DegreeSequence({0})), Error);
}

TEST(HkRatio, MatchesPureDiagramTotals) {
  for (const auto& d : {std::vector<int>{0, 1, 3}, {0, 2, 5, 6}, {1, 3, 4, 7, 9}}) {
    const BettiDiagram pi = pure_diagram(DegreeSequence(d));
    EXPECT_EQ(pi.total(1) / pi.total(0), hk_ratio(DegreeSequence(d)));
  }
}

TEST(HerzogKuhl, PureAndExample) {
  EXPECT_EQ(herzog_kuhl_residuals(pure_diagram(DegreeSequence({0, 1, 3})), 2), (std::vector<Rational>{0, 0}));
  EXPECT_EQ(herzog_kuhl_residuals(ideal_x_y2_diagram(), 2), (std::vector<Rational>{0, 0}));
  EXPECT_EQ(herzog_kuhl_residuals(diagram({{0, 0, 1}}), 1), (std::vector<Rational>{1}));
}

TEST(HerzogKuhl, EveryPureDiagramSatisfiesAll) {
  const std::vector<std::vector<int>> seqs{{0, 1}, {0, 1, 3}, {0, 2, 3}, {0, 1, 4, 6}, {2, 3, 5, 8, 9}, {0, 3, 4, 5, 7, 11}};
  for (const auto& d : seqs) {
    const auto res = herzog_kuhl_residuals(pure_diagram(DegreeSequence(d)), static_cast<int>(d.size()) - 1);
    for (const auto& q : res) EXPECT_EQ(q, 0);
  }
}

TEST(BsDecompose, IdealXY2) {
  const BSDecomposition dec = bs_decompose(ideal_x_y2_diagram(), 2);
  ASSERT_EQ(dec.parts.size(), 2u);
  EXPECT_EQ(dec.parts[0].coefficient, 2);
  EXPECT_EQ(dec.parts[0].sequence, DegreeSequence({0, 1, 3}));
  EXPECT_EQ(dec.parts[1].coefficient, 2);
  EXPECT_EQ(dec.parts[1].sequence, DegreeSequence({0, 2, 3}));
  EXPECT_EQ(dec.recompose(), ideal_x_y2_diagram());
}

TEST(BsDecompose, PureIsSinglePart) {
  const DegreeSequence d({0, 2, 5});
  const BSDecomposition dec = bs_decompose(pure_diagram(d).scaled(Rational(7, 3)), 2);
  ASSERT_EQ(dec.parts.size(), 1u);
  EXPECT_EQ(dec.parts[0].coefficient, Rational(7, 3));
  EXPECT_EQ(dec.parts[0].sequence, d);
}

TEST(BsDecompose, NotInCone) {
  EXPECT_THROW(bs_decompose(diagram({{0, 0, 1}, {1, 1, 1}, {2, 3, 1}}), 2), NotInCone);
  EXPECT_THROW(bs_decompose(diagram({{0, 0, 1}, {3, 3, 1}}), 2), NotInCone);
  EXPECT_THROW(bs_decompose(diagram({{0, 0, -1}}), 2), NotInCone);
}

TEST(BsDecompose, StepCountAndIdempotence) {
  const BettiDiagram b = pure_diagram(DegreeSequence({0, 1, 3})).scaled(2) + pure_diagram(DegreeSequence({0, 2, 4})).scaled(5) +
                         pure_diagram(DegreeSequence({1, 2, 4}));
  const BSDecomposition dec = bs_decompose(b, 2);
  EXPECT_LE(dec.parts.size(), b.entries().size());
  EXPECT_EQ(dec.recompose(), b);
  const BSDecomposition again = bs_decompose(dec.recompose(), 2);
  EXPECT_EQ(again.recompose(), dec.recompose());
  for (const auto& part : dec.parts) EXPECT_GT(part.coefficient, 0);
}

// Exhaustive minimum of hk_ratio over d_0 = 0 < d_1 < ... < d_r, d_i <= N + i.
MinRatio brute_force_min(int N, int r) {
  MinRatio best{Rational(-1), DegreeSequence({0})};
  std::vector<int> d{0};
  std::function<void()> walk = [&] {
    const int i = static_cast<int>(d.size());
    if (i == r + 1) {
      const DegreeSequence seq(d);
      const Rational q = hk_ratio(seq);
      if (best.ratio < 0 || q < best.ratio) best = {q, seq};
      return;
    }
    for (int v = d.back() + 1; v <= N + i; ++v) {
      d.push_back(v);
      walk();
      d.pop_back();
    }
  };
  walk();
  return best;
}

TEST(MinRatio, Examples) {
  const MinRatio a = min_ratio_over_sequences(1, 2);
  EXPECT_EQ(a.ratio, Rational(3, 2));
  EXPECT_EQ(a.argmin, DegreeSequence({0, 1, 3}));
  const MinRatio b = min_ratio_over_sequences(0, 4);
  EXPECT_EQ(b.ratio, 4);
  EXPECT_EQ(b.argmin, DegreeSequence({0, 1, 2, 3, 4}));
  EXPECT_EQ(min_ratio_over_sequences(3, 1).ratio, 1);
  EXPECT_THROW(min_ratio_over_sequences(-1, 2), Error);
}

TEST(MinRatio, AgreesWithBruteForce) {
  for (int N = 0; N <= 8; ++N) {
    for (int r = 1; r <= 5; ++r) {
      const MinRatio closed = min_ratio_over_sequences(N, r);
      const MinRatio brute = brute_force_min(N, r);
      Rational expected(N + r, N + 1);
      expected.canonicalize();
      EXPECT_EQ(closed.ratio, expected);
      EXPECT_EQ(brute.ratio, expected) << "N=" << N << " r=" << r;
      EXPECT_EQ(hk_ratio(closed.argmin), closed.ratio);
    }
  }
}

TEST(DiagramIo, ParseAndPrint) {
  const BettiDiagram b = parse_diagram("# Example\n0 0 1  # unit\n1 1 1\n1 2 1\n2 3 1\n");
  EXPECT_EQ(b, ideal_x_y2_diagram());
  EXPECT_EQ(parse_diagram(b.to_lines()), b);
  EXPECT_EQ(parse_diagram("0 0 1/3\n0 0 2/3\n"), diagram({{0, 0, 1}}));
  EXPECT_THROW(parse_diagram("0 0\n"), ParseError);
  EXPECT_THROW(parse_diagram("0 0 x\n"), ParseError);
  EXPECT_THROW(parse_diagram("-1 0 1\n"), ParseError);
}

TEST(DiagramIo, TableLayouts) {
  const std::string paper =
      "  | 0 1 2\n"
      "--+------\n"
      "0 | 1 0 0\n"
      "1 | 0 1 0\n"
      "2 | 0 1 0\n"
      "3 | 0 0 1\n";
  EXPECT_EQ(ideal_x_y2_diagram().to_table(TableLayout::paper), paper);
  const std::string regularity =
      "  | 0 1 2\n"
      "--+------\n"
      "0 | 1 1 0\n"
      "1 | 0 1 1\n";
  EXPECT_EQ(ideal_x_y2_diagram().to_table(TableLayout::regularity), regularity);
}

}  // namespace
}  // namespace torank
