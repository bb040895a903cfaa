#pragma once

// Betti diagrams, pure diagrams and Boij-Söderberg decompositions.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torank/polyring.hpp"

namespace torank {

class NotInCone : public Error {
 public:
  using Error::Error;
};

/// Strictly increasing degrees d_0 < d_1 < ... < d_c.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<int> degrees);

  const std::vector<int>& degrees() const { return degrees_; }
  int operator[](int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(degrees_.size()); }
  /// c, the index of the last entry.
  int length() const { return size() - 1; }
  /// Translated so that d_0 = 0.
  DegreeSequence normalized() const;

  bool operator==(const DegreeSequence&) const = default;
  std::string to_string() const;

 private:
  std::vector<int> degrees_;
};

enum class TableLayout {
  paper,      // row j, column i
  regularity  // row j - i, column i
};

class BettiDiagram {
 public:
  using Key = std::pair<int, int>;  // (i, j)

  BettiDiagram() = default;
  explicit BettiDiagram(int codim_hint) : codim_hint_(codim_hint) {}

  int codim_hint() const { return codim_hint_; }
  void set_codim_hint(int c) { codim_hint_ = c; }
  const std::map<Key, Rational>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Rational at(int i, int j) const;
  void set(int i, int j, const Rational& value);
  void add(int i, int j, const Rational& value);
  /// beta_i = sum_j beta_{i,j}
  Rational total(int i) const;
  int max_column() const;

  BettiDiagram operator+(const BettiDiagram& other) const;
  BettiDiagram operator-(const BettiDiagram& other) const;
  BettiDiagram scaled(const Rational& q) const;
  bool operator==(const BettiDiagram& other) const { return entries_ == other.entries_; }

  /// One "<i> <j> <value>" line per nonzero entry, ordered by (i, j).
  std::string to_lines() const;
  /// Aligned array showing the window where the diagram is nonzero.
  std::string to_table(TableLayout layout = TableLayout::paper) const;

 private:
  int codim_hint_ = 0;
  std::map<Key, Rational> entries_;
};

BettiDiagram parse_diagram(const std::string& text);

BettiDiagram pure_diagram(const DegreeSequence& d);

/// beta_1 / beta_0 of a pure diagram of type d: prod_{i>=2} d_i / (d_i - d_1)
/// after translating d_0 to 0.
Rational hk_ratio(const DegreeSequence& d);

/// residual_t = sum_{i,j} (-1)^i b_{i,j} j^t for t = 0..codim-1.
std::vector<Rational> herzog_kuhl_residuals(const BettiDiagram& b, int codim);

struct BSPart {
  Rational coefficient;
  DegreeSequence sequence;
};

struct BSDecomposition {
  std::vector<BSPart> parts;

  BettiDiagram recompose() const;
  std::string to_string() const;
};

/// Greedy peeling: take the lowest nonzero degree of every column as the
/// degree sequence and subtract the largest multiple of its pure diagram.
BSDecomposition bs_decompose(const BettiDiagram& b, int codim);

struct MinRatio {
  Rational ratio;
  DegreeSequence argmin;
};

/// Minimum of hk_ratio over d with d_0 = 0, d_1 >= 1 and d_i <= N + i.
MinRatio min_ratio_over_sequences(int top_degree, int num_vars);

}  // namespace torank
