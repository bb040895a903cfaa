#pragma once

// Free graded-commutative algebras with a differential (Sullivan models),
// their cohomology up to a degree cutoff, and torus-action extensions.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torank/linalg.hpp"
#include "torank/polyring.hpp"

namespace torank {

struct Generator {
  std::string name;
  int degree = 1;
};

/// Exponent of each generator; odd generators have exponent 0 or 1.
using Word = std::vector<int>;

/// Orders words so that words using earlier generators come first.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const { return a > b; }
};

class GradedAlgebra {
 public:
  explicit GradedAlgebra(std::vector<Generator> generators);

  int size() const { return static_cast<int>(generators_.size()); }
  const Generator& generator(int i) const { return generators_[static_cast<std::size_t>(i)]; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<int> index_of(const std::string& name) const;
  bool is_odd(int i) const { return generator(i).degree % 2 != 0; }

  int degree(const Word& w) const;
  /// Product of two words as a sign (+1, -1) and the sorted word; sign 0 when
  /// an odd generator would appear twice.
  std::pair<int, Word> multiply(const Word& a, const Word& b) const;
  /// All words of the given degree, in WordOrder.
  std::vector<Word> words_of_degree(int degree, std::size_t cap = 200000) const;
  /// Sum of all generator degrees when every generator is odd.
  std::optional<int> top_degree() const;

  std::string word_to_string(const Word& w) const;

 private:
  std::vector<Generator> generators_;
  std::map<std::string, int> index_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

class AlgebraElement {
 public:
  using Terms = std::map<Word, Rational, WordOrder>;

  AlgebraElement() = default;
  explicit AlgebraElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}
  static AlgebraElement constant(AlgebraPtr algebra, const Rational& c);
  static AlgebraElement generator(AlgebraPtr algebra, int index);
  static AlgebraElement word(AlgebraPtr algebra, Word w, const Rational& c = 1);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree when homogeneous and nonzero.
  std::optional<int> degree() const;

  void add_term(const Word& w, const Rational& c);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement scaled(const Rational& c) const;
  AlgebraElement power(int e) const;
  bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  Terms terms_;
};

inline void PrintTo(const AlgebraElement& e, std::ostream* os) { *os << e.to_string(); }

/// Parses a sum of products of generator names with rational coefficients.
/// Factors multiply in the written order, so Koszul signs apply.
AlgebraElement parse_element(std::string_view text, const AlgebraPtr& algebra);

/// A degree +1 derivation determined by its values on generators.
class Derivation {
 public:
  Derivation() = default;
  Derivation(AlgebraPtr algebra, std::vector<AlgebraElement> images);

  const AlgebraPtr& algebra() const { return algebra_; }
  const AlgebraElement& on_generator(int i) const { return images_[static_cast<std::size_t>(i)]; }
  AlgebraElement operator()(const AlgebraElement& e) const;
  AlgebraElement on_word(const Word& w) const;

 private:
  AlgebraPtr algebra_;
  std::vector<AlgebraElement> images_;
  mutable std::map<Word, AlgebraElement> cache_;
};

struct SullivanModel {
  AlgebraPtr algebra;
  Derivation d;
  std::vector<std::string> warnings;

  /// Throws unless d has degree +1 on every generator and d^2 = 0.
  void validate() const;
};

SullivanModel make_model(std::vector<Generator> generators, const std::map<std::string, std::string>& differential);

/// The model of the Borel construction: Q[X1..Xr] ⊗ ΛV with a differential D
/// that vanishes on the X_i and reduces to d modulo the X_i.
struct ActionExtension {
  SullivanModel base;
  int torus_rank = 0;
  AlgebraPtr total;  // generators X1..Xr (degree 2) followed by those of the base
  Derivation D;

  void validate() const;
  /// Index in `total` of base generator i.
  int total_index(int base_index) const { return torus_rank + base_index; }
};

struct ModelFile {
  SullivanModel model;
  std::optional<ActionExtension> extension;
};

/// "gen <name> deg=<int>" lines, "d <name> = <expr>" lines, then optionally
/// "torus r=<int>" and "D <name> = <expr>" lines. '#' starts a comment.
ModelFile parse_model_file(const std::string& text);
SullivanModel parse_model(const std::string& text);
ActionExtension parse_extension(const std::string& text);

/// Splits each degree of ΛV as B ⊕ A ⊕ C with B = im d, B ⊕ A = ker d and
/// d: C -> B of the next degree an isomorphism. The B basis of degree p+1
/// is d applied to the C basis of degree p.
class Cohomology {
 public:
  struct Piece {
    std::vector<Word> words;
    std::map<Word, int> index;
    std::vector<linalg::Vector> b_basis, a_basis, c_basis;
    linalg::Matrix to_adapted;  // coordinates in the [B | A | C] basis
  };

  /// `preferred_cycles[p]` are placed first in the basis of H^p; they must be
  /// cycles that stay independent modulo boundaries.
  Cohomology(const SullivanModel& model, int cutoff,
             const std::vector<std::vector<AlgebraElement>>& preferred_cycles = {});

  const SullivanModel& model() const { return model_; }
  int cutoff() const { return cutoff_; }
  const Piece& piece(int degree) const { return pieces_[static_cast<std::size_t>(degree)]; }

  int betti(int degree) const;
  std::vector<int> betti_numbers() const;
  long long total_dimension() const;
  int formal_dimension() const;
  long long euler_characteristic() const;

  linalg::Vector to_vector(const AlgebraElement& e, int degree) const;
  AlgebraElement to_element(const linalg::Vector& v, int degree) const;
  /// The k-th basis class, as a cycle.
  AlgebraElement representative(int degree, int k) const;
  /// Coordinates of the class of a cycle in the basis of H^degree.
  linalg::Vector class_of(const AlgebraElement& cycle, int degree) const;
  bool is_cycle(const AlgebraElement& e) const;
  /// Coordinates of [x_i][y_j] in H^{p+q}.
  linalg::Vector product(int p, int i, int q, int j) const;

 private:
  SullivanModel model_;
  int cutoff_;
  std::vector<Piece> pieces_;
};

/// Cutoff used when none is given: the top degree of ΛV for purely odd
/// models. Throws when the model has even generators.
int default_cutoff(const SullivanModel& model);

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

struct CsymplecticResult {
  Verdict verdict = Verdict::unknown;
  int n = 0;
  bool poincare_duality = false;
  std::optional<AlgebraElement> omega;
  std::optional<AlgebraElement> omega_power;  // omega^n as a cocycle
  std::optional<bool> lefschetz_type;
  std::string message;
};

/// Checks Poincaré duality and finds (or checks) omega in H^2 with omega^n
/// nonzero in the top degree 2n.
CsymplecticResult c_symplectic_check(const Cohomology& h, const std::optional<AlgebraElement>& omega = std::nullopt);

}  // namespace torank
