#pragma once

// Exact sparse multivariate polynomials over Q and graded free modules.
//
// A Ring fixes the number of variables and the degree of each variable.
// Degree 1 is the usual grading for free resolutions; degree 2 is the
// grading of H^*(BT^r) used by Borel models. The two gradings are never
// converted implicitly.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace torank {

using Rational = mpq_class;
using Integer = mpz_class;

/// Rationals built from a numerator and denominator are not reduced by GMP;
/// every value stored in a polynomial passes through here first.
Rational canonical(Rational q);
std::string to_string(const Rational& q);
Integer ceil(const Rational& q);
Rational parse_rational(std::string_view text);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Ring {
  int num_vars = 1;
  int var_degree = 1;

  Ring() = default;
  Ring(int num_vars, int var_degree);

  bool operator==(const Ring&) const = default;
  std::string var_name(int i) const { return "x" + std::to_string(i + 1); }
};

using Exponents = std::vector<int>;

int total_degree(const Exponents& m);
bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
Exponents quotient(const Exponents& a, const Exponents& b);  // a / b, requires divides(b, a)
Exponents product(const Exponents& a, const Exponents& b);
bool coprime(const Exponents& a, const Exponents& b);

/// Degree-reverse-lexicographic "greater than": larger total degree wins,
/// ties go to the monomial with the smaller exponent in the last differing
/// variable. Used as the map comparator so the leading term comes first.
struct DegRevLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, DegRevLexGreater>;

  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(ring) {}
  Polynomial(Ring ring, const Rational& constant);
  static Polynomial monomial(Ring ring, Exponents exps, const Rational& coeff = 1);
  static Polynomial variable(Ring ring, int index);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Leading term under degrevlex. Requires a nonzero polynomial.
  const Exponents& leading_monomial() const;
  const Rational& leading_coefficient() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& m) const;

  /// Internal degree of a homogeneous polynomial (var_degree * total degree);
  /// nullopt for zero or inhomogeneous polynomials.
  std::optional<int> degree() const;
  bool is_homogeneous() const;

  void add_term(const Exponents& m, const Rational& c);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);

  Polynomial scaled(const Rational& c) const;
  Polynomial times_monomial(const Exponents& m, const Rational& c) const;
  /// Same exponents in a ring with a different variable degree.
  Polynomial regraded(int var_degree) const;

  bool operator==(const Polynomial& other) const;

  /// Canonical form: degrevlex order, "p/q" coefficients, x1..xr names.
  std::string to_string() const;

 private:
  void check_ring(const Polynomial& other) const;

  Ring ring_;
  TermMap terms_;
};

/// One additive term of a parsed expression: a rational coefficient and
/// the factors in the order they were written.
struct ParsedTerm {
  Rational coefficient;
  std::vector<std::pair<std::string, int>> factors;
  std::size_t position = 0;
};

/// Tokenizes `term (("+"|"-") term)*` with `term := coeff ("*" factor)* |
/// factor ("*" factor)*`, `factor := name ("^" nat)?`. Names are identifiers.
std::vector<ParsedTerm> parse_terms(std::string_view text);

Polynomial parse_poly(std::string_view text, const Ring& ring);

struct FreeModule {
  Ring ring;
  std::vector<int> generator_degrees;

  int rank() const { return static_cast<int>(generator_degrees.size()); }
  bool operator==(const FreeModule&) const = default;
};

struct ElementDegree {
  enum class Kind { zero, homogeneous, inhomogeneous };
  Kind kind = Kind::zero;
  int degree = 0;

  bool homogeneous() const { return kind == Kind::homogeneous; }
};

class ModuleElement {
 public:
  ModuleElement() = default;
  explicit ModuleElement(FreeModule module);
  ModuleElement(FreeModule module, std::vector<Polynomial> components);
  static ModuleElement basis(const FreeModule& module, int index);

  const FreeModule& module() const { return module_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](int s) const { return components_[static_cast<std::size_t>(s)]; }
  Polynomial& operator[](int s) { return components_[static_cast<std::size_t>(s)]; }
  int rank() const { return module_.rank(); }

  bool is_zero() const;
  ElementDegree degree() const;

  ModuleElement operator+(const ModuleElement& other) const;
  ModuleElement operator-(const ModuleElement& other) const;
  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  ModuleElement scaled(const Polynomial& p) const;
  ModuleElement times_monomial(const Exponents& m, const Rational& c) const;
  /// Reinterpret the same components in another free module of equal rank.
  ModuleElement rebased(const FreeModule& module) const;

  bool operator==(const ModuleElement& other) const;
  std::string to_string() const;

 private:
  void check_module(const ModuleElement& other) const;

  FreeModule module_;
  std::vector<Polynomial> components_;
};

ElementDegree element_degree(const ModuleElement& e);

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const ModuleElement& e, std::ostream* os) { *os << e.to_string(); }

}  // namespace torank
