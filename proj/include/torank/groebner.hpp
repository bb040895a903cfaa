#pragma once

// Gröbner bases of graded submodules of free modules over Q[x1..xr].
//
// The only module order is position-over-term: a term in a lower generator
// position is larger than any term in a higher position, and terms in the
// same position compare by degrevlex. All inputs are homogeneous.

#include <optional>
#include <string>
#include <vector>

#include "torank/polyring.hpp"

namespace torank {

class DegreeCapExceeded : public Error {
 public:
  explicit DegreeCapExceeded(int degree)
      : Error("internal degree " + std::to_string(degree) + " exceeds the degree cap"), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

struct GroebnerOptions {
  int degree_cap = 64;
};

struct LeadingTerm {
  int position = 0;
  Exponents monomial;
  Rational coefficient;
};

std::optional<LeadingTerm> leading_term(const ModuleElement& e);

/// Position-over-term comparison of two (position, monomial) pairs.
bool pot_greater(int pos_a, const Exponents& a, int pos_b, const Exponents& b);

struct GroebnerBasis {
  FreeModule module;
  std::vector<ModuleElement> elements;  // reduced, monic, sorted by degree then leading term
};

GroebnerBasis buchberger(const FreeModule& module, const std::vector<ModuleElement>& gens,
                         const GroebnerOptions& options = {});

/// Adds generators to an existing basis, reusing the pairs already resolved.
GroebnerBasis extend(const GroebnerBasis& gb, const std::vector<ModuleElement>& more,
                     const GroebnerOptions& options = {});

ModuleElement normal_form(const ModuleElement& e, const GroebnerBasis& gb);

/// A graded map source -> target given by the images of the source generators.
struct PresentationMap {
  FreeModule source;
  FreeModule target;
  std::vector<ModuleElement> columns;

  int rows() const { return target.rank(); }
  int cols() const { return source.rank(); }
  const Polynomial& entry(int row, int col) const { return columns[static_cast<std::size_t>(col)][row]; }

  /// Throws unless every column lies in `target` and is homogeneous of the
  /// degree of its source generator.
  void validate() const;

  /// True when no entry has a nonzero constant term, i.e. im ⊂ I·target.
  bool image_in_maximal_ideal() const;
};

/// Builds a presentation from its columns, inferring source degrees from the
/// columns. Zero columns get `zero_column_degree`, or one variable degree
/// above the highest target generator when that is not given.
PresentationMap make_presentation(const FreeModule& target, const std::vector<ModuleElement>& columns,
                                  std::optional<int> zero_column_degree = std::nullopt);

/// Generators of the kernel of p, as a map into p.source. The columns form a
/// Gröbner basis of the syzygy module (they are not minimized).
PresentationMap syzygies(const PresentationMap& p, const GroebnerOptions& options = {});
PresentationMap syzygy_basis(const GroebnerBasis& gb, const GroebnerOptions& options = {});

/// A minimal homogeneous generating subset of the submodule spanned by gens
/// (zero elements dropped, processed in degree order, first occurrence kept).
std::vector<ModuleElement> minimal_generators(const FreeModule& module, const std::vector<ModuleElement>& gens,
                                              const GroebnerOptions& options = {});

struct CokernelInfo {
  bool finite = false;
  int start_degree = 0;               // degree of hilbert[0]
  std::vector<long long> hilbert;     // dims of coker in start_degree, start_degree+1, ...
  std::optional<long long> total_dim;
  std::optional<int> top_degree;      // highest degree with nonzero dimension

  long long dim(int degree) const;
};

CokernelInfo finite_length_and_hilbert(const PresentationMap& p, const GroebnerOptions& options = {});

/// Line format: "ring r=<int> vardeg=<1|2>", "target d1 .. dk",
/// optional "source e1 .. el", "matrix k l", then k rows of l entries.
/// Lines starting with '#' are comments.
PresentationMap parse_presentation(const std::string& text);
std::string format_presentation(const PresentationMap& p, bool with_source_degrees = true);

}  // namespace torank
