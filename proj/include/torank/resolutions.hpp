#pragma once

// Minimal graded free resolutions and graded Betti numbers.

#include <map>
#include <vector>

#include "torank/diagrams.hpp"
#include "torank/groebner.hpp"
#include "torank/linalg.hpp"

namespace torank {

/// F_0 <- F_1 <- ... ; maps[i] : F_{i+1} -> F_i.
struct Resolution {
  FreeModule augmentation;  // F_0
  std::vector<PresentationMap> maps;

  int length() const { return static_cast<int>(maps.size()); }
  const FreeModule& free_module(int i) const { return i == 0 ? augmentation : maps[static_cast<std::size_t>(i - 1)].source; }
  BettiDiagram betti() const;
  bool is_minimal() const;
  bool composes_to_zero() const;
};

/// Removes unit entries by Gaussian elimination on the complex
/// F_0 <- F_1 <- ... . Each pivot deletes a source generator of one map and
/// the matching target generator, adjusting the neighbouring maps.
std::vector<PresentationMap> cancel_units(std::vector<PresentationMap> maps);

Resolution minimal_free_resolution(const PresentationMap& p, const GroebnerOptions& options = {});

/// Graded pieces of coker(p) computed by dense linear algebra, one degree at a
/// time, with no Gröbner bases involved.
class GradedPieces {
 public:
  struct Basis {
    std::vector<std::pair<int, Exponents>> monomials;  // (generator, monomial) spanning F_d
    std::map<std::pair<int, Exponents>, int> index;
    linalg::Echelon image;                              // RREF of the image in F_d
    std::vector<int> quotient_columns;                  // non-pivot columns: a basis of M_d
  };

  explicit GradedPieces(PresentationMap p);

  const PresentationMap& presentation() const { return p_; }
  const Basis& piece(int degree);
  int dim(int degree) { return static_cast<int>(piece(degree).quotient_columns.size()); }
  /// Coordinates in the quotient basis of the class of a vector of F_d.
  linalg::Vector reduce(int degree, const linalg::Vector& v);
  /// x_var times the k-th quotient basis vector of M_degree, in quotient
  /// coordinates of M_{degree + vardeg}.
  linalg::Vector multiply(int degree, int k, int var);

 private:
  PresentationMap p_;
  std::map<int, Basis> cache_;
};

/// beta_{i,j} = dim Tor_i(coker p, Q)_j for j <= max_degree, as homology of
/// the Koszul complex tensored with coker p.
BettiDiagram betti_via_koszul(const PresentationMap& p, int max_degree);

struct Prop41Report {
  int k = 0;  // target rank
  int l = 0;  // source rank
  int r = 0;
  int N = 0;  // top degree of coker, measured from the lowest target degree
  Rational ratio;
  Integer required;  // ceil(ratio * k)
  bool holds = false;
  bool uniform_target = true;
  int beta0 = 0;
  int beta1 = 0;
};

/// Checks l >= (N+r)/(N+1) k for a presentation whose image lies in I·target
/// and whose cokernel has finite length.
Prop41Report verify_prop41(const PresentationMap& p, const GroebnerOptions& options = {});

}  // namespace torank
