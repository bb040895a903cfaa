#pragma once

// Closed-form lower bounds for the total Betti number of spaces with an
// almost free torus action. All values are exact rationals; a reported
// integer bound is always the ceiling of the exact minimum.

#include <optional>
#include <string>
#include <vector>

#include "torank/polyring.hpp"

namespace torank {

class NotApplicable : public Error {
 public:
  using Error::Error;
};

struct BoundEntry {
  std::string name;
  bool applicable = false;
  std::string note;  // why it does not apply, or extra detail
  Rational exact;
  Integer value;
  std::optional<int> argmin_k;
  std::vector<int> tied_k;  // every k attaining the minimum
  std::optional<Rational> argmin_gamma;
};

struct ClassicalBounds {
  Integer hybrid;      // 2r for r <= 2, else 2(r+1)
  Integer amann;       // 2(r + floor(r/3))
  Integer trc_target;  // 2^r
};

ClassicalBounds classical_bounds(int r);

/// 4r, valid for c-symplectic spaces of formal dimension at least 4.
Integer four_rank_bound(int r);

/// min_{k=0..b} ((n+r-1)/(n-r+1)) 2k + 2^{b-k}; requires 1 <= r <= n.
BoundEntry betti_sweep_bound(int n, int r, int b);

/// ((n+r-1)/(n-r+1)) 2l with l = dim H^{<k}; requires 1 <= r <= n.
BoundEntry low_degree_bound(int n, int r, int l);

/// The sweep with formal dimension 2n and b replaced by r; requires 1 <= r <= 2n.
BoundEntry csymplectic_sweep_bound(int n, int r);

/// prod_{i=2}^{r} (2n-r-1+2i) / (2n-r-1+2i-2 d1); requires d1 < (2n-r+3)/2.
Rational ratio_product(int n, int r, int d1);

/// Binomial bound for c-symplectic spaces of dimension 2n when r is large:
/// n odd with n+1 <= r <= 2n, or n even with n <= r <= 2n.
BoundEntry binomial_bound(int n, int r);

/// Min over k and gamma in [0,k] of max(B1, B2) for c-symplectic spaces when
/// r is small: n odd with r <= n, or n even with r <= n-1.
BoundEntry crossing_bound(int n, int r);

/// Whichever of binomial_bound / crossing_bound covers (n, r).
BoundEntry csymplectic_rank_bound(int n, int r);

/// ratio_product(n, r, n/2) >= 2 ratio_product(n, r, 1) for n even, n >= 4,
/// 3 <= r <= n+1.
bool ratio_product_doubles(int n, int r);

/// Exact binomial with C(a, b) = 0 for b > a >= 0 or b < 0.
Integer binomial(int a, int b);

struct BoundInputs {
  int n = 0;  // formal dimension, or half of it for c-symplectic spaces
  int r = 0;
  std::optional<int> b;
  std::optional<int> l;
  bool csymplectic = false;
};

struct BoundReport {
  BoundInputs inputs;
  std::vector<BoundEntry> entries;
  Integer best;
  std::string best_name;
  Integer trc_target;
  bool meets_trc = false;

  const BoundEntry* find(const std::string& name) const;
};

BoundReport best_bound(const BoundInputs& inputs);

enum class PaperTable { betti_sweep, low_degree, csymplectic };

/// The integer values of a published table: rows indexed by the parameter
/// b, l or n, columns by r. Missing cells are nullopt.
struct TableData {
  std::string row_key;
  std::vector<int> row_values;
  int max_r = 0;
  std::vector<std::vector<std::optional<Integer>>> cells;
};

TableData compute_table(PaperTable which);
std::string render_table(PaperTable which);

struct TrcAuditRow {
  int n = 0;
  int r = 0;
  Integer best;
  std::string best_name;
  Integer target;
  bool meets = false;
};

/// best_bound for c-symplectic spaces with 1 <= n <= nmax and 1 <= r <= 2n.
std::vector<TrcAuditRow> trc_audit(int nmax);

}  // namespace torank
