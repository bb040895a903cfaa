#pragma once

// Transfer of the twisted differential of a torus-action model to
// R ⊗ H*(X) by homological perturbation, with exact verification of the
// transfer identities and extraction of the module maps that feed the
// Betti-number estimates.

#include <optional>
#include <string>
#include <vector>

#include "torank/groebner.hpp"
#include "torank/resolutions.hpp"
#include "torank/sullivan.hpp"

namespace torank {

/// ker(d on degree-1 generators) split as Z ⊕ Z' with Z' = ker D there.
/// Vectors are coordinates over all base generators.
struct ZSplit {
  std::vector<linalg::Vector> z;
  std::vector<linalg::Vector> zprime;
  int k = 0;  // dim Z'
  int b = 0;  // dim ker(d on degree-1 generators)
};

ZSplit split_z(const ActionExtension& e);

enum class ClassOrigin { exterior, zprime, other };

/// A retract of (ΛV, d) onto its cohomology: ΛV = A ⊕ B ⊕ C per degree, with
/// f: H -> A, g the projection onto A and phi = -d^{-1} on B (zero on A ⊕ C),
/// so that g f = id and f g - id = d phi + phi d.
class RetractData {
 public:
  RetractData(const SullivanModel& model, int cutoff, const std::optional<ZSplit>& seed = std::nullopt);

  const Cohomology& cohomology() const { return h_; }
  const SullivanModel& model() const { return h_.model(); }
  int cutoff() const { return h_.cutoff(); }
  bool seeded() const { return seeded_; }
  ClassOrigin origin(int degree, int k) const { return origins_[static_cast<std::size_t>(degree)][static_cast<std::size_t>(k)]; }

  /// Degreewise matrices in the word basis of each degree.
  const linalg::Matrix& f(int p) const { return f_[static_cast<std::size_t>(p)]; }
  const linalg::Matrix& g(int p) const { return g_[static_cast<std::size_t>(p)]; }
  const linalg::Matrix& phi(int p) const { return phi_[static_cast<std::size_t>(p)]; }  // degree p -> p-1
  const linalg::Matrix& d(int p) const { return d_[static_cast<std::size_t>(p)]; }      // degree p -> p+1

  /// Name of the first violated retract identity, if any.
  std::optional<std::string> check() const;

 private:
  Cohomology h_;
  bool seeded_ = false;
  std::vector<std::vector<ClassOrigin>> origins_;
  std::vector<linalg::Matrix> f_, g_, phi_, d_;
};

RetractData build_retract(const SullivanModel& model, int cutoff, const std::optional<ZSplit>& seed = std::nullopt);

struct HClass {
  int degree = 0;
  int index = 0;  // position in the basis of H^degree
  ClassOrigin origin = ClassOrigin::other;
  std::string representative;
};

/// (R ⊗ H, delta) with R = Q[X1..Xr], X_i of degree 2.
struct HirschBrownModel {
  int torus_rank = 0;
  Ring ring;
  std::vector<HClass> classes;
  /// Column i is delta(class i). Target degrees are the class degrees and
  /// source degrees are one higher.
  PresentationMap delta;
  int perturbation_steps = 0;  // longest perturbation series needed

  int class_index(int degree, int k) const;
  const Polynomial& entry(int row, int col) const { return delta.entry(row, col); }
};

/// delta = g Σ f with Σ = t + tφt + tφtφt + ... and t = D - 1⊗d.
HirschBrownModel perturb(const ActionExtension& e, const RetractData& rd);

struct IdentityCheck {
  std::string name;
  bool holds = true;
  std::string witness;  // an input on which the identity fails
};

struct TransferReport {
  std::vector<IdentityCheck> checks;

  bool ok() const;
  const IdentityCheck* first_failure() const;
};

/// Checks the limit identities of the perturbed retract against hb.delta.
TransferReport verify_transfer(const ActionExtension& e, const RetractData& rd, const HirschBrownModel& hb);

struct HBCohomology {
  bool finite = false;
  std::optional<long long> total_dim;
  PresentationMap homology;  // ker delta / im delta as a cokernel
  CokernelInfo info;
};

HBCohomology hb_cohomology_finite(const HirschBrownModel& hb, const GroebnerOptions& options = {});

/// Rank of the shifted grading: variables of degree 1 instead of 2. A class
/// in cdga degree c sits in degree floor(c/2) as a target and floor((c+1)/2)
/// as a source.
int resolution_degree(int cdga_degree, bool as_source);

struct TheoremCMaps {
  /// R ⊗ (H / ΛZ)^even -> R ⊗ Z'.
  PresentationMap map_even;
  /// R ⊗ H^odd -> R ⊗ H^{<odd_degree}.
  PresentationMap map_odd;
  int k = 0;
  std::optional<int> odd_degree;  // first degree with nonzero odd Betti number
  bool even_vacuous = false;
  bool odd_vacuous = false;
};

TheoremCMaps theorem_c_maps(const HirschBrownModel& hb, const ZSplit& zs);

struct PipelineReport {
  ZSplit split;
  int n = 0;  // formal dimension
  int r = 0;
  std::vector<int> betti;
  TransferReport transfer;
  HBCohomology cohomology;
  TheoremCMaps maps;
  std::optional<Prop41Report> prop41_even;
  std::optional<Prop41Report> prop41_odd;
  HirschBrownModel model;
};

/// split_z, seeded retract, perturbation, verification, finiteness and the
/// module-map estimates in one run.
PipelineReport run_pipeline(const ActionExtension& e, std::optional<int> cutoff = std::nullopt,
                            const GroebnerOptions& options = {});

}  // namespace torank
