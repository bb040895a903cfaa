#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "torank/bounds.hpp"
#include "torank/diagrams.hpp"
#include "torank/hirschbrown.hpp"
#include "torank/resolutions.hpp"
#include "torank/sullivan.hpp"

namespace {

using namespace torank;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation finishes but reports a failed check.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Key/value output: "key=value" lines in porcelain mode, aligned otherwise.
class Printer {
 public:
  explicit Printer(bool porcelain) : porcelain_(porcelain) {}

  bool porcelain() const { return porcelain_; }

  void field(const std::string& key, const std::string& value) const {
    if (porcelain_) {
      std::cout << key << '=' << value << '\n';
    } else {
      std::cout << std::left << std::setw(28) << key << ' ' << value << '\n';
    }
  }
  void field(const std::string& key, long long value) const { field(key, std::to_string(value)); }
  void field(const std::string& key, bool value) const { field(key, std::string(value ? "true" : "false")); }
  void field(const std::string& key, const char* value) const { field(key, std::string(value)); }
  void field(const std::string& key, const Rational& value) const { field(key, to_string(value)); }
  void field(const std::string& key, const Integer& value) const { field(key, value.get_str()); }

  /// Free-form text, shown only in human mode.
  void text(const std::string& s) const {
    if (!porcelain_) std::cout << s;
  }

 private:
  bool porcelain_;
};

struct Globals {
  bool porcelain = false;
  std::optional<int> max_degree;

  GroebnerOptions groebner() const {
    GroebnerOptions o;
    if (max_degree) o.degree_cap = *max_degree;
    return o;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<int>& values, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + std::to_string(values[i]);
  return out;
}

DegreeSequence parse_degrees(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--d expects comma-separated integers, got '" + text + "'");
    }
  }
  return DegreeSequence(values);
}

void print_diagram(const Printer& out, const BettiDiagram& b) {
  if (out.porcelain()) {
    for (const auto& [key, value] : b.entries()) {
      out.field("beta." + std::to_string(key.first) + "." + std::to_string(key.second), value);
    }
  } else {
    std::cout << b.to_lines();
  }
}

// ---------------------------------------------------------------- bounds

struct BoundArgs {
  int n = 0;
  int r = 0;
  std::optional<int> b;
  std::optional<int> l;
  bool csymplectic = false;
};

int cmd_bound(const Globals& g, const BoundArgs& a) {
  const Printer out(g.porcelain);
  const BoundReport rep = best_bound({a.n, a.r, a.b, a.l, a.csymplectic});
  if (out.porcelain()) {
    for (const BoundEntry& e : rep.entries) {
      out.field(e.name + ".applicable", e.applicable);
      if (!e.applicable) continue;
      out.field(e.name + ".exact", e.exact);
      out.field(e.name + ".value", e.value);
      if (e.argmin_k) out.field(e.name + ".argmin_k", static_cast<long long>(*e.argmin_k));
      if (e.argmin_gamma) out.field(e.name + ".argmin_gamma", *e.argmin_gamma);
    }
    out.field("best", rep.best);
    out.field("best_name", rep.best_name);
    out.field("trc_target", rep.trc_target);
    out.field("meets_trc", rep.meets_trc);
    return 0;
  }
  std::cout << std::left << std::setw(22) << "bound" << std::setw(8) << "value" << std::setw(16) << "exact"
            << "detail\n";
  for (const BoundEntry& e : rep.entries) {
    std::cout << std::setw(22) << e.name;
    if (!e.applicable) {
      std::cout << std::setw(8) << "-" << std::setw(16) << "-" << e.note << '\n';
      continue;
    }
    std::string detail;
    if (e.argmin_k) detail += "k=" + std::to_string(*e.argmin_k);
    if (e.argmin_gamma) detail += (detail.empty() ? "" : " ") + std::string("gamma=") + to_string(*e.argmin_gamma);
    if (!e.note.empty()) detail += (detail.empty() ? "" : " ") + e.note;
    std::cout << std::setw(8) << e.value.get_str() << std::setw(16) << to_string(e.exact) << detail << '\n';
  }
  std::cout << "best " << rep.best.get_str() << " (" << rep.best_name << "), 2^r = " << rep.trc_target.get_str()
            << (rep.meets_trc ? ", meets" : ", below") << " the toral rank conjecture bound\n";
  return 0;
}

int cmd_table(const Globals& g, const std::string& which) {
  const PaperTable table = which == "4a" ? PaperTable::betti_sweep : which == "4b" ? PaperTable::low_degree : PaperTable::csymplectic;
  if (!g.porcelain) {
    std::cout << render_table(table);
    return 0;
  }
  const Printer out(true);
  const TableData data = compute_table(table);
  for (std::size_t row = 0; row < data.row_values.size(); ++row) {
    for (int r = 1; r <= data.max_r; ++r) {
      const auto& cell = data.cells[row][static_cast<std::size_t>(r - 1)];
      if (cell) out.field(data.row_key + std::to_string(data.row_values[row]) + ".r" + std::to_string(r), *cell);
    }
  }
  return 0;
}

int cmd_audit(const Globals& g, int nmax) {
  const Printer out(g.porcelain);
  bool all = true;
  out.text("n  r  best  source                  2^r  meets\n");
  for (const TrcAuditRow& row : trc_audit(nmax)) {
    all = all && row.meets;
    if (out.porcelain()) {
      const std::string key = "n" + std::to_string(row.n) + ".r" + std::to_string(row.r);
      out.field(key + ".best", row.best);
      out.field(key + ".source", row.best_name);
      out.field(key + ".meets", row.meets);
    } else {
      std::cout << std::left << std::setw(3) << row.n << std::setw(3) << row.r << std::setw(6) << row.best.get_str()
                << std::setw(24) << row.best_name << std::setw(5) << row.target.get_str() << (row.meets ? "yes" : "NO")
                << '\n';
    }
  }
  out.field("all_meet", all);
  if (!all) throw CheckFailed("some rows fall below 2^r");
  return 0;
}

int cmd_lemma52(const Globals& g, int nmax) {
  const Printer out(g.porcelain);
  int checked = 0;
  std::vector<std::string> failures;
  for (int n = 4; n <= nmax; n += 2) {
    for (int r = 3; r <= n + 1; ++r) {
      ++checked;
      if (!ratio_product_doubles(n, r)) failures.push_back("n=" + std::to_string(n) + ",r=" + std::to_string(r));
    }
  }
  out.field("checked", static_cast<long long>(checked));
  out.field("failures", static_cast<long long>(failures.size()));
  for (const auto& f : failures) out.field("failure", f);
  if (!failures.empty()) throw CheckFailed("the doubling inequality fails");
  return 0;
}

// ---------------------------------------------------------------- diagrams

int cmd_pure(const Globals& g, const std::string& degrees) {
  print_diagram(Printer(g.porcelain), pure_diagram(parse_degrees(degrees)));
  return 0;
}

int cmd_decompose(const Globals& g, const std::string& path, std::optional<int> codim) {
  const Printer out(g.porcelain);
  const BettiDiagram b = parse_diagram(read_file(path));
  const BSDecomposition dec = bs_decompose(b, codim ? *codim : b.max_column());
  if (out.porcelain()) {
    for (std::size_t i = 0; i < dec.parts.size(); ++i) {
      out.field("part." + std::to_string(i) + ".coefficient", dec.parts[i].coefficient);
      out.field("part." + std::to_string(i) + ".degrees", dec.parts[i].sequence.to_string());
    }
  } else {
    std::cout << dec.to_string();
  }
  out.field("recomposes", dec.recompose() == b);
  return 0;
}

int cmd_hk(const Globals& g, const std::optional<std::string>& degrees, const std::optional<std::string>& path,
           std::optional<int> codim) {
  const Printer out(g.porcelain);
  if (degrees.has_value() == path.has_value()) throw UsageError("hk needs exactly one of --d or --in");
  BettiDiagram b;
  int c = 0;
  if (degrees) {
    const DegreeSequence d = parse_degrees(*degrees);
    out.field("hk_ratio", hk_ratio(d));
    b = pure_diagram(d);
    c = d.length();
  } else {
    b = parse_diagram(read_file(*path));
    c = codim ? *codim : b.max_column();
  }
  const std::vector<Rational> residuals = herzog_kuhl_residuals(b, c);
  bool all_zero = true;
  for (std::size_t t = 0; t < residuals.size(); ++t) {
    out.field("residual." + std::to_string(t), residuals[t]);
    all_zero = all_zero && residuals[t] == 0;
  }
  out.field("herzog_kuhl", all_zero);
  if (!all_zero) throw CheckFailed("Herzog-Kühl equations fail");
  return 0;
}

// ---------------------------------------------------------------- presentations

int cmd_resolve(const Globals& g, const std::string& path, const std::string& layout) {
  const Printer out(g.porcelain);
  const PresentationMap p = parse_presentation(read_file(path));
  const Resolution res = minimal_free_resolution(p, g.groebner());
  const BettiDiagram b = res.betti();
  if (out.porcelain()) {
    print_diagram(out, b);
    out.field("length", static_cast<long long>(res.length()));
    return 0;
  }
  std::cout << b.to_table(layout == "regularity" ? TableLayout::regularity : TableLayout::paper);
  return 0;
}

int cmd_coker(const Globals& g, const std::string& path) {
  const Printer out(g.porcelain);
  const PresentationMap p = parse_presentation(read_file(path));
  const CokernelInfo info = finite_length_and_hilbert(p, g.groebner());
  out.field("finite", info.finite);
  if (!info.finite) return 0;
  out.field("total_dim", static_cast<long long>(*info.total_dim));
  if (info.top_degree) out.field("top_degree", static_cast<long long>(*info.top_degree));
  std::string hilbert;
  for (std::size_t i = 0; i < info.hilbert.size(); ++i) {
    hilbert += (i ? " " : "") + std::to_string(info.start_degree + static_cast<int>(i)) + ":" + std::to_string(info.hilbert[i]);
  }
  out.field("hilbert", hilbert);
  return 0;
}

void print_prop41(const Printer& out, const std::string& prefix, const Prop41Report& rep) {
  out.field(prefix + "k", static_cast<long long>(rep.k));
  out.field(prefix + "l", static_cast<long long>(rep.l));
  out.field(prefix + "r", static_cast<long long>(rep.r));
  out.field(prefix + "N", static_cast<long long>(rep.N));
  out.field(prefix + "ratio", rep.ratio);
  out.field(prefix + "required", rep.required);
  out.field(prefix + "beta0", static_cast<long long>(rep.beta0));
  out.field(prefix + "beta1", static_cast<long long>(rep.beta1));
  out.field(prefix + "uniform_target", rep.uniform_target);
  out.field(prefix + "verdict", rep.holds ? "holds" : "fails");
}

int cmd_prop41(const Globals& g, const std::string& path) {
  const Printer out(g.porcelain);
  const Prop41Report rep = verify_prop41(parse_presentation(read_file(path)), g.groebner());
  print_prop41(out, "", rep);
  if (!rep.holds) throw CheckFailed("the inequality fails");
  return 0;
}

// ---------------------------------------------------------------- models

int resolve_cutoff(const SullivanModel& m, std::optional<int> cutoff) {
  if (cutoff) return *cutoff;
  try {
    return default_cutoff(m);
  } catch (const Error&) {
    throw UsageError("the model has even generators; pass --cutoff");
  }
}

int cmd_model_cohomology(const Globals& g, const std::string& path, std::optional<int> cutoff) {
  const Printer out(g.porcelain);
  const SullivanModel m = parse_model(read_file(path));
  for (const std::string& w : m.warnings) std::cerr << "warning: " << w << '\n';
  const Cohomology h(m, resolve_cutoff(m, cutoff));
  out.field("cutoff", static_cast<long long>(h.cutoff()));
  out.field("betti", join(h.betti_numbers()));
  out.field("total_dim", h.total_dimension());
  out.field("formal_dimension", static_cast<long long>(h.formal_dimension()));
  out.field("euler_characteristic", h.euler_characteristic());
  for (int p = 0; p <= h.cutoff(); ++p) {
    for (int k = 0; k < h.betti(p); ++k) {
      out.field("H" + std::to_string(p) + "." + std::to_string(k), h.representative(p, k).to_string());
    }
  }
  return 0;
}

int cmd_csympl(const Globals& g, const std::string& path, const std::optional<std::string>& omega,
               std::optional<int> cutoff) {
  const Printer out(g.porcelain);
  const SullivanModel m = parse_model(read_file(path));
  const Cohomology h(m, resolve_cutoff(m, cutoff));
  std::optional<AlgebraElement> candidate;
  if (omega) candidate = parse_element(*omega, m.algebra);
  const CsymplecticResult res = c_symplectic_check(h, candidate);
  out.field("verdict", to_string(res.verdict));
  out.field("n", static_cast<long long>(res.n));
  out.field("poincare_duality", res.poincare_duality);
  if (res.omega) out.field("omega", res.omega->to_string());
  if (res.omega_power) out.field("omega^n", res.omega_power->to_string());
  if (res.lefschetz_type) out.field("lefschetz_type", *res.lefschetz_type);
  if (!res.message.empty()) out.field("message", res.message);
  return 0;
}

struct HbBuilt {
  ActionExtension e;
  ZSplit split;
  RetractData rd;
  HirschBrownModel hb;
};

HbBuilt hb_build(const std::string& path, std::optional<int> cutoff) {
  ActionExtension e = parse_extension(read_file(path));
  const int top = resolve_cutoff(e.base, cutoff);
  ZSplit split = split_z(e);
  RetractData rd = build_retract(e.base, top, split);
  if (auto failure = rd.check()) throw CheckFailed("retract identity fails: " + *failure);
  HirschBrownModel hb = perturb(e, rd);
  return {std::move(e), std::move(split), std::move(rd), std::move(hb)};
}

int cmd_hb_build(const Globals& g, const std::string& path, std::optional<int> cutoff, const std::optional<std::string>& out_path) {
  const Printer out(g.porcelain);
  const HbBuilt b = hb_build(path, cutoff);
  const std::string presentation = format_presentation(b.hb.delta);
  if (!out_path) {
    std::cout << presentation;
    return 0;
  }
  std::ofstream file(*out_path);
  if (!file) throw UsageError("cannot write '" + *out_path + "'");
  file << presentation;
  out.field("torus_rank", static_cast<long long>(b.hb.torus_rank));
  out.field("classes", static_cast<long long>(b.hb.classes.size()));
  out.field("perturbation_steps", static_cast<long long>(b.hb.perturbation_steps));
  for (std::size_t i = 0; i < b.hb.classes.size(); ++i) {
    const HClass& c = b.hb.classes[i];
    out.field("class." + std::to_string(i), "deg " + std::to_string(c.degree) + " [" + c.representative + "]");
  }
  out.field("delta", *out_path);
  return 0;
}

int cmd_hb_check(const Globals& g, const std::string& path, std::optional<int> cutoff) {
  const Printer out(g.porcelain);
  const HbBuilt b = hb_build(path, cutoff);
  const TransferReport rep = verify_transfer(b.e, b.rd, b.hb);
  for (const IdentityCheck& c : rep.checks) {
    out.field("identity." + c.name, c.holds ? std::string("holds") : "fails at " + c.witness);
  }
  const HBCohomology h = hb_cohomology_finite(b.hb, g.groebner());
  out.field("finite", h.finite);
  if (h.total_dim) out.field("total_dim", *h.total_dim);
  if (!rep.ok()) throw CheckFailed("transfer identity '" + rep.first_failure()->name + "' fails");
  return 0;
}

int cmd_hb_pipeline(const Globals& g, const std::string& path, std::optional<int> cutoff) {
  const Printer out(g.porcelain);
  ActionExtension e = [&] {
    try {
      return parse_extension(read_file(path));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw Error(std::string("parse_extension: ") + err.what());
    }
  }();
  const PipelineReport rep = run_pipeline(e, cutoff, g.groebner());
  out.field("n", static_cast<long long>(rep.n));
  out.field("r", static_cast<long long>(rep.r));
  out.field("b", static_cast<long long>(rep.split.b));
  out.field("k", static_cast<long long>(rep.split.k));
  out.field("betti", join(rep.betti));
  long long total = 0;
  for (int v : rep.betti) total += v;
  out.field("total_dim", total);
  out.field("transfer_identities", rep.transfer.ok() ? "hold" : "fail");
  out.field("finite", rep.cohomology.finite);
  if (rep.cohomology.total_dim) out.field("hb_cohomology_dim", *rep.cohomology.total_dim);
  if (rep.maps.even_vacuous) {
    const int z = static_cast<int>(rep.split.z.size());
    out.field("even_map", "vacuous (k=0)");
    out.field("exterior_witness", "exterior algebra on " + std::to_string(z) + " degree-1 classes, dim " +
                                      std::to_string(1LL << z));
  }
  if (rep.prop41_even) print_prop41(out, "even.", *rep.prop41_even);
  if (rep.maps.odd_vacuous) out.field("odd_map", "vacuous");
  if (rep.prop41_odd) print_prop41(out, "odd.", *rep.prop41_odd);
  std::vector<std::string> failed;
  if (!rep.transfer.ok()) failed.push_back("transfer identity '" + rep.transfer.first_failure()->name + "'");
  if (!rep.cohomology.finite) failed.push_back("transferred cohomology is infinite (action not almost free)");
  if (rep.prop41_even && !rep.prop41_even->holds) failed.push_back("even map inequality");
  if (rep.prop41_odd && !rep.prop41_odd->holds) failed.push_back("odd map inequality");
  if (rep.r >= 1 && rep.r <= rep.n) {
    const BoundEntry bound = betti_sweep_bound(rep.n, rep.r, rep.split.b);
    out.field("betti_sweep_bound", bound.value);
    const bool meets = Integer(static_cast<long>(total)) >= bound.value;
    out.field("betti_sweep_met", meets);
    if (!meets) failed.push_back("total Betti number below the bound");
  }
  if (!failed.empty()) {
    std::string message = failed.front();
    for (std::size_t i = 1; i < failed.size(); ++i) message += "; " + failed[i];
    throw CheckFailed(message);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toral-rank bounds, free resolutions and Hirsch-Brown models"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--porcelain", g.porcelain, "Print key=value lines");
  app.add_option("--max-degree", g.max_degree, "Degree cap for Gröbner computations")->check(CLI::PositiveNumber);

  std::function<int()> run;

  BoundArgs bound;
  auto* c_bound = app.add_subcommand("bound", "Lower bounds for given (n, r)");
  c_bound->add_option("--n", bound.n, "Formal dimension (half of it with --csymplectic)")->required();
  c_bound->add_option("--r", bound.r, "Torus rank")->required();
  c_bound->add_option("--b", bound.b, "First Betti number");
  c_bound->add_option("--l", bound.l, "dim H^{<k}");
  c_bound->add_flag("--csymplectic", bound.csymplectic, "Use the c-symplectic bounds");
  c_bound->callback([&] { run = [&] { return cmd_bound(g, bound); }; });

  std::string which;
  auto* c_table = app.add_subcommand("table", "Print a published table");
  c_table->add_option("--paper", which, "4a, 4b or 5")->required()->check(CLI::IsMember({"4a", "4b", "5"}));
  c_table->callback([&] { run = [&] { return cmd_table(g, which); }; });

  int nmax_audit = 4;
  auto* c_audit = app.add_subcommand("audit-trc", "Compare the best c-symplectic bound with 2^r");
  c_audit->add_option("--nmax", nmax_audit, "Largest n")->check(CLI::PositiveNumber);
  c_audit->callback([&] { run = [&] { return cmd_audit(g, nmax_audit); }; });

  int nmax_lemma = 40;
  auto* c_lemma = app.add_subcommand("lemma52", "Check the ratio-product doubling inequality");
  c_lemma->add_option("--nmax", nmax_lemma, "Largest even n")->check(CLI::Range(4, 10000));
  c_lemma->callback([&] { run = [&] { return cmd_lemma52(g, nmax_lemma); }; });

  std::string degrees;
  auto* c_pure = app.add_subcommand("pure", "Pure diagram of a degree sequence");
  c_pure->add_option("--d", degrees, "Degrees, e.g. 0,1,3")->required();
  c_pure->callback([&] { run = [&] { return cmd_pure(g, degrees); }; });

  std::string diagram_path;
  std::optional<int> codim;
  auto* c_decompose = app.add_subcommand("decompose", "Boij-Söderberg decomposition of a diagram file");
  c_decompose->add_option("--in", diagram_path, "Diagram file")->required();
  c_decompose->add_option("--codim", codim, "Codimension");
  c_decompose->callback([&] { run = [&] { return cmd_decompose(g, diagram_path, codim); }; });

  std::optional<std::string> hk_degrees, hk_path;
  auto* c_hk = app.add_subcommand("hk", "Herzog-Kühl residuals");
  c_hk->add_option("--d", hk_degrees, "Degree sequence of a pure diagram");
  c_hk->add_option("--in", hk_path, "Diagram file");
  c_hk->add_option("--codim", codim, "Codimension for --in");
  c_hk->callback([&] { run = [&] { return cmd_hk(g, hk_degrees, hk_path, codim); }; });

  std::string pres_path;
  std::string layout = "paper";
  auto* c_resolve = app.add_subcommand("resolve", "Minimal free resolution of a cokernel");
  c_resolve->add_option("--in", pres_path, "Presentation file")->required();
  c_resolve->add_option("--layout", layout, "paper or regularity")->check(CLI::IsMember({"paper", "regularity"}));
  c_resolve->callback([&] { run = [&] { return cmd_resolve(g, pres_path, layout); }; });

  auto* c_coker = app.add_subcommand("coker", "Finite length and Hilbert function of a cokernel");
  c_coker->add_option("--in", pres_path, "Presentation file")->required();
  c_coker->callback([&] { run = [&] { return cmd_coker(g, pres_path); }; });

  auto* c_prop41 = app.add_subcommand("prop41", "Check l >= (N+r)/(N+1) k");
  c_prop41->add_option("--in", pres_path, "Presentation file")->required();
  c_prop41->callback([&] { run = [&] { return cmd_prop41(g, pres_path); }; });

  std::string model_path;
  std::optional<int> cutoff;
  auto* c_model = app.add_subcommand("model-cohomology", "Cohomology of a Sullivan model");
  c_model->add_option("--in", model_path, "Model file")->required();
  c_model->add_option("--cutoff", cutoff, "Degree cutoff")->check(CLI::NonNegativeNumber);
  c_model->callback([&] { run = [&] { return cmd_model_cohomology(g, model_path, cutoff); }; });

  std::optional<std::string> omega;
  auto* c_csympl = app.add_subcommand("csympl", "c-symplectic check");
  c_csympl->add_option("--in", model_path, "Model file")->required();
  c_csympl->add_option("--omega", omega, "Candidate degree-2 cocycle");
  c_csympl->add_option("--cutoff", cutoff, "Degree cutoff")->check(CLI::NonNegativeNumber);
  c_csympl->callback([&] { run = [&] { return cmd_csympl(g, model_path, omega, cutoff); }; });

  std::optional<std::string> out_path;
  auto* c_hb_build = app.add_subcommand("hb-build", "Transferred differential as a presentation");
  c_hb_build->add_option("--in", model_path, "Model file with a torus block")->required();
  c_hb_build->add_option("--out", out_path, "Write the presentation here and print a report");
  c_hb_build->add_option("--cutoff", cutoff, "Degree cutoff")->check(CLI::NonNegativeNumber);
  c_hb_build->callback([&] { run = [&] { return cmd_hb_build(g, model_path, cutoff, out_path); }; });

  auto* c_hb_check = app.add_subcommand("hb-check", "Verify the transfer identities");
  c_hb_check->add_option("--in", model_path, "Model file with a torus block")->required();
  c_hb_check->add_option("--cutoff", cutoff, "Degree cutoff")->check(CLI::NonNegativeNumber);
  c_hb_check->callback([&] { run = [&] { return cmd_hb_check(g, model_path, cutoff); }; });

  auto* c_hb_pipeline = app.add_subcommand("hb-pipeline", "Full pipeline from a model file");
  c_hb_pipeline->add_option("--in", model_path, "Model file with a torus block")->required();
  c_hb_pipeline->add_option("--cutoff", cutoff, "Degree cutoff")->check(CLI::NonNegativeNumber);
  c_hb_pipeline->callback([&] { run = [&] { return cmd_hb_pipeline(g, model_path, cutoff); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
