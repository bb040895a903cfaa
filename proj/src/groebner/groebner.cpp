#include "torank/groebner.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace torank {

std::optional<LeadingTerm> leading_term(const ModuleElement& e) {
  for (int s = 0; s < e.rank(); ++s) {
    const Polynomial& p = e[s];
    if (!p.is_zero()) return LeadingTerm{s, p.leading_monomial(), p.leading_coefficient()};
  }
  return std::nullopt;
}

bool pot_greater(int pos_a, const Exponents& a, int pos_b, const Exponents& b) {
  if (pos_a != pos_b) return pos_a < pos_b;
  return DegRevLexGreater{}(a, b);
}

namespace {

struct Reducer {
  const ModuleElement* element;
  LeadingTerm lead;
};

int homogeneous_degree(const ModuleElement& e) {
  const ElementDegree d = e.degree();
  if (d.kind == ElementDegree::Kind::inhomogeneous) throw Error("inhomogeneous module element " + e.to_string());
  return d.degree;
}

// Full reduction. Reducing a term in position s only touches positions >= s,
// so the components can be finished one at a time.
ModuleElement reduce_fully(ModuleElement e, const std::vector<Reducer>& reducers) {
  const Ring ring = e.module().ring;
  for (int s = 0; s < e.rank(); ++s) {
    Polynomial remainder(ring);
    while (!e[s].is_zero()) {
      const Exponents m = e[s].leading_monomial();
      const Rational c = e[s].leading_coefficient();
      const Reducer* hit = nullptr;
      for (const Reducer& r : reducers) {
        if (r.lead.position == s && divides(r.lead.monomial, m)) {
          hit = &r;
          break;
        }
      }
      if (!hit) {
        remainder.add_term(m, c);
        e[s].add_term(m, -c);
        continue;
      }
      const Exponents shift = quotient(m, hit->lead.monomial);
      const Rational factor = c / hit->lead.coefficient;
      for (int t = s; t < e.rank(); ++t) {
        const Polynomial& q = (*hit->element)[t];
        if (!q.is_zero()) e[t] -= q.times_monomial(shift, factor);
      }
    }
    e[s] = std::move(remainder);
  }
  return e;
}

ModuleElement make_monic(const ModuleElement& e) {
  const auto lt = leading_term(e);
  if (!lt || lt->coefficient == 1) return e;
  const Rational inv = 1 / lt->coefficient;
  return e.times_monomial(Exponents(static_cast<std::size_t>(e.module().ring.num_vars), 0), inv);
}

class Engine {
 public:
  Engine(FreeModule module, const GroebnerOptions& options) : module_(std::move(module)), options_(options) {}

  void seed(const std::vector<ModuleElement>& basis) {
    // An existing reduced basis: its own pairs are known to reduce to zero.
    for (const ModuleElement& g : basis) append(g, /*make_pairs_with_existing=*/false);
  }

  void add_input(const ModuleElement& e) {
    if (!(e.module() == module_)) throw RingMismatch("generator does not live in the ambient free module");
    if (e.is_zero()) return;
    inputs_.push_back({homogeneous_degree(e), e});
  }

  GroebnerBasis run() {
    while (!inputs_.empty() || !pairs_.empty()) {
      int degree = std::numeric_limits<int>::max();
      for (const auto& in : inputs_) degree = std::min(degree, in.first);
      for (const Pair& p : pairs_) degree = std::min(degree, p.degree);
      if (degree > options_.degree_cap) throw DegreeCapExceeded(degree);

      std::vector<ModuleElement> batch;
      for (auto it = pairs_.begin(); it != pairs_.end();) {
        if (it->degree == degree) {
          batch.push_back(s_element(it->i, it->j));
          it = pairs_.erase(it);
        } else {
          ++it;
        }
      }
      for (auto it = inputs_.begin(); it != inputs_.end();) {
        if (it->first == degree) {
          batch.push_back(std::move(it->second));
          it = inputs_.erase(it);
        } else {
          ++it;
        }
      }
      for (ModuleElement& candidate : batch) {
        ModuleElement r = reduce_fully(std::move(candidate), reducers());
        if (!r.is_zero()) append(make_monic(r), true);
      }
    }
    return finish();
  }

 private:
  struct Pair {
    std::size_t i;
    std::size_t j;
    int degree;
  };

  std::vector<Reducer> reducers() const {
    std::vector<Reducer> out;
    out.reserve(elements_.size());
    for (std::size_t k = 0; k < elements_.size(); ++k) out.push_back({&elements_[k], leads_[k]});
    return out;
  }

  void append(const ModuleElement& g, bool make_pairs_with_existing) {
    const auto lt = leading_term(g);
    const std::size_t index = elements_.size();
    if (make_pairs_with_existing) {
      for (std::size_t k = 0; k < index; ++k) {
        if (leads_[k].position != lt->position) continue;
        // The product criterion is only valid for ideals (rank-one modules).
        if (module_.rank() == 1 && coprime(leads_[k].monomial, lt->monomial)) continue;
        const Exponents l = lcm(leads_[k].monomial, lt->monomial);
        const int degree = module_.generator_degrees[static_cast<std::size_t>(lt->position)] +
                           module_.ring.var_degree * total_degree(l);
        pairs_.push_back({k, index, degree});
      }
    }
    elements_.push_back(g);
    leads_.push_back(*lt);
  }

  ModuleElement s_element(std::size_t i, std::size_t j) const {
    const LeadingTerm& a = leads_[i];
    const LeadingTerm& b = leads_[j];
    const Exponents l = lcm(a.monomial, b.monomial);
    return elements_[i].times_monomial(quotient(l, a.monomial), 1 / a.coefficient) -
           elements_[j].times_monomial(quotient(l, b.monomial), 1 / b.coefficient);
  }

  GroebnerBasis finish() const {
    // Drop elements whose leading term is divisible by another leading term.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      bool redundant = false;
      for (std::size_t o = 0; o < elements_.size() && !redundant; ++o) {
        if (o == k || leads_[o].position != leads_[k].position) continue;
        if (divides(leads_[o].monomial, leads_[k].monomial)) {
          redundant = leads_[o].monomial != leads_[k].monomial || o < k;
        }
      }
      if (!redundant) keep.push_back(k);
    }
    GroebnerBasis gb{module_, {}};
    for (std::size_t k : keep) {
      std::vector<Reducer> others;
      for (std::size_t o : keep) {
        if (o != k) others.push_back({&elements_[o], leads_[o]});
      }
      // Tail reduction: the leading term survives because leads are minimal.
      ModuleElement head(module_);
      head[leads_[k].position].add_term(leads_[k].monomial, leads_[k].coefficient);
      ModuleElement tail = reduce_fully(elements_[k] - head, others);
      gb.elements.push_back(make_monic(head + tail));
    }
    std::stable_sort(gb.elements.begin(), gb.elements.end(), [](const ModuleElement& x, const ModuleElement& y) {
      const int dx = x.degree().degree;
      const int dy = y.degree().degree;
      if (dx != dy) return dx < dy;
      const auto lx = leading_term(x);
      const auto ly = leading_term(y);
      return pot_greater(lx->position, lx->monomial, ly->position, ly->monomial);
    });
    return gb;
  }

  FreeModule module_;
  GroebnerOptions options_;
  std::vector<ModuleElement> elements_;
  std::vector<LeadingTerm> leads_;
  std::vector<Pair> pairs_;
  std::vector<std::pair<int, ModuleElement>> inputs_;
};

}  // namespace

GroebnerBasis buchberger(const FreeModule& module, const std::vector<ModuleElement>& gens,
                         const GroebnerOptions& options) {
  Engine engine(module, options);
  for (const ModuleElement& g : gens) engine.add_input(g);
  return engine.run();
}

GroebnerBasis extend(const GroebnerBasis& gb, const std::vector<ModuleElement>& more, const GroebnerOptions& options) {
  Engine engine(gb.module, options);
  engine.seed(gb.elements);
  for (const ModuleElement& g : more) engine.add_input(g);
  return engine.run();
}

ModuleElement normal_form(const ModuleElement& e, const GroebnerBasis& gb) {
  if (!(e.module() == gb.module)) throw RingMismatch("normal form against a basis of a different module");
  std::vector<Reducer> reducers;
  for (const ModuleElement& g : gb.elements) reducers.push_back({&g, *leading_term(g)});
  return reduce_fully(e, reducers);
}

void PresentationMap::validate() const {
  if (!(source.ring == target.ring)) throw RingMismatch("source and target over different rings");
  if (static_cast<int>(columns.size()) != source.rank()) throw Error("column count does not match source rank");
  for (int j = 0; j < cols(); ++j) {
    const ModuleElement& c = columns[static_cast<std::size_t>(j)];
    if (!(c.module() == target)) throw RingMismatch("column " + std::to_string(j + 1) + " is not in the target module");
    const ElementDegree d = c.degree();
    if (d.kind == ElementDegree::Kind::inhomogeneous) {
      throw Error("column " + std::to_string(j + 1) + " is inhomogeneous");
    }
    if (d.homogeneous() && d.degree != source.generator_degrees[static_cast<std::size_t>(j)]) {
      throw Error("column " + std::to_string(j + 1) + " has degree " + std::to_string(d.degree) +
                  " but its source generator sits in degree " +
                  std::to_string(source.generator_degrees[static_cast<std::size_t>(j)]));
    }
  }
}

bool PresentationMap::image_in_maximal_ideal() const {
  for (const ModuleElement& c : columns) {
    for (const Polynomial& p : c.components()) {
      if (p.constant_term() != 0) return false;
    }
  }
  return true;
}

PresentationMap make_presentation(const FreeModule& target, const std::vector<ModuleElement>& columns,
                                  std::optional<int> zero_column_degree) {
  int fallback = target.ring.var_degree;
  if (!target.generator_degrees.empty()) {
    fallback += *std::max_element(target.generator_degrees.begin(), target.generator_degrees.end());
  }
  PresentationMap p{FreeModule{target.ring, {}}, target, columns};
  for (const ModuleElement& c : columns) {
    const ElementDegree d = c.degree();
    if (d.kind == ElementDegree::Kind::inhomogeneous) throw Error("inhomogeneous column " + c.to_string());
    p.source.generator_degrees.push_back(d.homogeneous() ? d.degree : zero_column_degree.value_or(fallback));
  }
  p.validate();
  return p;
}

PresentationMap syzygies(const PresentationMap& p, const GroebnerOptions& options) {
  p.validate();
  const int k = p.rows();
  const int m = p.cols();
  FreeModule augmented{p.target.ring, p.target.generator_degrees};
  augmented.generator_degrees.insert(augmented.generator_degrees.end(), p.source.generator_degrees.begin(),
                                     p.source.generator_degrees.end());
  std::vector<ModuleElement> gens;
  gens.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    ModuleElement e(augmented);
    for (int s = 0; s < k; ++s) e[s] = p.entry(s, j);
    e[k + j] = Polynomial(p.target.ring, 1);
    gens.push_back(std::move(e));
  }
  const GroebnerBasis gb = buchberger(augmented, gens, options);

  PresentationMap out{FreeModule{p.target.ring, {}}, p.source, {}};
  for (const ModuleElement& g : gb.elements) {
    if (leading_term(g)->position < k) continue;
    std::vector<Polynomial> comps(g.components().begin() + k, g.components().end());
    ModuleElement syz(p.source, std::move(comps));
    out.source.generator_degrees.push_back(syz.degree().degree);
    out.columns.push_back(std::move(syz));
  }
  return out;
}

PresentationMap syzygy_basis(const GroebnerBasis& gb, const GroebnerOptions& options) {
  return syzygies(make_presentation(gb.module, gb.elements), options);
}

std::vector<ModuleElement> minimal_generators(const FreeModule& module, const std::vector<ModuleElement>& gens,
                                              const GroebnerOptions& options) {
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!(gens[i].module() == module)) throw RingMismatch("generator outside the ambient module");
    if (gens[i].is_zero()) continue;
    order.emplace_back(homogeneous_degree(gens[i]), i);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<ModuleElement> kept;
  GroebnerBasis gb{module, {}};
  for (const auto& [degree, i] : order) {
    if (normal_form(gens[i], gb).is_zero()) continue;
    kept.push_back(gens[i]);
    gb = extend(gb, {gens[i]}, options);
  }
  return kept;
}

long long CokernelInfo::dim(int degree) const {
  const int at = degree - start_degree;
  if (at < 0 || at >= static_cast<int>(hilbert.size())) return 0;
  return hilbert[static_cast<std::size_t>(at)];
}

CokernelInfo finite_length_and_hilbert(const PresentationMap& p, const GroebnerOptions& options) {
  p.validate();
  CokernelInfo info;
  const GroebnerBasis gb = buchberger(p.target, p.columns, options);
  const int r = p.target.ring.num_vars;
  const int vd = p.target.ring.var_degree;

  std::vector<std::vector<Exponents>> leads(static_cast<std::size_t>(p.rows()));
  for (const ModuleElement& g : gb.elements) {
    const auto lt = leading_term(g);
    leads[static_cast<std::size_t>(lt->position)].push_back(lt->monomial);
  }

  // A pure power of every variable in every component's leading ideal.
  std::vector<std::vector<int>> bounds(static_cast<std::size_t>(p.rows()), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int s = 0; s < p.rows(); ++s) {
    const auto& component = leads[static_cast<std::size_t>(s)];
    if (std::any_of(component.begin(), component.end(), [](const Exponents& m) { return total_degree(m) == 0; })) {
      std::fill(bounds[static_cast<std::size_t>(s)].begin(), bounds[static_cast<std::size_t>(s)].end(), 1);
      continue;
    }
    for (int i = 0; i < r; ++i) {
      int best = 0;
      for (const Exponents& m : leads[static_cast<std::size_t>(s)]) {
        if (m[static_cast<std::size_t>(i)] > 0 && total_degree(m) == m[static_cast<std::size_t>(i)]) {
          if (best == 0 || m[static_cast<std::size_t>(i)] < best) best = m[static_cast<std::size_t>(i)];
        }
      }
      if (best == 0) {
        info.finite = false;
        return info;
      }
      bounds[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] = best;
    }
  }
  info.finite = true;

  std::map<int, long long> counts;
  for (int s = 0; s < p.rows(); ++s) {
    const auto& box = bounds[static_cast<std::size_t>(s)];
    const auto& ideal = leads[static_cast<std::size_t>(s)];
    Exponents e(static_cast<std::size_t>(r), 0);
    std::function<void(int)> walk = [&](int i) {
      if (i == r) {
        for (const Exponents& m : ideal) {
          if (divides(m, e)) return;
        }
        ++counts[p.target.generator_degrees[static_cast<std::size_t>(s)] + vd * total_degree(e)];
        return;
      }
      for (int a = 0; a < box[static_cast<std::size_t>(i)]; ++a) {
        e[static_cast<std::size_t>(i)] = a;
        walk(i + 1);
      }
      e[static_cast<std::size_t>(i)] = 0;
    };
    walk(0);
  }

  long long total = 0;
  if (!counts.empty()) {
    info.start_degree = counts.begin()->first;
    const int last = counts.rbegin()->first;
    info.hilbert.assign(static_cast<std::size_t>(last - info.start_degree + 1), 0);
    for (const auto& [d, c] : counts) {
      info.hilbert[static_cast<std::size_t>(d - info.start_degree)] = c;
      total += c;
    }
    info.top_degree = last;
  } else if (!p.target.generator_degrees.empty()) {
    info.start_degree = *std::min_element(p.target.generator_degrees.begin(), p.target.generator_degrees.end());
  }
  info.total_dim = total;
  return info;
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer for " + what + ", got '" + text + "'", 0);
  }
}

int parse_keyed(const std::string& word, const std::string& key) {
  if (word.rfind(key + "=", 0) != 0) throw ParseError("expected '" + key + "=<int>'", 0);
  return parse_int(word.substr(key.size() + 1), key);
}

}  // namespace

PresentationMap parse_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Ring> ring;
  std::optional<std::vector<int>> target;
  std::optional<std::vector<int>> source;
  int k = -1;
  int l = -1;
  std::vector<std::vector<std::string>> rows;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> ParseError { return ParseError(what + " (line " + std::to_string(line_no) + ")", 0); };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> words = split_words(line);
    if (k >= 0) {
      if (static_cast<int>(words.size()) != l) throw fail("matrix row needs " + std::to_string(l) + " entries");
      rows.push_back(std::move(words));
      continue;
    }
    const std::string& key = words[0];
    if (key == "ring") {
      if (words.size() != 3) throw fail("expected 'ring r=<int> vardeg=<1|2>'");
      try {
        ring = Ring(parse_keyed(words[1], "r"), parse_keyed(words[2], "vardeg"));
      } catch (const ParseError&) {
        throw fail("expected 'ring r=<int> vardeg=<1|2>'");
      } catch (const Error& e) {
        throw fail(e.what());
      }
    } else if (key == "target" || key == "source") {
      std::vector<int> degrees;
      for (std::size_t i = 1; i < words.size(); ++i) degrees.push_back(parse_int(words[i], key + " degree"));
      (key == "target" ? target : source) = std::move(degrees);
    } else if (key == "matrix") {
      if (words.size() != 3) throw fail("expected 'matrix <k> <l>'");
      k = parse_int(words[1], "matrix rows");
      l = parse_int(words[2], "matrix columns");
      if (k < 0 || l < 0) throw fail("negative matrix shape");
    } else {
      throw fail("unknown directive '" + key + "'");
    }
  }
  if (!ring) throw ParseError("missing 'ring' line", 0);
  if (!target) throw ParseError("missing 'target' line", 0);
  if (k < 0) throw ParseError("missing 'matrix' line", 0);
  if (static_cast<int>(target->size()) != k) throw ParseError("target rank does not match matrix rows", 0);
  if (static_cast<int>(rows.size()) != k) throw ParseError("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(k), 0);
  if (source && static_cast<int>(source->size()) != l) throw ParseError("source rank does not match matrix columns", 0);

  const FreeModule target_module{*ring, *target};
  std::vector<ModuleElement> columns;
  for (int j = 0; j < l; ++j) {
    ModuleElement c(target_module);
    for (int i = 0; i < k; ++i) c[i] = parse_poly(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], *ring);
    columns.push_back(std::move(c));
  }
  if (source) {
    PresentationMap p{FreeModule{*ring, *source}, target_module, std::move(columns)};
    p.validate();
    return p;
  }
  return make_presentation(target_module, columns);
}

std::string format_presentation(const PresentationMap& p, bool with_source_degrees) {
  std::ostringstream out;
  out << "ring r=" << p.target.ring.num_vars << " vardeg=" << p.target.ring.var_degree << "\n";
  out << "target";
  for (int d : p.target.generator_degrees) out << " " << d;
  out << "\n";
  if (with_source_degrees) {
    out << "source";
    for (int d : p.source.generator_degrees) out << " " << d;
    out << "\n";
  }
  out << "matrix " << p.rows() << " " << p.cols() << "\n";
  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(p.rows()));
  std::vector<std::size_t> width(static_cast<std::size_t>(p.cols()), 1);
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      std::string s = p.entry(i, j).to_string();
      s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
      width[static_cast<std::size_t>(j)] = std::max(width[static_cast<std::size_t>(j)], s.size());
      cells[static_cast<std::size_t>(i)].push_back(std::move(s));
    }
  }
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      const std::string& s = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (j) out << " ";
      out << s;
      if (j + 1 < p.cols()) out << std::string(width[static_cast<std::size_t>(j)] - s.size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace torank
