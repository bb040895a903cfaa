#include "torank/sullivan.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <regex>
#include <sstream>

namespace torank {

GradedAlgebra::GradedAlgebra(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Generator& g = generators_[i];
    if (g.degree < 1) throw Error("generator '" + g.name + "' must have positive degree");
    if (!index_.emplace(g.name, static_cast<int>(i)).second) throw Error("duplicate generator '" + g.name + "'");
  }
}

std::optional<int> GradedAlgebra::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GradedAlgebra::degree(const Word& w) const {
  int d = 0;
  for (int i = 0; i < size(); ++i) d += w[static_cast<std::size_t>(i)] * generator(i).degree;
  return d;
}

std::pair<int, Word> GradedAlgebra::multiply(const Word& a, const Word& b) const {
  Word out(a.size());
  int odd_seen_after = 0;  // odd generators of a with index greater than the current one
  int swaps = 0;
  for (int i = size() - 1; i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i);
    if (is_odd(i)) {
      if (a[k] && b[k]) return {0, {}};
      if (b[k]) swaps += odd_seen_after;
      if (a[k]) ++odd_seen_after;
    }
    out[k] = a[k] + b[k];
  }
  return {swaps % 2 == 0 ? 1 : -1, std::move(out)};
}

std::vector<Word> GradedAlgebra::words_of_degree(int degree, std::size_t cap) const {
  std::vector<Word> out;
  if (degree < 0) return out;
  Word current(static_cast<std::size_t>(size()), 0);
  std::function<void(int, int)> fill = [&](int i, int remaining) {
    if (remaining == 0) {
      out.push_back(current);
      if (out.size() > cap) throw Error("more than " + std::to_string(cap) + " monomials in degree " + std::to_string(degree));
      return;
    }
    if (i == size()) return;
    const int deg = generator(i).degree;
    const int max_e = is_odd(i) ? 1 : remaining / deg;
    for (int e = std::min(max_e, remaining / deg); e >= 0; --e) {
      current[static_cast<std::size_t>(i)] = e;
      fill(i + 1, remaining - e * deg);
    }
    current[static_cast<std::size_t>(i)] = 0;
  };
  fill(0, degree);
  std::sort(out.begin(), out.end(), WordOrder{});
  return out;
}

std::optional<int> GradedAlgebra::top_degree() const {
  int total = 0;
  for (int i = 0; i < size(); ++i) {
    if (!is_odd(i)) return std::nullopt;
    total += generator(i).degree;
  }
  return total;
}

std::string GradedAlgebra::word_to_string(const Word& w) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    const int e = w[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += generator(i).name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

AlgebraElement AlgebraElement::constant(AlgebraPtr algebra, const Rational& c) {
  const Word unit(static_cast<std::size_t>(algebra->size()), 0);
  return word(std::move(algebra), unit, c);
}

AlgebraElement AlgebraElement::generator(AlgebraPtr algebra, int index) {
  Word w(static_cast<std::size_t>(algebra->size()), 0);
  w[static_cast<std::size_t>(index)] = 1;
  return word(std::move(algebra), std::move(w));
}

AlgebraElement AlgebraElement::word(AlgebraPtr algebra, Word w, const Rational& c) {
  AlgebraElement e(std::move(algebra));
  e.add_term(w, c);
  return e;
}

std::optional<int> AlgebraElement::degree() const {
  std::optional<int> d;
  for (const auto& [w, c] : terms_) {
    const int dw = algebra_->degree(w);
    if (d && *d != dw) return std::nullopt;
    d = dw;
  }
  return d;
}

void AlgebraElement::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  const Rational value = canonical(c);
  auto [it, inserted] = terms_.try_emplace(w, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!algebra_) algebra_ = o.algebra_;
  if (o.algebra_ && algebra_ != o.algebra_ && algebra_->generators().size() != o.algebra_->generators().size()) {
    throw Error("elements of different algebras");
  }
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) { return *this += o.scaled(-1); }

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  out += o;
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  out -= o;
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  AlgebraElement out(algebra_ ? algebra_ : o.algebra_);
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      auto [sign, w] = algebra_->multiply(wa, wb);
      if (sign != 0) out.add_term(w, sign * ca * cb);
    }
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
  AlgebraElement out(algebra_);
  for (const auto& [w, a] : terms_) out.add_term(w, a * c);
  return out;
}

AlgebraElement AlgebraElement::power(int e) const {
  AlgebraElement out = constant(algebra_, 1);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string word = algebra_->word_to_string(w);
    if (word == "1") {
      out += torank::to_string(mag);
    } else if (mag == 1) {
      out += word;
    } else {
      out += torank::to_string(mag) + "*" + word;
    }
    first = false;
  }
  return out;
}

AlgebraElement parse_element(std::string_view text, const AlgebraPtr& algebra) {
  AlgebraElement out(algebra);
  for (const ParsedTerm& term : parse_terms(text)) {
    AlgebraElement product = AlgebraElement::constant(algebra, term.coefficient);
    for (const auto& [name, exponent] : term.factors) {
      const auto index = algebra->index_of(name);
      if (!index) throw ParseError("unknown generator '" + name + "'", term.position);
      product = product * AlgebraElement::generator(algebra, *index).power(exponent);
    }
    out += product;
  }
  return out;
}

Derivation::Derivation(AlgebraPtr algebra, std::vector<AlgebraElement> images)
    : algebra_(std::move(algebra)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != algebra_->size()) throw Error("one image per generator is required");
}

AlgebraElement Derivation::on_word(const Word& w) const {
  if (auto it = cache_.find(w); it != cache_.end()) return it->second;
  AlgebraElement out(algebra_);
  auto first = std::find_if(w.begin(), w.end(), [](int e) { return e > 0; });
  if (first != w.end()) {
    const int i = static_cast<int>(first - w.begin());
    Word rest = w;
    --rest[static_cast<std::size_t>(i)];
    const AlgebraElement g = AlgebraElement::generator(algebra_, i);
    const AlgebraElement tail = AlgebraElement::word(algebra_, rest);
    out = images_[static_cast<std::size_t>(i)] * tail;
    const AlgebraElement second = g * on_word(rest);
    out += algebra_->is_odd(i) ? second.scaled(-1) : second;
  }
  cache_.emplace(w, out);
  return out;
}

AlgebraElement Derivation::operator()(const AlgebraElement& e) const {
  AlgebraElement out(algebra_);
  for (const auto& [w, c] : e.terms()) out += on_word(w).scaled(c);
  return out;
}

namespace {

void check_degree(const AlgebraElement& image, int expected, const std::string& what) {
  if (image.is_zero()) return;
  const auto deg = image.degree();
  if (!deg) throw Error(what + " is not homogeneous");
  if (*deg != expected) {
    throw Error(what + " has degree " + std::to_string(*deg) + ", expected " + std::to_string(expected));
  }
}

}  // namespace

void SullivanModel::validate() const {
  for (int i = 0; i < algebra->size(); ++i) {
    const Generator& g = algebra->generator(i);
    check_degree(d.on_generator(i), g.degree + 1, "d(" + g.name + ")");
    const AlgebraElement dd = d(d.on_generator(i));
    if (!dd.is_zero()) throw Error("d^2 is not zero on generator " + g.name + ": d(d(" + g.name + ")) = " + dd.to_string());
  }
}

SullivanModel make_model(std::vector<Generator> generators, const std::map<std::string, std::string>& differential) {
  auto algebra = std::make_shared<const GradedAlgebra>(std::move(generators));
  std::vector<AlgebraElement> images(static_cast<std::size_t>(algebra->size()), AlgebraElement(algebra));
  for (const auto& [name, expr] : differential) {
    const auto index = algebra->index_of(name);
    if (!index) throw Error("differential given for unknown generator '" + name + "'");
    images[static_cast<std::size_t>(*index)] = parse_element(expr, algebra);
  }
  SullivanModel m{algebra, Derivation(algebra, std::move(images)), {}};
  m.validate();
  for (int i = 0; i < algebra->size(); ++i) {
    for (const auto& [w, c] : m.d.on_generator(i).terms()) {
      if (std::accumulate(w.begin(), w.end(), 0) == 1) {
        m.warnings.push_back("model is not minimal: d(" + algebra->generator(i).name + ") has a linear term");
        break;
      }
    }
  }
  return m;
}

void ActionExtension::validate() const {
  const GradedAlgebra& base_alg = *base.algebra;
  for (int i = 0; i < torus_rank; ++i) {
    if (!D.on_generator(i).is_zero()) throw Error("D must vanish on X" + std::to_string(i + 1));
  }
  for (int i = 0; i < base_alg.size(); ++i) {
    const Generator& g = base_alg.generator(i);
    const AlgebraElement& image = D.on_generator(total_index(i));
    check_degree(image, g.degree + 1, "D(" + g.name + ")");
    const AlgebraElement dd = D(image);
    if (!dd.is_zero()) throw Error("D^2 is not zero on generator " + g.name + ": D(D(" + g.name + ")) = " + dd.to_string());
    // Terms without X must reproduce d.
    AlgebraElement reduced(base.algebra);
    for (const auto& [w, c] : image.terms()) {
      if (std::all_of(w.begin(), w.begin() + torus_rank, [](int e) { return e == 0; })) {
        reduced.add_term(Word(w.begin() + torus_rank, w.end()), c);
      }
    }
    if (!(reduced == base.d.on_generator(i))) {
      throw Error("D(" + g.name + ") does not reduce to d(" + g.name + ") modulo X1..X" + std::to_string(torus_rank));
    }
  }
}

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> words;
  std::string rest;  // text after '=' for differential lines
};

[[noreturn]] void fail(const Line& line, const std::string& message) {
  throw ParseError(message + " (line " + std::to_string(line.number) + ")", 0);
}

int parse_keyed_int(const Line& line, const std::string& word, const std::string& key) {
  if (word.rfind(key + "=", 0) != 0) fail(line, "expected " + key + "=<int>");
  try {
    std::size_t used = 0;
    const int v = std::stoi(word.substr(key.size() + 1), &used);
    if (used != word.size() - key.size() - 1) fail(line, "expected " + key + "=<int>");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "expected " + key + "=<int>");
  }
}

AlgebraElement lift(const AlgebraElement& e, const AlgebraPtr& total, int shift) {
  AlgebraElement out(total);
  for (const auto& [w, c] : e.terms()) {
    Word lifted(static_cast<std::size_t>(shift), 0);
    lifted.insert(lifted.end(), w.begin(), w.end());
    out.add_term(lifted, c);
  }
  return out;
}

}  // namespace

ModelFile parse_model_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Generator> gens;
  std::vector<Line> d_lines, big_d_lines;
  std::optional<int> torus;
  int number = 0;
  const std::regex torus_name("X[0-9]+");
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line;
    line.number = number;
    std::string head = raw;
    const auto first = raw.find_first_not_of(" \t");
    const bool differential_line = first != std::string::npos && (raw[first] == 'd' || raw[first] == 'D') &&
                                   first + 1 < raw.size() && std::isspace(static_cast<unsigned char>(raw[first + 1]));
    if (auto eq = raw.find('='); differential_line && eq != std::string::npos) {
      head = raw.substr(0, eq);
      line.rest = raw.substr(eq + 1);
    }
    std::istringstream words(head);
    for (std::string w; words >> w;) line.words.push_back(w);
    if (line.words.empty()) continue;

    const std::string& kind = line.words[0];
    if (kind == "gen") {
      if (line.words.size() != 3) fail(line, "expected 'gen <name> deg=<int>'");
      if (torus || !d_lines.empty()) fail(line, "generators must be declared before differentials");
      const std::string& name = line.words[1];
      if (std::regex_match(name, torus_name)) fail(line, "generator names X<digits> are reserved for the torus");
      if (!std::regex_match(name, std::regex("[A-Za-z_][A-Za-z0-9_]*"))) fail(line, "invalid generator name '" + name + "'");
      const int deg = parse_keyed_int(line, line.words[2], "deg");
      if (deg < 1) fail(line, "generator degrees must be positive");
      gens.push_back({name, deg});
    } else if (kind == "d" || kind == "D") {
      if (line.words.size() != 2 || line.rest.empty()) fail(line, "expected '" + kind + " <name> = <expression>'");
      if (kind == "d" && torus) fail(line, "'d' lines must precede the torus section");
      if (kind == "D" && !torus) fail(line, "'D' lines need a preceding 'torus r=<int>' line");
      (kind == "d" ? d_lines : big_d_lines).push_back(line);
    } else if (kind == "torus") {
      if (torus) fail(line, "duplicate torus line");
      if (line.words.size() != 2) fail(line, "expected 'torus r=<int>'");
      torus = parse_keyed_int(line, line.words[1], "r");
      if (*torus < 1) fail(line, "torus rank must be at least 1");
    } else {
      fail(line, "unknown directive '" + kind + "'");
    }
  }

  std::map<std::string, std::string> differential;
  for (const Line& line : d_lines) {
    if (!differential.emplace(line.words[1], line.rest).second) fail(line, "duplicate differential for '" + line.words[1] + "'");
    if (std::none_of(gens.begin(), gens.end(), [&](const Generator& g) { return g.name == line.words[1]; })) {
      fail(line, "unknown generator '" + line.words[1] + "'");
    }
  }
  ModelFile out{make_model(gens, differential), std::nullopt};
  if (!torus) return out;

  ActionExtension ext;
  ext.base = out.model;
  ext.torus_rank = *torus;
  std::vector<Generator> total_gens;
  for (int i = 1; i <= *torus; ++i) total_gens.push_back({"X" + std::to_string(i), 2});
  total_gens.insert(total_gens.end(), gens.begin(), gens.end());
  ext.total = std::make_shared<const GradedAlgebra>(std::move(total_gens));

  std::vector<AlgebraElement> images(static_cast<std::size_t>(ext.total->size()), AlgebraElement(ext.total));
  for (int i = 0; i < ext.base.algebra->size(); ++i) {
    images[static_cast<std::size_t>(ext.total_index(i))] = lift(ext.base.d.on_generator(i), ext.total, *torus);
  }
  std::vector<bool> seen(gens.size(), false);
  for (const Line& line : big_d_lines) {
    const auto index = ext.base.algebra->index_of(line.words[1]);
    if (!index) fail(line, "unknown generator '" + line.words[1] + "'");
    if (seen[static_cast<std::size_t>(*index)]) fail(line, "duplicate D for '" + line.words[1] + "'");
    seen[static_cast<std::size_t>(*index)] = true;
    images[static_cast<std::size_t>(ext.total_index(*index))] = parse_element(line.rest, ext.total);
  }
  ext.D = Derivation(ext.total, std::move(images));
  ext.validate();
  out.extension = std::move(ext);
  return out;
}

SullivanModel parse_model(const std::string& text) { return parse_model_file(text).model; }

ActionExtension parse_extension(const std::string& text) {
  ModelFile f = parse_model_file(text);
  if (!f.extension) throw ParseError("the model file has no torus section", 0);
  return std::move(*f.extension);
}

int default_cutoff(const SullivanModel& model) {
  const auto top = model.algebra->top_degree();
  if (!top) throw Error("the model has even generators; a degree cutoff is required");
  return *top;
}

Cohomology::Cohomology(const SullivanModel& model, int cutoff,
                       const std::vector<std::vector<AlgebraElement>>& preferred_cycles)
    : model_(model), cutoff_(cutoff) {
  if (cutoff < 0) throw Error("cutoff must be nonnegative");
  std::vector<std::vector<Word>> words;
  for (int p = 0; p <= cutoff + 1; ++p) words.push_back(model_.algebra->words_of_degree(p));

  for (int p = 0; p <= cutoff; ++p) {
    Piece piece;
    piece.words = words[static_cast<std::size_t>(p)];
    for (std::size_t k = 0; k < piece.words.size(); ++k) piece.index.emplace(piece.words[k], static_cast<int>(k));
    const int dim = static_cast<int>(piece.words.size());
    const auto& next = words[static_cast<std::size_t>(p + 1)];
    std::map<Word, int> next_index;
    for (std::size_t k = 0; k < next.size(); ++k) next_index.emplace(next[k], static_cast<int>(k));

    linalg::Matrix d(static_cast<int>(next.size()), dim);
    for (int col = 0; col < dim; ++col) {
      const AlgebraElement image = model_.d.on_word(piece.words[static_cast<std::size_t>(col)]);
      for (const auto& [w, c] : image.terms()) d(next_index.at(w), col) = c;
    }

    linalg::IncrementalSpan span(dim);
    if (p > 0) {
      const Piece& prev = pieces_.back();
      for (const linalg::Vector& c : prev.c_basis) {
        linalg::Vector v(static_cast<std::size_t>(dim));
        const AlgebraElement boundary = model_.d(to_element(c, p - 1));
        for (const auto& [w, coeff] : boundary.terms()) v[static_cast<std::size_t>(piece.index.at(w))] = coeff;
        span.add(v);
        piece.b_basis.push_back(std::move(v));
      }
    }
    if (static_cast<std::size_t>(p) < preferred_cycles.size()) {
      for (const AlgebraElement& cycle : preferred_cycles[static_cast<std::size_t>(p)]) {
        if (!model_.d(cycle).is_zero()) throw Error("preferred element " + cycle.to_string() + " is not a cycle");
        linalg::Vector v(static_cast<std::size_t>(dim));
        for (const auto& [w, coeff] : cycle.terms()) {
          auto it = piece.index.find(w);
          if (it == piece.index.end()) throw Error("preferred element " + cycle.to_string() + " is not of degree " + std::to_string(p));
          v[static_cast<std::size_t>(it->second)] = coeff;
        }
        if (!span.add(v)) throw Error("preferred cycles in degree " + std::to_string(p) + " are dependent modulo boundaries");
        piece.a_basis.push_back(std::move(v));
      }
    }
    for (const linalg::Vector& z : linalg::kernel(d)) {
      if (span.add(z)) piece.a_basis.push_back(z);
    }
    for (int k = 0; k < dim; ++k) {
      linalg::Vector e(static_cast<std::size_t>(dim));
      e[static_cast<std::size_t>(k)] = 1;
      if (span.add(e)) piece.c_basis.push_back(std::move(e));
    }
    std::vector<linalg::Vector> columns = piece.b_basis;
    columns.insert(columns.end(), piece.a_basis.begin(), piece.a_basis.end());
    columns.insert(columns.end(), piece.c_basis.begin(), piece.c_basis.end());
    const auto inverse = linalg::inverse(linalg::Matrix::from_columns(columns, dim));
    if (!inverse) throw Error("internal error: adapted basis is singular");
    piece.to_adapted = *inverse;
    pieces_.push_back(std::move(piece));
  }
}

int Cohomology::betti(int degree) const {
  if (degree < 0 || degree > cutoff_) return 0;
  return static_cast<int>(piece(degree).a_basis.size());
}

std::vector<int> Cohomology::betti_numbers() const {
  std::vector<int> out;
  for (int p = 0; p <= cutoff_; ++p) out.push_back(betti(p));
  return out;
}

long long Cohomology::total_dimension() const {
  long long sum = 0;
  for (int p = 0; p <= cutoff_; ++p) sum += betti(p);
  return sum;
}

int Cohomology::formal_dimension() const {
  for (int p = cutoff_; p >= 0; --p) {
    if (betti(p) != 0) return p;
  }
  return 0;
}

long long Cohomology::euler_characteristic() const {
  long long chi = 0;
  for (int p = 0; p <= cutoff_; ++p) chi += (p % 2 == 0 ? 1 : -1) * betti(p);
  return chi;
}

linalg::Vector Cohomology::to_vector(const AlgebraElement& e, int degree) const {
  const Piece& pc = piece(degree);
  linalg::Vector v(pc.words.size());
  for (const auto& [w, c] : e.terms()) {
    auto it = pc.index.find(w);
    if (it == pc.index.end()) throw Error("element is not homogeneous of degree " + std::to_string(degree));
    v[static_cast<std::size_t>(it->second)] = c;
  }
  return v;
}

AlgebraElement Cohomology::to_element(const linalg::Vector& v, int degree) const {
  const Piece& pc = piece(degree);
  AlgebraElement e(model_.algebra);
  for (std::size_t k = 0; k < v.size(); ++k) e.add_term(pc.words[k], v[k]);
  return e;
}

AlgebraElement Cohomology::representative(int degree, int k) const {
  return to_element(piece(degree).a_basis[static_cast<std::size_t>(k)], degree);
}

bool Cohomology::is_cycle(const AlgebraElement& e) const { return model_.d(e).is_zero(); }

linalg::Vector Cohomology::class_of(const AlgebraElement& cycle, int degree) const {
  if (degree > cutoff_) throw Error("degree " + std::to_string(degree) + " exceeds the cutoff");
  const Piece& pc = piece(degree);
  const linalg::Vector coords = pc.to_adapted * to_vector(cycle, degree);
  const std::size_t nb = pc.b_basis.size();
  const std::size_t na = pc.a_basis.size();
  for (std::size_t k = nb + na; k < coords.size(); ++k) {
    if (coords[k] != 0) throw Error("element is not a cycle");
  }
  return linalg::Vector(coords.begin() + static_cast<std::ptrdiff_t>(nb), coords.begin() + static_cast<std::ptrdiff_t>(nb + na));
}

linalg::Vector Cohomology::product(int p, int i, int q, int j) const {
  return class_of(representative(p, i) * representative(q, j), p + q);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

bool nonzero_top_power(const Cohomology& h, const AlgebraElement& omega, int n) {
  return !linalg::is_zero(h.class_of(omega.power(n), 2 * n));
}

}  // namespace

CsymplecticResult c_symplectic_check(const Cohomology& h, const std::optional<AlgebraElement>& omega) {
  CsymplecticResult res;
  const int fd = h.formal_dimension();
  if (fd % 2 != 0) throw Error("odd formal dimension " + std::to_string(fd));
  res.n = fd / 2;
  if (res.n == 0) {
    res.verdict = Verdict::no;
    res.message = "formal dimension 0";
    return res;
  }
  if (h.betti(fd) != 1) {
    res.verdict = Verdict::no;
    res.message = "top cohomology is not one-dimensional";
    return res;
  }
  for (int p = 0; p <= fd; ++p) {
    const int a = h.betti(p);
    const int b = h.betti(fd - p);
    if (a != b) {
      res.verdict = Verdict::no;
      res.message = "Betti numbers in degrees " + std::to_string(p) + " and " + std::to_string(fd - p) + " differ";
      return res;
    }
    linalg::Matrix pairing(a, b);
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < b; ++j) pairing(i, j) = h.product(p, i, fd - p, j)[0];
    }
    if (linalg::rank(pairing) != a) {
      res.verdict = Verdict::no;
      res.message = "cup product pairing is degenerate in degree " + std::to_string(p);
      return res;
    }
  }
  res.poincare_duality = true;

  if (omega) {
    if (omega->degree() != 2 || !h.is_cycle(*omega)) throw Error("omega must be a cocycle of degree 2");
    if (nonzero_top_power(h, *omega, res.n)) res.omega = *omega;
  } else if (h.betti(2) == 0) {
    res.verdict = Verdict::no;
    res.message = "H^2 is zero";
    return res;
  } else {
    const int b2 = h.betti(2);
    std::vector<AlgebraElement> basis;
    for (int k = 0; k < b2; ++k) basis.push_back(h.representative(2, k));
    auto attempt = [&](const AlgebraElement& candidate) {
      if (!res.omega && !candidate.is_zero() && nonzero_top_power(h, candidate, res.n)) res.omega = candidate;
      return res.omega.has_value();
    };
    for (const auto& b : basis) {
      if (attempt(b)) break;
    }
    const std::vector<int> coeffs{1, -1, 2, -2};
    for (int size = 2; size <= 3 && !res.omega; ++size) {
      std::vector<int> pick(static_cast<std::size_t>(size));
      std::function<void(int, int)> choose = [&](int pos, int start) {
        if (res.omega) return;
        if (pos == size) {
          std::vector<std::size_t> digits(static_cast<std::size_t>(size), 0);
          while (!res.omega) {
            AlgebraElement candidate(h.model().algebra);
            for (int t = 0; t < size; ++t) {
              candidate += basis[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])].scaled(coeffs[digits[static_cast<std::size_t>(t)]]);
            }
            attempt(candidate);
            std::size_t t = 0;
            while (t < digits.size() && ++digits[t] == coeffs.size()) digits[t++] = 0;
            if (t == digits.size()) break;
          }
          return;
        }
        for (int k = start; k < b2; ++k) {
          pick[static_cast<std::size_t>(pos)] = k;
          choose(pos + 1, k + 1);
        }
      };
      if (size <= b2) choose(0, 0);
    }
    if (!res.omega) {
      const std::vector<int> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
      AlgebraElement generic(h.model().algebra);
      for (int k = 0; k < b2; ++k) generic += basis[static_cast<std::size_t>(k)].scaled(primes[static_cast<std::size_t>(k) % primes.size()] + k / static_cast<int>(primes.size()));
      attempt(generic);
    }
  }

  if (!res.omega) {
    res.verdict = Verdict::unknown;
    res.message = omega ? "the supplied omega has vanishing top power" : "no omega with nonzero top power was found";
    return res;
  }
  res.verdict = Verdict::yes;
  res.omega_power = res.omega->power(res.n);

  const int b1 = h.betti(1);
  const AlgebraElement lift = res.omega->power(res.n - 1);
  linalg::Matrix lefschetz(h.betti(fd - 1), b1);
  for (int k = 0; k < b1; ++k) {
    const linalg::Vector image = h.class_of(lift * h.representative(1, k), fd - 1);
    for (int i = 0; i < lefschetz.rows(); ++i) lefschetz(i, k) = image[static_cast<std::size_t>(i)];
  }
  res.lefschetz_type = lefschetz.rows() == b1 && linalg::rank(lefschetz) == b1;
  return res;
}

}  // namespace torank
