#include "torank/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace torank {

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return canonical(q).get_str(); }

Integer ceil(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw ParseError("invalid rational '" + std::string(text) + "'", 0);
  }
  q.canonicalize();
  return q;
}

Ring::Ring(int num_vars_, int var_degree_) : num_vars(num_vars_), var_degree(var_degree_) {
  if (num_vars < 1) throw Error("ring needs at least one variable");
  if (var_degree != 1 && var_degree != 2) throw Error("variable degree must be 1 or 2");
}

int total_degree(const Exponents& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Exponents product(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

bool DegRevLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Polynomial::Polynomial(Ring ring, const Rational& constant) : ring_(ring) {
  if (constant != 0) terms_.emplace(Exponents(static_cast<std::size_t>(ring.num_vars), 0), canonical(constant));
}

Polynomial Polynomial::monomial(Ring ring, Exponents exps, const Rational& coeff) {
  if (static_cast<int>(exps.size()) != ring.num_vars) throw Error("exponent vector length mismatch");
  Polynomial p(ring);
  if (coeff != 0) p.terms_.emplace(std::move(exps), canonical(coeff));
  return p;
}

Polynomial Polynomial::variable(Ring ring, int index) {
  Exponents e(static_cast<std::size_t>(ring.num_vars), 0);
  e.at(static_cast<std::size_t>(index)) = 1;
  return monomial(ring, std::move(e));
}

const Exponents& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw Error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

Rational Polynomial::constant_term() const {
  return coefficient(Exponents(static_cast<std::size_t>(ring_.num_vars), 0));
}

Rational Polynomial::coefficient(const Exponents& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = total_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_) {
    if (total_degree(m) != d) return std::nullopt;
  }
  return d * ring_.var_degree;
}

bool Polynomial::is_homogeneous() const { return terms_.empty() || degree().has_value(); }

void Polynomial::add_term(const Exponents& m, const Rational& c) {
  if (c == 0) return;
  const Rational value = canonical(c);
  auto [it, inserted] = terms_.try_emplace(m, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (!(ring_ == other.ring_)) throw RingMismatch("polynomials live in different rings");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out -= other;
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_ring(other);
  Polynomial out(ring_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) out.add_term(torank::product(ma, mb), ca * cb);
  }
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(ring_);
  if (c == 0) return out;
  const Rational factor = canonical(c);
  for (const auto& [m, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, a * factor);
  return out;
}

Polynomial Polynomial::times_monomial(const Exponents& m, const Rational& c) const {
  Polynomial out(ring_);
  if (c == 0) return out;
  const Rational factor = canonical(c);
  // Multiplying by a monomial preserves degrevlex order.
  for (const auto& [e, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), torank::product(e, m), a * factor);
  return out;
}

Polynomial Polynomial::regraded(int var_degree) const {
  Polynomial out(Ring(ring_.num_vars, var_degree));
  out.terms_.insert(terms_.begin(), terms_.end());
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return ring_ == other.ring_ && terms_ == other.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      std::string f = ring_.var_name(static_cast<int>(i));
      if (m[i] > 1) f += "^" + std::to_string(m[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) {
      out << torank::to_string(magnitude);
      continue;
    }
    if (magnitude != 1) out << torank::to_string(magnitude) << "*";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out << "*";
      out << factors[i];
    }
  }
  return out.str();
}

namespace {

class TermLexer {
 public:
  explicit TermLexer(std::string_view text) : text_(text) {}

  std::vector<ParsedTerm> run() {
    std::vector<ParsedTerm> terms;
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      ParsedTerm t = term();
      if (negative) t.coefficient = -t.coefficient;
      terms.push_back(std::move(t));
      skip_space();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-'", pos_);
      negative = peek() == '-';
      ++pos_;
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      throw ParseError("expected a variable name", pos_);
    }
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::pair<std::string, int> factor() {
    std::string name = identifier();
    skip_space();
    int exponent = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      const std::size_t where = pos_;
      const std::string e = digits();
      if (e.size() > 6) throw ParseError("exponent too large", where);
      exponent = std::stoi(e);
    }
    return {std::move(name), exponent};
  }

  ParsedTerm term() {
    skip_space();
    ParsedTerm t;
    t.position = pos_;
    t.coefficient = 1;
    if (at_end()) throw ParseError("expected a term", pos_);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      skip_space();
      if (!at_end() && peek() == '/') {
        ++pos_;
        const std::size_t where = pos_;
        std::string den = digits();
        if (Integer(den) == 0) throw ParseError("zero denominator", where);
        num += "/" + den;
      }
      t.coefficient = parse_rational(num);
    } else {
      t.factors.push_back(factor());
    }
    while (true) {
      skip_space();
      if (at_end() || peek() != '*') break;
      ++pos_;
      t.factors.push_back(factor());
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int variable_index(const std::string& name, const Ring& ring) {
  if (name.size() >= 2 && name[0] == 'x') {
    const std::string rest = name.substr(1);
    if (std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int i = std::stoi(rest);
      if (i >= 1 && i <= ring.num_vars) return i - 1;
      return -1;
    }
  }
  if (ring.num_vars <= 4 && name.size() == 1) {
    static const std::string lower = "xyzw";
    static const std::string upper = "XYZW";
    auto at = lower.find(name[0]);
    if (at == std::string::npos) at = upper.find(name[0]);
    if (at != std::string::npos && static_cast<int>(at) < ring.num_vars) return static_cast<int>(at);
  }
  return -1;
}

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text) { return TermLexer(text).run(); }

Polynomial parse_poly(std::string_view text, const Ring& ring) {
  Polynomial out(ring);
  for (const ParsedTerm& t : parse_terms(text)) {
    Exponents e(static_cast<std::size_t>(ring.num_vars), 0);
    for (const auto& [name, power] : t.factors) {
      const int i = variable_index(name, ring);
      if (i < 0) throw ParseError("unknown variable '" + name + "'", t.position);
      e[static_cast<std::size_t>(i)] += power;
    }
    out.add_term(e, t.coefficient);
  }
  return out;
}

ModuleElement::ModuleElement(FreeModule module) : module_(std::move(module)) {
  components_.assign(static_cast<std::size_t>(module_.rank()), Polynomial(module_.ring));
}

ModuleElement::ModuleElement(FreeModule module, std::vector<Polynomial> components)
    : module_(std::move(module)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != module_.rank()) throw Error("component count does not match module rank");
  for (const Polynomial& p : components_) {
    if (!(p.ring() == module_.ring)) throw RingMismatch("component outside the module's ring");
  }
}

ModuleElement ModuleElement::basis(const FreeModule& module, int index) {
  ModuleElement e(module);
  e[index] = Polynomial(module.ring, 1);
  return e;
}

bool ModuleElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

ElementDegree ModuleElement::degree() const {
  ElementDegree out;
  for (std::size_t s = 0; s < components_.size(); ++s) {
    const Polynomial& p = components_[s];
    if (p.is_zero()) continue;
    const auto d = p.degree();
    if (!d) return {ElementDegree::Kind::inhomogeneous, 0};
    const int total = *d + module_.generator_degrees[s];
    if (out.kind == ElementDegree::Kind::zero) {
      out = {ElementDegree::Kind::homogeneous, total};
    } else if (out.degree != total) {
      return {ElementDegree::Kind::inhomogeneous, 0};
    }
  }
  return out;
}

ElementDegree element_degree(const ModuleElement& e) { return e.degree(); }

void ModuleElement::check_module(const ModuleElement& other) const {
  if (!(module_ == other.module_)) throw RingMismatch("module elements live in different free modules");
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  check_module(other);
  for (std::size_t s = 0; s < components_.size(); ++s) components_[s] += other.components_[s];
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  check_module(other);
  for (std::size_t s = 0; s < components_.size(); ++s) components_[s] -= other.components_[s];
  return *this;
}

ModuleElement ModuleElement::operator+(const ModuleElement& other) const {
  ModuleElement out = *this;
  out += other;
  return out;
}

ModuleElement ModuleElement::operator-(const ModuleElement& other) const {
  ModuleElement out = *this;
  out -= other;
  return out;
}

ModuleElement ModuleElement::scaled(const Polynomial& p) const {
  ModuleElement out(module_);
  for (std::size_t s = 0; s < components_.size(); ++s) out.components_[s] = components_[s] * p;
  return out;
}

ModuleElement ModuleElement::times_monomial(const Exponents& m, const Rational& c) const {
  ModuleElement out(module_);
  for (std::size_t s = 0; s < components_.size(); ++s) out.components_[s] = components_[s].times_monomial(m, c);
  return out;
}

ModuleElement ModuleElement::rebased(const FreeModule& module) const {
  if (module.rank() != module_.rank() || !(module.ring == module_.ring)) {
    throw RingMismatch("cannot rebase onto a module of different shape");
  }
  return ModuleElement(module, components_);
}

bool ModuleElement::operator==(const ModuleElement& other) const {
  return module_ == other.module_ && components_ == other.components_;
}

std::string ModuleElement::to_string() const {
  std::string out = "(";
  for (std::size_t s = 0; s < components_.size(); ++s) {
    if (s) out += ", ";
    out += components_[s].to_string();
  }
  return out + ")";
}

}  // namespace torank
