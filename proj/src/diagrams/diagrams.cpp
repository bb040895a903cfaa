#include "torank/diagrams.hpp"

#include <algorithm>
#include <sstream>

namespace torank {

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw Error("a degree sequence needs at least one entry");
  for (std::size_t i = 1; i < degrees_.size(); ++i) {
    if (degrees_[i] <= degrees_[i - 1]) throw Error("degree sequence " + to_string() + " is not strictly increasing");
  }
}

DegreeSequence DegreeSequence::normalized() const {
  std::vector<int> out = degrees_;
  for (int& d : out) d -= degrees_.front();
  return DegreeSequence(std::move(out));
}

std::string DegreeSequence::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(degrees_[i]);
  }
  return out + ")";
}

Rational BettiDiagram::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? Rational(0) : it->second;
}

void BettiDiagram::set(int i, int j, const Rational& value) {
  if (value == 0) {
    entries_.erase({i, j});
  } else {
    entries_[{i, j}] = value;
  }
}

void BettiDiagram::add(int i, int j, const Rational& value) { set(i, j, at(i, j) + value); }

Rational BettiDiagram::total(int i) const {
  Rational sum = 0;
  for (const auto& [key, v] : entries_) {
    if (key.first == i) sum += v;
  }
  return sum;
}

int BettiDiagram::max_column() const {
  int m = -1;
  for (const auto& [key, v] : entries_) m = std::max(m, key.first);
  return m;
}

BettiDiagram BettiDiagram::operator+(const BettiDiagram& other) const {
  BettiDiagram out = *this;
  for (const auto& [key, v] : other.entries_) out.add(key.first, key.second, v);
  return out;
}

BettiDiagram BettiDiagram::operator-(const BettiDiagram& other) const { return *this + other.scaled(-1); }

BettiDiagram BettiDiagram::scaled(const Rational& q) const {
  BettiDiagram out(codim_hint_);
  for (const auto& [key, v] : entries_) out.set(key.first, key.second, v * q);
  return out;
}

std::string BettiDiagram::to_lines() const {
  std::ostringstream out;
  for (const auto& [key, v] : entries_) out << key.first << " " << key.second << " " << torank::to_string(v) << "\n";
  return out.str();
}

std::string BettiDiagram::to_table(TableLayout layout) const {
  if (entries_.empty()) return "(zero diagram)\n";
  int min_i = 0;
  int max_i = 0;
  int min_row = 0;
  int max_row = 0;
  bool first = true;
  for (const auto& [key, v] : entries_) {
    const int row = layout == TableLayout::paper ? key.second : key.second - key.first;
    if (first) {
      min_i = max_i = key.first;
      min_row = max_row = row;
      first = false;
    }
    min_i = std::min(min_i, key.first);
    max_i = std::max(max_i, key.first);
    min_row = std::min(min_row, row);
    max_row = std::max(max_row, row);
  }
  min_i = std::min(min_i, 0);

  std::vector<std::vector<std::string>> cells;
  std::size_t label_width = 1;
  std::vector<std::size_t> width(static_cast<std::size_t>(max_i - min_i + 1), 1);
  for (int i = min_i; i <= max_i; ++i) width[static_cast<std::size_t>(i - min_i)] = std::to_string(i).size();
  for (int row = min_row; row <= max_row; ++row) {
    label_width = std::max(label_width, std::to_string(row).size());
    std::vector<std::string> line;
    for (int i = min_i; i <= max_i; ++i) {
      const int j = layout == TableLayout::paper ? row : row + i;
      std::string s = torank::to_string(at(i, j));
      width[static_cast<std::size_t>(i - min_i)] = std::max(width[static_cast<std::size_t>(i - min_i)], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }

  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
  std::ostringstream out;
  out << std::string(label_width, ' ') << " |";
  for (int i = min_i; i <= max_i; ++i) out << " " << pad(std::to_string(i), width[static_cast<std::size_t>(i - min_i)]);
  out << "\n";
  std::size_t rule = label_width + 1;
  for (std::size_t w : width) rule += w + 1;
  out << std::string(label_width + 1, '-') << "+" << std::string(rule - label_width - 1, '-') << "\n";
  for (int row = min_row; row <= max_row; ++row) {
    out << pad(std::to_string(row), label_width) << " |";
    const auto& line = cells[static_cast<std::size_t>(row - min_row)];
    for (std::size_t c = 0; c < line.size(); ++c) out << " " << pad(line[c], width[c]);
    out << "\n";
  }
  return out.str();
}

BettiDiagram parse_diagram(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  BettiDiagram b;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream words(line);
    int i = 0;
    int j = 0;
    std::string value;
    std::string extra;
    if (!(words >> i >> j >> value) || (words >> extra)) {
      throw ParseError("expected '<i> <j> <p>[/<q>]' (line " + std::to_string(line_no) + ")", 0);
    }
    if (i < 0) throw ParseError("negative homological index (line " + std::to_string(line_no) + ")", 0);
    b.add(i, j, parse_rational(value));
  }
  b.set_codim_hint(std::max(0, b.max_column()));
  return b;
}

BettiDiagram pure_diagram(const DegreeSequence& d) {
  BettiDiagram out(d.length());
  for (int i = 0; i < d.size(); ++i) {
    Rational v = 1;
    for (int k = 0; k < d.size(); ++k) {
      if (k == i) continue;
      v /= std::abs(d[k] - d[i]);
    }
    out.set(i, d[i], v);
  }
  return out;
}

Rational hk_ratio(const DegreeSequence& d) {
  if (d.length() < 1) throw Error("hk_ratio needs a degree sequence of length at least 1");
  const DegreeSequence n = d.normalized();
  Rational ratio = 1;
  for (int i = 2; i < n.size(); ++i) ratio *= Rational(n[i], n[i] - n[1]);
  ratio.canonicalize();
  return ratio;
}

std::vector<Rational> herzog_kuhl_residuals(const BettiDiagram& b, int codim) {
  std::vector<Rational> residuals(static_cast<std::size_t>(std::max(codim, 0)));
  for (const auto& [key, v] : b.entries()) {
    const auto [i, j] = key;
    Rational power = 1;
    for (int t = 0; t < codim; ++t) {
      residuals[static_cast<std::size_t>(t)] += (i % 2 == 0 ? v : Rational(-v)) * power;
      power *= j;
    }
  }
  return residuals;
}

BettiDiagram BSDecomposition::recompose() const {
  BettiDiagram out;
  for (const BSPart& p : parts) out = out + pure_diagram(p.sequence).scaled(p.coefficient);
  return out;
}

std::string BSDecomposition::to_string() const {
  std::ostringstream out;
  for (const BSPart& p : parts) out << torank::to_string(p.coefficient) << " * pi" << p.sequence.to_string() << "\n";
  return out.str();
}

BSDecomposition bs_decompose(const BettiDiagram& b, int codim) {
  for (const auto& [key, v] : b.entries()) {
    if (key.first > codim) throw NotInCone("entry in column " + std::to_string(key.first) + " beyond codimension " + std::to_string(codim));
    if (v < 0) throw NotInCone("negative entry at (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
  }

  BSDecomposition out;
  BettiDiagram rest = b;
  const std::size_t max_steps = b.entries().size();
  while (!rest.empty()) {
    if (out.parts.size() >= max_steps) throw NotInCone("greedy decomposition did not terminate");
    std::vector<int> degrees;
    int last = rest.max_column();
    for (int i = 0; i <= last; ++i) {
      std::optional<int> lowest;
      for (const auto& [key, v] : rest.entries()) {
        if (key.first == i) {
          lowest = key.second;
          break;  // entries are ordered by (i, j)
        }
      }
      if (!lowest) {
        throw NotInCone("column " + std::to_string(i) + " is empty while column " + std::to_string(last) +
                        " is not; remaining diagram:\n" + rest.to_lines());
      }
      if (!degrees.empty() && *lowest <= degrees.back()) {
        throw NotInCone("lowest degrees are not strictly increasing; remaining diagram:\n" + rest.to_lines());
      }
      degrees.push_back(*lowest);
    }
    const DegreeSequence d(degrees);
    const BettiDiagram pi = pure_diagram(d);
    Rational q = -1;
    for (int i = 0; i < d.size(); ++i) {
      const Rational ratio = rest.at(i, d[i]) / pi.at(i, d[i]);
      if (q < 0 || ratio < q) q = ratio;
    }
    rest = rest - pi.scaled(q);
    out.parts.push_back({q, d});
  }
  return out;
}

MinRatio min_ratio_over_sequences(int top_degree, int num_vars) {
  if (top_degree < 0 || num_vars < 1) throw Error("min_ratio_over_sequences needs N >= 0 and r >= 1");
  std::vector<int> d{0, 1};
  for (int i = 2; i <= num_vars; ++i) d.push_back(top_degree + i);
  DegreeSequence seq(std::move(d));
  return {hk_ratio(seq), seq};
}

}  // namespace torank
