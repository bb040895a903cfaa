#include "torank/bounds.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace torank {

namespace {

Rational power_of_two(int e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return Rational(p);
}

Rational fraction(long num, long den) { return canonical(Rational(num, den)); }

/// Minimizes f over k = 0..upper, recording the smallest argmin and all ties.
BoundEntry sweep(const std::string& name, int upper, const std::function<Rational(int)>& f) {
  BoundEntry e;
  e.name = name;
  e.applicable = true;
  for (int k = 0; k <= upper; ++k) {
    const Rational v = f(k);
    if (!e.argmin_k || v < e.exact) {
      e.exact = v;
      e.argmin_k = k;
      e.tied_k = {k};
    } else if (v == e.exact) {
      e.tied_k.push_back(k);
    }
  }
  e.value = ceil(e.exact);
  return e;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw NotApplicable(message);
}

BoundEntry not_applicable(const std::string& name, const std::string& why) {
  BoundEntry e;
  e.name = name;
  e.note = why;
  return e;
}

}  // namespace

ClassicalBounds classical_bounds(int r) {
  require(r >= 1, "the torus rank must be at least 1");
  ClassicalBounds c;
  c.hybrid = r <= 2 ? 2 * r : 2 * (r + 1);
  c.amann = 2 * (r + r / 3);
  c.trc_target = Integer(power_of_two(r));
  return c;
}

Integer four_rank_bound(int r) { return 4 * std::max(r, 0); }

BoundEntry betti_sweep_bound(int n, int r, int b) {
  require(r >= 1 && r <= n, "needs 1 <= r <= n (otherwise no almost free action exists)");
  require(b >= 0, "needs b >= 0");
  const Rational ratio = fraction(n + r - 1, n - r + 1);
  return sweep("betti_sweep", b, [&](int k) -> Rational { return ratio * 2 * k + power_of_two(b - k); });
}

BoundEntry low_degree_bound(int n, int r, int l) {
  require(r >= 1 && r <= n, "needs 1 <= r <= n (otherwise no almost free action exists)");
  require(l >= 1, "needs l >= 1");
  BoundEntry e;
  e.name = "low_degree";
  e.applicable = true;
  e.exact = fraction(n + r - 1, n - r + 1) * 2 * l;
  e.value = ceil(e.exact);
  return e;
}

BoundEntry csymplectic_sweep_bound(int n, int r) {
  require(n >= 1 && r >= 1 && r <= 2 * n, "needs 1 <= r <= 2n");
  const Rational ratio = fraction(2 * n + r - 1, 2 * n - r + 1);
  return sweep("csymplectic_sweep", r, [&](int k) -> Rational { return ratio * 2 * k + power_of_two(r - k); });
}

Rational ratio_product(int n, int r, int d1) {
  require(r >= 1, "needs r >= 1");
  require(2 * d1 < 2 * n - r + 3, "needs d1 < (2n-r+3)/2");
  Rational product = 1;
  for (int i = 2; i <= r; ++i) {
    const int top = 2 * n - r - 1 + 2 * i;
    product *= fraction(top, top - 2 * d1);
  }
  return product;
}

Integer binomial(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

BoundEntry binomial_bound(int n, int r) {
  const bool odd = n % 2 == 1;
  require(n >= 1, "needs n >= 1");
  require(odd ? (r >= n + 1 && r <= 2 * n) : (r >= n && r <= 2 * n),
          odd ? "needs n+1 <= r <= 2n for odd n" : "needs n <= r <= 2n for even n");
  const Rational s1 = ratio_product(n, r, 1);
  return sweep("csymplectic_binomial", r, [&](int k) -> Rational {
    Rational v = s1 * 4 * k;
    const int top = odd ? (n - 1) / 2 : (n - 2) / 2;
    for (int i = 0; i <= top; ++i) v += 4 * Rational(binomial(r - k, 2 * i));
    if (!odd) v += 2 * Rational(binomial(r - k, n));
    return v;
  });
}

BoundEntry crossing_bound(int n, int r) {
  const bool odd = n % 2 == 1;
  require(n >= 1 && r >= 1, "needs n >= 1 and r >= 1");
  require(odd ? r <= n : r <= n - 1, odd ? "needs r <= n for odd n" : "needs r <= n-1 for even n");
  const Rational s1 = ratio_product(n, r, 1);
  const Rational s_high = ratio_product(n, r, n / 2 + 1);

  BoundEntry e;
  e.name = "csymplectic_crossing";
  e.applicable = true;
  for (int k = 0; k <= r; ++k) {
    // B1(g) = a1 + m1 g (nondecreasing), B2(g) = a2 - m2 g (decreasing).
    const Rational a1 = 2 * s1 * k + power_of_two(r - k);
    const Rational m1 = 2 * s_high - 2 * s1;
    const Rational a2 = 4 * s1 * k + power_of_two(r - k + 1);
    const Rational m2 = 4 * s1;
    auto value_at = [&](const Rational& g) -> Rational { return std::max<Rational>(a1 + m1 * g, a2 - m2 * g); };

    Rational gamma = 0;
    if (a1 < a2 && k > 0) {
      gamma = canonical((a2 - a1) / (m1 + m2));
      if (gamma > k) gamma = k;
    }
    const Rational v = value_at(gamma);
    if (!e.argmin_k || v < e.exact) {
      e.exact = v;
      e.argmin_k = k;
      e.tied_k = {k};
      e.argmin_gamma = gamma;
    } else if (v == e.exact) {
      e.tied_k.push_back(k);
    }
  }
  e.value = ceil(e.exact);
  return e;
}

BoundEntry csymplectic_rank_bound(int n, int r) {
  const bool low = n % 2 == 1 ? r <= n : r <= n - 1;
  return low ? crossing_bound(n, r) : binomial_bound(n, r);
}

bool ratio_product_doubles(int n, int r) {
  require(n >= 4 && n % 2 == 0, "needs n even and n >= 4");
  require(r >= 3 && r <= n + 1, "needs 3 <= r <= n+1");
  return ratio_product(n, r, n / 2) >= 2 * ratio_product(n, r, 1);
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  auto it = std::find_if(entries.begin(), entries.end(), [&](const BoundEntry& e) { return e.name == name; });
  return it == entries.end() ? nullptr : &*it;
}

BoundReport best_bound(const BoundInputs& in) {
  if (in.r < 1) throw Error("the torus rank must be at least 1");
  if (in.n < 1) throw Error("n must be at least 1");
  const int fd = in.csymplectic ? 2 * in.n : in.n;
  if (in.r > fd) throw Error("r exceeds the formal dimension, so no almost free action exists");
  if (in.b && *in.b < 0) throw Error("b must be nonnegative");
  if (in.l && *in.l < 1) throw Error("l must be at least 1");
  if (in.csymplectic && in.b && *in.b < in.r) {
    throw Error("inconsistent inputs: an almost free T^r action on a c-symplectic space forces b >= r");
  }

  BoundReport report;
  report.inputs = in;
  const ClassicalBounds c = classical_bounds(in.r);
  report.trc_target = c.trc_target;

  auto add_value = [&](const std::string& name, const Integer& v, const std::string& note = {}) {
    BoundEntry e;
    e.name = name;
    e.applicable = true;
    e.exact = Rational(v);
    e.value = v;
    e.note = note;
    report.entries.push_back(e);
  };
  auto add = [&](const std::string& name, const std::function<BoundEntry()>& compute) {
    try {
      report.entries.push_back(compute());
    } catch (const NotApplicable& e) {
      report.entries.push_back(not_applicable(name, e.what()));
    }
  };

  add_value("hybrid", c.hybrid);
  add_value("amann", c.amann);
  if (in.r >= fd - 1) {
    add_value("exterior_algebra", c.trc_target, "r >= fd-1");
  } else {
    report.entries.push_back(not_applicable("exterior_algebra", "needs r >= fd-1"));
  }
  if (in.csymplectic) {
    if (fd >= 4) {
      add_value("four_rank", four_rank_bound(in.r));
    } else {
      report.entries.push_back(not_applicable("four_rank", "needs formal dimension >= 4"));
    }
  }
  if (in.b) add("betti_sweep", [&] { return betti_sweep_bound(fd, in.r, *in.b); });
  if (in.l) add("low_degree", [&] { return low_degree_bound(fd, in.r, *in.l); });
  if (in.csymplectic) {
    add("csymplectic_sweep", [&] { return csymplectic_sweep_bound(in.n, in.r); });
    add("csymplectic_binomial", [&] { return binomial_bound(in.n, in.r); });
    add("csymplectic_crossing", [&] { return crossing_bound(in.n, in.r); });
  }

  bool first = true;
  for (const BoundEntry& e : report.entries) {
    if (!e.applicable) continue;
    if (first || e.value > report.best) {
      report.best = e.value;
      report.best_name = e.name;
      first = false;
    }
  }
  report.meets_trc = report.best >= report.trc_target;
  return report;
}

TableData compute_table(PaperTable which) {
  TableData t;
  switch (which) {
    case PaperTable::betti_sweep:
    case PaperTable::low_degree: {
      t.row_key = which == PaperTable::betti_sweep ? "b" : "l";
      t.row_values = {4, 6, 10};
      t.max_r = 10;
      for (int param : t.row_values) {
        std::vector<std::optional<Integer>> row;
        for (int r = 1; r <= t.max_r; ++r) {
          const BoundEntry e = which == PaperTable::betti_sweep ? betti_sweep_bound(10, r, param) : low_degree_bound(10, r, param);
          row.emplace_back(e.value);
        }
        t.cells.push_back(std::move(row));
      }
      break;
    }
    case PaperTable::csymplectic: {
      t.row_key = "n";
      t.row_values = {2, 3, 4, 5};
      t.max_r = 10;
      for (int n : t.row_values) {
        std::vector<std::optional<Integer>> row;
        for (int r = 1; r <= t.max_r; ++r) {
          if (r <= 2 * n) {
            row.emplace_back(csymplectic_rank_bound(n, r).value);
          } else {
            row.emplace_back(std::nullopt);
          }
        }
        t.cells.push_back(std::move(row));
      }
      break;
    }
  }
  return t;
}

std::string render_table(PaperTable which) {
  const TableData t = compute_table(which);
  std::vector<std::string> labels{"r"};
  for (int v : t.row_values) labels.push_back(t.row_key + "=" + std::to_string(v));
  std::size_t label_width = 0;
  for (const auto& s : labels) label_width = std::max(label_width, s.size());

  std::vector<std::size_t> width(static_cast<std::size_t>(t.max_r), 0);
  for (int r = 1; r <= t.max_r; ++r) width[static_cast<std::size_t>(r - 1)] = std::to_string(r).size();
  for (const auto& row : t.cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c]) width[c] = std::max(width[c], row[c]->get_str().size());
    }
  }

  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
  auto left = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream out;
  out << left("r", label_width) << " |";
  for (int r = 1; r <= t.max_r; ++r) out << " " << pad(std::to_string(r), width[static_cast<std::size_t>(r - 1)]);
  out << "\n";
  std::size_t total = 0;
  for (std::size_t w : width) total += w + 1;
  out << std::string(label_width + 1, '-') << "+" << std::string(total, '-') << "\n";
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    std::string line = left(labels[i + 1], label_width) + " |";
    for (std::size_t c = 0; c < t.cells[i].size(); ++c) {
      line += " " + pad(t.cells[i][c] ? t.cells[i][c]->get_str() : "", width[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

std::vector<TrcAuditRow> trc_audit(int nmax) {
  std::vector<TrcAuditRow> rows;
  for (int n = 1; n <= nmax; ++n) {
    for (int r = 1; r <= 2 * n; ++r) {
      BoundInputs in;
      in.n = n;
      in.r = r;
      in.csymplectic = true;
      const BoundReport rep = best_bound(in);
      rows.push_back({n, r, rep.best, rep.best_name, rep.trc_target, rep.meets_trc});
    }
  }
  return rows;
}

}  // namespace torank
