#include "ksw/fourier_motzkin.hpp"

#include <algorithm>
#include <stdexcept>

namespace ksw {

namespace {

struct Combo {
  RationalRow coeffs;          // current coefficients over all variables
  std::vector<Rational> mult;  // multipliers over the original rows
  std::vector<bool> support;
};

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && !b[k]) return false;
  return true;
}

// Scale so the first nonzero coefficient (or multiplier) has magnitude one.
void normalize(Combo& c) {
  Rational pivot = 0;
  for (const auto& v : c.coeffs)
    if (v != 0) {
      pivot = abs(v);
      break;
    }
  if (pivot == 0)
    for (const auto& v : c.mult)
      if (v != 0) {
        pivot = v;
        break;
      }
  if (pivot == 0) return;
  for (auto& v : c.coeffs) v /= pivot;
  for (auto& v : c.mult) v /= pivot;
}

// Drop rows whose support strictly contains another's, and duplicate supports.
std::vector<Combo> prune(std::vector<Combo> rows) {
  std::vector<Combo> out;
  std::vector<bool> dropped(rows.size(), false);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (dropped[a]) continue;
    for (std::size_t b = 0; b < rows.size(); ++b) {
      if (a == b || dropped[b]) continue;
      if (subset(rows[b].support, rows[a].support) && (rows[b].support != rows[a].support || b < a)) {
        dropped[a] = true;
        break;
      }
    }
  }
  for (std::size_t a = 0; a < rows.size(); ++a)
    if (!dropped[a]) out.push_back(std::move(rows[a]));
  return out;
}

}  // namespace

StrictFeasibility solve_strict_homogeneous(const std::vector<RationalRow>& rows, std::size_t num_vars) {
  const std::size_t m = rows.size();
  std::vector<Combo> current;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != num_vars) throw std::invalid_argument("solve_strict_homogeneous: row length mismatch");
    Combo c{rows[i], std::vector<Rational>(m, Rational(0)), std::vector<bool>(m, false)};
    c.mult[i] = 1;
    c.support[i] = true;
    current.push_back(std::move(c));
  }
  StrictFeasibility out;
  // stages[k] holds the system before eliminating variable k.
  std::vector<std::vector<Combo>> stages;
  for (std::size_t k = 0; k <= num_vars; ++k) {
    // Any row with no variables left reads 0 > 0.
    for (const auto& c : current) {
      bool zero = std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& v) { return v == 0; });
      if (zero) {
        out.certificate = c.mult;
        return out;
      }
    }
    if (k == num_vars) break;
    stages.push_back(current);
    std::vector<Combo> pos, neg, next;
    for (auto& c : current) {
      if (c.coeffs[k] > 0)
        pos.push_back(c);
      else if (c.coeffs[k] < 0)
        neg.push_back(c);
      else
        next.push_back(c);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational a = -q.coeffs[k], b = p.coeffs[k];
        Combo c{RationalRow(num_vars), std::vector<Rational>(m), std::vector<bool>(m)};
        for (std::size_t v = 0; v < num_vars; ++v) c.coeffs[v] = a * p.coeffs[v] + b * q.coeffs[v];
        c.coeffs[k] = 0;
        for (std::size_t i = 0; i < m; ++i) {
          c.mult[i] = a * p.mult[i] + b * q.mult[i];
          c.support[i] = p.support[i] || q.support[i];
        }
        normalize(c);
        next.push_back(std::move(c));
      }
    current = prune(std::move(next));
  }
  // Feasible: back-substitute from the last variable.
  std::vector<Rational> x(num_vars, Rational(0));
  for (std::size_t kk = num_vars; kk-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& c : stages[kk]) {
      Rational ck = c.coeffs[kk];
      if (ck == 0) continue;
      Rational rest = 0;
      for (std::size_t v = kk + 1; v < num_vars; ++v) rest += c.coeffs[v] * x[v];
      Rational bound = -rest / ck;
      if (ck > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi)
      x[kk] = (*lo + *hi) / 2;
    else if (lo)
      x[kk] = *lo + 1;
    else if (hi)
      x[kk] = *hi - 1;
    else
      x[kk] = 0;
  }
  out.feasible = true;
  out.solution = x;
  return out;
}

bool verify_certificate(const std::vector<RationalRow>& rows, const std::vector<Rational>& y) {
  if (y.size() != rows.size()) return false;
  bool nonzero = false;
  for (const auto& v : y) {
    if (v < 0) return false;
    nonzero = nonzero || v != 0;
  }
  if (!nonzero || rows.empty()) return false;
  for (std::size_t k = 0; k < rows.front().size(); ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) s += y[i] * rows[i][k];
    if (s != 0) return false;
  }
  return true;
}

bool verify_solution(const std::vector<RationalRow>& rows, const std::vector<Rational>& x) {
  for (const auto& r : rows) {
    if (r.size() != x.size()) return false;
    Rational s = 0;
    for (std::size_t k = 0; k < r.size(); ++k) s += r[k] * x[k];
    if (s <= 0) return false;
  }
  return true;
}

}  // namespace ksw
