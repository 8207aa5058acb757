#pragma once

// Smith normal form over Q[t] by elementary operations, on a dense
// coefficient-vector polynomial type that shares nothing with the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace snf_oracle {

/// Coefficients low to high, no trailing zeros; empty means zero.
struct UPoly {
  std::vector<mpq_class> c;

  bool zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};

inline UPoly add(const UPoly& a, const UPoly& b, const mpq_class& s = 1) {
  UPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += s * b.c[i];
  r.trim();
  return r;
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
  UPoly r;
  if (a.zero() || b.zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

/// a = q*b + r with deg r < deg b.
inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  UPoly q;
  if (a.degree() >= b.degree()) q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  while (!a.zero() && a.degree() >= b.degree()) {
    const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
    mpq_class f = a.c.back() / b.c.back();
    q.c[shift] += f;
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i + shift] -= f * b.c[i];
    a.trim();
  }
  q.trim();
  return {q, a};
}

inline UPoly monic(UPoly a) {
  if (a.zero()) return a;
  mpq_class lead = a.c.back();
  for (auto& x : a.c) x /= lead;
  return a;
}

using Matrix = std::vector<std::vector<UPoly>>;

/// Monic invariant factors (nonzero ones only), in divisibility order.
inline std::vector<UPoly> invariant_factors(Matrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<UPoly> out;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    while (true) {
      // move an entry of least degree to (k, k)
      long best = -1;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (!a[i][j].zero() && (best < 0 || a[i][j].degree() < best)) {
            best = a[i][j].degree();
            bi = i;
            bj = j;
          }
      if (best < 0) return out;
      std::swap(a[k], a[bi]);
      for (auto& row : a) std::swap(row[k], row[bj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k].zero()) continue;
        UPoly q = divmod(a[i][k], a[k][k]).first;
        for (std::size_t j = k; j < cols; ++j) a[i][j] = add(a[i][j], mul(q, a[k][j]), -1);
        if (!a[i][k].zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j].zero()) continue;
        UPoly q = divmod(a[k][j], a[k][k]).first;
        for (std::size_t i = k; i < rows; ++i) a[i][j] = add(a[i][j], mul(q, a[i][k]), -1);
        if (!a[k][j].zero()) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the rest; otherwise fold an offending row in
      bool divides = true;
      for (std::size_t i = k + 1; i < rows && divides; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (!divmod(a[i][j], a[k][k]).second.zero()) {
            for (std::size_t l = k; l < cols; ++l) a[k][l] = add(a[k][l], a[i][l]);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(monic(a[k][k]));
  }
  return out;
}

}  // namespace snf_oracle
