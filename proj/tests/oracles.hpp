#pragma once

// Slow, independent reference computations used to cross-check the library.
// They share no code with src/ beyond the basic GMP types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "bhk/latticealg.hpp"

namespace oracle {

using bhk::Integer;
using bhk::IntegerMatrix;
using bhk::Rational;

inline Integer cofactor_det(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    Integer term = m(0, j) * cofactor_det(minor);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Invariant factors (> 1) of coker(m) from gcds of k x k minors; also
/// returns the rank through `rank`.
inline std::vector<Integer> minors_invariants(const IntegerMatrix& m, std::size_t* rank = nullptr) {
  std::vector<Integer> dk{1};
  const std::size_t r = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    subsets(m.rows(), k, rows);
    subsets(m.cols(), k, cols);
    Integer g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        IntegerMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rs[a], cs[b]);
        Integer d = cofactor_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    dk.push_back(g);
  }
  if (rank) *rank = dk.size() - 1;
  std::vector<Integer> inv;
  for (std::size_t k = 1; k < dk.size(); ++k) {
    Integer f = dk[k] / dk[k - 1];
    if (f != 1) inv.push_back(f);
  }
  return inv;
}

/// Phase vectors as integer residues mod `modulus`.
using Residues = std::vector<long>;

inline std::set<Residues> closure(const std::vector<Residues>& gens, long modulus, std::size_t n) {
  std::set<Residues> seen{Residues(n, 0)};
  std::vector<Residues> frontier{Residues(n, 0)};
  while (!frontier.empty()) {
    std::vector<Residues> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Residues y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] + g[i]) % modulus;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline Residues to_residues(const std::vector<Rational>& phases, long modulus) {
  Residues r;
  for (const auto& x : phases) {
    Rational y = x * modulus;
    if (y.get_den() != 1) throw std::logic_error("phase not a multiple of 1/modulus");
    long v = Integer(y.get_num()).get_si() % modulus;
    r.push_back(v < 0 ? v + modulus : v);
  }
  return r;
}

/// Adjugate of an integer matrix (adj * m == det * I), through cofactors.
inline IntegerMatrix adjugate(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  IntegerMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntegerMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer d = cofactor_det(minor);
      adj(j, i) = (i + j) % 2 ? Integer(-d) : d;
    }
  return adj;
}

/// |G^T| straight from the definition: count h in Aut(W^T) such that the
/// monomial exponent s = h E is invariant under every generator of G.
/// Group generators are residues mod |det E|.
inline std::size_t dual_order_brute_force(const IntegerMatrix& e, const std::vector<Residues>& g_gens) {
  const std::size_t n = e.rows();
  const Integer det = cofactor_det(e);
  const long big_d = Integer(abs(det)).get_si();
  const IntegerMatrix adj = adjugate(e);
  // Aut(W^T) is generated by the rows of E^{-1} = adj / det.
  std::vector<Residues> gens;
  for (std::size_t r = 0; r < n; ++r) {
    Residues v(n);
    for (std::size_t c = 0; c < n; ++c) {
      Integer x = adj(r, c) * (det > 0 ? 1 : -1);
      long y = Integer(x % big_d).get_si();
      v[c] = y < 0 ? y + big_d : y;
    }
    gens.push_back(v);
  }
  std::size_t count = 0;
  for (const auto& h : closure(gens, big_d, n)) {
    // s = h E, with h = residues / D; s is integral.
    std::vector<Integer> s(n);
    for (std::size_t j = 0; j < n; ++j) {
      Integer acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += Integer(h[i]) * e(i, j);
      if (acc % big_d != 0) throw std::logic_error("h E is not integral");
      s[j] = acc / big_d;
    }
    bool invariant = true;
    for (const auto& g : g_gens) {
      Integer acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += s[i] * g[i];
      if (acc % big_d != 0) invariant = false;
    }
    if (invariant) ++count;
  }
  return count;
}

}  // namespace oracle
