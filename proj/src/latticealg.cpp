#include "bhk/latticealg.hpp"

#include <algorithm>
#include <utility>

namespace bhk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateMonomial: return "DuplicateMonomial";
    case ErrorKind::CoefficientUnsupported: return "CoefficientUnsupported";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::SingularExponentMatrix: return "SingularExponentMatrix";
    case ErrorKind::NotInvertibleNondegenerate: return "NotInvertibleNondegenerate";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::InfiniteQuotient: return "InfiniteQuotient";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::NotInAmbient: return "NotInAmbient";
    case ErrorKind::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::NotCalabiYauType: return "NotCalabiYauType";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::SetupMismatch: return "SetupMismatch";
    case ErrorKind::ProbeFailure: return "ProbeFailure";
    case ErrorKind::EnumerationCap: return "EnumerationCap";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

Integer gcd_of(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Integer lcm_of_denominators(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

// ---------------------------------------------------------------------------
// AbelianInvariants

AbelianInvariants::AbelianInvariants(std::vector<Integer> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw Error(ErrorKind::InvalidArgument, "invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw Error(ErrorKind::InvalidArgument, "invariant factors must form a divisibility chain");
  }
}

Integer AbelianInvariants::order() const {
  Integer o = 1;
  for (const auto& f : factors_) o *= f;
  return o;
}

Integer AbelianInvariants::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

std::string AbelianInvariants::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ",";
    s += factors_[i].get_str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Row operations shared by the normal forms

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntegerMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// row_dst += k * row_src
void add_row_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void add_col_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

// (row_a, row_b) <- (x*row_a + y*row_b, p*row_a + q*row_b), with x*q - y*p = 1.
void mix_rows(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& x, const Integer& y,
              const Integer& p, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer ra = x * m(a, j) + y * m(b, j);
    Integer rb = p * m(a, j) + q * m(b, j);
    m(a, j) = std::move(ra);
    m(b, j) = std::move(rb);
  }
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  const std::size_t rows = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        swap_rows(h, r, i);
        swap_rows(u, r, i);
        continue;
      }
      if (h(i, c) % h(r, c) == 0) {
        Integer k = -(h(i, c) / h(r, c));
        add_row_multiple(h, i, r, k);
        add_row_multiple(u, i, r, k);
        continue;
      }
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h(r, c).get_mpz_t(), h(i, c).get_mpz_t());
      Integer p = -(h(i, c) / g);
      Integer q = h(r, c) / g;
      mix_rows(h, r, i, x, y, p, q);
      mix_rows(u, r, i, x, y, p, q);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer k;
      mpz_fdiv_q(k.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (k == 0) continue;
      k = -k;
      add_row_multiple(h, i, r, k);
      add_row_multiple(u, i, r, k);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  IntegerMatrix d = m;
  IntegerMatrix left = IntegerMatrix::identity(m.rows());
  IntegerMatrix right = IntegerMatrix::identity(m.cols());
  const std::size_t rows = d.rows(), cols = d.cols();
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto move_min_to_pivot = [&](bool whole_block) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (d(i, j) == 0) continue;
          if (bi == rows || abs(d(i, j)) < abs(d(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) return false;
      swap_rows(d, t, bi);
      swap_rows(left, t, bi);
      swap_cols(d, t, bj);
      swap_cols(right, t, bj);
      return true;
    };

    if (!move_min_to_pivot(true)) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer k;
        mpz_tdiv_q(k.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        k = -k;
        add_row_multiple(d, i, t, k);
        add_row_multiple(left, i, t, k);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer k;
        mpz_tdiv_q(k.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        k = -k;
        add_col_multiple(d, j, t, k);
        add_col_multiple(right, j, t, k);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot(false);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row and retry.
      bool folded = false;
      for (std::size_t i = t + 1; i < rows && !folded; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row_multiple(d, t, i, 1);
            add_row_multiple(left, t, i, 1);
            folded = true;
            break;
          }
      if (!folded) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(left, t);
    }
  }

  std::vector<Integer> factors;
  for (std::size_t t = 0; t < diag; ++t)
    if (d(t, t) > 1) factors.push_back(d(t, t));
  return {std::move(d), AbelianInvariants(std::move(factors)), std::move(left), std::move(right)};
}

Integer determinant(const IntegerMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// LatticeBasis

LatticeBasis LatticeBasis::from_generators(std::size_t ambient_rank, const std::vector<IntVector>& gens) {
  LatticeBasis l(ambient_rank);
  if (gens.empty()) return l;
  IntegerMatrix g = IntegerMatrix::from_rows(gens, ambient_rank);
  HermiteForm hf = hermite_normal_form(g);
  for (std::size_t i = 0; i < hf.h.rows(); ++i) {
    IntVector row = hf.h.row(i);
    auto pivot = std::find_if(row.begin(), row.end(), [](const Integer& x) { return x != 0; });
    if (pivot == row.end()) break;
    l.pivots_.push_back(static_cast<std::size_t>(pivot - row.begin()));
    l.basis_.push_back(std::move(row));
  }
  return l;
}

LatticeBasis LatticeBasis::standard(std::size_t n) {
  std::vector<IntVector> gens(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) gens[i][i] = 1;
  return from_generators(n, gens);
}

IntegerMatrix LatticeBasis::matrix() const { return IntegerMatrix::from_rows(basis_, ambient_rank_); }

std::optional<IntVector> LatticeBasis::coordinates(std::span<const Integer> v) const {
  if (v.size() != ambient_rank_) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
  IntVector rest(v.begin(), v.end());
  IntVector coords(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t p = pivots_[k];
    // Entries left of this pivot are already cleared by the echelon shape.
    if (rest[p] % basis_[k][p] != 0) return std::nullopt;
    coords[k] = rest[p] / basis_[k][p];
    if (coords[k] == 0) continue;
    for (std::size_t j = p; j < ambient_rank_; ++j) rest[j] -= coords[k] * basis_[k][j];
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

bool LatticeBasis::contains(const LatticeBasis& other) const {
  if (other.ambient_rank_ != ambient_rank_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const IntVector& v) { return contains(v); });
}

IntVector LatticeBasis::combine(std::span<const Integer> coords) const {
  if (coords.size() != basis_.size()) throw Error(ErrorKind::InvalidArgument, "coordinate length mismatch");
  IntVector v(ambient_rank_);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (std::size_t j = 0; j < ambient_rank_; ++j) v[j] += coords[k] * basis_[k][j];
  return v;
}

// ---------------------------------------------------------------------------
// Kernels and quotients

LatticeBasis kernel_lattice(const IntegerMatrix& m) {
  // Rows of u that annihilate m^T span the integer kernel; u is unimodular so
  // the span is saturated.
  HermiteForm hf = hermite_normal_form(m.transposed());
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < hf.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < hf.h.cols(); ++j)
      if (hf.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) gens.push_back(hf.u.row(i));
  }
  return LatticeBasis::from_generators(m.cols(), gens);
}

LatticeBasis kernel_lattice(const RationalMatrix& m) {
  IntegerMatrix scaled(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatVector row = m.row(i);
    Integer l = lcm_of_denominators(row);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational x = row[j] * l;
      scaled(i, j) = x.get_num();
    }
  }
  return kernel_lattice(scaled);
}

QuotientPresentation quotient_presentation(const LatticeBasis& ambient, const LatticeBasis& sub) {
  if (ambient.ambient_rank() != sub.ambient_rank())
    throw Error(ErrorKind::InvalidArgument, "lattices live in different spaces");
  std::vector<IntVector> coords;
  for (const auto& v : sub.basis()) {
    auto c = ambient.coordinates(v);
    if (!c) throw Error(ErrorKind::NotASublattice, "sublattice vector is not in the ambient lattice");
    coords.push_back(std::move(*c));
  }
  if (sub.rank() != ambient.rank())
    throw Error(ErrorKind::InfiniteQuotient, "ranks differ (" + std::to_string(ambient.rank()) + " vs " +
                                                 std::to_string(sub.rank()) + ")");
  QuotientPresentation out;
  if (ambient.rank() == 0) return out;

  // left * X * right = D with X the coordinate matrix of sub. The rows of
  // right^{-1} form an ambient basis f_k such that sub = span(d_k f_k).
  IntegerMatrix x = IntegerMatrix::from_rows(coords, ambient.rank());
  SmithForm sf = smith_normal_form(x);
  RationalMatrix right_inv = inverse(to_rational(sf.right));
  const std::size_t r = ambient.rank();
  for (std::size_t k = 0; k < r; ++k) {
    if (sf.d(k, k) <= 1) continue;
    IntVector c(r);
    for (std::size_t j = 0; j < r; ++j) c[j] = right_inv(k, j).get_num();
    out.generators.push_back(ambient.combine(c));
  }
  out.invariants = sf.invariants;
  return out;
}

AbelianInvariants lattice_quotient(const LatticeBasis& ambient, const LatticeBasis& sub) {
  return quotient_presentation(ambient, sub).invariants;
}

bool is_primitive(std::span<const Integer> v, const LatticeBasis& l) {
  auto coords = l.coordinates(v);
  if (!coords) throw Error(ErrorKind::NotInLattice, "vector is not in the lattice");
  return gcd_of(*coords) == 1;
}

// ---------------------------------------------------------------------------
// Rational solves

RatVector solve_rational(const RationalMatrix& m, std::span<const Rational> b) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "solve_rational needs a square matrix");
  if (b.size() != m.rows()) throw Error(ErrorKind::InvalidArgument, "right-hand side length mismatch");
  const std::size_t n = m.rows();
  RationalMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n) = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(a(p, j), a(c, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j <= n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a(i, n) / a(i, i);
  return x;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n);
    e[j] = 1;
    RatVector x = solve_rational(m, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  return inv;
}

}  // namespace bhk
