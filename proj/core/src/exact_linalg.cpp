#include "algparity/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace algparity {

// ---------------------------------------------------------------------------
// integer helpers

long ord_p(const Integer& value, const Integer& p) {
  if (value == 0) throw InvalidInstance("ord_p: valuation of zero");
  if (p < 2) throw InvalidInstance("ord_p: modulus must be >= 2");
  Integer v = value;
  long count = 0;
  while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    ++count;
  }
  return count;
}

long ord_p(const Rational& value, const Integer& p) {
  return ord_p(Integer(value.get_num()), p) - ord_p(Integer(value.get_den()), p);
}

Integer abs(const Integer& value) { return value < 0 ? Integer(-value) : value; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Integer mod(const Integer& value, const Integer& modulus) {
  Integer r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

bool is_probable_prime(const Integer& value) {
  return value >= 2 && mpz_probab_prime_p(value.get_mpz_t(), 30) > 0;
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("malformed integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw ParseError("malformed integer literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view num, std::string_view den) {
  Integer n = parse_integer(num);
  Integer d = parse_integer(den);
  if (d == 0) throw ParseError("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(10); }
std::string to_string(const Rational& value) { return value.get_str(10); }

std::string abbreviate(const Integer& value) {
  static const Integer kInlineLimit("1000000000000");
  if (abs(value) <= kInlineLimit) return value.get_str();
  std::string digits = abs(value).get_str();
  std::ostringstream out;
  if (value < 0) out << '-';
  out << digits.substr(0, 6) << "..." << digits.substr(digits.size() - 3) << " (" << digits.size()
      << " digits)";
  return out.str();
}

std::string abbreviate(const Rational& value) {
  if (value.get_den() == 1) return abbreviate(Integer(value.get_num()));
  return abbreviate(Integer(value.get_num())) + "/" + abbreviate(Integer(value.get_den()));
}

SquareClass::SquareClass(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ == 0) throw InvalidInstance("square class of zero");
}

namespace {

// Squarefree part of a positive integer.
Integer squarefree_part(Integer n) {
  Integer result = 1;
  for (unsigned long q = 2; q <= 1000000UL; ++q) {
    if (n == 1) break;
    Integer qq = q;
    if (qq * qq > n) break;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
      ++e;
    }
    if (e % 2 == 1) result *= q;
  }
  if (n == 1) return result;
  if (mpz_perfect_square_p(n.get_mpz_t())) return result;
  Integer bound("1000000");
  // Cofactor has no prime factor <= 10^6. It is squarefree if prime, or if it
  // is below 10^18 (then it has at most two prime factors, which are distinct
  // since it is not a square).
  if (is_probable_prime(n) || n < bound * bound * bound) return result * n;
  throw TooLarge("squarefree part: cofactor " + abbreviate(n) + " too large to factor");
}

}  // namespace

Integer SquareClass::squarefree_representative() const {
  Integer prod = Integer(value_.get_num()) * Integer(value_.get_den());
  Integer sign = prod < 0 ? -1 : 1;
  return sign * squarefree_part(abs(prod));
}

long SquareClass::ord_p_parity(const Integer& p) const {
  long v = ord_p(value_, p);
  return ((v % 2) + 2) % 2;
}

SquareClass SquareClass::operator*(const SquareClass& other) const { return SquareClass(value_ * other.value_); }

SquareClass SquareClass::inverse() const { return SquareClass(1 / value_); }

bool SquareClass::operator==(const SquareClass& other) const {
  Rational q = value_ / other.value_;
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

// ---------------------------------------------------------------------------
// matrix conversions

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (const auto& v : m.entries()) d = lcm(d, Integer(v.get_den()));
  return d;
}

// ---------------------------------------------------------------------------
// finite abelian groups

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<Integer>& orders) {
  for (const auto& d : orders)
    if (d <= 0) throw InvalidInstance("cyclic order must be positive");
  std::vector<Integer> diag(orders.begin(), orders.end());
  IntMatrix m = IntMatrix::diagonal(diag);
  return cokernel(m).torsion;
}

FiniteAbelianGroup FiniteAbelianGroup::from_invariant_factors(std::vector<Integer> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw InvalidInstance("invariant factor must be >= 2");
    if (i > 0 && !mpz_divisible_p(factors[i].get_mpz_t(), factors[i - 1].get_mpz_t()))
      throw InvalidInstance("invariant factors must form a divisibility chain");
  }
  FiniteAbelianGroup g;
  g.factors_ = std::move(factors);
  return g;
}

Integer FiniteAbelianGroup::order() const {
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

Integer FiniteAbelianGroup::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " + ";
    s += "Z/" + factors_[i].get_str();
  }
  return s;
}

std::string AbelianGroup::to_string() const {
  std::string s;
  if (free_rank > 0) s = "Z^" + std::to_string(free_rank);
  if (!torsion.is_trivial()) {
    if (!s.empty()) s += " + ";
    s += torsion.to_string();
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Elementary operations on A applied in lockstep to U, U^-1, V, V^-1.
class SmithWorkspace {
 public:
  explicit SmithWorkspace(const IntMatrix& a)
      : A(a),
        U(IntMatrix::identity(a.rows())),
        U_inv(IntMatrix::identity(a.rows())),
        V(IntMatrix::identity(a.cols())),
        V_inv(IntMatrix::identity(a.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    U.swap_rows(i, j);
    U_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    V.swap_cols(i, j);
    V_inv.swap_rows(i, j);
  }
  // row i += c * row j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    A.add_row_multiple(i, j, c);
    U.add_row_multiple(i, j, c);
    U_inv.add_col_multiple(j, i, -c);
  }
  // col i += c * col j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    A.add_col_multiple(i, j, c);
    V.add_col_multiple(i, j, c);
    V_inv.add_row_multiple(j, i, -c);
  }
  void negate_row(std::size_t i) {
    A.negate_row(i);
    U.negate_row(i);
    U_inv.negate_col(i);
  }

  IntMatrix A, U, U_inv, V, V_inv;
};

// Nearest-integer quotient keeps remainders at most |b|/2.
Integer rounded_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer twice_r = 2 * abs(r);
  if (twice_r > abs(b)) q += 1;  // floor remainder has the sign of b
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithWorkspace w(a);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Minimal-absolute-value pivot in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (w.A(i, j) == 0) continue;
        if (!best || abs(w.A(i, j)) < abs(w.A(best->first, best->second))) best = {i, j};
      }
    if (!best) break;
    w.swap_rows(t, best->first);
    w.swap_cols(t, best->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.A(i, t) == 0) continue;
        w.add_row(i, t, -rounded_quotient(w.A(i, t), w.A(t, t)));
        if (w.A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.A(t, j) == 0) continue;
        w.add_col(j, t, -rounded_quotient(w.A(t, j), w.A(t, t)));
        if (w.A(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A smaller remainder now sits in row t or column t; promote it.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (w.A(i, t) != 0 && abs(w.A(i, t)) < abs(w.A(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.A(t, j) != 0 && abs(w.A(t, j)) < abs(w.A(bi, bj))) bi = t, bj = j;
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the rest.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < m && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(w.A(i, j).get_mpz_t(), w.A(t, t).get_mpz_t())) {
            offending = i;
            break;
          }
      if (!offending) break;
      w.add_row(t, *offending, Integer(1));
    }
    if (w.A(t, t) < 0) w.negate_row(t);
  }

  SmithForm result;
  result.rank = t;
  result.U = std::move(w.U);
  result.D = std::move(w.A);
  result.V = std::move(w.V);
  result.U_inv = std::move(w.U_inv);
  result.V_inv = std::move(w.V_inv);
  return result;
}

// ---------------------------------------------------------------------------
// determinants, rank, inverse

Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant: matrix not square");
  RatMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      m.swap_rows(k, piv);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      m.add_row_multiple(i, k, -f);
    }
  }
  return det;
}

std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank; }

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("inverse: matrix not square");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return std::nullopt;
    m.swap_rows(k, piv);
    inv.swap_rows(k, piv);
    Rational scale = 1 / m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= scale;
      inv(k, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rational f = -m(i, k);
      m.add_row_multiple(i, k, f);
      inv.add_row_multiple(i, k, f);
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// kernels, cokernels, spans

AbelianGroup cokernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  AbelianGroup g;
  g.free_rank = a.rows() - s.rank;
  std::vector<Integer> nontrivial;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) nontrivial.push_back(s.D(i, i));
  g.torsion = FiniteAbelianGroup::from_invariant_factors(std::move(nontrivial));
  return g;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  // A V = U^-1 D, so the trailing columns of V span the kernel, and they are
  // part of a unimodular basis, hence saturated.
  return s.V.columns(s.rank, a.cols());
}

IntMatrix column_span_basis(const IntMatrix& a) { return LatticeCoordinates(a).basis(); }

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end.
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows; ++i)
        if (m(i, c) != 0 && (!best || abs(m(i, c)) < abs(m(*best, c)))) best = i;
      if (!best) break;
      m.swap_rows(r, *best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        m.add_row_multiple(i, r, -q);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) m.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      m.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  std::vector<std::size_t> keep(r), all_cols(cols);
  for (std::size_t i = 0; i < r; ++i) keep[i] = i;
  for (std::size_t j = 0; j < cols; ++j) all_cols[j] = j;
  return m.submatrix(keep, all_cols);
}

LatticeCoordinates::LatticeCoordinates(const IntMatrix& generators) : smith_(smith_normal_form(generators)) {
  // span(A) = U^-1 D Z^n, so columns d_i * U^-1 e_i (i < rank) form a basis.
  const std::size_t m = generators.rows();
  basis_ = IntMatrix(m, smith_.rank);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < smith_.rank; ++k) basis_(i, k) = smith_.U_inv(i, k) * smith_.D(k, k);
}

std::optional<IntMatrix> LatticeCoordinates::coordinates(const IntMatrix& vectors) const {
  if (vectors.rows() != ambient_dimension()) throw DimensionError("coordinates: ambient dimension mismatch");
  IntMatrix y = smith_.U * vectors;
  IntMatrix coords(smith_.rank, vectors.cols());
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    for (std::size_t i = smith_.rank; i < y.rows(); ++i)
      if (y(i, j) != 0) return std::nullopt;
    for (std::size_t i = 0; i < smith_.rank; ++i) {
      const Integer& d = smith_.D(i, i);
      if (!mpz_divisible_p(y(i, j).get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      mpz_divexact(coords(i, j).get_mpz_t(), y(i, j).get_mpz_t(), d.get_mpz_t());
    }
  }
  return coords;
}

AbelianGroup quotient_index(const IntMatrix& sub, const IntMatrix& amb) {
  if (sub.rows() != amb.rows()) throw DimensionError("quotient_index: ambient dimensions differ");
  LatticeCoordinates lattice(amb);
  auto coords = lattice.coordinates(sub);
  if (!coords) throw ContainmentError("quotient_index: sublattice not contained in ambient lattice");
  return cokernel(*coords);
}

Integer finite_order(const AbelianGroup& group) {
  if (!group.is_finite()) throw InvalidInstance("group has a free part: " + group.to_string());
  return group.torsion.order();
}

}  // namespace algparity
