#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "algparity/exact_linalg.hpp"
#include "algparity/pgroup.hpp"

// Slow, independent reference computations and small generators used by the
// tests. Nothing here calls into the elimination code of the library.
namespace oracle {

using algparity::Integer;
using algparity::IntMatrix;

inline Integer leibniz_det(const IntMatrix& a) {
  std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += (inversions % 2 == 0) ? term : Integer(-term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

// d_k = gcd of all k x k minors; the invariant factors are d_k / d_{k-1}.
// Returns the nonzero diagonal of the Smith form.
inline std::vector<Integer> smith_diagonal_by_minors(const IntMatrix& a) {
  std::vector<Integer> diag;
  Integer prev = 1;
  std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    for (const auto& r : subsets(a.rows(), k))
      for (const auto& c : subsets(a.cols(), k)) {
        Integer m = leibniz_det(a.submatrix(r, c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
      }
    if (g == 0) break;
    diag.push_back(g / prev);
    prev = g;
  }
  return diag;
}

using Vec = std::vector<long>;

inline Vec reduce(Vec v, long d) {
  for (auto& x : v) x = ((x % d) + d) % d;
  return v;
}

// Size of the subgroup of (Z/d)^m generated by the columns of A.
inline std::set<Vec> span_mod(const IntMatrix& a, long d) {
  std::size_t m = a.rows();
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Vec g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = a(i, j).get_si();
    gens.push_back(reduce(g, d));
  }
  std::set<Vec> seen{Vec(m, 0)};
  std::vector<Vec> frontier{Vec(m, 0)};
  while (!frontier.empty()) {
    Vec v = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Vec w(m);
      for (std::size_t i = 0; i < m; ++i) w[i] = v[i] + g[i];
      w = reduce(w, d);
      if (seen.insert(w).second) frontier.push_back(w);
    }
  }
  return seen;
}

// #{x in Z^m / span(A) : k x = 0}, assuming d Z^m is inside span(A).
inline long count_killed_by(const IntMatrix& a, long d, long k) {
  std::size_t m = a.rows();
  auto span = span_mod(a, d);
  long total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= d;
  long hits = 0;
  Vec x(m, 0);
  for (long idx = 0; idx < total; ++idx) {
    long r = idx;
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = r % d;
      r /= d;
    }
    Vec kx(m);
    for (std::size_t i = 0; i < m; ++i) kx[i] = k * x[i];
    if (span.count(reduce(kx, d))) ++hits;
  }
  return hits / static_cast<long>(span.size());
}

// Elements of a finite abelian p-group as residue vectors.
inline std::vector<Vec> all_elements(const algparity::PGroupAutInstance& inst) {
  std::vector<long> mod;
  for (int e : inst.exponents()) mod.push_back(algparity::pow(inst.p(), e).get_si());
  std::vector<Vec> out;
  Vec x(mod.size(), 0);
  while (true) {
    out.push_back(x);
    std::size_t k = 0;
    while (k < mod.size() && ++x[k] == mod[k]) x[k++] = 0;
    if (k == mod.size()) break;
  }
  return out;
}

inline Vec apply(const algparity::PGroupAutInstance& inst, const Vec& x) {
  std::size_t r = x.size();
  Vec y(r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    long m = algparity::pow(inst.p(), inst.exponents()[k]).get_si();
    long acc = 0;
    for (std::size_t l = 0; l < r; ++l) acc = (acc + inst.action()(k, l).get_si() % m * x[l]) % m;
    y[k] = ((acc % m) + m) % m;
  }
  return y;
}

inline long fixed_points(const algparity::PGroupAutInstance& inst) {
  long count = 0;
  for (const auto& x : all_elements(inst))
    if (apply(inst, x) == x) ++count;
  return count;
}

inline long det_mod_p(std::vector<std::vector<long>> m, long p) {
  std::size_t n = m.size();
  long det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = p - det;
    }
    long a = ((m[c][c] % p) + p) % p;
    det = det * a % p;
    long inv = 1;
    for (long t = 1; t < p; ++t)
      if (a * t % p == 1) inv = t;
    for (std::size_t r = c + 1; r < n; ++r) {
      long f = ((m[r][c] % p) + p) % p * inv % p;
      for (std::size_t k = c; k < n; ++k) m[r][k] = ((m[r][k] - f * m[c][k]) % p + p) % p;
    }
  }
  return det % p;
}

// chi through the filtration by p^j M: on p^j M / p^(j+1) M the action is T
// mod p restricted to the factors with e_k > j.
inline long chi_by_layers(const algparity::PGroupAutInstance& inst) {
  long p = inst.p().get_si();
  long result = 1;
  for (int j = 0; j < inst.exponent(); ++j) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < inst.num_factors(); ++k)
      if (inst.exponents()[k] > j) idx.push_back(k);
    std::vector<std::vector<long>> m(idx.size(), std::vector<long>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        m[a][b] = algparity::mod(inst.action()(idx[a], idx[b]), inst.p()).get_si();
    result = result * det_mod_p(m, p) % p;
  }
  return result;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  IntMatrix matrix(std::size_t rows, std::size_t cols, long bound) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = range(-bound, bound);
    return m;
  }
  IntMatrix unimodular(std::size_t n, int steps = 12) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return range(0, 1) ? u : IntMatrix(-u);
    for (int s = 0; s < steps; ++s) {
      std::size_t a = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      std::size_t b = static_cast<std::size_t>(range(0, static_cast<long>(n) - 2));
      if (b >= a) ++b;
      u.add_row_multiple(a, b, Integer(range(-2, 2)));
    }
    return u;
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
