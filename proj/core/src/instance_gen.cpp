#include "algparity/instance_gen.hpp"

#include <algorithm>

#include "algparity/errors.hpp"

namespace algparity {

GenStats& GenStats::operator+=(const GenStats& o) {
  draws += o.draws;
  rejected += o.rejected;
  rescaled += o.rescaled;
  return *this;
}

namespace {

void count(GenStats* stats, bool accepted) {
  if (!stats) return;
  ++stats->draws;
  if (!accepted) ++stats->rejected;
}

Integer uniform_below(Rng& rng, const Integer& bound) {
  // Uniform on [0, bound) for bounds that fit in 62 bits; the generator never
  // asks for more.
  if (!bound.fits_slong_p() || bound <= 0) throw InvalidInstance("random bound out of range");
  return Integer(static_cast<long>(rng.uniform(0, bound.get_si() - 1)));
}

std::vector<int> random_exponents(Rng& rng, const GenConfig& cfg) {
  const auto r = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(1, cfg.max_factors))));
  std::vector<int> e(r);
  for (auto& x : e) x = static_cast<int>(rng.uniform(1, std::max(1, cfg.max_exponent)));
  std::sort(e.rbegin(), e.rend());
  return e;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  auto inv = inverse(to_rational(u));
  auto integral = inv ? to_integer(*inv) : std::nullopt;
  if (!integral) throw InvalidInstance("matrix is not unimodular");
  return *integral;
}

}  // namespace

PGroupAutInstance gen_pgroup(const GenConfig& cfg, bool involution, GenStats* stats) {
  Rng rng(cfg.seed);
  return gen_pgroup(rng, cfg, involution, stats);
}

PGroupAutInstance gen_pgroup(Rng& rng, const GenConfig& cfg, bool involution, GenStats* stats) {
  const Integer& p = cfg.p;
  std::vector<int> e = random_exponents(rng, cfg);
  const std::size_t r = e.size();
  auto shift = [&](std::size_t k, std::size_t l) { return pow(p, static_cast<unsigned long>(std::max(0, e[k] - e[l]))); };

  if (involution) {
    IntMatrix d = IntMatrix::identity(r);
    for (std::size_t k = 0; k < r; ++k)
      if (rng.chance(1, 2)) d(k, k) = -1;
    IntMatrix P = IntMatrix::identity(r);
    IntMatrix P_inv = IntMatrix::identity(r);
    if (r > 1) {
      for (std::size_t step = 0; step < 3 * r; ++step) {
        auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(r) - 1));
        auto l = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(r) - 2));
        if (l >= k) ++l;
        Integer c = shift(k, l) * Integer(static_cast<long>(rng.uniform(-cfg.coefficient_bound, cfg.coefficient_bound)));
        // E = I + c e_kl and E^-1 = I - c e_kl both respect the relations.
        P.add_col_multiple(l, k, c);
        P_inv.add_row_multiple(k, l, -c);
      }
    }
    count(stats, true);
    return PGroupAutInstance::make(p, e, P * d * P_inv);
  }

  for (std::size_t attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    IntMatrix t(r, r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) t(k, l) = shift(k, l) * uniform_below(rng, pow(p, static_cast<unsigned long>(e[k])));
    auto inst = PGroupAutInstance::make(p, e, t);
    const bool ok = validate(inst);
    count(stats, ok);
    if (ok) return inst;
  }
  throw RetryBudgetExhausted("gen_pgroup: no automorphism within the retry budget");
}

std::vector<Integer> cyclotomic_polynomial(unsigned long d) {
  if (d == 0) throw InvalidInstance("cyclotomic_polynomial: d must be positive");
  // x^d - 1 divided by Phi_e for every proper divisor e of d.
  std::vector<Integer> f(d + 1, 0);
  f[0] = -1;
  f[d] = 1;
  for (unsigned long e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    std::vector<Integer> g = cyclotomic_polynomial(e);
    g.push_back(1);
    std::vector<Integer> q(f.size() - g.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = f[i + g.size() - 1];
      for (std::size_t j = 0; j < g.size(); ++j) f[i + j] -= q[i] * g[j];
    }
    f = q;
  }
  f.pop_back();
  return f;
}

IntMatrix companion_matrix(const std::vector<Integer>& monic) {
  const std::size_t m = monic.size();
  IntMatrix c(m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) c(i + 1, i) = 1;
  for (std::size_t i = 0; i < m; ++i) c(i, m - 1) = -monic[i];
  return c;
}

namespace {

std::vector<Integer> poly_multiply(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

unsigned long euler_phi(unsigned long d) { return cyclotomic_polynomial(d).size(); }

std::vector<unsigned long> divisors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// A rational Q[C_n]-module, as a multiset of cyclotomic factors Phi_e.
using Atom = std::vector<unsigned long>;

std::vector<Atom> random_atoms(Rng& rng, unsigned long n, std::size_t rank) {
  std::vector<Atom> atoms;
  const auto divs = divisors(n);
  std::size_t remaining = rank;
  while (remaining > 0) {
    const unsigned long d = rng.pick(divs);
    Atom atom;
    if (rng.chance(1, 2)) {
      atom = divisors(d);  // Q[C_d]
    } else {
      atom = {d};
    }
    std::size_t r = 0;
    for (unsigned long e : atom) r += euler_phi(e);
    if (r > remaining) atom = {1}, r = 1;
    atoms.push_back(atom);
    remaining -= r;
  }
  return atoms;
}

// One integral form of an atom: the factors are split into random groups and
// each group contributes the companion matrix of its product.
IntMatrix realize_atom(Rng& rng, const Atom& atom) {
  std::vector<std::size_t> group(atom.size());
  for (auto& g : group) g = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(atom.size()) - 1));
  IntMatrix out(0, 0);
  for (std::size_t g = 0; g < atom.size(); ++g) {
    std::vector<Integer> f{1};
    bool used = false;
    for (std::size_t i = 0; i < atom.size(); ++i) {
      if (group[i] != g) continue;
      auto phi = cyclotomic_polynomial(atom[i]);
      phi.push_back(1);
      f = poly_multiply(f, phi);
      used = true;
    }
    if (!used) continue;
    f.pop_back();
    out = block_diagonal(out, companion_matrix(f));
  }
  return out;
}

IntMatrix realize_atoms(Rng& rng, const std::vector<Atom>& atoms, std::size_t rank) {
  IntMatrix sigma(0, 0);
  for (const auto& a : atoms) sigma = block_diagonal(sigma, realize_atom(rng, a));
  IntMatrix u = random_unimodular(rng, rank, 2 * rank);
  return u * sigma * unimodular_inverse(u);
}

// Lattice basis (columns, upper-triangle coordinates) of the symmetric
// matrices Q with sigma^T Q sigma = Q.
IntMatrix invariant_symmetric_forms(const IntMatrix& sigma) {
  const std::size_t r = sigma.rows();
  IntMatrix equations(r * r, r * (r + 1) / 2);
  std::size_t v = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j, ++v) {
      IntMatrix e(r, r);
      e(i, j) = 1;
      e(j, i) = 1;
      IntMatrix d = sigma.transpose() * e * sigma - e;
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) equations(a * r + b, v) = d(a, b);
    }
  return kernel_basis(equations);
}

// A random invariant form plus enough copies of an averaged positive-definite
// form to make the sum positive definite.
IntMatrix invariant_gram(Rng& rng, const IntMatrix& sigma, unsigned long n, std::int64_t bound) {
  const std::size_t r = sigma.rows();
  IntMatrix forms = invariant_symmetric_forms(sigma);
  IntMatrix v = forms * random_matrix(rng, forms.cols(), 1, bound);
  IntMatrix q(r, r);
  std::size_t k = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j, ++k) q(i, j) = q(j, i) = v(k, 0);

  IntMatrix a = random_matrix(rng, r, r, 2);
  IntMatrix seed = a.transpose() * a + IntMatrix::identity(r);
  IntMatrix averaged(r, r);
  IntMatrix s = IntMatrix::identity(r);
  for (unsigned long step = 0; step < n; ++step) {
    averaged += s.transpose() * seed * s;
    s = sigma * s;
  }
  do {
    q += averaged;
  } while (!is_positive_definite(q));

  Integer content = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) content = gcd(content, q(i, j));
  if (content > 1)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q(i, j) /= content;
  return q;
}

unsigned long random_order(Rng& rng, const GenConfig& cfg) {
  return static_cast<unsigned long>(rng.uniform(1, static_cast<std::int64_t>(std::max(1UL, cfg.max_n))));
}

std::size_t random_rank(Rng& rng, const GenConfig& cfg) {
  return static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(1, cfg.max_rank))));
}

}  // namespace

PairedGLattice gen_paired_lattice(Rng& rng, const GenConfig& cfg, GenStats* stats) {
  const unsigned long n = random_order(rng, cfg);
  const std::size_t rank = random_rank(rng, cfg);
  IntMatrix sigma = realize_atoms(rng, random_atoms(rng, n, rank), rank);
  count(stats, true);
  return PairedGLattice(GLattice(n, sigma), invariant_gram(rng, sigma, n, cfg.coefficient_bound));
}

PairedIsogeny gen_paired_isogeny(const GenConfig& cfg, GenStats* stats) {
  Rng rng(cfg.seed);
  return gen_paired_isogeny(rng, cfg, stats);
}

PairedIsogeny gen_paired_isogeny(Rng& rng, const GenConfig& cfg, GenStats* stats) {
  const unsigned long n = random_order(rng, cfg);
  const std::size_t rank = random_rank(rng, cfg);
  const auto atoms = random_atoms(rng, n, rank);
  IntMatrix sigma_a = realize_atoms(rng, atoms, rank);
  IntMatrix sigma_b = realize_atoms(rng, atoms, rank);
  IntMatrix gram_a = invariant_gram(rng, sigma_a, n, cfg.coefficient_bound);
  IntMatrix gram_b = invariant_gram(rng, sigma_b, n, cfg.coefficient_bound);
  const IntMatrix sigma_a_inv = power(sigma_a, n - 1);

  for (std::size_t attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    IntMatrix x = random_matrix(rng, rank, rank, cfg.coefficient_bound);
    IntMatrix phi(rank, rank);
    IntMatrix left = IntMatrix::identity(rank);
    IntMatrix right = IntMatrix::identity(rank);
    for (unsigned long k = 0; k < n; ++k) {
      phi += left * x * right;
      left = sigma_b * left;
      right = right * sigma_a_inv;
    }
    const bool ok = determinant(phi) != 0;
    count(stats, ok);
    if (!ok) continue;
    Adjoint adj = adjoint(phi, gram_a, gram_b);
    Integer c = common_denominator(adj.rational);
    if (c != 1) {
      gram_b *= c;
      if (stats) ++stats->rescaled;
    }
    auto phi_t = to_integer(adj.rational * Rational(c));
    PairedGLattice source(GLattice(n, sigma_a), gram_a);
    PairedGLattice target(GLattice(n, sigma_b), gram_b);
    return PairedIsogeny{std::move(source), std::move(target), std::move(phi), std::move(*phi_t)};
  }
  throw RetryBudgetExhausted("gen_paired_isogeny: no isogeny within the retry budget");
}

IntMatrix gen_isogeny_matrix(Rng& rng, std::size_t rank, std::int64_t bound, std::size_t retry_budget,
                             GenStats* stats) {
  for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
    IntMatrix m = random_matrix(rng, rank, rank, bound);
    const bool ok = determinant(m) != 0;
    count(stats, ok);
    if (ok) return m;
  }
  throw RetryBudgetExhausted("gen_isogeny_matrix: no invertible matrix within the retry budget");
}

}  // namespace algparity
