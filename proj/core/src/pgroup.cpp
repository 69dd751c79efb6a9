#include "algparity/pgroup.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace algparity {

namespace {

void check_odd_prime(const Integer& p) {
  if (p == 2 || !is_probable_prime(p)) throw InvalidInstance("p must be an odd prime, got " + p.get_str());
}

}  // namespace

PGroupAutInstance PGroupAutInstance::make(Integer p, std::vector<int> exponents, IntMatrix action) {
  check_odd_prime(p);
  const std::size_t r = exponents.size();
  if (action.rows() != r || action.cols() != r)
    throw InvalidInstance("action must be a square matrix of size equal to the number of cyclic factors");
  for (int e : exponents)
    if (e < 1) throw InvalidInstance("exponents must be >= 1");

  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return exponents[a] > exponents[b]; });

  PGroupAutInstance inst;
  inst.p_ = std::move(p);
  inst.exponents_.resize(r);
  inst.action_ = IntMatrix(r, r);
  for (std::size_t a = 0; a < r; ++a) inst.exponents_[a] = exponents[perm[a]];
  for (std::size_t a = 0; a < r; ++a) {
    Integer modulus = pow(inst.p_, inst.exponents_[a]);
    for (std::size_t b = 0; b < r; ++b) inst.action_(a, b) = mod(action(perm[a], perm[b]), modulus);
  }
  return inst;
}

PGroupAutInstance PGroupAutInstance::with_action(IntMatrix action) const {
  return make(p_, exponents_, std::move(action));
}

Integer PGroupAutInstance::order() const {
  long total = std::accumulate(exponents_.begin(), exponents_.end(), 0L);
  return pow(p_, static_cast<unsigned long>(total));
}

IntMatrix PGroupAutInstance::relations() const {
  std::vector<Integer> d;
  for (int e : exponents_) d.push_back(pow(p_, e));
  return IntMatrix::diagonal(d);
}

bool is_well_defined(const PGroupAutInstance& inst) {
  const auto& e = inst.exponents();
  for (std::size_t k = 0; k < e.size(); ++k)
    for (std::size_t l = 0; l < e.size(); ++l) {
      int gap = std::max(0, e[k] - e[l]);
      if (gap == 0) continue;
      Integer modulus = pow(inst.p(), gap);
      if (!mpz_divisible_p(inst.action()(k, l).get_mpz_t(), modulus.get_mpz_t())) return false;
    }
  return true;
}

bool validate(const PGroupAutInstance& inst) {
  if (!is_well_defined(inst)) return false;
  // M/pM is F_p^r and T induces T mod p on it; by Nakayama T is onto iff
  // that reduction is, and a surjective endomorphism of a finite group is
  // bijective.
  return mod(determinant(inst.action()), inst.p()) != 0;
}

IntMatrix graded_action(const PGroupAutInstance& inst, int i) {
  if (i < 0 || i >= inst.exponent()) throw IndexOutOfRange("chi component index out of range");
  const auto& e = inst.exponents();
  std::vector<std::size_t> layer;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k] >= i + 1) layer.push_back(k);
  IntMatrix g(layer.size(), layer.size());
  for (std::size_t a = 0; a < layer.size(); ++a)
    for (std::size_t b = 0; b < layer.size(); ++b) {
      const std::size_t k = layer[a];
      const std::size_t l = layer[b];
      const Integer& t = inst.action()(k, l);
      if (e[l] > e[k]) {
        g(a, b) = 0;
      } else if (e[l] == e[k]) {
        g(a, b) = mod(t, inst.p());
      } else {
        Integer q;
        Integer scale = pow(inst.p(), e[k] - e[l]);
        mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), scale.get_mpz_t());
        g(a, b) = mod(q, inst.p());
      }
    }
  return g;
}

namespace {

// Elements of M encoded as mixed-radix integers.
class Enumerator {
 public:
  explicit Enumerator(const PGroupAutInstance& inst) : inst_(inst) {
    Integer order = inst.order();
    if (order > Integer(static_cast<unsigned long>(kBruteforceLimit)))
      throw TooLarge("brute force: group has " + order.get_str() + " elements, limit is 10^6");
    size_ = order.get_ui();
    p_ = inst.p().get_ui();
    for (int e : inst.exponents()) {
      unsigned long m = 1;
      for (int k = 0; k < e; ++k) m *= p_;
      moduli_.push_back(m);
    }
  }

  std::size_t size() const { return size_; }
  std::size_t rank() const { return moduli_.size(); }

  std::vector<unsigned long> decode(std::size_t code) const {
    std::vector<unsigned long> x(moduli_.size());
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      x[k] = code % moduli_[k];
      code /= moduli_[k];
    }
    return x;
  }

  std::size_t encode(const std::vector<unsigned long>& x) const {
    std::size_t code = 0;
    for (std::size_t k = moduli_.size(); k-- > 0;) code = code * moduli_[k] + x[k];
    return code;
  }

  std::vector<unsigned long> scale(const std::vector<unsigned long>& x, unsigned long c) const {
    std::vector<unsigned long> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = (x[k] * c) % moduli_[k];
    return y;
  }

  std::vector<unsigned long> add(const std::vector<unsigned long>& x, const std::vector<unsigned long>& y) const {
    std::vector<unsigned long> z(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) z[k] = (x[k] + y[k]) % moduli_[k];
    return z;
  }

  std::vector<unsigned long> apply(const std::vector<unsigned long>& x) const {
    std::vector<unsigned long> y(x.size(), 0);
    for (std::size_t k = 0; k < x.size(); ++k) {
      Integer acc = 0;
      for (std::size_t l = 0; l < x.size(); ++l) acc += inst_.action()(k, l) * x[l];
      y[k] = mod(acc, Integer(moduli_[k])).get_ui();
    }
    return y;
  }

  bool is_zero(const std::vector<unsigned long>& x) const {
    return std::all_of(x.begin(), x.end(), [](unsigned long v) { return v == 0; });
  }

  unsigned long p() const { return p_; }

 private:
  const PGroupAutInstance& inst_;
  std::size_t size_ = 0;
  unsigned long p_ = 0;
  std::vector<unsigned long> moduli_;
};

unsigned long power_ul(unsigned long base, int e) {
  unsigned long r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

// Determinant of T on p^i M[p^(i+1)] found by listing that subgroup and
// picking an F_p-basis greedily.
Integer chi_component_bruteforce(const PGroupAutInstance& inst, int i) {
  Enumerator en(inst);
  const unsigned long p = en.p();
  const unsigned long pi = power_ul(p, i);
  const unsigned long pi1 = pi * p;

  std::vector<std::vector<unsigned long>> layer;
  std::vector<char> seen(en.size(), 0);
  for (std::size_t code = 0; code < en.size(); ++code) {
    auto x = en.decode(code);
    if (!en.is_zero(en.scale(x, pi1))) continue;
    auto y = en.scale(x, pi);
    std::size_t c = en.encode(y);
    if (!seen[c]) {
      seen[c] = 1;
      layer.push_back(std::move(y));
    }
  }

  // Greedy basis; span maps element code -> coordinates over F_p.
  std::vector<std::vector<unsigned long>> basis;
  std::unordered_map<std::size_t, std::vector<unsigned long>> span;
  span[en.encode(std::vector<unsigned long>(en.rank(), 0))] = {};
  for (const auto& v : layer) {
    if (span.count(en.encode(v))) continue;
    basis.push_back(v);
    std::unordered_map<std::size_t, std::vector<unsigned long>> grown;
    for (const auto& [code, coords] : span) {
      auto base = en.decode(code);
      for (unsigned long c = 0; c < p; ++c) {
        auto w = en.add(base, en.scale(v, c));
        auto wc = coords;
        wc.resize(basis.size(), 0);
        wc.back() = c;
        grown.emplace(en.encode(w), std::move(wc));
      }
    }
    span = std::move(grown);
  }
  if (span.size() != layer.size()) throw InvalidInstance("brute force: subquotient is not an F_p-space");

  const std::size_t d = basis.size();
  IntMatrix m(d, d);
  for (std::size_t b = 0; b < d; ++b) {
    auto image = en.apply(basis[b]);
    auto it = span.find(en.encode(image));
    if (it == span.end()) throw InvalidInstance("brute force: action does not preserve the layer");
    auto coords = it->second;
    coords.resize(d, 0);
    for (std::size_t a = 0; a < d; ++a) m(a, b) = coords[a];
  }
  return mod(determinant(m), inst.p());
}

void require_valid(const PGroupAutInstance& inst) {
  if (!validate(inst)) throw InvalidInstance("action is not an automorphism of M");
}

}  // namespace

Integer chi_component(const PGroupAutInstance& inst, int i, ChiMethod method) {
  require_valid(inst);
  if (i < 0 || i >= inst.exponent()) throw IndexOutOfRange("chi component index out of range");
  if (method == ChiMethod::bruteforce) return chi_component_bruteforce(inst, i);
  return mod(determinant(graded_action(inst, i)), inst.p());
}

Integer chi(const PGroupAutInstance& inst, ChiMethod method) {
  require_valid(inst);
  Integer result = 1;
  for (int i = 0; i < inst.exponent(); ++i) result = mod(result * chi_component(inst, i, method), inst.p());
  return result;
}

Integer fixed_count(const PGroupAutInstance& inst) {
  if (!is_well_defined(inst)) throw InvalidInstance("action does not respect the relations of M");
  // #ker(T - 1) = #coker(T - 1) on the finite group M.
  IntMatrix shifted = inst.action() - IntMatrix::identity(inst.num_factors());
  return finite_order(cokernel(hconcat(shifted, inst.relations())));
}

Integer fixed_count_bruteforce(const PGroupAutInstance& inst) {
  if (!is_well_defined(inst)) throw InvalidInstance("action does not respect the relations of M");
  Enumerator en(inst);
  unsigned long count = 0;
  for (std::size_t code = 0; code < en.size(); ++code)
    if (en.encode(en.apply(en.decode(code))) == code) ++count;
  return Integer(count);
}

bool acts_as_identity(const PGroupAutInstance& inst) {
  const auto& e = inst.exponents();
  for (std::size_t k = 0; k < e.size(); ++k) {
    Integer modulus = pow(inst.p(), e[k]);
    for (std::size_t l = 0; l < e.size(); ++l) {
      Integer v = inst.action()(k, l) - (k == l ? 1 : 0);
      if (mod(v, modulus) != 0) return false;
    }
  }
  return true;
}

PGroupAutInstance compose(const PGroupAutInstance& t, const PGroupAutInstance& s) {
  if (t.p() != s.p() || t.exponents() != s.exponents()) throw InvalidInstance("compose: different groups");
  return t.with_action(t.action() * s.action());
}

namespace {

// Z^r / span(lattice) with the action T, which must preserve the lattice.
PGroupAutInstance instance_from_lattice(const Integer& p, const IntMatrix& action, const IntMatrix& lattice) {
  SmithForm s = smith_normal_form(lattice);
  const std::size_t r = lattice.rows();
  if (s.rank != r) throw InvalidInstance("subquotient: lattice is not of full rank");
  IntMatrix moved = s.U * action * s.U_inv;
  std::vector<std::size_t> keep;
  std::vector<int> exps;
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& d = s.D(i, i);
    if (d == 1) continue;
    long e = ord_p(d, p);
    if (pow(p, e) != d) throw InvalidInstance("subquotient: invariant factor is not a power of p");
    keep.push_back(i);
    exps.push_back(static_cast<int>(e));
  }
  return PGroupAutInstance::make(p, exps, moved.submatrix(keep, keep));
}

}  // namespace

SubquotientPair split_by_subgroup(const PGroupAutInstance& inst, const IntMatrix& generators) {
  if (!is_well_defined(inst)) throw InvalidInstance("action does not respect the relations of M");
  const std::size_t r = inst.num_factors();
  if (generators.rows() != r) throw DimensionError("subgroup generators have the wrong length");
  LatticeCoordinates lattice(hconcat(generators, inst.relations()));
  const IntMatrix& basis = lattice.basis();
  auto action_in_basis = lattice.coordinates(inst.action() * basis);
  if (!action_in_basis) throw InvalidInstance("subgroup is not stable under the action");
  auto relations_in_basis = lattice.coordinates(inst.relations());
  return SubquotientPair{
      instance_from_lattice(inst.p(), *action_in_basis, *relations_in_basis),
      instance_from_lattice(inst.p(), inst.action(), basis),
  };
}

IntMatrix torsion_subgroup_generators(const PGroupAutInstance& inst, int j) {
  const auto& e = inst.exponents();
  std::vector<Integer> d;
  for (int ek : e) d.push_back(pow(inst.p(), std::max(0, ek - j)));
  return IntMatrix::diagonal(d);
}

IntMatrix multiple_subgroup_generators(const PGroupAutInstance& inst, int j) {
  std::vector<Integer> d(inst.num_factors(), pow(inst.p(), j));
  return IntMatrix::diagonal(d);
}

IntMatrix cyclic_submodule_generators(const PGroupAutInstance& inst, const IntMatrix& x) {
  const std::size_t r = inst.num_factors();
  if (x.rows() != r || x.cols() != 1) throw DimensionError("cyclic submodule: x must be a column vector");
  // Cayley-Hamilton: T^r x is an integer combination of x, ..., T^(r-1) x.
  IntMatrix gens(r, 0);
  IntMatrix v = x;
  for (std::size_t k = 0; k < std::max<std::size_t>(r, 1); ++k) {
    gens = hconcat(gens, v);
    v = inst.action() * v;
  }
  return gens;
}

}  // namespace algparity
