#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "algparity/glattice.hpp"
#include "algparity/pgroup.hpp"
#include "algparity/random.hpp"

namespace algparity {

struct GenConfig {
  std::uint64_t seed = 1;
  Integer p = 3;
  std::size_t max_rank = 6;
  unsigned long max_n = 6;
  int max_exponent = 4;
  std::size_t max_factors = 5;
  std::int64_t coefficient_bound = 3;
  std::size_t trials = 100;
  std::size_t retry_budget = 1000;
};

// Counters for rejected draws, so generation bias stays visible.
struct GenStats {
  std::size_t draws = 0;
  std::size_t rejected = 0;
  std::size_t rescaled = 0;  // target pairings scaled to make the adjoint integral

  GenStats& operator+=(const GenStats& o);
};

// Random automorphism of a random p-group with at most max_factors cyclic
// factors of exponent at most max_exponent. With `involution`, T = P D P^-1
// for D = diag(+-1) and P invertible in End(M), so T^2 = I exactly.
PGroupAutInstance gen_pgroup(const GenConfig& cfg, bool involution = false, GenStats* stats = nullptr);
// Same, drawing from an existing generator.
PGroupAutInstance gen_pgroup(Rng& rng, const GenConfig& cfg, bool involution = false, GenStats* stats = nullptr);

// Coefficients of the d-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(unsigned long d);
// Companion matrix of a monic polynomial given constant term first (the
// leading 1 omitted from the list is implied).
IntMatrix companion_matrix(const std::vector<Integer>& monic);

struct PairedIsogeny {
  PairedGLattice source;
  PairedGLattice target;
  IntMatrix phi;
  IntMatrix phi_t;
};

// A random G-lattice of rank <= max_rank for a random n <= max_n, with a
// random invariant positive-definite pairing: a random element of the lattice
// of invariant symmetric forms plus a multiple of an averaged form.
PairedGLattice gen_paired_lattice(Rng& rng, const GenConfig& cfg, GenStats* stats = nullptr);

// Source and target share a rational representation but are assembled from
// possibly different integral forms (permutation blocks versus cyclotomic
// blocks), then conjugated by random unimodular matrices. Pairings are drawn
// as in gen_paired_lattice. phi is the average
// of a random matrix over the group; phi_t is its adjoint. When the adjoint
// is not integral the target pairing is multiplied by its common
// denominator. Throws RetryBudgetExhausted when no draw has det(phi) != 0.
PairedIsogeny gen_paired_isogeny(const GenConfig& cfg, GenStats* stats = nullptr);
PairedIsogeny gen_paired_isogeny(Rng& rng, const GenConfig& cfg, GenStats* stats = nullptr);

// Random square integer matrix with det != 0.
IntMatrix gen_isogeny_matrix(Rng& rng, std::size_t rank, std::int64_t bound, std::size_t retry_budget = 1000,
                             GenStats* stats = nullptr);

}  // namespace algparity
