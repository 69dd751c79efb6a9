#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "algparity/finite_group.hpp"

namespace algparity {

// Theta = sum_i H_i - sum_j H'_j, stored as one signed coefficient per entry
// of FiniteGroup::subgroup_classes(). Positive coefficients form the source
// side {H_i}, negative ones the target side {H'_j}.
struct BrauerRelation {
  std::vector<Integer> coefficients;

  bool is_zero() const;
  friend bool operator==(const BrauerRelation&, const BrauerRelation&) = default;
};

// Rows: conjugacy classes. Columns: subgroup classes.
IntMatrix permutation_character_matrix(const FiniteGroup& group);
bool is_brauer_relation(const FiniteGroup& group, const BrauerRelation& theta);

// Hermite-reduced basis of the lattice of Brauer relations. Each basis vector
// is negated so that its first nonzero coefficient (smallest subgroup first)
// is negative, matching the usual way of writing relations with the trivial
// subgroup on the minus side.
std::vector<BrauerRelation> find_brauer_relations(const FiniteGroup& group);

// "2C2 + C3 - 2S3 - 1"
std::string format_relation(const FiniteGroup& group, const BrauerRelation& theta);
BrauerRelation parse_relation(const FiniteGroup& group, const std::string& text);

// Direct sum of permutation modules Z[G/H_k], one entry per summand (with
// repetition), each an index into subgroup_classes(). Basis: cosets of each
// summand in CosetSpace order, summands concatenated.
struct PermutationModule {
  std::vector<std::size_t> summands;

  std::size_t rank(const FiniteGroup& group) const;
  friend bool operator==(const PermutationModule&, const PermutationModule&) = default;
};

// The two sides of a relation: source = sum_i Z[G/H_i], target = sum_j Z[G/H'_j].
PermutationModule source_module(const BrauerRelation& theta);
PermutationModule target_module(const BrauerRelation& theta);

// Matrix of g acting on a permutation module.
IntMatrix module_action(const FiniteGroup& group, const PermutationModule& module, std::size_t g);

struct EquivariantMap {
  PermutationModule source;
  PermutationModule target;
  IntMatrix matrix;  // rows: target basis, cols: source basis
};

bool is_equivariant(const FiniteGroup& group, const EquivariantMap& map);
// Basis of Hom_G(source, target): one map per block (i, j) and per
// H_i-orbit on G/H'_j (equivalently per double coset).
std::vector<IntMatrix> equivariant_hom_basis(const FiniteGroup& group, const PermutationModule& source,
                                             const PermutationModule& target);

struct Realization {
  EquivariantMap phi;
  IntMatrix dual;  // phi^vee: transpose, for the self-duality of permutation modules
  Integer determinant;
  std::size_t candidates_tried = 0;
};

struct RealizeOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 10000;  // determinant evaluations
  int max_coefficient = 3;
};

// Seeded search for an injective equivariant map with finite cokernel.
// Throws SearchExhausted when the budget runs out, InvalidInstance when
// theta is not a relation.
Realization realize(const FiniteGroup& group, const BrauerRelation& theta, const RealizeOptions& options = {});

// Phi^* : sum_j M^{H'_j} -> sum_i M^{H_i} in the bases returned by
// fixed_space_basis for each summand, in summand order. For a rep with
// integer matrices the result is integral.
struct PhiStar {
  std::vector<IntMatrix> source_bases;  // fixed bases for the map's source summands
  std::vector<IntMatrix> target_bases;  // fixed bases for the map's target summands
  RatMatrix matrix;                     // rows: sum_i dim M^{H_i}; cols: sum_j dim M^{H'_j}
};

PhiStar phi_star(const FiniteGroup& group, const EquivariantMap& map, const RationalRep& rep);

// prod_H det((1/|H|) <,> restricted to V^H)^{c_H} as a square class. Throws
// DegenerateRestriction when a restricted pairing is singular.
SquareClass regulator_constant(const FiniteGroup& group, const BrauerRelation& theta, const RationalRep& rep);

struct TauCheck {
  std::string label;       // rep name, or the multiplicity vector of a random sum
  long tau_pairing = 0;    // <tau, V>
  long ord_p_constant = 0; // ord_p C_Theta(V)
  bool holds = false;      // congruent mod 2
};

struct TauResult {
  Integer p;
  std::vector<std::string> tau;        // irreducibles contributing a constituent to tau
  std::vector<TauCheck> irreducible_checks;
  std::vector<TauCheck> random_sum_checks;
  bool pass = false;
};

// tau takes one absolutely irreducible constituent of each supplied
// irreducible whose regulator constant has odd p-valuation, so that
// <tau, W> = sum over members V of <chi_V, chi_W> / <chi_V, chi_V>. Checked
// against each irreducible and `random_sums` random direct sums (built as
// genuine representations with random invariant pairings). Throws
// InvalidInstance when the irreducibles are not pairwise orthogonal.
TauResult tau_candidate(const FiniteGroup& group, const BrauerRelation& theta, const Integer& p,
                        const std::vector<RationalRep>& irreducibles, std::uint64_t seed = 1,
                        std::size_t random_sums = 50);

}  // namespace algparity
