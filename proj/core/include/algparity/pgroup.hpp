#pragma once

#include <cstddef>
#include <vector>

#include "algparity/exact_linalg.hpp"

namespace algparity {

// A finite abelian p-group M = Z/p^e_1 + ... + Z/p^e_r (p odd, e_1 >= ... >=
// e_r >= 1) together with an endomorphism given on generators: column l of
// the action matrix holds the coordinates of the image of g_l.
//
// make() sorts exponents descending (permuting the action accordingly) and
// reduces row k of the action modulo p^e_k. It does not check that the
// action is an automorphism; see validate().
class PGroupAutInstance {
 public:
  static PGroupAutInstance make(Integer p, std::vector<int> exponents, IntMatrix action);

  const Integer& p() const { return p_; }
  const std::vector<int>& exponents() const { return exponents_; }
  const IntMatrix& action() const { return action_; }

  std::size_t num_factors() const { return exponents_.size(); }
  // n with M of exponent p^n; 0 for the trivial group.
  int exponent() const { return exponents_.empty() ? 0 : exponents_.front(); }
  Integer order() const;
  // diag(p^e_k): the relation lattice with M = Z^r / relations.
  IntMatrix relations() const;

  // Same group, different action (normalized the same way).
  PGroupAutInstance with_action(IntMatrix action) const;

  friend bool operator==(const PGroupAutInstance&, const PGroupAutInstance&) = default;

 private:
  Integer p_;
  std::vector<int> exponents_;
  IntMatrix action_;
};

// Action matrix respects the relations: T_kl = 0 mod p^max(0, e_k - e_l).
bool is_well_defined(const PGroupAutInstance& inst);
// Both well-defined and bijective (det T not divisible by p).
bool validate(const PGroupAutInstance& inst);

enum class ChiMethod { fast, bruteforce };

// Determinant of the induced action on the F_p-space p^i M[p^(i+1)], as an
// element of {1, ..., p-1}.
Integer chi_component(const PGroupAutInstance& inst, int i, ChiMethod method = ChiMethod::fast);
// Product of chi_component over 0 <= i < n.
Integer chi(const PGroupAutInstance& inst, ChiMethod method = ChiMethod::fast);

// The matrix over F_p (entries in [0, p)) of the induced action on
// p^i M[p^(i+1)] in the basis {p^(e_k - 1) g_k : e_k >= i + 1}.
IntMatrix graded_action(const PGroupAutInstance& inst, int i);

// #{x in M : T x = x}, via the index [Z^r : (T - I) Z^r + relations].
Integer fixed_count(const PGroupAutInstance& inst);
// Same count by enumerating all of M. Throws TooLarge above 10^6 elements.
Integer fixed_count_bruteforce(const PGroupAutInstance& inst);

// Whether the action is the identity map of M.
bool acts_as_identity(const PGroupAutInstance& inst);
// Composition T * S of two actions on the same group.
PGroupAutInstance compose(const PGroupAutInstance& t, const PGroupAutInstance& s);

// A T-stable subgroup M1 (given by generators, columns in Z^r) and the
// induced actions on M1 and on M / M1, each presented as its own instance.
struct SubquotientPair {
  PGroupAutInstance sub;
  PGroupAutInstance quotient;
};

// Throws InvalidInstance when the span of `generators` is not T-stable.
SubquotientPair split_by_subgroup(const PGroupAutInstance& inst, const IntMatrix& generators);
// Generators of M[p^j] and p^j M.
IntMatrix torsion_subgroup_generators(const PGroupAutInstance& inst, int j);
IntMatrix multiple_subgroup_generators(const PGroupAutInstance& inst, int j);
// Generators of the smallest T-stable subgroup containing x.
IntMatrix cyclic_submodule_generators(const PGroupAutInstance& inst, const IntMatrix& x);

inline constexpr std::size_t kBruteforceLimit = 1000000;

}  // namespace algparity
