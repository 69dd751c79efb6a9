#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algparity/exact_linalg.hpp"

namespace algparity {

// Images of 0..d-1. Products compose right to left: (a*b)(x) = a(b(x)).
using Permutation = std::vector<std::uint32_t>;

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

struct Subgroup {
  std::string name;
  std::vector<std::size_t> elements;    // sorted element indices
  std::vector<std::size_t> generators;  // element indices generating it
  std::size_t order() const { return elements.size(); }
  bool contains(std::size_t g) const;
};

struct ConjugacyClass {
  std::size_t representative = 0;
  std::vector<std::size_t> elements;  // sorted
};

// A finite group given by a faithful permutation action, with its elements,
// conjugacy classes and subgroups up to conjugacy enumerated explicitly.
// Element 0 is the identity.
class FiniteGroup {
 public:
  // Throws TooLarge when the generated group exceeds max_order elements.
  static FiniteGroup from_generators(std::string name, std::vector<Permutation> generators,
                                     std::size_t max_order = 10000);

  const std::string& name() const { return name_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<std::size_t>& generator_indices() const { return generator_indices_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }

  std::size_t index_of(const Permutation& p) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  std::size_t conjugate(std::size_t g, std::size_t x) const;  // g x g^-1
  std::size_t element_order(std::size_t a) const;

  // Breadth-first spanning tree over left multiplication by generators:
  // element i = generator(word_generator(i)) * element(word_parent(i)) for
  // i > 0. Used to extend generator images to every element.
  std::size_t word_generator(std::size_t i) const { return word_generator_[i]; }
  std::size_t word_parent(std::size_t i) const { return word_parent_[i]; }

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::size_t class_of(std::size_t g) const { return class_of_[g]; }

  // Sorted by order, then by the sorted element list of the chosen
  // representative (which is the lexicographically least conjugate).
  const std::vector<Subgroup>& subgroup_classes() const { return subgroups_; }
  std::optional<std::size_t> find_subgroup(const std::string& name) const;

  // Closure of a set of elements under multiplication.
  Subgroup generate(const std::vector<std::size_t>& gens) const;
  bool are_conjugate(const Subgroup& a, const Subgroup& b) const;
  // Index into subgroup_classes() of the class containing h.
  std::size_t subgroup_class_of(const Subgroup& h) const;

  // Replaces automatically chosen subgroup names with the given ones, matched
  // by conjugacy. Throws InvalidInstance when a named subgroup is unmatched or
  // two names hit the same class.
  void name_subgroups(const std::vector<std::pair<std::string, std::vector<Permutation>>>& named);

 private:
  void enumerate_classes();
  void enumerate_subgroups();
  std::vector<std::size_t> class_profile(const Subgroup& h) const;
  std::vector<std::size_t> least_conjugate(const Subgroup& h) const;

  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<std::size_t> generator_indices_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::vector<std::size_t> inverses_;
  std::vector<std::size_t> word_generator_;
  std::vector<std::size_t> word_parent_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<Subgroup> subgroups_;
};

// Permutation character of G acting on G/H, indexed like G.classes().
std::vector<Integer> permutation_character(const FiniteGroup& group, const Subgroup& h);

// Left cosets gH with the permutation action of G by left multiplication.
class CosetSpace {
 public:
  CosetSpace(const FiniteGroup& group, const Subgroup& h);

  std::size_t size() const { return representatives_.size(); }
  std::size_t representative(std::size_t coset) const { return representatives_[coset]; }
  std::size_t coset_of(std::size_t element) const { return coset_of_[element]; }
  // Coset containing g * (representative of c).
  std::size_t act(std::size_t g, std::size_t coset) const;

 private:
  const FiniteGroup* group_;
  std::vector<std::size_t> representatives_;
  std::vector<std::size_t> coset_of_;
};

// Linear representation over Q with an invariant symmetric non-degenerate
// pairing. Images of every group element are materialized at construction.
class RationalRep {
 public:
  // Extends generator images to all elements and checks that the extension
  // is a homomorphism (every Cayley-graph edge). When gram is empty, the
  // pairing sum_g rho(g)^T rho(g) is used. Throws ActionMismatch on a failed
  // relation and NotSelfDual when the pairing is not invariant, symmetric
  // and non-degenerate.
  RationalRep(const FiniteGroup& group, std::string name, std::vector<RatMatrix> generator_images,
              RatMatrix gram = RatMatrix());

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  const RatMatrix& image(std::size_t element) const { return images_[element]; }
  const std::vector<RatMatrix>& generator_images() const { return generator_images_; }
  const RatMatrix& gram() const { return gram_; }
  std::size_t group_order() const { return images_.size(); }

  std::vector<Rational> character(const FiniteGroup& group) const;

  RationalRep with_gram(const FiniteGroup& group, RatMatrix gram) const;

 private:
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<RatMatrix> generator_images_;
  std::vector<RatMatrix> images_;
  RatMatrix gram_;
};

// (1/|G|) sum_g chi_1(g) chi_2(g) for characters given per conjugacy class.
Rational character_inner_product(const FiniteGroup& group, const std::vector<Rational>& a,
                                 const std::vector<Rational>& b);

RationalRep trivial_rep(const FiniteGroup& group);
RationalRep direct_sum(const FiniteGroup& group, const RationalRep& a, const RationalRep& b);
// rho'(g) = X rho(g) X^-1 with gram X^-T Q X^-1; throws DimensionError if X
// is singular.
RationalRep conjugate_rep(const FiniteGroup& group, const RationalRep& rep, const RatMatrix& x);
// sum_g rho(g)^T S rho(g) for a seed form S.
RatMatrix average_form(const RationalRep& rep, const RatMatrix& seed);

// Saturated integer basis (columns) of the subspace fixed by every element
// of h.
IntMatrix fixed_space_basis(const RationalRep& rep, const Subgroup& h);

}  // namespace algparity
