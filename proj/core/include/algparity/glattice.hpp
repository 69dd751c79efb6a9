#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algparity/exact_linalg.hpp"

namespace algparity {

// Free Z-module of finite rank with an action of a cyclic group of order n,
// presented by the matrix of a chosen generator.
class GLattice {
 public:
  // Throws InvalidInstance unless sigma is square, sigma^n = I (so sigma is
  // unimodular) and n >= 1.
  GLattice(unsigned long n, IntMatrix sigma);

  unsigned long group_order() const { return n_; }
  std::size_t rank() const { return sigma_.rows(); }
  const IntMatrix& sigma() const { return sigma_; }

  // Delta = sigma - 1 and N = 1 + sigma + ... + sigma^(n-1).
  IntMatrix delta() const;
  IntMatrix norm() const;
  // Contragredient action on the dual lattice in the dual basis: sigma^-T.
  GLattice dual() const;
  // Saturated basis (columns) of the fixed lattice ker(sigma - 1).
  IntMatrix fixed_basis() const;

  friend bool operator==(const GLattice&, const GLattice&) = default;

 private:
  unsigned long n_ = 1;
  IntMatrix sigma_;
};

// A G-lattice with a symmetric, non-degenerate, G-invariant Gram matrix Q
// (sigma^T Q sigma = Q). The pairing embeds the lattice into its dual via
// lambda -> <-, lambda>, whose matrix in the dual basis is Q itself.
class PairedGLattice {
 public:
  // Throws DegeneratePairing when det Q = 0 and InvalidInstance when Q is not
  // symmetric or not invariant.
  PairedGLattice(GLattice base, IntMatrix gram);

  const GLattice& base() const { return base_; }
  const IntMatrix& gram() const { return gram_; }
  bool positive_definite() const { return positive_definite_; }

  friend bool operator==(const PairedGLattice&, const PairedGLattice&) = default;

 private:
  GLattice base_;
  IntMatrix gram_;
  bool positive_definite_ = false;
};

// G-equivariant isogeny of lattices: square integer matrix with det != 0 and
// sigma_target * phi = phi * sigma_source.
class LatticeIsogeny {
 public:
  LatticeIsogeny(GLattice source, GLattice target, IntMatrix map);

  const GLattice& source() const { return source_; }
  const GLattice& target() const { return target_; }
  const IntMatrix& map() const { return map_; }

  // phi^vee : target^vee -> source^vee, matrix phi^T with the dual actions.
  LatticeIsogeny dual() const;

 private:
  GLattice source_;
  GLattice target_;
  IntMatrix map_;
};

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& map);
bool is_positive_definite(const IntMatrix& symmetric);

// z(phi) = #coker / #ker = |det phi| for a lattice isogeny.
Integer z(const LatticeIsogeny& phi);
// Same value through the Smith form of phi (order of the cokernel). Throws
// NotAnIsogeny when the cokernel is infinite.
Integer z_via_cokernel(const IntMatrix& phi);

// Matrix of a map restricted to saturated bases of sublattices: returns H
// with map * source_basis = target_basis * H. Throws ContainmentError when
// the image is not inside the target sublattice.
IntMatrix restrict_map(const IntMatrix& map, const IntMatrix& source_basis, const IntMatrix& target_basis);
// |det| of a square restricted map; 1 for the empty map.
Integer abs_det_or_one(const IntMatrix& m);

struct InvariantMap {
  IntMatrix source_basis;
  IntMatrix target_basis;
  IntMatrix h0;   // H^0(phi) in those bases
  Rational z_h0;  // z(H^0(phi))
};

// H^0(phi) : source^G -> target^G. Throws NotEquivariant.
InvariantMap invariant_map(const LatticeIsogeny& phi);

struct Cohomology {
  FiniteAbelianGroup tate_h0;  // Lambda^G / N Lambda
  FiniteAbelianGroup h1;       // ker N / Delta Lambda
  Rational herbrand;           // #tate_h0 / #h1
};

Cohomology cohomology(const GLattice& lattice);

struct Discriminant {
  FiniteAbelianGroup phi_group;  // Lambda^vee / iota(Lambda)
  Integer fixed_order;           // #(Phi_Lambda)^G
};

Discriminant discriminant(const PairedGLattice& lattice);
// #(Phi_Lambda)^G by listing coset representatives of Phi and testing
// sigma^vee-invariance directly. Throws TooLarge when #Phi > 10^6.
Integer discriminant_fixed_order_bruteforce(const PairedGLattice& lattice);

// #B_Lambda, the image of H^1(G, Lambda) -> H^1(G, Lambda^vee), by lattice
// index arithmetic.
Integer betts_order(const PairedGLattice& lattice);
// Same number by listing H^1(G, Lambda) and counting the classes that die in
// H^1(G, Lambda^vee). Throws TooLarge when #H^1 > 10^6.
Integer betts_order_bruteforce(const PairedGLattice& lattice);

struct Adjoint {
  RatMatrix rational;               // Q_A^-1 phi^T Q_B
  std::optional<IntMatrix> integral;  // set when every entry is an integer
  bool composition_identity = false;  // phi^T Q_B phi == Q_A (phi^t phi)
};

// The unique phi^t with <phi x, y>_B = <x, phi^t y>_A.
Adjoint adjoint(const IntMatrix& phi, const IntMatrix& gram_source, const IntMatrix& gram_target);

// Every quantity appearing in the two-sided identity relating
// z(H^0(phi)) / z(H^0(phi^vee)) to the H^1 orders, together with the
// intermediate equalities used to derive it.
struct Lemma32Report {
  Rational z_h0_phi;
  Rational z_h0_dual;
  Integer coker_phi_on_norms;  // #coker(phi : N(Lambda_A) -> N(Lambda_B))
  Integer h1_source;
  Integer h1_target;
  Integer tate_h0_source;
  Integer tate_h0_target;
  Rational herbrand_source;
  Rational herbrand_target;
  Rational lhs;  // z(H^0(phi)) / z(H^0(phi^vee))
  Rational rhs;  // #H^1(target) / #H^1(source)
  Rational tate_ratio;  // #H^0hat(target) / #H^0hat(source)
  bool main_identity = false;
  bool dual_equals_norm_cokernel = false;
  bool tate_identity = false;
  bool herbrand_equal = false;
  bool pass = false;
};

Lemma32Report verify_lemma_3_2(const LatticeIsogeny& phi);

// Per-lattice terms of the identity #Phi^G = z(H^0(iota)) * #H^1 / #B.
struct DiscriminantTerms {
  Integer phi_fixed_order;
  Rational z_h0_iota;
  Integer h1_order;
  Integer betts;
  bool identity = false;
};

DiscriminantTerms discriminant_terms(const PairedGLattice& lattice);

struct Prop35Report {
  Integer p;
  DiscriminantTerms source;
  DiscriminantTerms target;
  Integer det_phit_phi_on_fixed;  // det(phi^t phi | Lambda_A^G)
  Rational z_h0_phi;
  Rational z_h0_dual;
  Rational z_h0_phit_phi;
  // #Phi_A^G / #Phi_B^G = z(H0 iota_A)/z(H0 iota_B) * z(H0 phi^vee)/z(H0 phi) * #B_B/#B_A
  bool ratio_identity = false;
  // z(H0 iota_A)/z(H0 iota_B) = z(H0 phi^vee) z(H0 phi) / z(H0 phi^t phi)
  bool iota_identity = false;
  long ord_phi_ratio = 0;       // ord_p(#Phi_A^G / #Phi_B^G)
  long ord_det = 0;             // ord_p det(phi^t phi | Lambda_A^G)
  long ord_betts_ratio = 0;     // ord_p(#B_A / #B_B)
  bool refined_congruence = false;
  bool betts_parity_source = false;
  bool betts_parity_target = false;
  bool headline_congruence = false;
  bool pass = false;
};

// Throws AdjointMismatch unless Q_A phi^t = phi^T Q_B exactly, and
// InvalidInstance unless p is an odd prime.
Prop35Report verify_prop_3_5(const PairedGLattice& source, const PairedGLattice& target, const IntMatrix& phi,
                             const IntMatrix& phi_t, const Integer& p);

}  // namespace algparity
