#include "algparity/glattice.hpp"

#include <utility>

namespace algparity {

namespace {

IntMatrix dual_action(const IntMatrix& sigma, unsigned long n) {
  // sigma^-1 = sigma^(n-1), so the contragredient is (sigma^(n-1))^T.
  return power(sigma, n - 1).transpose();
}

// Enumerates the group Z^k / span(relations) (relations of full rank) as
// representatives U^-1 y with y in the Smith box, calling f on each.
template <class F>
void for_each_coset(const IntMatrix& relations, F&& f) {
  SmithForm s = smith_normal_form(relations);
  const std::size_t k = relations.rows();
  if (s.rank != k) throw InvalidInstance("coset enumeration: quotient is infinite");
  Integer total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= s.D(i, i);
  if (total > 1000000) throw TooLarge("coset enumeration: " + total.get_str() + " cosets, limit is 10^6");
  IntMatrix y(k, 1);
  while (true) {
    f(IntMatrix(s.U_inv * y));
    std::size_t i = 0;
    for (; i < k; ++i) {
      y(i, 0) += 1;
      if (y(i, 0) < s.D(i, i)) break;
      y(i, 0) = 0;
    }
    if (i == k) break;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// types

GLattice::GLattice(unsigned long n, IntMatrix sigma) : n_(n), sigma_(std::move(sigma)) {
  if (n_ < 1) throw InvalidInstance("group order must be >= 1");
  if (!sigma_.is_square()) throw InvalidInstance("sigma must be square");
  if (!(power(sigma_, n_) == IntMatrix::identity(sigma_.rows())))
    throw InvalidInstance("sigma^n is not the identity");
}

IntMatrix GLattice::delta() const { return sigma_ - IntMatrix::identity(rank()); }

IntMatrix GLattice::norm() const {
  IntMatrix sum(rank(), rank());
  IntMatrix term = IntMatrix::identity(rank());
  for (unsigned long k = 0; k < n_; ++k) {
    sum += term;
    term = term * sigma_;
  }
  return sum;
}

GLattice GLattice::dual() const { return GLattice(n_, dual_action(sigma_, n_)); }

IntMatrix GLattice::fixed_basis() const { return kernel_basis(delta()); }

bool is_positive_definite(const IntMatrix& symmetric) {
  // Sylvester: every leading principal minor is positive.
  for (std::size_t k = 1; k <= symmetric.rows(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (determinant(symmetric.submatrix(idx, idx)) <= 0) return false;
  }
  return true;
}

PairedGLattice::PairedGLattice(GLattice base, IntMatrix gram) : base_(std::move(base)), gram_(std::move(gram)) {
  if (gram_.rows() != base_.rank() || gram_.cols() != base_.rank())
    throw InvalidInstance("gram matrix size does not match lattice rank");
  if (!gram_.is_symmetric()) throw InvalidInstance("gram matrix is not symmetric");
  if (determinant(gram_) == 0) throw DegeneratePairing("gram matrix is singular");
  if (!(base_.sigma().transpose() * gram_ * base_.sigma() == gram_))
    throw InvalidInstance("pairing is not G-invariant");
  positive_definite_ = is_positive_definite(gram_);
}

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& map) {
  return map.rows() == target.rank() && map.cols() == source.rank() &&
         target.sigma() * map == map * source.sigma();
}

LatticeIsogeny::LatticeIsogeny(GLattice source, GLattice target, IntMatrix map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (source_.group_order() != target_.group_order())
    throw InvalidInstance("isogeny: source and target carry different group orders");
  if (map_.rows() != target_.rank() || map_.cols() != source_.rank() || !map_.is_square())
    throw NotAnIsogeny("isogeny: map must be square between lattices of equal rank");
  if (determinant(map_) == 0) throw NotAnIsogeny("isogeny: map has determinant zero");
  if (!is_equivariant(source_, target_, map_)) throw NotEquivariant("isogeny: map is not G-equivariant");
}

LatticeIsogeny LatticeIsogeny::dual() const { return LatticeIsogeny(target_.dual(), source_.dual(), map_.transpose()); }

// ---------------------------------------------------------------------------
// z and restrictions

Integer z(const LatticeIsogeny& phi) { return abs(determinant(phi.map())); }

Integer z_via_cokernel(const IntMatrix& phi) {
  AbelianGroup c = cokernel(phi);
  if (!c.is_finite()) throw NotAnIsogeny("cokernel is infinite");
  if (rank(phi) != phi.cols()) throw NotAnIsogeny("map has a kernel");
  return c.torsion.order();
}

IntMatrix restrict_map(const IntMatrix& map, const IntMatrix& source_basis, const IntMatrix& target_basis) {
  // target_basis has independent columns, so B^T B is invertible and
  // H = (B^T B)^-1 B^T (map * source_basis) is the only candidate.
  RatMatrix b = to_rational(target_basis);
  auto gram = inverse(to_rational(target_basis.transpose() * target_basis));
  if (!gram) throw InvalidInstance("restrict_map: target basis is not independent");
  IntMatrix image = map * source_basis;
  auto h = to_integer(*gram * b.transpose() * to_rational(image));
  if (!h || !(target_basis * *h == image))
    throw ContainmentError("restrict_map: image leaves the target sublattice");
  return *h;
}

Integer abs_det_or_one(const IntMatrix& m) {
  if (!m.is_square()) throw NotAnIsogeny("restricted map is not square");
  return abs(determinant(m));
}

InvariantMap invariant_map(const LatticeIsogeny& phi) {
  InvariantMap out;
  out.source_basis = phi.source().fixed_basis();
  out.target_basis = phi.target().fixed_basis();
  out.h0 = restrict_map(phi.map(), out.source_basis, out.target_basis);
  Integer d = abs_det_or_one(out.h0);
  if (d == 0) throw NotAnIsogeny("H^0(phi) is not an isogeny");
  out.z_h0 = Rational(d);
  return out;
}

// ---------------------------------------------------------------------------
// cohomology and pairings

Cohomology cohomology(const GLattice& lattice) {
  Cohomology c;
  AbelianGroup tate = quotient_index(lattice.norm(), lattice.fixed_basis());
  AbelianGroup h1 = quotient_index(lattice.delta(), kernel_basis(lattice.norm()));
  if (!tate.is_finite() || !h1.is_finite()) throw InvalidInstance("cohomology groups are not finite");
  c.tate_h0 = tate.torsion;
  c.h1 = h1.torsion;
  c.herbrand = Rational(c.tate_h0.order(), c.h1.order());
  c.herbrand.canonicalize();
  return c;
}

Discriminant discriminant(const PairedGLattice& lattice) {
  const IntMatrix& q = lattice.gram();
  Discriminant d;
  d.phi_group = cokernel(q).torsion;
  IntMatrix dual_delta = lattice.base().dual().delta();
  // #Phi^G = #ker(sigma^vee - 1 on Phi) = #coker(sigma^vee - 1 on Phi).
  d.fixed_order = finite_order(cokernel(hconcat(dual_delta, q)));
  return d;
}

Integer discriminant_fixed_order_bruteforce(const PairedGLattice& lattice) {
  const IntMatrix& q = lattice.gram();
  IntMatrix dual_delta = lattice.base().dual().delta();
  LatticeCoordinates image(q);
  Integer count = 0;
  for_each_coset(q, [&](const IntMatrix& x) {
    if (image.contains(dual_delta * x)) ++count;
  });
  return count;
}

Integer betts_order(const PairedGLattice& lattice) {
  const IntMatrix& q = lattice.gram();
  IntMatrix norm_kernel = kernel_basis(lattice.base().norm());
  IntMatrix dual_delta = lattice.base().dual().delta();
  return finite_order(quotient_index(dual_delta, hconcat(q * norm_kernel, dual_delta)));
}

Integer betts_order_bruteforce(const PairedGLattice& lattice) {
  const IntMatrix& q = lattice.gram();
  IntMatrix norm_kernel = kernel_basis(lattice.base().norm());
  LatticeCoordinates kernel(norm_kernel);
  auto delta_coords = kernel.coordinates(lattice.base().delta());
  if (!delta_coords) throw InvalidInstance("Delta Lambda is not inside ker N");
  LatticeCoordinates dual_boundaries(lattice.base().dual().delta());
  Integer h1 = 0;
  Integer killed = 0;
  if (kernel.rank() == 0) return 1;
  for_each_coset(*delta_coords, [&](const IntMatrix& coords) {
    ++h1;
    IntMatrix x = kernel.basis() * coords;
    if (dual_boundaries.contains(q * x)) ++killed;
  });
  return h1 / killed;
}

Adjoint adjoint(const IntMatrix& phi, const IntMatrix& gram_source, const IntMatrix& gram_target) {
  auto qa_inv = inverse(to_rational(gram_source));
  if (!qa_inv) throw DegeneratePairing("source gram matrix is singular");
  if (determinant(gram_target) == 0) throw DegeneratePairing("target gram matrix is singular");
  Adjoint a;
  a.rational = *qa_inv * to_rational(phi.transpose()) * to_rational(gram_target);
  a.integral = to_integer(a.rational);
  RatMatrix lhs = to_rational(phi.transpose() * gram_target * phi);
  RatMatrix rhs = to_rational(gram_source) * a.rational * to_rational(phi);
  a.composition_identity = lhs == rhs;
  return a;
}

// ---------------------------------------------------------------------------
// identity reports

Lemma32Report verify_lemma_3_2(const LatticeIsogeny& phi) {
  Lemma32Report r;
  r.z_h0_phi = invariant_map(phi).z_h0;
  r.z_h0_dual = invariant_map(phi.dual()).z_h0;

  IntMatrix norms_a = column_span_basis(phi.source().norm());
  IntMatrix norms_b = column_span_basis(phi.target().norm());
  r.coker_phi_on_norms = abs_det_or_one(restrict_map(phi.map(), norms_a, norms_b));

  Cohomology ca = cohomology(phi.source());
  Cohomology cb = cohomology(phi.target());
  r.h1_source = ca.h1.order();
  r.h1_target = cb.h1.order();
  r.tate_h0_source = ca.tate_h0.order();
  r.tate_h0_target = cb.tate_h0.order();
  r.herbrand_source = ca.herbrand;
  r.herbrand_target = cb.herbrand;

  r.lhs = r.z_h0_phi / r.z_h0_dual;
  r.rhs = Rational(r.h1_target, r.h1_source);
  r.rhs.canonicalize();
  r.tate_ratio = Rational(r.tate_h0_target, r.tate_h0_source);
  r.tate_ratio.canonicalize();

  r.main_identity = r.lhs == r.rhs;
  r.dual_equals_norm_cokernel = r.z_h0_dual == Rational(r.coker_phi_on_norms);
  r.tate_identity = r.z_h0_phi / Rational(r.coker_phi_on_norms) == r.tate_ratio;
  r.herbrand_equal = r.herbrand_source == r.herbrand_target;
  r.pass = r.main_identity && r.dual_equals_norm_cokernel && r.tate_identity && r.herbrand_equal;
  return r;
}

DiscriminantTerms discriminant_terms(const PairedGLattice& lattice) {
  DiscriminantTerms t;
  t.phi_fixed_order = discriminant(lattice).fixed_order;
  GLattice dual = lattice.base().dual();
  IntMatrix h0_iota = restrict_map(lattice.gram(), lattice.base().fixed_basis(), dual.fixed_basis());
  t.z_h0_iota = Rational(abs_det_or_one(h0_iota));
  t.h1_order = cohomology(lattice.base()).h1.order();
  t.betts = betts_order(lattice);
  t.identity = Rational(t.phi_fixed_order * t.betts) == t.z_h0_iota * Rational(t.h1_order);
  return t;
}

namespace {

bool even(long v) { return v % 2 == 0; }

}  // namespace

Prop35Report verify_prop_3_5(const PairedGLattice& source, const PairedGLattice& target, const IntMatrix& phi,
                             const IntMatrix& phi_t, const Integer& p) {
  if (p == 2 || !is_probable_prime(p)) throw InvalidInstance("p must be an odd prime");
  if (!(source.gram() * phi_t == phi.transpose() * target.gram()))
    throw AdjointMismatch("phi^t is not the adjoint of phi for the given pairings");
  LatticeIsogeny iso(source.base(), target.base(), phi);
  LatticeIsogeny iso_t(target.base(), source.base(), phi_t);

  Prop35Report r;
  r.p = p;
  r.source = discriminant_terms(source);
  r.target = discriminant_terms(target);

  IntMatrix fixed_a = source.base().fixed_basis();
  IntMatrix self_map = restrict_map(phi_t * phi, fixed_a, fixed_a);
  r.det_phit_phi_on_fixed = self_map.rows() == 0 ? Integer(1) : determinant(self_map);
  r.z_h0_phit_phi = Rational(abs(r.det_phit_phi_on_fixed));
  r.z_h0_phi = invariant_map(iso).z_h0;
  r.z_h0_dual = invariant_map(iso.dual()).z_h0;

  Rational phi_ratio(r.source.phi_fixed_order, r.target.phi_fixed_order);
  phi_ratio.canonicalize();
  Rational betts_ratio(r.source.betts, r.target.betts);
  betts_ratio.canonicalize();
  Rational iota_ratio = r.source.z_h0_iota / r.target.z_h0_iota;

  r.ratio_identity = phi_ratio == iota_ratio * (r.z_h0_dual / r.z_h0_phi) / betts_ratio;
  r.iota_identity = iota_ratio == r.z_h0_dual * r.z_h0_phi / r.z_h0_phit_phi;

  r.ord_phi_ratio = ord_p(phi_ratio, p);
  r.ord_det = ord_p(r.det_phit_phi_on_fixed, p);
  r.ord_betts_ratio = ord_p(betts_ratio, p);
  r.refined_congruence = even(r.ord_phi_ratio - r.ord_det - r.ord_betts_ratio);
  r.betts_parity_source = even(ord_p(r.source.betts, p));
  r.betts_parity_target = even(ord_p(r.target.betts, p));
  r.headline_congruence = even(r.ord_phi_ratio - r.ord_det);
  r.pass = r.source.identity && r.target.identity && r.ratio_identity && r.iota_identity &&
           r.refined_congruence && r.betts_parity_source && r.betts_parity_target && r.headline_congruence;
  return r;
}

}  // namespace algparity
