#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algparity/integer.hpp"
#include "algparity/matrix.hpp"

namespace algparity {

// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_k with
// every d_i >= 2. The empty list is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  // Normalizes an arbitrary list of cyclic orders (entries 1 are dropped,
  // entries 0 or negative are rejected) into invariant-factor form.
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<Integer>& orders);
  // Throws InvalidInstance unless `factors` already forms a divisibility chain
  // of integers >= 2.
  static FiniteAbelianGroup from_invariant_factors(std::vector<Integer> factors);

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  Integer order() const;
  Integer exponent() const;
  bool is_trivial() const { return factors_.empty(); }
  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<Integer> factors_;
};

// Finitely generated abelian group Z^free_rank + torsion.
struct AbelianGroup {
  std::size_t free_rank = 0;
  FiniteAbelianGroup torsion;

  bool is_finite() const { return free_rank == 0; }
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

// U * A * V = D with U, V unimodular and D in Smith form. The inverses of U
// and V are carried along so callers can change coordinates both ways.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t rank = 0;

  // The first min(rows, cols) diagonal entries of D.
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

Integer determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);
std::optional<RatMatrix> inverse(const RatMatrix& a);

// coker of A : Z^cols -> Z^rows, i.e. Z^rows / (column span of A).
AbelianGroup cokernel(const IntMatrix& a);

// Columns form a basis of the saturated lattice {x in Z^cols : A x = 0}.
// Returns a cols x 0 matrix when the kernel is zero.
IntMatrix kernel_basis(const IntMatrix& a);

// Basis (as columns) of the column span of A. The result has full column rank.
IntMatrix column_span_basis(const IntMatrix& a);

// Row-style Hermite normal form of the row lattice of A with zero rows
// removed: pivots positive, entries above each pivot reduced into
// [0, pivot). Unique for a given row lattice.
IntMatrix hermite_normal_form(const IntMatrix& a);

// Coordinates with respect to a lattice spanned by arbitrary generators.
// Precomputes a Smith form once so repeated membership tests are cheap.
class LatticeCoordinates {
 public:
  explicit LatticeCoordinates(const IntMatrix& generators);

  std::size_t ambient_dimension() const { return smith_.U.rows(); }
  std::size_t rank() const { return smith_.rank; }
  // Columns form a basis of the span; coordinates() refers to this basis.
  const IntMatrix& basis() const { return basis_; }

  // Coordinates of every column of `vectors` in basis(); nullopt when some
  // column is not in the lattice.
  std::optional<IntMatrix> coordinates(const IntMatrix& vectors) const;
  bool contains(const IntMatrix& vectors) const { return coordinates(vectors).has_value(); }

 private:
  SmithForm smith_;
  IntMatrix basis_;
};

// Structure of span(amb) / span(sub). Throws ContainmentError when some
// column of sub is not in the integer span of amb.
AbelianGroup quotient_index(const IntMatrix& sub, const IntMatrix& amb);

// Order of a finite quotient; throws InvalidInstance when it is infinite.
Integer finite_order(const AbelianGroup& group);

}  // namespace algparity
