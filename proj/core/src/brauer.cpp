#include "algparity/brauer.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "algparity/random.hpp"

namespace algparity {

bool BrauerRelation::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Integer& c) { return c == 0; });
}

IntMatrix permutation_character_matrix(const FiniteGroup& group) {
  const auto& subs = group.subgroup_classes();
  IntMatrix m(group.classes().size(), subs.size());
  for (std::size_t k = 0; k < subs.size(); ++k) {
    auto chi = permutation_character(group, subs[k]);
    for (std::size_t c = 0; c < chi.size(); ++c) m(c, k) = chi[c];
  }
  return m;
}

bool is_brauer_relation(const FiniteGroup& group, const BrauerRelation& theta) {
  if (theta.coefficients.size() != group.subgroup_classes().size()) return false;
  IntMatrix v(theta.coefficients.size(), 1, theta.coefficients);
  return (permutation_character_matrix(group) * v).is_zero();
}

std::vector<BrauerRelation> find_brauer_relations(const FiniteGroup& group) {
  IntMatrix kernel = kernel_basis(permutation_character_matrix(group));
  IntMatrix reduced = hermite_normal_form(kernel.transpose());
  std::vector<BrauerRelation> out;
  for (std::size_t r = 0; r < reduced.rows(); ++r) {
    BrauerRelation rel;
    for (std::size_t k = 0; k < reduced.cols(); ++k) rel.coefficients.push_back(-reduced(r, k));
    out.push_back(std::move(rel));
  }
  return out;
}

std::string format_relation(const FiniteGroup& group, const BrauerRelation& theta) {
  const auto& subs = group.subgroup_classes();
  std::vector<std::string> terms;
  auto term = [&](const Integer& c, std::size_t k) {
    Integer a = abs(c);
    return (a == 1 ? std::string() : a.get_str()) + subs[k].name;
  };
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (theta.coefficients[k] <= 0) continue;
    out << (first ? "" : " + ") << term(theta.coefficients[k], k);
    first = false;
  }
  for (std::size_t k = subs.size(); k-- > 0;) {
    if (theta.coefficients[k] >= 0) continue;
    out << (first ? "-" : " - ") << term(theta.coefficients[k], k);
    first = false;
  }
  return first ? "0" : out.str();
}

BrauerRelation parse_relation(const FiniteGroup& group, const std::string& text) {
  BrauerRelation rel;
  rel.coefficients.assign(group.subgroup_classes().size(), 0);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0" || s.empty()) return rel;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string token = s.substr(pos, end - pos);
    if (token.empty()) throw ParseError("empty term in relation '" + text + "'");
    Integer coeff = 1;
    std::string name = token;
    if (auto star = token.find('*'); star != std::string::npos) {
      coeff = parse_integer(token.substr(0, star));
      name = token.substr(star + 1);
    } else {
      std::size_t digits = 0;
      while (digits < token.size() && std::isdigit(static_cast<unsigned char>(token[digits]))) ++digits;
      if (digits > 0 && digits < token.size()) {
        coeff = parse_integer(token.substr(0, digits));
        name = token.substr(digits);
      }
    }
    auto k = group.find_subgroup(name);
    if (!k) throw ParseError("unknown subgroup '" + name + "' in relation");
    rel.coefficients[*k] += sign * coeff;
    pos = end;
  }
  return rel;
}

// ---------------------------------------------------------------------------
// permutation modules

std::size_t PermutationModule::rank(const FiniteGroup& group) const {
  std::size_t r = 0;
  for (std::size_t k : summands) r += group.order() / group.subgroup_classes()[k].order();
  return r;
}

PermutationModule source_module(const BrauerRelation& theta) {
  PermutationModule m;
  for (std::size_t k = 0; k < theta.coefficients.size(); ++k)
    for (Integer c = theta.coefficients[k]; c > 0; --c) m.summands.push_back(k);
  return m;
}

PermutationModule target_module(const BrauerRelation& theta) {
  PermutationModule m;
  for (std::size_t k = 0; k < theta.coefficients.size(); ++k)
    for (Integer c = theta.coefficients[k]; c < 0; ++c) m.summands.push_back(k);
  return m;
}

namespace {

std::vector<CosetSpace> coset_spaces(const FiniteGroup& group, const PermutationModule& module) {
  std::vector<CosetSpace> spaces;
  for (std::size_t k : module.summands) spaces.emplace_back(group, group.subgroup_classes()[k]);
  return spaces;
}

std::vector<std::size_t> offsets(const std::vector<CosetSpace>& spaces) {
  std::vector<std::size_t> off{0};
  for (const auto& s : spaces) off.push_back(off.back() + s.size());
  return off;
}

}  // namespace

IntMatrix module_action(const FiniteGroup& group, const PermutationModule& module, std::size_t g) {
  auto spaces = coset_spaces(group, module);
  auto off = offsets(spaces);
  IntMatrix m(off.back(), off.back());
  for (std::size_t b = 0; b < spaces.size(); ++b)
    for (std::size_t c = 0; c < spaces[b].size(); ++c) m(off[b] + spaces[b].act(g, c), off[b] + c) = 1;
  return m;
}

bool is_equivariant(const FiniteGroup& group, const EquivariantMap& map) {
  const std::size_t rs = map.source.rank(group);
  const std::size_t rt = map.target.rank(group);
  if (map.matrix.rows() != rt || map.matrix.cols() != rs) return false;
  for (std::size_t s : group.generator_indices())
    if (!(module_action(group, map.target, s) * map.matrix == map.matrix * module_action(group, map.source, s)))
      return false;
  return true;
}

std::vector<IntMatrix> equivariant_hom_basis(const FiniteGroup& group, const PermutationModule& source,
                                             const PermutationModule& target) {
  auto src = coset_spaces(group, source);
  auto tgt = coset_spaces(group, target);
  auto src_off = offsets(src);
  auto tgt_off = offsets(tgt);
  std::vector<IntMatrix> basis;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Subgroup& h = group.subgroup_classes()[source.summands[i]];
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      // Orbits of H on the cosets G/H'_j.
      std::vector<std::size_t> orbit_of(tgt[j].size(), SIZE_MAX);
      std::vector<std::vector<std::size_t>> orbits;
      for (std::size_t y = 0; y < tgt[j].size(); ++y) {
        if (orbit_of[y] != SIZE_MAX) continue;
        std::vector<std::size_t> orbit{y};
        orbit_of[y] = orbits.size();
        for (std::size_t head = 0; head < orbit.size(); ++head)
          for (std::size_t s : h.generators) {
            std::size_t z = tgt[j].act(s, orbit[head]);
            if (orbit_of[z] == SIZE_MAX) {
              orbit_of[z] = orbits.size();
              orbit.push_back(z);
            }
          }
        orbits.push_back(std::move(orbit));
      }
      // f_O(gH) = sum_{y in O} g y.
      for (const auto& orbit : orbits) {
        IntMatrix m(tgt_off.back(), src_off.back());
        for (std::size_t c = 0; c < src[i].size(); ++c) {
          std::size_t g = src[i].representative(c);
          for (std::size_t y : orbit) m(tgt_off[j] + tgt[j].act(g, y), src_off[i] + c) += 1;
        }
        basis.push_back(std::move(m));
      }
    }
  }
  return basis;
}

Realization realize(const FiniteGroup& group, const BrauerRelation& theta, const RealizeOptions& options) {
  if (!is_brauer_relation(group, theta)) throw InvalidInstance("realize: not a Brauer relation");
  Realization out;
  out.phi.source = source_module(theta);
  out.phi.target = target_module(theta);
  const std::size_t n = out.phi.source.rank(group);
  if (n != out.phi.target.rank(group)) throw InvalidInstance("realize: module ranks differ");
  if (n == 0) {
    out.phi.matrix = IntMatrix(0, 0);
    out.dual = IntMatrix(0, 0);
    out.determinant = 1;
    return out;
  }
  auto basis = equivariant_hom_basis(group, out.phi.source, out.phi.target);
  Rng rng(options.seed);
  const int levels = std::max(1, options.max_coefficient);
  for (int bound = 1; bound <= levels; ++bound) {
    std::size_t share = options.budget / static_cast<std::size_t>(levels);
    if (bound == levels) share = options.budget - share * static_cast<std::size_t>(levels - 1);
    for (std::size_t attempt = 0; attempt < share; ++attempt) {
      IntMatrix m(n, n);
      bool nonzero = false;
      for (const auto& b : basis) {
        std::int64_t c = rng.uniform(-bound, bound);
        if (c == 0) continue;
        nonzero = true;
        m += b * Integer(static_cast<long>(c));
      }
      ++out.candidates_tried;
      if (!nonzero) continue;
      Integer det = determinant(m);
      if (det == 0) continue;
      out.phi.matrix = std::move(m);
      out.dual = out.phi.matrix.transpose();
      out.determinant = det;
      return out;
    }
  }
  throw SearchExhausted("realize: no injective equivariant map within " + std::to_string(options.budget) +
                        " candidates");
}

// ---------------------------------------------------------------------------
// Phi^* and regulator constants

namespace {

// Coordinates of v (d x 1) in the independent columns of basis (d x f).
RatMatrix solve_in_basis(const IntMatrix& basis, const RatMatrix& v) {
  RatMatrix b = to_rational(basis);
  auto normal = inverse(b.transpose() * b);
  if (!normal) throw InvalidInstance("fixed-space basis is not independent");
  RatMatrix x = *normal * b.transpose() * v;
  if (!(b * x == v)) throw ActionMismatch("vector is not in the fixed subspace");
  return x;
}

Rational rational_power(const Rational& base, const Integer& exponent) {
  Rational result = 1;
  Integer e = abs(exponent);
  for (Integer k = 0; k < e; ++k) result *= base;
  return exponent < 0 ? Rational(1 / result) : result;
}

}  // namespace

PhiStar phi_star(const FiniteGroup& group, const EquivariantMap& map, const RationalRep& rep) {
  if (rep.group_order() != group.order()) throw ActionMismatch("phi_star: representation is for another group");
  const auto& subs = group.subgroup_classes();
  auto src = coset_spaces(group, map.source);
  auto tgt = coset_spaces(group, map.target);
  auto src_off = offsets(src);
  auto tgt_off = offsets(tgt);
  if (map.matrix.rows() != tgt_off.back() || map.matrix.cols() != src_off.back())
    throw ActionMismatch("phi_star: map does not match its modules");

  PhiStar out;
  std::vector<std::size_t> row_off{0}, col_off{0};
  for (std::size_t k : map.source.summands) {
    out.source_bases.push_back(fixed_space_basis(rep, subs[k]));
    row_off.push_back(row_off.back() + out.source_bases.back().cols());
  }
  for (std::size_t k : map.target.summands) {
    out.target_bases.push_back(fixed_space_basis(rep, subs[k]));
    col_off.push_back(col_off.back() + out.target_bases.back().cols());
  }
  out.matrix = RatMatrix(row_off.back(), col_off.back());

  for (std::size_t j = 0; j < tgt.size(); ++j) {
    const IntMatrix& fj = out.target_bases[j];
    for (std::size_t a = 0; a < fj.cols(); ++a) {
      RatMatrix m = to_rational(fj.column(a));
      // Images rho(g_c) m of m under the coset representatives of G/H'_j.
      std::vector<RatMatrix> translates;
      for (std::size_t c = 0; c < tgt[j].size(); ++c) translates.push_back(rep.image(tgt[j].representative(c)) * m);
      for (std::size_t i = 0; i < src.size(); ++i) {
        // Coset 0 of G/H_i is H_i itself.
        RatMatrix v(rep.degree(), 1);
        for (std::size_t c = 0; c < tgt[j].size(); ++c) {
          const Integer& entry = map.matrix(tgt_off[j] + c, src_off[i]);
          if (entry != 0) v += translates[c] * Rational(entry);
        }
        if (out.source_bases[i].cols() == 0) continue;
        RatMatrix x = solve_in_basis(out.source_bases[i], v);
        for (std::size_t r = 0; r < x.rows(); ++r) out.matrix(row_off[i] + r, col_off[j] + a) = x(r, 0);
      }
    }
  }
  return out;
}

SquareClass regulator_constant(const FiniteGroup& group, const BrauerRelation& theta, const RationalRep& rep) {
  if (rep.group_order() != group.order()) throw ActionMismatch("regulator_constant: representation is for another group");
  const auto& subs = group.subgroup_classes();
  if (theta.coefficients.size() != subs.size()) throw InvalidInstance("relation has the wrong length");
  Rational value = 1;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (theta.coefficients[k] == 0) continue;
    RatMatrix f = to_rational(fixed_space_basis(rep, subs[k]));
    RatMatrix restricted = f.transpose() * rep.gram() * f;
    restricted *= Rational(1, static_cast<unsigned long>(subs[k].order()));
    Rational det = determinant(restricted);
    if (det == 0) throw DegenerateRestriction("pairing is degenerate on the fixed space of " + subs[k].name);
    value *= rational_power(det, theta.coefficients[k]);
  }
  return SquareClass(value);
}

// ---------------------------------------------------------------------------
// tau

namespace {

long to_long_integer(const Rational& r, const char* what) {
  if (r.get_den() != 1) throw InvalidInstance(std::string(what) + " is not an integer");
  return r.get_num().get_si();
}

long parity(long v) { return ((v % 2) + 2) % 2; }

}  // namespace

TauResult tau_candidate(const FiniteGroup& group, const BrauerRelation& theta, const Integer& p,
                        const std::vector<RationalRep>& irreducibles, std::uint64_t seed, std::size_t random_sums) {
  if (p == 2 || !is_probable_prime(p)) throw InvalidInstance("tau_candidate: p must be an odd prime");
  if (!is_brauer_relation(group, theta)) throw InvalidInstance("tau_candidate: not a Brauer relation");
  std::vector<std::vector<Rational>> chars;
  for (const auto& v : irreducibles) chars.push_back(v.character(group));
  for (std::size_t a = 0; a < chars.size(); ++a)
    for (std::size_t b = a + 1; b < chars.size(); ++b)
      if (character_inner_product(group, chars[a], chars[b]) != 0)
        throw InvalidInstance("tau_candidate: " + irreducibles[a].name() + " and " + irreducibles[b].name() +
                              " are not disjoint");

  TauResult out;
  out.p = p;
  // A supplied irreducible V may split over C into m = <chi_V, chi_V> Galois
  // conjugates; tau takes one of them, so it pairs with W as
  // <chi_V, chi_W> / m.
  std::vector<long> ord(irreducibles.size());
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < irreducibles.size(); ++k) {
    ord[k] = regulator_constant(group, theta, irreducibles[k]).ord_p_parity(p);
    if (ord[k] == 1) {
      out.tau.push_back(irreducibles[k].name());
      members.push_back(k);
    }
  }
  auto tau_pairing = [&](const std::vector<Rational>& chi_w) {
    Rational total = 0;
    for (std::size_t k : members)
      total += character_inner_product(group, chars[k], chi_w) / character_inner_product(group, chars[k], chars[k]);
    return to_long_integer(total, "<tau, V>");
  };

  bool pass = true;
  for (std::size_t k = 0; k < irreducibles.size(); ++k) {
    TauCheck check;
    check.label = irreducibles[k].name();
    check.tau_pairing = tau_pairing(chars[k]);
    check.ord_p_constant = ord[k];
    check.holds = parity(check.tau_pairing) == parity(check.ord_p_constant);
    pass = pass && check.holds;
    out.irreducible_checks.push_back(std::move(check));
  }

  Rng rng(seed);
  for (std::size_t trial = 0; trial < random_sums && !irreducibles.empty(); ++trial) {
    std::vector<std::int64_t> mult(irreducibles.size());
    bool any = false;
    while (!any) {
      for (auto& m : mult) {
        m = rng.uniform(0, 2);
        any = any || m > 0;
      }
    }
    std::optional<RationalRep> sum;
    std::string label = "(";
    for (std::size_t k = 0; k < irreducibles.size(); ++k) {
      label += (k ? "," : "") + std::to_string(mult[k]);
      for (std::int64_t c = 0; c < mult[k]; ++c)
        sum = sum ? direct_sum(group, *sum, irreducibles[k]) : irreducibles[k];
    }
    label += ")";
    // A random invariant pairing in a random basis: nothing is inherited from
    // the block structure of the sum.
    const std::size_t d = sum->degree();
    IntMatrix a = random_matrix(rng, d, d, 2);
    RatMatrix seed_form = to_rational(a.transpose() * a + IntMatrix::identity(d));
    RationalRep w = sum->with_gram(group, average_form(*sum, seed_form));
    w = conjugate_rep(group, w, to_rational(random_unimodular(rng, d, 2 * d)));

    TauCheck check;
    check.label = label;
    check.tau_pairing = tau_pairing(w.character(group));
    check.ord_p_constant = regulator_constant(group, theta, w).ord_p_parity(p);
    check.holds = parity(check.tau_pairing) == parity(check.ord_p_constant);
    pass = pass && check.holds;
    out.random_sum_checks.push_back(std::move(check));
  }
  out.pass = pass;
  return out;
}

}  // namespace algparity
