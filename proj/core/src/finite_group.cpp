#include "algparity/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

namespace algparity {

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : p) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

bool Subgroup::contains(std::size_t g) const { return std::binary_search(elements.begin(), elements.end(), g); }

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  for (std::size_t x = 0; x < degree; ++x) p[x] = static_cast<std::uint32_t>(x);
  return p;
}

void check_permutation(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) throw InvalidInstance("generators act on different numbers of points");
  std::vector<char> hit(degree, 0);
  for (auto v : p) {
    if (v >= degree || hit[v]) throw InvalidInstance("generator is not a permutation");
    hit[v] = 1;
  }
}

}  // namespace

FiniteGroup FiniteGroup::from_generators(std::string name, std::vector<Permutation> generators,
                                         std::size_t max_order) {
  FiniteGroup g;
  g.name_ = std::move(name);
  g.degree_ = generators.empty() ? 1 : generators.front().size();
  for (const auto& p : generators) check_permutation(p, g.degree_);
  g.generators_ = std::move(generators);

  g.elements_.push_back(identity_permutation(g.degree_));
  g.index_.emplace(g.elements_.front(), 0);
  g.word_generator_.push_back(0);
  g.word_parent_.push_back(0);
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (std::size_t s = 0; s < g.generators_.size(); ++s) {
      Permutation next = compose(g.generators_[s], g.elements_[head]);
      if (g.index_.count(next)) continue;
      if (g.elements_.size() >= max_order)
        throw TooLarge("group " + g.name_ + " has more than " + std::to_string(max_order) + " elements");
      g.index_.emplace(next, g.elements_.size());
      g.elements_.push_back(std::move(next));
      g.word_generator_.push_back(s);
      g.word_parent_.push_back(head);
    }
  }
  for (const auto& p : g.generators_) g.generator_indices_.push_back(g.index_of(p));

  g.inverses_.resize(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    Permutation inv(g.degree_);
    for (std::size_t x = 0; x < g.degree_; ++x) inv[g.elements_[i][x]] = static_cast<std::uint32_t>(x);
    g.inverses_[i] = g.index_of(inv);
  }
  g.enumerate_classes();
  g.enumerate_subgroups();
  return g;
}

std::size_t FiniteGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw InvalidInstance("permutation is not an element of " + name_);
  return it->second;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
  return index_.at(compose(elements_[a], elements_[b]));
}

std::size_t FiniteGroup::conjugate(std::size_t g, std::size_t x) const {
  return multiply(multiply(g, x), inverses_[g]);
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != 0; x = multiply(a, x)) ++k;
  return k;
}

void FiniteGroup::enumerate_classes() {
  class_of_.assign(order(), SIZE_MAX);
  for (std::size_t x = 0; x < order(); ++x) {
    if (class_of_[x] != SIZE_MAX) continue;
    ConjugacyClass c;
    c.representative = x;
    std::deque<std::size_t> queue{x};
    class_of_[x] = classes_.size();
    while (!queue.empty()) {
      std::size_t y = queue.front();
      queue.pop_front();
      c.elements.push_back(y);
      for (std::size_t s : generator_indices_) {
        std::size_t z = conjugate(s, y);
        if (class_of_[z] == SIZE_MAX) {
          class_of_[z] = classes_.size();
          queue.push_back(z);
        }
      }
    }
    std::sort(c.elements.begin(), c.elements.end());
    classes_.push_back(std::move(c));
  }
}

Subgroup FiniteGroup::generate(const std::vector<std::size_t>& gens) const {
  std::vector<char> in(order(), 0);
  std::vector<std::size_t> elems{0};
  in[0] = 1;
  Subgroup h;
  // Greedy: a candidate generator is kept only if it enlarges the closure.
  for (std::size_t s : gens) {
    if (in[s]) continue;
    h.generators.push_back(s);
    for (std::size_t head = 0; head < elems.size(); ++head)
      for (std::size_t t : h.generators) {
        std::size_t next = multiply(t, elems[head]);
        if (!in[next]) {
          in[next] = 1;
          elems.push_back(next);
        }
      }
  }
  h.elements = std::move(elems);
  std::sort(h.elements.begin(), h.elements.end());
  return h;
}

std::vector<std::size_t> FiniteGroup::class_profile(const Subgroup& h) const {
  std::vector<std::size_t> profile(classes_.size(), 0);
  for (std::size_t x : h.elements) ++profile[class_of_[x]];
  return profile;
}

std::vector<std::size_t> FiniteGroup::least_conjugate(const Subgroup& h) const {
  std::vector<std::size_t> best = h.elements;
  for (std::size_t g = 1; g < order(); ++g) {
    std::vector<std::size_t> conj;
    conj.reserve(h.elements.size());
    for (std::size_t x : h.elements) conj.push_back(conjugate(g, x));
    std::sort(conj.begin(), conj.end());
    if (conj < best) best = std::move(conj);
  }
  return best;
}

bool FiniteGroup::are_conjugate(const Subgroup& a, const Subgroup& b) const {
  if (a.order() != b.order()) return false;
  if (class_profile(a) != class_profile(b)) return false;
  for (std::size_t g = 0; g < order(); ++g) {
    bool inside = true;
    for (std::size_t x : a.generators)
      if (!b.contains(conjugate(g, x))) {
        inside = false;
        break;
      }
    if (inside) return true;
  }
  return false;
}

std::size_t FiniteGroup::subgroup_class_of(const Subgroup& h) const {
  for (std::size_t k = 0; k < subgroups_.size(); ++k)
    if (are_conjugate(h, subgroups_[k])) return k;
  throw InvalidInstance("subgroup not found among the conjugacy class representatives");
}

void FiniteGroup::enumerate_subgroups() {
  // Every subgroup is reached from the trivial one by adjoining one element
  // at a time, and conjugate subgroups have conjugate extensions, so it is
  // enough to extend one representative per class.
  std::vector<Subgroup> reps{generate({})};
  for (std::size_t head = 0; head < reps.size(); ++head) {
    std::set<std::vector<std::size_t>> tried;
    for (std::size_t g = 1; g < order(); ++g) {
      if (reps[head].contains(g)) continue;
      std::vector<std::size_t> gens = reps[head].generators;
      gens.push_back(g);
      Subgroup k = generate(gens);
      if (!tried.insert(k.elements).second) continue;
      bool known = false;
      for (const auto& r : reps)
        if (are_conjugate(k, r)) {
          known = true;
          break;
        }
      if (!known) reps.push_back(std::move(k));
    }
  }

  for (auto& r : reps) r = generate(least_conjugate(r));
  std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });

  // Default names: 1, C<n>, C2xC2, the group itself, or H<order>.
  std::vector<std::string> base(reps.size());
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Subgroup& h = reps[k];
    bool cyclic = false;
    for (std::size_t x : h.elements)
      if (element_order(x) == h.order()) {
        cyclic = true;
        break;
      }
    if (h.order() == 1) base[k] = "1";
    else if (h.order() == order()) base[k] = name_;
    else if (cyclic) base[k] = "C" + std::to_string(h.order());
    else if (h.order() == 4) base[k] = "C2xC2";
    else base[k] = "H" + std::to_string(h.order());
  }
  std::map<std::string, std::size_t> counts, seen;
  for (const auto& b : base) ++counts[b];
  for (std::size_t k = 0; k < reps.size(); ++k) {
    reps[k].name = base[k];
    if (counts[base[k]] > 1) reps[k].name += static_cast<char>('a' + seen[base[k]]++);
  }
  subgroups_ = std::move(reps);
}

std::optional<std::size_t> FiniteGroup::find_subgroup(const std::string& name) const {
  for (std::size_t k = 0; k < subgroups_.size(); ++k)
    if (subgroups_[k].name == name) return k;
  return std::nullopt;
}

void FiniteGroup::name_subgroups(const std::vector<std::pair<std::string, std::vector<Permutation>>>& named) {
  std::vector<std::string> names(subgroups_.size());
  for (std::size_t k = 0; k < subgroups_.size(); ++k) names[k] = subgroups_[k].name;
  std::vector<char> assigned(subgroups_.size(), 0);
  for (const auto& [name, gens] : named) {
    std::vector<std::size_t> idx;
    for (const auto& p : gens) idx.push_back(index_of(p));
    std::size_t k = subgroup_class_of(generate(idx));
    if (assigned[k]) throw InvalidInstance("two subgroup names refer to the same conjugacy class: " + name);
    assigned[k] = 1;
    names[k] = name;
  }
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) throw InvalidInstance("subgroup names are not unique after renaming");
  for (std::size_t k = 0; k < subgroups_.size(); ++k) subgroups_[k].name = names[k];
}

std::vector<Integer> permutation_character(const FiniteGroup& group, const Subgroup& h) {
  // #fixed cosets of x = |C_G(x)| * |x^G ∩ H| / |H|.
  std::vector<Integer> values;
  std::vector<std::size_t> hits(group.classes().size(), 0);
  for (std::size_t x : h.elements) ++hits[group.class_of(x)];
  for (std::size_t c = 0; c < group.classes().size(); ++c) {
    Integer centralizer = Integer(static_cast<unsigned long>(group.order())) /
                          Integer(static_cast<unsigned long>(group.classes()[c].elements.size()));
    Integer v = centralizer * Integer(static_cast<unsigned long>(hits[c]));
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), h.order());
    values.push_back(v);
  }
  return values;
}

// ---------------------------------------------------------------------------

CosetSpace::CosetSpace(const FiniteGroup& group, const Subgroup& h) : group_(&group) {
  coset_of_.assign(group.order(), SIZE_MAX);
  for (std::size_t g = 0; g < group.order(); ++g) {
    if (coset_of_[g] != SIZE_MAX) continue;
    std::size_t id = representatives_.size();
    representatives_.push_back(g);
    for (std::size_t x : h.elements) coset_of_[group.multiply(g, x)] = id;
  }
}

std::size_t CosetSpace::act(std::size_t g, std::size_t coset) const {
  return coset_of_[group_->multiply(g, representatives_[coset])];
}

// ---------------------------------------------------------------------------
// representations

RationalRep::RationalRep(const FiniteGroup& group, std::string name, std::vector<RatMatrix> generator_images,
                         RatMatrix gram)
    : name_(std::move(name)), generator_images_(std::move(generator_images)) {
  if (generator_images_.size() != group.generators().size())
    throw ActionMismatch("representation " + name_ + ": wrong number of generator images");
  degree_ = generator_images_.empty() ? 0 : generator_images_.front().rows();
  for (const auto& m : generator_images_)
    if (m.rows() != degree_ || m.cols() != degree_)
      throw ActionMismatch("representation " + name_ + ": generator images have inconsistent sizes");
  if (group.generators().empty()) degree_ = gram.rows();

  images_.resize(group.order());
  images_[0] = RatMatrix::identity(degree_);
  for (std::size_t i = 1; i < group.order(); ++i)
    images_[i] = generator_images_[group.word_generator(i)] * images_[group.word_parent(i)];
  for (std::size_t i = 0; i < group.order(); ++i)
    for (std::size_t s = 0; s < group.generators().size(); ++s) {
      std::size_t j = group.multiply(group.generator_indices()[s], i);
      if (!(generator_images_[s] * images_[i] == images_[j]))
        throw ActionMismatch("representation " + name_ + ": generator images violate a group relation");
    }

  if (gram.rows() == 0 && degree_ > 0) {
    gram_ = average_form(*this, RatMatrix::identity(degree_));
  } else {
    gram_ = std::move(gram);
  }
  if (gram_.rows() != degree_ || gram_.cols() != degree_)
    throw NotSelfDual("representation " + name_ + ": gram matrix has the wrong size");
  if (!gram_.is_symmetric()) throw NotSelfDual("representation " + name_ + ": gram matrix is not symmetric");
  if (determinant(gram_) == 0) throw NotSelfDual("representation " + name_ + ": gram matrix is degenerate");
  for (const auto& m : generator_images_)
    if (!(m.transpose() * gram_ * m == gram_))
      throw NotSelfDual("representation " + name_ + ": gram matrix is not G-invariant");
}

std::vector<Rational> RationalRep::character(const FiniteGroup& group) const {
  std::vector<Rational> chi;
  for (const auto& c : group.classes()) {
    Rational t = 0;
    const RatMatrix& m = images_[c.representative];
    for (std::size_t i = 0; i < degree_; ++i) t += m(i, i);
    chi.push_back(t);
  }
  return chi;
}

RationalRep RationalRep::with_gram(const FiniteGroup& group, RatMatrix gram) const {
  return RationalRep(group, name_, generator_images_, std::move(gram));
}

Rational character_inner_product(const FiniteGroup& group, const std::vector<Rational>& a,
                                 const std::vector<Rational>& b) {
  Rational sum = 0;
  for (std::size_t c = 0; c < group.classes().size(); ++c)
    sum += Rational(static_cast<unsigned long>(group.classes()[c].elements.size())) * a[c] * b[c];
  return sum / Rational(static_cast<unsigned long>(group.order()));
}

RationalRep trivial_rep(const FiniteGroup& group) {
  std::vector<RatMatrix> gens(group.generators().size(), RatMatrix::identity(1));
  return RationalRep(group, "trivial", gens, RatMatrix::identity(1));
}

RationalRep direct_sum(const FiniteGroup& group, const RationalRep& a, const RationalRep& b) {
  std::vector<RatMatrix> gens;
  for (std::size_t s = 0; s < group.generators().size(); ++s)
    gens.push_back(block_diagonal(a.generator_images()[s], b.generator_images()[s]));
  return RationalRep(group, a.name() + "+" + b.name(), gens, block_diagonal(a.gram(), b.gram()));
}

RationalRep conjugate_rep(const FiniteGroup& group, const RationalRep& rep, const RatMatrix& x) {
  auto x_inv = inverse(x);
  if (!x_inv) throw DimensionError("conjugate_rep: change of basis is singular");
  std::vector<RatMatrix> gens;
  for (const auto& m : rep.generator_images()) gens.push_back(x * m * *x_inv);
  RatMatrix gram = x_inv->transpose() * rep.gram() * *x_inv;
  return RationalRep(group, rep.name(), gens, gram);
}

RatMatrix average_form(const RationalRep& rep, const RatMatrix& seed) {
  RatMatrix sum(rep.degree(), rep.degree());
  for (std::size_t g = 0; g < rep.group_order(); ++g) sum += rep.image(g).transpose() * seed * rep.image(g);
  return sum;
}

IntMatrix fixed_space_basis(const RationalRep& rep, const Subgroup& h) {
  const std::size_t d = rep.degree();
  // Stack (rho(s) - 1) over generators of h, each row scaled to be integral.
  IntMatrix stacked(0, d);
  for (std::size_t s : h.generators) {
    RatMatrix diff = rep.image(s) - RatMatrix::identity(d);
    Integer den = common_denominator(diff);
    stacked = vconcat(stacked, *to_integer(diff * Rational(den)));
  }
  return kernel_basis(stacked);
}

}  // namespace algparity
