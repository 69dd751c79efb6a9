#include "algparity/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "algparity/errors.hpp"

#ifndef ALGPARITY_DEFAULT_DATA_DIR
#define ALGPARITY_DEFAULT_DATA_DIR "data"
#endif

namespace algparity {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

template <class T, class Parse>
Matrix<T> matrix_from_json(const Json& j, Parse parse) {
  const Json& entries = j.is_array() ? j : field(j, "entries");
  if (!entries.is_array()) throw ParseError("matrix entries must be an array of rows");
  std::size_t rows = entries.size();
  std::size_t cols = rows ? entries.at(0).size() : 0;
  if (j.is_object()) {
    if (j.contains("rows")) rows = size_from_json(j.at("rows"), "rows");
    if (j.contains("cols")) cols = size_from_json(j.at("cols"), "cols");
  }
  if (entries.size() != rows) throw ParseError("matrix has the wrong number of rows");
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = entries.at(i);
    if (!row.is_array() || row.size() != cols) throw ParseError("matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse(row.at(k));
  }
  return m;
}

template <class T, class Write>
Json matrix_to_json(const Matrix<T>& m, Write write) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(write(m(i, k)));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Json integer_list(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("permutation must be an array");
  Permutation p;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw ParseError("permutation entries must be >= 0");
    p.push_back(x.get<std::uint32_t>());
  }
  return p;
}

}  // namespace

Json to_json(const Integer& value) { return value.get_str(); }

Integer integer_from_json(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return parse_integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return parse_integer(std::to_string(j.get<unsigned long long>()));
  throw ParseError("expected an integer or a decimal string");
}

Json to_json(const Rational& value) {
  return Json{{"num", value.get_num().get_str()}, {"den", value.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    const Json& num = field(j, "num");
    std::string den = j.contains("den") ? integer_from_json(j.at("den")).get_str() : "1";
    return parse_rational(integer_from_json(num).get_str(), den);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (auto slash = s.find('/'); slash != std::string::npos)
      return parse_rational(s.substr(0, slash), s.substr(slash + 1));
  }
  return Rational(integer_from_json(j));
}

Json to_json(const IntMatrix& m) {
  return matrix_to_json(m, [](const Integer& x) { return to_json(x); });
}

IntMatrix int_matrix_from_json(const Json& j) { return matrix_from_json<Integer>(j, integer_from_json); }

Json to_json(const RatMatrix& m) {
  return matrix_to_json(m, [](const Rational& x) { return to_json(x); });
}

RatMatrix rat_matrix_from_json(const Json& j) { return matrix_from_json<Rational>(j, rational_from_json); }

Json to_json(const FiniteAbelianGroup& g) {
  return Json{{"invariant_factors", integer_list(g.invariant_factors())}, {"order", to_json(g.order())}};
}

Json to_json(const AbelianGroup& g) {
  return Json{{"free_rank", g.free_rank}, {"torsion", to_json(g.torsion)}};
}

Json to_json(const PGroupAutInstance& inst) {
  return Json{{"p", to_json(inst.p())}, {"exponents", inst.exponents()}, {"action", to_json(inst.action())}};
}

PGroupAutInstance pgroup_from_json(const Json& j) {
  Integer p = integer_from_json(field(j, "p"));
  const Json& e = field(j, "exponents");
  if (!e.is_array()) throw ParseError("exponents must be an array");
  std::vector<int> exps;
  for (const auto& x : e) {
    if (!x.is_number_integer()) throw ParseError("exponents must be integers");
    exps.push_back(x.get<int>());
  }
  return PGroupAutInstance::make(p, exps, int_matrix_from_json(field(j, "action")));
}

Json to_json(const GLattice& lattice) {
  return Json{{"n", lattice.group_order()}, {"sigma", to_json(lattice.sigma())}};
}

GLattice glattice_from_json(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) throw ParseError("n must be a positive integer");
  return GLattice(n.get<unsigned long>(), int_matrix_from_json(field(j, "sigma")));
}

Json to_json(const PairedGLattice& lattice) {
  Json j = to_json(lattice.base());
  j["gram"] = to_json(lattice.gram());
  return j;
}

PairedGLattice paired_lattice_from_json(const Json& j) {
  return PairedGLattice(glattice_from_json(j), int_matrix_from_json(field(j, "gram")));
}

Json to_json(const PairedIsogeny& pair) {
  return Json{{"n", pair.source.base().group_order()},
              {"source", {{"sigma", to_json(pair.source.base().sigma())}, {"gram", to_json(pair.source.gram())}}},
              {"target", {{"sigma", to_json(pair.target.base().sigma())}, {"gram", to_json(pair.target.gram())}}},
              {"phi", to_json(pair.phi)},
              {"phi_t", to_json(pair.phi_t)}};
}

namespace {

Json with_n(const Json& side, const Json& n) {
  Json j = side;
  j["n"] = n;
  return j;
}

}  // namespace

PairedIsogeny paired_isogeny_from_json(const Json& j) {
  const Json& n = field(j, "n");
  PairedGLattice source = paired_lattice_from_json(with_n(field(j, "source"), n));
  PairedGLattice target = paired_lattice_from_json(with_n(field(j, "target"), n));
  IntMatrix phi = int_matrix_from_json(field(j, "phi"));
  LatticeIsogeny check(source.base(), target.base(), phi);
  IntMatrix phi_t;
  if (j.contains("phi_t")) {
    phi_t = int_matrix_from_json(j.at("phi_t"));
  } else {
    auto adj = adjoint(phi, source.gram(), target.gram());
    if (!adj.integral) throw AdjointMismatch("the adjoint of phi is not integral");
    phi_t = *adj.integral;
  }
  return PairedIsogeny{std::move(source), std::move(target), std::move(phi), std::move(phi_t)};
}

LatticeIsogeny isogeny_from_json(const Json& j) {
  const Json& n = field(j, "n");
  return LatticeIsogeny(glattice_from_json(with_n(field(j, "source"), n)),
                        glattice_from_json(with_n(field(j, "target"), n)), int_matrix_from_json(field(j, "phi")));
}

Json to_json(const Cohomology& c) {
  return Json{{"tate_h0", to_json(c.tate_h0)}, {"h1", to_json(c.h1)}, {"herbrand", to_json(c.herbrand)}};
}

Json to_json(const Discriminant& d) {
  return Json{{"phi_group", to_json(d.phi_group)}, {"fixed_order", to_json(d.fixed_order)}};
}

Json to_json(const DiscriminantTerms& t) {
  return Json{{"phi_fixed_order", to_json(t.phi_fixed_order)},
              {"z_h0_iota", to_json(t.z_h0_iota)},
              {"h1_order", to_json(t.h1_order)},
              {"betts", to_json(t.betts)},
              {"identity", t.identity}};
}

Json to_json(const Lemma32Report& r) {
  return Json{{"z_h0_phi", to_json(r.z_h0_phi)},
              {"z_h0_dual", to_json(r.z_h0_dual)},
              {"coker_phi_on_norms", to_json(r.coker_phi_on_norms)},
              {"h1_source", to_json(r.h1_source)},
              {"h1_target", to_json(r.h1_target)},
              {"tate_h0_source", to_json(r.tate_h0_source)},
              {"tate_h0_target", to_json(r.tate_h0_target)},
              {"herbrand_source", to_json(r.herbrand_source)},
              {"herbrand_target", to_json(r.herbrand_target)},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"tate_ratio", to_json(r.tate_ratio)},
              {"main_identity", r.main_identity},
              {"dual_equals_norm_cokernel", r.dual_equals_norm_cokernel},
              {"tate_identity", r.tate_identity},
              {"herbrand_equal", r.herbrand_equal},
              {"pass", r.pass}};
}

Json to_json(const Prop35Report& r) {
  return Json{{"p", to_json(r.p)},
              {"source", to_json(r.source)},
              {"target", to_json(r.target)},
              {"det_phit_phi_on_fixed", to_json(r.det_phit_phi_on_fixed)},
              {"z_h0_phi", to_json(r.z_h0_phi)},
              {"z_h0_dual", to_json(r.z_h0_dual)},
              {"z_h0_phit_phi", to_json(r.z_h0_phit_phi)},
              {"ratio_identity", r.ratio_identity},
              {"iota_identity", r.iota_identity},
              {"ord_phi_ratio", r.ord_phi_ratio},
              {"ord_det", r.ord_det},
              {"ord_betts_ratio", r.ord_betts_ratio},
              {"refined_congruence", r.refined_congruence},
              {"betts_parity_source", r.betts_parity_source},
              {"betts_parity_target", r.betts_parity_target},
              {"headline_congruence", r.headline_congruence},
              {"pass", r.pass}};
}

Json to_json(const GenStats& s) {
  return Json{{"draws", s.draws}, {"rejected", s.rejected}, {"rescaled", s.rescaled}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

GroupData group_data_from_json(const Json& j) {
  std::string name = field(j, "name").get<std::string>();
  std::vector<Permutation> gens;
  for (const auto& g : field(j, "generators")) gens.push_back(permutation_from_json(g));
  FiniteGroup group = FiniteGroup::from_generators(name, gens);
  if (j.contains("subgroups")) {
    std::vector<std::pair<std::string, std::vector<Permutation>>> named;
    for (const auto& s : j.at("subgroups")) {
      std::vector<Permutation> sg;
      for (const auto& g : field(s, "generators")) sg.push_back(permutation_from_json(g));
      named.emplace_back(field(s, "name").get<std::string>(), std::move(sg));
    }
    group.name_subgroups(named);
  }
  std::vector<RationalRep> reps;
  if (j.contains("representations")) {
    for (const auto& r : j.at("representations")) {
      std::vector<RatMatrix> images;
      for (const auto& m : field(r, "generators")) images.push_back(rat_matrix_from_json(m));
      RatMatrix gram = r.contains("gram") ? rat_matrix_from_json(r.at("gram")) : RatMatrix();
      reps.emplace_back(group, field(r, "name").get<std::string>(), std::move(images), std::move(gram));
    }
  }
  return GroupData{std::move(group), std::move(reps)};
}

GroupData load_group_data(const std::filesystem::path& path) {
  try {
    return group_data_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::filesystem::path default_data_dir() { return ALGPARITY_DEFAULT_DATA_DIR; }

GroupData load_group(const std::string& name_or_path, const std::filesystem::path& data_dir) {
  std::filesystem::path builtin = data_dir / "groups" / (name_or_path + ".json");
  if (std::filesystem::exists(builtin)) return load_group_data(builtin);
  if (std::filesystem::exists(name_or_path)) return load_group_data(name_or_path);
  throw InvalidInstance("unknown group '" + name_or_path + "'");
}

std::vector<std::string> builtin_group_names(const std::filesystem::path& data_dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir / "groups", ec))
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

Json to_json(const FiniteGroup& group, const BrauerRelation& theta) {
  Json coeffs = Json::object();
  const auto& subs = group.subgroup_classes();
  for (std::size_t k = 0; k < subs.size(); ++k) coeffs[subs[k].name] = to_json(theta.coefficients[k]);
  return Json{{"text", format_relation(group, theta)}, {"coefficients", std::move(coeffs)}};
}

BrauerRelation relation_from_json(const FiniteGroup& group, const Json& j) {
  if (j.is_string()) return parse_relation(group, j.get<std::string>());
  if (j.contains("coefficients")) {
    BrauerRelation theta;
    theta.coefficients.assign(group.subgroup_classes().size(), 0);
    for (const auto& [name, value] : j.at("coefficients").items()) {
      auto k = group.find_subgroup(name);
      if (!k) throw ParseError("unknown subgroup '" + name + "' in relation");
      theta.coefficients[*k] = integer_from_json(value);
    }
    return theta;
  }
  return parse_relation(group, field(j, "text").get<std::string>());
}

Json to_json(const FiniteGroup& group, const Realization& r) {
  auto names = [&](const PermutationModule& m) {
    Json out = Json::array();
    for (std::size_t k : m.summands) out.push_back(group.subgroup_classes()[k].name);
    return out;
  };
  return Json{{"source", names(r.phi.source)},
              {"target", names(r.phi.target)},
              {"phi", to_json(r.phi.matrix)},
              {"dual", to_json(r.dual)},
              {"determinant", to_json(r.determinant)},
              {"candidates_tried", r.candidates_tried}};
}

Json to_json(const TauResult& r) {
  auto checks = [](const std::vector<TauCheck>& v) {
    Json out = Json::array();
    for (const auto& c : v)
      out.push_back(Json{{"label", c.label},
                         {"tau_pairing", c.tau_pairing},
                         {"ord_p_constant", c.ord_p_constant},
                         {"holds", c.holds}});
    return out;
  };
  return Json{{"p", to_json(r.p)},
              {"tau", r.tau},
              {"irreducible_checks", checks(r.irreducible_checks)},
              {"random_sum_checks", checks(r.random_sum_checks)},
              {"pass", r.pass}};
}

}  // namespace algparity
