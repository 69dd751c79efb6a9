#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "algparity/brauer.hpp"
#include "algparity/errors.hpp"
#include "algparity/glattice.hpp"
#include "algparity/pgroup.hpp"
#include "algparity/serialize.hpp"
#include "algparity/verify.hpp"

using namespace algparity;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kInvalid = 2;

struct Common {
  std::string file;
  bool json = false;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string fmt(const Integer& v) { return abbreviate(v); }
std::string fmt(const Rational& v) { return abbreviate(v); }

std::string fmt(const FiniteAbelianGroup& g) {
  if (g.is_trivial()) return "0";
  std::string out;
  for (const auto& d : g.invariant_factors()) out += (out.empty() ? "" : " + ") + ("Z/" + fmt(d));
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << '\n';
  return s;
}

Integer parse_prime(const std::string& text) {
  Integer p = parse_integer(text);
  if (p == 2 || !is_probable_prime(p)) throw InvalidInstance("--p must be an odd prime");
  return p;
}

// --- invariants -------------------------------------------------------------

int run_chi(const Common& c, const std::string& method) {
  auto inst = pgroup_from_json(read_json_file(c.file));
  if (!validate(inst)) throw InvalidInstance("the action is not an automorphism of M");
  const ChiMethod m = method == "bruteforce" ? ChiMethod::bruteforce : ChiMethod::fast;
  std::vector<Integer> parts;
  for (int i = 0; i < inst.exponent(); ++i) parts.push_back(chi_component(inst, i, m));
  Integer value = chi(inst, m);
  Integer fixed = fixed_count(inst);
  if (c.json) {
    Json comps = Json::array();
    for (const auto& x : parts) comps.push_back(to_json(x));
    emit(Json{{"chi", to_json(value)},
              {"components", std::move(comps)},
              {"order", to_json(inst.order())},
              {"fixed_count", to_json(fixed)}});
  } else {
    std::cout << "chi = " << fmt(value) << " (mod " << fmt(inst.p()) << ")\n";
    for (std::size_t i = 0; i < parts.size(); ++i) std::cout << "  layer " << i << ": " << fmt(parts[i]) << '\n';
    std::cout << "#M = " << fmt(inst.order()) << ", #M^T = " << fmt(fixed) << '\n';
  }
  return kOk;
}

int run_cohomology(const Common& c) {
  auto lattice = glattice_from_json(read_json_file(c.file));
  auto co = cohomology(lattice);
  if (c.json) {
    emit(to_json(co));
  } else {
    std::cout << "H^0hat = " << fmt(co.tate_h0) << "  (order " << fmt(co.tate_h0.order()) << ")\n"
              << "H^1    = " << fmt(co.h1) << "  (order " << fmt(co.h1.order()) << ")\n"
              << "herbrand quotient = " << fmt(co.herbrand) << '\n';
  }
  return kOk;
}

int run_discriminant(const Common& c) {
  auto lattice = paired_lattice_from_json(read_json_file(c.file));
  auto d = discriminant(lattice);
  if (c.json) {
    emit(to_json(d));
  } else {
    std::cout << "Phi   = " << fmt(d.phi_group) << "  (order " << fmt(d.phi_group.order()) << ")\n"
              << "#Phi^G = " << fmt(d.fixed_order) << '\n';
  }
  return kOk;
}

int run_betts(const Common& c, const std::vector<std::string>& primes, bool bruteforce) {
  auto lattice = paired_lattice_from_json(read_json_file(c.file));
  Integer b = betts_order(lattice);
  std::optional<Integer> brute;
  if (bruteforce) brute = betts_order_bruteforce(lattice);
  Json ords = Json::object();
  bool even = true;
  for (const auto& text : primes) {
    Integer p = parse_prime(text);
    long v = ord_p(b, p);
    ords[p.get_str()] = v;
    even = even && v % 2 == 0;
  }
  const bool agree = !brute || *brute == b;
  if (c.json) {
    Json j{{"betts", to_json(b)}, {"ord_p", ords}};
    if (brute) j["betts_bruteforce"] = to_json(*brute);
    emit(j);
  } else {
    std::cout << "#B = " << fmt(b) << '\n';
    if (brute) std::cout << "#B (bruteforce) = " << fmt(*brute) << '\n';
    for (const auto& [p, v] : ords.items()) std::cout << "  ord_" << p << " = " << v.get<long>() << '\n';
  }
  return even && agree ? kOk : kCounterexample;
}

int run_zfun(const Common& c) {
  Json j = read_json_file(c.file);
  std::vector<std::pair<std::string, Rational>> values;
  if (!j.contains("source")) {
    IntMatrix phi = int_matrix_from_json(j.contains("phi") ? j.at("phi") : j);
    values = {{"z", Rational(z_via_cokernel(phi))}, {"z_dual", Rational(z_via_cokernel(phi.transpose()))}};
  } else {
    auto phi = isogeny_from_json(j);
    values = {{"z", Rational(z(phi))},
              {"z_dual", Rational(z(phi.dual()))},
              {"z_h0", invariant_map(phi).z_h0},
              {"z_h0_dual", invariant_map(phi.dual()).z_h0}};
  }
  if (c.json) {
    Json out = Json::object();
    for (const auto& [k, v] : values) out[k] = to_json(v);
    emit(out);
  } else {
    for (const auto& [k, v] : values) std::cout << k << " = " << fmt(v) << '\n';
  }
  return kOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> p;
  std::optional<std::size_t> max_rank;
  std::optional<unsigned long> max_n;
  unsigned jobs = 1;
  std::string replay;
  std::string out;
  bool json = false;
  bool timing = false;
};

int run_verify(const VerifyArgs& a) {
  VerifyReport report;
  if (!a.replay.empty()) {
    Json file = read_json_file(a.replay);
    if (!a.suite.empty() && file.value("suite", std::string()) != a.suite)
      throw InvalidInstance("replay file is for suite '" + file.value("suite", std::string()) + "'");
    report = replay(file);
  } else {
    if (!is_suite(a.suite)) throw InvalidInstance("unknown suite '" + a.suite + "'");
    SuiteOptions o;
    o.seed = resolve_seed(a.seed);
    o.trials = a.trials;
    if (a.p) o.p = parse_prime(*a.p);
    o.max_rank = a.max_rank;
    o.max_n = a.max_n;
    o.jobs = a.jobs;
    report = run_suite(a.suite, o);
  }
  Json j = to_json(report, a.timing);
  if (!a.out.empty()) write_json_file(a.out, j);
  if (a.json) {
    emit(j);
  } else {
    std::cout << report.suite << ": " << report.trials << " trials, " << report.failures.size() << " failures, seed "
              << report.seed << '\n';
    std::cout << "generation: " << report.generation.draws << " draws, " << report.generation.rejected
              << " rejected, " << report.generation.rescaled << " rescaled\n";
    for (const auto& f : report.failures)
      std::cout << "  trial " << f.trial << " (seed " << f.seed << "): " << f.detail.dump() << '\n';
    std::cout << (report.pass() ? "PASS" : "FAIL") << '\n';
  }
  std::cerr << "wall time: " << report.wall_seconds << " s\n";
  return report.pass() ? kOk : kCounterexample;
}

// --- brauer -----------------------------------------------------------------

struct BrauerArgs {
  std::string group = "S3";
  std::string data_dir = default_data_dir().string();
  std::string relation;
  std::string rep;
  std::optional<std::uint64_t> seed;
  std::size_t budget = 10000;
  int max_coefficient = 3;
  std::string p;
  std::size_t sums = 50;
  bool json = false;
};

BrauerRelation chosen_relation(const FiniteGroup& g, const std::string& text) {
  if (!text.empty()) {
    auto theta = parse_relation(g, text);
    if (!is_brauer_relation(g, theta)) throw InvalidInstance("'" + text + "' is not a Brauer relation");
    return theta;
  }
  auto basis = find_brauer_relations(g);
  if (basis.empty()) {
    BrauerRelation zero;
    zero.coefficients.assign(g.subgroup_classes().size(), 0);
    return zero;
  }
  return basis.front();
}

int run_brauer_subgroups(const BrauerArgs& a) {
  auto data = load_group(a.group, a.data_dir);
  const auto& g = data.group;
  if (a.json) {
    Json subs = Json::array();
    for (const auto& h : g.subgroup_classes()) {
      Json gens = Json::array();
      for (std::size_t x : h.generators) gens.push_back(g.element(x));
      subs.push_back(Json{{"name", h.name}, {"order", h.order()}, {"generators", gens}});
    }
    emit(Json{{"group", g.name()}, {"order", g.order()}, {"classes", g.classes().size()}, {"subgroups", subs}});
  } else {
    std::cout << g.name() << ": order " << g.order() << ", " << g.classes().size() << " conjugacy classes, "
              << g.subgroup_classes().size() << " subgroup classes\n";
    for (const auto& h : g.subgroup_classes()) std::cout << "  " << h.name << "  (order " << h.order() << ")\n";
  }
  return kOk;
}

int run_brauer_find(const BrauerArgs& a) {
  auto data = load_group(a.group, a.data_dir);
  const auto& g = data.group;
  auto basis = find_brauer_relations(g);
  if (a.json) {
    Json rels = Json::array();
    for (const auto& r : basis) rels.push_back(to_json(g, r));
    emit(Json{{"group", g.name()}, {"rank", basis.size()}, {"relations", rels}});
  } else {
    std::cout << g.name() << ": relation lattice of rank " << basis.size() << '\n';
    for (const auto& r : basis) std::cout << "  " << format_relation(g, r) << '\n';
  }
  return kOk;
}

int run_brauer_realize(const BrauerArgs& a) {
  auto data = load_group(a.group, a.data_dir);
  const auto& g = data.group;
  auto theta = chosen_relation(g, a.relation);
  RealizeOptions o;
  o.seed = resolve_seed(a.seed);
  o.budget = a.budget;
  o.max_coefficient = a.max_coefficient;
  auto r = realize(g, theta, o);
  const bool ok = is_equivariant(g, r.phi) && r.determinant != 0;
  if (a.json) {
    Json j = to_json(g, r);
    j["relation"] = format_relation(g, theta);
    j["seed"] = std::to_string(o.seed);
    j["equivariant"] = ok;
    emit(j);
  } else {
    std::cout << "relation: " << format_relation(g, theta) << '\n'
              << "rank " << r.phi.matrix.rows() << ", det = " << fmt(r.determinant) << ", candidates tried "
              << r.candidates_tried << '\n';
    for (std::size_t i = 0; i < r.phi.matrix.rows(); ++i) {
      std::cout << "  ";
      for (std::size_t k = 0; k < r.phi.matrix.cols(); ++k) std::cout << (k ? " " : "") << fmt(r.phi.matrix(i, k));
      std::cout << '\n';
    }
  }
  return ok ? kOk : kCounterexample;
}

int run_brauer_regulator(const BrauerArgs& a) {
  auto data = load_group(a.group, a.data_dir);
  const auto& g = data.group;
  auto theta = chosen_relation(g, a.relation);
  Json rows = Json::array();
  if (!a.json) std::cout << "relation: " << format_relation(g, theta) << '\n';
  bool found = a.rep.empty();
  for (const auto& v : data.representations) {
    if (!a.rep.empty() && v.name() != a.rep) continue;
    found = true;
    auto c = regulator_constant(g, theta, v);
    Integer rep = c.squarefree_representative();
    rows.push_back(Json{{"rep", v.name()}, {"value", to_json(c.value())}, {"square_class", to_json(rep)}});
    if (!a.json) std::cout << "  C(" << v.name() << ") = " << fmt(rep) << " mod squares\n";
  }
  if (!found) throw InvalidInstance("no representation named '" + a.rep + "'");
  if (a.json) emit(Json{{"relation", format_relation(g, theta)}, {"constants", rows}});
  return kOk;
}

int run_brauer_tau(const BrauerArgs& a) {
  auto data = load_group(a.group, a.data_dir);
  const auto& g = data.group;
  auto theta = chosen_relation(g, a.relation);
  Integer p = parse_prime(a.p);
  const std::uint64_t seed = resolve_seed(a.seed);
  auto result = tau_candidate(g, theta, p, data.representations, seed, a.sums);
  if (a.json) {
    Json j = to_json(result);
    j["relation"] = format_relation(g, theta);
    j["seed"] = std::to_string(seed);
    emit(j);
  } else {
    std::cout << "relation: " << format_relation(g, theta) << ", p = " << fmt(p) << '\n' << "tau = ";
    if (result.tau.empty()) std::cout << "0";
    for (std::size_t i = 0; i < result.tau.size(); ++i) std::cout << (i ? " + " : "") << result.tau[i];
    std::cout << '\n';
    for (const auto& c : result.irreducible_checks)
      std::cout << "  " << c.label << ": <tau,V> = " << c.tau_pairing << ", ord_p C = " << c.ord_p_constant
                << (c.holds ? "" : "  MISMATCH") << '\n';
    std::size_t held = 0;
    for (const auto& c : result.random_sum_checks) held += c.holds;
    std::cout << "  random sums: " << held << "/" << result.random_sum_checks.size() << " congruent\n"
              << (result.pass ? "PASS" : "FAIL") << '\n';
  }
  return result.pass ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of finite modules, G-lattices and Brauer relations"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--file", common.file, "Instance file (JSON)")->required();
    sub->add_flag("--json", common.json, "Print JSON");
  };

  std::string chi_method = "fast";
  auto* chi_cmd = app.add_subcommand("chi", "chi_M(T) of a p-group automorphism");
  add_common(chi_cmd);
  chi_cmd->add_option("--method", chi_method, "fast or bruteforce")->check(CLI::IsMember({"fast", "bruteforce"}));

  auto* coh_cmd = app.add_subcommand("cohomology", "Tate H^0 and H^1 of a G-lattice");
  add_common(coh_cmd);
  auto* disc_cmd = app.add_subcommand("discriminant", "Discriminant group and its G-invariants");
  add_common(disc_cmd);

  std::vector<std::string> betts_primes;
  bool betts_brute = false;
  auto* betts_cmd = app.add_subcommand("betts", "Order of the image of H^1(G, L) in H^1(G, L^vee)");
  add_common(betts_cmd);
  betts_cmd->add_option("--p", betts_primes, "Odd primes whose valuations to report");
  betts_cmd->add_flag("--bruteforce", betts_brute, "Cross-check by listing H^1");

  auto* z_cmd = app.add_subcommand("zfun", "z-invariants of an isogeny");
  add_common(z_cmd);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a seeded verification suite");
  verify_cmd->add_option("suite", va.suite, "Suite name")
      ->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--seed", va.seed, "Master seed");
  verify_cmd->add_option("--trials", va.trials, "Number of trials");
  verify_cmd->add_option("--p", va.p, "Odd prime");
  verify_cmd->add_option("--max-rank", va.max_rank, "Largest lattice rank");
  verify_cmd->add_option("--max-n", va.max_n, "Largest cyclic group order");
  verify_cmd->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--replay", va.replay, "Re-run the failures recorded in a report file");
  verify_cmd->add_option("--out", va.out, "Write the JSON report to a file");
  verify_cmd->add_flag("--json", va.json, "Print the JSON report");
  verify_cmd->add_flag("--timing", va.timing, "Include wall time in the JSON report");

  BrauerArgs ba;
  auto* brauer_cmd = app.add_subcommand("brauer", "Brauer relations and regulator constants");
  brauer_cmd->require_subcommand(1);
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", ba.group, "Built-in group name or path to a group data file");
    sub->add_option("--data-dir", ba.data_dir, "Directory containing groups/*.json");
    sub->add_flag("--json", ba.json, "Print JSON");
  };
  auto* subgroups_cmd = brauer_cmd->add_subcommand("subgroups", "Subgroups up to conjugacy");
  add_group(subgroups_cmd);
  auto* find_cmd = brauer_cmd->add_subcommand("find", "Basis of the lattice of Brauer relations");
  add_group(find_cmd);
  auto* realize_cmd = brauer_cmd->add_subcommand("realize", "Find a map realizing a relation");
  add_group(realize_cmd);
  realize_cmd->add_option("--relation", ba.relation, "Relation, e.g. \"2C2 + C3 - 2S3 - 1\"");
  realize_cmd->add_option("--seed", ba.seed, "Search seed");
  realize_cmd->add_option("--budget", ba.budget, "Determinant evaluations");
  realize_cmd->add_option("--max-coefficient", ba.max_coefficient, "Largest coefficient tried")
      ->check(CLI::PositiveNumber);
  auto* reg_cmd = brauer_cmd->add_subcommand("regulator", "Regulator constants of the supplied representations");
  add_group(reg_cmd);
  reg_cmd->add_option("--relation", ba.relation, "Relation");
  reg_cmd->add_option("--rep", ba.rep, "Only this representation");
  auto* tau_cmd = brauer_cmd->add_subcommand("tau", "Candidate tau and its congruence checks");
  add_group(tau_cmd);
  tau_cmd->add_option("--relation", ba.relation, "Relation");
  tau_cmd->add_option("--p", ba.p, "Odd prime")->required();
  tau_cmd->add_option("--seed", ba.seed, "Seed for the random sums");
  tau_cmd->add_option("--sums", ba.sums, "Random direct sums to test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*chi_cmd) return run_chi(common, chi_method);
    if (*coh_cmd) return run_cohomology(common);
    if (*disc_cmd) return run_discriminant(common);
    if (*betts_cmd) return run_betts(common, betts_primes, betts_brute);
    if (*z_cmd) return run_zfun(common);
    if (*verify_cmd) {
      if (va.suite.empty() && va.replay.empty()) throw InvalidInstance("verify needs a suite name or --replay");
      return run_verify(va);
    }
    if (*subgroups_cmd) return run_brauer_subgroups(ba);
    if (*find_cmd) return run_brauer_find(ba);
    if (*realize_cmd) return run_brauer_realize(ba);
    if (*reg_cmd) return run_brauer_regulator(ba);
    if (*tau_cmd) return run_brauer_tau(ba);
  } catch (const SearchExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCounterexample;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
