#include "algparity/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <thread>

#include "algparity/errors.hpp"

namespace algparity {

namespace {

const std::vector<Integer> kSmallPrimes{3, 5, 7};
const std::vector<Integer> kBettsPrimes{3, 5, 7, 11, 13};

struct Suite {
  std::uint64_t stream;
  std::size_t trials;
  std::function<Json(Rng&, const SuiteOptions&, GenStats*)> generate;
  std::function<TrialOutcome(const Json&)> check;
};

Integer choose_prime(Rng& rng, const SuiteOptions& o, const std::vector<Integer>& pool = kSmallPrimes) {
  return o.p ? *o.p : rng.pick(pool);
}

GenConfig pgroup_config(const Integer& p) {
  GenConfig cfg;
  cfg.p = p;
  cfg.max_factors = 5;
  cfg.max_exponent = 4;
  return cfg;
}

GenConfig lattice_config(const SuiteOptions& o, std::size_t rank, unsigned long n) {
  GenConfig cfg;
  cfg.max_rank = o.max_rank.value_or(rank);
  cfg.max_n = o.max_n.value_or(n);
  cfg.coefficient_bound = 2;
  return cfg;
}

Integer sign_mod_p(long exponent, const Integer& p) { return exponent % 2 == 0 ? Integer(1) : Integer(p - 1); }

Json chi_components(const PGroupAutInstance& inst, ChiMethod method) {
  Json out = Json::array();
  for (int i = 0; i < inst.exponent(); ++i) out.push_back(to_json(chi_component(inst, i, method)));
  return out;
}

// --- p-group suites --------------------------------------------------------

TrialOutcome check_lemma23(const Json& j) {
  auto inst = pgroup_from_json(j);
  if (!validate(inst)) throw InvalidInstance("not an automorphism");
  const bool involution = acts_as_identity(compose(inst, inst));
  Integer chi_value = chi(inst);
  Integer fixed = fixed_count(inst);
  Integer order = inst.order();
  long k = ord_p(Integer(order / fixed), inst.p());
  Integer expected = sign_mod_p(k, inst.p());
  TrialOutcome out;
  out.pass = involution && chi_value == expected;
  out.detail = Json{{"involution", involution},
                    {"chi", to_json(chi_value)},
                    {"order", to_json(order)},
                    {"fixed_count", to_json(fixed)},
                    {"ord_p_index", k},
                    {"expected", to_json(expected)}};
  return out;
}

TrialOutcome check_lemma25(const Json& j) {
  auto inst = pgroup_from_json(j);
  if (!validate(inst)) throw InvalidInstance("not an automorphism");
  Integer chi_m = chi(inst);
  TrialOutcome out;
  out.pass = true;
  Json rows = Json::array();
  for (int kind = 0; kind < 2; ++kind) {
    for (int jj = 0; jj <= inst.exponent(); ++jj) {
      IntMatrix gens = kind == 0 ? torsion_subgroup_generators(inst, jj) : multiple_subgroup_generators(inst, jj);
      auto split = split_by_subgroup(inst, gens);
      Integer chi_sub = chi(split.sub);
      Integer chi_quot = chi(split.quotient);
      Integer product = mod(chi_sub * chi_quot, inst.p());
      const bool ok = validate(split.sub) && validate(split.quotient) &&
                      split.sub.order() * split.quotient.order() == inst.order() && product == chi_m;
      out.pass = out.pass && ok;
      rows.push_back(Json{{"subgroup", kind == 0 ? "torsion" : "multiple"},
                          {"j", jj},
                          {"sub_order", to_json(split.sub.order())},
                          {"quotient_order", to_json(split.quotient.order())},
                          {"chi_sub", to_json(chi_sub)},
                          {"chi_quotient", to_json(chi_quot)},
                          {"product", to_json(product)},
                          {"holds", ok}});
    }
  }
  out.detail = Json{{"chi", to_json(chi_m)}, {"subgroups", std::move(rows)}};
  return out;
}

TrialOutcome check_ex26(const Json& j) {
  auto inst = pgroup_from_json(j);
  Integer u = integer_from_json(j.at("u"));
  const IntMatrix expected_action = IntMatrix::identity(inst.num_factors()) * u;
  if (!(inst.with_action(expected_action) == inst)) throw InvalidInstance("action is not u times the identity");
  if (!validate(inst)) throw InvalidInstance("u is not a unit mod p");
  long total = 0;
  for (int e : inst.exponents()) total += e;
  Integer expected = 1;
  const Integer um = mod(u, inst.p());
  for (long k = 0; k < total; ++k) expected = mod(expected * um, inst.p());
  Integer chi_value = chi(inst);
  TrialOutcome out;
  out.pass = chi_value == expected;
  out.detail = Json{{"chi", to_json(chi_value)}, {"exponent_sum", total}, {"expected", to_json(expected)}};
  return out;
}

TrialOutcome check_chi_oracle(const Json& j) {
  auto inst = pgroup_from_json(j);
  if (!validate(inst)) throw InvalidInstance("not an automorphism");
  Json fast = chi_components(inst, ChiMethod::fast);
  Json brute = chi_components(inst, ChiMethod::bruteforce);
  Integer fixed = fixed_count(inst);
  Integer fixed_brute = fixed_count_bruteforce(inst);
  TrialOutcome out;
  out.pass = fast == brute && fixed == fixed_brute;
  out.detail = Json{{"components_fast", std::move(fast)},
                    {"components_bruteforce", std::move(brute)},
                    {"fixed_count", to_json(fixed)},
                    {"fixed_count_bruteforce", to_json(fixed_brute)}};
  return out;
}

// Every exponent pattern (partition) with p^(sum) <= 3^10, for p in {3, 5, 7}
// or for the requested prime.
std::vector<std::pair<Integer, std::vector<int>>> oracle_shapes(const std::optional<Integer>& only) {
  std::vector<std::pair<Integer, std::vector<int>>> shapes;
  const Integer limit = pow(Integer(3), 10);
  const std::vector<Integer> primes = only ? std::vector<Integer>{*only} : kSmallPrimes;
  for (const Integer& p : primes) {
    std::function<void(std::vector<int>&, int, Integer)> rec = [&](std::vector<int>& parts, int max_part,
                                                                    Integer order) {
      if (!parts.empty()) shapes.emplace_back(p, parts);
      for (int e = std::min(max_part, 10); e >= 1; --e) {
        Integer next = order * pow(p, static_cast<unsigned long>(e));
        if (next > limit) continue;
        parts.push_back(e);
        rec(parts, e, next);
        parts.pop_back();
      }
    };
    std::vector<int> parts;
    rec(parts, 10, 1);
  }
  if (only && shapes.empty()) {
    // No shape fits under the bound; fall back to Z/p.
    shapes.emplace_back(*only, std::vector<int>{1});
  }
  return shapes;
}

Json gen_chi_oracle(Rng& rng, const SuiteOptions& o, std::size_t trial) {
  static const auto all = oracle_shapes(std::nullopt);
  const auto shapes = o.p ? oracle_shapes(o.p) : all;
  const auto& [p, exps] = shapes[trial % shapes.size()];
  GenConfig cfg = pgroup_config(p);
  for (std::size_t attempt = 0;; ++attempt) {
    const std::size_t r = exps.size();
    IntMatrix t(r, r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) {
        Integer scale = pow(p, static_cast<unsigned long>(std::max(0, exps[k] - exps[l])));
        t(k, l) = scale * Integer(static_cast<long>(rng.uniform(0, pow(p, static_cast<unsigned long>(exps[k])).get_si() - 1)));
      }
    auto inst = PGroupAutInstance::make(p, exps, t);
    if (validate(inst)) return to_json(inst);
    if (attempt > cfg.retry_budget) throw RetryBudgetExhausted("chi-oracle: no automorphism found");
  }
}

// --- lattice suites --------------------------------------------------------

TrialOutcome check_lemma31(const Json& j) {
  IntMatrix phi = int_matrix_from_json(j.at("phi"));
  if (phi.rows() != phi.cols()) throw DimensionError("phi must be square");
  Integer det = abs(determinant(phi));
  if (det == 0) throw NotAnIsogeny("phi is singular");
  Integer z_phi = z_via_cokernel(phi);
  Integer z_dual = z_via_cokernel(phi.transpose());
  TrialOutcome out;
  out.pass = z_phi == z_dual && z_phi == det;
  out.detail = Json{{"z_phi", to_json(z_phi)}, {"z_dual", to_json(z_dual)}, {"abs_det", to_json(det)}};
  return out;
}

TrialOutcome check_lemma32(const Json& j) {
  auto phi = isogeny_from_json(j);
  auto report = verify_lemma_3_2(phi);
  return TrialOutcome{report.pass, to_json(report)};
}

bool annihilated_by(const FiniteAbelianGroup& g, unsigned long n) {
  return g.is_trivial() || Integer(n) % g.exponent() == 0;
}

TrialOutcome check_herbrand(const Json& j) {
  auto phi = isogeny_from_json(j);
  const unsigned long n = phi.source().group_order();
  auto ca = cohomology(phi.source());
  auto cb = cohomology(phi.target());
  Integer z_phi = z(phi);
  Integer z_dual = z(phi.dual());
  TrialOutcome out;
  const bool equal = ca.herbrand == cb.herbrand;
  const bool killed = annihilated_by(ca.tate_h0, n) && annihilated_by(ca.h1, n) && annihilated_by(cb.tate_h0, n) &&
                      annihilated_by(cb.h1, n);
  out.pass = equal && killed && z_phi == z_dual;
  out.detail = Json{{"source", to_json(ca)},
                    {"target", to_json(cb)},
                    {"herbrand_equal", equal},
                    {"annihilated_by_n", killed},
                    {"z_phi", to_json(z_phi)},
                    {"z_dual", to_json(z_dual)}};
  return out;
}

TrialOutcome check_prop34(const Json& j) {
  auto lattice = paired_lattice_from_json(j.at("lattice"));
  std::vector<Integer> primes;
  for (const auto& p : j.at("primes")) primes.push_back(integer_from_json(p));
  Integer betts = betts_order(lattice);
  auto disc = discriminant(lattice);
  Integer det_q = abs(determinant(lattice.gram()));
  TrialOutcome out;
  out.pass = disc.phi_group.order() == det_q;
  Json ords = Json::object();
  for (const auto& p : primes) {
    long v = ord_p(betts, p);
    ords[p.get_str()] = v;
    out.pass = out.pass && v % 2 == 0;
  }
  out.detail = Json{{"betts", to_json(betts)}, {"ord_p", std::move(ords)}, {"phi_order", to_json(disc.phi_group.order())},
                    {"abs_det_gram", to_json(det_q)}};
  if (lattice.base().rank() <= 4) {
    Integer brute = betts_order_bruteforce(lattice);
    out.detail["betts_bruteforce"] = to_json(brute);
    out.pass = out.pass && brute == betts;
  }
  return out;
}

TrialOutcome check_prop35(const Json& j) {
  auto pair = paired_isogeny_from_json(j);
  Integer p = integer_from_json(j.at("p"));
  auto report = verify_prop_3_5(pair.source, pair.target, pair.phi, pair.phi_t, p);
  auto adj = adjoint(pair.phi, pair.source.gram(), pair.target.gram());
  TrialOutcome out;
  out.pass = report.pass && adj.composition_identity;
  out.detail = to_json(report);
  out.detail["composition_identity"] = adj.composition_identity;
  return out;
}

Json pair_without_pairing(const PairedIsogeny& pair) {
  return Json{{"n", pair.source.base().group_order()},
              {"source", {{"sigma", to_json(pair.source.base().sigma())}}},
              {"target", {{"sigma", to_json(pair.target.base().sigma())}}},
              {"phi", to_json(pair.phi)}};
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table = [] {
    std::map<std::string, Suite> t;
    t["lemma23"] = {1, 500,
                    [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                      return to_json(gen_pgroup(rng, pgroup_config(choose_prime(rng, o)), true, s));
                    },
                    check_lemma23};
    t["lemma25"] = {2, 300,
                    [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                      return to_json(gen_pgroup(rng, pgroup_config(choose_prime(rng, o)), false, s));
                    },
                    check_lemma25};
    t["ex26"] = {3, 100,
                 [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                   GenConfig cfg = pgroup_config(choose_prime(rng, o));
                   auto base = gen_pgroup(rng, cfg, false, s);
                   const Integer modulus = pow(cfg.p, static_cast<unsigned long>(base.exponent()));
                   Integer u;
                   do {
                     u = Integer(static_cast<long>(rng.uniform(1, modulus.get_si() - 1)));
                   } while (mod(u, cfg.p) == 0);
                   Json j = to_json(base.with_action(IntMatrix::identity(base.num_factors()) * u));
                   j["u"] = to_json(u);
                   return j;
                 },
                 check_ex26};
    t["chi-oracle"] = {4, 370, nullptr, check_chi_oracle};
    t["lemma31"] = {5, 500,
                    [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                      auto rank = static_cast<std::size_t>(
                          rng.uniform(1, static_cast<std::int64_t>(o.max_rank.value_or(8))));
                      return Json{{"phi", to_json(gen_isogeny_matrix(rng, rank, 9, 1000, s))}};
                    },
                    check_lemma31};
    t["lemma32"] = {6, 200,
                    [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                      return pair_without_pairing(gen_paired_isogeny(rng, lattice_config(o, 6, 6), s));
                    },
                    check_lemma32};
    t["herbrand"] = {7, 200,
                     [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                       return pair_without_pairing(gen_paired_isogeny(rng, lattice_config(o, 6, 6), s));
                     },
                     check_herbrand};
    t["prop34"] = {8, 200,
                   [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                     Json primes = Json::array();
                     if (o.p) {
                       primes.push_back(to_json(*o.p));
                     } else {
                       for (const auto& p : kBettsPrimes) primes.push_back(to_json(p));
                     }
                     return Json{{"lattice", to_json(gen_paired_lattice(rng, lattice_config(o, 12, 14), s))},
                                 {"primes", std::move(primes)}};
                   },
                   check_prop34};
    t["prop35"] = {9, 200,
                   [](Rng& rng, const SuiteOptions& o, GenStats* s) {
                     Integer p = choose_prime(rng, o);
                     Json j = to_json(gen_paired_isogeny(rng, lattice_config(o, 6, 7), s));
                     j["p"] = to_json(p);
                     return j;
                   },
                   check_prop35};
    return t;
  }();
  return table;
}

const Suite& find_suite(const std::string& name) {
  auto it = suites().find(name);
  if (it == suites().end()) throw InvalidInstance("unknown suite '" + name + "'");
  return it->second;
}

void validate_options(const SuiteOptions& o) {
  if (o.p && (*o.p == 2 || !is_probable_prime(*o.p))) throw InvalidInstance("--p must be an odd prime");
  if (o.max_rank && *o.max_rank == 0) throw InvalidInstance("--max-rank must be positive");
  if (o.max_n && *o.max_n == 0) throw InvalidInstance("--max-n must be positive");
}

TrialOutcome guarded_check(const Suite& suite, const Json& instance) {
  try {
    return suite.check(instance);
  } catch (const Error& e) {
    return TrialOutcome{false, Json{{"error", e.what()}}};
  } catch (const nlohmann::json::exception& e) {
    return TrialOutcome{false, Json{{"error", e.what()}}};
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma23", "lemma25", "ex26",   "lemma31",   "lemma32",
                                              "prop34",  "prop35",  "chi-oracle", "herbrand"};
  return names;
}

bool is_suite(const std::string& name) { return suites().count(name) > 0; }

std::size_t default_trials(const std::string& suite) { return find_suite(suite).trials; }

Json generate_instance(const std::string& name, const SuiteOptions& options, std::size_t trial, GenStats* stats) {
  const Suite& suite = find_suite(name);
  Rng rng(derive_seed(options.seed, suite.stream, trial));
  if (name == "chi-oracle") {
    if (stats) ++stats->draws;
    return gen_chi_oracle(rng, options, trial);
  }
  return suite.generate(rng, options, stats);
}

TrialOutcome check_instance(const std::string& name, const Json& instance) {
  return guarded_check(find_suite(name), instance);
}

VerifyReport run_suite(const std::string& name, const SuiteOptions& options) {
  const Suite& suite = find_suite(name);
  validate_options(options);
  const auto start = std::chrono::steady_clock::now();

  VerifyReport report;
  report.suite = name;
  report.seed = options.seed;
  report.trials = options.trials.value_or(suite.trials);
  report.parameters = Json::object();
  if (options.p) report.parameters["p"] = to_json(*options.p);
  if (options.max_rank) report.parameters["max_rank"] = *options.max_rank;
  if (options.max_n) report.parameters["max_n"] = *options.max_n;

  struct Slot {
    GenStats stats;
    std::optional<TrialFailure> failure;
  };
  std::vector<Slot> slots(report.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < report.trials; t = next++) {
      Slot& slot = slots[t];
      const std::uint64_t seed = derive_seed(options.seed, suite.stream, t);
      Json instance;
      try {
        instance = generate_instance(name, options, t, &slot.stats);
      } catch (const Error& e) {
        slot.failure = TrialFailure{t, seed, Json(), Json{{"error", e.what()}}};
        continue;
      }
      TrialOutcome outcome = guarded_check(suite, instance);
      if (!outcome.pass) slot.failure = TrialFailure{t, seed, std::move(instance), std::move(outcome.detail)};
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& slot : slots) {
    report.generation += slot.stats;
    if (slot.failure) report.failures.push_back(std::move(*slot.failure));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const TrialFailure& f) {
  return Json{{"trial", f.trial}, {"seed", std::to_string(f.seed)}, {"instance", f.instance}, {"detail", f.detail}};
}

Json to_json(const VerifyReport& r, bool include_timing) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  Json j{{"suite", r.suite},
         {"seed", std::to_string(r.seed)},
         {"trials", r.trials},
         {"parameters", r.parameters},
         {"generation", to_json(r.generation)},
         {"failures", std::move(failures)},
         {"pass", r.pass()}};
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

VerifyReport replay(const Json& file) {
  auto seed_of = [](const Json& j, const char* key) -> std::uint64_t {
    if (!j.contains(key)) return 0;
    const Json& v = j.at(key);
    if (v.is_string()) return std::stoull(v.get<std::string>());
    return v.get<std::uint64_t>();
  };
  if (!file.is_object() || !file.contains("suite")) throw ParseError("replay file must name its suite");
  VerifyReport report;
  report.suite = file.at("suite").get<std::string>();
  const Suite& suite = find_suite(report.suite);
  report.seed = seed_of(file, "seed");
  report.parameters = file.value("parameters", Json::object());

  std::vector<Json> entries;
  if (file.contains("failures")) {
    for (const auto& f : file.at("failures")) entries.push_back(f);
  } else if (file.contains("instance")) {
    entries.push_back(file);
  } else {
    throw ParseError("replay file has neither 'failures' nor 'instance'");
  }
  report.trials = entries.size();
  for (const auto& e : entries) {
    if (!e.contains("instance")) throw ParseError("failure entry without an instance");
    TrialFailure f;
    f.trial = e.value("trial", std::size_t{0});
    f.seed = seed_of(e, "seed");
    f.instance = e.at("instance");
    if (f.instance.is_null()) {
      // Generation itself failed: regenerate from the trial seed.
      SuiteOptions o;
      o.seed = report.seed;
      if (report.parameters.contains("p")) o.p = integer_from_json(report.parameters.at("p"));
      if (report.parameters.contains("max_rank")) o.max_rank = report.parameters.at("max_rank").get<std::size_t>();
      if (report.parameters.contains("max_n")) o.max_n = report.parameters.at("max_n").get<unsigned long>();
      try {
        f.instance = generate_instance(report.suite, o, f.trial);
      } catch (const Error& err) {
        f.instance = Json();
        f.detail = Json{{"error", err.what()}};
        report.failures.push_back(std::move(f));
        continue;
      }
      auto outcome = guarded_check(suite, f.instance);
      if (outcome.pass) continue;
      f.detail = std::move(outcome.detail);
      report.failures.push_back(std::move(f));
      continue;
    }
    auto outcome = guarded_check(suite, f.instance);
    if (outcome.pass) continue;
    f.detail = std::move(outcome.detail);
    report.failures.push_back(std::move(f));
  }
  return report;
}

}  // namespace algparity
