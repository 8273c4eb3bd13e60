#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "arbor/acceptance/acceptance.hpp"
#include "arbor/criterion/cache.hpp"
#include "arbor/criterion/json.hpp"
#include "arbor/tree/tree.hpp"

using namespace arbor;
using nlohmann::json;

namespace {

struct Flags {
  std::string map = "x^2-1";
  std::string alpha = "1";
  std::optional<unsigned> depth;
  std::vector<std::string> samples;
  std::size_t primes = 25;
  std::uint64_t seed = 42;
  std::size_t degree_cap = kDefaultDegreeCap;
  bool json = false;
  std::string cache;
  std::uint64_t p = 2;
  unsigned n = 1;
  unsigned s = 2;
};

void print_text(const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      print_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    std::cout << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Flags& f, const json& j) {
  if (f.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    print_text(j);
  }
}

std::vector<Rational> parse_samples(const Flags& f) {
  std::vector<Rational> out;
  for (const auto& s : f.samples) out.push_back(parse_rational(s));
  return out;
}

TowerOptions tower_options(const Flags& f) {
  TowerOptions o;
  o.degree_cap = f.degree_cap;
  return o;
}

json cmd_orbit(const Flags& f) {
  const UnicriticalMap m = parse_map(f.map);
  const OrbitResult r = critical_orbit(m);
  json out = orbit_json(r);
  out["map"] = map_json(m);
  if (std::holds_alternative<CriticalOrbit>(r)) {
    const auto w = collision_condition(m);
    out["collision"] = w ? json(to_string(*w)) : json();
  }
  return out;
}

json cmd_wreath(const Flags& f) {
  const unsigned depth = f.depth.value_or(3);
  const WreathDescriptor w(f.p, f.n, depth);
  const Integer order = group_order(w);
  json out{{"p", f.p}, {"n", f.n}, {"depth", depth}, {"order", integer_json(order)},
           {"maximal", integer_json(maximal_subgroup_count(f.p, f.n, depth))}};
  if (order <= kElementCap) {
    const FrattiniData fd = brute_force_frattini(w);
    out["bruteforce"] = {{"rank", fd.rank},
                         {"maximal", integer_json(fd.maximal_subgroups)},
                         {"frattini_order", fd.frattini_order}};
  } else {
    out["bruteforce"] = {{"skipped", "group order above " + std::to_string(kElementCap)}};
  }
  return out;
}

json cmd_freegroup(const Flags& f) {
  return {{"s", f.s},
          {"p", f.p},
          {"formula", integer_json(free_group_index_p_normal_count(f.s, f.p))},
          {"enumerated", integer_json(enumerate_index_p_normal_subgroups(f.s, f.p))}};
}

json cmd_profile(const Flags& f) {
  const GaloisProfile P =
      specialization_profile(parse_map(f.map), parse_rational(f.alpha), f.depth.value_or(2), tower_options(f));
  return profile_json(P);
}

json cmd_frobenius(const Flags& f) {
  const UnicriticalMap m = parse_map(f.map);
  const unsigned n = f.depth.value_or(2);
  return {{"map", map_json(m)},
          {"alpha", f.alpha},
          {"n", n},
          {"samples", frobenius_json(frobenius_samples(m, parse_rational(f.alpha), n, f.primes))}};
}

json cmd_constants(const Flags& f) {
  const UnicriticalMap m = parse_map(f.map);
  const std::vector<Rational> samples = f.samples.empty() ? default_samples(m) : parse_samples(f);
  const unsigned depth = f.depth.value_or(2);
  json js = json::array();
  for (const auto& a : samples) js.push_back(rational_json(a));
  return {{"map", map_json(m)},
          {"depth", depth},
          {"samples", js},
          {"constants", candidates_json(constant_candidates(m, depth, samples, tower_options(f)))}};
}

json cmd_criterion(const Flags& f) {
  RunConfig cfg;
  cfg.constants_depth = f.depth;
  if (!f.samples.empty()) cfg.samples = parse_samples(f);
  cfg.prime_budget = f.primes;
  cfg.seed = f.seed;
  cfg.tower = tower_options(f);
  std::optional<FactCache> cache;
  if (!f.cache.empty()) {
    cache.emplace(f.cache);
    cfg.cache = &*cache;
  }
  return report_json(criterion_report(parse_map(f.map), parse_rational(f.alpha), cfg));
}

int cmd_selftest(const Flags& f) {
  const auto results = run_acceptance_with_determinism(f.seed);
  bool ok = true;
  for (const auto& r : results) ok &= r.pass;
  if (f.json) {
    std::cout << acceptance_json(results, f.seed).dump(2) << "\n";
  } else {
    for (const auto& r : results) std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arbor: arboreal Galois toolkit"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", f.json, "JSON output");
    c->add_option("--degree-cap", f.degree_cap, "largest tower degree");
    c->add_option("--cache", f.cache, "fact cache file");
    c->add_option("--seed", f.seed, "random seed");
  };
  auto add_map = [&](CLI::App* c) { c->add_option("--map", f.map, "x^d+c or p=2,n=1,c=-1"); };

  auto* orbit = app.add_subcommand("orbit", "critical orbit or non-PCF certificate");
  add_map(orbit);
  add_common(orbit);

  auto* wreath = app.add_subcommand("wreath", "orders, maximal subgroups, brute-force Frattini");
  wreath->add_option("--p", f.p, "prime");
  wreath->add_option("--n", f.n, "exponent");
  wreath->add_option("--depth", f.depth, "tree depth");
  add_common(wreath);

  auto* freegroup = app.add_subcommand("freegroup", "index-p normal subgroups of a free group");
  freegroup->add_option("--s", f.s, "rank");
  freegroup->add_option("--p", f.p, "prime");
  add_common(freegroup);

  auto* profile = app.add_subcommand("profile", "degrees of the specialization tower");
  add_map(profile);
  profile->add_option("--alpha", f.alpha, "basepoint");
  profile->add_option("--depth", f.depth, "levels");
  add_common(profile);

  auto* frob = app.add_subcommand("frobenius", "factor degrees of f^n(x) - alpha mod primes");
  add_map(frob);
  frob->add_option("--alpha", f.alpha, "basepoint");
  frob->add_option("--depth", f.depth, "iterate n");
  frob->add_option("--primes", f.primes, "number of primes");
  add_common(frob);

  auto* constants = app.add_subcommand("constants", "constant-field candidate ledger");
  add_map(constants);
  constants->add_option("--depth", f.depth, "depth");
  constants->add_option("--samples", f.samples, "basepoints")->delimiter(',');
  add_common(constants);

  auto* criterion = app.add_subcommand("criterion", "full criterion report");
  add_map(criterion);
  criterion->add_option("--alpha", f.alpha, "basepoint");
  criterion->add_option("--depth", f.depth, "depth for the constant-field tests");
  criterion->add_option("--samples", f.samples, "basepoints")->delimiter(',');
  criterion->add_option("--primes", f.primes, "prime budget");
  add_common(criterion);

  auto* selftest = app.add_subcommand("selftest", "acceptance suite");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*selftest) return cmd_selftest(f);
    json out;
    if (*orbit) out = cmd_orbit(f);
    if (*wreath) out = cmd_wreath(f);
    if (*freegroup) out = cmd_freegroup(f);
    if (*profile) out = cmd_profile(f);
    if (*frob) out = cmd_frobenius(f);
    if (*constants) out = cmd_constants(f);
    if (*criterion) out = cmd_criterion(f);
    if (!out.contains("schema")) out["schema"] = kSchema;
    emit(f, out);
    return 0;
  } catch (const CapExceeded& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return 1;
  }
}
