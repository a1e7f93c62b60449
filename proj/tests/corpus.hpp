#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "condense/domain.hpp"
#include "condense/lp.hpp"
#include "condense/shells.hpp"
#include "condense/subst.hpp"
#include "condense/subst_quantale.hpp"

// Seeded random corpus shared by the sweep tests: programs over the default
// carrier, random fixpoint-family domains (which in practice all fail weak
// completeness), and weak-complete shells grown from structured seed
// domains. Everything is a pure function of the seed.
namespace corpus {

using namespace condense;

inline carrier_config default_config() {
  return {{"X", "Y"}, {"Z", "W"}, {"a"}};
}

inline subst_set random_set(const sub_carrier& c, std::mt19937_64& rng) {
  subst_set s = subst_set::empty_set(c);
  for (auto& w : s.mask) w = rng();
  const std::size_t tail = c.size() & 63;
  if (tail) s.mask.back() &= (std::uint64_t{1} << tail) - 1;
  return s;
}

// Seed pool for the shell half of the corpus. Weak shells of structured
// generators stay small; shells of arbitrary random subsets are intractable,
// their arrow families enumerate a free meet semilattice of the carrier.
inline std::vector<subst_set> shell_seed_pool(const sub_carrier& c) {
  named_set_table t = named_sets(c);
  std::vector<subst_set> pool = {t.i_xy, t.g_xy, t.eg, t.g_or_eg};
  for (const char* text : {"{ eps }", "{ X/a }", "{ Y/a }", "{ X/a, Y/a }", "{ Y/X }"})
    pool.push_back(parse_set_expr(c, text));
  pool.push_back(down_closure(c, parse_set_expr(c, "{ X/a }")));
  pool.push_back(down_closure(c, parse_set_expr(c, "{ Y/X }")));
  return pool;
}

inline std::string random_fact(std::mt19937_64& rng) {
  static const char* pool[] = {"TOP",     "I(X,Y)",  "G(X,Y)",       "EG",
                               "{ eps }", "{ X/a }", "{ Y/a }",      "{ X/a, Y/a }",
                               "{ Y/X }", "EMPTY"};
  return pool[rng() % (sizeof pool / sizeof pool[0])];
}

inline std::string random_body(std::mt19937_64& rng, const std::vector<std::string>& preds,
                               int depth) {
  const std::uint64_t roll = rng() % 100;
  if (depth >= 3 || roll < 45) return random_fact(rng);
  if (roll < 60) return preds[rng() % preds.size()] + "(X,Y)";
  std::string l = "(" + random_body(rng, preds, depth + 1) + ")";
  std::string r = "(" + random_body(rng, preds, depth + 1) + ")";
  return roll < 80 ? l + " * " + r : l + " + " + r;
}

inline program random_program(const sub_carrier& c, std::mt19937_64& rng) {
  static const char* names[] = {"p", "q", "r"};
  const std::size_t np = 1 + rng() % 3;
  std::vector<std::string> preds(names, names + np);
  std::string text;
  for (const auto& pr : preds)
    text += pr + "(X,Y) <- " + random_body(rng, preds, 0) + ".\n";
  return parse_program(c, text);
}

struct corpus_t {
  std::vector<program> programs;
  std::vector<sub_domain> domains;  // random Moore closures
  std::vector<sub_domain> shells;   // weak shells of structured seed domains
};

inline corpus_t build_corpus(const sub_carrier& c, const sub_quantale& q, std::uint64_t seed,
                             std::size_t n_programs = 100, std::size_t n_domains = 20) {
  std::mt19937_64 rng(seed);
  corpus_t out;
  out.programs.reserve(n_programs);
  for (std::size_t i = 0; i < n_programs; ++i) out.programs.push_back(random_program(c, rng));
  const std::vector<subst_set> pool = shell_seed_pool(c);
  out.domains.reserve(n_domains);
  out.shells.reserve(n_domains);
  for (std::size_t i = 0; i < n_domains; ++i) {
    const std::size_t k = 2 + rng() % 3;
    std::vector<subst_set> gens;
    gens.reserve(k);
    for (std::size_t j = 0; j < k; ++j) gens.push_back(random_set(c, rng));
    out.domains.push_back(make_domain(q, std::move(gens)));
    const std::size_t m = 1 + rng() % 3;
    std::vector<subst_set> seeds;
    seeds.reserve(m);
    for (std::size_t j = 0; j < m; ++j) seeds.push_back(pool[rng() % pool.size()]);
    out.shells.push_back(weak_complete_shell(q, make_domain(q, std::move(seeds))));
  }
  return out;
}

}  // namespace corpus
