#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "condense/lattice.hpp"

using namespace condense;

namespace {

// Powerset of {p,q}: bot, p, q, top in declaration order.
finite_lattice make_b4() {
  return parse_lattice(
      "elements: bot p q top\n"
      "order: bot<=p bot<=q p<=top q<=top\n");
}

// Powerset of {p,q,r}.
finite_lattice make_b8() {
  return parse_lattice(
      "elements: bot p q r pq pr qr top\n"
      "order: bot<=p bot<=q bot<=r\n"
      "order: p<=pq p<=pr q<=pq q<=qr r<=pr r<=qr\n"
      "order: pq<=top pr<=top qr<=top\n");
}

elem_id id_of(const finite_lattice& lat, const std::string& name) {
  auto e = lat.find(name);
  REQUIRE(e.has_value());
  return *e;
}

}  // namespace

TEST_CASE("construction and basic order") {
  finite_lattice b4 = make_b4();
  CHECK(b4.size() == 4);
  elem_id bot = id_of(b4, "bot"), p = id_of(b4, "p"), q = id_of(b4, "q"),
          top = id_of(b4, "top");
  CHECK(b4.bottom() == bot);
  CHECK(b4.top() == top);
  CHECK(b4.leq(bot, p));
  CHECK(b4.leq(p, top));
  CHECK(b4.leq(bot, top));  // transitivity
  CHECK(!b4.leq(p, q));
  CHECK(!b4.leq(q, p));
  CHECK(b4.leq(p, p));  // reflexivity
}

TEST_CASE("lub and glb on b4") {
  finite_lattice b4 = make_b4();
  elem_id bot = id_of(b4, "bot"), p = id_of(b4, "p"), q = id_of(b4, "q"),
          top = id_of(b4, "top");
  CHECK(b4.lub({p, q}) == top);
  CHECK(b4.lub({}) == bot);
  CHECK(b4.lub({q}) == q);
  CHECK(b4.glb({p, q}) == bot);
  CHECK(b4.glb({}) == top);
  CHECK(b4.glb({p, top}) == p);
  CHECK(b4.lub2(p, q) == top);
  CHECK(b4.glb2(p, q) == bot);
}

TEST_CASE("maximal elements") {
  finite_lattice b4 = make_b4();
  elem_id bot = id_of(b4, "bot"), p = id_of(b4, "p"), q = id_of(b4, "q"),
          top = id_of(b4, "top");
  CHECK(b4.maximal_elements({bot, p, q}) == std::vector<elem_id>{p, q});
  CHECK(b4.maximal_elements({}) == std::vector<elem_id>{});
  CHECK(b4.maximal_elements({bot, p, top}) == std::vector<elem_id>{top});
  CHECK(b4.maximal_elements({p, p}) == std::vector<elem_id>{p});
}

TEST_CASE("bound properties over all subsets of b8") {
  finite_lattice b8 = make_b8();
  const std::size_t n = b8.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<elem_id> s;
    for (elem_id e = 0; e < n; ++e)
      if (mask >> e & 1u) s.push_back(e);
    elem_id up = b8.lub(s), down = b8.glb(s);
    for (elem_id e : s) {
      CHECK(b8.leq(e, up));
      CHECK(b8.leq(down, e));
    }
    std::vector<elem_id> maxs = b8.maximal_elements(s);
    for (elem_id m : maxs) {
      CHECK(std::find(s.begin(), s.end(), m) != s.end());
      for (elem_id e : s)
        if (e != m) CHECK(!b8.leq(m, e));
    }
  }
}

TEST_CASE("kleene iteration on b4") {
  finite_lattice b4 = make_b4();
  elem_id bot = id_of(b4, "bot"), p = id_of(b4, "p"), top = id_of(b4, "top");

  std::vector<elem_id> join_p(b4.size()), identity(b4.size()), const_top(b4.size(), top),
      const_bot(b4.size(), bot), meet_p(b4.size());
  for (elem_id x = 0; x < b4.size(); ++x) {
    join_p[x] = b4.lub2(x, p);
    meet_p[x] = b4.glb2(x, p);
    identity[x] = x;
  }
  CHECK(kleene_lfp(make_monotone_map(b4, join_p)) == p);
  CHECK(kleene_lfp(make_monotone_map(b4, identity)) == bot);
  CHECK(kleene_lfp(make_monotone_map(b4, const_top)) == top);
  CHECK(kleene_gfp(make_monotone_map(b4, meet_p)) == p);
  CHECK(kleene_gfp(make_monotone_map(b4, identity)) == top);
  CHECK(kleene_gfp(make_monotone_map(b4, const_bot)) == bot);
}

TEST_CASE("kleene_lfp returns the least fixpoint") {
  finite_lattice b8 = make_b8();
  const std::size_t n = b8.size();
  // All maps x -> (x lub a) glb b are monotone; enumerate them all.
  for (elem_id a = 0; a < n; ++a)
    for (elem_id b = 0; b < n; ++b) {
      std::vector<elem_id> table(n);
      for (elem_id x = 0; x < n; ++x) table[x] = b8.glb2(b8.lub2(x, a), b);
      monotone_map f = make_monotone_map(b8, std::move(table));
      elem_id lfp = kleene_lfp(f), gfp = kleene_gfp(f);
      CHECK(f.table[lfp] == lfp);
      CHECK(f.table[gfp] == gfp);
      for (elem_id x = 0; x < n; ++x)
        if (f.table[x] == x) {
          CHECK(b8.leq(lfp, x));
          CHECK(b8.leq(x, gfp));
        }
    }
}

TEST_CASE("monotone map validation") {
  finite_lattice b4 = make_b4();
  elem_id bot = id_of(b4, "bot"), p = id_of(b4, "p"), q = id_of(b4, "q"),
          top = id_of(b4, "top");
  CHECK_THROWS_AS(make_monotone_map(b4, {top, bot, bot, bot}), structure_error);
  CHECK_THROWS_AS(make_monotone_map(b4, {bot, p}), membership_error);
  CHECK_THROWS_AS(make_monotone_map(b4, {bot, p, q, 99}), membership_error);
}

TEST_CASE("parser rejects bad input") {
  CHECK_THROWS_AS(parse_lattice("elements: a b\norder: a<=c\n"), parse_error);
  CHECK_THROWS_AS(parse_lattice("order: a<=b\n"), parse_error);
  CHECK_THROWS_AS(parse_lattice("elements: a b\norder: a<b\n"), parse_error);
  CHECK_THROWS_AS(parse_lattice("elements: a b\nowner: x\n"), parse_error);
  CHECK_THROWS_AS(parse_lattice(""), parse_error);
  // Cycle collapses under antisymmetry.
  CHECK_THROWS_AS(parse_lattice("elements: a b\norder: a<=b b<=a\n"), parse_error);
  // Two maximal elements: no top, not a lattice.
  CHECK_THROWS_AS(parse_lattice("elements: a b c\norder: a<=b a<=c\n"), parse_error);
  CHECK_THROWS_AS(finite_lattice({"a", "a"}, {}), structure_error);
  CHECK_THROWS_AS(finite_lattice({"a", "b"}, {{0, 7}}), membership_error);
}

TEST_CASE("comments and blank lines are ignored") {
  finite_lattice lat = parse_lattice(
      "# two-point chain\n"
      "\n"
      "elements: lo hi  # inline comment\n"
      "order: lo<=hi\n");
  CHECK(lat.size() == 2);
  CHECK(lat.leq(id_of(lat, "lo"), id_of(lat, "hi")));
}

TEST_CASE("element ids follow declaration order and name lookups agree") {
  finite_lattice b4 = make_b4();
  CHECK(b4.name(0) == "bot");
  CHECK(b4.name(3) == "top");
  CHECK(!b4.find("nope").has_value());
  CHECK_THROWS_AS(b4.name(12), membership_error);
  CHECK_THROWS_AS(b4.leq(0, 12), membership_error);
}

TEST_CASE("large chain skips tables but answers identically") {
  // Force on-demand bounds with a tiny table limit.
  std::vector<std::string> names;
  std::vector<std::pair<elem_id, elem_id>> pairs;
  for (int i = 0; i < 12; ++i) names.push_back("c" + std::to_string(i));
  for (elem_id i = 0; i + 1 < 12; ++i) pairs.push_back({i, i + 1});
  finite_lattice tabled(names, pairs);
  finite_lattice untabled(names, pairs, 4);
  for (elem_id a = 0; a < 12; ++a)
    for (elem_id b = 0; b < 12; ++b) {
      CHECK(tabled.lub2(a, b) == untabled.lub2(a, b));
      CHECK(tabled.glb2(a, b) == untabled.glb2(a, b));
    }
  CHECK(untabled.top() == 11);
  CHECK(untabled.bottom() == 0);
}
