#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "condense/domain.hpp"
#include "condense/errors.hpp"
#include "condense/quantale.hpp"
#include "condense/shells.hpp"
#include "condense/subst.hpp"
#include "condense/subst_quantale.hpp"

using namespace condense;

namespace {

const char* b4_text =
    "elements: bot p q top\n"
    "order: bot<=p bot<=q p<=top q<=top\n"
    "tensor-builtin: meet\n"
    "unit: top\n";

const char* l4_text =
    "elements: n0 n1 n2 n3\n"
    "order: n0<=n1 n1<=n2 n2<=n3\n"
    "tensor: n0 n0 -> n0\n"
    "tensor: n0 n1 -> n0\n"
    "tensor: n0 n2 -> n0\n"
    "tensor: n0 n3 -> n0\n"
    "tensor: n1 n1 -> n0\n"
    "tensor: n1 n2 -> n0\n"
    "tensor: n1 n3 -> n1\n"
    "tensor: n2 n2 -> n1\n"
    "tensor: n2 n3 -> n2\n"
    "tensor: n3 n3 -> n3\n"
    "unit: n3\n";

const explicit_quantale& b4() {
  static explicit_quantale q = parse_quantale(b4_text);
  return q;
}

const explicit_quantale& l4() {
  static explicit_quantale q = parse_quantale(l4_text);
  return q;
}

std::vector<const explicit_quantale*> small_quantales() {
  static explicit_quantale b2 = parse_quantale(
      "elements: bot top\norder: bot<=top\ntensor-builtin: meet\nunit: top\n");
  static explicit_quantale c5 = parse_quantale(
      "elements: c0 c1 c2 c3 c4\norder: c0<=c1 c1<=c2 c2<=c3 c3<=c4\n"
      "tensor-builtin: meet\nunit: c4\n");
  static explicit_quantale d6 = parse_quantale(
      "elements: d1 d2 d3 d6\norder: d1<=d2 d1<=d3 d2<=d6 d3<=d6\n"
      "tensor-builtin: meet\nunit: d6\n");
  return {&b2, &b4(), &l4(), &c5, &d6};
}

elem_id id(const explicit_quantale& q, std::string_view name) {
  auto e = q.lattice().find(name);
  REQUIRE(e.has_value());
  return *e;
}

explicit_domain dom(const explicit_quantale& q, std::vector<std::string> names) {
  std::vector<elem_id> fix;
  for (const auto& n : names) fix.push_back(id(q, n));
  return make_domain(q, std::move(fix));
}

const sub_carrier& default_carrier() {
  static sub_carrier c({{"X", "Y"}, {"Z", "W"}, {"a"}});
  return c;
}

}  // namespace

TEST_CASE("the identity domain keeps every element and is complete") {
  const explicit_quantale& q = b4();
  explicit_domain c = identity_domain(q.lattice());
  CHECK(c.fix == std::vector<elem_id>{0, 1, 2, 3});
  CHECK(is_complete(q, c).ok);
  CHECK(is_weak_complete(q, c).ok);
  CHECK(domain_eq(q, complete_shell(q, c), c));
  CHECK(domain_eq(q, weak_complete_shell(q, c), c));
}

TEST_CASE("tensor sections tabulate multiplication by each fixpoint") {
  const explicit_quantale& q = b4();
  explicit_domain eta = dom(q, {"top", "p"});
  std::vector<monotone_map> fam = tensor_sections(q, eta);
  REQUIRE(fam.size() == 2);
  // eta.fix is sorted by element id, so the section by p comes first.
  CHECK(fam[0].table == std::vector<elem_id>{0, 1, 0, 1});
  CHECK(fam[1].table == std::vector<elem_id>{0, 1, 2, 3});

  const explicit_quantale& l = l4();
  std::vector<monotone_map> secs = tensor_sections(l, identity_domain(l.lattice()));
  REQUIRE(secs.size() == 4);
  CHECK(secs[1].table == std::vector<elem_id>{0, 0, 0, 1});
  CHECK(secs[3].table == std::vector<elem_id>{0, 1, 2, 3});
}

TEST_CASE("the refinement operator collects maximal preimages and Moore-closes") {
  const explicit_quantale& q = b4();
  const finite_lattice& lat = q.lattice();

  monotone_map meet_p = make_monotone_map(lat, {0, 1, 0, 1});
  explicit_domain rho = dom(q, {"top", "bot"});
  explicit_domain refined = rf_operator(lat, {meet_p}, rho);
  CHECK(refined.fix == std::vector<elem_id>{id(q, "q"), id(q, "top")});

  CHECK(rf_operator(lat, {}, rho).fix == std::vector<elem_id>{id(q, "top")});

  explicit_domain a = dom(q, {"top", "p"});
  explicit_domain via_rf = rf_operator(lat, tensor_sections(q, identity_domain(lat)), a);
  CHECK(domain_eq(q, via_rf, a));

  explicit_quantale other = parse_quantale(b4_text);
  monotone_map foreign = make_monotone_map(other.lattice(), {0, 1, 0, 1});
  CHECK_THROWS_WITH_AS(rf_operator(lat, {foreign}, rho),
                       "function family over a different lattice", structure_error);
}

TEST_CASE("section refinement coincides with the lifted implication") {
  for (const explicit_quantale* q : small_quantales()) {
    std::vector<explicit_domain> all = enumerate_domains(q->lattice());
    for (const auto& eta : all)
      for (const auto& rho : all) {
        explicit_domain lhs = rf_operator(q->lattice(), tensor_sections(*q, eta), rho);
        explicit_domain rhs = lin_arrow_domain(*q, eta, rho);
        CHECK(domain_eq(*q, lhs, rhs));
      }
  }
}

TEST_CASE("the lifted implication distributes over meets and refines its target") {
  for (const explicit_quantale* q : {&b4(), &l4()}) {
    std::vector<explicit_domain> all = enumerate_domains(q->lattice());
    explicit_domain c = identity_domain(q->lattice());
    for (const auto& a : all) {
      CHECK(domain_eq(*q, lin_arrow_domain(*q, a, explicit_domain{{q->top()}}),
                      explicit_domain{{q->top()}}));
      explicit_domain ca = lin_arrow_domain(*q, c, a);
      CHECK(domain_leq(*q, ca, a));
      CHECK(domain_eq(*q, ca, lin_arrow_domain(*q, c, ca)));
      for (const auto& b1 : all)
        for (const auto& b2 : all) {
          explicit_domain meet = reduced_product(*q, {b1, b2});
          CHECK(domain_eq(*q, lin_arrow_domain(*q, a, meet),
                          reduced_product(*q, {lin_arrow_domain(*q, a, b1),
                                               lin_arrow_domain(*q, a, b2)})));
        }
    }
  }
}

TEST_CASE("the lifted implication reproduces the independence computations") {
  const sub_carrier& c = default_carrier();
  sub_quantale q(c);
  named_set_table t = named_sets(c);

  sub_domain psh = make_domain(q, {t.top, t.i_xy});
  sub_domain arrow = lin_arrow_domain(q, psh, psh);
  CHECK(domain_eq(q, arrow, make_domain(q, {t.top, t.g_xy, t.g_or_eg})));

  sub_domain rho2 = make_domain(q, {t.top, t.i_xy, t.g_xy, t.g_or_eg});
  sub_domain arrow2 = lin_arrow_domain(q, rho2, rho2);
  CHECK(!domain_eq(q, arrow2, rho2));
  CHECK(contains_elem(q, arrow2.fix, residual_sets(t.i_xy, t.g_or_eg)));

  sub_carrier other({{"X", "Y"}, {"Z", "W"}, {"a"}});
  sub_domain foreign = make_domain(sub_quantale(other), {subst_set::full_set(other)});
  CHECK_THROWS_AS(lin_arrow_domain(q, psh, foreign), membership_error);
}

TEST_CASE("the complete shell iterates to its closed form") {
  const explicit_quantale& q = b4();

  std::vector<explicit_domain> trace;
  explicit_domain top_only{{q.top()}};
  CHECK(domain_eq(q, complete_shell(q, top_only, &trace), top_only));
  CHECK(trace.size() == 1);

  trace.clear();
  explicit_domain a = dom(q, {"top", "p"});
  explicit_domain shell = complete_shell(q, a, &trace);
  CHECK(domain_eq(q, shell, a));
  REQUIRE(trace.size() == 2);
  CHECK(domain_eq(q, trace[0], top_only));
  CHECK(domain_eq(q, trace[1], a));

  trace.clear();
  explicit_domain ab = dom(q, {"top", "bot"});
  explicit_domain shell2 = complete_shell(q, ab, &trace);
  CHECK(domain_eq(q, shell2, identity_domain(q.lattice())));
  REQUIRE(trace.size() == 3);
  CHECK(domain_eq(q, trace[1], ab));
  CHECK(domain_eq(q, trace[2], shell2));

  const explicit_quantale& l = l4();
  trace.clear();
  explicit_domain chain = complete_shell(l, dom(l, {"n3", "n1"}), &trace);
  CHECK(domain_eq(l, chain, dom(l, {"n3", "n2", "n1"})));
  CHECK(trace.size() == 3);

  for (const explicit_quantale* fq : small_quantales()) {
    explicit_domain whole = identity_domain(fq->lattice());
    for (const auto& d : enumerate_domains(fq->lattice())) {
      explicit_domain s = complete_shell(*fq, d);
      CHECK(domain_eq(*fq, s, lin_arrow_domain(*fq, whole, d)));
      CHECK(domain_leq(*fq, s, d));
      CHECK(is_complete(*fq, s).ok);
    }
  }
}

TEST_CASE("the complete shell refuses oversized carriers") {
  std::string elems = "elements:";
  std::string order = "order:";
  for (int i = 0; i < 513; ++i) {
    elems += " e" + std::to_string(i);
    if (i) order += " e" + std::to_string(i - 1) + "<=e" + std::to_string(i);
  }
  explicit_quantale big = parse_quantale(elems + "\n" + order +
                                         "\ntensor-builtin: meet\nunit: e512\n");
  explicit_domain top_only{{big.top()}};
  CHECK_THROWS_AS(complete_shell(big, top_only), size_limit_error);
  CHECK_THROWS_AS(shell_closure_map(big, top_only, big.top()), size_limit_error);
}

TEST_CASE("the shell closure map is the closure of the complete shell") {
  const explicit_quantale& q = b4();
  explicit_domain a = dom(q, {"top", "p"});
  CHECK(shell_closure_map(q, a, id(q, "q")) == id(q, "top"));
  CHECK(shell_closure_map(q, a, id(q, "top")) == id(q, "top"));
  CHECK(shell_closure_map(q, a, id(q, "p")) == id(q, "p"));

  for (const explicit_quantale* fq : small_quantales()) {
    for (const auto& d : enumerate_domains(fq->lattice())) {
      explicit_domain shell = complete_shell(*fq, d);
      for (elem_id c = 0; c < fq->size(); ++c) {
        elem_id via_map = shell_closure_map(*fq, d, c);
        CHECK(via_map == apply_closure(*fq, shell, c));
        if (contains_elem(*fq, shell.fix, c)) CHECK(via_map == c);
      }
    }
  }
}

TEST_CASE("the weak shell stops at the largest residual-closed refinement") {
  const explicit_quantale& q = b4();

  std::size_t stab = 99;
  explicit_domain top_only{{q.top()}};
  CHECK(domain_eq(q, weak_complete_shell(q, top_only, 10000, &stab), top_only));
  CHECK(stab == 0);

  explicit_domain a = dom(q, {"top", "p"});
  explicit_domain w = weak_complete_shell(q, a, 10000, &stab);
  CHECK(domain_eq(q, w, a));
  CHECK(domain_eq(q, w, complete_shell(q, a)));
  CHECK(stab == 1);

  // {top,bot} is already residual-closed, so the weak shell keeps it even
  // though its complete shell is the whole lattice.
  explicit_domain ab = dom(q, {"top", "bot"});
  explicit_domain wab = weak_complete_shell(q, ab);
  CHECK(domain_eq(q, wab, ab));
  CHECK(is_weak_complete(q, wab).ok);
  CHECK(!is_complete(q, ab).ok);

  const explicit_quantale& l = l4();
  explicit_domain lw = weak_complete_shell(l, dom(l, {"n3", "n1"}), 10000, &stab);
  CHECK(domain_eq(l, lw, dom(l, {"n3", "n1"})));
  CHECK(stab == 1);

  CHECK_THROWS_WITH_AS(weak_complete_shell(q, a, 0),
                       "weak shell iteration cap of 0 exceeded", iteration_cap_error);
  CHECK_THROWS_AS(weak_complete_shell(q, a, 1), iteration_cap_error);

  for (const explicit_quantale* fq : small_quantales())
    for (const auto& d : enumerate_domains(fq->lattice())) {
      explicit_domain wd = weak_complete_shell(*fq, d);
      CHECK(domain_leq(*fq, wd, d));
      CHECK(is_weak_complete(*fq, wd).ok);
      // The weak shell is the greatest residual-closed domain below the
      // input: any other candidate refines it.
      for (const auto& cand : enumerate_domains(fq->lattice()))
        if (domain_leq(*fq, cand, d) && is_weak_complete(*fq, cand).ok)
          CHECK(domain_leq(*fq, cand, wd));
    }
}

TEST_CASE("the weak shell of the independence domain adds six residual sets") {
  const sub_carrier& c = default_carrier();
  sub_quantale q(c);
  named_set_table t = named_sets(c);
  sub_domain a = make_domain(q, {t.top, t.i_xy});

  std::size_t stab = 0;
  sub_domain shell = weak_complete_shell(q, a, 10000, &stab);
  REQUIRE(shell.fix.size() == 10);
  CHECK(stab == 5);
  CHECK(is_weak_complete(q, shell).ok);
  CHECK(domain_leq(q, shell, a));

  for (const subst_set& fixed : {t.top, t.i_xy, t.g_xy, t.g_or_eg})
    CHECK(contains_elem(q, shell.fix, fixed));
  CHECK(contains_elem(q, shell.fix, residual_sets(t.i_xy, t.g_or_eg)));

  std::vector<std::size_t> counts;
  for (const auto& s : shell.fix) counts.push_back(s.count());
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<std::size_t>{25, 26, 27, 29, 30, 37, 42, 42, 47, 52});

  // The two fixpoints just above the escaped residual and just above the
  // ground-or-equations set reinstate the same single sharing member.
  subst_set odd = parse_set_expr(c, "{ Y/X, Z/a, W/a }");
  subst_set esc = residual_sets(t.i_xy, t.g_or_eg);
  CHECK(contains_elem(q, shell.fix, esc | odd));
  CHECK(contains_elem(q, shell.fix, t.g_or_eg | odd));

  // Running the construction again on its own output changes nothing.
  CHECK(domain_eq(q, weak_complete_shell(q, shell), shell));
}

TEST_CASE("completeness predicates decide and witness") {
  const explicit_quantale& q = b4();
  CHECK(is_complete(q, dom(q, {"top", "p"})).ok);
  CHECK(is_complete(q, explicit_domain{{q.top()}}).ok);

  check_result<elem_id> r = is_complete(q, dom(q, {"top", "bot"}));
  REQUIRE(!r.ok);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first == id(q, "p"));
  CHECK(r.witness->second == id(q, "q"));

  const explicit_quantale& l = l4();
  CHECK(is_complete(l, dom(l, {"n3", "n2", "n1"})).ok);
  check_result<elem_id> rl = is_complete(l, dom(l, {"n3", "n1"}));
  REQUIRE(!rl.ok);
  CHECK(rl.witness->first == id(l, "n2"));
  CHECK(rl.witness->second == id(l, "n2"));

  // The reported witness is the first failing pair in element order, and it
  // genuinely fails.
  for (const explicit_quantale* fq : small_quantales())
    for (const auto& d : enumerate_domains(fq->lattice())) {
      check_result<elem_id> res = is_complete(*fq, d);
      if (res.ok) {
        CHECK(!res.witness.has_value());
        continue;
      }
      bool found = false;
      for (elem_id x = 0; x < fq->size() && !found; ++x)
        for (elem_id y = 0; y < fq->size() && !found; ++y) {
          elem_id rx = apply_closure(*fq, d, x), ry = apply_closure(*fq, d, y);
          if (apply_closure(*fq, d, fq->tensor(rx, ry)) !=
              apply_closure(*fq, d, fq->tensor(x, y))) {
            CHECK(res.witness->first == x);
            CHECK(res.witness->second == y);
            found = true;
          }
        }
      CHECK(found);
    }
}

TEST_CASE("weak completeness is decided by residual membership") {
  const sub_carrier& c = default_carrier();
  sub_quantale q(c);
  named_set_table t = named_sets(c);

  auto r1 = is_weak_complete(q, make_domain(q, {t.top, t.i_xy}));
  REQUIRE(!r1.ok);
  CHECK(r1.witness->first == t.top);
  CHECK(r1.witness->second == t.i_xy);

  auto r2 = is_weak_complete(q, make_domain(q, {t.top, t.i_xy, t.g_xy, t.g_or_eg}));
  REQUIRE(!r2.ok);
  CHECK(r2.witness->first == t.i_xy);
  CHECK(r2.witness->second == t.g_or_eg);

  CHECK(is_weak_complete(q, make_domain(q, {t.top})).ok);

  // Completeness implies weak completeness on the explicit fixtures.
  for (const explicit_quantale* fq : small_quantales())
    for (const auto& d : enumerate_domains(fq->lattice()))
      if (is_complete(*fq, d).ok) CHECK(is_weak_complete(*fq, d).ok);
}

TEST_CASE("complete domains transfer least fixpoints of tensor sections") {
  for (const explicit_quantale* fq : small_quantales()) {
    const finite_lattice& lat = fq->lattice();
    for (const auto& d : enumerate_domains(lat)) {
      if (!is_complete(*fq, d).ok) continue;
      for (elem_id y = 0; y < fq->size(); ++y) {
        std::vector<elem_id> f_table(fq->size()), g_table(fq->size());
        for (elem_id x = 0; x < fq->size(); ++x) {
          f_table[x] = fq->tensor(x, y);
          g_table[x] = apply_closure(*fq, d, f_table[x]);
        }
        monotone_map f = make_monotone_map(lat, std::move(f_table));
        monotone_map g = make_monotone_map(lat, std::move(g_table));
        CHECK(apply_closure(*fq, d, kleene_lfp(f)) == kleene_lfp(g));
      }
    }
  }
}

TEST_CASE("weak-complete domains collapse closure chains") {
  for (const explicit_quantale* fq : {&b4(), &l4()}) {
    for (const auto& d : enumerate_domains(fq->lattice())) {
      if (!is_weak_complete(*fq, d).ok) continue;
      auto rho = [&](elem_id x) { return apply_closure(*fq, d, x); };
      const std::size_t n = fq->size();
      for (elem_id c1 = 0; c1 < n; ++c1) {
        CHECK(rho(rho(c1)) == rho(c1));
        for (elem_id c2 = 0; c2 < n; ++c2) {
          CHECK(rho(fq->tensor(rho(c1), rho(c2))) == rho(fq->tensor(rho(c1), c2)));
          for (elem_id c3 = 0; c3 < n; ++c3) {
            elem_id two = fq->tensor(rho(c1), rho(c2));
            CHECK(rho(fq->tensor(two, rho(c3))) == rho(fq->tensor(two, c3)));
            for (elem_id c4 = 0; c4 < n; ++c4)
              CHECK(rho(fq->tensor(fq->tensor(two, rho(c3)), rho(c4))) ==
                    rho(fq->tensor(fq->tensor(two, rho(c3)), c4)));
          }
        }
      }
    }
  }

  const sub_carrier& c = default_carrier();
  sub_quantale q(c);
  named_set_table t = named_sets(c);
  sub_domain shell = weak_complete_shell(q, make_domain(q, {t.top, t.i_xy}));
  sub_powerset amb(c);
  auto rho = [&](const subst_set& x) { return apply_closure(amb, shell, x); };
  std::vector<subst_set> base = law_triple_base(c, 0);
  base.resize(8);
  for (const auto& c1 : base)
    for (const auto& c2 : base)
      for (const auto& c3 : base) {
        subst_set two = tensor_sets(rho(c1), rho(c2));
        CHECK(rho(two) == rho(tensor_sets(rho(c1), c2)));
        CHECK(rho(tensor_sets(two, rho(c3))) == rho(tensor_sets(two, c3)));
      }
}
