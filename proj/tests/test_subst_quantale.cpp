#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "condense/errors.hpp"
#include "condense/subst.hpp"
#include "condense/subst_quantale.hpp"

using namespace condense;

namespace {

const sub_carrier& default_carrier() {
  static sub_carrier c({{"X", "Y"}, {"Z", "W"}, {"a"}});
  return c;
}

}  // namespace

TEST_CASE("the lifted-unification quantale has the empty substitution as unit") {
  const sub_carrier& c = default_carrier();
  sub_quantale q(c);

  REQUIRE(q.unit().has_value());
  CHECK(q.unit()->count() == 1);
  CHECK(q.unit()->test(c.index_of(flat_subst{})));

  named_set_table t = named_sets(c);
  CHECK(q.tensor(t.i_xy, *q.unit()) == t.i_xy);
  CHECK(q.residual(t.top, t.i_xy) == t.g_xy);
  CHECK(q.residual(t.i_xy, t.i_xy) == t.g_or_eg);
  CHECK(q.tensor(t.i_xy, t.g_xy) == t.g_xy);
}

TEST_CASE("sampled law checks find no violations") {
  sub_quantale q(default_carrier());
  for (std::uint64_t seed : {0ull, 7ull}) {
    CHECK(verify_quantale(q, seed).empty());
    CHECK(verify_linear_laws(q, seed).empty());
  }

  sub_carrier three({{"X", "Y", "V"}, {"Z", "W"}, {"a"}});
  sub_quantale q3(three);
  CHECK(verify_quantale(q3, 0, 32).empty());
  CHECK(verify_linear_laws(q3, 0, 32).empty());
}

TEST_CASE("law samples are deterministic and stay inside the carrier") {
  const sub_carrier& c = default_carrier();
  named_set_table t = named_sets(c);

  std::vector<subst_set> s1 = law_sample(c, 0, 64);
  std::vector<subst_set> s2 = law_sample(c, 0, 64);
  CHECK(s1.size() == c.size() + 6 + 64);
  CHECK(s1 == s2);

  std::vector<subst_set> s3 = law_sample(c, 1, 64);
  CHECK(s1 != s3);

  for (std::size_t i = 0; i < c.size(); ++i) CHECK(s1[i].count() == 1);
  subst_set full = subst_set::full_set(c);
  for (const auto& s : s1) {
    CHECK((s & full) == s);  // tail bits beyond the carrier stay zero
    CHECK(s.count() <= c.size());
  }

  std::vector<subst_set> base = law_triple_base(c, 0);
  REQUIRE(base.size() == 14);
  CHECK(base[0] == full);
  CHECK(base[1] == subst_set::empty_set(c));
  CHECK(base[2] == t.eg);
  CHECK(base[3] == t.i_xy);
  CHECK(base[4] == t.g_xy);
  CHECK(base[5] == t.g_or_eg);
  for (std::size_t i = 0; i < 8; ++i) CHECK(base[6 + i] == s1[c.size() + 6 + i]);
}

TEST_CASE("a two-member carrier validates the quantale laws exhaustively") {
  sub_carrier tiny({{"X"}, {}, {"a"}});
  REQUIRE(tiny.size() == 2);
  sub_quantale q(tiny);

  std::vector<subst_set> all;
  for (unsigned m = 0; m < 4; ++m) {
    subst_set s = subst_set::empty_set(tiny);
    if (m & 1) s.set(0);
    if (m & 2) s.set(1);
    all.push_back(std::move(s));
  }
  const subst_set& bot = all[0];
  const subst_set unit = *q.unit();

  for (const auto& a : all) {
    CHECK(q.tensor(a, unit) == a);
    CHECK(q.tensor(unit, a) == a);
    CHECK(q.tensor(a, bot) == bot);
    CHECK(q.residual(bot, a) == subst_set::full_set(tiny));
    for (const auto& b : all) {
      CHECK(q.tensor(a, b) == q.tensor(b, a));
      for (const auto& s : all) {
        CHECK(q.tensor(q.tensor(a, b), s) == q.tensor(a, q.tensor(b, s)));
        CHECK(q.tensor(a, b | s) == (q.tensor(a, b) | q.tensor(a, s)));
        CHECK(q.tensor(a, b).subset_of(s) == b.subset_of(q.residual(a, s)));
      }
      // The residual is the join of everything the adjunction admits.
      subst_set best = subst_set::empty_set(tiny);
      for (const auto& s : all)
        if (q.tensor(a, s).subset_of(b)) best = best | s;
      CHECK(q.residual(a, b) == best);
    }
  }

  CHECK(verify_quantale(q, 0, 16).empty());
  CHECK(verify_linear_laws(q, 0, 16).empty());
}
