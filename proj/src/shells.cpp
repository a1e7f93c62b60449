#include "condense/shells.hpp"

namespace condense {

explicit_domain identity_domain(const finite_lattice& lat) {
  std::vector<elem_id> fix(lat.size());
  for (elem_id e = 0; e < lat.size(); ++e) fix[e] = e;
  return {std::move(fix)};
}

std::vector<monotone_map> tensor_sections(const explicit_quantale& q,
                                          const explicit_domain& eta) {
  std::vector<monotone_map> fam;
  for (elem_id y : eta.fix) {
    std::vector<elem_id> table(q.size());
    for (elem_id x = 0; x < q.size(); ++x) table[x] = q.tensor(x, y);
    fam.push_back(make_monotone_map(q.lattice(), std::move(table)));
  }
  return fam;
}

explicit_domain rf_operator(const finite_lattice& lat, const std::vector<monotone_map>& fam,
                            const explicit_domain& rho) {
  std::vector<elem_id> gens;
  for (const monotone_map& f : fam) {
    if (f.lattice != &lat) throw structure_error("function family over a different lattice");
    for (elem_id a : rho.fix) {
      std::vector<elem_id> sols;
      for (elem_id x = 0; x < lat.size(); ++x)
        if (lat.leq(f.table[x], a)) sols.push_back(x);
      for (elem_id m : lat.maximal_elements(sols)) gens.push_back(m);
    }
  }
  return moore_closure(lat, std::move(gens));
}

namespace {

constexpr std::size_t shell_carrier_limit = 512;

}  // namespace

explicit_domain complete_shell(const explicit_quantale& q, const explicit_domain& a,
                               std::vector<explicit_domain>* trace) {
  if (q.size() > shell_carrier_limit)
    throw size_limit_error("complete shell needs residuals over the whole carrier; limited to " +
                           std::to_string(shell_carrier_limit) + " elements");
  const explicit_domain whole = identity_domain(q.lattice());
  explicit_domain x{{q.top()}};
  if (trace) trace->push_back(x);
  std::size_t steps_past_a = 0;
  bool seen_a = false;
  for (;;) {
    explicit_domain next = reduced_product(q, {a, lin_arrow_domain(q, whole, x)});
    if (seen_a) ++steps_past_a;
    if (domain_eq(q, next, x)) break;
    x = std::move(next);
    if (trace) trace->push_back(x);
    if (domain_eq(q, x, a)) seen_a = true;
    if (steps_past_a > 2)
      throw structure_error("complete shell iteration failed to stabilize as expected");
  }
  explicit_domain closed = lin_arrow_domain(q, whole, a);
  if (!domain_eq(q, x, closed))
    throw structure_error("complete shell gfp differs from its closed form");
  return x;
}

elem_id shell_closure_map(const explicit_quantale& q, const explicit_domain& a, elem_id c) {
  if (q.size() > shell_carrier_limit)
    throw size_limit_error("shell closure map limited to " +
                           std::to_string(shell_carrier_limit) + " elements");
  elem_id acc = q.top();
  for (elem_id ai : a.fix) acc = q.meet(acc, q.residual(q.residual(c, ai), ai));
  return acc;
}

check_result<elem_id> is_complete(const explicit_quantale& q, const explicit_domain& rho) {
  check_result<elem_id> two_sided;
  check_result<elem_id> one_sided;
  for (elem_id x = 0; x < q.size(); ++x)
    for (elem_id y = 0; y < q.size(); ++y) {
      elem_id rx = apply_closure(q, rho, x), ry = apply_closure(q, rho, y);
      elem_id exact = apply_closure(q, rho, q.tensor(x, y));
      if (two_sided.ok && apply_closure(q, rho, q.tensor(rx, ry)) != exact) {
        two_sided.ok = false;
        two_sided.witness = {x, y};
      }
      if (one_sided.ok && apply_closure(q, rho, q.tensor(rx, y)) != exact) {
        one_sided.ok = false;
        one_sided.witness = {x, y};
      }
    }
  if (two_sided.ok != one_sided.ok)
    throw structure_error("one-sided and two-sided completeness disagree");
  return two_sided;
}

}  // namespace condense
