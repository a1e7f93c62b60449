#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "condense/domain.hpp"
#include "condense/lattice.hpp"
#include "condense/quantale.hpp"

namespace condense {

// Verdict of a completeness predicate; the witness is the lexicographically
// least failing pair under the ambient canonical order.
template <class E>
struct check_result {
  bool ok = true;
  std::optional<std::pair<E, E>> witness;
};

explicit_domain identity_domain(const finite_lattice& lat);

// F_eta: one tensor section x -> x (x) y per fixpoint y of eta.
std::vector<monotone_map> tensor_sections(const explicit_quantale& q,
                                          const explicit_domain& eta);

// M(union over f in F, a in rho of max{x | f(x) <= a}).
explicit_domain rf_operator(const finite_lattice& lat, const std::vector<monotone_map>& fam,
                            const explicit_domain& rho);

// A linarrow B: Moore closure of all pairwise residuals between fixpoints.
template <class Q>
domain_t<typename Q::elem> lin_arrow_domain(const Q& q,
                                            const domain_t<typename Q::elem>& a,
                                            const domain_t<typename Q::elem>& b) {
  std::vector<typename Q::elem> gens;
  gens.reserve(a.fix.size() * b.fix.size());
  for (const auto& x : a.fix)
    for (const auto& y : b.fix) gens.push_back(q.residual(x, y));
  return moore_closure(q, std::move(gens));
}

// gfp of X -> A meet (C linarrow X) from the top domain, C the whole carrier.
// Verifies the closed form C linarrow A and stabilization two steps past A;
// *trace receives the Kleene iterates when given.
explicit_domain complete_shell(const explicit_quantale& q, const explicit_domain& a,
                               std::vector<explicit_domain>* trace = nullptr);

// glb over a in A of (c -o a) -o a; the closure map of the complete shell.
elem_id shell_closure_map(const explicit_quantale& q, const explicit_domain& a, elem_id c);

// gfp of X -> A meet X meet (X linarrow X) from the top domain, by plain
// Kleene iteration (the operator is monotone but not co-additive, so no
// shortcut applies). *stabilized_at receives the least i with X_i = X_{i+1}.
template <class Q>
domain_t<typename Q::elem> weak_complete_shell(const Q& q,
                                               const domain_t<typename Q::elem>& a,
                                               std::size_t iteration_cap = 10000,
                                               std::size_t* stabilized_at = nullptr) {
  using E = typename Q::elem;
  domain_t<E> x{{q.top()}};
  for (std::size_t i = 0;; ++i) {
    if (i >= iteration_cap)
      throw iteration_cap_error("weak shell iteration cap of " +
                                std::to_string(iteration_cap) + " exceeded");
    domain_t<E> arrow = lin_arrow_domain(q, x, x);
    domain_t<E> next = reduced_product(q, {a, x, arrow});
    if (domain_eq(q, next, x)) {
      if (stabilized_at) *stabilized_at = i;
      return x;
    }
    x = std::move(next);
  }
}

// rho(rho(x) (x) rho(y)) = rho(x (x) y) for all carrier pairs; cross-checked
// against the one-sided form rho(rho(x) (x) y) = rho(x (x) y), which is
// equivalent for commutative tensors.
check_result<elem_id> is_complete(const explicit_quantale& q, const explicit_domain& rho);

// rho = rho meet (rho linarrow rho): every pairwise residual of fixpoints is
// itself a fixpoint.
template <class Q>
check_result<typename Q::elem> is_weak_complete(const Q& q,
                                                const domain_t<typename Q::elem>& rho) {
  check_result<typename Q::elem> r;
  for (const auto& a : rho.fix)
    for (const auto& b : rho.fix) {
      auto res = q.residual(a, b);
      if (!contains_elem(q, rho.fix, res)) {
        r.ok = false;
        r.witness = {a, b};
        return r;
      }
    }
  return r;
}

}  // namespace condense
