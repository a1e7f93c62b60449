#pragma once

#include <algorithm>
#include <vector>

#include "condense/errors.hpp"
#include "condense/lattice.hpp"

namespace condense {

// An abstract domain is an upper closure operator represented by its
// meet-closed fixpoint set (always containing the ambient top). The ambient is
// passed to every operation; the same generic code serves the explicit lattice
// and the substitution powerset, which share the ambient member interface
// (elem, meet, leq, top, elem_eq, elem_less).
template <class E>
struct domain_t {
  std::vector<E> fix;  // sorted by the ambient canonical order, no duplicates
};

using explicit_domain = domain_t<elem_id>;

template <class A>
void sort_elems(const A& amb, std::vector<typename A::elem>& xs) {
  std::sort(xs.begin(), xs.end(),
            [&](const auto& a, const auto& b) { return amb.elem_less(a, b); });
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [&](const auto& a, const auto& b) { return amb.elem_eq(a, b); }),
           xs.end());
}

template <class A>
bool contains_elem(const A& amb, const std::vector<typename A::elem>& xs,
                   const typename A::elem& e) {
  for (const auto& x : xs)
    if (amb.elem_eq(x, e)) return true;
  return false;
}

// M(X): closure of X under all glbs, plus top. Worklist saturation under
// pairwise meets suffices on finite families.
template <class A>
domain_t<typename A::elem> moore_closure(const A& amb, std::vector<typename A::elem> xs) {
  using E = typename A::elem;
  std::vector<E> fix;
  fix.push_back(amb.top());
  auto add = [&](const E& e) -> bool {
    if (contains_elem(amb, fix, e)) return false;
    fix.push_back(e);
    return true;
  };
  std::vector<E> work;
  for (auto& x : xs)
    if (add(x)) work.push_back(x);
  while (!work.empty()) {
    E a = work.back();
    work.pop_back();
    const std::size_t snapshot = fix.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      E m = amb.meet(a, fix[i]);
      if (add(m)) work.push_back(m);
    }
  }
  sort_elems(amb, fix);
  return {std::move(fix)};
}

// rho(c) = glb of the fixpoints above c; a fixpoint, and >= c.
template <class A>
typename A::elem apply_closure(const A& amb, const domain_t<typename A::elem>& d,
                               const typename A::elem& c) {
  auto acc = amb.top();
  for (const auto& y : d.fix)
    if (amb.leq(c, y)) acc = amb.meet(acc, y);
  return acc;
}

// rho1 more precise than rho2: every rho2 fixpoint is a rho1 fixpoint.
template <class A>
bool domain_leq(const A& amb, const domain_t<typename A::elem>& d1,
                const domain_t<typename A::elem>& d2) {
  for (const auto& y : d2.fix)
    if (!contains_elem(amb, d1.fix, y)) return false;
  return true;
}

template <class A>
bool domain_eq(const A& amb, const domain_t<typename A::elem>& d1,
               const domain_t<typename A::elem>& d2) {
  return domain_leq(amb, d1, d2) && domain_leq(amb, d2, d1);
}

// Reduced product: Moore closure of the union of the fixpoint sets.
template <class A>
domain_t<typename A::elem> reduced_product(const A& amb,
                                           const std::vector<domain_t<typename A::elem>>& ds) {
  std::vector<typename A::elem> all;
  for (const auto& d : ds) all.insert(all.end(), d.fix.begin(), d.fix.end());
  return moore_closure(amb, std::move(all));
}

// Domain join: intersection of the fixpoint sets (top is always shared).
template <class A>
domain_t<typename A::elem> domain_join(const A& amb,
                                       const std::vector<domain_t<typename A::elem>>& ds) {
  using E = typename A::elem;
  if (ds.empty()) throw membership_error("domain_join needs at least one domain");
  std::vector<E> fix;
  for (const auto& y : ds.front().fix) {
    bool everywhere = true;
    for (std::size_t i = 1; i < ds.size(); ++i)
      if (!contains_elem(amb, ds[i].fix, y)) { everywhere = false; break; }
    if (everywhere) fix.push_back(y);
  }
  sort_elems(amb, fix);
  return {std::move(fix)};
}

template <class A>
domain_t<typename A::elem> make_domain(const A& amb, std::vector<typename A::elem> fix) {
  return moore_closure(amb, std::move(fix));
}

// All meet-closed subsets containing top, as domains. Exponential; intended
// for carriers of at most a dozen elements (theorem brute-force checks).
inline std::vector<explicit_domain> enumerate_domains(const finite_lattice& lat) {
  const std::size_t n = lat.size();
  if (n > 20) throw size_limit_error("domain enumeration limited to 20-element carriers");
  std::vector<explicit_domain> out;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (!(mask >> lat.top() & 1u)) continue;
    std::vector<elem_id> fix;
    for (elem_id e = 0; e < n; ++e)
      if (mask >> e & 1u) fix.push_back(e);
    bool closed = true;
    for (std::size_t i = 0; i < fix.size() && closed; ++i)
      for (std::size_t j = i; j < fix.size(); ++j) {
        elem_id m = lat.glb2(fix[i], fix[j]);
        if (!(mask >> m & 1u)) { closed = false; break; }
      }
    if (closed) out.push_back({std::move(fix)});
  }
  return out;
}

// Domain file for the explicit ambient: "fixpoints: <name> <name> ...".
// A missing top is added automatically; a note is appended to *warnings.
explicit_domain parse_domain(const finite_lattice& lat, const std::string& text,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace condense
