#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condense/errors.hpp"
#include "condense/lattice.hpp"

namespace condense {

struct law_violation {
  std::string law;
  std::string witness;
};
using law_report = std::vector<law_violation>;

// Commutative quantale with an explicit finite carrier and a full tensor
// table. Laws are not assumed at construction; verify_quantale reports
// violations instead of throwing, so deliberately broken inputs can be
// inspected.
class explicit_quantale {
 public:
  explicit_quantale(finite_lattice lat, std::vector<elem_id> tensor_table,
                    std::optional<elem_id> unit);

  static explicit_quantale from_meet(finite_lattice lat, bool with_unit = true);

  const finite_lattice& lattice() const { return lat_; }
  elem_id tensor(elem_id a, elem_id b) const;
  // a -o c = lub{b | tensor(a,b) <= c}, by carrier scan.
  elem_id residual(elem_id a, elem_id c) const;
  std::optional<elem_id> unit() const { return unit_; }

  // Ambient interface (delegates to the carrier lattice).
  using elem = elem_id;
  std::size_t size() const { return lat_.size(); }
  elem top() const { return lat_.top(); }
  elem bottom() const { return lat_.bottom(); }
  bool leq(elem a, elem b) const { return lat_.leq(a, b); }
  elem meet(elem a, elem b) const { return lat_.glb2(a, b); }
  elem join(elem a, elem b) const { return lat_.lub2(a, b); }
  bool elem_eq(elem a, elem b) const { return a == b; }
  bool elem_less(elem a, elem b) const { return a < b; }
  std::string elem_name(elem e) const { return lat_.name(e); }

 private:
  finite_lattice lat_;
  std::vector<elem_id> tensor_;  // n*n row-major
  std::optional<elem_id> unit_;
};

// Extends the lattice text format with:
//   tensor: a b -> c        (unordered pairs; symmetry filled in)
//   tensor-builtin: meet    (alternative to a table)
//   unit: a                 (optional)
explicit_quantale parse_quantale(const std::string& text);

namespace detail {

template <class Q>
std::string wit1(const Q& q, const typename Q::elem& a) {
  return "a=" + q.elem_name(a);
}
template <class Q>
std::string wit2(const Q& q, const typename Q::elem& a, const typename Q::elem& b) {
  return "a=" + q.elem_name(a) + ", b=" + q.elem_name(b);
}
template <class Q>
std::string wit3(const Q& q, const typename Q::elem& a, const typename Q::elem& b,
                 const typename Q::elem& c) {
  return "a=" + q.elem_name(a) + ", b=" + q.elem_name(b) + ", c=" + q.elem_name(c);
}

}  // namespace detail

// Quantale laws over a configured sample. Binary laws (commutativity, unit,
// bottom preservation) range over `sample`; ternary laws (associativity,
// binary additivity) range over triple_base cubed. Exhaustive wrappers pass
// the whole carrier for both.
template <class Q>
law_report verify_quantale_sampled(const Q& q,
                                   const std::vector<typename Q::elem>& sample,
                                   const std::vector<typename Q::elem>& triple_base) {
  law_report out;
  for (const auto& a : sample) {
    if (q.unit() && !q.elem_eq(q.tensor(*q.unit(), a), a))
      out.push_back({"unit law", detail::wit1(q, a)});
    if (!q.elem_eq(q.tensor(a, q.bottom()), q.bottom()))
      out.push_back({"bottom preservation", detail::wit1(q, a)});
    for (const auto& b : sample)
      if (!q.elem_eq(q.tensor(a, b), q.tensor(b, a)))
        out.push_back({"commutativity", detail::wit2(q, a, b)});
  }
  for (const auto& a : triple_base)
    for (const auto& b : triple_base)
      for (const auto& c : triple_base) {
        if (!q.elem_eq(q.tensor(q.tensor(a, b), c), q.tensor(a, q.tensor(b, c))))
          out.push_back({"associativity", detail::wit3(q, a, b, c)});
        if (!q.elem_eq(q.tensor(a, q.join(b, c)), q.join(q.tensor(a, b), q.tensor(a, c))))
          out.push_back({"binary additivity", detail::wit3(q, a, b, c)});
      }
  return out;
}

// Linear-implication laws over a configured sample, plus the closure-operator
// checks for the double dual dd_a = (. -o a) -o a: extensive, idempotent,
// monotone for each a.
template <class Q>
law_report verify_linear_laws_sampled(const Q& q,
                                      const std::vector<typename Q::elem>& sample,
                                      const std::vector<typename Q::elem>& triple_base) {
  law_report out;
  for (const auto& a : sample) {
    if (q.unit() && !q.elem_eq(q.residual(*q.unit(), a), a))
      out.push_back({"law (vi) unit -o a = a", detail::wit1(q, a)});
    for (const auto& c : sample) {
      if (!q.leq(q.tensor(a, q.residual(a, c)), c))
        out.push_back({"law (i) a (x) (a -o c) <= c", detail::wit2(q, a, c)});
      auto r1 = q.residual(c, a);        // c -o a
      auto ddc = q.residual(r1, a);      // (c -o a) -o a
      auto r3 = q.residual(ddc, a);      // ((c -o a) -o a) -o a
      if (!q.leq(c, ddc))
        out.push_back({"law (vii) c <= (c -o a) -o a", detail::wit2(q, a, c)});
      if (!q.elem_eq(r3, r1))
        out.push_back({"law (viii) ((c -o a) -o a) -o a = c -o a", detail::wit2(q, a, c)});
      if (!q.leq(c, ddc))
        out.push_back({"double dual extensive", detail::wit2(q, a, c)});
      if (!q.elem_eq(q.residual(r3, a), ddc))
        out.push_back({"double dual idempotent", detail::wit2(q, a, c)});
    }
  }
  for (const auto& a : triple_base)
    for (const auto& b : triple_base)
      for (const auto& c : triple_base) {
        if (!q.elem_eq(q.residual(a, q.residual(b, c)), q.residual(q.tensor(b, a), c)))
          out.push_back({"law (ii) a -o (b -o c) = (b (x) a) -o c", detail::wit3(q, a, b, c)});
        if (!q.elem_eq(q.residual(a, q.meet(b, c)), q.meet(q.residual(a, b), q.residual(a, c))))
          out.push_back({"law (iii) a -o glb = glb of a -o", detail::wit3(q, a, b, c)});
        if (!q.elem_eq(q.residual(q.join(a, b), c), q.meet(q.residual(a, c), q.residual(b, c))))
          out.push_back({"law (iv) lub -o c = glb of -o c", detail::wit3(q, a, b, c)});
        if (!q.elem_eq(q.residual(a, q.residual(b, c)), q.residual(b, q.residual(a, c))))
          out.push_back({"law (v) exchange", detail::wit3(q, a, b, c)});
        if (q.leq(b, c) && !q.leq(q.tensor(a, b), q.tensor(a, c)))
          out.push_back({"law (ix) tensor monotone", detail::wit3(q, a, b, c)});
        if (q.leq(b, c) &&
            !q.leq(q.residual(q.residual(b, a), a), q.residual(q.residual(c, a), a)))
          out.push_back({"double dual monotone", detail::wit3(q, a, b, c)});
      }
  return out;
}

// Exhaustive forms for the explicit ambient.
law_report verify_quantale(const explicit_quantale& q);
law_report verify_linear_laws(const explicit_quantale& q);

}  // namespace condense
