#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condense/domain.hpp"
#include "condense/errors.hpp"

namespace condense {

// Node ids name variables and constants uniformly: variables of interest
// first, then auxiliary variables, then constants.
using node_id = std::uint16_t;

// Idempotent flat substitution in canonical form: bindings sorted by source
// variable, every target a class representative (the constant when the class
// is tagged, else the least variable, which stays free). Variables are never
// renamed, so unification is plain equation union. Values compare by their
// binding vectors; the canonical order puts the empty substitution first.
struct flat_subst {
  std::vector<std::pair<node_id, node_id>> bindings;

  bool operator==(const flat_subst&) const = default;
  bool operator<(const flat_subst& o) const { return bindings < o.bindings; }
};

// Disengaged value is the unification-failure token.
using unify_result = std::optional<flat_subst>;

struct carrier_config {
  std::vector<std::string> vars_of_interest;
  std::vector<std::string> aux_vars;
  std::vector<std::string> constants;
};

// Text format, one directive per line, '#' starts a comment:
//   vars_of_interest: X Y
//   aux_vars: Z W
//   constants: a
carrier_config parse_carrier_config(const std::string& text);

// The finite fragment: all canonical idempotent flat substitutions over the
// configured alphabets, closed under unification. Construction enumerates
// variable partitions with optional constant tags, canonicalizes, dedups, and
// (for carriers up to 1024 members) tabulates unification while verifying
// closure.
class sub_carrier {
 public:
  explicit sub_carrier(carrier_config cfg, std::size_t size_cap = 100000);

  const carrier_config& config() const { return cfg_; }
  std::size_t num_interest() const { return ni_; }
  std::size_t num_vars() const { return nv_; }
  std::size_t num_nodes() const { return nv_ + nc_; }
  std::size_t size() const { return members_.size(); }

  const flat_subst& member(std::size_t i) const { return members_[i]; }
  // "eps" for the empty substitution, else "Z/X,W/a" style.
  std::string member_name(std::size_t i) const;
  std::optional<std::size_t> find_member(const flat_subst& s) const;
  std::size_t index_of(const flat_subst& s) const;

  std::optional<node_id> node_of(std::string_view name) const;
  const std::string& node_name(node_id n) const { return node_names_[n]; }
  bool is_var(node_id n) const { return n < nv_; }
  bool is_interest(node_id n) const { return n < ni_; }

  // Canonical form of a flat equation list; disengaged on constant clash.
  std::optional<flat_subst> canonicalize(
      const std::vector<std::pair<node_id, node_id>>& eqs) const;

  // Index-level unification; -1 is the failure token.
  std::int32_t unify_index(std::size_t i, std::size_t j) const;
  unify_result unify(const flat_subst& s, const flat_subst& t) const;

  // Instantiation order: s is an instance of t (there is a flat delta with
  // s = delta after t as maps on the whole alphabet). Decided class-wise on
  // t's variable classes.
  bool instance_leq(const flat_subst& s, const flat_subst& t) const;
  bool instance_leq_idx(std::size_t i, std::size_t j) const;

  // Least substitution above both (binary lub in the fragment); minimality
  // and uniqueness are checked against the whole carrier.
  flat_subst anti_instance(const flat_subst& s, const flat_subst& t) const;

  // What member i maps v to once its class is resolved: the class constant if
  // tagged, else the class representative, else v itself.
  node_id resolve(std::size_t i, node_id v) const { return info_[i].hat[v]; }

 private:
  struct member_class {
    std::vector<node_id> vars;     // ascending
    std::optional<node_id> tag;    // constant, if the class has one
  };
  struct member_info {
    std::vector<node_id> hat;      // size nv_
    std::vector<member_class> classes;
  };

  member_info analyze(const flat_subst& s) const;
  std::int32_t unify_raw(const flat_subst& s, const flat_subst& t) const;

  carrier_config cfg_;
  std::size_t ni_ = 0, nv_ = 0, nc_ = 0, cap_;
  std::vector<std::string> node_names_;
  std::vector<flat_subst> members_;
  std::vector<member_info> info_;
  std::vector<std::int32_t> unify_table_;  // n*n when tabled_
  bool tabled_ = false;
};

// Subset of a carrier as a dense bitmask. Unused tail bits stay zero so
// whole-word comparison is valid.
struct subst_set {
  const sub_carrier* carrier = nullptr;
  std::vector<std::uint64_t> mask;

  static subst_set empty_set(const sub_carrier& c);
  static subst_set full_set(const sub_carrier& c);

  bool test(std::size_t i) const { return mask[i >> 6] >> (i & 63) & 1; }
  void set(std::size_t i) { mask[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { mask[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool empty() const;
  bool subset_of(const subst_set& o) const;
  std::vector<std::size_t> members() const;

  bool operator==(const subst_set&) const = default;
};

subst_set operator&(const subst_set& a, const subst_set& b);
subst_set operator|(const subst_set& a, const subst_set& b);

// Canonical order on sets: lexicographic on the sorted member-index
// sequences (so a proper prefix sorts first). Used wherever a least witness
// or a deterministic listing is required.
bool lex_less(const subst_set& a, const subst_set& b);

// {unify(x,y) | x in X, y in Y, unification succeeds}.
subst_set tensor_sets(const subst_set& x, const subst_set& y);

// {theta | for all sigma in a: unify(sigma,theta) fails or lands in c};
// right adjoint of tensor_sets, computed element-wise over the carrier.
subst_set residual_sets(const subst_set& a, const subst_set& c);

// {sigma in carrier | sigma is an instance of some member of s}.
subst_set down_closure(const sub_carrier& c, const subst_set& s);

// I_xy: members where x's and y's resolved values share no variable.
subst_set independent_set(const sub_carrier& c, std::string_view x, std::string_view y);

// G_xy: members where x's or y's resolved value is ground.
subst_set ground_set(const sub_carrier& c, std::string_view x, std::string_view y);

// Members whose binding targets are all constants.
subst_set eg_set(const sub_carrier& c);

struct named_set_table {
  subst_set top, i_xy, g_xy, eg, g_or_eg;
};

// The five distinguished sets for a two-variables-of-interest carrier.
named_set_table named_sets(const sub_carrier& c);

// Powerset-of-carrier lattice ambient (inclusion order), shared with the
// generic domain and shell machinery.
class sub_powerset {
 public:
  explicit sub_powerset(const sub_carrier& c) : carrier_(&c) {}

  const sub_carrier& carrier() const { return *carrier_; }

  using elem = subst_set;
  elem top() const { return subst_set::full_set(*carrier_); }
  elem bottom() const { return subst_set::empty_set(*carrier_); }
  bool leq(const elem& a, const elem& b) const { return a.subset_of(b); }
  elem meet(const elem& a, const elem& b) const { return a & b; }
  elem join(const elem& a, const elem& b) const { return a | b; }
  bool elem_eq(const elem& a, const elem& b) const { return a == b; }
  bool elem_less(const elem& a, const elem& b) const { return lex_less(a, b); }
  std::string elem_name(const elem& e) const;

 private:
  const sub_carrier* carrier_;
};

using sub_domain = domain_t<subst_set>;

// M({I_xy | x, y distinct variables of interest}).
sub_domain psh_domain(const sub_carrier& c);

// Meet of the I_xy valid across all of theta; agrees with apply_closure over
// psh_domain.
subst_set psh_alpha(const sub_carrier& c, const subst_set& theta);

// Set expressions:
//   set     := term ('+' term)*            union
//   term    := primary ('&' primary)*      intersection
//   primary := 'TOP' | 'EMPTY' | 'I(' var ',' var ')' | 'G(' var ',' var ')'
//            | 'EG' | '{' subst (';' subst)* '}'
//   subst   := 'eps' | binding (',' binding)*
//   binding := var '/' (var | const)
// Variable and constant names stay symbolic in the tree so program
// transformations can rename them before evaluation.
struct set_expr {
  enum class kind { top, empty, ind, grd, eg, literal, set_union, set_inter };
  kind k = kind::top;
  std::string var1, var2;                                        // ind, grd
  std::vector<std::vector<std::pair<std::string, std::string>>> substs;  // literal
  std::unique_ptr<set_expr> lhs, rhs;                            // union, inter

  set_expr clone() const;
};

set_expr parse_set_expr_ast(std::string_view text);
subst_set eval_set_expr(const sub_carrier& c, const set_expr& e);
std::string print_set_expr(const set_expr& e);
subst_set parse_set_expr(const sub_carrier& c, std::string_view text);

// Prefix form for embedding in larger grammars: parses one term (no
// top-level '+') starting at pos and advances pos past it.
set_expr parse_set_term_prefix(std::string_view text, std::size_t& pos);

// Best-effort naming: a distinguished set's name, a union of two of them,
// else an explicit listing.
std::string render_set(const sub_carrier& c, const subst_set& s);

// Domain text format over the substitution ambient:
//   fixpoints: <set-expr> <set-expr> ...
// Expressions split on whitespace outside braces. A missing top is added
// automatically; a note is appended to *warnings.
sub_domain parse_domain_subst(const sub_carrier& c, const std::string& text,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace condense
