#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condense/domain.hpp"
#include "condense/subst.hpp"

namespace condense {

// Clause body tree. Facts stay symbolic set expressions so clause selection
// can rename their variables before evaluation against a carrier.
struct body_node {
  enum class kind { fact, conj, disj, call };
  kind k = kind::fact;
  set_expr fact;                                     // fact
  std::unique_ptr<body_node> lhs, rhs;               // conj
  std::vector<std::unique_ptr<body_node>> children;  // disj, at least one
  std::string callee;                                // call
  std::vector<std::string> call_args;                // call

  std::unique_ptr<body_node> clone() const;
};

using body_ptr = std::unique_ptr<body_node>;

body_ptr make_fact(set_expr e);
body_ptr make_conj(body_ptr l, body_ptr r);
body_ptr make_disj(std::vector<body_ptr> children);
body_ptr make_call(std::string callee, std::vector<std::string> args);

struct clause {
  std::string pred;
  std::vector<std::string> head;  // distinct variables of interest
  body_ptr body;

  clause clone() const;
};

// At most one clause per predicate; declaration order is the canonical
// iteration order.
struct program {
  std::vector<clause> clauses;

  const clause* find(std::string_view pred) const;
  program clone() const;
};

// Program DSL, one clause per line, '.' terminated, '%' comments:
//   clause := pred '(' var (',' var)* ')' '<-' body '.'
//   body   := bterm ('+' bterm)*
//   bterm  := bprim ('*' bprim)*
//   bprim  := '(' body ')' | pred '(' var (',' var)* ')' | set term
// Set terms follow module subst's grammar without top-level unions: '+'
// always reads as body disjunction. The two readings of a sum of facts
// evaluate identically, so nothing is lost.
// Validates: one clause per predicate, calls target declared predicates with
// exactly their head tuple, head variables are distinct variables of
// interest, fact sets evaluate inside the carrier.
program parse_program(const sub_carrier& c, const std::string& text);

std::string print_body(const body_node& b);
std::string print_program(const program& p);

struct eval_config {
  std::size_t iteration_cap = 10000;
};

// Variable names occurring in the members of s, as binding sources or
// variable targets; sorted.
std::vector<std::string> support_vars(const subst_set& s);

// Clause selection: every fact variable outside the head tuple is moved to
// an auxiliary-pool variable, chosen in pool order and avoiding goal_vars,
// avoid_vars, and targets already taken. A pool variable that is free keeps
// its name. Call argument tuples are interface plumbing and stay fixed.
body_ptr rename_apart(const sub_carrier& c, const clause& cl,
                      const std::vector<std::string>& goal_vars,
                      const std::vector<std::string>& avoid_vars);

// Least fixpoint of the clause system from the empty set: facts unify with
// the query, conjunction is tensor, disjunction is union, calls read the
// current approximation.
subst_set concrete_eval(const sub_carrier& c, const program& p,
                        const std::string& goal, const subst_set& phi,
                        const eval_config& cfg = {});

// Best correct approximation: the closure is applied after every fact
// tensor, conjunction tensor, and disjunction lub; calls start from the
// closure of the empty set. theta must be a fixpoint of rho.
subst_set abstract_eval(const sub_carrier& c, const program& p,
                        const sub_domain& rho, const std::string& goal,
                        const subst_set& theta, const eval_config& cfg = {});

struct condense_report {
  bool ok = true;
  // First failing pair in the canonical fixpoint order, with both evaluated
  // sides: goal-directed first, filtered goal-independent second.
  std::optional<std::pair<subst_set, subst_set>> witness;
  std::optional<std::pair<subst_set, subst_set>> sides;
};

// Checks F(rho(theta (x) phi)) = rho(theta (x) F(phi)) over all fixpoint
// pairs of rho, where F is the abstract semantics of the goal.
condense_report check_condensing(const sub_carrier& c, const program& p,
                                 const sub_domain& rho, const std::string& goal,
                                 const eval_config& cfg = {});

// Both sides of the condensing identity at one pair.
std::pair<subst_set, subst_set> condensing_sides(const sub_carrier& c, const program& p,
                                                 const sub_domain& rho, const std::string& goal,
                                                 const subst_set& theta, const subst_set& phi,
                                                 const eval_config& cfg = {});

struct counterexample_report {
  bool found = false;
  std::string verdict;  // "counterexample" or the reason none exists
  std::optional<subst_set> residual;
  std::optional<program> prog;
  // Both sides of the identity at (phi, {eps}): the fact set is tensored
  // as given, since it is an alphabet-level set rather than a renamable
  // clause literal.
  std::optional<std::pair<subst_set, subst_set>> sides;
};

// When residual(phi, psi) escapes rho's fixpoints, builds the one-predicate
// program whose fact is that residual (or a sum of its singletons) and
// evaluates the condensing identity at (phi, {eps}); the sides differ
// whenever a counterexample is reported. Precondition failures come back as
// verdicts.
counterexample_report counterexample_program(const sub_carrier& c, const sub_domain& rho,
                                             const subst_set& phi, const subst_set& psi,
                                             bool singleton_sum = false);

}  // namespace condense
