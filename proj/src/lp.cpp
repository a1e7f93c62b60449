#include "condense/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "condense/errors.hpp"

namespace condense {

namespace {

bool is_set_keyword(const std::string& name) {
  return name == "TOP" || name == "EMPTY" || name == "EG" || name == "I" || name == "G";
}

}  // namespace

body_ptr body_node::clone() const {
  auto out = std::make_unique<body_node>();
  out->k = k;
  out->fact = fact.clone();
  if (lhs) out->lhs = lhs->clone();
  if (rhs) out->rhs = rhs->clone();
  out->children.reserve(children.size());
  for (const auto& ch : children) out->children.push_back(ch->clone());
  out->callee = callee;
  out->call_args = call_args;
  return out;
}

body_ptr make_fact(set_expr e) {
  auto b = std::make_unique<body_node>();
  b->k = body_node::kind::fact;
  b->fact = std::move(e);
  return b;
}

body_ptr make_conj(body_ptr l, body_ptr r) {
  auto b = std::make_unique<body_node>();
  b->k = body_node::kind::conj;
  b->lhs = std::move(l);
  b->rhs = std::move(r);
  return b;
}

body_ptr make_disj(std::vector<body_ptr> children) {
  if (children.empty()) throw structure_error("disjunction needs at least one child");
  auto b = std::make_unique<body_node>();
  b->k = body_node::kind::disj;
  b->children = std::move(children);
  return b;
}

body_ptr make_call(std::string callee, std::vector<std::string> args) {
  auto b = std::make_unique<body_node>();
  b->k = body_node::kind::call;
  b->callee = std::move(callee);
  b->call_args = std::move(args);
  return b;
}

clause clause::clone() const { return {pred, head, body->clone()}; }

const clause* program::find(std::string_view pred) const {
  for (const clause& cl : clauses)
    if (cl.pred == pred) return &cl;
  return nullptr;
}

program program::clone() const {
  program out;
  out.clauses.reserve(clauses.size());
  for (const clause& cl : clauses) out.clauses.push_back(cl.clone());
  return out;
}

// --- parsing ---

namespace {

struct prog_parser {
  const sub_carrier& c;
  const std::string& s;
  std::size_t pos = 0;

  struct pending_call {
    std::string caller, callee;
    std::vector<std::string> args;
    std::size_t at;
  };
  std::vector<pending_call> calls;

  [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < p && i < s.size(); ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos, msg); }

  void skip() {
    for (;;) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && s[pos] == '%') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char ch) {
    if (peek() == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    auto ok = [&](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
    };
    while (pos < s.size() && ok(s[pos])) ++pos;
    if (pos == start) fail("expected a name");
    return std::string(s.substr(start, pos - start));
  }

  std::vector<std::string> parse_tuple() {
    std::vector<std::string> names;
    expect('(');
    names.push_back(ident());
    while (eat(',')) names.push_back(ident());
    expect(')');
    return names;
  }

  body_ptr parse_fact_term() {
    skip();
    std::size_t start = pos;
    set_expr e;
    try {
      e = parse_set_term_prefix(s, pos);
      eval_set_expr(c, e);  // membership in the carrier is a parse-time check
    } catch (const parse_error& pe) {
      std::string msg = pe.what();
      std::size_t where = start;
      auto k = msg.rfind(" at offset ");
      if (k != std::string::npos) {
        where = std::strtoull(msg.c_str() + k + 11, nullptr, 10);
        msg.erase(k);
      }
      fail_at(where, msg);
    } catch (const error& ee) {
      fail_at(start, ee.what());
    }
    return make_fact(std::move(e));
  }

  body_ptr parse_bprim(const std::string& caller) {
    char ch = peek();
    if (ch == '(') {
      ++pos;
      body_ptr b = parse_body(caller);
      expect(')');
      return b;
    }
    if (ch == '{') return parse_fact_term();
    skip();
    std::size_t start = pos;
    std::string name = ident();
    if (is_set_keyword(name)) {
      pos = start;
      return parse_fact_term();
    }
    std::vector<std::string> args = parse_tuple();
    calls.push_back({caller, name, args, start});
    return make_call(std::move(name), std::move(args));
  }

  body_ptr parse_bterm(const std::string& caller) {
    body_ptr b = parse_bprim(caller);
    while (eat('*')) b = make_conj(std::move(b), parse_bprim(caller));
    return b;
  }

  body_ptr parse_body(const std::string& caller) {
    std::vector<body_ptr> terms;
    terms.push_back(parse_bterm(caller));
    while (eat('+')) terms.push_back(parse_bterm(caller));
    if (terms.size() == 1) return std::move(terms.front());
    return make_disj(std::move(terms));
  }

  void check_head(const std::vector<std::string>& head,
                  const std::vector<std::size_t>& spots) {
    for (std::size_t i = 0; i < head.size(); ++i) {
      auto node = c.node_of(head[i]);
      if (!node) fail_at(spots[i], "unknown variable '" + head[i] + "'");
      if (!c.is_interest(*node))
        fail_at(spots[i], "head variable '" + head[i] + "' is not a variable of interest");
      for (std::size_t j = 0; j < i; ++j)
        if (head[j] == head[i]) fail_at(spots[i], "duplicate head variable '" + head[i] + "'");
    }
  }

  program parse() {
    program prog;
    while (peek() != '\0') {
      std::size_t clause_start = pos;
      std::string pred = ident();
      if (is_set_keyword(pred) || pred == "eps")
        fail_at(clause_start, "'" + pred + "' is reserved and cannot name a predicate");
      std::vector<std::string> head;
      std::vector<std::size_t> spots;
      expect('(');
      skip();
      spots.push_back(pos);
      head.push_back(ident());
      while (eat(',')) {
        skip();
        spots.push_back(pos);
        head.push_back(ident());
      }
      expect(')');
      skip();
      if (pos + 1 >= s.size() || s[pos] != '<' || s[pos + 1] != '-') fail("expected '<-'");
      pos += 2;
      body_ptr body = parse_body(pred);
      expect('.');
      if (prog.find(pred))
        fail_at(clause_start, "duplicate clause for predicate '" + pred + "'");
      check_head(head, spots);
      prog.clauses.push_back({std::move(pred), std::move(head), std::move(body)});
    }
    for (const pending_call& pc : calls) {
      const clause* target = prog.find(pc.callee);
      if (!target) fail_at(pc.at, "call to undeclared predicate '" + pc.callee + "'");
      if (pc.args.size() != target->head.size())
        fail_at(pc.at, "call to '" + pc.callee + "' has arity " +
                           std::to_string(pc.args.size()) + " but its clause declares arity " +
                           std::to_string(target->head.size()));
      if (pc.args != target->head) {
        std::string tuple;
        for (const std::string& v : target->head) {
          if (!tuple.empty()) tuple += ",";
          tuple += v;
        }
        fail_at(pc.at, "call to '" + pc.callee + "' must use its declared head tuple (" +
                           tuple + ")");
      }
    }
    return prog;
  }
};

}  // namespace

program parse_program(const sub_carrier& c, const std::string& text) {
  prog_parser p{c, text, 0, {}};
  return p.parse();
}

// --- printing ---

namespace {

// level 0: disjunction allowed bare; level 1: conjunction operand;
// level 2: primary slot.
void print_body_rec(const body_node& b, int level, std::string& out) {
  switch (b.k) {
    case body_node::kind::fact: {
      bool is_sum = b.fact.k == set_expr::kind::set_union;
      if (is_sum && level >= 1) out += "(";
      out += print_set_expr(b.fact);
      if (is_sum && level >= 1) out += ")";
      return;
    }
    case body_node::kind::call: {
      out += b.callee + "(";
      for (std::size_t i = 0; i < b.call_args.size(); ++i) {
        if (i) out += ",";
        out += b.call_args[i];
      }
      out += ")";
      return;
    }
    case body_node::kind::conj: {
      bool parens = level >= 2;
      if (parens) out += "(";
      print_body_rec(*b.lhs, 1, out);
      out += " * ";
      print_body_rec(*b.rhs, 2, out);
      if (parens) out += ")";
      return;
    }
    case body_node::kind::disj: {
      bool parens = level >= 1;
      if (parens) out += "(";
      for (std::size_t i = 0; i < b.children.size(); ++i) {
        if (i) out += " + ";
        print_body_rec(*b.children[i], 1, out);
      }
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_body(const body_node& b) {
  std::string out;
  print_body_rec(b, 0, out);
  return out;
}

std::string print_program(const program& p) {
  std::string out;
  for (const clause& cl : p.clauses) {
    out += cl.pred + "(";
    for (std::size_t i = 0; i < cl.head.size(); ++i) {
      if (i) out += ",";
      out += cl.head[i];
    }
    out += ") <- " + print_body(*cl.body) + ".\n";
  }
  return out;
}

// --- renaming ---

std::vector<std::string> support_vars(const subst_set& s) {
  const sub_carrier& c = *s.carrier;
  std::vector<bool> seen(c.num_vars(), false);
  for (std::size_t i : s.members())
    for (const auto& [src, tgt] : c.member(i).bindings) {
      seen[src] = true;
      if (c.is_var(tgt)) seen[tgt] = true;
    }
  std::vector<std::string> out;
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (seen[v]) out.push_back(c.node_name(static_cast<node_id>(v)));
  return out;
}

namespace {

void expr_vars(const set_expr& e, std::vector<std::string>& out) {
  switch (e.k) {
    case set_expr::kind::ind:
    case set_expr::kind::grd:
      out.push_back(e.var1);
      out.push_back(e.var2);
      return;
    case set_expr::kind::literal:
      for (const auto& sub : e.substs)
        for (const auto& [src, tgt] : sub) {
          out.push_back(src);
          out.push_back(tgt);
        }
      return;
    case set_expr::kind::set_union:
    case set_expr::kind::set_inter:
      expr_vars(*e.lhs, out);
      expr_vars(*e.rhs, out);
      return;
    default:
      return;
  }
}

void body_fact_vars(const body_node& b, std::vector<std::string>& out) {
  switch (b.k) {
    case body_node::kind::fact:
      expr_vars(b.fact, out);
      return;
    case body_node::kind::conj:
      body_fact_vars(*b.lhs, out);
      body_fact_vars(*b.rhs, out);
      return;
    case body_node::kind::disj:
      for (const auto& ch : b.children) body_fact_vars(*ch, out);
      return;
    case body_node::kind::call:
      return;
  }
}

void rename_expr(set_expr& e, const std::map<std::string, std::string>& m) {
  auto sub = [&](std::string& n) {
    auto it = m.find(n);
    if (it != m.end()) n = it->second;
  };
  switch (e.k) {
    case set_expr::kind::ind:
    case set_expr::kind::grd:
      sub(e.var1);
      sub(e.var2);
      return;
    case set_expr::kind::literal:
      for (auto& subst : e.substs)
        for (auto& [src, tgt] : subst) {
          sub(src);
          sub(tgt);
        }
      return;
    case set_expr::kind::set_union:
    case set_expr::kind::set_inter:
      rename_expr(*e.lhs, m);
      rename_expr(*e.rhs, m);
      return;
    default:
      return;
  }
}

void rename_body(body_node& b, const std::map<std::string, std::string>& m) {
  switch (b.k) {
    case body_node::kind::fact:
      rename_expr(b.fact, m);
      return;
    case body_node::kind::conj:
      rename_body(*b.lhs, m);
      rename_body(*b.rhs, m);
      return;
    case body_node::kind::disj:
      for (auto& ch : b.children) rename_body(*ch, m);
      return;
    case body_node::kind::call:
      return;
  }
}

}  // namespace

body_ptr rename_apart(const sub_carrier& c, const clause& cl,
                      const std::vector<std::string>& goal_vars,
                      const std::vector<std::string>& avoid_vars) {
  std::vector<std::string> occ;
  body_fact_vars(*cl.body, occ);
  std::vector<std::string> sources;
  for (const std::string& n : occ) {
    auto node = c.node_of(n);
    if (!node || !c.is_var(*node)) continue;  // constants stay put
    if (std::find(cl.head.begin(), cl.head.end(), n) != cl.head.end()) continue;
    if (std::find(sources.begin(), sources.end(), n) == sources.end()) sources.push_back(n);
  }
  if (sources.empty()) return cl.body->clone();

  std::set<std::string> forbidden(goal_vars.begin(), goal_vars.end());
  forbidden.insert(avoid_vars.begin(), avoid_vars.end());
  const std::vector<std::string>& pool = c.config().aux_vars;
  std::size_t avail = 0;
  for (const std::string& pv : pool)
    if (!forbidden.count(pv)) ++avail;
  if (sources.size() > avail)
    throw pool_exhausted_error("auxiliary pool exhausted: " + std::to_string(sources.size()) +
                               " fresh variables needed, " + std::to_string(avail) +
                               " available");

  std::map<std::string, std::string> m;
  std::set<std::string> used;
  auto in_pool = [&](const std::string& n) {
    return std::find(pool.begin(), pool.end(), n) != pool.end();
  };
  for (const std::string& src : sources) {
    std::string tgt;
    if (in_pool(src) && !forbidden.count(src) && !used.count(src)) {
      tgt = src;
    } else {
      for (const std::string& pv : pool)
        if (!forbidden.count(pv) && !used.count(pv)) {
          tgt = pv;
          break;
        }
    }
    used.insert(tgt);
    if (tgt != src) m[src] = tgt;
  }
  body_ptr out = cl.body->clone();
  if (!m.empty()) rename_body(*out, m);
  return out;
}

// --- evaluation ---

namespace {

struct eval_node {
  body_node::kind k = body_node::kind::fact;
  subst_set fact_val;
  std::vector<eval_node> children;  // conj: two, disj: one or more
  std::size_t callee = 0;
};

eval_node build_eval(const sub_carrier& c, const body_node& b,
                     const std::map<std::string, std::size_t>& index) {
  eval_node t;
  t.k = b.k;
  switch (b.k) {
    case body_node::kind::fact:
      t.fact_val = eval_set_expr(c, b.fact);
      return t;
    case body_node::kind::conj:
      t.children.push_back(build_eval(c, *b.lhs, index));
      t.children.push_back(build_eval(c, *b.rhs, index));
      return t;
    case body_node::kind::disj:
      for (const auto& ch : b.children) t.children.push_back(build_eval(c, *ch, index));
      return t;
    case body_node::kind::call: {
      auto it = index.find(b.callee);
      if (it == index.end()) throw structure_error("undeclared call to '" + b.callee + "'");
      t.callee = it->second;
      return t;
    }
  }
  return t;
}

struct eval_system {
  std::vector<eval_node> trees;
  std::size_t goal_idx = 0;
};

eval_system prepare(const sub_carrier& c, const program& p, const std::string& goal,
                    const subst_set& arg) {
  const clause* g = p.find(goal);
  if (!g) throw structure_error("undeclared goal predicate '" + goal + "'");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.clauses.size(); ++i) index[p.clauses[i].pred] = i;
  std::vector<std::string> avoid = support_vars(arg);
  eval_system sys;
  sys.goal_idx = index.at(goal);
  sys.trees.reserve(p.clauses.size());
  for (const clause& cl : p.clauses) {
    body_ptr renamed = rename_apart(c, cl, g->head, avoid);
    sys.trees.push_back(build_eval(c, *renamed, index));
  }
  return sys;
}

subst_set eval_concrete(const eval_node& t, const subst_set& phi,
                        const std::vector<subst_set>& v) {
  switch (t.k) {
    case body_node::kind::fact:
      return tensor_sets(t.fact_val, phi);
    case body_node::kind::conj:
      return tensor_sets(eval_concrete(t.children[0], phi, v),
                         eval_concrete(t.children[1], phi, v));
    case body_node::kind::disj: {
      subst_set acc = eval_concrete(t.children[0], phi, v);
      for (std::size_t i = 1; i < t.children.size(); ++i)
        acc = acc | eval_concrete(t.children[i], phi, v);
      return acc;
    }
    case body_node::kind::call:
      return v[t.callee];
  }
  throw structure_error("unreachable body kind");
}

subst_set eval_abstract(const eval_node& t, const sub_powerset& amb, const sub_domain& rho,
                        const subst_set& phi, const std::vector<subst_set>& v) {
  switch (t.k) {
    case body_node::kind::fact:
      return apply_closure(amb, rho, tensor_sets(t.fact_val, phi));
    case body_node::kind::conj:
      return apply_closure(amb, rho,
                           tensor_sets(eval_abstract(t.children[0], amb, rho, phi, v),
                                       eval_abstract(t.children[1], amb, rho, phi, v)));
    case body_node::kind::disj: {
      subst_set acc = eval_abstract(t.children[0], amb, rho, phi, v);
      for (std::size_t i = 1; i < t.children.size(); ++i)
        acc = acc | eval_abstract(t.children[i], amb, rho, phi, v);
      return apply_closure(amb, rho, acc);
    }
    case body_node::kind::call:
      return v[t.callee];
  }
  throw structure_error("unreachable body kind");
}

template <class Step>
subst_set run_lfp(const eval_system& sys, subst_set init, const eval_config& cfg, Step step) {
  std::vector<subst_set> v(sys.trees.size(), init);
  for (std::size_t sweep = 0; sweep < cfg.iteration_cap; ++sweep) {
    std::vector<subst_set> next;
    next.reserve(v.size());
    for (const eval_node& t : sys.trees) next.push_back(step(t, v));
    if (next == v) return v[sys.goal_idx];
    v = std::move(next);
  }
  throw iteration_cap_error("iteration cap of " + std::to_string(cfg.iteration_cap) +
                            " exceeded before the clause system stabilized");
}

// The abstract equations are well defined for any initial set; the public
// entry point additionally requires a fixpoint.
subst_set abstract_eval_raw(const sub_carrier& c, const program& p, const sub_domain& rho,
                            const std::string& goal, const subst_set& theta,
                            const eval_config& cfg) {
  sub_powerset amb(c);
  eval_system sys = prepare(c, p, goal, theta);
  subst_set init = apply_closure(amb, rho, subst_set::empty_set(c));
  return run_lfp(sys, std::move(init), cfg, [&](const eval_node& t, const std::vector<subst_set>& v) {
    return eval_abstract(t, amb, rho, theta, v);
  });
}

}  // namespace

subst_set concrete_eval(const sub_carrier& c, const program& p, const std::string& goal,
                        const subst_set& phi, const eval_config& cfg) {
  eval_system sys = prepare(c, p, goal, phi);
  return run_lfp(sys, subst_set::empty_set(c), cfg,
                 [&](const eval_node& t, const std::vector<subst_set>& v) {
                   return eval_concrete(t, phi, v);
                 });
}

subst_set abstract_eval(const sub_carrier& c, const program& p, const sub_domain& rho,
                        const std::string& goal, const subst_set& theta,
                        const eval_config& cfg) {
  sub_powerset amb(c);
  if (!contains_elem(amb, rho.fix, theta))
    throw membership_error("initial set is not a fixpoint of the domain");
  return abstract_eval_raw(c, p, rho, goal, theta, cfg);
}

condense_report check_condensing(const sub_carrier& c, const program& p, const sub_domain& rho,
                                 const std::string& goal, const eval_config& cfg) {
  sub_powerset amb(c);
  const std::vector<subst_set>& fix = rho.fix;
  std::vector<subst_set> f;
  f.reserve(fix.size());
  for (const subst_set& t : fix) f.push_back(abstract_eval_raw(c, p, rho, goal, t, cfg));
  auto idx_of = [&](const subst_set& x) -> std::size_t {
    auto it = std::lower_bound(fix.begin(), fix.end(), x, lex_less);
    if (it == fix.end() || !(*it == x))
      throw structure_error("closure image escaped the fixpoint family");
    return static_cast<std::size_t>(it - fix.begin());
  };
  // Closed tensors of fixpoint pairs repeat across the sweep (the second
  // operand of the right side is itself a fixpoint), and tensor commutes, so
  // memoize them by fixpoint index on first use.
  const std::size_t n = fix.size();
  std::vector<std::size_t> fidx(n);
  for (std::size_t j = 0; j < n; ++j) fidx[j] = idx_of(f[j]);
  std::vector<std::int32_t> memo(n * n, -1);
  auto closed_tensor = [&](std::size_t i, std::size_t j) -> std::size_t {
    std::int32_t& slot = memo[i * n + j];
    if (slot < 0) {
      slot = static_cast<std::int32_t>(
          idx_of(apply_closure(amb, rho, tensor_sets(fix[i], fix[j]))));
      memo[j * n + i] = slot;
    }
    return static_cast<std::size_t>(slot);
  };
  condense_report rep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const subst_set& left = f[closed_tensor(i, j)];
      const subst_set& right = fix[closed_tensor(i, fidx[j])];
      if (!(left == right)) {
        rep.ok = false;
        rep.witness = {fix[i], fix[j]};
        rep.sides = {left, right};
        return rep;
      }
    }
  return rep;
}

std::pair<subst_set, subst_set> condensing_sides(const sub_carrier& c, const program& p,
                                                 const sub_domain& rho, const std::string& goal,
                                                 const subst_set& theta, const subst_set& phi,
                                                 const eval_config& cfg) {
  sub_powerset amb(c);
  subst_set tp = apply_closure(amb, rho, tensor_sets(theta, phi));
  subst_set left = abstract_eval_raw(c, p, rho, goal, tp, cfg);
  subst_set fphi = abstract_eval_raw(c, p, rho, goal, phi, cfg);
  subst_set right = apply_closure(amb, rho, tensor_sets(theta, fphi));
  return {std::move(left), std::move(right)};
}

namespace {

set_expr expr_of_set(const sub_carrier& c, const subst_set& s) {
  set_expr e;
  if (s.empty()) {
    e.k = set_expr::kind::empty;
    return e;
  }
  e.k = set_expr::kind::literal;
  for (std::size_t i : s.members()) {
    std::vector<std::pair<std::string, std::string>> bs;
    for (const auto& [src, tgt] : c.member(i).bindings)
      bs.emplace_back(c.node_name(src), c.node_name(tgt));
    e.substs.push_back(std::move(bs));
  }
  return e;
}

}  // namespace

counterexample_report counterexample_program(const sub_carrier& c, const sub_domain& rho,
                                             const subst_set& phi, const subst_set& psi,
                                             bool singleton_sum) {
  sub_powerset amb(c);
  counterexample_report rep;
  if (!contains_elem(amb, rho.fix, phi)) {
    rep.verdict = "no counterexample: phi is not a fixpoint of the domain";
    return rep;
  }
  if (!contains_elem(amb, rho.fix, psi)) {
    rep.verdict = "no counterexample: psi is not a fixpoint of the domain";
    return rep;
  }
  subst_set r = residual_sets(phi, psi);
  rep.residual = r;
  if (contains_elem(amb, rho.fix, r)) {
    rep.verdict = "no counterexample: the residual is a fixpoint of the domain";
    return rep;
  }

  program prog;
  clause cl;
  cl.pred = "p";
  cl.head = c.config().vars_of_interest;
  std::vector<std::size_t> members = r.members();
  if (singleton_sum && members.size() > 1) {
    std::vector<body_ptr> parts;
    parts.reserve(members.size());
    for (std::size_t m : members) {
      subst_set single = subst_set::empty_set(c);
      single.set(m);
      parts.push_back(make_fact(expr_of_set(c, single)));
    }
    cl.body = make_disj(std::move(parts));
  } else {
    cl.body = make_fact(expr_of_set(c, r));
  }
  prog.clauses.push_back(std::move(cl));

  // Abstract semantics of the one-predicate program with the fact set taken
  // as given: rho applied after each fact tensor and after the sum.
  auto sem = [&](const subst_set& arg) {
    if (singleton_sum && members.size() > 1) {
      subst_set acc = subst_set::empty_set(c);
      for (std::size_t m : members) {
        subst_set single = subst_set::empty_set(c);
        single.set(m);
        acc = acc | apply_closure(amb, rho, tensor_sets(single, arg));
      }
      return apply_closure(amb, rho, acc);
    }
    return apply_closure(amb, rho, tensor_sets(r, arg));
  };
  subst_set eps = subst_set::empty_set(c);
  eps.set(c.index_of(flat_subst{}));
  subst_set left = sem(apply_closure(amb, rho, tensor_sets(phi, eps)));
  subst_set right = apply_closure(amb, rho, tensor_sets(phi, sem(eps)));
  rep.found = true;
  rep.verdict = "counterexample";
  rep.prog = std::move(prog);
  rep.sides = {std::move(left), std::move(right)};
  return rep;
}

}  // namespace condense
