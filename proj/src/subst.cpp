#include "condense/subst.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "condense/detail/text.hpp"

namespace condense {

namespace {

struct union_find {
  std::vector<node_id> parent;
  explicit union_find(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), node_id{0});
  }
  node_id find(node_id x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(node_id a, node_id b) { parent[find(a)] = find(b); }
};

bool valid_name(const std::string& n) {
  if (n.empty()) return false;
  auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto tail = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  if (!head(n[0])) return false;
  for (char c : n.substr(1))
    if (!tail(c)) return false;
  return true;
}

bool reserved_name(const std::string& n) {
  return n == "TOP" || n == "EMPTY" || n == "EG" || n == "I" || n == "G" || n == "eps";
}

}  // namespace

carrier_config parse_carrier_config(const std::string& text) {
  carrier_config cfg;
  bool saw_vi = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_line(raw);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw parse_error("line " + std::to_string(lineno) + ": " + msg);
    };
    if (line.rfind("vars_of_interest:", 0) == 0) {
      cfg.vars_of_interest = detail::split_ws(line.substr(17));
      saw_vi = true;
    } else if (line.rfind("aux_vars:", 0) == 0) {
      cfg.aux_vars = detail::split_ws(line.substr(9));
    } else if (line.rfind("constants:", 0) == 0) {
      cfg.constants = detail::split_ws(line.substr(10));
    } else {
      fail("unknown directive '" + line + "'");
    }
  }
  if (!saw_vi) throw parse_error("missing 'vars_of_interest:' directive");
  return cfg;
}

sub_carrier::sub_carrier(carrier_config cfg, std::size_t size_cap)
    : cfg_(std::move(cfg)), cap_(size_cap) {
  ni_ = cfg_.vars_of_interest.size();
  nv_ = ni_ + cfg_.aux_vars.size();
  nc_ = cfg_.constants.size();
  if (ni_ == 0) throw structure_error("carrier needs at least one variable of interest");
  if (nv_ > 12)
    throw size_limit_error("carrier enumeration supports at most 12 variables, got " +
                           std::to_string(nv_));
  if (nv_ + nc_ > 60000) throw size_limit_error("too many names for the node id space");
  for (const auto* group : {&cfg_.vars_of_interest, &cfg_.aux_vars, &cfg_.constants})
    for (const auto& n : *group) {
      if (!valid_name(n)) throw structure_error("invalid name '" + n + "'");
      if (reserved_name(n)) throw structure_error("name '" + n + "' is reserved");
    }
  node_names_.reserve(num_nodes());
  for (const auto& n : cfg_.vars_of_interest) node_names_.push_back(n);
  for (const auto& n : cfg_.aux_vars) node_names_.push_back(n);
  for (const auto& n : cfg_.constants) node_names_.push_back(n);
  for (std::size_t i = 0; i < node_names_.size(); ++i)
    for (std::size_t j = i + 1; j < node_names_.size(); ++j)
      if (node_names_[i] == node_names_[j])
        throw structure_error("duplicate name '" + node_names_[i] + "'");

  // All members arise from a partition of the variables with at most one
  // constant tag per block; canonicalization merges taggings that denote the
  // same binding map (tagged blocks are indistinguishable from split ones).
  std::set<flat_subst> seen;
  std::vector<int> block_of(nv_);
  std::uint64_t budget = 20'000'000;
  std::vector<int> tag;
  auto emit = [&](int nblocks) {
    std::vector<std::vector<node_id>> blocks(nblocks);
    for (node_id v = 0; v < nv_; ++v) blocks[block_of[v]].push_back(v);
    tag.assign(nblocks, -1);
    auto rec = [&](auto&& self, int b) -> void {
      if (b == nblocks) {
        if (budget-- == 0) throw size_limit_error("carrier enumeration budget exceeded");
        std::vector<std::pair<node_id, node_id>> eqs;
        for (int k = 0; k < nblocks; ++k) {
          for (std::size_t m = 1; m < blocks[k].size(); ++m)
            eqs.emplace_back(blocks[k][0], blocks[k][m]);
          if (tag[k] >= 0) eqs.emplace_back(blocks[k][0], node_id(nv_ + tag[k]));
        }
        if (auto canon = canonicalize(eqs)) {
          seen.insert(*canon);
          if (seen.size() > cap_)
            throw size_limit_error("carrier size cap of " + std::to_string(cap_) +
                                   " members exceeded");
        }
        return;
      }
      for (int t = -1; t < static_cast<int>(nc_); ++t) {
        tag[b] = t;
        self(self, b + 1);
      }
    };
    rec(rec, 0);
  };
  auto part = [&](auto&& self, std::size_t v, int maxb) -> void {
    if (v == nv_) {
      emit(maxb + 1);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      block_of[v] = b;
      self(self, v + 1, std::max(maxb, b));
    }
  };
  part(part, 0, -1);

  members_.assign(seen.begin(), seen.end());
  info_.reserve(members_.size());
  for (const auto& m : members_) info_.push_back(analyze(m));

  const std::size_t n = members_.size();
  if (n <= 1024) {
    unify_table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        unify_table_[i * n + j] = unify_raw(members_[i], members_[j]);
    tabled_ = true;
  }
}

std::string sub_carrier::member_name(std::size_t i) const {
  const flat_subst& s = member(i);
  if (s.bindings.empty()) return "eps";
  std::string out;
  for (const auto& [src, tgt] : s.bindings) {
    if (!out.empty()) out += ",";
    out += node_names_[src] + "/" + node_names_[tgt];
  }
  return out;
}

std::optional<std::size_t> sub_carrier::find_member(const flat_subst& s) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it == members_.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::size_t sub_carrier::index_of(const flat_subst& s) const {
  auto i = find_member(s);
  if (!i) throw membership_error("substitution is not a member of this carrier");
  return *i;
}

std::optional<node_id> sub_carrier::node_of(std::string_view name) const {
  for (std::size_t n = 0; n < node_names_.size(); ++n)
    if (node_names_[n] == name) return node_id(n);
  return std::nullopt;
}

std::optional<flat_subst> sub_carrier::canonicalize(
    const std::vector<std::pair<node_id, node_id>>& eqs) const {
  const std::size_t nn = num_nodes();
  union_find uf(nn);
  for (auto [a, b] : eqs) {
    if (a >= nn || b >= nn) throw membership_error("equation node out of alphabet");
    uf.unite(a, b);
  }
  // Solved form over the fixed alphabet: variables keep their identity, so
  // unification is exactly the union of equation sets and stays associative,
  // and renaming a clause apart has real effect. Class representative: the
  // constant if the class is tagged, else the least variable of the class.
  std::vector<std::optional<node_id>> tag(nn);
  for (node_id c = node_id(nv_); c < nn; ++c) {
    auto& t = tag[uf.find(c)];
    if (t) return std::nullopt;  // two constants unified
    t = c;
  }
  std::vector<node_id> rep(nn, node_id(-1));
  flat_subst out;
  for (node_id v = 0; v < nv_; ++v) {
    const node_id r = node_id(uf.find(v));
    if (tag[r]) {
      out.bindings.emplace_back(v, *tag[r]);
    } else if (rep[r] == node_id(-1)) {
      rep[r] = v;  // least variable of its class stays free
    } else {
      out.bindings.emplace_back(v, rep[r]);
    }
  }
  std::sort(out.bindings.begin(), out.bindings.end());
  return out;
}

sub_carrier::member_info sub_carrier::analyze(const flat_subst& s) const {
  member_info mi;
  mi.hat.resize(nv_);
  std::iota(mi.hat.begin(), mi.hat.end(), node_id{0});
  for (auto [src, tgt] : s.bindings) mi.hat[src] = tgt;
  union_find uf(num_nodes());
  for (auto [src, tgt] : s.bindings) uf.unite(src, tgt);
  std::vector<member_class> by_root(num_nodes());
  for (node_id v = 0; v < nv_; ++v) by_root[uf.find(v)].vars.push_back(v);
  for (node_id c = node_id(nv_); c < num_nodes(); ++c) by_root[uf.find(c)].tag = c;
  for (auto& k : by_root)
    if (!k.vars.empty() && k.vars.size() + (k.tag ? 1 : 0) >= 2)
      mi.classes.push_back(std::move(k));
  return mi;
}

std::int32_t sub_carrier::unify_raw(const flat_subst& s, const flat_subst& t) const {
  std::vector<std::pair<node_id, node_id>> eqs = s.bindings;
  eqs.insert(eqs.end(), t.bindings.begin(), t.bindings.end());
  auto canon = canonicalize(eqs);
  if (!canon) return -1;
  auto idx = find_member(*canon);
  if (!idx)
    throw structure_error("carrier is not closed under unification at '" + [&] {
      std::string msg;
      for (const auto& [src, tgt] : canon->bindings) {
        if (!msg.empty()) msg += ",";
        msg += node_names_[src] + "/" + node_names_[tgt];
      }
      return msg;
    }() + "'");
  return static_cast<std::int32_t>(*idx);
}

std::int32_t sub_carrier::unify_index(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw membership_error("member index out of range");
  if (tabled_) return unify_table_[i * size() + j];
  return unify_raw(members_[i], members_[j]);
}

unify_result sub_carrier::unify(const flat_subst& s, const flat_subst& t) const {
  std::int32_t r = unify_index(index_of(s), index_of(t));
  if (r < 0) return std::nullopt;
  return members_[static_cast<std::size_t>(r)];
}

bool sub_carrier::instance_leq_idx(std::size_t i, std::size_t j) const {
  const member_info& si = info_[i];
  for (const member_class& k : info_[j].classes) {
    node_id v0 = node_id(-1);
    for (node_id v : k.vars) {
      node_id val = si.hat[v];
      if (v0 == node_id(-1))
        v0 = val;
      else if (val != v0)
        return false;
    }
    if (k.tag && v0 != *k.tag) return false;
  }
  return true;
}

bool sub_carrier::instance_leq(const flat_subst& s, const flat_subst& t) const {
  return instance_leq_idx(index_of(s), index_of(t));
}

flat_subst sub_carrier::anti_instance(const flat_subst& s, const flat_subst& t) const {
  std::size_t i = index_of(s), j = index_of(t);
  std::vector<std::size_t> ups;
  for (std::size_t k = 0; k < size(); ++k)
    if (instance_leq_idx(i, k) && instance_leq_idx(j, k)) ups.push_back(k);
  std::optional<std::size_t> least;
  for (std::size_t m : ups) {
    bool below_all = true;
    for (std::size_t u : ups)
      if (!instance_leq_idx(m, u)) { below_all = false; break; }
    if (!below_all) continue;
    if (least)
      throw structure_error("anti-instance is not unique for members '" + member_name(i) +
                            "' and '" + member_name(j) + "'");
    least = m;
  }
  if (!least)
    throw structure_error("no least common generalization for members '" + member_name(i) +
                          "' and '" + member_name(j) + "'");
  return members_[*least];
}

subst_set subst_set::empty_set(const sub_carrier& c) {
  subst_set s;
  s.carrier = &c;
  s.mask.assign((c.size() + 63) / 64, 0);
  return s;
}

subst_set subst_set::full_set(const sub_carrier& c) {
  subst_set s = empty_set(c);
  for (std::size_t i = 0; i < c.size(); ++i) s.set(i);
  return s;
}

std::size_t subst_set::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : mask) n += std::popcount(w);
  return n;
}

bool subst_set::empty() const {
  for (std::uint64_t w : mask)
    if (w) return false;
  return true;
}

bool subst_set::subset_of(const subst_set& o) const {
  if (carrier != o.carrier) throw membership_error("sets over different carriers");
  for (std::size_t w = 0; w < mask.size(); ++w)
    if (mask[w] & ~o.mask[w]) return false;
  return true;
}

std::vector<std::size_t> subst_set::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < carrier->size(); ++i)
    if (test(i)) out.push_back(i);
  return out;
}

subst_set operator&(const subst_set& a, const subst_set& b) {
  if (a.carrier != b.carrier) throw membership_error("sets over different carriers");
  subst_set r = a;
  for (std::size_t w = 0; w < r.mask.size(); ++w) r.mask[w] &= b.mask[w];
  return r;
}

subst_set operator|(const subst_set& a, const subst_set& b) {
  if (a.carrier != b.carrier) throw membership_error("sets over different carriers");
  subst_set r = a;
  for (std::size_t w = 0; w < r.mask.size(); ++w) r.mask[w] |= b.mask[w];
  return r;
}

bool lex_less(const subst_set& a, const subst_set& b) {
  if (a.carrier != b.carrier) throw membership_error("sets over different carriers");
  auto ma = a.members(), mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

subst_set tensor_sets(const subst_set& x, const subst_set& y) {
  if (x.carrier != y.carrier) throw membership_error("sets over different carriers");
  const sub_carrier& c = *x.carrier;
  subst_set r = subst_set::empty_set(c);
  for (std::size_t iw = 0; iw < x.mask.size(); ++iw)
    for (std::uint64_t wx = x.mask[iw]; wx; wx &= wx - 1) {
      std::size_t i = iw * 64 + static_cast<std::size_t>(std::countr_zero(wx));
      for (std::size_t jw = 0; jw < y.mask.size(); ++jw)
        for (std::uint64_t wy = y.mask[jw]; wy; wy &= wy - 1) {
          std::size_t j = jw * 64 + static_cast<std::size_t>(std::countr_zero(wy));
          std::int32_t k = c.unify_index(i, j);
          if (k >= 0) r.set(static_cast<std::size_t>(k));
        }
    }
  return r;
}

subst_set residual_sets(const subst_set& a, const subst_set& c) {
  if (a.carrier != c.carrier) throw membership_error("sets over different carriers");
  const sub_carrier& car = *a.carrier;
  subst_set r = subst_set::empty_set(car);
  auto am = a.members();
  for (std::size_t t = 0; t < car.size(); ++t) {
    bool ok = true;
    for (std::size_t i : am) {
      std::int32_t k = car.unify_index(i, t);
      if (k >= 0 && !c.test(static_cast<std::size_t>(k))) { ok = false; break; }
    }
    if (ok) r.set(t);
  }
  return r;
}

subst_set down_closure(const sub_carrier& c, const subst_set& s) {
  if (s.carrier != &c) throw membership_error("set over a different carrier");
  subst_set r = subst_set::empty_set(c);
  auto sm = s.members();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t t : sm)
      if (c.instance_leq_idx(i, t)) {
        r.set(i);
        break;
      }
  return r;
}

namespace {

node_id var_node(const sub_carrier& c, std::string_view name) {
  auto n = c.node_of(name);
  if (!n || !c.is_var(*n))
    throw membership_error("'" + std::string(name) + "' is not a variable of the carrier");
  return *n;
}

}  // namespace

subst_set independent_set(const sub_carrier& c, std::string_view x, std::string_view y) {
  node_id vx = var_node(c, x), vy = var_node(c, y);
  if (vx == vy) throw structure_error("independence needs two distinct variables");
  subst_set r = subst_set::empty_set(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    node_id hx = c.resolve(i, vx), hy = c.resolve(i, vy);
    if (!(c.is_var(hx) && hx == hy)) r.set(i);
  }
  return r;
}

subst_set ground_set(const sub_carrier& c, std::string_view x, std::string_view y) {
  node_id vx = var_node(c, x), vy = var_node(c, y);
  if (vx == vy) throw structure_error("groundness pair needs two distinct variables");
  subst_set r = subst_set::empty_set(c);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c.is_var(c.resolve(i, vx)) || !c.is_var(c.resolve(i, vy))) r.set(i);
  return r;
}

subst_set eg_set(const sub_carrier& c) {
  subst_set r = subst_set::empty_set(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool all_ground = true;
    for (auto [src, tgt] : c.member(i).bindings)
      if (c.is_var(tgt)) { all_ground = false; break; }
    if (all_ground) r.set(i);
  }
  return r;
}

named_set_table named_sets(const sub_carrier& c) {
  if (c.num_interest() != 2)
    throw structure_error("named sets need exactly two variables of interest");
  const auto& vi = c.config().vars_of_interest;
  named_set_table t{subst_set::full_set(c), independent_set(c, vi[0], vi[1]),
                    ground_set(c, vi[0], vi[1]), eg_set(c), subst_set::empty_set(c)};
  t.g_or_eg = t.g_xy | t.eg;
  return t;
}

std::string sub_powerset::elem_name(const elem& e) const { return render_set(*carrier_, e); }

sub_domain psh_domain(const sub_carrier& c) {
  if (c.num_interest() < 2)
    throw structure_error("pair-sharing needs at least two variables of interest");
  const auto& vi = c.config().vars_of_interest;
  std::vector<subst_set> gens;
  for (std::size_t i = 0; i < vi.size(); ++i)
    for (std::size_t j = i + 1; j < vi.size(); ++j)
      gens.push_back(independent_set(c, vi[i], vi[j]));
  return moore_closure(sub_powerset(c), std::move(gens));
}

subst_set psh_alpha(const sub_carrier& c, const subst_set& theta) {
  if (theta.carrier != &c) throw membership_error("set over a different carrier");
  if (c.num_interest() < 2)
    throw structure_error("pair-sharing needs at least two variables of interest");
  subst_set acc = subst_set::full_set(c);
  const auto& vi = c.config().vars_of_interest;
  for (std::size_t i = 0; i < vi.size(); ++i)
    for (std::size_t j = i + 1; j < vi.size(); ++j) {
      node_id vx = *c.node_of(vi[i]), vy = *c.node_of(vi[j]);
      bool indep_everywhere = true;
      for (std::size_t m : theta.members()) {
        node_id hx = c.resolve(m, vx), hy = c.resolve(m, vy);
        if (c.is_var(hx) && hx == hy) { indep_everywhere = false; break; }
      }
      if (indep_everywhere) acc = acc & independent_set(c, vi[i], vi[j]);
    }
  return acc;
}

// --- set expressions ---

namespace {

struct expr_parser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("set expression: " + msg + " at offset " + std::to_string(pos));
  }
  void skip() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    auto ok = [&](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    while (pos < s.size() && ok(s[pos])) ++pos;
    if (pos == start) fail("expected a name");
    return std::string(s.substr(start, pos - start));
  }

  set_expr parse_expr() {
    set_expr e = parse_term();
    while (eat('+')) {
      set_expr r = parse_term();
      set_expr u;
      u.k = set_expr::kind::set_union;
      u.lhs = std::make_unique<set_expr>(std::move(e));
      u.rhs = std::make_unique<set_expr>(std::move(r));
      e = std::move(u);
    }
    return e;
  }
  set_expr parse_term() {
    set_expr e = parse_primary();
    while (eat('&')) {
      set_expr r = parse_primary();
      set_expr u;
      u.k = set_expr::kind::set_inter;
      u.lhs = std::make_unique<set_expr>(std::move(e));
      u.rhs = std::make_unique<set_expr>(std::move(r));
      e = std::move(u);
    }
    return e;
  }
  set_expr parse_primary() {
    set_expr e;
    if (eat('{')) {
      e.k = set_expr::kind::literal;
      e.substs.push_back(parse_subst());
      while (eat(';')) e.substs.push_back(parse_subst());
      expect('}');
      return e;
    }
    std::string name = ident();
    if (name == "TOP") {
      e.k = set_expr::kind::top;
    } else if (name == "EMPTY") {
      e.k = set_expr::kind::empty;
    } else if (name == "EG") {
      e.k = set_expr::kind::eg;
    } else if (name == "I" || name == "G") {
      e.k = name == "I" ? set_expr::kind::ind : set_expr::kind::grd;
      expect('(');
      e.var1 = ident();
      expect(',');
      e.var2 = ident();
      expect(')');
    } else {
      fail("unknown set name '" + name + "'");
    }
    return e;
  }
  std::vector<std::pair<std::string, std::string>> parse_subst() {
    std::vector<std::pair<std::string, std::string>> bindings;
    std::string first = ident();
    if (first == "eps") return bindings;
    for (;;) {
      expect('/');
      bindings.emplace_back(first, ident());
      if (!eat(',')) break;
      first = ident();
    }
    return bindings;
  }
};

std::string print_subst_literal(
    const std::vector<std::pair<std::string, std::string>>& bindings) {
  if (bindings.empty()) return "eps";
  std::string out;
  for (const auto& [src, tgt] : bindings) {
    if (!out.empty()) out += ",";
    out += src + "/" + tgt;
  }
  return out;
}

}  // namespace

set_expr set_expr::clone() const {
  set_expr e;
  e.k = k;
  e.var1 = var1;
  e.var2 = var2;
  e.substs = substs;
  if (lhs) e.lhs = std::make_unique<set_expr>(lhs->clone());
  if (rhs) e.rhs = std::make_unique<set_expr>(rhs->clone());
  return e;
}

set_expr parse_set_expr_ast(std::string_view text) {
  expr_parser p{text};
  set_expr e = p.parse_expr();
  if (p.peek() != '\0') p.fail("unexpected trailing input");
  return e;
}

set_expr parse_set_term_prefix(std::string_view text, std::size_t& pos) {
  expr_parser p{text, pos};
  set_expr e = p.parse_term();
  pos = p.pos;
  return e;
}

subst_set eval_set_expr(const sub_carrier& c, const set_expr& e) {
  switch (e.k) {
    case set_expr::kind::top:
      return subst_set::full_set(c);
    case set_expr::kind::empty:
      return subst_set::empty_set(c);
    case set_expr::kind::eg:
      return eg_set(c);
    case set_expr::kind::ind:
      return independent_set(c, e.var1, e.var2);
    case set_expr::kind::grd:
      return ground_set(c, e.var1, e.var2);
    case set_expr::kind::set_union:
      return eval_set_expr(c, *e.lhs) | eval_set_expr(c, *e.rhs);
    case set_expr::kind::set_inter:
      return eval_set_expr(c, *e.lhs) & eval_set_expr(c, *e.rhs);
    case set_expr::kind::literal: {
      subst_set r = subst_set::empty_set(c);
      for (const auto& bindings : e.substs) {
        std::vector<std::pair<node_id, node_id>> eqs;
        for (const auto& [src, tgt] : bindings) {
          node_id vs = var_node(c, src);
          auto vt = c.node_of(tgt);
          if (!vt) throw membership_error("'" + tgt + "' names no variable or constant");
          eqs.emplace_back(vs, *vt);
        }
        auto canon = c.canonicalize(eqs);
        if (!canon)
          throw membership_error("inconsistent substitution literal '" +
                                 print_subst_literal(bindings) + "'");
        r.set(c.index_of(*canon));
      }
      return r;
    }
  }
  throw structure_error("unreachable set expression kind");
}

// Note: the grammar has no parentheses, so a union nested under an
// intersection cannot be printed; parsed trees never have that shape.
std::string print_set_expr(const set_expr& e) {
  switch (e.k) {
    case set_expr::kind::top:
      return "TOP";
    case set_expr::kind::empty:
      return "EMPTY";
    case set_expr::kind::eg:
      return "EG";
    case set_expr::kind::ind:
      return "I(" + e.var1 + "," + e.var2 + ")";
    case set_expr::kind::grd:
      return "G(" + e.var1 + "," + e.var2 + ")";
    case set_expr::kind::set_union:
      return print_set_expr(*e.lhs) + "+" + print_set_expr(*e.rhs);
    case set_expr::kind::set_inter:
      return print_set_expr(*e.lhs) + "&" + print_set_expr(*e.rhs);
    case set_expr::kind::literal: {
      std::string out = "{";
      for (std::size_t i = 0; i < e.substs.size(); ++i) {
        if (i) out += "; ";
        out += print_subst_literal(e.substs[i]);
      }
      return out + "}";
    }
  }
  throw structure_error("unreachable set expression kind");
}

subst_set parse_set_expr(const sub_carrier& c, std::string_view text) {
  return eval_set_expr(c, parse_set_expr_ast(text));
}

std::string render_set(const sub_carrier& c, const subst_set& s) {
  if (s.carrier != &c) throw membership_error("set over a different carrier");
  std::vector<std::pair<std::string, subst_set>> named;
  named.emplace_back("TOP", subst_set::full_set(c));
  named.emplace_back("EMPTY", subst_set::empty_set(c));
  if (c.num_interest() == 2) {
    const auto& vi = c.config().vars_of_interest;
    named_set_table t = named_sets(c);
    named.emplace_back("I(" + vi[0] + "," + vi[1] + ")", t.i_xy);
    named.emplace_back("G(" + vi[0] + "," + vi[1] + ")", t.g_xy);
    named.emplace_back("EG", t.eg);
  } else {
    named.emplace_back("EG", eg_set(c));
  }
  for (const auto& [name, val] : named)
    if (val == s) return name;
  for (std::size_t i = 0; i < named.size(); ++i)
    for (std::size_t j = i + 1; j < named.size(); ++j)
      if ((named[i].second | named[j].second) == s)
        return named[i].first + "+" + named[j].first;
  std::string out = "{";
  bool first = true;
  for (std::size_t i : s.members()) {
    if (!first) out += "; ";
    out += c.member_name(i);
    first = false;
  }
  return out + "}";
}

sub_domain parse_domain_subst(const sub_carrier& c, const std::string& text,
                              std::vector<std::string>* warnings) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<subst_set> fix;
  bool saw_directive = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_line(raw);
    if (line.empty()) continue;
    const std::string tag = "fixpoints:";
    if (line.rfind(tag, 0) != 0)
      throw parse_error("line " + std::to_string(lineno) + ": expected 'fixpoints:', got '" +
                        line + "'");
    saw_directive = true;
    // Expressions are separated by whitespace outside braces.
    std::string rest = line.substr(tag.size());
    std::vector<std::string> exprs;
    std::string cur;
    int depth = 0;
    for (char ch : rest) {
      if (ch == '{') ++depth;
      if (ch == '}') --depth;
      if ((ch == ' ' || ch == '\t') && depth == 0) {
        if (!cur.empty()) exprs.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) exprs.push_back(std::move(cur));
    for (const std::string& ex : exprs) {
      try {
        fix.push_back(parse_set_expr(c, ex));
      } catch (const error& e) {
        throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  if (!saw_directive) throw parse_error("missing 'fixpoints:' directive");
  sub_powerset amb(c);
  subst_set top = amb.top();
  bool has_top = false;
  for (const auto& f : fix)
    if (f == top) has_top = true;
  if (!has_top) {
    fix.push_back(top);
    if (warnings) warnings->push_back("top set TOP added to fixpoints");
  }
  sort_elems(amb, fix);
  for (std::size_t i = 0; i < fix.size(); ++i)
    for (std::size_t j = i + 1; j < fix.size(); ++j) {
      subst_set m = fix[i] & fix[j];
      if (!contains_elem(amb, fix, m))
        throw structure_error("fixpoint set not meet-closed: " + render_set(c, fix[i]) +
                              " & " + render_set(c, fix[j]) + " = " + render_set(c, m) +
                              " is missing");
    }
  return {std::move(fix)};
}

}  // namespace condense
