#include "condense/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "condense/detail/text.hpp"

namespace condense {

finite_lattice::finite_lattice(std::vector<std::string> names,
                               const std::vector<std::pair<elem_id, elem_id>>& order_pairs,
                               std::size_t table_limit)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  if (n == 0) throw structure_error("lattice needs at least one element");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names_[i] == names_[j])
        throw structure_error("duplicate element name '" + names_[i] + "'");

  leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (auto [a, b] : order_pairs) {
    if (a >= n || b >= n) throw membership_error("order pair out of carrier");
    leq_[a * n + b] = 1;
  }
  // Transitive closure (Warshall).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq_[i * n + j] && leq_[j * n + i])
        throw structure_error("order is not antisymmetric: '" + names_[i] + "' and '" +
                              names_[j] + "' are mutually below each other");

  // Every pair must have a unique least upper bound and greatest lower bound;
  // with finiteness this yields a complete lattice (and top/bottom exist).
  auto unique_bound = [&](elem_id a, elem_id b, bool upper) -> elem_id {
    std::vector<elem_id> cand;
    for (elem_id x = 0; x < n; ++x) {
      bool ok = upper ? (leq_[a * n + x] && leq_[b * n + x])
                      : (leq_[x * n + a] && leq_[x * n + b]);
      if (ok) cand.push_back(x);
    }
    for (elem_id x : cand) {
      bool extremal = true;
      for (elem_id y : cand) {
        bool below = upper ? leq_[x * n + y] : leq_[y * n + x];
        if (!below) { extremal = false; break; }
      }
      if (extremal) return x;
    }
    throw structure_error(std::string("not a lattice: pair '") + names_[a] + "', '" +
                          names_[b] + "' has no " + (upper ? "least upper" : "greatest lower") +
                          " bound");
  };

  tabled_ = n <= table_limit;
  if (tabled_) {
    lub_.assign(n * n, 0);
    glb_.assign(n * n, 0);
  }
  for (elem_id a = 0; a < n; ++a)
    for (elem_id b = a; b < n; ++b) {
      elem_id u = unique_bound(a, b, true);
      elem_id m = unique_bound(a, b, false);
      if (tabled_) {
        lub_[a * n + b] = lub_[b * n + a] = u;
        glb_[a * n + b] = glb_[b * n + a] = m;
      }
    }

  top_ = 0;
  bottom_ = 0;
  for (elem_id x = 0; x < n; ++x) {
    top_ = tabled_ ? lub_[top_ * n + x] : unique_bound(top_, x, true);
    bottom_ = tabled_ ? glb_[bottom_ * n + x] : unique_bound(bottom_, x, false);
  }
}

void finite_lattice::check(elem_id e) const {
  if (e >= names_.size()) throw membership_error("element id out of carrier");
}

const std::string& finite_lattice::name(elem_id e) const {
  check(e);
  return names_[e];
}

std::optional<elem_id> finite_lattice::find(std::string_view name) const {
  for (elem_id i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool finite_lattice::leq(elem_id a, elem_id b) const {
  check(a);
  check(b);
  return leq_[a * size() + b] != 0;
}

elem_id finite_lattice::bound2(elem_id a, elem_id b, bool upper) const {
  const std::size_t n = size();
  std::vector<elem_id> cand;
  for (elem_id x = 0; x < n; ++x) {
    bool ok = upper ? (leq_[a * n + x] && leq_[b * n + x])
                    : (leq_[x * n + a] && leq_[x * n + b]);
    if (ok) cand.push_back(x);
  }
  for (elem_id x : cand) {
    bool extremal = true;
    for (elem_id y : cand)
      if (!(upper ? leq_[x * n + y] : leq_[y * n + x])) { extremal = false; break; }
    if (extremal) return x;
  }
  throw structure_error("bound lookup failed");  // unreachable after construction
}

elem_id finite_lattice::lub2(elem_id a, elem_id b) const {
  check(a);
  check(b);
  return tabled_ ? lub_[a * size() + b] : bound2(a, b, true);
}

elem_id finite_lattice::glb2(elem_id a, elem_id b) const {
  check(a);
  check(b);
  return tabled_ ? glb_[a * size() + b] : bound2(a, b, false);
}

elem_id finite_lattice::lub(const std::vector<elem_id>& s) const {
  elem_id acc = bottom_;
  for (elem_id x : s) acc = lub2(acc, x);
  return acc;
}

elem_id finite_lattice::glb(const std::vector<elem_id>& s) const {
  elem_id acc = top_;
  for (elem_id x : s) acc = glb2(acc, x);
  return acc;
}

std::vector<elem_id> finite_lattice::maximal_elements(const std::vector<elem_id>& s) const {
  std::vector<elem_id> out;
  for (elem_id x : s) {
    check(x);
    bool maximal = true;
    for (elem_id y : s)
      if (x != y && leq(x, y)) { maximal = false; break; }
    if (maximal && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

finite_lattice parse_lattice(const std::string& text) {
  std::vector<std::string> names;
  std::vector<std::pair<elem_id, elem_id>> pairs;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
  };
  auto lookup = [&](const std::string& n) -> elem_id {
    for (elem_id i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    fail("undeclared element '" + n + "'");
    return 0;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_line(raw);
    if (line.empty()) continue;
    if (line.rfind("elements:", 0) == 0) {
      for (auto& n : detail::split_ws(line.substr(9))) names.push_back(n);
    } else if (line.rfind("order:", 0) == 0) {
      for (auto& tok : detail::split_ws(line.substr(6))) {
        auto pos = tok.find("<=");
        if (pos == std::string::npos) fail("order token '" + tok + "' is not of the form a<=b");
        pairs.emplace_back(lookup(tok.substr(0, pos)), lookup(tok.substr(pos + 2)));
      }
    } else {
      fail("unknown directive '" + line + "'");
    }
  }
  if (names.empty()) throw parse_error("no elements declared");
  try {
    return finite_lattice(std::move(names), pairs);
  } catch (const structure_error& e) {
    throw parse_error(std::string("invalid lattice: ") + e.what());
  }
}

monotone_map make_monotone_map(const finite_lattice& lat, std::vector<elem_id> table) {
  if (table.size() != lat.size()) throw membership_error("monotone map table has wrong size");
  for (elem_id x = 0; x < lat.size(); ++x) {
    if (table[x] >= lat.size()) throw membership_error("monotone map value out of carrier");
    for (elem_id y = 0; y < lat.size(); ++y)
      if (lat.leq(x, y) && !lat.leq(table[x], table[y]))
        throw structure_error("map is not monotone at pair '" + lat.name(x) + "', '" +
                              lat.name(y) + "'");
  }
  return monotone_map{&lat, std::move(table)};
}

elem_id kleene_lfp(const monotone_map& f) {
  elem_id x = f.lattice->bottom();
  for (;;) {
    elem_id nx = f.table[x];
    if (nx == x) return x;
    x = nx;
  }
}

elem_id kleene_gfp(const monotone_map& f) {
  elem_id x = f.lattice->top();
  for (;;) {
    elem_id nx = f.table[x];
    if (nx == x) return x;
    x = nx;
  }
}

}  // namespace condense
