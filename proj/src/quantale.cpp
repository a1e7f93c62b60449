#include "condense/quantale.hpp"

#include <sstream>

#include "condense/detail/text.hpp"

namespace condense {

explicit_quantale::explicit_quantale(finite_lattice lat, std::vector<elem_id> tensor_table,
                                     std::optional<elem_id> unit)
    : lat_(std::move(lat)), tensor_(std::move(tensor_table)), unit_(unit) {
  const std::size_t n = lat_.size();
  if (tensor_.size() != n * n)
    throw structure_error("tensor table has " + std::to_string(tensor_.size()) +
                          " entries, expected " + std::to_string(n * n));
  for (elem_id v : tensor_)
    if (v >= n) throw structure_error("tensor table value out of carrier");
  if (unit_ && *unit_ >= n) throw membership_error("unit element out of carrier");
}

explicit_quantale explicit_quantale::from_meet(finite_lattice lat, bool with_unit) {
  const std::size_t n = lat.size();
  std::vector<elem_id> table(n * n);
  for (elem_id a = 0; a < n; ++a)
    for (elem_id b = 0; b < n; ++b) table[a * n + b] = lat.glb2(a, b);
  std::optional<elem_id> unit;
  if (with_unit) unit = lat.top();
  return explicit_quantale(std::move(lat), std::move(table), unit);
}

elem_id explicit_quantale::tensor(elem_id a, elem_id b) const {
  const std::size_t n = lat_.size();
  if (a >= n || b >= n) throw membership_error("tensor argument out of carrier");
  return tensor_[a * n + b];
}

elem_id explicit_quantale::residual(elem_id a, elem_id c) const {
  const std::size_t n = lat_.size();
  if (a >= n || c >= n) throw membership_error("residual argument out of carrier");
  std::vector<elem_id> below;
  for (elem_id b = 0; b < n; ++b)
    if (lat_.leq(tensor_[a * n + b], c)) below.push_back(b);
  return lat_.lub(below);
}

explicit_quantale parse_quantale(const std::string& text) {
  struct named_pair {
    std::string a, b, c;
    int lineno;
  };
  std::vector<std::string> names;
  std::vector<named_pair> order_toks, tensor_toks;
  bool builtin_meet = false;
  std::optional<std::string> unit_name;
  int unit_lineno = 0;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
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
        order_toks.push_back({tok.substr(0, pos), tok.substr(pos + 2), "", lineno});
      }
    } else if (line.rfind("tensor-builtin:", 0) == 0) {
      auto toks = detail::split_ws(line.substr(15));
      if (toks.size() != 1 || toks[0] != "meet") fail("unknown tensor builtin");
      builtin_meet = true;
    } else if (line.rfind("tensor:", 0) == 0) {
      auto toks = detail::split_ws(line.substr(7));
      if (toks.size() != 4 || toks[2] != "->") fail("tensor line must be 'tensor: a b -> c'");
      tensor_toks.push_back({toks[0], toks[1], toks[3], lineno});
    } else if (line.rfind("unit:", 0) == 0) {
      auto toks = detail::split_ws(line.substr(5));
      if (toks.size() != 1) fail("unit line must name one element");
      unit_name = toks[0];
      unit_lineno = lineno;
    } else {
      fail("unknown directive '" + line + "'");
    }
  }
  if (names.empty()) throw parse_error("no elements declared");
  auto lookup = [&](const std::string& n, int at) -> elem_id {
    for (elem_id i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    throw parse_error("line " + std::to_string(at) + ": undeclared element '" + n + "'");
  };

  std::vector<std::pair<elem_id, elem_id>> pairs;
  for (auto& t : order_toks) pairs.emplace_back(lookup(t.a, t.lineno), lookup(t.b, t.lineno));
  finite_lattice lat = [&] {
    try {
      return finite_lattice(names, pairs);
    } catch (const structure_error& e) {
      throw parse_error(std::string("invalid lattice: ") + e.what());
    }
  }();
  const std::size_t n = lat.size();
  std::optional<elem_id> unit;
  if (unit_name) unit = lookup(*unit_name, unit_lineno);

  if (builtin_meet) {
    if (!tensor_toks.empty())
      throw parse_error("tensor table conflicts with tensor-builtin: meet");
    std::vector<elem_id> table(n * n);
    for (elem_id a = 0; a < n; ++a)
      for (elem_id b = 0; b < n; ++b) table[a * n + b] = lat.glb2(a, b);
    return explicit_quantale(std::move(lat), std::move(table), unit);
  }

  if (tensor_toks.empty()) throw parse_error("no tensor given (table or builtin)");
  constexpr elem_id undefined = static_cast<elem_id>(-1);
  std::vector<elem_id> table(n * n, undefined);
  for (auto& t : tensor_toks) {
    elem_id a = lookup(t.a, t.lineno), b = lookup(t.b, t.lineno), c = lookup(t.c, t.lineno);
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      elem_id& slot = table[x * n + y];
      if (slot != undefined && slot != c)
        throw parse_error("line " + std::to_string(t.lineno) +
                          ": conflicting tensor entry for (" + names[x] + ", " + names[y] + ")");
      slot = c;
    }
  }
  for (elem_id a = 0; a < n; ++a)
    for (elem_id b = 0; b < n; ++b)
      if (table[a * n + b] == undefined)
        throw parse_error("tensor undefined for pair (" + names[a] + ", " + names[b] + ")");
  return explicit_quantale(std::move(lat), std::move(table), unit);
}

law_report verify_quantale(const explicit_quantale& q) {
  std::vector<elem_id> all(q.size());
  for (elem_id e = 0; e < q.size(); ++e) all[e] = e;
  return verify_quantale_sampled(q, all, all);
}

law_report verify_linear_laws(const explicit_quantale& q) {
  std::vector<elem_id> all(q.size());
  for (elem_id e = 0; e < q.size(); ++e) all[e] = e;
  return verify_linear_laws_sampled(q, all, all);
}

}  // namespace condense
