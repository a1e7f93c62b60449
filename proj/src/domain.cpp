#include "condense/domain.hpp"

#include <sstream>

#include "condense/detail/text.hpp"

namespace condense {

explicit_domain parse_domain(const finite_lattice& lat, const std::string& text,
                             std::vector<std::string>* warnings) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<elem_id> fix;
  bool saw_directive = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::strip_line(raw);
    if (line.empty()) continue;
    const std::string tag = "fixpoints:";
    if (line.rfind(tag, 0) != 0)
      throw parse_error("line " + std::to_string(line_no) +
                        ": expected 'fixpoints:', got '" + line + "'");
    saw_directive = true;
    for (const std::string& tok : detail::split_ws(line.substr(tag.size()))) {
      auto e = lat.find(tok);
      if (!e)
        throw parse_error("line " + std::to_string(line_no) + ": unknown element '" +
                          tok + "'");
      fix.push_back(*e);
    }
  }
  if (!saw_directive) throw parse_error("missing 'fixpoints:' directive");
  bool has_top = false;
  for (elem_id e : fix)
    if (e == lat.top()) has_top = true;
  if (!has_top) {
    fix.push_back(lat.top());
    if (warnings)
      warnings->push_back("top element '" + lat.name(lat.top()) +
                          "' added to fixpoints");
  }
  sort_elems(lat, fix);
  for (std::size_t i = 0; i < fix.size(); ++i)
    for (std::size_t j = i + 1; j < fix.size(); ++j) {
      elem_id m = lat.glb2(fix[i], fix[j]);
      if (!contains_elem(lat, fix, m))
        throw structure_error("fixpoint set not meet-closed: glb(" + lat.name(fix[i]) +
                              ", " + lat.name(fix[j]) + ") = " + lat.name(m) +
                              " is missing");
    }
  return {std::move(fix)};
}

}  // namespace condense
