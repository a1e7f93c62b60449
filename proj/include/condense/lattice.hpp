#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condense/errors.hpp"

namespace condense {

using elem_id = std::uint32_t;

// Explicit finite complete lattice. Validation (antisymmetry, existence of all
// binary lubs/glbs, hence of all finite ones) runs eagerly at construction and
// throws structure_error naming an offending pair. Elements keep their input
// order as stable ids; all set-valued results are reported in id order.
class finite_lattice {
 public:
  // order_pairs are a<=b edges; the reflexive-transitive closure is applied.
  finite_lattice(std::vector<std::string> names,
                 const std::vector<std::pair<elem_id, elem_id>>& order_pairs,
                 std::size_t table_limit = 4096);

  std::size_t size() const { return names_.size(); }
  const std::string& name(elem_id e) const;
  std::optional<elem_id> find(std::string_view name) const;

  bool leq(elem_id a, elem_id b) const;
  elem_id top() const { return top_; }
  elem_id bottom() const { return bottom_; }

  elem_id lub2(elem_id a, elem_id b) const;
  elem_id glb2(elem_id a, elem_id b) const;
  // lub(empty) = bottom, glb(empty) = top.
  elem_id lub(const std::vector<elem_id>& s) const;
  elem_id glb(const std::vector<elem_id>& s) const;
  std::vector<elem_id> maximal_elements(const std::vector<elem_id>& s) const;

  // Ambient interface shared with the substitution powerset.
  using elem = elem_id;
  elem meet(elem a, elem b) const { return glb2(a, b); }
  elem join(elem a, elem b) const { return lub2(a, b); }
  bool elem_eq(elem a, elem b) const { return a == b; }
  bool elem_less(elem a, elem b) const { return a < b; }
  std::string elem_name(elem e) const { return name(e); }

 private:
  void check(elem_id e) const;

  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;   // n*n row-major
  std::vector<elem_id> lub_, glb_;  // n*n tables when n <= table_limit
  bool tabled_ = false;
  elem_id top_ = 0, bottom_ = 0;

  elem_id bound2(elem_id a, elem_id b, bool upper) const;
};

// Text format, one directive per line, '#' starts a comment:
//   elements: a b c ...
//   order: a<=b c<=d ...
finite_lattice parse_lattice(const std::string& text);

// Total monotone self-map on a lattice, validated at construction.
struct monotone_map {
  const finite_lattice* lattice;
  std::vector<elem_id> table;
};

monotone_map make_monotone_map(const finite_lattice& lat, std::vector<elem_id> table);

elem_id kleene_lfp(const monotone_map& f);
elem_id kleene_gfp(const monotone_map& f);

}  // namespace condense
