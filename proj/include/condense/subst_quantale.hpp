#pragma once

#include <cstdint>

#include "condense/quantale.hpp"
#include "condense/subst.hpp"

namespace condense {

// The lifted-unification quantale on carrier subsets: the powerset ambient
// extended with the tensor, its right adjoint, and the unit {eps}.
class sub_quantale : public sub_powerset {
 public:
  explicit sub_quantale(const sub_carrier& c);

  using elem = subst_set;
  elem tensor(const elem& a, const elem& b) const { return tensor_sets(a, b); }
  elem residual(const elem& a, const elem& c) const { return residual_sets(a, c); }
  const std::optional<elem>& unit() const { return unit_; }

 private:
  std::optional<elem> unit_;
};

// Law-check sample: every singleton, the distinguished sets in scope, and k
// pseudo-random subsets (one 64-bit draw per mask word, tail trimmed to the
// carrier width). Deterministic for a fixed seed.
std::vector<subst_set> law_sample(const sub_carrier& c, std::uint64_t seed = 0,
                                  std::size_t k = 64);

// Base for the cubic laws: the distinguished sets plus the first 8 random
// subsets of law_sample's sequence.
std::vector<subst_set> law_triple_base(const sub_carrier& c, std::uint64_t seed = 0);

law_report verify_quantale(const sub_quantale& q, std::uint64_t seed = 0, std::size_t k = 64);
law_report verify_linear_laws(const sub_quantale& q, std::uint64_t seed = 0,
                              std::size_t k = 64);

}  // namespace condense
