#include "condense/subst_quantale.hpp"

#include <random>

namespace condense {

sub_quantale::sub_quantale(const sub_carrier& c) : sub_powerset(c) {
  subst_set eps = subst_set::empty_set(c);
  eps.set(c.index_of(flat_subst{}));
  unit_ = std::move(eps);
}

namespace {

std::vector<subst_set> distinguished(const sub_carrier& c) {
  std::vector<subst_set> out;
  out.push_back(subst_set::full_set(c));
  out.push_back(subst_set::empty_set(c));
  out.push_back(eg_set(c));
  if (c.num_interest() == 2) {
    named_set_table t = named_sets(c);
    out.push_back(t.i_xy);
    out.push_back(t.g_xy);
    out.push_back(t.g_or_eg);
  }
  return out;
}

std::vector<subst_set> random_sets(const sub_carrier& c, std::uint64_t seed, std::size_t k) {
  std::mt19937_64 rng(seed);
  const std::size_t rem = c.size() % 64;
  std::vector<subst_set> out;
  for (std::size_t i = 0; i < k; ++i) {
    subst_set s = subst_set::empty_set(c);
    for (auto& w : s.mask) w = rng();
    if (rem) s.mask.back() &= (std::uint64_t{1} << rem) - 1;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<subst_set> law_sample(const sub_carrier& c, std::uint64_t seed, std::size_t k) {
  std::vector<subst_set> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    subst_set s = subst_set::empty_set(c);
    s.set(i);
    out.push_back(std::move(s));
  }
  for (auto& s : distinguished(c)) out.push_back(std::move(s));
  for (auto& s : random_sets(c, seed, k)) out.push_back(std::move(s));
  return out;
}

std::vector<subst_set> law_triple_base(const sub_carrier& c, std::uint64_t seed) {
  std::vector<subst_set> out = distinguished(c);
  for (auto& s : random_sets(c, seed, 8)) out.push_back(std::move(s));
  return out;
}

law_report verify_quantale(const sub_quantale& q, std::uint64_t seed, std::size_t k) {
  return verify_quantale_sampled(q, law_sample(q.carrier(), seed, k),
                                 law_triple_base(q.carrier(), seed));
}

law_report verify_linear_laws(const sub_quantale& q, std::uint64_t seed, std::size_t k) {
  return verify_linear_laws_sampled(q, law_sample(q.carrier(), seed, k),
                                    law_triple_base(q.carrier(), seed));
}

}  // namespace condense
