#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condense/quantale.hpp"

namespace condense {

// Run summary with a stable shape: command echo, input digests, an ordered
// key/value payload, the law-violation table, and wall-clock time. The
// machine format is versioned and omits timing so identical runs serialize
// byte-identically.
struct run_report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;   // path -> digest
  std::vector<std::pair<std::string, std::string>> payload;  // insertion order
  law_report laws;
  double elapsed_ms = 0.0;
};

std::uint64_t fnv1a(std::string_view data);
std::string digest_hex(std::string_view data);

void add_kv(run_report& r, std::string key, std::string value);

// "condense-report v1" then one key=value per line; newlines and
// backslashes in values are escaped.
std::string render_kv(const run_report& r);
std::string render_human(const run_report& r);

}  // namespace condense
