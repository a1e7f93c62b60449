#include "condense/report.hpp"

#include <cstdio>
#include <utility>

namespace condense {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(data)));
  return buf;
}

void add_kv(run_report& r, std::string key, std::string value) {
  r.payload.emplace_back(std::move(key), std::move(value));
}

namespace {

std::string escape_value(const std::string& v) {
  std::string out;
  out.reserve(v.size());
  for (char ch : v) {
    if (ch == '\\')
      out += "\\\\";
    else if (ch == '\n')
      out += "\\n";
    else if (ch == '\r')
      out += "\\r";
    else
      out += ch;
  }
  return out;
}

}  // namespace

std::string render_kv(const run_report& r) {
  std::string out = "condense-report v1\n";
  out += "command=" + escape_value(r.command) + "\n";
  for (const auto& [path, digest] : r.inputs)
    out += "input." + path + "=" + digest + "\n";
  for (const auto& [key, value] : r.payload)
    out += key + "=" + escape_value(value) + "\n";
  for (std::size_t i = 0; i < r.laws.size(); ++i) {
    out += "violation." + std::to_string(i) + ".law=" + escape_value(r.laws[i].law) + "\n";
    out += "violation." + std::to_string(i) + ".witness=" + escape_value(r.laws[i].witness) +
           "\n";
  }
  return out;
}

std::string render_human(const run_report& r) {
  std::string out = "command: " + r.command + "\n";
  for (const auto& [path, digest] : r.inputs)
    out += "input: " + path + " (fnv1a " + digest + ")\n";
  for (const auto& [key, value] : r.payload) out += key + ": " + value + "\n";
  if (r.laws.empty()) {
    out += "laws: no violations\n";
  } else {
    out += "laws: " + std::to_string(r.laws.size()) + " violation(s)\n";
    for (const auto& v : r.laws) out += "  " + v.law + " at " + v.witness + "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "elapsed: %.2f ms\n", r.elapsed_ms);
  out += buf;
  return out;
}

}  // namespace condense
