#pragma once

#include <stdexcept>
#include <string>

namespace condense {

// Base for all library errors; every subtype carries a human-readable message.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (lattice/quantale/carrier/domain/program files, set expressions).
struct parse_error : error {
  using error::error;
};

// An element or set does not belong to the expected carrier/ambient.
struct membership_error : error {
  using error::error;
};

// Structural validation failed (non-lattice order, non-quantale table, carrier closure).
struct structure_error : error {
  using error::error;
};

// Operation requires exhaustive ambient enumeration that exceeds the configured size.
struct size_limit_error : error {
  using error::error;
};

// Fixpoint iteration exceeded the configured cap.
struct iteration_cap_error : error {
  using error::error;
};

// rename_apart ran out of fresh auxiliary variables.
struct pool_exhausted_error : error {
  using error::error;
};

}  // namespace condense
