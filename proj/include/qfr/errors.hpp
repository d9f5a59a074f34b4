#pragma once
// Exception taxonomy used across the library. The CLI maps these to exit codes.

#include <stdexcept>
#include <string>

namespace qfr {

// Violated precondition or unsupported request (bad operator order, malformed
// state description, non-normalized input, ...).
struct contract_violation : std::invalid_argument {
  explicit contract_violation(const std::string& what) : std::invalid_argument(what) {}
};

// A computation was requested outside the parameter region where its result
// exists (e.g. a divergent second moment).
struct domain_violation : std::runtime_error {
  explicit domain_violation(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / stream failure while writing a report.
struct io_failure : std::runtime_error {
  explicit io_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qfr
