#pragma once

#include <stdexcept>
#include <string>

namespace mdyck {

// Exit statuses shared by the CLI and the resource guards.
enum class ExitStatus : int {
  ok = 0,
  input_error = 1,
  mismatch = 2,
  budget_exceeded = 3,
};

// Bad user-supplied data (malformed counts, unknown edge ids, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource budget was exhausted mid-computation.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated internal contract; indicates a bug, not bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check_internal(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

}  // namespace mdyck
