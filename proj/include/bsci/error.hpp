#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsci {

enum class ErrorKind {
  invalid_parameter,
  index_out_of_range,
  invalid_quantum_numbers,
  invalid_coupling,
  factorization_failure,
  unsupported_symmetry,
  memory_budget_exceeded,
  convergence_failure,
  ambiguous_state,
  inconsistent_inputs,
  negative_eigenvalue,
  invalid_purity,
  io_failure,
  config_error,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-checkable category alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bsci
