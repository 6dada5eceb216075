#include "bsci/error.hpp"

namespace bsci {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::invalid_quantum_numbers: return "invalid-quantum-numbers";
    case ErrorKind::invalid_coupling: return "invalid-coupling";
    case ErrorKind::factorization_failure: return "factorization-failure";
    case ErrorKind::unsupported_symmetry: return "unsupported-symmetry";
    case ErrorKind::memory_budget_exceeded: return "memory-budget-exceeded";
    case ErrorKind::convergence_failure: return "convergence-failure";
    case ErrorKind::ambiguous_state: return "ambiguous-state";
    case ErrorKind::inconsistent_inputs: return "inconsistent-inputs";
    case ErrorKind::negative_eigenvalue: return "negative-eigenvalue";
    case ErrorKind::invalid_purity: return "invalid-purity";
    case ErrorKind::io_failure: return "io-failure";
    case ErrorKind::config_error: return "config-error";
  }
  return "unknown";
}

}  // namespace bsci
