// state_io.hpp — plain-text density matrix files:
//   dims dA dB
//   <dA*dB rows of dA*dB entries formatted re+imj>

#pragma once

#include "entwit/states.hpp"

#include <string>

namespace entwit {

// Parses and validates a state file; malformed syntax, non-Hermitian, wrong
// trace or non-PSD content raise std::invalid_argument with the offending
// location/value. Unreadable files raise std::runtime_error.
DensityMatrix read_state_file(const std::string& path);

// Writes with enough digits to round-trip exactly.
void write_state_file(const std::string& path, const DensityMatrix& rho);

}  // namespace entwit
