/** \file
 * Error type shared by every compiler module.
 *
 * Each failure carries the module that raised it and a stable error code, so
 * the driver can map it to an exit status and tests can match on the code
 * rather than on message text.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlc {

enum class ErrorCode {
    // ir
    UnknownGate,
    OperandRange,
    DuplicateOperand,
    MissingAngle,
    UnexpectedAngle,
    NoMatrixAvailable,
    TooManyQubits,
    // platform
    ParseError,
    SchemaError,
    ValidationError,
    UnknownInstruction,
    DecompositionCycle,
    UnboundOperand,
    // decompose
    WrongArity,
    InsufficientAncillas,
    QubitClash,
    UnsupportedGate,
    NotUnitary,
    BadAngleCount,
    NotPowerOfTwo,
    TooLarge,
    // optimize
    DimMismatch,
    // schedule
    UnschedulableGate,
    // map
    DisconnectedTopology,
    TooManyVirtualQubits,
    GateTooWide,
    // sim
    NonUnitaryGate,
    BadPermutation,
    // driver
    ConfigNotFound,
    InputNotFound,
    Usage,
};

/// Stable textual name of an error code, e.g. "DuplicateOperand".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(std::string module, ErrorCode code, const std::string &message);

    const std::string &module() const noexcept { return module_; }
    ErrorCode code() const noexcept { return code_; }

private:
    std::string module_;
    ErrorCode code_;
};

} // namespace qlc
