/** \file
 * Error type implementation.
 */

#include "qlc/error.h"

namespace qlc {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownGate: return "UnknownGate";
        case ErrorCode::OperandRange: return "OperandRange";
        case ErrorCode::DuplicateOperand: return "DuplicateOperand";
        case ErrorCode::MissingAngle: return "MissingAngle";
        case ErrorCode::UnexpectedAngle: return "UnexpectedAngle";
        case ErrorCode::NoMatrixAvailable: return "NoMatrixAvailable";
        case ErrorCode::TooManyQubits: return "TooManyQubits";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::UnknownInstruction: return "UnknownInstruction";
        case ErrorCode::DecompositionCycle: return "DecompositionCycle";
        case ErrorCode::UnboundOperand: return "UnboundOperand";
        case ErrorCode::WrongArity: return "WrongArity";
        case ErrorCode::InsufficientAncillas: return "InsufficientAncillas";
        case ErrorCode::QubitClash: return "QubitClash";
        case ErrorCode::UnsupportedGate: return "UnsupportedGate";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::BadAngleCount: return "BadAngleCount";
        case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::UnschedulableGate: return "UnschedulableGate";
        case ErrorCode::DisconnectedTopology: return "DisconnectedTopology";
        case ErrorCode::TooManyVirtualQubits: return "TooManyVirtualQubits";
        case ErrorCode::GateTooWide: return "GateTooWide";
        case ErrorCode::NonUnitaryGate: return "NonUnitaryGate";
        case ErrorCode::BadPermutation: return "BadPermutation";
        case ErrorCode::ConfigNotFound: return "ConfigNotFound";
        case ErrorCode::InputNotFound: return "InputNotFound";
        case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

Error::Error(std::string module, ErrorCode code, const std::string &message)
    : std::runtime_error(module + ": " + std::string(to_string(code)) + ": " + message),
      module_(std::move(module)),
      code_(code) {}

} // namespace qlc
