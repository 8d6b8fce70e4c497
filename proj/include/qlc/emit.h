/** \file
 * cQASM text output (and a reader for the same subset) and the
 * latency-compensated timing trace.
 *
 * Accepted and produced subset:
 *
 *     # comment
 *     version 1.0
 *     qubits N
 *     .name          or  .name(k)
 *     name q[i]      name q[i],q[j]      name q[i:j]      name q[i], angle
 *     { a | b | ... }
 *     display
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/ir.h"
#include "qlc/platform.h"
#include "qlc/schedule.h"

namespace qlc::emit {

using ir::Gate;

/// "cnot q[0],q[1]", "rz q[2], 0.5", "display".
std::string format_gate(const Gate &gate);

/// Emits every kernel of the program. With schedules (one per kernel, in
/// kernel order) each start cycle becomes one statement, multi-gate cycles
/// written as bundles; without them, runs of the same parameterless
/// single-qubit gate over ascending contiguous qubits become ranges.
std::string emit_cqasm(const ir::Program &program, std::span<const schedule::Schedule> schedules = {});

struct ParsedKernel {
    std::string name;
    std::optional<std::size_t> iterations;
    std::vector<Gate> gates;
    std::vector<std::size_t> statement;  ///< document-wide statement index of each gate
};

struct CqasmDocument {
    std::string version;
    std::size_t qubits = 0;
    std::vector<ParsedKernel> kernels;
};

/// Statements before the first section land in a kernel named "main".
/// Throws ParseError with the line number.
CqasmDocument parse_cqasm(std::string_view text);

struct TimingRecord {
    std::size_t index = 0;  ///< position in kernel and gate order
    std::size_t kernel = 0;
    std::size_t gate = 0;
    std::string kernel_name;
    std::string instruction;  ///< formatted gate
    platform::InstructionType type = platform::InstructionType::none;
    std::vector<ir::Qubit> qubits;
    std::int64_t nominal_ns = 0;
    std::int64_t compensated_ns = 0;
    std::int64_t duration_ns = 0;
};

struct TimingTrace {
    std::vector<TimingRecord> records;  ///< by compensated start, then index
    /// Same-qubit operations whose order latency compensation inverted.
    std::vector<std::string> diagnostics;
};

/// nominal = start cycle x cycle time (kernels follow each other),
/// compensated = nominal - latency; when that goes negative the whole trace
/// is shifted so the earliest compensated start is 0. Directives are left
/// out.
TimingTrace build_timing_trace(std::span<const schedule::Schedule> schedules,
                               std::span<const std::string> kernel_names, const platform::Platform &platform);

/// Tab-separated with a header line.
std::string to_tsv(const TimingTrace &trace);
std::string to_json(const TimingTrace &trace);

} // namespace qlc::emit
