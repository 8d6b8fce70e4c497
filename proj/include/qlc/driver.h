/** \file
 * Compilation pipeline: decompose, optimize, map, schedule, emit.
 */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/ir.h"
#include "qlc/optimize.h"
#include "qlc/platform.h"
#include "qlc/schedule.h"

namespace qlc::driver {

enum class Pass { decompose, optimize, map, schedule };

/// Parses a comma-separated pass list; "none" and "" select no pass.
/// Throws Usage on unknown names.
std::vector<Pass> parse_passes(std::string_view list);

struct CompileOptions {
    std::string config_path;  ///< empty: simulation platform sized to the program
    std::string input_path;   ///< cQASM-subset program file
    std::string example;      ///< built-in program name, used when input_path is empty
    std::vector<Pass> passes{Pass::decompose, Pass::optimize, Pass::map, Pass::schedule};
    schedule::Mode mode = schedule::Mode::alap;
    bool resource_constrained = false;
    double epsilon = optimize::DEFAULT_EPSILON;
    std::size_t window = optimize::DEFAULT_WINDOW;
    std::string out_cqasm;
    std::string out_timing;
    bool timing_json = false;
    std::string report_path;
    bool dump_state = false;
};

struct CompileResult {
    ir::Program program;
    std::vector<schedule::Schedule> schedules;  ///< empty unless scheduled
    std::string cqasm;
    std::string timing;  ///< empty unless scheduled
    std::string report;  ///< JSON
    std::string state;   ///< amplitude dump when requested
    std::vector<std::string> diagnostics;
};

/// Runs the enabled passes on an already built program and writes the
/// requested artifacts. Library errors propagate as qlc::Error.
CompileResult compile_program(const ir::Program &program, const CompileOptions &options);

/// Loads configuration and input named in the options, then compiles.
/// Configuration problems surface from module "platform" (or as
/// ConfigNotFound), input problems from module "input".
CompileResult compile(const CompileOptions &options);

/// Reads the cQASM subset into a program; every section becomes a kernel.
ir::Program load_program(std::string_view text, std::string name,
                         std::shared_ptr<const platform::Platform> platform);

std::vector<std::string> example_names();

/// Built-in programs: "bell" (three kernels preparing and measuring a Bell
/// pair) and "grover-3q" (nine-qubit Grover search with three iterations).
ir::Program example_program(std::string_view name, std::shared_ptr<const platform::Platform> platform);

/// Paths of the files written by program_compile.
struct Artifacts {
    std::string cqasm;
    std::string timing;
};

/// Scripting-style entry point: decompose, optionally optimize, map and
/// schedule with `schedule_mode` ("asap", "alap" or "uniform", any case),
/// then write <dir>/<program>.qasm and <dir>/<program>_timing.tsv.
Artifacts program_compile(const ir::Program &program, bool optimize, std::string_view schedule_mode,
                          const std::string &output_dir = ".");

} // namespace qlc::driver
