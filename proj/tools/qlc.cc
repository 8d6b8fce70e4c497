/** \file
 * Command-line compiler driver.
 *
 * Exit codes: 0 success, 1 usage, 2 configuration, 3 input, 4 pass failure.
 */

#include <iostream>

#include <CLI11.hpp>

#include "qlc/driver.h"
#include "qlc/error.h"

namespace {

int exit_code(const qlc::Error &e) {
    if (e.code() == qlc::ErrorCode::Usage) return 1;
    if (e.code() == qlc::ErrorCode::ConfigNotFound || e.module() == "platform") return 2;
    if (e.code() == qlc::ErrorCode::InputNotFound || e.module() == "input") return 3;
    return 4;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qlc: compile quantum kernels to cQASM and a timing trace"};
    qlc::driver::CompileOptions options;
    std::string passes = "decompose,optimize,map,schedule";
    std::string mode = "alap";
    std::string timing_format = "tsv";

    app.add_option("--config", options.config_path, "hardware configuration (JSON)");
    auto *in = app.add_option("--in", options.input_path, "program in the cQASM subset");
    auto *example = app.add_option("--example", options.example, "built-in program: bell, grover-3q");
    in->excludes(example);
    app.add_option("--passes", passes, "comma-separated subset of decompose,optimize,map,schedule, or none");
    app.add_option("--schedule", mode, "asap, alap or uniform")->check(CLI::IsMember({"asap", "alap", "uniform"}, CLI::ignore_case));
    app.add_flag("--resource-constrained", options.resource_constrained, "respect configured resource counts");
    app.add_option("--epsilon", options.epsilon, "optimizer error budget")->check(CLI::NonNegativeNumber);
    app.add_option("--window", options.window, "optimizer window size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    app.add_option("--out-cqasm", options.out_cqasm, "write cQASM here (default: stdout)");
    app.add_option("--out-timing", options.out_timing, "write the timing trace here");
    app.add_option("--timing-format", timing_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    app.add_option("--report", options.report_path, "write the JSON pass report here");
    app.add_flag("--dump-state", options.dump_state, "print the final state of the unitary prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : 1;
    }

    try {
        options.passes = qlc::driver::parse_passes(passes);
        options.mode = qlc::schedule::parse_mode(mode);
        options.timing_json = timing_format == "json";
        if (options.input_path.empty() && options.example.empty()) {
            std::cerr << "qlc: one of --in or --example is required\n";
            return 1;
        }
        const auto result = qlc::driver::compile(options);
        if (options.out_cqasm.empty()) std::cout << result.cqasm;
        if (options.dump_state) std::cout << result.state;
        for (const auto &d : result.diagnostics) std::cerr << "qlc: note: " << d << '\n';
    } catch (const qlc::Error &e) {
        std::cerr << "qlc: error: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception &e) {
        std::cerr << "qlc: error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
