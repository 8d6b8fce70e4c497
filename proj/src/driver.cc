/** \file
 * Pass pipeline, program loading and artifact writing.
 */

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlc/decompose.h"
#include "qlc/driver.h"
#include "qlc/emit.h"
#include "qlc/error.h"
#include "qlc/map.h"
#include "qlc/sim.h"

namespace qlc::driver {

namespace {

using nlohmann::json;

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("driver", ErrorCode::Usage, "cannot write '" + path + "'");
    out << content;
}

std::string read_file(const std::string &path, ErrorCode missing) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(missing == ErrorCode::ConfigNotFound ? "platform" : "input", missing, "cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t gate_count(const std::vector<ir::Kernel> &kernels) {
    std::size_t n = 0;
    for (const auto &k : kernels) n += k.gates().size();
    return n;
}

std::size_t total_depth(const std::vector<ir::Kernel> &kernels) {
    std::size_t d = 0;
    for (const auto &k : kernels) d += schedule::circuit_depth(k.gates());
    return d;
}

bool enabled(const CompileOptions &options, Pass pass) {
    return std::find(options.passes.begin(), options.passes.end(), pass) != options.passes.end();
}

std::string_view mode_name(schedule::Mode mode) {
    switch (mode) {
    case schedule::Mode::asap: return "asap";
    case schedule::Mode::alap: return "alap";
    case schedule::Mode::uniform: return "uniform";
    }
    return "asap";
}

ir::Kernel with_gates(const ir::Kernel &kernel, std::vector<ir::Gate> gates, std::size_t qubits,
                      const std::shared_ptr<const platform::Platform> &platform) {
    ir::Kernel out(kernel.name(), qubits, platform);
    if (kernel.iterations()) out.set_iterations(*kernel.iterations());
    platform::resolve_all(*platform, gates);
    out.set_gates(std::move(gates));
    return out;
}

} // namespace

std::vector<Pass> parse_passes(std::string_view list) {
    std::vector<Pass> passes;
    std::stringstream in{std::string(list)};
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty() || item == "none") continue;
        if (item == "decompose") passes.push_back(Pass::decompose);
        else if (item == "optimize") passes.push_back(Pass::optimize);
        else if (item == "map") passes.push_back(Pass::map);
        else if (item == "schedule") passes.push_back(Pass::schedule);
        else throw Error("driver", ErrorCode::Usage, "unknown pass '" + item + "'");
    }
    return passes;
}

CompileResult compile_program(const ir::Program &program, const CompileOptions &options) {
    auto platform = program.platform();
    if (!platform) platform = std::make_shared<const platform::Platform>(platform::Platform::simulation(program.qubit_count()));
    if (!options.out_timing.empty() && !enabled(options, Pass::schedule)) {
        throw Error("driver", ErrorCode::Usage, "a timing trace needs the schedule pass");
    }

    std::size_t qubits = program.qubit_count();
    std::vector<ir::Kernel> kernels(program.kernels().begin(), program.kernels().end());
    json report{{"program", program.name()}, {"platform", platform->name}, {"passes", json::array()}};
    std::vector<std::string> diagnostics;

    auto record = [&](std::string_view name, std::size_t gates_before, std::size_t depth_before, json extra) {
        json entry{{"pass", name},
                   {"gates_before", gates_before},
                   {"gates_after", gate_count(kernels)},
                   {"depth_before", depth_before},
                   {"depth_after", total_depth(kernels)}};
        entry.update(extra);
        report["passes"].push_back(entry);
    };

    if (enabled(options, Pass::decompose)) {
        const auto before = gate_count(kernels), depth = total_depth(kernels);
        for (auto &k : kernels) k = with_gates(k, decompose::decompose_circuit(k.gates(), *platform), qubits, platform);
        record("decompose", before, depth, json::object());
    }

    if (enabled(options, Pass::optimize)) {
        const auto before = gate_count(kernels), depth = total_depth(kernels);
        std::size_t replacements = 0;
        for (auto &k : kernels) {
            optimize::OptimizeStats stats;
            auto gates = optimize::optimize_circuit(k.gates(), options.epsilon, options.window, &stats);
            replacements += stats.replacements;
            k = with_gates(k, std::move(gates), qubits, platform);
        }
        record("optimize", before, depth, {{"replacements", replacements}});
    }

    if (enabled(options, Pass::map)) {
        const auto before = gate_count(kernels), depth = total_depth(kernels);
        if (!platform->topology) {
            record("map", before, depth, {{"skipped", "no topology"}});
        } else {
            const auto &topology = *platform->topology;
            std::vector<ir::Gate> all;
            for (const auto &k : kernels) all.insert(all.end(), k.gates().begin(), k.gates().end());
            const auto placement = map::initial_placement(all, topology);
            auto mapping = placement.mapping;
            std::size_t swaps = 0, restore_swaps = 0;
            for (auto &k : kernels) {
                const auto entry = mapping;
                auto routed = map::route(k.gates(), topology, mapping, *platform);
                swaps += routed.swaps_added;
                mapping = routed.final_mapping;
                if (k.iterations() && mapping != entry) {
                    std::size_t count = 0;
                    auto back = map::restore_mapping(mapping, entry, topology, *platform, &count);
                    restore_swaps += count;
                    routed.gates.insert(routed.gates.end(), back.begin(), back.end());
                }
                k = with_gates(k, std::move(routed.gates), topology.qubit_count, platform);
            }
            qubits = topology.qubit_count;
            record("map", before, depth,
                   {{"swaps_added", swaps},
                    {"restore_swaps", restore_swaps},
                    {"placement_cost", placement.cost},
                    {"placement_exact", placement.exact},
                    {"initial_mapping", placement.mapping.v2p},
                    {"final_mapping", mapping.v2p}});
        }
    }

    CompileResult result{ir::Program(program.name(), qubits, platform), {}, {}, {}, {}, {}, {}};
    for (auto &k : kernels) {
        ir::Kernel sized(k.name(), qubits, platform);
        if (k.iterations()) sized.set_iterations(*k.iterations());
        sized.set_gates(std::vector<ir::Gate>(k.gates().begin(), k.gates().end()));
        result.program.add(std::move(sized));
    }

    if (enabled(options, Pass::schedule)) {
        std::size_t makespan = 0;
        for (const auto &k : result.program.kernels()) {
            result.schedules.push_back(
                schedule::schedule(k.gates(), *platform, options.mode, options.resource_constrained));
            makespan += result.schedules.back().makespan;
        }
        report["schedule"] = {{"mode", mode_name(options.mode)},
                              {"resource_constrained", options.resource_constrained},
                              {"makespan_cycles", makespan}};
        if (options.resource_constrained && options.mode == schedule::Mode::uniform) {
            diagnostics.push_back("resource-constrained uniform scheduling runs as ALAP");
        }
        std::vector<std::string> names;
        for (const auto &k : result.program.kernels()) names.push_back(k.name());
        const auto trace = emit::build_timing_trace(result.schedules, names, *platform);
        result.timing = options.timing_json ? emit::to_json(trace) : emit::to_tsv(trace);
        diagnostics.insert(diagnostics.end(), trace.diagnostics.begin(), trace.diagnostics.end());
    }

    result.cqasm = emit::emit_cqasm(result.program, result.schedules);

    if (options.dump_state) {
        std::vector<ir::Gate> all;
        for (const auto &k : result.program.kernels()) all.insert(all.end(), k.gates().begin(), k.gates().end());
        const auto prefix = sim::unitary_prefix(all);
        result.state = sim::dump(sim::simulate(prefix, qubits));
    }

    report["qubits"] = qubits;
    report["gates"] = gate_count(kernels);
    report["diagnostics"] = diagnostics;
    result.report = report.dump(2) + "\n";
    result.diagnostics = std::move(diagnostics);

    if (!options.out_cqasm.empty()) write_file(options.out_cqasm, result.cqasm);
    if (!options.out_timing.empty()) write_file(options.out_timing, result.timing);
    if (!options.report_path.empty()) write_file(options.report_path, result.report);
    return result;
}

CompileResult compile(const CompileOptions &options) {
    std::shared_ptr<const platform::Platform> platform;
    if (!options.config_path.empty()) {
        if (!std::filesystem::exists(options.config_path)) {
            throw Error("platform", ErrorCode::ConfigNotFound, "no configuration at '" + options.config_path + "'");
        }
        platform = std::make_shared<const platform::Platform>(platform::load_platform_file(
            options.config_path, std::filesystem::path(options.config_path).stem().string()));
    }

    std::optional<ir::Program> program;
    try {
        if (!options.input_path.empty()) {
            const auto text = read_file(options.input_path, ErrorCode::InputNotFound);
            program = load_program(text, std::filesystem::path(options.input_path).stem().string(), platform);
        } else if (!options.example.empty()) {
            program = example_program(options.example, platform);
        } else {
            throw Error("input", ErrorCode::Usage, "no input program given");
        }
    } catch (const Error &e) {
        if (e.module() == "input") throw;
        throw Error("input", e.code(), e.what());
    }
    return compile_program(*program, options);
}

ir::Program load_program(std::string_view text, std::string name,
                         std::shared_ptr<const platform::Platform> platform) {
    const auto doc = emit::parse_cqasm(text);
    std::size_t qubits = doc.qubits;
    for (const auto &k : doc.kernels) qubits = std::max(qubits, optimize::qubit_extent(k.gates));
    if (!platform) platform = std::make_shared<const platform::Platform>(platform::Platform::simulation(qubits));
    ir::Program program(std::move(name), qubits, platform);
    for (const auto &parsed : doc.kernels) {
        ir::Kernel kernel(parsed.name, qubits, platform);
        if (parsed.iterations) kernel.set_iterations(*parsed.iterations);
        for (const auto &g : parsed.gates) {
            ir::Gate gate(g.name, g.operands, g.angle);
            kernel.add(std::move(gate));
        }
        program.add(std::move(kernel));
    }
    return program;
}

Artifacts program_compile(const ir::Program &program, bool optimize, std::string_view schedule_mode,
                          const std::string &output_dir) {
    CompileOptions options;
    options.mode = schedule::parse_mode(schedule_mode);
    options.passes = {Pass::decompose, Pass::map, Pass::schedule};
    if (optimize) options.passes.insert(options.passes.begin() + 1, Pass::optimize);
    const std::filesystem::path dir(output_dir);
    Artifacts artifacts{(dir / (program.name() + ".qasm")).string(), (dir / (program.name() + "_timing.tsv")).string()};
    options.out_cqasm = artifacts.cqasm;
    options.out_timing = artifacts.timing;
    compile_program(program, options);
    return artifacts;
}

} // namespace qlc::driver
