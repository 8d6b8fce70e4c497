/** \file
 * Built-in example programs.
 */

#include "qlc/driver.h"
#include "qlc/error.h"

namespace qlc::driver {

namespace {

using Platform = std::shared_ptr<const platform::Platform>;

ir::Program bell(const Platform &platform) {
    ir::Program program("bell_pair", 2, platform);
    ir::Kernel init("init", 2, platform);
    init.prepz(0).prepz(1);
    ir::Kernel epr("epr", 2, platform);
    epr.hadamard(0).cnot(0, 1);
    ir::Kernel measure("measure", 2, platform);
    measure.measure(0).measure(1);
    program.add_kernel(init).add_kernel(epr).add_kernel(measure);
    return program;
}

// Multi-controlled NOT on `target` over q0..q3 using q5..q7 as scratch,
// written out as the same Toffoli ladder each time.
void oracle_ladder(ir::Kernel &k, std::size_t last_control, ir::Qubit target) {
    k.toffoli(0, 1, 5).toffoli(1, 5, 6).toffoli(2, 6, 7);
    if (last_control == 3) k.toffoli(3, 7, 8).cnot(8, target).toffoli(3, 7, 8);
    else k.cnot(7, target);
    k.toffoli(2, 6, 7).toffoli(1, 5, 6).toffoli(0, 1, 5);
}

ir::Program grover(const Platform &platform) {
    constexpr std::size_t n = 9;
    ir::Program program("grover", n, platform);

    ir::Kernel init("init", n, platform);
    init.x(4);
    for (ir::Qubit q = 0; q <= 4; ++q) init.hadamard(q);

    ir::Kernel step("grover", n, platform);
    step.set_iterations(3);
    // oracle marking |0100>
    step.x(2);
    oracle_ladder(step, 3, 4);
    step.x(2);
    // diffusion
    for (ir::Qubit q = 0; q < 4; ++q) step.hadamard(q);
    for (ir::Qubit q = 0; q < 4; ++q) step.x(q);
    step.hadamard(3);
    oracle_ladder(step, 2, 3);
    step.hadamard(3);
    for (ir::Qubit q = 0; q < 4; ++q) step.x(q);
    for (ir::Qubit q = 0; q < 4; ++q) step.hadamard(q);
    step.display();

    ir::Kernel measure("measure", n, platform);
    measure.hadamard(4).measure(4).display();

    program.add_kernel(init).add_kernel(step).add_kernel(measure);
    return program;
}

} // namespace

std::vector<std::string> example_names() { return {"bell", "grover-3q"}; }

ir::Program example_program(std::string_view name, std::shared_ptr<const platform::Platform> platform) {
    if (name == "bell") return bell(platform);
    if (name == "grover-3q") return grover(platform);
    throw Error("input", ErrorCode::InputNotFound, "no built-in example '" + std::string(name) + "'");
}

} // namespace qlc::driver
