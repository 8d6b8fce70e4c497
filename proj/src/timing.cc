/** \file
 * Latency-compensated timing trace.
 */

#include <algorithm>
#include <map>

#include <json.hpp>

#include "qlc/emit.h"

namespace qlc::emit {

TimingTrace build_timing_trace(std::span<const schedule::Schedule> schedules,
                               std::span<const std::string> kernel_names, const platform::Platform &platform) {
    TimingTrace trace;
    std::int64_t offset_ns = 0;
    for (std::size_t k = 0; k < schedules.size(); ++k) {
        const auto &s = schedules[k];
        for (std::size_t i = 0; i < s.gates.size(); ++i) {
            const auto &g = s.gates[i];
            if (g.kind == ir::GateKind::directive) continue;
            TimingRecord r;
            r.index = trace.records.size();
            r.kernel = k;
            r.gate = i;
            r.kernel_name = k < kernel_names.size() ? kernel_names[k] : std::string();
            r.instruction = format_gate(g);
            r.type = platform::instruction_type(platform, g);
            r.qubits = g.operands;
            r.nominal_ns = offset_ns + static_cast<std::int64_t>(s.entries[i].start) * platform.cycle_time_ns;
            r.compensated_ns = r.nominal_ns - platform::latency_ns(platform, g);
            const auto *def = platform::find_instruction(platform, g);
            r.duration_ns = def ? def->duration_ns
                                : static_cast<std::int64_t>(s.entries[i].duration) * platform.cycle_time_ns;
            trace.records.push_back(std::move(r));
        }
        offset_ns += static_cast<std::int64_t>(s.makespan) * platform.cycle_time_ns;
    }

    std::int64_t earliest = 0;
    for (const auto &r : trace.records) earliest = std::min(earliest, r.compensated_ns);
    for (auto &r : trace.records) r.compensated_ns -= earliest;

    // Records are in dependency order per qubit; compensation must keep it.
    std::map<ir::Qubit, const TimingRecord *> last;
    for (const auto &r : trace.records) {
        for (auto q : r.qubits) {
            auto it = last.find(q);
            if (it != last.end() && r.compensated_ns < it->second->compensated_ns) {
                trace.diagnostics.push_back("q[" + std::to_string(q) + "]: '" + r.instruction + "' (record " +
                                            std::to_string(r.index) + ") now starts before '" +
                                            it->second->instruction + "' (record " +
                                            std::to_string(it->second->index) + ")");
            }
            last[q] = &r;
        }
    }

    std::stable_sort(trace.records.begin(), trace.records.end(), [](const TimingRecord &a, const TimingRecord &b) {
        return a.compensated_ns < b.compensated_ns;
    });
    return trace;
}

std::string to_tsv(const TimingTrace &trace) {
    std::string out = "index\tkernel\tgate\tinstruction\ttype\tqubits\tnominal_ns\tcompensated_ns\tduration_ns\n";
    for (const auto &r : trace.records) {
        std::string qubits;
        for (std::size_t i = 0; i < r.qubits.size(); ++i) {
            if (i > 0) qubits += ',';
            qubits += std::to_string(r.qubits[i]);
        }
        out += std::to_string(r.index) + '\t' + r.kernel_name + '\t' + std::to_string(r.gate) + '\t' + r.instruction +
               '\t' + std::string(platform::to_string(r.type)) + '\t' + qubits + '\t' + std::to_string(r.nominal_ns) +
               '\t' + std::to_string(r.compensated_ns) + '\t' + std::to_string(r.duration_ns) + '\n';
    }
    return out;
}

std::string to_json(const TimingTrace &trace) {
    auto records = nlohmann::json::array();
    for (const auto &r : trace.records) {
        records.push_back({{"index", r.index},
                           {"kernel", r.kernel_name},
                           {"kernel_index", r.kernel},
                           {"gate", r.gate},
                           {"instruction", r.instruction},
                           {"type", platform::to_string(r.type)},
                           {"qubits", r.qubits},
                           {"nominal_ns", r.nominal_ns},
                           {"compensated_ns", r.compensated_ns},
                           {"duration_ns", r.duration_ns}});
    }
    nlohmann::json doc{{"records", records}, {"diagnostics", trace.diagnostics}};
    return doc.dump(2) + "\n";
}

} // namespace qlc::emit
