#include "csenergy/ledger.hpp"

#include <ostream>
#include <stdexcept>

namespace csenergy {

void record_transmission(BitMeterLedger& ledger, const Point& src, const Point& dst,
                         std::uint64_t bits, std::size_t stage) {
    if (bits == 0) throw std::invalid_argument("record_transmission: bits == 0");
    if (stage == 0) throw std::invalid_argument("record_transmission: stage == 0");
    double mu = static_cast<double>(bits) * distance(src, dst);
    if (ledger.per_stage.size() < stage) ledger.per_stage.resize(stage, 0.0);
    ledger.per_stage[stage - 1] += mu;
    ledger.total += mu;
    if (ledger.trace_enabled) {
        ledger.trace.push_back({static_cast<std::uint32_t>(stage), src.x, src.y,
                                dst.x, dst.y, bits, mu});
    }
}

void route_and_meter(BitMeterLedger& ledger, NodeRef src, NodeRef dst,
                     std::uint64_t bits, std::size_t stage, const CircuitLayout& layout) {
    auto resolve = [&](NodeRef r) -> const Point& {
        if (r.kind == NodeKind::Input) {
            if (r.id >= layout.inputs.size()) throw std::out_of_range("route_and_meter: input id");
            return layout.inputs[r.id];
        }
        if (r.id >= layout.outputs.size()) throw std::out_of_range("route_and_meter: output id");
        return layout.outputs[r.id];
    };
    record_transmission(ledger, resolve(src), resolve(dst), bits, stage);
}

void BitMeterLedger::dump_csv(std::ostream& os) const {
    os << "stage,bit_meters\n";
    os.precision(17);
    for (std::size_t i = 0; i < per_stage.size(); ++i) {
        os << (i + 1) << "," << per_stage[i] << "\n";
    }
}

void BitMeterLedger::dump_trace(std::ostream& os) const {
    os.precision(17);
    for (const auto& e : trace) {
        os << "{\"stage\":" << e.stage << ",\"src\":[" << e.sx << "," << e.sy
           << "],\"dst\":[" << e.dx << "," << e.dy << "],\"bits\":" << e.bits
           << ",\"meters\":" << e.meters << "}\n";
    }
}

} // namespace csenergy
