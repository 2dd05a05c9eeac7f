#ifndef CSENERGY_LEDGER_HPP
#define CSENERGY_LEDGER_HPP

#include "csenergy/layout.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace csenergy {

// Accumulated bits x meters, broken down by stage. Each unordered pair of
// endpoints is metered once per transmission.
struct BitMeterLedger {
    double total = 0.0;
    std::vector<double> per_stage;  // index 0 = stage 1
    bool trace_enabled = false;
    struct Event {
        std::uint32_t stage;
        double sx, sy, dx, dy;
        std::uint64_t bits;
        double meters;
    };
    std::vector<Event> trace;

    double stage_total(std::size_t stage) const {
        return stage <= per_stage.size() ? per_stage[stage - 1] : 0.0;
    }
    void dump_csv(std::ostream& os) const;    // stage, bit_meters
    void dump_trace(std::ostream& os) const;  // JSON lines
};

void record_transmission(BitMeterLedger& ledger, const Point& src, const Point& dst,
                         std::uint64_t bits, std::size_t stage);

// Node-id flavour: src/dst name input (row) and output (column) nodes.
enum class NodeKind { Input, Output };
struct NodeRef {
    NodeKind kind;
    std::size_t id;
};

void route_and_meter(BitMeterLedger& ledger, NodeRef src, NodeRef dst,
                     std::uint64_t bits, std::size_t stage, const CircuitLayout& layout);

} // namespace csenergy

#endif
