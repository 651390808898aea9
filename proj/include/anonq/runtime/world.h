#ifndef ANONQ_RUNTIME_WORLD_H
#define ANONQ_RUNTIME_WORLD_H

#include <any>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anonq/netgraph/port_digraph.h"
#include "anonq/runtime/program.h"

namespace anonq::runtime {

struct PartySlot {
    PartyContext ctx;
    std::any state;
    bool halted = false;
    Value output;
    Inbox inbox;
};

/// Complete simulation state of one run (or one branch of it). Quantum
/// registers are kept in independent factors, one per lane key.
class World {
   public:
    World(const netgraph::PortDigraph &g, const std::vector<Value> &inputs, const GlobalInfo &global);

    const netgraph::PortDigraph &graph() const { return *graph_; }
    int n() const { return static_cast<int>(parties.size()); }

    qsim::SparseQuantumState &factor_for_lane(const std::string &lane_key);
    qsim::SparseQuantumState &factor_of(RegisterId r);
    const qsim::SparseQuantumState &factor_of(RegisterId r) const;
    /// Live factors keyed by lane key ("" for the top level, "3/1" for nested lanes).
    std::map<std::string, const qsim::SparseQuantumState *> factors() const;
    std::optional<std::string> lane_key_of(RegisterId r) const;

    std::vector<PartySlot> parties;
    int round = 0;
    std::uint64_t cbits = 0;
    std::uint64_t qubits = 0;
    double probability = 1.0;
    std::vector<std::uint32_t> path;

   private:
    const netgraph::PortDigraph *graph_;
    std::vector<qsim::SparseQuantumState> factors_;
    std::vector<std::string> factor_keys_;
    std::map<std::string, std::uint32_t> factor_by_key_;
};

}  // namespace anonq::runtime

#endif
