#include "anonq/runtime/world.h"

#include "anonq/common/errors.h"

namespace anonq::runtime {

World::World(const netgraph::PortDigraph &g, const std::vector<Value> &inputs, const GlobalInfo &global)
    : graph_(&g) {
    if (static_cast<int>(inputs.size()) != g.n()) {
        throw PreconditionError("need one input per party");
    }
    parties.resize(g.n());
    for (int v = 0; v < g.n(); v++) {
        auto &slot = parties[v];
        slot.ctx.d_in = g.d_in(v);
        slot.ctx.d_out = g.d_out(v);
        slot.ctx.input = inputs[v];
        slot.ctx.global = global;
        slot.inbox.assign(g.d_in(v), {});
    }
}

qsim::SparseQuantumState &World::factor_for_lane(const std::string &lane_key) {
    auto it = factor_by_key_.find(lane_key);
    if (it != factor_by_key_.end()) {
        return factors_[it->second];
    }
    auto space = static_cast<std::uint32_t>(factors_.size());
    factors_.emplace_back(space);
    factor_keys_.push_back(lane_key);
    factor_by_key_[lane_key] = space;
    return factors_.back();
}

qsim::SparseQuantumState &World::factor_of(RegisterId r) {
    if (!r.valid() || r.space() >= factors_.size()) {
        throw LookupError("unknown register");
    }
    return factors_[r.space()];
}

const qsim::SparseQuantumState &World::factor_of(RegisterId r) const {
    if (!r.valid() || r.space() >= factors_.size()) {
        throw LookupError("unknown register");
    }
    return factors_[r.space()];
}

std::map<std::string, const qsim::SparseQuantumState *> World::factors() const {
    std::map<std::string, const qsim::SparseQuantumState *> out;
    for (std::size_t k = 0; k < factors_.size(); k++) {
        out[factor_keys_[k]] = &factors_[k];
    }
    return out;
}

std::optional<std::string> World::lane_key_of(RegisterId r) const {
    if (!r.valid() || r.space() >= factors_.size()) {
        return std::nullopt;
    }
    return factor_keys_[r.space()];
}

}  // namespace anonq::runtime
