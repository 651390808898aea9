#include "anonq/runtime/program.h"

#include "anonq/runtime/scheduler.h"

namespace anonq::runtime {

Distribution RoundProgram::enumerate(Engine &engine, const std::vector<Value> &inputs) const {
    return engine.flat_distribution(*this, inputs);
}

void broadcast(const PartyContext &ctx, StepResult &out, const Value &payload) {
    for (int p = 0; p < ctx.d_out; p++) {
        out.outbox[p].push_back(Message{{}, payload, std::nullopt});
    }
}

Outbox empty_outbox(const PartyContext &ctx) {
    return Outbox(ctx.d_out);
}

}  // namespace anonq::runtime
