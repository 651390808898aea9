#ifndef ANONQ_RUNTIME_PROGRAM_H
#define ANONQ_RUNTIME_PROGRAM_H

#include <any>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anonq/common/value.h"
#include "anonq/qsim/sparse_state.h"

namespace anonq::runtime {

using qsim::RegisterId;

/// `lane` is innermost-first: each enclosing parallel composition appends its index.
struct Message {
    std::vector<std::uint16_t> lane;
    Value payload;
    std::optional<RegisterId> reg;
};
using PortMessages = std::vector<Message>;
/// Indexed by port - 1.
using Inbox = std::vector<PortMessages>;
using Outbox = std::vector<PortMessages>;

struct GlobalInfo {
    int N = 0;
};

/// Everything a party may look at. No index, no graph.
struct PartyContext {
    int d_in = 0;
    int d_out = 0;
    Value input;
    GlobalInfo global;
};

/// Quantum operations and local randomness available to one party. Every call
/// is checked against the party's ownership of the registers.
class QuantumPort {
   public:
    virtual ~QuantumPort() = default;
    virtual RegisterId allocate(qsim::RegisterTag tag, qsim::Symbol s, int slot = 0) = 0;
    virtual void apply_unitary(RegisterId r, const qsim::Matrix4 &u) = 0;
    virtual void apply_map(const std::vector<RegisterId> &regs, const qsim::ReversibleMap &f) = 0;
    virtual qsim::Symbol measure(RegisterId r, const qsim::Basis4 &basis) = 0;
    virtual int measure_minus_parity(const std::vector<RegisterId> &regs) = 0;
    virtual void discard(const std::vector<RegisterId> &regs) = 0;
    /// Local coin with the given outcome probabilities.
    virtual std::size_t choose(const std::vector<double> &probabilities) = 0;
    /// Used by composition: registers allocated inside a lane live in that lane's state.
    virtual void enter_lane(std::uint16_t lane) = 0;
    virtual void leave_lane() = 0;
};

struct StepResult {
    Outbox outbox;
    bool halt = false;
    Value output;
};

class Engine;
struct Distribution;

/// Per-round behavior shared by every party. Implementations hold no mutable
/// state; everything per party lives in the std::any returned by start().
class RoundProgram {
   public:
    virtual ~RoundProgram() = default;
    /// Identifies the program and its parameters; used as a cache key.
    virtual const std::string &key() const = 0;
    /// Local state before round 1. May use local randomness and allocate registers.
    virtual std::any start(const PartyContext &ctx, QuantumPort &port) const = 0;
    /// One synchronous round: the inbox holds what was sent in the previous round.
    virtual void step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
                      StepResult &out) const = 0;
    /// Exact outcome distribution. The default forks the whole run at every
    /// random event; composite programs override this to combine sub-distributions.
    virtual Distribution enumerate(Engine &engine, const std::vector<Value> &inputs) const;
};

using ProgramPtr = std::shared_ptr<const RoundProgram>;

/// Typed convenience base.
template <typename State>
class TypedProgram : public RoundProgram {
   public:
    explicit TypedProgram(std::string key) : key_(std::move(key)) {}
    const std::string &key() const override { return key_; }

    std::any start(const PartyContext &ctx, QuantumPort &port) const final { return init(ctx, port); }
    void step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
              StepResult &out) const final {
        round(ctx, *std::any_cast<State>(&state), inbox, port, out);
    }

   protected:
    virtual State init(const PartyContext &ctx, QuantumPort &port) const = 0;
    virtual void round(const PartyContext &ctx, State &s, const Inbox &inbox, QuantumPort &port,
                       StepResult &out) const = 0;

   private:
    std::string key_;
};

/// Sends `payload` on every out-port.
void broadcast(const PartyContext &ctx, StepResult &out, const Value &payload);
Outbox empty_outbox(const PartyContext &ctx);

}  // namespace anonq::runtime

#endif
