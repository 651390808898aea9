#ifndef ANONQ_RUNTIME_COMPOSE_H
#define ANONQ_RUNTIME_COMPOSE_H

#include <functional>
#include <string>
#include <vector>

#include "anonq/runtime/program.h"
#include "anonq/runtime/scheduler.h"

namespace anonq::runtime {

/// How a parallel composition derives lane inputs and combines lane outputs.
/// All functions are per party and must not depend on anything but their arguments.
struct LaneFold {
    std::string name;
    std::function<Value(std::size_t lane, const Value &input)> lane_input;
    std::function<Value(const Value &input)> init;
    std::function<Value(const Value &acc, std::size_t lane, const Value &lane_input, const Value &lane_output)> step;
    std::function<Value(const Value &acc)> finish;
};

/// Runs all lanes side by side. Messages are tagged with the lane index; each
/// lane's registers live in their own state factor. Halts when every lane has
/// halted, then folds the lane outputs in lane order.
class Parallel final : public RoundProgram {
   public:
    Parallel(std::vector<ProgramPtr> lanes, LaneFold fold);

    const std::string &key() const override { return key_; }
    std::any start(const PartyContext &ctx, QuantumPort &port) const override;
    void step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
              StepResult &out) const override;
    /// Lanes are independent, so the joint distribution is the product of lane
    /// distributions, folded and merged lane by lane.
    Distribution enumerate(Engine &engine, const std::vector<Value> &inputs) const override;

    const std::vector<ProgramPtr> &lanes() const { return lanes_; }

   private:
    std::vector<ProgramPtr> lanes_;
    LaneFold fold_;
    std::string key_;
};

struct Transition {
    bool done = false;
    /// Final output when done.
    Value output;
    /// Otherwise the next phase and its input.
    ProgramPtr next;
    Value next_input;
    /// Party-local memory carried to the next call of advance().
    Value carry;

    static Transition finish(Value output) {
        Transition t;
        t.done = true;
        t.output = std::move(output);
        return t;
    }
    static Transition then(ProgramPtr next, Value input, Value carry) {
        Transition t;
        t.next = std::move(next);
        t.next_input = std::move(input);
        t.carry = std::move(carry);
        return t;
    }
};

/// Runs phases one after another. advance(carry, nullptr) is called with the
/// party input before round 1; afterwards with the output of the finished phase.
/// A new phase starts in the round after the previous one halted.
class Sequence final : public RoundProgram {
   public:
    using Advance = std::function<Transition(const Value &carry, const Value *last_output)>;

    Sequence(std::string key, Advance advance);

    const std::string &key() const override { return key_; }
    std::any start(const PartyContext &ctx, QuantumPort &port) const override;
    void step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
              StepResult &out) const override;
    Distribution enumerate(Engine &engine, const std::vector<Value> &inputs) const override;

   private:
    std::string key_;
    Advance advance_;
};

/// Draws a local bit equal to 1 with probability p, runs `inner` with that bit
/// as input, and outputs [bit, inner output].
class WithCoin final : public RoundProgram {
   public:
    WithCoin(double p, ProgramPtr inner);

    const std::string &key() const override { return key_; }
    std::any start(const PartyContext &ctx, QuantumPort &port) const override;
    void step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
              StepResult &out) const override;
    Distribution enumerate(Engine &engine, const std::vector<Value> &inputs) const override;

   private:
    double p_;
    ProgramPtr inner_;
    std::string key_;
};

}  // namespace anonq::runtime

#endif
