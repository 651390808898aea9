#include "anonq/runtime/compose.h"

#include <unordered_map>

#include "anonq/common/errors.h"

namespace anonq::runtime {

namespace {

struct ParallelState {
    std::vector<PartyContext> ctxs;
    std::vector<std::any> lanes;
    std::vector<char> halted;
    std::vector<Value> outputs;
    Value input;
    std::size_t running = 0;
};

struct SequenceState {
    Value carry;
    ProgramPtr current;
    std::any sub;
    PartyContext sub_ctx;
    std::uint16_t phase = 0;
    bool finished_at_start = false;
    Value output;
};

struct CoinState {
    bool bit = false;
    PartyContext ctx;
    std::any inner;
};

Inbox strip_lane(const Inbox &inbox, std::uint16_t lane) {
    Inbox out(inbox.size());
    for (std::size_t j = 0; j < inbox.size(); j++) {
        for (const auto &m : inbox[j]) {
            if (!m.lane.empty() && m.lane.back() == lane) {
                Message copy = m;
                copy.lane.pop_back();
                out[j].push_back(std::move(copy));
            }
        }
    }
    return out;
}

void tag_into(Outbox &from, std::uint16_t lane, Outbox &into) {
    for (std::size_t j = 0; j < from.size(); j++) {
        for (auto &m : from[j]) {
            m.lane.push_back(lane);
            into[j].push_back(std::move(m));
        }
    }
}

}  // namespace

Parallel::Parallel(std::vector<ProgramPtr> lanes, LaneFold fold) : lanes_(std::move(lanes)), fold_(std::move(fold)) {
    if (lanes_.size() > 65535) {
        throw CapacityError("too many parallel lanes");
    }
    key_ = "par(" + fold_.name + ")[";
    for (std::size_t k = 0; k < lanes_.size(); k++) {
        key_ += (k ? "," : "") + lanes_[k]->key();
    }
    key_ += "]";
}

std::any Parallel::start(const PartyContext &ctx, QuantumPort &port) const {
    ParallelState s;
    s.input = ctx.input;
    s.halted.assign(lanes_.size(), 0);
    s.outputs.resize(lanes_.size());
    s.running = lanes_.size();
    for (std::size_t k = 0; k < lanes_.size(); k++) {
        PartyContext c = ctx;
        c.input = fold_.lane_input(k, ctx.input);
        port.enter_lane(static_cast<std::uint16_t>(k));
        s.lanes.push_back(lanes_[k]->start(c, port));
        port.leave_lane();
        s.ctxs.push_back(std::move(c));
    }
    return s;
}

void Parallel::step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
                    StepResult &out) const {
    auto &s = *std::any_cast<ParallelState>(&state);
    std::vector<Inbox> routed(lanes_.size(), Inbox(inbox.size()));
    for (std::size_t j = 0; j < inbox.size(); j++) {
        for (const auto &m : inbox[j]) {
            if (m.lane.empty() || m.lane.back() >= lanes_.size()) {
                throw PreconditionError("message without a valid lane tag");
            }
            Message copy = m;
            copy.lane.pop_back();
            routed[m.lane.back()][j].push_back(std::move(copy));
        }
    }
    for (std::size_t k = 0; k < lanes_.size(); k++) {
        if (s.halted[k]) {
            continue;
        }
        StepResult r;
        r.outbox.assign(ctx.d_out, {});
        port.enter_lane(static_cast<std::uint16_t>(k));
        lanes_[k]->step(s.ctxs[k], s.lanes[k], routed[k], port, r);
        port.leave_lane();
        tag_into(r.outbox, static_cast<std::uint16_t>(k), out.outbox);
        if (r.halt) {
            s.halted[k] = 1;
            s.outputs[k] = std::move(r.output);
            s.running--;
        }
    }
    if (s.running == 0) {
        Value acc = fold_.init(s.input);
        for (std::size_t k = 0; k < lanes_.size(); k++) {
            acc = fold_.step(acc, k, s.ctxs[k].input, s.outputs[k]);
        }
        out.halt = true;
        out.output = fold_.finish(acc);
    }
}

Distribution Parallel::enumerate(Engine &engine, const std::vector<Value> &inputs) const {
    std::size_t n = inputs.size();
    struct Partial {
        std::vector<Value> accs;
        Outcome meta;
    };
    std::vector<Partial> states(1);
    for (const auto &x : inputs) {
        states[0].accs.push_back(fold_.init(x));
    }
    states[0].meta.probability = 1.0;
    for (std::size_t k = 0; k < lanes_.size(); k++) {
        std::vector<Value> lane_inputs(n);
        for (std::size_t i = 0; i < n; i++) {
            lane_inputs[i] = fold_.lane_input(k, inputs[i]);
        }
        const Distribution &d = engine.distribution(*lanes_[k], lane_inputs);
        std::vector<Partial> next;
        std::unordered_map<ValueList, std::size_t, ValueListHash> index;
        for (const auto &s : states) {
            for (const auto &o : d.outcomes) {
                std::vector<Value> accs(n);
                for (std::size_t i = 0; i < n; i++) {
                    accs[i] = fold_.step(s.accs[i], k, lane_inputs[i], o.outputs[i]);
                }
                double p = s.meta.probability * o.probability;
                auto [it, fresh] = index.try_emplace(accs, next.size());
                if (fresh) {
                    Partial q;
                    q.accs = std::move(accs);
                    q.meta.probability = p;
                    q.meta.rounds = std::max(s.meta.rounds, o.rounds);
                    q.meta.cbits = s.meta.cbits + o.cbits;
                    q.meta.qubits = s.meta.qubits + o.qubits;
                    q.meta.branches = saturating_mul(s.meta.branches, o.branches);
                    q.meta.replay = s.meta.replay;
                    q.meta.replay.insert(q.meta.replay.end(), o.replay.begin(), o.replay.end());
                    next.push_back(std::move(q));
                } else {
                    auto &q = next[it->second].meta;
                    q.probability += p;
                    q.rounds = std::max({q.rounds, s.meta.rounds, o.rounds});
                    q.cbits = std::max(q.cbits, s.meta.cbits + o.cbits);
                    q.qubits = std::max(q.qubits, s.meta.qubits + o.qubits);
                    q.branches = saturating_add(q.branches, saturating_mul(s.meta.branches, o.branches));
                }
            }
        }
        states = std::move(next);
    }
    std::vector<Outcome> outcomes;
    for (auto &s : states) {
        Outcome o = std::move(s.meta);
        o.outputs.resize(n);
        for (std::size_t i = 0; i < n; i++) {
            o.outputs[i] = fold_.finish(s.accs[i]);
        }
        outcomes.push_back(std::move(o));
    }
    return merge_outcomes(std::move(outcomes));
}

Sequence::Sequence(std::string key, Advance advance) : key_(std::move(key)), advance_(std::move(advance)) {}

std::any Sequence::start(const PartyContext &ctx, QuantumPort &port) const {
    SequenceState s;
    Transition t = advance_(ctx.input, nullptr);
    if (t.done) {
        s.finished_at_start = true;
        s.output = std::move(t.output);
        return s;
    }
    s.carry = std::move(t.carry);
    s.current = std::move(t.next);
    s.sub_ctx = ctx;
    s.sub_ctx.input = std::move(t.next_input);
    port.enter_lane(s.phase);
    s.sub = s.current->start(s.sub_ctx, port);
    port.leave_lane();
    return s;
}

void Sequence::step(const PartyContext &ctx, std::any &state, const Inbox &inbox, QuantumPort &port,
                    StepResult &out) const {
    auto &s = *std::any_cast<SequenceState>(&state);
    if (s.finished_at_start) {
        out.halt = true;
        out.output = s.output;
        return;
    }
    StepResult r;
    r.outbox.assign(ctx.d_out, {});
    port.enter_lane(s.phase);
    s.current->step(s.sub_ctx, s.sub, strip_lane(inbox, s.phase), port, r);
    port.leave_lane();
    tag_into(r.outbox, s.phase, out.outbox);
    if (!r.halt) {
        return;
    }
    Transition t = advance_(s.carry, &r.output);
    if (t.done) {
        out.halt = true;
        out.output = std::move(t.output);
        return;
    }
    s.phase++;
    s.carry = std::move(t.carry);
    s.current = std::move(t.next);
    s.sub_ctx.input = std::move(t.next_input);
    port.enter_lane(s.phase);
    s.sub = s.current->start(s.sub_ctx, port);
    port.leave_lane();
}

Distribution Sequence::enumerate(Engine &engine, const std::vector<Value> &inputs) const {
    std::size_t n = inputs.size();
    std::vector<Outcome> results;
    std::function<void(const std::vector<Transition> &, const Outcome &)> walk = [&](const std::vector<Transition> &ts,
                                                                                      const Outcome &acc) {
        std::size_t done = 0;
        for (const auto &t : ts) {
            done += t.done;
        }
        if (done == n) {
            Outcome o = acc;
            for (const auto &t : ts) {
                o.outputs.push_back(t.output);
            }
            results.push_back(std::move(o));
            return;
        }
        if (done != 0) {
            throw PreconditionError("parties disagree on whether " + key_ + " has finished");
        }
        for (const auto &t : ts) {
            if (t.next->key() != ts[0].next->key()) {
                throw PreconditionError("parties disagree on the next phase of " + key_);
            }
        }
        std::vector<Value> next_inputs(n);
        for (std::size_t i = 0; i < n; i++) {
            next_inputs[i] = ts[i].next_input;
        }
        const Distribution &d = engine.distribution(*ts[0].next, next_inputs);
        for (const auto &o : d.outcomes) {
            std::vector<Transition> next(n);
            for (std::size_t i = 0; i < n; i++) {
                next[i] = advance_(ts[i].carry, &o.outputs[i]);
            }
            Outcome step = acc;
            step.probability *= o.probability;
            step.rounds += o.rounds;
            step.cbits += o.cbits;
            step.qubits += o.qubits;
            step.branches = saturating_mul(step.branches, o.branches);
            step.replay.insert(step.replay.end(), o.replay.begin(), o.replay.end());
            walk(next, step);
        }
    };
    std::vector<Transition> first(n);
    for (std::size_t i = 0; i < n; i++) {
        first[i] = advance_(inputs[i], nullptr);
    }
    Outcome root;
    root.probability = 1.0;
    bool all_done = std::all_of(first.begin(), first.end(), [](const Transition &t) { return t.done; });
    if (all_done) {
        root.rounds = 1;
    }
    walk(first, root);
    return merge_outcomes(std::move(results));
}

WithCoin::WithCoin(double p, ProgramPtr inner) : p_(p), inner_(std::move(inner)) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("coin probability outside [0, 1]");
    }
    key_ = "coin(" + std::to_string(p_) + ")[" + inner_->key() + "]";
}

std::any WithCoin::start(const PartyContext &ctx, QuantumPort &port) const {
    CoinState s;
    s.bit = port.choose({1 - p_, p_}) == 1;
    s.ctx = ctx;
    s.ctx.input = s.bit;
    s.inner = inner_->start(s.ctx, port);
    return s;
}

void WithCoin::step(const PartyContext &, std::any &state, const Inbox &inbox, QuantumPort &port,
                    StepResult &out) const {
    auto &s = *std::any_cast<CoinState>(&state);
    inner_->step(s.ctx, s.inner, inbox, port, out);
    if (out.halt) {
        out.output = ValueList{s.bit, std::move(out.output)};
    }
}

Distribution WithCoin::enumerate(Engine &engine, const std::vector<Value> &inputs) const {
    std::size_t n = inputs.size();
    if (n >= 24) {
        throw CapacityError("coin enumeration over too many parties");
    }
    std::vector<Outcome> outcomes;
    for (std::uint32_t mask = 0; mask < (1u << n); mask++) {
        double p = 1;
        std::vector<Value> bits(n);
        for (std::size_t i = 0; i < n; i++) {
            bool b = mask >> i & 1;
            bits[i] = b;
            p *= b ? p_ : 1 - p_;
        }
        if (p <= qsim::kPruneThreshold) {
            continue;
        }
        const Distribution &d = engine.distribution(*inner_, bits);
        for (const auto &o : d.outcomes) {
            Outcome c = o;
            c.probability *= p;
            for (std::size_t i = 0; i < n; i++) {
                c.outputs[i] = ValueList{bits[i], o.outputs[i]};
            }
            outcomes.push_back(std::move(c));
        }
    }
    return merge_outcomes(std::move(outcomes));
}

}  // namespace anonq::runtime
