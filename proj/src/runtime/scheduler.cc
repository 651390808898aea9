#include "anonq/runtime/scheduler.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "anonq/common/errors.h"

namespace anonq::runtime {

int effective_max_rounds(const RunOptions &options, const GlobalInfo &global) {
    return options.max_rounds > 0 ? options.max_rounds : 20 * global.N + 50;
}

nlohmann::json Transcript::to_json() const {
    nlohmann::json outs = nlohmann::json::array();
    for (const auto &v : outputs) {
        outs.push_back(v.to_json());
    }
    return {{"rounds", rounds}, {"cbits", cbits}, {"qubits", qubits}, {"outputs", outs}, {"probability", probability}};
}

namespace {

class PartyPort final : public QuantumPort {
   public:
    PartyPort(World &world, int party, qsim::ChoiceSource &choice) : world_(world), party_(party), choice_(choice) {}

    RegisterId allocate(qsim::RegisterTag tag, qsim::Symbol s, int slot) override {
        qsim::RegisterMeta meta;
        meta.owner = party_;
        meta.tag = tag;
        meta.epoch = world_.round;
        meta.slot = slot;
        return world_.factor_for_lane(lane_key()).init_register(meta, s);
    }
    void apply_unitary(RegisterId r, const qsim::Matrix4 &u) override { owned(r).apply_unitary(r, u); }
    void apply_map(const std::vector<RegisterId> &regs, const qsim::ReversibleMap &f) override {
        same_factor(regs).apply_map(regs, f);
    }
    qsim::Symbol measure(RegisterId r, const qsim::Basis4 &basis) override {
        return owned(r).measure(r, basis, choice_);
    }
    int measure_minus_parity(const std::vector<RegisterId> &regs) override {
        if (regs.empty()) {
            return 0;
        }
        return same_factor(regs).measure_minus_parity(regs, choice_);
    }
    void discard(const std::vector<RegisterId> &regs) override {
        if (!regs.empty()) {
            same_factor(regs).discard(regs);
        }
    }
    std::size_t choose(const std::vector<double> &probabilities) override { return choice_.choose(probabilities); }
    void enter_lane(std::uint16_t lane) override { lanes_.push_back(lane); }
    void leave_lane() override { lanes_.pop_back(); }

   private:
    std::string lane_key() const {
        std::string key;
        for (std::size_t k = 0; k < lanes_.size(); k++) {
            if (k) {
                key += '/';
            }
            key += std::to_string(lanes_[k]);
        }
        return key;
    }
    qsim::SparseQuantumState &owned(RegisterId r) {
        auto &f = world_.factor_of(r);
        if (f.meta(r).owner != party_) {
            throw PreconditionError("party touched a register it does not own");
        }
        return f;
    }
    qsim::SparseQuantumState &same_factor(const std::vector<RegisterId> &regs) {
        auto &f = owned(regs.front());
        for (auto r : regs) {
            if (&owned(r) != &f) {
                throw PreconditionError("registers of one operation live in different lanes");
            }
        }
        return f;
    }

    World &world_;
    int party_;
    qsim::ChoiceSource &choice_;
    std::vector<std::uint16_t> lanes_;
};

std::vector<int> party_order(int n, const RunOptions &options) {
    std::vector<int> order(n);
    for (int p = 0; p < n; p++) {
        order[p] = options.reverse_party_order ? n - 1 - p : p;
    }
    return order;
}

using ChoiceFor = std::function<qsim::ChoiceSource &(int)>;

void start_parties(World &w, const RoundProgram &program, const ChoiceFor &choice, const std::vector<int> &order) {
    for (int p : order) {
        PartyPort port(w, p, choice(p));
        w.parties[p].state = program.start(w.parties[p].ctx, port);
    }
}

/// Returns true once every party has halted.
bool execute_round(World &w, const RoundProgram &program, const ChoiceFor &choice, const std::vector<int> &order) {
    w.round++;
    const auto &g = w.graph();
    std::vector<Outbox> outs(w.n());
    for (int p : order) {
        auto &slot = w.parties[p];
        if (slot.halted) {
            continue;
        }
        StepResult res;
        res.outbox.assign(slot.ctx.d_out, {});
        PartyPort port(w, p, choice(p));
        program.step(slot.ctx, slot.state, slot.inbox, port, res);
        if (res.halt) {
            slot.halted = true;
            slot.output = std::move(res.output);
        }
        outs[p] = std::move(res.outbox);
    }
    for (auto &slot : w.parties) {
        for (auto &msgs : slot.inbox) {
            msgs.clear();
        }
    }
    for (int p = 0; p < w.n(); p++) {
        if (static_cast<int>(outs[p].size()) > g.d_out(p)) {
            throw PreconditionError("outbox larger than the number of out-ports");
        }
        for (int j = 0; j < static_cast<int>(outs[p].size()); j++) {
            if (outs[p][j].empty()) {
                continue;
            }
            const auto &e = g.edges()[g.out_edge(p, j + 1)];
            auto &dst = w.parties[e.dst];
            for (auto &msg : outs[p][j]) {
                w.cbits += msg.payload.bit_size();
                if (msg.reg) {
                    auto &f = w.factor_of(*msg.reg);
                    if (f.meta(*msg.reg).owner != p) {
                        throw PreconditionError("party sent a register it does not own");
                    }
                    f.set_owner(*msg.reg, dst.halted ? -1 : e.dst);
                    w.qubits += 2;
                }
                if (!dst.halted) {
                    dst.inbox[e.in_port - 1].push_back(std::move(msg));
                }
            }
        }
    }
    return std::all_of(w.parties.begin(), w.parties.end(), [](const PartySlot &s) { return s.halted; });
}

Transcript transcript_of(const World &w) {
    Transcript t;
    t.rounds = w.round;
    t.cbits = w.cbits;
    t.qubits = w.qubits;
    t.probability = w.probability;
    t.path = w.path;
    for (const auto &slot : w.parties) {
        t.outputs.push_back(slot.output);
    }
    return t;
}

/// Follows a prescribed prefix of choices and extends it with the first viable
/// option; records the options it could have taken for backtracking.
class ScriptedChoice final : public qsim::ChoiceSource {
   public:
    explicit ScriptedChoice(std::vector<std::uint32_t> script) : script_(std::move(script)) {}

    std::size_t choose(const std::vector<double> &probabilities) override {
        std::vector<std::uint32_t> viable;
        double total = 0;
        for (std::size_t k = 0; k < probabilities.size(); k++) {
            if (probabilities[k] > qsim::kPruneThreshold) {
                viable.push_back(static_cast<std::uint32_t>(k));
                total += probabilities[k];
            }
        }
        if (viable.empty()) {
            throw ValidationError("random event without a possible outcome");
        }
        std::uint32_t pick = pos_ < script_.size() ? script_[pos_] : viable.front();
        auto it = std::find(viable.begin(), viable.end(), pick);
        if (it == viable.end()) {
            throw PreconditionError("replay path names an impossible outcome");
        }
        taken_.push_back(pick);
        rank_.push_back(static_cast<std::size_t>(it - viable.begin()));
        viable_.push_back(std::move(viable));
        probability_ *= probabilities[pick] / total;
        pos_++;
        return pick;
    }

    const std::vector<std::uint32_t> &taken() const { return taken_; }
    double probability() const { return probability_; }

    /// Script for the next sibling in depth-first order, or nullopt when exhausted.
    std::optional<std::vector<std::uint32_t>> next_script() const {
        for (std::size_t k = taken_.size(); k-- > 0;) {
            if (rank_[k] + 1 < viable_[k].size()) {
                std::vector<std::uint32_t> s(taken_.begin(), taken_.begin() + k);
                s.push_back(viable_[k][rank_[k] + 1]);
                return s;
            }
        }
        return std::nullopt;
    }

   private:
    std::vector<std::uint32_t> script_;
    std::size_t pos_ = 0;
    std::vector<std::uint32_t> taken_;
    std::vector<std::size_t> rank_;
    std::vector<std::vector<std::uint32_t>> viable_;
    double probability_ = 1.0;
};

/// Runs `phase` on copies of `base` once per combination of random outcomes.
template <typename Phase>
void fork_phase(const World &base, const Phase &phase, std::vector<World> &out, std::size_t cap) {
    std::vector<std::uint32_t> script;
    while (true) {
        World w = base;
        ScriptedChoice sc(script);
        phase(w, sc);
        w.probability *= sc.probability();
        w.path.insert(w.path.end(), sc.taken().begin(), sc.taken().end());
        out.push_back(std::move(w));
        if (out.size() > cap) {
            throw CapacityError("branch enumeration exceeded cap " + std::to_string(cap));
        }
        auto next = sc.next_script();
        if (!next) {
            return;
        }
        script = std::move(*next);
    }
}

}  // namespace

namespace {

// Party-local stream seeded from (seed, party) on first use; most programs never draw.
class SeededChoice final : public qsim::ChoiceSource {
   public:
    SeededChoice(std::uint64_t seed, int party) : seed_(seed), party_(party) {}
    std::size_t choose(const std::vector<double> &probabilities) override {
        if (!rng_) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                              static_cast<std::uint32_t>(party_)};
            rng_.emplace(seq);
        }
        return qsim::RandomChoice(*rng_).choose(probabilities);
    }

   private:
    std::uint64_t seed_;
    int party_;
    std::optional<std::mt19937_64> rng_;
};

}  // namespace

Transcript run_sampling(const netgraph::PortDigraph &g, const RoundProgram &program, const std::vector<Value> &inputs,
                        const GlobalInfo &global, std::uint64_t seed, const RunOptions &options) {
    World w(g, inputs, global);
    std::vector<std::unique_ptr<SeededChoice>> choices;
    for (int p = 0; p < g.n(); p++) {
        choices.push_back(std::make_unique<SeededChoice>(seed, p));
    }
    ChoiceFor choice = [&](int p) -> qsim::ChoiceSource & { return *choices[p]; };
    auto order = party_order(g.n(), options);
    int max_rounds = effective_max_rounds(options, global);
    start_parties(w, program, choice, order);
    while (!execute_round(w, program, choice, order)) {
        if (w.round >= max_rounds) {
            throw NonTerminationError("program did not halt within " + std::to_string(max_rounds) + " rounds");
        }
    }
    return transcript_of(w);
}

std::vector<Leaf> run_branches(const netgraph::PortDigraph &g, const RoundProgram &program,
                               const std::vector<Value> &inputs, const GlobalInfo &global,
                               const RunOptions &options) {
    auto order = party_order(g.n(), options);
    int max_rounds = effective_max_rounds(options, global);
    std::vector<World> frontier;
    fork_phase(
        World(g, inputs, global),
        [&](World &w, qsim::ChoiceSource &sc) {
            start_parties(w, program, [&](int) -> qsim::ChoiceSource & { return sc; }, order);
        },
        frontier, options.branch_cap);
    std::vector<Leaf> leaves;
    while (!frontier.empty()) {
        std::vector<World> next;
        for (const auto &w : frontier) {
            std::vector<World> children;
            fork_phase(
                w,
                [&](World &child, qsim::ChoiceSource &sc) {
                    execute_round(child, program, [&](int) -> qsim::ChoiceSource & { return sc; }, order);
                },
                children, options.branch_cap);
            for (auto &child : children) {
                bool halted = std::all_of(child.parties.begin(), child.parties.end(),
                                          [](const PartySlot &s) { return s.halted; });
                if (halted) {
                    auto world = std::make_shared<World>(std::move(child));
                    leaves.push_back({transcript_of(*world), world});
                } else {
                    if (child.round >= max_rounds) {
                        throw NonTerminationError("program did not halt within " + std::to_string(max_rounds) +
                                                  " rounds");
                    }
                    next.push_back(std::move(child));
                }
            }
            if (next.size() + leaves.size() > options.branch_cap) {
                throw CapacityError("branch enumeration exceeded cap " + std::to_string(options.branch_cap));
            }
        }
        frontier = std::move(next);
    }
    return leaves;
}

Leaf replay(const netgraph::PortDigraph &g, const RoundProgram &program, const std::vector<Value> &inputs,
            const GlobalInfo &global, const std::vector<std::uint32_t> &path, const RunOptions &options) {
    auto order = party_order(g.n(), options);
    int max_rounds = effective_max_rounds(options, global);
    auto w = std::make_shared<World>(g, inputs, global);
    ScriptedChoice sc(path);
    ChoiceFor choice = [&](int) -> qsim::ChoiceSource & { return sc; };
    start_parties(*w, program, choice, order);
    while (!execute_round(*w, program, choice, order)) {
        if (w->round >= max_rounds) {
            throw NonTerminationError("program did not halt within " + std::to_string(max_rounds) + " rounds");
        }
    }
    w->probability = sc.probability();
    w->path = sc.taken();
    return {transcript_of(*w), w};
}

double Distribution::total_probability() const {
    double total = 0;
    for (const auto &o : outcomes) {
        total += o.probability;
    }
    return total;
}

std::uint64_t Distribution::branch_count() const {
    std::uint64_t total = 0;
    for (const auto &o : outcomes) {
        total = saturating_add(total, o.branches);
    }
    return total;
}

nlohmann::json Distribution::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &o : outcomes) {
        nlohmann::json outs = nlohmann::json::array();
        for (const auto &v : o.outputs) {
            outs.push_back(v.to_json());
        }
        arr.push_back({{"rounds", o.rounds},
                       {"cbits", o.cbits},
                       {"qubits", o.qubits},
                       {"outputs", outs},
                       {"probability", o.probability}});
    }
    return arr;
}

Distribution merge_outcomes(std::vector<Outcome> outcomes) {
    Distribution d;
    std::unordered_map<ValueList, std::size_t, ValueListHash> index;
    for (auto &o : outcomes) {
        auto [it, fresh] = index.try_emplace(o.outputs, d.outcomes.size());
        if (fresh) {
            d.outcomes.push_back(std::move(o));
            continue;
        }
        auto &into = d.outcomes[it->second];
        into.probability += o.probability;
        into.rounds = std::max(into.rounds, o.rounds);
        into.cbits = std::max(into.cbits, o.cbits);
        into.qubits = std::max(into.qubits, o.qubits);
        into.branches = saturating_add(into.branches, o.branches);
    }
    return d;
}

Engine::Engine(const netgraph::PortDigraph &g, GlobalInfo global, RunOptions options)
    : g_(g), global_(global), options_(options) {}

std::string Engine::call_key(const std::string &program_key, const std::vector<Value> &inputs) {
    return program_key + '#' + Value(ValueList(inputs)).str();
}

const Engine::Call *Engine::find_call(const std::string &key) const {
    auto it = calls_.find(key);
    return it == calls_.end() ? nullptr : &it->second;
}

const Distribution &Engine::distribution(const RoundProgram &program, const std::vector<Value> &inputs) {
    std::string key = call_key(program.key(), inputs);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
        return it->second;
    }
    Distribution d = program.enumerate(*this, inputs);
    calls_.emplace(key, Call{&program, inputs});
    return cache_.emplace(std::move(key), std::move(d)).first->second;
}

Distribution Engine::flat_distribution(const RoundProgram &program, const std::vector<Value> &inputs) {
    auto leaves = run_branches(g_, program, inputs, global_, options_);
    std::vector<Outcome> outcomes;
    outcomes.reserve(leaves.size());
    for (auto &leaf : leaves) {
        Outcome o;
        o.outputs = std::move(leaf.transcript.outputs);
        o.probability = leaf.transcript.probability;
        o.rounds = leaf.transcript.rounds;
        o.cbits = leaf.transcript.cbits;
        o.qubits = leaf.transcript.qubits;
        o.replay.push_back({program.key(), inputs, std::move(leaf.transcript.path)});
        outcomes.push_back(std::move(o));
    }
    return merge_outcomes(std::move(outcomes));
}

std::map<std::vector<Value>, double> output_distribution(const Distribution &d) {
    std::map<std::vector<Value>, double> out;
    for (const auto &o : d.outcomes) {
        out[o.outputs] += o.probability;
    }
    return out;
}

bool assert_anonymity(const RoundProgram &program, const netgraph::PortDigraph &g, const std::vector<Value> &inputs,
                      const std::vector<int> &automorphism, const GlobalInfo &global, const RunOptions &options) {
    if (!netgraph::is_port_automorphism(g, automorphism)) {
        throw ValidationError("permutation is not a port-preserving automorphism");
    }
    int n = g.n();
    std::vector<Value> moved(n);
    for (int v = 0; v < n; v++) {
        moved[automorphism[v]] = inputs[v];
    }
    Engine a(g, global, options), b(g, global, options);
    auto base = output_distribution(a.flat_distribution(program, inputs));
    auto other = output_distribution(b.flat_distribution(program, moved));
    std::map<std::vector<Value>, double> relabeled;
    for (const auto &[outs, p] : base) {
        std::vector<Value> r(n);
        for (int v = 0; v < n; v++) {
            r[automorphism[v]] = outs[v];
        }
        relabeled[r] += p;
    }
    if (relabeled.size() != other.size()) {
        return false;
    }
    for (const auto &[outs, p] : relabeled) {
        auto it = other.find(outs);
        if (it == other.end() || std::abs(it->second - p) > qsim::kZeroTolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace anonq::runtime
