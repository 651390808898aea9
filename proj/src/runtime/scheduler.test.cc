#include "anonq/runtime/scheduler.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "anonq/classical/programs.h"
#include "anonq/common/errors.h"
#include "anonq/netgraph/enumerate.h"
#include "anonq/netgraph/fixtures.h"

using namespace anonq;
using namespace anonq::runtime;

namespace {

// Round 1 sends the out-port number on each out-port; round 2 outputs the
// sorted [out-port, in-port] labels of incoming edges.
class Echo final : public TypedProgram<int> {
   public:
    Echo() : TypedProgram("test-echo") {}

   protected:
    int init(const PartyContext &, QuantumPort &) const override { return 0; }
    void round(const PartyContext &ctx, int &r, const Inbox &inbox, QuantumPort &, StepResult &out) const override {
        if (r++ == 0) {
            for (int p = 0; p < ctx.d_out; p++) {
                out.outbox[p].push_back(Message{{}, Value(p + 1), std::nullopt});
            }
            return;
        }
        ValueList labels;
        for (int q = 0; q < ctx.d_in; q++) {
            for (const auto &m : inbox[q]) {
                labels.push_back(ValueList{m.payload, Value(q + 1)});
            }
        }
        std::sort(labels.begin(), labels.end());
        out.halt = true;
        out.output = Value(labels);
    }
};

// Outputs a local coin that is true with probability 3/4.
class Coin final : public TypedProgram<int> {
   public:
    Coin() : TypedProgram("test-coin") {}

   protected:
    int init(const PartyContext &, QuantumPort &) const override { return 0; }
    void round(const PartyContext &, int &, const Inbox &, QuantumPort &port, StepResult &out) const override {
        out.output = Value(port.choose({0.25, 0.75}) == 1);
        out.halt = true;
    }
};

// Prepares 1^ or 0^ from the input, ships the register on port 1, and outputs
// the measured symbol of the register it receives.
class PassRegister final : public TypedProgram<int> {
   public:
    explicit PassRegister(bool touch_after_send = false)
        : TypedProgram(touch_after_send ? "test-pass-bad" : "test-pass"), touch_(touch_after_send) {}

   protected:
    int init(const PartyContext &, QuantumPort &) const override { return 0; }
    void round(const PartyContext &ctx, int &r, const Inbox &inbox, QuantumPort &port, StepResult &out) const override {
        if (r++ == 0) {
            auto sym = ctx.input.as_bool() ? qsim::Symbol::OneHat : qsim::Symbol::ZeroHat;
            sent_ = port.allocate(qsim::RegisterTag::R, sym);
            out.outbox[0].push_back(Message{{}, Value(), sent_});
            return;
        }
        if (touch_) {
            port.apply_unitary(sent_, qsim::low_bit_hadamard());
        }
        auto reg = *inbox[0].at(0).reg;
        out.output = Value(qsim::index(port.measure(reg, qsim::computational_basis())));
        out.halt = true;
    }

   private:
    bool touch_;
    // Only read by the deliberately broken variant, which runs one party at a time.
    mutable qsim::RegisterId sent_;
};

// Broken test double: numbers parties by the order in which they start.
class ReadsIndex final : public TypedProgram<int> {
   public:
    ReadsIndex() : TypedProgram("test-reads-index") {}

   protected:
    int init(const PartyContext &, QuantumPort &) const override {
        static int counter = 0;
        return counter++;
    }
    void round(const PartyContext &, int &id, const Inbox &, QuantumPort &, StepResult &out) const override {
        out.output = Value(id);
        out.halt = true;
    }
};

class Forever final : public TypedProgram<int> {
   public:
    Forever() : TypedProgram("test-forever") {}

   protected:
    int init(const PartyContext &, QuantumPort &) const override { return 0; }
    void round(const PartyContext &, int &, const Inbox &, QuantumPort &, StepResult &) const override {}
};

std::vector<Value> bools(std::initializer_list<int> xs) {
    std::vector<Value> out;
    for (int x : xs) {
        out.push_back(Value(x != 0));
    }
    return out;
}

}  // namespace

TEST(Scheduler, EchoRevealsIncidentEdgeLabelsAfterOneExchange) {
    auto g = netgraph::example1a();
    Echo echo;
    auto t = run_sampling(g, echo, std::vector<Value>(4), {4}, 1);
    EXPECT_EQ(t.rounds, 2);
    for (int v = 0; v < 4; v++) {
        ValueList expect;
        for (const auto &e : g.edges()) {
            if (e.dst == v) {
                expect.push_back(ValueList{Value(e.out_port), Value(e.in_port)});
            }
        }
        std::sort(expect.begin(), expect.end());
        EXPECT_EQ(t.outputs[v], Value(expect)) << "party " << v;
    }
}

TEST(Scheduler, AllZeroInputsGiveTrueUnderT0) {
    auto g = netgraph::ring(3);
    auto t = run_sampling(g, *classical::compute_t0(3), bools({0, 0, 0}), {3}, 0);
    EXPECT_LE(t.rounds, 4);
    for (const auto &o : t.outputs) {
        EXPECT_EQ(o, Value(true));
    }
}

TEST(Scheduler, BranchProbabilitiesAreExact) {
    auto g = netgraph::ring(3);
    Coin coin;
    auto leaves = run_branches(g, coin, std::vector<Value>(3), {3});
    ASSERT_EQ(leaves.size(), 8u);
    double total = 0;
    for (const auto &leaf : leaves) {
        int trues = 0;
        for (const auto &o : leaf.transcript.outputs) {
            trues += o.as_bool();
        }
        EXPECT_NEAR(leaf.transcript.probability, std::pow(0.75, trues) * std::pow(0.25, 3 - trues), 1e-12);
        total += leaf.transcript.probability;
    }
    EXPECT_NEAR(total, 1, 1e-12);
}

TEST(Scheduler, SamplingAgreesWithBranchesWithinFiveSigma) {
    auto g = netgraph::ring(3);
    Coin coin;
    const int trials = 10000;
    int all_true = 0;
    for (int s = 0; s < trials; s++) {
        auto t = run_sampling(g, coin, std::vector<Value>(3), {3}, s);
        all_true += t.outputs[0].as_bool() && t.outputs[1].as_bool() && t.outputs[2].as_bool();
    }
    double p = 27.0 / 64.0;
    double sigma = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(all_true) / trials, p, 5 * sigma);
}

TEST(Scheduler, SamplingIsReproducible) {
    auto g = netgraph::ring(4);
    Coin coin;
    auto a = run_sampling(g, coin, std::vector<Value>(4), {4}, 99);
    auto b = run_sampling(g, coin, std::vector<Value>(4), {4}, 99);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Scheduler, RegistersMoveWithMessages) {
    auto g = netgraph::ring(3);
    PassRegister pass;
    auto x = bools({1, 0, 0});
    auto leaves = run_branches(g, pass, x, {3});
    ASSERT_EQ(leaves.size(), 1u);
    const auto &t = leaves[0].transcript;
    EXPECT_EQ(t.outputs[1], Value(1));
    EXPECT_EQ(t.outputs[2], Value(0));
    EXPECT_EQ(t.outputs[0], Value(0));
    EXPECT_GT(t.qubits, 0u);
}

TEST(Scheduler, SenderLosesTheRegister) {
    auto g = netgraph::ring(2);
    PassRegister bad(true);
    EXPECT_THROW(run_sampling(g, bad, bools({1, 0}), {2}, 0), PreconditionError);
}

TEST(Scheduler, NonTermination) {
    Forever forever;
    RunOptions options;
    options.max_rounds = 5;
    EXPECT_THROW(run_sampling(netgraph::ring(2), forever, std::vector<Value>(2), {2}, 0, options),
                 NonTerminationError);
    EXPECT_THROW(run_branches(netgraph::ring(2), forever, std::vector<Value>(2), {2}, options), NonTerminationError);
}

TEST(Scheduler, PartyOrderDoesNotChangeDistributions) {
    auto g = netgraph::example1b();
    Coin coin;
    RunOptions reversed;
    reversed.reverse_party_order = true;
    Engine a(g, {4}), b(g, {4}, reversed);
    auto x = std::vector<Value>(4);
    auto da = output_distribution(a.flat_distribution(coin, x));
    auto db = output_distribution(b.flat_distribution(coin, x));
    ASSERT_EQ(da.size(), db.size());
    for (const auto &[outs, p] : da) {
        EXPECT_NEAR(db.at(outs), p, 1e-12);
    }
}

TEST(Scheduler, ReplayFollowsThePath) {
    auto g = netgraph::ring(3);
    Coin coin;
    for (const auto &leaf : run_branches(g, coin, std::vector<Value>(3), {3})) {
        auto again = replay(g, coin, std::vector<Value>(3), {3}, leaf.transcript.path);
        EXPECT_EQ(again.transcript.outputs, leaf.transcript.outputs);
        EXPECT_NEAR(again.transcript.probability, leaf.transcript.probability, 1e-12);
    }
}

TEST(Anonymity, RingRotation) {
    Coin coin;
    EXPECT_TRUE(assert_anonymity(coin, netgraph::ring(4), std::vector<Value>(4), {1, 2, 3, 0}, {4}));
    EXPECT_TRUE(assert_anonymity(*classical::compute_t0(4), netgraph::ring(4), bools({1, 1, 1, 1}), {1, 2, 3, 0}, {4}));
}

TEST(Anonymity, SymmetricExampleGraph) {
    auto g = netgraph::example1b();
    std::vector<int> perm{0, 1, 2, 3};
    int found = 0;
    while (std::next_permutation(perm.begin(), perm.end())) {
        if (!netgraph::is_port_automorphism(g, perm)) {
            continue;
        }
        found++;
        EXPECT_TRUE(assert_anonymity(*classical::compute_t0(4), g, bools({1, 0, 0, 0}), perm, {4}));
        EXPECT_TRUE(assert_anonymity(*classical::edge_labels(), g, std::vector<Value>(4), perm, {4}));
    }
    EXPECT_GT(found, 0);
}

TEST(Anonymity, BrokenDoubleIsCaught) {
    ReadsIndex broken;
    EXPECT_FALSE(assert_anonymity(broken, netgraph::ring(4), std::vector<Value>(4), {1, 2, 3, 0}, {4}));
}

TEST(Anonymity, RejectsNonAutomorphism) {
    Coin coin;
    EXPECT_THROW(assert_anonymity(coin, netgraph::ring(3), std::vector<Value>(3), {1, 0, 2}, {3}), ValidationError);
}
