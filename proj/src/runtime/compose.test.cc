#include "anonq/runtime/compose.h"

#include <gtest/gtest.h>

#include "anonq/netgraph/fixtures.h"
#include "anonq/runtime/scheduler.h"

using namespace anonq;
using namespace anonq::runtime;

namespace {

// Halts in round `rounds`, outputting a local coin (true with probability p)
// paired with the input.
class DelayedCoin final : public TypedProgram<int> {
   public:
    DelayedCoin(int rounds, double p)
        : TypedProgram("test-delayed-coin(" + std::to_string(rounds) + "," + std::to_string(p) + ")"),
          rounds_(rounds),
          p_(p) {}

   protected:
    int init(const PartyContext &, QuantumPort &) const override { return 0; }
    void round(const PartyContext &ctx, int &r, const Inbox &, QuantumPort &port, StepResult &out) const override {
        broadcast(ctx, out, Value(r));
        if (++r < rounds_) {
            return;
        }
        out.output = ValueList{Value(port.choose({1 - p_, p_}) == 1), ctx.input};
        out.halt = true;
    }

   private:
    int rounds_;
    double p_;
};

LaneFold count_true() {
    LaneFold f;
    f.name = "count-true";
    f.lane_input = [](std::size_t, const Value &input) { return input; };
    f.init = [](const Value &) { return Value(0); };
    f.step = [](const Value &acc, std::size_t, const Value &, const Value &out) {
        return Value(acc.as_int() + (out[0].as_bool() ? 1 : 0));
    };
    f.finish = [](const Value &acc) { return acc; };
    return f;
}

void expect_same(const Distribution &a, const Distribution &b) {
    auto da = output_distribution(a);
    auto db = output_distribution(b);
    ASSERT_EQ(da.size(), db.size());
    for (const auto &[outs, p] : da) {
        ASSERT_TRUE(db.count(outs));
        EXPECT_NEAR(db.at(outs), p, 1e-12);
    }
}

}  // namespace

TEST(Parallel, ComposedDistributionMatchesFlatRun) {
    auto g = netgraph::ring(2);
    Parallel both({std::make_shared<DelayedCoin>(1, 0.5), std::make_shared<DelayedCoin>(3, 0.25)}, count_true());
    Engine engine(g, {2});
    std::vector<Value> x(2);
    const auto &composed = engine.distribution(both, x);
    expect_same(composed, engine.flat_distribution(both, x));
    EXPECT_NEAR(composed.total_probability(), 1, 1e-12);
    auto t = run_sampling(g, both, x, {2}, 4);
    EXPECT_EQ(t.rounds, 3);
}

TEST(Sequence, PhasesRunBackToBack) {
    auto g = netgraph::ring(3);
    auto first = std::make_shared<DelayedCoin>(2, 0.5);
    auto second = std::make_shared<DelayedCoin>(3, 0.5);
    Sequence seq("test-seq", [=](const Value &carry, const Value *last) {
        if (!last) {
            return Transition::then(first, carry, Value(0));
        }
        if (carry.as_int() == 0) {
            return Transition::then(second, Value(7), Value(1));
        }
        return Transition::finish(*last);
    });
    Engine engine(g, {3});
    std::vector<Value> x(3, Value(5));
    expect_same(engine.distribution(seq, x), engine.flat_distribution(seq, x));
    auto leaves = run_branches(g, seq, x, {3});
    EXPECT_EQ(leaves.size(), 64u);
    for (const auto &leaf : leaves) {
        EXPECT_EQ(leaf.transcript.rounds, 5);
        for (const auto &o : leaf.transcript.outputs) {
            EXPECT_EQ(o[1], Value(7));
        }
    }
}

TEST(WithCoin, MarginalOfTheCoin) {
    auto g = netgraph::ring(2);
    WithCoin coin(1.0 / 3.0, std::make_shared<DelayedCoin>(1, 1.0));
    Engine engine(g, {2});
    std::vector<Value> x(2);
    const auto &d = engine.distribution(coin, x);
    expect_same(d, engine.flat_distribution(coin, x));
    double first_true = 0;
    for (const auto &o : d.outcomes) {
        if (o.outputs[0][0].as_bool()) {
            first_true += o.probability;
        }
        EXPECT_EQ(o.outputs[0][1][1], o.outputs[0][0]);
    }
    EXPECT_NEAR(first_true, 1.0 / 3.0, 1e-12);
}
