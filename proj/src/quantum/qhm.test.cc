#include "anonq/quantum/qhm.h"

#include <gtest/gtest.h>

#include "anonq/common/errors.h"
#include "anonq/netgraph/fixtures.h"
#include "anonq/quantum/algorithms.h"
#include "anonq/runtime/scheduler.h"
#include "anonq/runtime/world.h"

using namespace anonq;
using namespace anonq::quantum;

namespace {

std::vector<Value> bits(std::initializer_list<int> xs) {
    std::vector<Value> out;
    for (int x : xs) {
        out.push_back(Value(x != 0));
    }
    return out;
}

// R registers of active parties in the top-level factor, ordered by owner.
std::vector<qsim::RegisterId> active_r(const qsim::SparseQuantumState &s, const std::vector<Value> &x) {
    std::vector<std::pair<int, qsim::RegisterId>> found;
    for (auto r : s.registers()) {
        const auto &m = s.meta(r);
        if (m.tag == qsim::RegisterTag::R && x.at(m.owner).as_bool()) {
            found.emplace_back(m.owner, r);
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<qsim::RegisterId> out;
    for (auto &[owner, r] : found) {
        out.push_back(r);
    }
    return out;
}

bool is_probe(const Value &v) { return v.is_list() && v[0] == Value("probe"); }

}  // namespace

TEST(Qhm, RejectsBadParameters) {
    EXPECT_THROW(q_hm(3, 2, 4), ValidationError);
    EXPECT_THROW(q_hm(1, 2, 0), ValidationError);
}

TEST(Qhm, TwoActivePartiesAtTheTarget) {
    auto g = netgraph::ring(2);
    auto leaves = runtime::run_branches(g, *q_hm(2, 2, 2), bits({1, 1}), {2});
    double total = 0;
    for (const auto &leaf : leaves) {
        EXPECT_EQ(leaf.transcript.outputs[0], Value(false));
        EXPECT_EQ(leaf.transcript.outputs[1], Value(false));
        EXPECT_EQ(leaf.transcript.rounds, qhm_rounds(2));
        total += leaf.transcript.probability;
    }
    EXPECT_NEAR(total, 1, 1e-9);
}

TEST(Qhm, AtMostOneActiveIsAlwaysTrue) {
    auto g = netgraph::ring(3);
    for (auto [h, m] : qsv_lanes(3)) {
        for (const auto &x : {bits({1, 0, 0}), bits({0, 0, 0})}) {
            for (const auto &leaf : runtime::run_branches(g, *q_hm(h, m, 3), x, {3})) {
                for (const auto &o : leaf.transcript.outputs) {
                    EXPECT_EQ(o, Value(true)) << "h=" << h << " m=" << m;
                }
                EXPECT_EQ(leaf.transcript.rounds, qhm_rounds(3));
            }
        }
    }
}

TEST(Qhm, ConsistencyCheckSplitsEvenly) {
    QhmOptions probe;
    probe.stop = StopAt::AfterConsistency;
    runtime::Engine engine(netgraph::ring(2), {2});
    const auto &d = engine.flat_distribution(*q_hm(2, 2, 2, probe), bits({1, 1}));
    double consistent = 0;
    for (const auto &o : d.outcomes) {
        EXPECT_EQ(is_probe(o.outputs[0]), is_probe(o.outputs[1]));
        if (is_probe(o.outputs[0])) {
            consistent += o.probability;
        }
    }
    EXPECT_NEAR(consistent, 0.5, 1e-9);
}

TEST(Qhm, WrongGuessStillAgrees) {
    QhmOptions with_r;
    with_r.with_outcome = true;
    for (const auto &leaf : runtime::run_branches(netgraph::ring(2), *q_hm(1, 3, 3, with_r), bits({1, 1}), {3})) {
        EXPECT_EQ(leaf.transcript.outputs[0][0], leaf.transcript.outputs[1][0]);
    }
}

TEST(Qhm, ScaledownLeavesGhzOnActiveParties) {
    QhmOptions probe;
    probe.stop = StopAt::AfterScaledown;
    auto g = netgraph::ring(3);
    int probes = 0;
    auto x = bits({1, 1, 0});
    for (const auto &leaf : runtime::run_branches(g, *q_hm(2, 3, 3, probe), x, {3})) {
        if (!is_probe(leaf.transcript.outputs[0])) {
            continue;
        }
        probes++;
        const auto &state = *leaf.world->factors().at("");
        auto regs = active_r(state, x);
        ASSERT_EQ(regs.size(), 2u);
        EXPECT_NEAR(qsim::fidelity(state, qsim::ghz_state(2), regs), 1, 1e-9);
    }
    EXPECT_GT(probes, 0);
}

TEST(Qhm, AfterWNoConstantString) {
    QhmOptions probe;
    probe.stop = StopAt::AfterW;
    auto g = netgraph::ring(3);
    for (int h = 2; h <= 3; h++) {
        auto x = h == 2 ? bits({1, 1, 0}) : bits({1, 1, 1});
        for (const auto &leaf : runtime::run_branches(g, *q_hm(h, 3, 3, probe), x, {3})) {
            if (!is_probe(leaf.transcript.outputs[0])) {
                continue;
            }
            const auto &state = *leaf.world->factors().at("");
            auto regs = active_r(state, x);
            ASSERT_EQ(static_cast<int>(regs.size()), h);
            std::vector<qsim::Basis4> bases(regs.size(), qsim::computational_basis());
            double constant = 0;
            for (const auto &b : state.measure_branches(regs, bases)) {
                bool same = true;
                for (const auto &[r, s] : b.outcomes) {
                    same = same && s == b.outcomes[0].second;
                }
                constant += same ? b.probability : 0;
            }
            EXPECT_LE(constant, 1e-9) << "h=" << h;
        }
    }
}
