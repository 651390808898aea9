#include "anonq/classical/programs.h"

#include <gtest/gtest.h>

#include <set>

#include "anonq/classical/view_tree.h"
#include "anonq/netgraph/enumerate.h"
#include "anonq/netgraph/fixtures.h"
#include "anonq/runtime/scheduler.h"

using namespace anonq;
using namespace anonq::classical;

namespace {

std::vector<Value> run_once(const netgraph::PortDigraph &g, const runtime::RoundProgram &p,
                            const std::vector<Value> &inputs, int N = 0) {
    return runtime::run_sampling(g, p, inputs, {N ? N : g.n()}, 0).outputs;
}

void expect_all(const std::vector<Value> &outs, const Value &v) {
    for (const auto &o : outs) {
        EXPECT_EQ(o, v);
    }
}

Value active(bool a, Value color) { return ValueList{Value(a), std::move(color)}; }

// Depth-k view rendered straight from the graph, in the JSON shape views use.
nlohmann::json oracle_view(const netgraph::PortDigraph &g, const std::vector<int> &labels, int v, int k) {
    nlohmann::json kids = nlohmann::json::array();
    if (k > 0) {
        std::vector<const netgraph::Edge *> in(g.d_in(v));
        for (const auto &e : g.edges()) {
            if (e.dst == v) {
                in[e.in_port - 1] = &e;
            }
        }
        for (const auto *e : in) {
            kids.push_back({{"edge", {e->out_port, e->in_port}}, {"view", oracle_view(g, labels, e->src, k - 1)}});
        }
    }
    return {{"label", labels[v]}, {"children", kids}};
}

}  // namespace

TEST(ColorCount, Cases) {
    auto g = netgraph::ring(3);
    auto p = color_count(3);
    auto one = run_once(g, *p, {active(false, "z"), active(true, "a"), active(true, "a")});
    expect_all(one, ValueList{Value(1), Value(ValueList{Value("a")})});
    auto none = run_once(g, *p, {active(false, "a"), active(false, "b"), active(false, "c")});
    expect_all(none, ValueList{Value(0), Value(ValueList{})});
    auto two = run_once(g, *p, {active(true, "a"), active(true, "b"), active(false, "c")});
    expect_all(two, ValueList{Value(2), Value(ValueList{Value("a"), Value("b")})});
}

TEST(ColorCount, MatchesSetUnionOnEveryThreeNodeGraph) {
    for (const auto &g : netgraph::enumerate_graphs(3, 1)) {
        for (int mask = 0; mask < 64; mask++) {
            std::vector<Value> in;
            std::set<Value> expect;
            for (int v = 0; v < 3; v++) {
                bool a = (mask >> v) & 1;
                Value color((mask >> (3 + v)) & 1);
                in.push_back(active(a, color));
                if (a) {
                    expect.insert(color);
                }
            }
            auto outs = run_once(g, *color_count(3), in);
            ValueList colors(expect.begin(), expect.end());
            int report = std::min<int>(2, static_cast<int>(colors.size()));
            expect_all(outs, ValueList{Value(report), Value(colors)});
            expect_all(run_once(g, *consistency(3), in), Value(expect.size() <= 1));
        }
    }
}

TEST(Consistency, Examples) {
    auto g = netgraph::ring(4);
    auto p = consistency(4);
    expect_all(run_once(g, *p, {active(true, 7), active(true, 7), active(false, 1), active(true, 7)}), Value(true));
    expect_all(run_once(g, *p, {active(true, 7), active(true, 8), active(false, 1), active(false, 7)}), Value(false));
    expect_all(run_once(g, *p, std::vector<Value>(4, active(false, 3))), Value(true));
}

TEST(T0, Examples) {
    expect_all(run_once(netgraph::ring(4), *compute_t0(4), std::vector<Value>(4, Value(false))), Value(true));
    expect_all(run_once(netgraph::ring(3), *compute_t0(3), {Value(false), Value(true), Value(false)}), Value(false));
    auto t = runtime::run_sampling(netgraph::ring(3), *compute_t0(3), std::vector<Value>(3, Value(false)), {3}, 0);
    EXPECT_EQ(t.rounds, 4);
}

TEST(Views, DepthZeroIsTheLabel) {
    auto outs = run_once(netgraph::ring(3), *build_view(0), {Value(5), Value(6), Value(7)});
    for (int v = 0; v < 3; v++) {
        auto view = as_view(outs[v]);
        EXPECT_EQ(view->height(), 0);
        EXPECT_EQ(view->label(), 5 + v);
    }
}

TEST(Views, MatchDirectConstruction) {
    std::vector<int> labels{1, 0, 0};
    auto g = netgraph::ring(3);
    auto outs = run_once(g, *build_view(2), {Value(1), Value(0), Value(0)});
    for (int v = 0; v < 3; v++) {
        EXPECT_EQ(as_view(outs[v])->to_json(), oracle_view(g, labels, v, 2));
        for (int w = 0; w < v; w++) {
            EXPECT_FALSE(same_view(as_view(outs[v]), as_view(outs[w])));
        }
    }
    auto h = netgraph::example1a();
    std::vector<int> four{1, 0, 1, 1};
    auto hv = run_once(h, *build_view(3), {Value(1), Value(0), Value(1), Value(1)});
    for (int v = 0; v < 4; v++) {
        EXPECT_EQ(as_view(hv[v])->to_json(), oracle_view(h, four, v, 3));
    }
}

TEST(Views, SymmetricRingGivesEqualViews) {
    for (int k = 0; k < 5; k++) {
        auto outs = run_once(netgraph::ring(2), *build_view(k), {Value(1), Value(1)});
        EXPECT_TRUE(same_view(as_view(outs[0]), as_view(outs[1])));
    }
}

TEST(Views, TruncateKeepsTheTop) {
    auto outs = run_once(netgraph::ring(3), *build_view(4), {Value(1), Value(0), Value(0)});
    auto full = as_view(outs[0]);
    auto cut = truncate(full, 2);
    EXPECT_EQ(cut->height(), 2);
    auto direct = run_once(netgraph::ring(3), *build_view(2), {Value(1), Value(0), Value(0)});
    EXPECT_TRUE(same_view(cut, as_view(direct[0])));
    EXPECT_EQ(truncate(full, 9), full);
}

TEST(SymmetricGuess, ClassCounts) {
    auto outs = run_once(netgraph::ring(3), *build_view(5), {Value(1), Value(0), Value(0)});
    for (const auto &o : outs) {
        auto c = count_view_classes(as_view(o), 3);
        EXPECT_EQ(c.q, 3);
        EXPECT_EQ(c.q1, 1);
    }
    expect_all(run_once(netgraph::ring(3), *eval_symmetric_guess(3), {Value(true), Value(false), Value(false)}),
               Value(Rational(1)));
    expect_all(run_once(netgraph::ring(4), *eval_symmetric_guess(4), std::vector<Value>(4, Value(true))),
               Value(Rational(4)));
}

TEST(SymmetricGuess, ExactWhenMEqualsN) {
    for (int n = 2; n <= 4; n++) {
        for (const auto &g : netgraph::enumerate_graphs(n, 1)) {
            for (int mask = 0; mask < (1 << n); mask++) {
                std::vector<Value> in;
                for (int v = 0; v < n; v++) {
                    in.push_back(Value(((mask >> v) & 1) != 0));
                }
                expect_all(run_once(g, *eval_symmetric_guess(n), in), Value(Rational(__builtin_popcount(mask))));
            }
            if (n == 4) {
                break;
            }
        }
    }
}

TEST(SymmetricGuess, NeverNegative) {
    auto outs = run_once(netgraph::ring(3), *eval_symmetric_guess(2), {Value(true), Value(false), Value(false)});
    for (const auto &o : outs) {
        EXPECT_FALSE(o.as_rational() < Rational(0));
    }
}

TEST(LeaderWeight, CountsOnes) {
    auto g = netgraph::ring(3);
    auto in = [](int x, bool leader) { return Value(ValueList{Value(x != 0), Value(leader)}); };
    expect_all(run_once(g, *leader_weight(3), {in(1, false), in(0, true), in(1, false)}), Value(2));
    expect_all(run_once(g, *leader_weight(3), {in(0, false), in(0, true), in(0, false)}), Value(0));
}

TEST(LeaderWeight, IdentifiersAreDistinct) {
    auto g = netgraph::example1a();
    std::vector<Value> in;
    for (int v = 0; v < 4; v++) {
        in.push_back(ValueList{Value(v % 2 == 0), Value(v == 2)});
    }
    auto t = runtime::run_sampling(g, *leader_weight(4, true), in, {4}, 0);
    EXPECT_LE(t.rounds, leader_weight_rounds(4) + 1);
    for (const auto &o : t.outputs) {
        EXPECT_EQ(o[0], Value(2));
        std::set<Value> ids;
        for (const auto &entry : o[1].as_list()) {
            ids.insert(entry[0]);
        }
        EXPECT_EQ(ids.size(), 4u);
    }
}

TEST(EdgeLabels, OneExchange) {
    auto g = netgraph::example1b();
    auto t = runtime::run_sampling(g, *edge_labels(), std::vector<Value>(4), {4}, 0);
    EXPECT_EQ(t.rounds, 2);
    for (int v = 0; v < 4; v++) {
        EXPECT_EQ(t.outputs[v].as_list().size(), static_cast<std::size_t>(g.d_in(v)));
    }
}
