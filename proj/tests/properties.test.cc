#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "anonq/netgraph/enumerate.h"
#include "anonq/netgraph/fixtures.h"
#include "anonq/qsim/sparse_state.h"
#include "anonq/quantum/qhm.h"
#include "anonq/runtime/scheduler.h"
#include "anonq/runtime/world.h"

using namespace anonq;
using namespace anonq::qsim;

namespace {

Matrix4 random_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::array<std::array<Complex, 4>, 4> cols;
    for (int c = 0; c < 4; c++) {
        for (int r = 0; r < 4; r++) {
            cols[c][r] = Complex(gauss(rng), gauss(rng));
        }
        for (int p = 0; p < c; p++) {
            Complex dot = 0;
            for (int r = 0; r < 4; r++) {
                dot += std::conj(cols[p][r]) * cols[c][r];
            }
            for (int r = 0; r < 4; r++) {
                cols[c][r] -= dot * cols[p][r];
            }
        }
        double norm = 0;
        for (int r = 0; r < 4; r++) {
            norm += std::norm(cols[c][r]);
        }
        for (int r = 0; r < 4; r++) {
            cols[c][r] /= std::sqrt(norm);
        }
    }
    Matrix4 u;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            u[4 * r + c] = cols[c][r];
        }
    }
    return u;
}

SparseQuantumState random_state(std::mt19937_64 &rng, int registers) {
    SparseQuantumState s;
    for (int k = 0; k < registers; k++) {
        auto r = s.init_register(k, Symbol::Empty);
        s.apply_unitary(r, random_unitary(rng));
    }
    auto regs = s.registers();
    for (int k = 0; k + 2 < registers; k++) {
        s.apply_map({regs[k], regs[k + 1], regs[k + 2]}, ReversibleMap::union_write());
    }
    return s;
}

ReversibleMap random_permutation(std::mt19937_64 &rng, int arity) {
    std::vector<int> table(std::size_t{1} << (2 * arity));
    std::iota(table.begin(), table.end(), 0);
    std::shuffle(table.begin(), table.end(), rng);
    return ReversibleMap(arity, table);
}

std::uint64_t factorial(int d) { return d <= 1 ? 1 : d * factorial(d - 1); }

}  // namespace

TEST(NetgraphProperties, NumberingCountIsProductOfFactorials) {
    for (int n = 2; n <= 3; n++) {
        for (const auto &g : netgraph::enumerate_graphs(n, 2)) {
            std::uint64_t expect = 1;
            for (int v = 0; v < n; v++) {
                expect *= factorial(g.d_in(v)) * factorial(g.d_out(v));
            }
            EXPECT_EQ(netgraph::count_port_numberings(g), expect);
            EXPECT_EQ(netgraph::parse_graph(netgraph::serialize_graph(g)), g);
        }
    }
}

TEST(QsimProperties, NormAndSupportUnderRandomOperations) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        auto s = random_state(rng, 4);
        EXPECT_NEAR(s.norm2(), 1, 1e-9);
        auto regs = s.registers();
        std::size_t before = s.support_size();
        s.apply_map({regs[1], regs[3]}, random_permutation(rng, 2));
        EXPECT_LE(s.support_size(), before);
        EXPECT_NEAR(s.norm2(), 1, 1e-9);
        EXPECT_LE(s.support_size(), std::size_t{1} << 8);
    }
}

TEST(QsimProperties, UnitaryThenAdjointIsIdentity) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; trial++) {
        auto s = random_state(rng, 3);
        auto original = s;
        auto u = random_unitary(rng);
        auto r = s.registers()[trial % 3];
        s.apply_unitary(r, u);
        s.apply_unitary(r, adjoint(u));
        EXPECT_NEAR(fidelity(s, original, s.registers()), 1, 1e-9);
    }
}

TEST(QsimProperties, SamplingMatchesBranchProbabilities) {
    std::mt19937_64 rng(7);
    auto s = random_state(rng, 3);
    auto regs = s.registers();
    std::vector<Basis4> bases{hadamard_basis(), computational_basis()};
    auto branches = s.measure_branches({regs[0], regs[2]}, bases);
    double total = 0;
    for (const auto &b : branches) {
        total += b.probability;
    }
    EXPECT_NEAR(total, 1, 1e-9);
    const int trials = 20000;
    std::map<std::pair<Symbol, Symbol>, int> counts;
    std::mt19937_64 draw(8);
    for (int t = 0; t < trials; t++) {
        auto copy = s;
        Symbol a = copy.measure(regs[0], bases[0], draw);
        Symbol b = copy.measure(regs[2], bases[1], draw);
        counts[{a, b}]++;
    }
    for (const auto &b : branches) {
        double p = b.probability;
        double sigma = std::sqrt(p * (1 - p) / trials);
        double seen = static_cast<double>(counts[{b.outcomes[0].second, b.outcomes[1].second}]) / trials;
        EXPECT_NEAR(seen, p, 5 * sigma + 1e-12);
    }
}

TEST(QuantumProperties, ConsistentStateIsTwoTermWithMatchingGarbage) {
    quantum::QhmOptions probe;
    probe.stop = quantum::StopAt::AfterConsistency;
    for (const auto &g : {netgraph::ring(3), netgraph::complete(3)}) {
        for (int mask = 1; mask < 8; mask++) {
            std::vector<Value> x;
            for (int v = 0; v < 3; v++) {
                x.push_back(Value(((mask >> v) & 1) != 0));
            }
            for (const auto &leaf : runtime::run_branches(g, *quantum::q_hm(1, 3, 3, probe), x, {3})) {
                if (!leaf.transcript.outputs[0].is_list()) {
                    continue;
                }
                const auto &state = *leaf.world->factors().at("");
                ASSERT_EQ(state.support_size(), 2u);
                for (const auto &e : state.entries()) {
                    EXPECT_NEAR(std::abs(e.amp), 1 / std::sqrt(2.0), 1e-9);
                    std::set<Symbol> seen;
                    for (auto r : state.registers()) {
                        const auto &meta = state.meta(r);
                        Symbol s = state.symbol_in(e.key, r);
                        if (meta.tag == RegisterTag::Y) {
                            EXPECT_EQ(s, Symbol::ZeroHat);
                            continue;
                        }
                        if (meta.tag == RegisterTag::R && !x[meta.owner].as_bool()) {
                            EXPECT_EQ(s, Symbol::Empty);
                            continue;
                        }
                        if (s != Symbol::Empty) {
                            seen.insert(s);
                        }
                    }
                    ASSERT_EQ(seen.size(), 1u);
                    EXPECT_NE(*seen.begin(), Symbol::Cross);
                }
                // Registers holding empty in both terms are unentangled.
                std::vector<RegisterId> idle;
                for (auto r : state.registers()) {
                    if (state.symbol_in(state.entries()[0].key, r) == Symbol::Empty &&
                        state.symbol_in(state.entries()[1].key, r) == Symbol::Empty) {
                        idle.push_back(r);
                    }
                }
                if (!idle.empty()) {
                    EXPECT_TRUE(state.is_product(idle));
                }
            }
        }
    }
}
