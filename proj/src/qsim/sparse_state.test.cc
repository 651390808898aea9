#include "anonq/qsim/sparse_state.h"

#include <gtest/gtest.h>

#include <cmath>

#include "anonq/common/errors.h"

using namespace anonq;
using namespace anonq::qsim;

namespace {

// Rotation by theta between the 1^ and empty levels.
Matrix4 mix_one_empty(double theta) {
    Matrix4 u = identity4();
    u[5] = std::cos(theta);
    u[6] = -std::sin(theta);
    u[9] = std::sin(theta);
    u[10] = std::cos(theta);
    return u;
}

std::vector<Complex> dense(const SparseQuantumState &s) {
    int k = static_cast<int>(s.registers().size());
    std::vector<Complex> v(std::size_t{1} << (2 * k));
    for (std::size_t t = 0; t < v.size(); t++) {
        std::vector<Symbol> sym(k);
        for (int j = 0; j < k; j++) {
            sym[j] = symbol(static_cast<int>(t >> (2 * (k - 1 - j))));
        }
        v[t] = s.amplitude(sym);
    }
    return v;
}

double overlap2(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    Complex dot = 0;
    for (std::size_t t = 0; t < a.size(); t++) {
        dot += std::conj(a[t]) * b[t];
    }
    return std::norm(dot);
}

}  // namespace

TEST(SparseState, HadamardAndPhase) {
    SparseQuantumState s;
    auto r = s.init_register(0, Symbol::OneHat);
    s.apply_unitary(r, phase_on_one_hat(M_PI / 2));
    EXPECT_NEAR(std::abs(s.amplitude({Symbol::OneHat}) - Complex(0, 1)), 0, 1e-12);
    SparseQuantumState t;
    auto q = t.init_register(0, Symbol::ZeroHat);
    t.apply_unitary(q, low_bit_hadamard());
    EXPECT_EQ(t.support_size(), 2u);
    t.apply_unitary(q, phase_on_one_hat(M_PI / 2));
    Complex ratio = t.amplitude({Symbol::OneHat}) / t.amplitude({Symbol::ZeroHat});
    EXPECT_NEAR(std::abs(ratio - Complex(0, 1)), 0, 1e-12);
}

TEST(SparseState, RejectsNonUnitary) {
    SparseQuantumState s;
    auto r = s.init_register(0, Symbol::ZeroHat);
    Matrix4 u = identity4();
    u[0] = 0.5;
    EXPECT_THROW(s.apply_unitary(r, u), ValidationError);
}

TEST(SparseState, OutcomeProbabilities) {
    SparseQuantumState s;
    auto r = s.init_register(0, Symbol::ZeroHat);
    s.apply_unitary(r, low_bit_hadamard());
    s.apply_unitary(r, mix_one_empty(M_PI / 3));
    auto p = s.outcome_probabilities(r, computational_basis());
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[1], 0.5 * 0.25, 1e-12);
    EXPECT_NEAR(p[2], 0.5 * 0.75, 1e-12);
    EXPECT_NEAR(p[3], 0, 1e-12);
    FixedChoice pick(2);
    EXPECT_EQ(s.measure(r, computational_basis(), pick), Symbol::Empty);
    EXPECT_NEAR(std::norm(s.amplitude({Symbol::Empty})), 1, 1e-12);
}

TEST(SparseState, GhzBranchesEvenly) {
    auto g = ghz_state(3);
    auto regs = g.registers();
    auto branches = g.measure_branches({regs[0]}, {computational_basis()});
    ASSERT_EQ(branches.size(), 2u);
    for (const auto &b : branches) {
        EXPECT_NEAR(b.probability, 0.5, 1e-12);
        Symbol first = b.outcomes[0].second;
        EXPECT_NEAR(std::norm(b.state->amplitude({first, first, first})), 1, 1e-12);
    }
}

TEST(SparseState, FidelityWithGhz) {
    SparseQuantumState s;
    auto a = s.init_register(0, Symbol::ZeroHat);
    auto b = s.init_register(1, Symbol::Empty);
    auto spectator = s.init_register(2, Symbol::Cross);
    s.apply_unitary(a, low_bit_hadamard());
    s.apply_map({a, b}, ReversibleMap::copy());
    auto ref = ghz_state(2);
    EXPECT_NEAR(fidelity(s, ref, {a, b}), 1, 1e-12);
    EXPECT_NEAR(fidelity(s, ghz_state(2, Symbol::ZeroHat, Symbol::Cross), {a, b}), 0.25, 1e-12);
    EXPECT_THROW(fidelity(s, ref, {a, spectator}), PreconditionError);
}

TEST(SparseState, SplitAndDiscard) {
    SparseQuantumState s;
    auto a = s.init_register(0, Symbol::ZeroHat);
    auto b = s.init_register(0, Symbol::Empty);
    auto c = s.init_register(1, Symbol::ZeroHat);
    s.apply_unitary(a, low_bit_hadamard());
    s.apply_unitary(c, low_bit_hadamard());
    s.apply_map({a, b}, ReversibleMap::copy());
    EXPECT_TRUE(s.is_product({c}));
    EXPECT_FALSE(s.is_product({a}));
    EXPECT_THROW(s.discard({a}), PreconditionError);
    s.discard({c});
    EXPECT_FALSE(s.contains(c));
    EXPECT_EQ(s.registers().size(), 2u);
    EXPECT_NEAR(s.norm2(), 1, 1e-12);
}

TEST(SparseState, MinusParityMatchesDenseProjector) {
    for (int s_pick = 0; s_pick < 2; s_pick++) {
        SparseQuantumState s;
        auto a = s.init_register(0, Symbol::ZeroHat);
        auto b = s.init_register(1, Symbol::ZeroHat);
        auto c = s.init_register(2, Symbol::Empty);
        s.apply_unitary(a, low_bit_hadamard());
        s.apply_unitary(a, phase_on_one_hat(0.4));
        s.apply_unitary(b, mix_one_empty(0.3));
        s.apply_unitary(b, low_bit_hadamard());
        s.apply_map({a, b, c}, ReversibleMap::union_write());
        s.apply_unitary(c, mix_one_empty(0.9));
        auto before = dense(s);

        // Dense (I + sign X_a X_b)/2 with X swapping 0^ and 1^ only; c untouched.
        auto swap = [](int x) { return x < 2 ? x ^ 1 : x; };
        double sign = s_pick ? -1 : 1;
        std::vector<Complex> projected(before.size());
        for (std::size_t t = 0; t < before.size(); t++) {
            int xa = static_cast<int>(t >> 4), xb = static_cast<int>(t >> 2) & 3, xc = static_cast<int>(t) & 3;
            std::size_t u = static_cast<std::size_t>(swap(xa) * 16 + swap(xb) * 4 + xc);
            projected[t] = (before[t] + sign * before[u]) / 2.0;
        }
        double p = 0;
        for (auto z : projected) {
            p += std::norm(z);
        }
        ASSERT_GT(p, 1e-6);
        for (auto &z : projected) {
            z /= std::sqrt(p);
        }
        FixedChoice pick(s_pick);
        EXPECT_EQ(s.measure_minus_parity({a, b}, pick), s_pick);
        EXPECT_NEAR(overlap2(dense(s), projected), 1, 1e-9);
    }
}

TEST(SparseState, ParityOfGhzInHadamardFrameIsEven) {
    auto g = ghz_state(4);
    FixedChoice odd(1);
    EXPECT_THROW(g.measure_minus_parity(g.registers(), odd), PreconditionError);
    auto h = ghz_state(4);
    FixedChoice even(0);
    EXPECT_EQ(h.measure_minus_parity(h.registers(), even), 0);
    EXPECT_NEAR(fidelity(h, ghz_state(4), h.registers()), 1, 1e-12);
}
