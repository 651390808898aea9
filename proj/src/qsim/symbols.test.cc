#include "anonq/qsim/symbols.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace anonq::qsim;

TEST(Symbols, SetReading) {
    EXPECT_EQ(as_set(Symbol::ZeroHat), 0b01);
    EXPECT_EQ(as_set(Symbol::OneHat), 0b10);
    EXPECT_EQ(as_set(Symbol::Empty), 0);
    EXPECT_EQ(as_set(Symbol::Cross), 0b11);
    for (int m = 0; m < 4; m++) {
        EXPECT_EQ(as_set(from_set(m)), m);
    }
    EXPECT_EQ(set_union(Symbol::ZeroHat, Symbol::OneHat), Symbol::Cross);
    EXPECT_EQ(set_union(Symbol::Empty, Symbol::OneHat), Symbol::OneHat);
}

TEST(Symbols, Encodings) {
    EXPECT_EQ(bits(Symbol::ZeroHat), "00");
    EXPECT_EQ(bits(Symbol::OneHat), "01");
    EXPECT_EQ(bits(Symbol::Empty), "10");
    EXPECT_EQ(bits(Symbol::Cross), "11");
}

TEST(Symbols, StandardMatrices) {
    EXPECT_LT(unitarity_error(low_bit_hadamard()), 1e-12);
    EXPECT_LT(unitarity_error(phase_on_one_hat(0.7)), 1e-12);
    EXPECT_LT(orthonormality_error(hadamard_basis()), 1e-12);
    EXPECT_LT(orthonormality_error(computational_basis()), 1e-12);
    auto h = low_bit_hadamard();
    EXPECT_NEAR(h[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(h[5].real(), -1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(h[10].real(), 1, 1e-12);
    EXPECT_NEAR(h[15].real(), 1, 1e-12);
    Matrix4 bad = identity4();
    bad[0] = 2;
    EXPECT_GT(unitarity_error(bad), 1);
    auto hh = multiply(h, adjoint(h));
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            EXPECT_NEAR(std::abs(hh[4 * i + j] - Complex(i == j)), 0, 1e-12);
        }
    }
}
