#include "anonq/qsim/symbols.h"

#include <cmath>

namespace anonq::qsim {

std::string bits(Symbol s) {
    static const char *table[4] = {"00", "01", "10", "11"};
    return table[index(s)];
}

std::string name(Symbol s) {
    static const char *table[4] = {"0^", "1^", "{}", "x"};
    return table[index(s)];
}

Matrix4 identity4() {
    Matrix4 m{};
    for (int i = 0; i < 4; i++) {
        m[i * 4 + i] = 1;
    }
    return m;
}

Matrix4 multiply(const Matrix4 &a, const Matrix4 &b) {
    Matrix4 m{};
    for (int i = 0; i < 4; i++) {
        for (int k = 0; k < 4; k++) {
            for (int j = 0; j < 4; j++) {
                m[i * 4 + j] += a[i * 4 + k] * b[k * 4 + j];
            }
        }
    }
    return m;
}

Matrix4 adjoint(const Matrix4 &a) {
    Matrix4 m{};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            m[i * 4 + j] = std::conj(a[j * 4 + i]);
        }
    }
    return m;
}

double unitarity_error(const Matrix4 &u) {
    Matrix4 p = multiply(adjoint(u), u);
    double err = 0;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            err = std::max(err, std::abs(p[i * 4 + j] - Complex(i == j ? 1.0 : 0.0)));
        }
    }
    return err;
}

Matrix4 phase_on_one_hat(double phi) {
    Matrix4 m = identity4();
    m[1 * 4 + 1] = std::polar(1.0, phi);
    return m;
}

Matrix4 low_bit_hadamard() {
    double s = 1 / std::sqrt(2.0);
    Matrix4 m = identity4();
    m[0] = s;
    m[1] = s;
    m[4] = s;
    m[5] = -s;
    return m;
}

Basis4 computational_basis() {
    Basis4 b{};
    for (int j = 0; j < 4; j++) {
        b.vectors[j][j] = 1;
    }
    return b;
}

Basis4 hadamard_basis() {
    double s = 1 / std::sqrt(2.0);
    Basis4 b{};
    b.vectors[0] = {s, s, 0, 0};
    b.vectors[1] = {s, -s, 0, 0};
    b.vectors[2] = {0, 0, 1, 0};
    b.vectors[3] = {0, 0, 0, 1};
    return b;
}

double orthonormality_error(const Basis4 &b) {
    double err = 0;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            Complex dot = 0;
            for (int k = 0; k < 4; k++) {
                dot += std::conj(b.vectors[i][k]) * b.vectors[j][k];
            }
            err = std::max(err, std::abs(dot - Complex(i == j ? 1.0 : 0.0)));
        }
    }
    return err;
}

}  // namespace anonq::qsim
