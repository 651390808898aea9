#include "anonq/quantum/w_unitary.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "anonq/common/errors.h"

namespace anonq::quantum {

using qsim::Complex;
using qsim::Matrix4;

namespace {

// Solves the 3x3 system a w = b by Cramer's rule; returns false if singular.
bool solve3(const double a[3][3], const double b[3], double w[3]) {
    auto det = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    double d = det(a);
    if (std::abs(d) < 1e-12) {
        return false;
    }
    for (int c = 0; c < 3; c++) {
        double m[3][3];
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                m[i][j] = j == c ? b[i] : a[i][j];
            }
        }
        w[c] = det(m) / d;
    }
    return true;
}

// Orthonormal completion: columns listed in `fixed` are kept, the others are
// filled by Gram-Schmidt over the computational basis.
Matrix4 complete_columns(const std::array<std::array<Complex, 4>, 4> &cols_in, const std::vector<int> &fixed) {
    std::vector<std::array<Complex, 4>> basis;
    for (int c : fixed) {
        basis.push_back(cols_in[c]);
    }
    std::array<std::array<Complex, 4>, 4> cols = cols_in;
    int e = 0;
    for (int c = 0; c < 4; c++) {
        if (std::find(fixed.begin(), fixed.end(), c) != fixed.end()) {
            continue;
        }
        while (true) {
            if (e >= 4) {
                throw ConstructionError("orthonormal completion ran out of candidates");
            }
            std::array<Complex, 4> v{};
            v[e++] = 1;
            for (const auto &b : basis) {
                Complex dot = 0;
                for (int k = 0; k < 4; k++) {
                    dot += std::conj(b[k]) * v[k];
                }
                for (int k = 0; k < 4; k++) {
                    v[k] -= dot * b[k];
                }
            }
            double norm = 0;
            for (auto x : v) {
                norm += std::norm(x);
            }
            if (norm > 1e-6) {
                for (auto &x : v) {
                    x /= std::sqrt(norm);
                }
                cols[c] = v;
                basis.push_back(v);
                break;
            }
        }
    }
    Matrix4 m{};
    for (int c = 0; c < 4; c++) {
        for (int r = 0; r < 4; r++) {
            m[r * 4 + c] = cols[c][r];
        }
    }
    return m;
}

Matrix4 odd_W(int h) {
    const double pi = std::numbers::pi;
    double best_min = -1;
    double best_w[3] = {0, 0, 0};
    Complex best_omega[3];
    for (int a = 0; a < h; a++) {
        for (int b = a + 1; b < h; b++) {
            for (int c = b + 1; c < h; c++) {
                Complex omega[3] = {std::polar(1.0, pi * (2 * a + 1) / h), std::polar(1.0, pi * (2 * b + 1) / h),
                                    std::polar(1.0, pi * (2 * c + 1) / h)};
                double sys[3][3];
                for (int j = 0; j < 3; j++) {
                    sys[0][j] = omega[j].real();
                    sys[1][j] = omega[j].imag();
                    sys[2][j] = 1;
                }
                double rhs[3] = {0, 0, 1};
                double w[3];
                if (!solve3(sys, rhs, w)) {
                    continue;
                }
                double lo = std::min({w[0], w[1], w[2]});
                if (lo > best_min) {
                    best_min = lo;
                    std::copy(w, w + 3, best_w);
                    std::copy(omega, omega + 3, best_omega);
                }
            }
        }
    }
    if (best_min <= 1e-9) {
        throw ConstructionError("no phase triple with positive weights for h=" + std::to_string(h));
    }
    // V's columns 0^ and x carry the designed vectors; after the CNOT they become
    // W's columns 0^ and 1^.
    std::array<std::array<Complex, 4>, 4> cols{};
    for (int j = 0; j < 3; j++) {
        cols[0][j] = std::sqrt(best_w[j]);
        cols[3][j] = best_omega[j] * std::sqrt(best_w[j]);
    }
    Matrix4 v = complete_columns(cols, {0, 3});
    Matrix4 cnot{};
    // Column a holds the image of basis state a: 00->00, 01->11, 10->10, 11->01.
    const int image[4] = {0, 3, 2, 1};
    for (int a = 0; a < 4; a++) {
        cnot[image[a] * 4 + a] = 1;
    }
    return qsim::multiply(v, cnot);
}

}  // namespace

WUnitary build_W(int h) {
    if (h < 0) {
        throw DomainError("W_h needs h >= 0");
    }
    WUnitary w;
    w.h = h;
    if (h <= 1) {
        w.matrix = qsim::identity4();
    } else if (h % 2 == 0) {
        const double s = 1 / std::sqrt(2.0);
        Complex e = std::polar(1.0, std::numbers::pi / h);
        Complex u[2][2] = {{s, s * e}, {s, -s * e}};
        Matrix4 m{};
        for (int hi = 0; hi < 2; hi++) {
            for (int a = 0; a < 2; a++) {
                for (int b = 0; b < 2; b++) {
                    m[(2 * hi + a) * 4 + (2 * hi + b)] = u[a][b];
                }
            }
        }
        w.matrix = m;
    } else {
        w.matrix = odd_W(h);
    }
    if (qsim::unitarity_error(w.matrix) > 1e-9) {
        throw ConstructionError("W_" + std::to_string(h) + " is not unitary");
    }
    if (h >= 2 && max_constant_string_amplitude(w) > 1e-9) {
        throw ConstructionError("W_" + std::to_string(h) + " leaves amplitude on a constant string");
    }
    return w;
}

std::array<Complex, 4> constant_string_amplitudes(const WUnitary &w) {
    std::array<Complex, 4> out{};
    for (int c = 0; c < 4; c++) {
        out[c] = (std::pow(w.matrix[c * 4 + 0], w.h) + std::pow(w.matrix[c * 4 + 1], w.h)) / std::sqrt(2.0);
    }
    return out;
}

double max_constant_string_amplitude(const WUnitary &w) {
    double best = 0;
    for (auto a : constant_string_amplitudes(w)) {
        best = std::max(best, std::abs(a));
    }
    return best;
}

Matrix4 rotation_R(int h) {
    if (h < 1) {
        throw DomainError("R(pi/h) needs h >= 1");
    }
    return qsim::phase_on_one_hat(std::numbers::pi / h);
}

}  // namespace anonq::quantum
