#ifndef ANONQ_QUANTUM_W_UNITARY_H
#define ANONQ_QUANTUM_W_UNITARY_H

#include <array>

#include "anonq/qsim/symbols.h"

namespace anonq::quantum {

/// Per-party unitary applied to R after scale-down. For h >= 2, applying it at
/// each of h parties sharing (|0^...0^> + |1^...1^>)/sqrt2 leaves no amplitude on
/// the four constant strings.
struct WUnitary {
    int h = 0;
    qsim::Matrix4 matrix;
};

/// h in {0, 1}: identity. Even h: I2 (x) U_h on the low bit. Odd h >= 3: V_h * CNOT
/// (low bit controls high bit), V_h built from three phases that are h-th roots of -1.
WUnitary build_W(int h);

/// (1/sqrt2) (W[c][0^]^h + W[c][1^]^h) for each constant symbol c.
std::array<qsim::Complex, 4> constant_string_amplitudes(const WUnitary &w);
/// Max magnitude of the above; the self-test bound is 1e-9.
double max_constant_string_amplitude(const WUnitary &w);

/// diag(1, e^{i pi/h}, 1, 1).
qsim::Matrix4 rotation_R(int h);

}  // namespace anonq::quantum

#endif
