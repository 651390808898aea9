#ifndef ANONQ_QSIM_SYMBOLS_H
#define ANONQ_QSIM_SYMBOLS_H

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace anonq::qsim {

using Complex = std::complex<double>;

/// Register levels. The two-bit encodings are 00, 01, 10, 11 in this order.
enum class Symbol : std::uint8_t { ZeroHat = 0, OneHat = 1, Empty = 2, Cross = 3 };

inline int index(Symbol s) { return static_cast<int>(s); }
inline Symbol symbol(int i) { return static_cast<Symbol>(i & 3); }
/// "00", "01", "10", "11".
std::string bits(Symbol s);
/// Readable names used in logs: 0^, 1^, {}, x.
std::string name(Symbol s);

/// The symbol read as a subset of {0, 1}: 0^ = {0}, 1^ = {1}, empty, x = {0, 1}.
inline int as_set(Symbol s) {
    static constexpr int table[4] = {0b01, 0b10, 0b00, 0b11};
    return table[index(s)];
}
inline Symbol from_set(int mask) {
    static constexpr Symbol table[4] = {Symbol::Empty, Symbol::ZeroHat, Symbol::OneHat, Symbol::Cross};
    return table[mask & 3];
}
inline Symbol set_union(Symbol a, Symbol b) { return from_set(as_set(a) | as_set(b)); }

/// Row-major 4x4 matrix acting on one register.
using Matrix4 = std::array<Complex, 16>;
/// Four vectors in the computational frame; vectors[j] is the j-th outcome.
struct Basis4 {
    std::array<std::array<Complex, 4>, 4> vectors;
};

Matrix4 identity4();
Matrix4 multiply(const Matrix4 &a, const Matrix4 &b);
Matrix4 adjoint(const Matrix4 &a);
/// Largest entry of |U^dagger U - I|.
double unitarity_error(const Matrix4 &u);

/// diag(1, e^{i phi}, 1, 1): a phase on the 1^ level only.
Matrix4 phase_on_one_hat(double phi);
/// Hadamard on the low bit, i.e. on span{0^, 1^}, identity on {empty, x}.
Matrix4 low_bit_hadamard();

Basis4 computational_basis();
/// {+^, -^, empty, x} with +-^ = (0^ +- 1^)/sqrt2.
Basis4 hadamard_basis();
/// Largest entry of |<b_i|b_j> - delta_ij|.
double orthonormality_error(const Basis4 &b);

}  // namespace anonq::qsim

#endif
