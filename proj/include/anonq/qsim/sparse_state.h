#ifndef ANONQ_QSIM_SPARSE_STATE_H
#define ANONQ_QSIM_SPARSE_STATE_H

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "anonq/qsim/choice.h"
#include "anonq/qsim/reversible_map.h"
#include "anonq/qsim/symbols.h"
#include "json.hpp"

namespace anonq::qsim {

enum class RegisterTag : std::uint8_t { R, Y, Garbage };
std::string tag_name(RegisterTag tag);

/// Bookkeeping attached to a register; never shown to party programs.
struct RegisterMeta {
    int owner = -1;  ///< party index, -1 while in transit
    RegisterTag tag = RegisterTag::Garbage;
    int epoch = 0;
    int slot = 0;
};

/// Opaque register handle. Supports only equality, ordering and hashing.
class RegisterId {
   public:
    constexpr RegisterId() = default;
    static constexpr RegisterId make(std::uint32_t space, std::uint32_t serial) {
        RegisterId r;
        r.v_ = (std::uint64_t{space} << 32) | serial;
        return r;
    }
    /// Which state (factor) allocated the register.
    std::uint32_t space() const { return static_cast<std::uint32_t>(v_ >> 32); }
    std::uint64_t raw() const { return v_; }
    bool valid() const { return v_ != ~std::uint64_t{0}; }
    bool operator==(const RegisterId &) const = default;
    bool operator<(const RegisterId &o) const { return v_ < o.v_; }

   private:
    std::uint64_t v_ = ~std::uint64_t{0};
};

struct RegisterIdHash {
    std::size_t operator()(const RegisterId &r) const { return std::hash<std::uint64_t>()(r.raw()); }
};

class SparseQuantumState;

struct BranchOutcome {
    std::vector<std::pair<RegisterId, Symbol>> outcomes;
    double probability;
    std::shared_ptr<SparseQuantumState> state;
};

/// Pure state over 4-level registers, stored as a list of (basis string,
/// amplitude) pairs. Basis strings hold one byte per register in creation order.
class SparseQuantumState {
   public:
    struct Entry {
        std::string key;
        Complex amp;
    };

    /// Register ids allocated here carry `space` so several states can coexist.
    explicit SparseQuantumState(std::uint32_t space = 0);

    RegisterId init_register(const RegisterMeta &meta, Symbol s);
    RegisterId init_register(int owner, Symbol s);

    std::uint32_t space() const { return space_; }
    bool contains(RegisterId r) const { return position_.count(r) != 0; }
    const std::vector<RegisterId> &registers() const { return registers_; }
    const RegisterMeta &meta(RegisterId r) const;
    void set_owner(RegisterId r, int owner);
    std::size_t support_size() const { return entries_.size(); }
    const std::vector<Entry> &entries() const { return entries_; }
    /// Symbol of register r inside a basis string of this state.
    Symbol symbol_in(const std::string &key, RegisterId r) const;
    /// Amplitude of the basis string that assigns `symbols[k]` to registers()[k].
    Complex amplitude(const std::vector<Symbol> &symbols) const;
    double norm2() const;

    /// Throws ValidationError unless u is unitary within 1e-9.
    void apply_unitary(RegisterId r, const Matrix4 &u);
    void apply_map(const std::vector<RegisterId> &regs, const ReversibleMap &f);

    /// Born-rule measurement in the given orthonormal basis; the register is left in the
    /// outcome vector and the state renormalized with a nonnegative real leading amplitude.
    Symbol measure(RegisterId r, const Basis4 &basis, ChoiceSource &choice);
    Symbol measure(RegisterId r, const Basis4 &basis, std::mt19937_64 &rng);
    /// Every outcome combination with probability above the prune threshold.
    std::vector<BranchOutcome> measure_branches(const std::vector<RegisterId> &regs, const std::vector<Basis4> &bases,
                                                std::size_t cap = 1u << 16) const;
    /// Probability of each outcome of measuring r in `basis`.
    std::vector<double> outcome_probabilities(RegisterId r, const Basis4 &basis) const;

    /// Measures regs in {+^, -^, empty, x} but reveals only the parity of the -^
    /// outcomes: projects with (I + (-1)^s X^{(x)k})/2 where X swaps 0^ and 1^.
    int measure_minus_parity(const std::vector<RegisterId> &regs, ChoiceSource &choice);

    /// Factorization across (regs, rest): nullopt if the state is entangled across it.
    std::optional<std::pair<SparseQuantumState, SparseQuantumState>> split(const std::vector<RegisterId> &regs) const;
    bool is_product(const std::vector<RegisterId> &regs) const { return split(regs).has_value(); }
    /// Removes registers that are unentangled from the rest; PreconditionError otherwise.
    void discard(const std::vector<RegisterId> &regs);

    /// [[basis, re, im], ...] sorted by basis; basis is two bits per register.
    nlohmann::json dump() const;

   private:
    void check_norm(const char *op) const;
    void normalize_phase();
    void prune();
    int pos(RegisterId r) const;

    std::uint32_t space_;
    std::uint32_t next_serial_ = 0;
    std::vector<RegisterId> registers_;
    std::vector<RegisterMeta> metas_;
    std::unordered_map<RegisterId, int, RegisterIdHash> position_;
    std::vector<Entry> entries_;
};

/// |<reference|state restricted to regs>|^2. reference's registers correspond to
/// regs by position. PreconditionError if state is entangled across (regs, rest).
double fidelity(const SparseQuantumState &state, const SparseQuantumState &reference,
                const std::vector<RegisterId> &regs);

/// (|a...a> + |b...b>)/sqrt2 on k fresh registers; the usual GHZ state is a=0^, b=1^.
SparseQuantumState ghz_state(int k, Symbol a = Symbol::ZeroHat, Symbol b = Symbol::OneHat);

}  // namespace anonq::qsim

#endif
