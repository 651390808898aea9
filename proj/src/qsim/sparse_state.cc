#include "anonq/qsim/sparse_state.h"

#include <algorithm>
#include <cmath>

#include "anonq/common/errors.h"

namespace anonq::qsim {

std::string tag_name(RegisterTag tag) {
    switch (tag) {
        case RegisterTag::R:
            return "R";
        case RegisterTag::Y:
            return "Y";
        case RegisterTag::Garbage:
            return "garbage";
    }
    return "?";
}

SparseQuantumState::SparseQuantumState(std::uint32_t space) : space_(space) {
    entries_.push_back({std::string(), Complex(1, 0)});
}

RegisterId SparseQuantumState::init_register(const RegisterMeta &meta, Symbol s) {
    RegisterId r = RegisterId::make(space_, next_serial_++);
    position_[r] = static_cast<int>(registers_.size());
    registers_.push_back(r);
    metas_.push_back(meta);
    char c = static_cast<char>(index(s));
    for (auto &e : entries_) {
        e.key.push_back(c);
    }
    return r;
}

RegisterId SparseQuantumState::init_register(int owner, Symbol s) {
    RegisterMeta meta;
    meta.owner = owner;
    return init_register(meta, s);
}

int SparseQuantumState::pos(RegisterId r) const {
    auto it = position_.find(r);
    if (it == position_.end()) {
        throw LookupError("register not present in this state");
    }
    return it->second;
}

const RegisterMeta &SparseQuantumState::meta(RegisterId r) const {
    return metas_[pos(r)];
}

void SparseQuantumState::set_owner(RegisterId r, int owner) {
    metas_[pos(r)].owner = owner;
}

Symbol SparseQuantumState::symbol_in(const std::string &key, RegisterId r) const {
    return symbol(key[pos(r)]);
}

Complex SparseQuantumState::amplitude(const std::vector<Symbol> &symbols) const {
    if (symbols.size() != registers_.size()) {
        throw PreconditionError("basis string length does not match register count");
    }
    std::string key(symbols.size(), '\0');
    for (std::size_t k = 0; k < symbols.size(); k++) {
        key[k] = static_cast<char>(index(symbols[k]));
    }
    for (const auto &e : entries_) {
        if (e.key == key) {
            return e.amp;
        }
    }
    return 0;
}

double SparseQuantumState::norm2() const {
    double total = 0;
    for (const auto &e : entries_) {
        total += std::norm(e.amp);
    }
    return total;
}

void SparseQuantumState::check_norm(const char *op) const {
    double n = norm2();
    if (std::abs(n - 1) > kZeroTolerance) {
        throw ValidationError(std::string("norm drifted to ") + std::to_string(n) + " after " + op);
    }
}

void SparseQuantumState::prune() {
    std::erase_if(entries_, [](const Entry &e) { return std::abs(e.amp) <= kPruneThreshold; });
}

void SparseQuantumState::normalize_phase() {
    double n = std::sqrt(norm2());
    if (n == 0) {
        throw ValidationError("state collapsed to zero");
    }
    auto lead = std::min_element(entries_.begin(), entries_.end(),
                                 [](const Entry &a, const Entry &b) { return a.key < b.key; });
    Complex scale = std::conj(lead->amp) / (std::abs(lead->amp) * n);
    for (auto &e : entries_) {
        e.amp *= scale;
    }
    lead->amp = Complex(lead->amp.real(), 0);
}

void SparseQuantumState::apply_unitary(RegisterId r, const Matrix4 &u) {
    if (unitarity_error(u) > kZeroTolerance) {
        throw ValidationError("matrix is not unitary within 1e-9");
    }
    int p = pos(r);
    std::unordered_map<std::string, Complex> acc;
    acc.reserve(entries_.size() * 2);
    for (const auto &e : entries_) {
        int a = e.key[p];
        std::string key = e.key;
        for (int b = 0; b < 4; b++) {
            Complex c = u[b * 4 + a];
            if (c == Complex(0)) {
                continue;
            }
            key[p] = static_cast<char>(b);
            acc[key] += c * e.amp;
        }
    }
    entries_.clear();
    for (auto &[key, amp] : acc) {
        if (std::abs(amp) > kPruneThreshold) {
            entries_.push_back({key, amp});
        }
    }
    check_norm("apply_unitary");
}

void SparseQuantumState::apply_map(const std::vector<RegisterId> &regs, const ReversibleMap &f) {
    if (static_cast<int>(regs.size()) != f.arity()) {
        throw PreconditionError("reversible map arity does not match register list");
    }
    std::vector<int> ps;
    for (auto r : regs) {
        ps.push_back(pos(r));
    }
    for (auto &e : entries_) {
        int t = 0;
        for (int p : ps) {
            t = t * 4 + e.key[p];
        }
        int out = f(t);
        for (int k = static_cast<int>(ps.size()) - 1; k >= 0; k--) {
            e.key[ps[k]] = static_cast<char>(out & 3);
            out >>= 2;
        }
    }
}

namespace {

bool is_computational(const Basis4 &b) {
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            if (b.vectors[i][j] != Complex(i == j ? 1.0 : 0.0)) {
                return false;
            }
        }
    }
    return true;
}

// Rows are conjugated basis vectors: maps b_j to the j-th computational state.
Matrix4 into_basis(const Basis4 &b) {
    Matrix4 m{};
    for (int j = 0; j < 4; j++) {
        for (int k = 0; k < 4; k++) {
            m[j * 4 + k] = std::conj(b.vectors[j][k]);
        }
    }
    return m;
}

}  // namespace

std::vector<double> SparseQuantumState::outcome_probabilities(RegisterId r, const Basis4 &basis) const {
    if (orthonormality_error(basis) > kZeroTolerance) {
        throw ValidationError("measurement basis is not orthonormal");
    }
    SparseQuantumState rotated = *this;
    if (!is_computational(basis)) {
        rotated.apply_unitary(r, into_basis(basis));
    }
    int p = pos(r);
    std::vector<double> probs(4, 0.0);
    for (const auto &e : rotated.entries_) {
        probs[e.key[p]] += std::norm(e.amp);
    }
    return probs;
}

Symbol SparseQuantumState::measure(RegisterId r, const Basis4 &basis, ChoiceSource &choice) {
    if (orthonormality_error(basis) > kZeroTolerance) {
        throw ValidationError("measurement basis is not orthonormal");
    }
    bool plain = is_computational(basis);
    if (!plain) {
        apply_unitary(r, into_basis(basis));
    }
    int p = pos(r);
    std::vector<double> probs(4, 0.0);
    for (const auto &e : entries_) {
        probs[e.key[p]] += std::norm(e.amp);
    }
    int outcome = static_cast<int>(choice.choose(probs));
    std::erase_if(entries_, [&](const Entry &e) { return e.key[p] != outcome; });
    normalize_phase();
    if (!plain) {
        apply_unitary(r, adjoint(into_basis(basis)));
        normalize_phase();
    }
    check_norm("measure");
    return symbol(outcome);
}

Symbol SparseQuantumState::measure(RegisterId r, const Basis4 &basis, std::mt19937_64 &rng) {
    RandomChoice choice(rng);
    return measure(r, basis, choice);
}

std::vector<BranchOutcome> SparseQuantumState::measure_branches(const std::vector<RegisterId> &regs,
                                                                const std::vector<Basis4> &bases,
                                                                std::size_t cap) const {
    if (regs.size() != bases.size()) {
        throw PreconditionError("one basis per register required");
    }
    std::vector<BranchOutcome> frontier;
    frontier.push_back({{}, 1.0, std::make_shared<SparseQuantumState>(*this)});
    for (std::size_t k = 0; k < regs.size(); k++) {
        std::vector<BranchOutcome> next;
        for (auto &branch : frontier) {
            auto probs = branch.state->outcome_probabilities(regs[k], bases[k]);
            for (int j = 0; j < 4; j++) {
                if (probs[j] <= kPruneThreshold) {
                    continue;
                }
                if (next.size() >= cap) {
                    throw CapacityError("measure_branches exceeded branch cap " + std::to_string(cap));
                }
                auto state = std::make_shared<SparseQuantumState>(*branch.state);
                FixedChoice pick(j);
                state->measure(regs[k], bases[k], pick);
                auto outcomes = branch.outcomes;
                outcomes.emplace_back(regs[k], symbol(j));
                next.push_back({std::move(outcomes), branch.probability * probs[j], std::move(state)});
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

int SparseQuantumState::measure_minus_parity(const std::vector<RegisterId> &regs, ChoiceSource &choice) {
    std::vector<int> ps;
    for (auto r : regs) {
        ps.push_back(pos(r));
    }
    auto swapped = [&](std::string key) {
        for (int p : ps) {
            if (key[p] < 2) {
                key[p] ^= 1;
            }
        }
        return key;
    };
    std::unordered_map<std::string, Complex> psi;
    psi.reserve(entries_.size() * 2);
    for (const auto &e : entries_) {
        psi[e.key] += e.amp;
    }
    double overlap = 0;
    for (const auto &e : entries_) {
        auto it = psi.find(swapped(e.key));
        if (it != psi.end()) {
            overlap += (std::conj(e.amp) * it->second).real();
        }
    }
    std::vector<double> probs = {(1 + overlap) / 2, (1 - overlap) / 2};
    int s = static_cast<int>(choice.choose(probs));
    double sign = s ? -1.0 : 1.0;
    std::unordered_map<std::string, Complex> out;
    out.reserve(entries_.size() * 2);
    for (const auto &e : entries_) {
        out[e.key] += e.amp / 2.0;
        out[swapped(e.key)] += sign * e.amp / 2.0;
    }
    entries_.clear();
    for (auto &[key, amp] : out) {
        if (std::abs(amp) > kPruneThreshold) {
            entries_.push_back({key, amp});
        }
    }
    normalize_phase();
    check_norm("measure_minus_parity");
    return s;
}

std::optional<std::pair<SparseQuantumState, SparseQuantumState>> SparseQuantumState::split(
    const std::vector<RegisterId> &regs) const {
    std::vector<int> a_pos;
    std::vector<char> in_a(registers_.size(), 0);
    for (auto r : regs) {
        int p = pos(r);
        if (in_a[p]) {
            throw PreconditionError("register listed twice");
        }
        in_a[p] = 1;
        a_pos.push_back(p);
    }
    std::vector<int> b_pos;
    for (int p = 0; p < static_cast<int>(registers_.size()); p++) {
        if (!in_a[p]) {
            b_pos.push_back(p);
        }
    }
    auto project = [](const std::string &key, const std::vector<int> &ps) {
        std::string out(ps.size(), '\0');
        for (std::size_t k = 0; k < ps.size(); k++) {
            out[k] = key[ps[k]];
        }
        return out;
    };
    const Entry *lead = &entries_.front();
    for (const auto &e : entries_) {
        if (std::abs(e.amp) > std::abs(lead->amp)) {
            lead = &e;
        }
    }
    std::string a0 = project(lead->key, a_pos), b0 = project(lead->key, b_pos);
    std::unordered_map<std::string, Complex> phi, chi;
    for (const auto &e : entries_) {
        std::string a = project(e.key, a_pos), b = project(e.key, b_pos);
        if (b == b0) {
            phi[a] = e.amp;
        }
        if (a == a0) {
            chi[b] = e.amp / lead->amp;
        }
    }
    for (const auto &e : entries_) {
        auto pa = phi.find(project(e.key, a_pos));
        auto pb = chi.find(project(e.key, b_pos));
        if (pa == phi.end() || pb == chi.end() || std::abs(e.amp - pa->second * pb->second) > kZeroTolerance) {
            return std::nullopt;
        }
    }
    double na = 0, nb = 0;
    for (auto &[k, v] : phi) {
        na += std::norm(v);
    }
    for (auto &[k, v] : chi) {
        nb += std::norm(v);
    }
    if (std::abs(na * nb - norm2()) > kZeroTolerance) {
        return std::nullopt;
    }
    auto build = [&](const std::vector<int> &ps, const std::unordered_map<std::string, Complex> &amps, double n) {
        SparseQuantumState s(space_);
        s.next_serial_ = next_serial_;
        for (int p : ps) {
            s.position_[registers_[p]] = static_cast<int>(s.registers_.size());
            s.registers_.push_back(registers_[p]);
            s.metas_.push_back(metas_[p]);
        }
        s.entries_.clear();
        double scale = 1 / std::sqrt(n);
        for (auto &[k, v] : amps) {
            if (std::abs(v * scale) > kPruneThreshold) {
                s.entries_.push_back({k, v * scale});
            }
        }
        s.normalize_phase();
        return s;
    };
    return std::make_pair(build(a_pos, phi, na), build(b_pos, chi, nb));
}

void SparseQuantumState::discard(const std::vector<RegisterId> &regs) {
    if (regs.empty()) {
        return;
    }
    auto parts = split(regs);
    if (!parts) {
        throw PreconditionError("cannot discard registers entangled with the rest of the state");
    }
    *this = std::move(parts->second);
    check_norm("discard");
}

nlohmann::json SparseQuantumState::dump() const {
    std::vector<std::pair<std::string, Complex>> rows;
    for (const auto &e : entries_) {
        std::string b;
        for (char c : e.key) {
            b += bits(symbol(c));
        }
        rows.emplace_back(b, e.amp);
    }
    std::sort(rows.begin(), rows.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    nlohmann::json out = nlohmann::json::array();
    for (auto &[b, amp] : rows) {
        out.push_back({b, amp.real(), amp.imag()});
    }
    return out;
}

double fidelity(const SparseQuantumState &state, const SparseQuantumState &reference,
                const std::vector<RegisterId> &regs) {
    if (reference.registers().size() != regs.size()) {
        throw PreconditionError("reference register count does not match");
    }
    if (std::abs(reference.norm2() - 1) > kZeroTolerance) {
        throw PreconditionError("reference state is not normalized");
    }
    auto parts = state.split(regs);
    if (!parts) {
        throw PreconditionError("state is entangled across the fidelity bipartition");
    }
    std::unordered_map<std::string, Complex> ref;
    for (const auto &e : reference.entries()) {
        ref[e.key] += e.amp;
    }
    Complex overlap = 0;
    for (const auto &e : parts->first.entries()) {
        auto it = ref.find(e.key);
        if (it != ref.end()) {
            overlap += std::conj(it->second) * e.amp;
        }
    }
    return std::min(1.0, std::norm(overlap));
}

SparseQuantumState ghz_state(int k, Symbol a, Symbol b) {
    SparseQuantumState s;
    std::vector<RegisterId> regs;
    for (int i = 0; i < k; i++) {
        regs.push_back(s.init_register(i, Symbol::ZeroHat));
    }
    if (k == 0) {
        return s;
    }
    s.apply_unitary(regs[0], low_bit_hadamard());
    for (int i = 1; i < k; i++) {
        s.apply_map({regs[0], regs[i]}, ReversibleMap::from_function(2, [](Symbol *t) {
                        if (t[0] == Symbol::OneHat) {
                            t[1] = symbol(index(t[1]) ^ 1);
                        }
                    }));
    }
    if (a != Symbol::ZeroHat || b != Symbol::OneHat) {
        if (a == b) {
            throw PreconditionError("ghz_state needs two distinct symbols");
        }
        // Permutation sending 0^ -> a, 1^ -> b, completed on the remaining levels.
        std::vector<int> image(4, -1);
        image[0] = index(a);
        image[1] = index(b);
        std::vector<char> used(4, 0);
        used[index(a)] = used[index(b)] = 1;
        for (int j = 2; j < 4; j++) {
            for (int c = 0; c < 4; c++) {
                if (!used[c]) {
                    image[j] = c;
                    used[c] = 1;
                    break;
                }
            }
        }
        ReversibleMap m(1, image);
        for (auto r : regs) {
            s.apply_map({r}, m);
        }
    }
    return s;
}

}  // namespace anonq::qsim
