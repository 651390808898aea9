#include "anonq/quantum/qhm.h"

#include "anonq/classical/exchange.h"
#include "anonq/classical/view_tree.h"
#include "anonq/common/errors.h"
#include "anonq/quantum/w_unitary.h"

namespace anonq::quantum {

using qsim::RegisterTag;
using qsim::ReversibleMap;
using qsim::Symbol;
using runtime::Inbox;
using runtime::Message;
using runtime::PartyContext;
using runtime::QuantumPort;
using runtime::RegisterId;
using runtime::StepResult;

namespace {

enum class Phase { Spread, Views, GuessCheck, OutcomeCheck, Idle };

struct QhmState {
    int round = 0;
    bool active = false;
    Phase phase = Phase::Spread;
    RegisterId r;
    RegisterId current;
    std::vector<RegisterId> garbage;
    classical::ViewFlood views;
    classical::ColorFlood flood;
    bool verdict = true;
    int outcome = kInactiveOutcome;
};

class QhmProgram final : public runtime::TypedProgram<QhmState> {
   public:
    QhmProgram(int h, int m, int N, QhmOptions options)
        : TypedProgram(make_key(h, m, N, options)), h_(h), m_(m), N_(N), options_(std::move(options)) {
        if (N < 1 || m < 2 || h < 0 || h > m) {
            throw ValidationError("q_hm needs N >= 1, m >= 2 and 0 <= h <= m");
        }
        w_ = options_.w_override ? *options_.w_override : build_W(h).matrix;
    }

   protected:
    QhmState init(const PartyContext &, QuantumPort &) const override { return {}; }

    void round(const PartyContext &ctx, QhmState &s, const Inbox &inbox, QuantumPort &port,
               StepResult &out) const override {
        s.round++;
        const int delta = N_;
        switch (s.phase) {
            case Phase::Spread:
                if (s.round == 1) {
                    prepare(ctx, s, port);
                } else {
                    absorb(ctx, s, inbox, port);
                }
                if (s.round <= delta) {
                    send_copies(ctx, s, port, out);
                    return;
                }
                check_spread(ctx, s, port, out);
                return;
            case Phase::Views:
                if (s.views.receive(inbox, ctx, out)) {
                    Rational guess = classical::symmetric_guess(s.views.view(), m_);
                    s.phase = Phase::GuessCheck;
                    s.flood.begin(true, Value(guess), delta, ctx, out);
                }
                return;
            case Phase::GuessCheck:
                if (s.flood.receive(inbox, ctx, out)) {
                    finish_guess(ctx, s, port, out);
                }
                return;
            case Phase::OutcomeCheck:
                if (s.flood.receive(inbox, ctx, out)) {
                    s.verdict = s.flood.consistent();
                    s.phase = Phase::Idle;
                }
                break;
            case Phase::Idle:
                break;
        }
        if (s.round >= qhm_rounds(N_)) {
            out.halt = true;
            out.output = result(s);
        }
    }

   private:
    static std::string make_key(int h, int m, int N, const QhmOptions &o) {
        std::string k = "qhm(" + std::to_string(h) + "," + std::to_string(m) + "," + std::to_string(N);
        if (o.with_outcome) {
            k += ",r";
        }
        if (o.stop != StopAt::End) {
            k += ",stop" + std::to_string(static_cast<int>(o.stop));
        }
        if (o.w_override) {
            k += ",w*";
        }
        return k + ")";
    }

    Value result(const QhmState &s) const {
        if (!options_.with_outcome) {
            return Value(s.verdict);
        }
        return ValueList{Value(s.verdict), s.verdict ? Value() : Value(std::int64_t{s.outcome})};
    }

    void probe_halt(QhmState &s, StepResult &out) const {
        out.halt = true;
        out.output = ValueList{Value(std::string("probe")), Value(s.active)};
        s.phase = Phase::Idle;
    }

    void prepare(const PartyContext &ctx, QhmState &s, QuantumPort &port) const {
        s.active = ctx.input.as_bool();
        s.r = port.allocate(RegisterTag::R, s.active ? Symbol::ZeroHat : Symbol::Empty);
        if (s.active) {
            port.apply_unitary(s.r, qsim::low_bit_hadamard());
        }
        s.current = port.allocate(RegisterTag::Garbage, Symbol::Empty);
        port.apply_map({s.r, s.current}, ReversibleMap::copy());
        s.garbage.push_back(s.current);
    }

    void send_copies(const PartyContext &ctx, QhmState &s, QuantumPort &port, StepResult &out) const {
        for (int p = 0; p < ctx.d_out; p++) {
            RegisterId c = port.allocate(RegisterTag::Garbage, Symbol::Empty);
            port.apply_map({s.current, c}, ReversibleMap::copy());
            out.outbox[p].push_back(Message{{}, Value(), c});
        }
    }

    void absorb(const PartyContext &ctx, QhmState &s, const Inbox &inbox, QuantumPort &port) const {
        for (int j = 0; j < ctx.d_in; j++) {
            for (const auto &msg : inbox[j]) {
                if (!msg.reg) {
                    throw PreconditionError("expected a register");
                }
                s.garbage.push_back(*msg.reg);
                RegisterId u = port.allocate(RegisterTag::Garbage, Symbol::Empty);
                port.apply_map({s.current, *msg.reg, u}, ReversibleMap::union_write());
                s.garbage.push_back(u);
                s.current = u;
            }
        }
    }

    void check_spread(const PartyContext &ctx, QhmState &s, QuantumPort &port, StepResult &out) const {
        RegisterId y = port.allocate(RegisterTag::Y, Symbol::ZeroHat);
        port.apply_map({s.current, y}, ReversibleMap::flag_cross());
        bool consistent = port.measure(y, qsim::computational_basis()) == Symbol::ZeroHat;
        if (!consistent) {
            s.verdict = false;
            if (s.active) {
                s.outcome = qsim::index(port.measure(s.r, qsim::computational_basis()));
            }
            s.phase = Phase::Idle;
            return;
        }
        if (options_.stop == StopAt::AfterConsistency) {
            probe_halt(s, out);
            return;
        }
        int parity = port.measure_minus_parity(s.garbage);
        std::vector<RegisterId> drop = s.garbage;
        drop.push_back(y);
        port.discard(drop);
        s.garbage.clear();
        s.phase = Phase::Views;
        s.views.begin(parity, 2 * m_ - 1, ctx, out);
    }

    void finish_guess(const PartyContext &ctx, QhmState &s, QuantumPort &port, StepResult &out) const {
        const Value &agreed = s.flood.colors().empty() ? Value() : s.flood.colors().front();
        if (!s.flood.consistent() || !agreed.is_rational() || !agreed.as_rational().is_nonnegative_integer()) {
            s.verdict = true;
            s.phase = Phase::Idle;
            return;
        }
        bool odd = agreed.as_rational().num() % 2 != 0;
        if (s.active && odd && h_ >= 1) {
            port.apply_unitary(s.r, rotation_R(h_));
        }
        if (options_.stop == StopAt::AfterScaledown) {
            probe_halt(s, out);
            return;
        }
        if (s.active) {
            port.apply_unitary(s.r, w_);
        }
        if (options_.stop == StopAt::AfterW) {
            probe_halt(s, out);
            return;
        }
        if (s.active) {
            s.outcome = qsim::index(port.measure(s.r, qsim::computational_basis()));
        }
        s.phase = Phase::OutcomeCheck;
        s.flood.begin(s.active, Value(std::int64_t{s.outcome}), N_, ctx, out);
    }

    int h_;
    int m_;
    int N_;
    QhmOptions options_;
    qsim::Matrix4 w_;
};

}  // namespace

ProgramPtr q_hm(int h, int m, int N, QhmOptions options) {
    return std::make_shared<QhmProgram>(h, m, N, std::move(options));
}

}  // namespace anonq::quantum
