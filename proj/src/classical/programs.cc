#include "anonq/classical/programs.h"

#include "anonq/classical/exchange.h"
#include "anonq/common/errors.h"

namespace anonq::classical {

using runtime::Inbox;
using runtime::PartyContext;
using runtime::QuantumPort;
using runtime::StepResult;
using runtime::TypedProgram;

namespace {

std::int64_t label_of(const Value &v) {
    return v.is_bool() ? static_cast<std::int64_t>(v.as_bool()) : v.as_int();
}

enum class FloodOutput { Report, Consistent, AllZero };

struct FloodState {
    ColorFlood flood;
    bool started = false;
};

class FloodProgram final : public TypedProgram<FloodState> {
   public:
    FloodProgram(int delta, FloodOutput kind, std::string key)
        : TypedProgram(std::move(key)), delta_(delta), kind_(kind) {
        if (delta < 1) {
            throw DomainError("delta must be >= 1");
        }
    }

   protected:
    FloodState init(const PartyContext &, QuantumPort &) const override { return {}; }
    void round(const PartyContext &ctx, FloodState &s, const Inbox &inbox, QuantumPort &,
               StepResult &out) const override {
        if (!s.started) {
            s.started = true;
            if (kind_ == FloodOutput::AllZero) {
                s.flood.begin(ctx.input.as_bool(), Value(true), delta_, ctx, out);
            } else {
                s.flood.begin(ctx.input[0].as_bool(), ctx.input[1], delta_, ctx, out);
            }
            return;
        }
        if (!s.flood.receive(inbox, ctx, out)) {
            return;
        }
        out.halt = true;
        switch (kind_) {
            case FloodOutput::Report:
                out.output = ValueList{Value(s.flood.report_case()), Value(s.flood.colors())};
                break;
            case FloodOutput::Consistent:
                out.output = s.flood.consistent();
                break;
            case FloodOutput::AllZero:
                out.output = s.flood.report_case() == 0;
                break;
        }
    }

   private:
    int delta_;
    FloodOutput kind_;
};

struct ViewState {
    ViewFlood flood;
    bool started = false;
};

class ViewProgram final : public TypedProgram<ViewState> {
   public:
    ViewProgram(int depth, int guess_m)
        : TypedProgram(guess_m > 0 ? "symguess(" + std::to_string(guess_m) + ")"
                                   : "view(" + std::to_string(depth) + ")"),
          depth_(depth),
          guess_m_(guess_m) {}

   protected:
    ViewState init(const PartyContext &, QuantumPort &) const override { return {}; }
    void round(const PartyContext &ctx, ViewState &s, const Inbox &inbox, QuantumPort &,
               StepResult &out) const override {
        bool done;
        if (!s.started) {
            s.started = true;
            s.flood.begin(label_of(ctx.input), depth_, ctx, out);
            done = s.flood.done();
        } else {
            done = s.flood.receive(inbox, ctx, out);
        }
        if (done) {
            out.halt = true;
            out.output = guess_m_ > 0 ? Value(symmetric_guess(s.flood.view(), guess_m_)) : as_value(s.flood.view());
        }
    }

   private:
    int depth_;
    int guess_m_;
};

struct LeaderState {
    int round = 0;
    bool has_id = false;
    ValueList id;
    ColorFlood count;
};

class LeaderWeightProgram final : public TypedProgram<LeaderState> {
   public:
    LeaderWeightProgram(int N, bool with_ids)
        : TypedProgram("leaderweight(" + std::to_string(N) + (with_ids ? ",ids" : "") + ")"), N_(N), with_ids_(with_ids) {
        if (N < 1) {
            throw DomainError("N must be >= 1");
        }
    }

   protected:
    LeaderState init(const PartyContext &, QuantumPort &) const override { return {}; }
    void round(const PartyContext &ctx, LeaderState &s, const Inbox &inbox, QuantumPort &,
               StepResult &out) const override {
        s.round++;
        bool x = ctx.input[0].as_bool();
        if (s.round == 1 && ctx.input[1].as_bool()) {
            s.has_id = true;
            if (N_ > 1) {
                forward(ctx, s, out);
            }
        } else if (s.round >= 2 && s.round <= N_ && !s.has_id) {
            for (const auto &port : inbox) {
                if (!port.empty()) {
                    s.id = port.front().payload.as_list();
                    s.has_id = true;
                    if (s.round < N_) {
                        forward(ctx, s, out);
                    }
                    break;
                }
            }
        }
        if (s.round == N_) {
            if (!s.has_id) {
                throw PreconditionError("leader_weight: party without identifier; is there exactly one leader?");
            }
            s.count.begin(true, ValueList{Value(s.id), Value(x)}, N_, ctx, out);
            return;
        }
        if (s.round > N_ && s.count.receive(inbox, ctx, out)) {
            std::int64_t weight = 0;
            for (const auto &pair : s.count.colors()) {
                weight += pair[1].as_bool();
            }
            out.halt = true;
            out.output = with_ids_ ? Value(ValueList{Value(weight), Value(s.count.colors())}) : Value(weight);
        }
    }

   private:
    void forward(const PartyContext &ctx, const LeaderState &s, StepResult &out) const {
        for (int p = 0; p < ctx.d_out; p++) {
            ValueList next = s.id;
            next.push_back(Value(p + 1));
            out.outbox[p].push_back(runtime::Message{{}, Value(std::move(next)), std::nullopt});
        }
    }

    int N_;
    bool with_ids_;
};

struct EdgeLabelState {
    bool sent = false;
};

class EdgeLabelProgram final : public TypedProgram<EdgeLabelState> {
   public:
    EdgeLabelProgram() : TypedProgram("edgelabels") {}

   protected:
    EdgeLabelState init(const PartyContext &, QuantumPort &) const override { return {}; }
    void round(const PartyContext &ctx, EdgeLabelState &s, const Inbox &inbox, QuantumPort &,
               StepResult &out) const override {
        if (!s.sent) {
            s.sent = true;
            for (int p = 0; p < ctx.d_out; p++) {
                out.outbox[p].push_back(runtime::Message{{}, Value(p + 1), std::nullopt});
            }
            return;
        }
        ValueList labels;
        for (int j = 0; j < ctx.d_in; j++) {
            for (const auto &m : inbox[j]) {
                labels.push_back(ValueList{m.payload, Value(j + 1)});
            }
        }
        out.halt = true;
        out.output = std::move(labels);
    }
};

}  // namespace

ProgramPtr color_count(int delta) {
    return std::make_shared<FloodProgram>(delta, FloodOutput::Report, "colorcount(" + std::to_string(delta) + ")");
}

ProgramPtr consistency(int delta) {
    return std::make_shared<FloodProgram>(delta, FloodOutput::Consistent,
                                          "consistency(" + std::to_string(delta) + ")");
}

ProgramPtr compute_t0(int delta) {
    return std::make_shared<FloodProgram>(delta, FloodOutput::AllZero, "t0(" + std::to_string(delta) + ")");
}

ProgramPtr build_view(int depth) {
    if (depth < 0) {
        throw DomainError("view depth must be >= 0");
    }
    return std::make_shared<ViewProgram>(depth, 0);
}

ProgramPtr eval_symmetric_guess(int m) {
    if (m < 2) {
        throw DomainError("symmetric guess needs m >= 2");
    }
    return std::make_shared<ViewProgram>(2 * m - 1, m);
}

ProgramPtr leader_weight(int N, bool with_ids) {
    return std::make_shared<LeaderWeightProgram>(N, with_ids);
}

ProgramPtr edge_labels() {
    return std::make_shared<EdgeLabelProgram>();
}

}  // namespace anonq::classical
