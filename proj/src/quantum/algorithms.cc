#include "anonq/quantum/algorithms.h"

#include <cmath>

#include "anonq/classical/programs.h"
#include "anonq/common/errors.h"
#include "anonq/runtime/compose.h"

namespace anonq::quantum {

using runtime::LaneFold;
using runtime::Parallel;
using runtime::Sequence;
using runtime::Transition;

std::vector<std::pair<int, int>> qsv_lanes(int N) {
    std::vector<std::pair<int, int>> out;
    for (int h = 0; h <= N; h++) {
        for (int m = std::max(h, 2); m <= N; m++) {
            out.emplace_back(h, m);
        }
    }
    return out;
}

namespace {

std::vector<ProgramPtr> verification_lanes(int N, QhmOptions options) {
    if (N < 2) {
        throw DomainError("verification needs N >= 2");
    }
    std::vector<ProgramPtr> lanes{classical::compute_t0(N)};
    for (auto [h, m] : qsv_lanes(N)) {
        lanes.push_back(q_hm(h, m, N, options));
    }
    return lanes;
}

Value same_input(std::size_t, const Value &input) { return input; }

}  // namespace

ProgramPtr qsv(int N, const QhmOptions &lane_options) {
    LaneFold fold;
    fold.name = "qsv";
    fold.lane_input = same_input;
    // [all zero, some lane false]
    fold.init = [](const Value &) { return Value(ValueList{Value(false), Value(false)}); };
    fold.step = [](const Value &acc, std::size_t lane, const Value &, const Value &output) {
        ValueList next = acc.as_list();
        if (lane == 0) {
            next[0] = output;
        } else if (!output.as_bool()) {
            next[1] = Value(true);
        }
        return Value(std::move(next));
    };
    fold.finish = [](const Value &acc) { return Value(!acc[0].as_bool() && !acc[1].as_bool()); };
    QhmOptions options = lane_options;
    options.with_outcome = false;
    return std::make_shared<Parallel>(verification_lanes(N, options), std::move(fold));
}

ProgramPtr qsv_prime(int N) {
    LaneFold fold;
    fold.name = "qsv'";
    fold.lane_input = same_input;
    // [all zero, outcome from the first false lane or none]
    fold.init = [](const Value &) { return Value(ValueList{Value(false), Value()}); };
    fold.step = [](const Value &acc, std::size_t lane, const Value &, const Value &output) {
        ValueList next = acc.as_list();
        if (lane == 0) {
            next[0] = output;
        } else if (next[1].is_none() && !output[0].as_bool()) {
            next[1] = output[1];
        }
        return Value(std::move(next));
    };
    fold.finish = [](const Value &acc) {
        if (!acc[1].is_none()) {
            return acc[1];
        }
        return acc[0].as_bool() ? Value(std::int64_t{kInactiveOutcome}) : Value(true);
    };
    QhmOptions options;
    options.with_outcome = true;
    return std::make_shared<Parallel>(verification_lanes(N, options), std::move(fold));
}

ProgramPtr zqle(int N) {
    if (N < 2) {
        throw DomainError("zqle needs N >= 2");
    }
    ProgramPtr verify = qsv(N);
    std::vector<ProgramPtr> lanes;
    for (int s = 2; s <= N; s++) {
        lanes.push_back(std::make_shared<runtime::WithCoin>(1.0 / s, verify));
    }
    LaneFold fold;
    fold.name = "zqle";
    fold.lane_input = same_input;
    // [some attempt succeeded, coin of the largest successful attempt]
    fold.init = [](const Value &) { return Value(ValueList{Value(false), Value(false)}); };
    fold.step = [](const Value &acc, std::size_t, const Value &, const Value &output) {
        if (!output[1].as_bool()) {
            return acc;
        }
        return Value(ValueList{Value(true), output[0]});
    };
    fold.finish = [](const Value &acc) {
        if (!acc[0].as_bool()) {
            return Value(std::string("give-up"));
        }
        return Value(std::int64_t{acc[1].as_bool() ? 1 : 0});
    };
    return std::make_shared<Parallel>(std::move(lanes), std::move(fold));
}

double zqle_success_probability(int n, int N) {
    double fail = 1;
    for (int s = 2; s <= N; s++) {
        double p = 1.0 / s;
        fail *= 1 - n * p * std::pow(1 - p, n - 1);
    }
    return 1 - fail;
}

Value SymmetricFunction::operator()(int weight) const {
    if (weight < 0) {
        throw DomainError("negative weight");
    }
    return weight <= k ? table.at(weight) : tail;
}

SymmetricFunction exactly(int j) {
    SymmetricFunction f{"exactly-" + std::to_string(j), j, {}, Value(false)};
    for (int w = 0; w <= j; w++) {
        f.table.push_back(Value(w == j));
    }
    return f;
}

SymmetricFunction at_most(int j) {
    SymmetricFunction f{"at-most-" + std::to_string(j), j, {}, Value(false)};
    for (int w = 0; w <= j; w++) {
        f.table.push_back(Value(true));
    }
    return f;
}

int qsym_refinement_stages(int k) {
    int bound = std::max(k, 2);
    int L = 0;
    while ((1 << L) < bound) {
        L++;
    }
    return L;
}

int qsym_round_bound(int k, int N) {
    return (qsym_refinement_stages(k) + 1) * qhm_rounds(N) + classical::leader_weight_rounds(N);
}

namespace {

// Stage t runs one qsv_prime lane per class label of length t (base-4 digits,
// lane order = lexicographic order), plus the all-zero test at t = 0.
// Party input: [active, label]. Output: [all zero or none, first true class or -1,
// member of that class, own outcome or -1].
ProgramPtr qsym_stage(int t, int N, const ProgramPtr &verify) {
    const std::size_t offset = t == 0 ? 1 : 0;
    std::vector<ProgramPtr> lanes;
    if (t == 0) {
        lanes.push_back(classical::compute_t0(N));
    }
    const std::size_t classes = std::size_t{1} << (2 * t);
    for (std::size_t c = 0; c < classes; c++) {
        lanes.push_back(verify);
    }
    LaneFold fold;
    fold.name = "qsym-stage" + std::to_string(t);
    fold.lane_input = [offset, t](std::size_t lane, const Value &input) {
        if (lane < offset) {
            return input[0];
        }
        if (!input[0].as_bool()) {
            return Value(false);
        }
        std::size_t c = lane - offset;
        const auto &label = input[1].as_list();
        for (int d = t - 1; d >= 0; d--) {
            if (label[d].as_int() != static_cast<std::int64_t>(c & 3)) {
                return Value(false);
            }
            c >>= 2;
        }
        return Value(true);
    };
    fold.init = [](const Value &) {
        return Value(ValueList{Value(), Value(std::int64_t{-1}), Value(false), Value(std::int64_t{-1})});
    };
    fold.step = [offset](const Value &acc, std::size_t lane, const Value &member, const Value &output) {
        ValueList next = acc.as_list();
        if (lane < offset) {
            next[0] = output;
        } else if (output.is_bool()) {
            if (next[1].as_int() < 0) {
                next[1] = Value(static_cast<std::int64_t>(lane - offset));
                next[2] = member;
            }
        } else if (member.as_bool()) {
            next[3] = output;
        }
        return Value(std::move(next));
    };
    fold.finish = [](const Value &acc) { return acc; };
    return std::make_shared<Parallel>(std::move(lanes), std::move(fold));
}

}  // namespace

ProgramPtr qsym(const SymmetricFunction &f, int N) {
    if (f.k < 0 || f.table.size() != static_cast<std::size_t>(f.k) + 1) {
        throw ValidationError("symmetric function table must cover weights 0..k");
    }
    if (N < 2) {
        throw DomainError("qsym needs N >= 2");
    }
    const int L = qsym_refinement_stages(f.k);
    ProgramPtr verify = qsv_prime(N);
    std::vector<ProgramPtr> stages;
    for (int t = 0; t <= L; t++) {
        stages.push_back(qsym_stage(t, N, verify));
    }
    ProgramPtr weigh = classical::leader_weight(N);
    constexpr std::int64_t kWeighing = -1;

    // carry: [x, stage or kWeighing, label]
    auto advance = [f, L, stages, weigh](const Value &carry, const Value *last) -> Transition {
        if (last == nullptr) {
            Value x = carry;
            return Transition::then(stages[0], ValueList{x, Value(ValueList{})},
                                    ValueList{x, Value(std::int64_t{0}), Value(ValueList{})});
        }
        const Value &x = carry[0];
        const std::int64_t t = carry[1].as_int();
        if (t == kWeighing) {
            return Transition::finish(f(static_cast<int>(last->as_int())));
        }
        const Value &result = *last;
        if (t == 0 && result[0].as_bool()) {
            return Transition::finish(f(0));
        }
        if (result[1].as_int() >= 0) {
            return Transition::then(weigh, ValueList{x, result[2]}, ValueList{x, Value(kWeighing), carry[2]});
        }
        if (t == L) {
            return Transition::finish(f.tail);
        }
        std::int64_t r = result[3].as_int();
        ValueList label = carry[2].as_list();
        bool active = r >= 0 && r < kInactiveOutcome;
        label.push_back(Value(active ? r : std::int64_t{kInactiveOutcome}));
        return Transition::then(stages[t + 1], ValueList{Value(active), Value(label)},
                                ValueList{x, Value(t + 1), Value(label)});
    };
    std::string key = "qsym(" + f.name + ",";
    for (const auto &v : f.table) {
        key += v.str() + ",";
    }
    key += "tail=" + f.tail.str() + ",N=" + std::to_string(N) + ")";
    return std::make_shared<Sequence>(std::move(key), std::move(advance));
}

}  // namespace anonq::quantum
