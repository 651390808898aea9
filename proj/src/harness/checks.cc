#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "anonq/classical/programs.h"
#include "anonq/common/errors.h"
#include "anonq/harness/campaign.h"
#include "anonq/runtime/scheduler.h"

namespace anonq::harness {

using runtime::ProgramPtr;

namespace {

using Check = std::function<bool(const std::vector<Value> &outputs)>;

struct Job {
    const GraphInstance *instance;
    int N;
};

// Runs fn over jobs on a worker pool; results keep job order.
struct Batch {
    std::vector<InstanceRecord> records;
    /// Passing records dropped because the spec does not keep them.
    InstanceRecord dropped_summary;
    std::size_t dropped = 0;
};

std::vector<Batch> run_jobs(const CampaignSpec &spec, const std::vector<Job> &jobs,
                            const std::function<std::vector<InstanceRecord>(const Job &)> &fn) {
    std::vector<Batch> results(jobs.size());
    int workers = spec.workers > 0 ? spec.workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
            auto records = fn(jobs[k]);
            auto &batch = results[k];
            if (spec.keep_passing) {
                batch.records = std::move(records);
                continue;
            }
            for (auto &r : records) {
                if (r.pass && r.error.empty()) {
                    batch.dropped++;
                    batch.dropped_summary.rounds = std::max(batch.dropped_summary.rounds, r.rounds);
                    batch.dropped_summary.cbits = std::max(batch.dropped_summary.cbits, r.cbits);
                    batch.dropped_summary.qubits = std::max(batch.dropped_summary.qubits, r.qubits);
                } else {
                    batch.records.push_back(std::move(r));
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    return results;
}

std::vector<Job> make_jobs(const CampaignSpec &spec, const std::vector<GraphInstance> &instances) {
    std::vector<Job> jobs;
    for (const auto &inst : instances) {
        for (int N : N_values_for(spec, inst.graph.n())) {
            jobs.push_back({&inst, N});
        }
    }
    return jobs;
}

CampaignReport collect(const CampaignSpec &spec, std::vector<Batch> results) {
    CampaignReport report;
    report.algorithm = algorithm_name(spec.algorithm);
    for (auto &batch : results) {
        for (auto &r : batch.records) {
            report.add(std::move(r));
        }
        report.passed += batch.dropped;
        report.dropped += batch.dropped;
        report.max_rounds = std::max(report.max_rounds, batch.dropped_summary.rounds);
        report.max_cbits = std::max(report.max_cbits, batch.dropped_summary.cbits);
        report.max_qubits = std::max(report.max_qubits, batch.dropped_summary.qubits);
    }
    return report;
}

std::vector<Value> as_inputs(const std::vector<int> &x) {
    std::vector<Value> out;
    for (int b : x) {
        out.push_back(Value(b != 0));
    }
    return out;
}

int weight(const std::vector<int> &x) {
    int w = 0;
    for (int b : x) {
        w += b;
    }
    return w;
}

nlohmann::json outputs_json(const std::vector<Value> &outputs) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &v : outputs) {
        j.push_back(v.to_json());
    }
    return j;
}

// FNV-1a over the instance coordinates, mixed with the campaign seed.
std::uint64_t instance_seed(const CampaignSpec &spec, const InstanceRecord &rec) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; i++) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (char c : rec.graph_id) {
        mix(static_cast<unsigned char>(c));
    }
    mix(rec.numbering_id);
    mix(rec.N);
    for (int b : rec.input) {
        mix(b);
    }
    mix(spec.seed);
    return h;
}

InstanceRecord new_record(const Job &job, const std::vector<int> &x) {
    InstanceRecord rec;
    rec.graph_id = job.instance->graph_id;
    rec.numbering_id = job.instance->numbering_id;
    rec.n = job.instance->graph.n();
    rec.N = job.N;
    rec.input = x;
    rec.pass = true;
    return rec;
}

nlohmann::json replay_handle(const Job &job, const std::vector<int> &x, const runtime::Outcome *outcome,
                             std::optional<std::uint64_t> seed) {
    nlohmann::json j{{"graph", netgraph::serialize_graph(job.instance->graph)},
                     {"graph_id", job.instance->graph_id},
                     {"numbering", job.instance->numbering_id},
                     {"N", job.N},
                     {"input", x}};
    if (outcome) {
        nlohmann::json segments = nlohmann::json::array();
        for (const auto &s : outcome->replay) {
            segments.push_back({{"program", s.program_key},
                                {"inputs", outputs_json(s.inputs)},
                                {"call", runtime::Engine::call_key(s.program_key, s.inputs)},
                                {"path", s.path}});
        }
        j["segments"] = segments;
    }
    if (seed) {
        j["seed"] = *seed;
    }
    return j;
}

// Runs `program` on one input and checks every branch (branch mode) or
// every trial (sampling mode). Accumulates into rec.
void evaluate(const CampaignSpec &spec, runtime::Engine &engine, const Job &job, const ProgramPtr &program,
              const std::vector<int> &x, const Check &check, InstanceRecord &rec,
              runtime::Distribution *keep = nullptr) {
    auto inputs = as_inputs(x);
    if (spec.mode == Mode::Branch) {
        const auto &d = engine.distribution(*program, inputs);
        rec.branches = runtime::saturating_add(rec.branches, d.branch_count());
        double mass = d.total_probability();
        rec.mass = rec.mass == 0 ? mass : std::min(rec.mass, mass);
        if (std::abs(mass - 1) > spec.mass_tolerance) {
            rec.pass = false;
        }
        for (const auto &o : d.outcomes) {
            rec.verdicts.push_back({{"outputs", outputs_json(o.outputs)}, {"p", o.probability}});
            rec.rounds = std::max(rec.rounds, o.rounds);
            rec.cbits = std::max(rec.cbits, o.cbits);
            rec.qubits = std::max(rec.qubits, o.qubits);
            if (!check(o.outputs)) {
                if (rec.replay.is_null()) {
                    rec.replay = replay_handle(job, x, &o, std::nullopt);
                }
                rec.pass = false;
            }
        }
        if (keep) {
            *keep = d;
        }
        return;
    }
    std::uint64_t base = instance_seed(spec, rec);
    std::map<std::string, std::pair<nlohmann::json, int>> tally;
    for (int t = 0; t < spec.trials; t++) {
        std::uint64_t seed = base + static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ull;
        auto tr = runtime::run_sampling(engine.graph(), *program, inputs, engine.global(), seed, engine.options());
        rec.branches++;
        rec.rounds = std::max(rec.rounds, tr.rounds);
        rec.cbits = std::max(rec.cbits, tr.cbits);
        rec.qubits = std::max(rec.qubits, tr.qubits);
        auto j = outputs_json(tr.outputs);
        auto &slot = tally[j.dump()];
        slot.first = j;
        slot.second++;
        if (!check(tr.outputs)) {
            if (rec.replay.is_null()) {
                rec.replay = replay_handle(job, x, nullptr, seed);
            }
            rec.pass = false;
        }
        if (keep) {
            runtime::Outcome o;
            o.outputs = tr.outputs;
            o.probability = 1.0 / spec.trials;
            o.rounds = tr.rounds;
            keep->outcomes.push_back(std::move(o));
        }
    }
    rec.mass = 1;
    for (auto &[key, slot] : tally) {
        rec.verdicts.push_back({{"outputs", slot.first}, {"count", slot.second}});
    }
    if (keep) {
        *keep = runtime::merge_outcomes(std::move(keep->outcomes));
    }
}

Check all_equal_to(Value expected) {
    return [expected](const std::vector<Value> &outputs) {
        for (const auto &v : outputs) {
            if (!(v == expected)) {
                return false;
            }
        }
        return true;
    };
}

template <typename PerInput>
CampaignReport per_input_campaign(const CampaignSpec &spec, PerInput per_input) {
    auto instances = graph_instances(spec);
    auto jobs = make_jobs(spec, instances);
    auto results = run_jobs(spec, jobs, [&](const Job &job) {
        runtime::Engine engine(job.instance->graph, {job.N});
        std::vector<InstanceRecord> out;
        for (const auto &x : input_vectors(spec, job.instance->graph.n())) {
            InstanceRecord rec = new_record(job, x);
            try {
                per_input(engine, job, x, rec);
            } catch (const Error &e) {
                rec.pass = false;
                rec.error = e.what();
            }
            out.push_back(std::move(rec));
        }
        return out;
    });
    return collect(spec, std::move(results));
}

bool zero_error(const std::vector<Value> &outputs) {
    int leaders = 0, gave_up = 0;
    for (const auto &v : outputs) {
        if (v.is_string()) {
            gave_up++;
        } else if (v.as_int() == 1) {
            leaders++;
        } else if (v.as_int() != 0) {
            return false;
        }
    }
    if (gave_up > 0) {
        return gave_up == static_cast<int>(outputs.size());
    }
    return leaders == 1;
}

bool elected(const std::vector<Value> &outputs) { return !outputs.empty() && !outputs[0].is_string(); }

}  // namespace

CampaignReport verify_qsv(const CampaignSpec &spec) {
    quantum::QhmOptions lane_options;
    lane_options.w_override = spec.w_override;
    std::map<int, ProgramPtr> programs;
    for (int n = spec.n_min; n <= spec.n_max; n++) {
        for (int N : N_values_for(spec, n)) {
            if (!programs.count(N)) {
                programs[N] = quantum::qsv(N, lane_options);
            }
        }
    }
    return per_input_campaign(spec, [&](runtime::Engine &engine, const Job &job, const std::vector<int> &x,
                                        InstanceRecord &rec) {
        Value expected(weight(x) == 1);
        rec.expected = expected.to_json();
        evaluate(spec, engine, job, programs.at(job.N), x, all_equal_to(expected), rec);
    });
}

CampaignReport verify_lemma1(const CampaignSpec &spec) {
    quantum::QhmOptions options;
    options.w_override = spec.w_override;
    return per_input_campaign(spec, [&](runtime::Engine &engine, const Job &job, const std::vector<int> &x,
                                        InstanceRecord &rec) {
        const int n = job.instance->graph.n();
        const int w = weight(x);
        nlohmann::json lanes = nlohmann::json::array();
        for (auto [h, m] : quantum::qsv_lanes(job.N)) {
            auto program = quantum::q_hm(h, m, job.N, options);
            bool targeted = h == w && m == n;
            std::set<std::string> broken;
            Check check = [&](const std::vector<Value> &outputs) {
                bool ok = true;
                for (const auto &v : outputs) {
                    if (!v.is_bool() || !(v == outputs[0])) {
                        broken.insert("agreement");
                        return false;
                    }
                }
                if (targeted && outputs[0].as_bool() != (w <= 1)) {
                    broken.insert("correct-at-target");
                    ok = false;
                }
                if (w <= 1 && !outputs[0].as_bool()) {
                    broken.insert("true-when-at-most-one");
                    ok = false;
                }
                return ok;
            };
            InstanceRecord lane = new_record(job, x);
            evaluate(spec, engine, job, program, x, check, lane);
            if (lane.rounds != quantum::qhm_rounds(job.N)) {
                broken.insert("rounds");
                lane.pass = false;
            }
            rec.branches = runtime::saturating_add(rec.branches, lane.branches);
            rec.mass = rec.mass == 0 ? lane.mass : std::min(rec.mass, lane.mass);
            rec.rounds = std::max(rec.rounds, lane.rounds);
            rec.cbits = std::max(rec.cbits, lane.cbits);
            rec.qubits = std::max(rec.qubits, lane.qubits);
            rec.pass = rec.pass && lane.pass;
            if (!lane.pass && rec.replay.is_null()) {
                rec.replay = lane.replay;
                if (!rec.replay.is_null()) {
                    rec.replay["lane"] = {h, m};
                }
            }
            lanes.push_back({{"h", h}, {"m", m}, {"verdicts", lane.verdicts}, {"broken", broken}});
        }
        rec.expected = {{"target", {w, n}}, {"target_value", w <= 1}};
        rec.details["lanes"] = lanes;
    });
}

CampaignReport verify_qsym(const CampaignSpec &spec) {
    const auto &f = spec.function;
    std::map<int, ProgramPtr> programs;
    for (int n = spec.n_min; n <= spec.n_max; n++) {
        for (int N : N_values_for(spec, n)) {
            if (!programs.count(N)) {
                programs[N] = quantum::qsym(f, N);
            }
        }
    }
    const int L = quantum::qsym_refinement_stages(f.k);
    auto report = per_input_campaign(spec, [&](runtime::Engine &engine, const Job &job, const std::vector<int> &x,
                                               InstanceRecord &rec) {
        Value expected = f(weight(x));
        rec.expected = expected.to_json();
        runtime::Distribution d;
        evaluate(spec, engine, job, programs.at(job.N), x, all_equal_to(expected), rec, &d);
        int bound = quantum::qsym_round_bound(f.k, job.N);
        int stages = 0;
        for (const auto &o : d.outcomes) {
            // Each verification pass takes exactly qhm_rounds(N); weighing is shorter.
            stages = std::max(stages, o.rounds / quantum::qhm_rounds(job.N) - 1);
        }
        rec.details = {{"refinement_stages", stages}, {"stage_limit", L}, {"round_bound", bound}};
        if (rec.rounds > bound || stages > L) {
            rec.pass = false;
        }
    });
    report.aggregate["function"] = f.name;
    report.aggregate["k"] = f.k;
    report.aggregate["stage_limit"] = L;
    return report;
}

CampaignReport zqle_stats(const CampaignSpec &spec) {
    auto instances = graph_instances(spec);
    auto jobs = make_jobs(spec, instances);
    std::map<int, ProgramPtr> programs;
    for (const auto &job : jobs) {
        if (!programs.count(job.N)) {
            programs[job.N] = quantum::zqle(job.N);
        }
    }
    auto results = run_jobs(spec, jobs, [&](const Job &job) {
        const int n = job.instance->graph.n();
        std::vector<int> x(n, 0);
        InstanceRecord rec = new_record(job, x);
        try {
            runtime::Engine engine(job.instance->graph, {job.N});
            runtime::Distribution d;
            evaluate(spec, engine, job, programs.at(job.N), x, zero_error, rec, &d);
            double success = 0;
            for (const auto &o : d.outcomes) {
                if (elected(o.outputs)) {
                    success += o.probability;
                }
            }
            double exact = quantum::zqle_success_probability(n, job.N);
            double single = n * (1.0 / n) * std::pow(1 - 1.0 / n, n - 1);
            double slack = spec.mode == Mode::Branch ? spec.mass_tolerance
                                                     : 5 * std::sqrt(exact * (1 - exact) / spec.trials) + 1e-12;
            bool matches = std::abs(success - exact) <= slack;
            bool bounded = job.N < n || success >= single - slack;
            rec.expected = {{"success", exact}, {"single_attempt_bound", single}};
            rec.details = {{"success", success}, {"give_up", 1 - success}, {"matches_formula", matches},
                           {"meets_bound", bounded}};
            rec.pass = rec.pass && matches && bounded;
        } catch (const Error &e) {
            rec.pass = false;
            rec.error = e.what();
        }
        return std::vector<InstanceRecord>{std::move(rec)};
    });
    return collect(spec, std::move(results));
}

CampaignReport verify_classical(const CampaignSpec &spec) {
    auto classical_spec = spec;
    classical_spec.mode = Mode::Sampling;
    classical_spec.trials = 1;
    return per_input_campaign(classical_spec, [&](runtime::Engine &engine, const Job &job, const std::vector<int> &x,
                                                  InstanceRecord &rec) {
        const int delta = job.N;
        auto tally = [&](const ProgramPtr &program, const std::vector<Value> &inputs, const Value &expected,
                         const char *name) {
            auto tr = runtime::run_sampling(engine.graph(), *program, inputs, engine.global(), 0);
            bool ok = all_equal_to(expected)(tr.outputs) && tr.rounds <= delta + 1;
            rec.details[name] = {{"rounds", tr.rounds}, {"ok", ok}, {"expected", expected.to_json()}};
            rec.rounds = std::max(rec.rounds, tr.rounds);
            rec.cbits = std::max(rec.cbits, tr.cbits);
            rec.branches++;
            rec.pass = rec.pass && ok;
            if (!ok && rec.replay.is_null()) {
                rec.replay = replay_handle(job, x, nullptr, 0);
                rec.replay["program"] = program->key();
            }
        };
        // Colors are party-local data; i % 3 gives both agreeing and conflicting active sets.
        std::vector<Value> colored;
        ValueList active_colors;
        for (std::size_t i = 0; i < x.size(); i++) {
            Value color(static_cast<std::int64_t>(i % 3));
            colored.push_back(ValueList{Value(x[i] != 0), color});
            if (x[i]) {
                active_colors.push_back(color);
            }
        }
        std::sort(active_colors.begin(), active_colors.end());
        active_colors.erase(std::unique(active_colors.begin(), active_colors.end()), active_colors.end());
        int report_case = std::min<int>(2, static_cast<int>(active_colors.size()));
        tally(classical::color_count(delta), colored, ValueList{Value(report_case), Value(active_colors)},
              "color_count");
        tally(classical::consistency(delta), colored, Value(active_colors.size() <= 1), "consistency");
        tally(classical::compute_t0(delta), as_inputs(x), Value(weight(x) == 0), "t0");
        rec.mass = 1;
        rec.expected = {{"colors", Value(active_colors).to_json()}, {"all_zero", weight(x) == 0}};
    });
}

CampaignReport verify_symmetric_guess(const CampaignSpec &spec) {
    std::map<int, ProgramPtr> programs;
    for (int n = std::max(2, spec.n_min); n <= spec.n_max; n++) {
        programs[n] = classical::eval_symmetric_guess(n);
    }
    auto instances = graph_instances(spec);
    std::vector<Job> jobs;
    for (const auto &inst : instances) {
        jobs.push_back({&inst, inst.graph.n()});
    }
    auto results = run_jobs(spec, jobs, [&](const Job &job) {
        std::vector<InstanceRecord> out;
        const int n = job.instance->graph.n();
        for (const auto &x : input_vectors(spec, n)) {
            InstanceRecord rec = new_record(job, x);
            try {
                Value expected(Rational(weight(x)));
                rec.expected = expected.to_json();
                auto tr = runtime::run_sampling(job.instance->graph, *programs.at(n), as_inputs(x), {n}, 0);
                rec.branches = 1;
                rec.mass = 1;
                rec.rounds = tr.rounds;
                rec.cbits = tr.cbits;
                rec.pass = all_equal_to(expected)(tr.outputs) && tr.rounds == 2 * n;
                if (!rec.pass) {
                    rec.verdicts.push_back({{"outputs", outputs_json(tr.outputs)}});
                    rec.replay = replay_handle(job, x, nullptr, 0);
                }
            } catch (const Error &e) {
                rec.pass = false;
                rec.error = e.what();
            }
            out.push_back(std::move(rec));
        }
        return out;
    });
    return collect(spec, std::move(results));
}

CampaignReport verify_scaledown(const CampaignSpec &spec, double tolerance) {
    quantum::QhmOptions options;
    options.stop = quantum::StopAt::AfterScaledown;
    options.w_override = spec.w_override;
    auto instances = graph_instances(spec);
    auto jobs = make_jobs(spec, instances);
    auto results = run_jobs(spec, jobs, [&](const Job &job) {
        const auto &g = job.instance->graph;
        const int n = g.n();
        std::vector<InstanceRecord> out;
        for (const auto &x : input_vectors(spec, n)) {
            const int w = weight(x);
            if (w == 0) {
                continue;
            }
            InstanceRecord rec = new_record(job, x);
            try {
                auto program = quantum::q_hm(w, n, job.N, options);
                runtime::RunOptions run_options;
                auto leaves = runtime::run_branches(g, *program, as_inputs(x), {job.N}, run_options);
                auto reference = qsim::ghz_state(w);
                double mass = 0;
                double worst = 1;
                int reached = 0;
                for (const auto &leaf : leaves) {
                    mass += leaf.transcript.probability;
                    rec.rounds = std::max(rec.rounds, leaf.transcript.rounds);
                    const Value &first = leaf.transcript.outputs.at(0);
                    if (!first.is_list()) {
                        continue;
                    }
                    reached++;
                    const auto *state = leaf.world->factors().at("");
                    std::vector<std::pair<int, qsim::RegisterId>> owned;
                    for (auto r : state->registers()) {
                        const auto &meta = state->meta(r);
                        if (meta.tag == qsim::RegisterTag::R && x.at(meta.owner)) {
                            owned.emplace_back(meta.owner, r);
                        }
                    }
                    std::sort(owned.begin(), owned.end());
                    std::vector<qsim::RegisterId> regs;
                    for (auto &[owner, r] : owned) {
                        regs.push_back(r);
                    }
                    double f = qsim::fidelity(*state, reference, regs);
                    if (f < worst) {
                        worst = f;
                    }
                    if (f < 1 - tolerance && rec.replay.is_null()) {
                        rec.replay = replay_handle(job, x, nullptr, std::nullopt);
                        rec.replay["path"] = leaf.transcript.path;
                        rec.replay["program"] = program->key();
                    }
                }
                rec.branches = leaves.size();
                rec.mass = mass;
                rec.expected = {{"fidelity_at_least", 1 - tolerance}};
                rec.details = {{"h", w}, {"m", n}, {"branches_reaching", reached}, {"min_fidelity", worst}};
                rec.pass = reached > 0 && worst >= 1 - tolerance && std::abs(mass - 1) <= spec.mass_tolerance;
            } catch (const Error &e) {
                rec.pass = false;
                rec.error = e.what();
            }
            out.push_back(std::move(rec));
        }
        return out;
    });
    auto report = collect(spec, std::move(results));
    report.algorithm = "scaledown";
    return report;
}

CampaignReport meter_rounds(const CampaignSpec &meter_spec) {
    // Metering runs one sampled execution per lane; branch caps do not apply.
    CampaignSpec spec = meter_spec;
    spec.mode = Mode::Sampling;
    auto instances = graph_instances(spec);
    auto jobs = make_jobs(spec, instances);
    auto results = run_jobs(spec, jobs, [&](const Job &job) {
        const int n = job.instance->graph.n();
        // All-ones usually stops at the first consistency check; a single active
        // party always runs the full schedule.
        std::vector<int> ones(n, 1);
        std::vector<int> single(n, 0);
        single[0] = 1;
        InstanceRecord rec = new_record(job, ones);
        try {
            const auto &g = job.instance->graph;
            nlohmann::json lanes = nlohmann::json::array();
            for (auto [h, m] : quantum::qsv_lanes(job.N)) {
                nlohmann::json lane{{"h", h}, {"m", m}};
                for (const auto &x : {ones, single}) {
                    auto tr = runtime::run_sampling(g, *quantum::q_hm(h, m, job.N), as_inputs(x), {job.N}, spec.seed);
                    lane["rounds"] = std::max(lane.value("rounds", 0), tr.rounds);
                    lane["cbits"] = std::max<std::uint64_t>(lane.value("cbits", std::uint64_t{0}), tr.cbits);
                    lane["qubits"] = std::max<std::uint64_t>(lane.value("qubits", std::uint64_t{0}), tr.qubits);
                    rec.rounds = std::max(rec.rounds, tr.rounds);
                    rec.cbits = std::max(rec.cbits, tr.cbits);
                    rec.qubits = std::max(rec.qubits, tr.qubits);
                    rec.pass = rec.pass && tr.rounds == quantum::qhm_rounds(job.N);
                }
                lanes.push_back(lane);
            }
            auto t0 = runtime::run_sampling(g, *classical::compute_t0(job.N), as_inputs(ones), {job.N}, spec.seed);
            rec.pass = rec.pass && t0.rounds <= job.N + 1;
            rec.branches = lanes.size() + 1;
            rec.mass = 1;
            rec.expected = {{"qhm_rounds", quantum::qhm_rounds(job.N)}, {"t0_rounds_max", job.N + 1}};
            rec.details = {{"lanes", lanes}, {"t0_rounds", t0.rounds}};
        } catch (const Error &e) {
            rec.pass = false;
            rec.error = e.what();
        }
        return std::vector<InstanceRecord>{std::move(rec)};
    });
    auto report = collect(spec, std::move(results));
    report.algorithm = "meter";
    std::vector<double> xs, ys;
    for (const auto &r : report.records) {
        if (r.error.empty()) {
            xs.push_back(r.N);
            ys.push_back(r.rounds);
        }
    }
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (xs.size() >= 2 && *lo != *hi) {
        auto fit = fit_line(xs, ys);
        report.aggregate["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"residual", fit.residual}};
        if (fit.residual > 1e-6) {
            report.violations.push_back("q_hm rounds are not affine in N");
        }
    }
    report.aggregate["schedule"] = "rounds = 5 N";
    report.aggregate["qsym_stages_k4"] = quantum::qsym_refinement_stages(4);
    return report;
}

std::vector<runtime::Transcript> replay_record(const CampaignSpec &spec, const nlohmann::json &handle) {
    auto g = netgraph::parse_graph(handle.at("graph").get<std::string>());
    const int N = handle.at("N").get<int>();
    std::vector<int> x = handle.at("input").get<std::vector<int>>();
    quantum::QhmOptions options;
    options.w_override = spec.w_override;
    ProgramPtr root;
    switch (spec.algorithm) {
        case Algorithm::Qsv:
            root = quantum::qsv(N, options);
            break;
        case Algorithm::Qhm: {
            auto lane = handle.at("lane");
            root = quantum::q_hm(lane.at(0).get<int>(), lane.at(1).get<int>(), N, options);
            break;
        }
        case Algorithm::Qsym:
            root = quantum::qsym(spec.function, N);
            break;
        case Algorithm::Zqle:
            root = quantum::zqle(N);
            break;
        default:
            throw LookupError("no replay for " + algorithm_name(spec.algorithm));
    }
    if (handle.contains("seed")) {
        return {runtime::run_sampling(g, *root, as_inputs(x), {N}, handle.at("seed").get<std::uint64_t>())};
    }
    runtime::Engine engine(g, {N});
    engine.distribution(*root, as_inputs(x));
    std::vector<runtime::Transcript> out;
    for (const auto &segment : handle.at("segments")) {
        const auto *call = engine.find_call(segment.at("call").get<std::string>());
        if (!call) {
            throw LookupError("replay segment does not match any evaluated call");
        }
        auto path = segment.at("path").get<std::vector<std::uint32_t>>();
        out.push_back(runtime::replay(g, *call->program, call->inputs, {N}, path).transcript);
    }
    return out;
}

CampaignReport run_campaign(const CampaignSpec &spec) {
    switch (spec.algorithm) {
        case Algorithm::Qsv:
            return verify_qsv(spec);
        case Algorithm::Qhm:
            return verify_lemma1(spec);
        case Algorithm::Zqle:
            return zqle_stats(spec);
        case Algorithm::Qsym:
            return verify_qsym(spec);
        case Algorithm::T0:
        case Algorithm::ColorCount:
            return verify_classical(spec);
        case Algorithm::View:
            return verify_symmetric_guess(spec);
    }
    throw LookupError("unknown algorithm");
}

}  // namespace anonq::harness
