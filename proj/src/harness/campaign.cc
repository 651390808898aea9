#include "anonq/harness/campaign.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <thread>

#include "anonq/common/errors.h"
#include "anonq/netgraph/enumerate.h"
#include "anonq/netgraph/fixtures.h"

namespace anonq::harness {

namespace {

const std::pair<Algorithm, const char *> kNames[] = {
    {Algorithm::Qsv, "qsv"},   {Algorithm::Qhm, "q_hm"},          {Algorithm::Zqle, "zqle"}, {Algorithm::Qsym, "qsym"},
    {Algorithm::T0, "t0"},     {Algorithm::ColorCount, "colorcount"}, {Algorithm::View, "view"},
};

bool is_quantum(Algorithm a) {
    return a == Algorithm::Qsv || a == Algorithm::Qhm || a == Algorithm::Zqle || a == Algorithm::Qsym;
}

void add_numberings(const CampaignSpec &spec, const std::string &id, const netgraph::PortDigraph &g,
                    std::uint64_t salt, std::vector<GraphInstance> &out) {
    if (spec.numbering_samples <= 0) {
        int k = 0;
        netgraph::for_each_port_numbering(g, [&](const netgraph::PortDigraph &h) {
            out.push_back({id, k++, h});
            return true;
        });
        return;
    }
    std::seed_seq seq{spec.numbering_seed, salt};
    std::mt19937_64 rng(seq);
    out.push_back({id, 0, g});
    for (int k = 1; k < spec.numbering_samples; k++) {
        out.push_back({id, k, netgraph::random_port_numbering(g, rng)});
    }
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    for (auto [value, name] : kNames) {
        if (value == a) {
            return name;
        }
    }
    throw LookupError("unknown algorithm");
}

Algorithm parse_algorithm(const std::string &name) {
    for (auto [value, n] : kNames) {
        if (name == n) {
            return value;
        }
    }
    throw LookupError("unknown algorithm '" + name + "'");
}

void validate(const CampaignSpec &spec) {
    if (spec.n_min < 1 || spec.n_max < spec.n_min) {
        throw ValidationError("invalid n range");
    }
    if (spec.mode == Mode::Sampling && spec.trials < 1) {
        throw ValidationError("sampling needs at least one trial");
    }
    if (spec.source == GraphSource::Random && spec.random_graphs < 1) {
        throw ValidationError("random graph source needs a graph count");
    }
    if (spec.source == GraphSource::File && spec.graph_file.empty()) {
        throw ValidationError("file graph source needs a path");
    }
    if (spec.mode == Mode::Branch && is_quantum(spec.algorithm) &&
        (spec.source == GraphSource::Enumerate || spec.source == GraphSource::Random) &&
        spec.n_max > spec.branch_cap_n) {
        throw ValidationError("branch mode is capped at n <= " + std::to_string(spec.branch_cap_n));
    }
}

std::vector<GraphInstance> graph_instances(const CampaignSpec &spec) {
    validate(spec);
    std::vector<GraphInstance> out;
    switch (spec.source) {
        case GraphSource::Enumerate:
            for (int n = spec.n_min; n <= spec.n_max; n++) {
                netgraph::GraphEnumerationOptions options;
                options.n = n;
                options.max_multiplicity = spec.max_multiplicity;
                options.allow_self_loops = spec.allow_self_loops;
                std::uint64_t index = 0;
                netgraph::for_each_graph(options, [&](const netgraph::PortDigraph &g) {
                    std::string id = "enum:" + std::to_string(n) + ":" + std::to_string(index);
                    add_numberings(spec, id, g, (std::uint64_t(n) << 32) | index, out);
                    index++;
                    return true;
                });
            }
            break;
        case GraphSource::Fixtures: {
            std::vector<std::string> names = spec.fixtures;
            if (names.empty()) {
                names = netgraph::fixture_names_up_to(spec.n_max);
            }
            std::uint64_t salt = 0;
            for (const auto &name : names) {
                auto g = netgraph::fixture(name);
                if (g.n() >= spec.n_min && g.n() <= spec.n_max) {
                    add_numberings(spec, name, g, salt, out);
                }
                salt++;
            }
            break;
        }
        case GraphSource::File:
            add_numberings(spec, spec.graph_file, netgraph::load_graph(spec.graph_file), 0, out);
            break;
        case GraphSource::Random:
            for (int n = spec.n_min; n <= spec.n_max; n++) {
                for (int i = 0; i < spec.random_graphs; i++) {
                    std::seed_seq seq{spec.graph_seed, std::uint64_t(n), std::uint64_t(i)};
                    std::mt19937_64 rng(seq);
                    auto g = netgraph::random_strongly_connected(n, rng);
                    std::string id = "random:" + std::to_string(n) + ":" + std::to_string(i);
                    add_numberings(spec, id, g, (std::uint64_t(n) << 32) | std::uint64_t(i), out);
                }
            }
            break;
    }
    if (spec.mode == Mode::Branch && is_quantum(spec.algorithm)) {
        for (const auto &inst : out) {
            if (inst.graph.n() > spec.branch_cap_n) {
                throw ValidationError("branch mode is capped at n <= " + std::to_string(spec.branch_cap_n) + "; " +
                                      inst.graph_id + " has " + std::to_string(inst.graph.n()));
            }
        }
    }
    return out;
}

std::vector<std::vector<int>> input_vectors(const CampaignSpec &spec, int n) {
    std::vector<std::vector<int>> out;
    auto from_mask = [n](std::uint64_t mask) {
        std::vector<int> x(n);
        for (int i = 0; i < n; i++) {
            x[i] = static_cast<int>((mask >> i) & 1);
        }
        return x;
    };
    if (spec.input_samples <= 0) {
        if (n > 20) {
            throw CapacityError("too many parties for exhaustive inputs");
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask++) {
            out.push_back(from_mask(mask));
        }
        return out;
    }
    std::seed_seq seq{spec.input_seed, std::uint64_t(n)};
    std::mt19937_64 rng(seq);
    for (int k = 0; k < spec.input_samples; k++) {
        out.push_back(from_mask(rng()));
    }
    return out;
}

std::vector<int> N_values_for(const CampaignSpec &spec, int n) {
    std::vector<int> out;
    if (!spec.N_values.empty()) {
        for (int N : spec.N_values) {
            if (N >= n) {
                out.push_back(N);
            }
        }
        return out;
    }
    for (int d : spec.N_offsets) {
        if (d >= 0) {
            out.push_back(n + d);
        }
    }
    return out;
}

LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("a line fit needs two or more points");
    }
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (std::abs(den) < 1e-12) {
        throw DomainError("a line fit needs two distinct x values");
    }
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); i++) {
        fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
    }
    return fit;
}

nlohmann::json InstanceRecord::to_json() const {
    nlohmann::json j{{"graph", graph_id},     {"numbering", numbering_id}, {"n", n},           {"N", N},
                     {"input", input},        {"branches", branches},      {"mass", mass},     {"verdicts", verdicts},
                     {"expected", expected},  {"pass", pass},              {"rounds", rounds}, {"cbits", cbits},
                     {"qubits", qubits}};
    if (!details.empty()) {
        j["details"] = details;
    }
    if (!error.empty()) {
        j["error"] = error;
    }
    if (!replay.is_null()) {
        j["replay"] = replay;
    }
    return j;
}

void CampaignReport::add(InstanceRecord record) {
    if (!record.error.empty()) {
        errors++;
    } else if (record.pass) {
        passed++;
    } else {
        failed++;
    }
    max_rounds = std::max(max_rounds, record.rounds);
    max_cbits = std::max(max_cbits, record.cbits);
    max_qubits = std::max(max_qubits, record.qubits);
    records.push_back(std::move(record));
}

nlohmann::json CampaignReport::summary() const {
    return {{"summary", true},          {"algorithm", algorithm}, {"instances", instances()},
            {"passed", passed},         {"failed", failed},       {"errors", errors}, {"dropped", dropped},
            {"max_rounds", max_rounds}, {"max_cbits", max_cbits}, {"max_qubits", max_qubits},
            {"aggregate", aggregate},   {"violations", violations}, {"ok", ok()}};
}

void CampaignReport::write_jsonl(std::ostream &os) const {
    for (const auto &r : records) {
        os << r.to_json().dump() << "\n";
    }
    os << summary().dump() << "\n";
}

void CampaignReport::write_jsonl(const std::string &path) const {
    std::ofstream f(path);
    if (!f) {
        throw Error("cannot write report to " + path);
    }
    write_jsonl(f);
}

}  // namespace anonq::harness
