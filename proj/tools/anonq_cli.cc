#include <fstream>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "anonq/common/errors.h"
#include "anonq/harness/campaign.h"
#include "anonq/netgraph/enumerate.h"
#include "anonq/quantum/w_unitary.h"

using namespace anonq;
using harness::CampaignSpec;

namespace {

struct CommonFlags {
    std::string n = "2..3";
    std::vector<int> upper_bounds;
    std::string mode = "branch";
    std::uint64_t seed = 1;
    int trials = 10000;
    std::string out;
    std::string source = "enumerate";
    std::vector<std::string> fixtures;
    std::string graph_file;
    int random_graphs = 5;
    int numberings = 0;
    int inputs = 0;
    int workers = 0;
    int max_mult = 1;
    int branch_cap = 4;
    std::vector<int> offsets;
    bool failures_only = false;
};

void add_common(CLI::App *app, CommonFlags &f) {
    app->add_option("--n", f.n, "party count or range a..b");
    app->add_option("--upper-bound", f.upper_bounds, "values of N (default N = n)");
    app->add_option("--offset", f.offsets, "N = n + offset, repeatable (ignored with --upper-bound)");
    app->add_flag("--failures-only", f.failures_only, "keep only failing records in the report");
    app->add_option("--mode", f.mode, "branch or sample")->check(CLI::IsMember({"branch", "sample"}));
    app->add_option("--seed", f.seed);
    app->add_option("--trials", f.trials, "trials per instance in sample mode");
    app->add_option("--out", f.out, "JSON-lines report path");
    app->add_option("--source", f.source, "enumerate, fixtures, random or file")
        ->check(CLI::IsMember({"enumerate", "fixtures", "random", "file"}));
    app->add_option("--fixture", f.fixtures, "fixture names (ring(4), example1a, ...)");
    app->add_option("--graph-file", f.graph_file);
    app->add_option("--random-graphs", f.random_graphs, "graphs per n for --source random");
    app->add_option("--numberings", f.numberings, "sampled numberings per graph (0: all)");
    app->add_option("--inputs", f.inputs, "sampled inputs per graph (0: all)");
    app->add_option("--workers", f.workers);
    app->add_option("--max-mult", f.max_mult, "edge multiplicity cap for enumeration");
    app->add_option("--branch-cap", f.branch_cap, "largest n allowed in branch mode");
}

std::pair<int, int> parse_range(const std::string &text) {
    std::smatch m;
    if (std::regex_match(text, m, std::regex(R"((\d+)(?:\.\.(\d+))?)"))) {
        int a = std::stoi(m[1]);
        int b = m[2].matched ? std::stoi(m[2]) : a;
        return {a, b};
    }
    throw ValidationError("bad range '" + text + "'");
}

CampaignSpec to_spec(const CommonFlags &f, harness::Algorithm algorithm) {
    CampaignSpec spec;
    spec.algorithm = algorithm;
    std::tie(spec.n_min, spec.n_max) = parse_range(f.n);
    spec.N_values = f.upper_bounds;
    if (!f.offsets.empty()) {
        spec.N_offsets = f.offsets;
    }
    spec.keep_passing = !f.failures_only;
    spec.mode = f.mode == "branch" ? harness::Mode::Branch : harness::Mode::Sampling;
    spec.seed = f.seed;
    spec.trials = f.trials;
    spec.out_path = f.out;
    spec.fixtures = f.fixtures;
    spec.graph_file = f.graph_file;
    spec.random_graphs = f.random_graphs;
    spec.numbering_samples = f.numberings;
    spec.input_samples = f.inputs;
    spec.workers = f.workers;
    spec.max_multiplicity = f.max_mult;
    spec.branch_cap_n = f.branch_cap;
    if (f.source == "fixtures") {
        spec.source = harness::GraphSource::Fixtures;
    } else if (f.source == "random") {
        spec.source = harness::GraphSource::Random;
    } else if (f.source == "file") {
        spec.source = harness::GraphSource::File;
    }
    return spec;
}

quantum::SymmetricFunction parse_function(const std::string &name, const std::vector<int> &table, int tail) {
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"(exactly-(\d+))"))) {
        return quantum::exactly(std::stoi(m[1]));
    }
    if (std::regex_match(name, m, std::regex(R"(at-most-(\d+))"))) {
        return quantum::at_most(std::stoi(m[1]));
    }
    if (name == "table") {
        if (table.empty()) {
            throw ValidationError("--table needs at least one value");
        }
        quantum::SymmetricFunction f{"table", static_cast<int>(table.size()) - 1, {}, Value(tail != 0)};
        for (int v : table) {
            f.table.push_back(Value(v != 0));
        }
        return f;
    }
    throw ValidationError("unknown function '" + name + "'");
}

int finish(const harness::CampaignReport &report, const std::string &out) {
    if (!out.empty()) {
        report.write_jsonl(out);
    }
    for (const auto &r : report.records) {
        if (!r.pass) {
            std::cerr << "FAIL " << r.to_json().dump() << "\n";
        }
    }
    std::cout << report.summary().dump() << "\n";
    return report.ok() ? 0 : 1;
}

int selftest_wunitary(int h_max) {
    bool ok = true;
    for (int h = 0; h <= h_max; h++) {
        try {
            auto w = quantum::build_W(h);
            double amp = h >= 2 ? quantum::max_constant_string_amplitude(w) : 0.0;
            double unit = qsim::unitarity_error(w.matrix);
            bool pass = amp <= 1e-9 && unit <= 1e-9;
            ok = ok && pass;
            std::cout << "W_" << h << " constant-string amplitude " << amp << " unitarity error " << unit << " "
                      << (pass ? "ok" : "FAIL") << "\n";
        } catch (const Error &e) {
            ok = false;
            std::cout << "W_" << h << " FAIL " << e.what() << "\n";
        }
    }
    return ok ? 0 : 1;
}

int enumerate_graphs_cmd(int n, int max_mult, bool self_loops, const std::string &out) {
    netgraph::GraphEnumerationOptions options;
    options.n = n;
    options.max_multiplicity = max_mult;
    options.allow_self_loops = self_loops;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            throw Error("cannot write " + out);
        }
    }
    std::uint64_t count = 0;
    netgraph::for_each_graph(options, [&](const netgraph::PortDigraph &g) {
        if (file) {
            file << netgraph::serialize_graph(g) << "\n";
        }
        count++;
        return true;
    });
    std::cout << count << " strongly connected digraphs on " << n << " nodes\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact quantum algorithms on anonymous networks: simulator and verification campaigns"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string fn_name = "exactly-1";
    std::vector<int> fn_table;
    int fn_tail = 0;
    bool corrupt_w = false;

    auto *verify = app.add_subcommand("verify", "exactness campaigns");
    verify->require_subcommand(1);
    auto *v_qsv = verify->add_subcommand("qsv", "QSV outputs H1 on every branch");
    auto *v_lemma = verify->add_subcommand("lemma1", "per-lane properties of the (h, m) subroutine");
    auto *v_qsym = verify->add_subcommand("qsym", "QSYM computes a symmetric function exactly");
    auto *v_classical = verify->add_subcommand("classical", "color counting, consistency and T0 against set oracles");
    auto *v_view = verify->add_subcommand("view", "symmetric guess with m = n equals the Hamming weight");
    auto *v_scale = verify->add_subcommand("scaledown", "GHZ fidelity after scale-down at the correct guess");
    for (auto *sub : {v_qsv, v_lemma, v_qsym, v_classical, v_view, v_scale}) {
        add_common(sub, flags);
    }
    for (auto *sub : {v_qsv, v_lemma, v_scale}) {
        sub->add_flag("--corrupt-w", corrupt_w, "replace W_h by the identity (negative control)");
    }
    v_qsym->add_option("--function", fn_name, "exactly-J, at-most-J or table");
    v_qsym->add_option("--table", fn_table, "values for weights 0..k with --function table")->delimiter(',');
    v_qsym->add_option("--tail", fn_tail, "value for weights above k with --function table");

    auto *zqle = app.add_subcommand("zqle", "leader election");
    zqle->require_subcommand(1);
    auto *z_stats = zqle->add_subcommand("stats", "success probability and zero-error check");
    add_common(z_stats, flags);

    auto *meter = app.add_subcommand("meter", "round and bit metering");
    add_common(meter, flags);

    auto *graphs = app.add_subcommand("graphs", "graph utilities");
    graphs->require_subcommand(1);
    auto *g_enum = graphs->add_subcommand("enumerate", "list strongly connected digraphs");
    int g_n = 3;
    int g_mult = 1;
    bool g_loops = false;
    std::string g_out;
    g_enum->add_option("--n", g_n)->required();
    g_enum->add_option("--max-mult", g_mult);
    g_enum->add_flag("--self-loops", g_loops);
    g_enum->add_option("--out", g_out);

    auto *selftest = app.add_subcommand("selftest", "built-in checks");
    selftest->require_subcommand(1);
    auto *s_w = selftest->add_subcommand("wunitary", "W_h leaves no amplitude on constant strings");
    int h_max = 8;
    s_w->add_option("--h-max", h_max);

    CLI11_PARSE(app, argc, argv);

    try {
        auto campaign = [&](harness::Algorithm algorithm) {
            CampaignSpec spec = to_spec(flags, algorithm);
            if (corrupt_w) {
                spec.w_override = qsim::identity4();
            }
            return spec;
        };
        if (v_qsv->parsed()) {
            return finish(harness::verify_qsv(campaign(harness::Algorithm::Qsv)), flags.out);
        }
        if (v_lemma->parsed()) {
            return finish(harness::verify_lemma1(campaign(harness::Algorithm::Qhm)), flags.out);
        }
        if (v_qsym->parsed()) {
            auto spec = campaign(harness::Algorithm::Qsym);
            spec.function = parse_function(fn_name, fn_table, fn_tail);
            return finish(harness::verify_qsym(spec), flags.out);
        }
        if (v_classical->parsed()) {
            return finish(harness::verify_classical(campaign(harness::Algorithm::ColorCount)), flags.out);
        }
        if (v_view->parsed()) {
            return finish(harness::verify_symmetric_guess(campaign(harness::Algorithm::View)), flags.out);
        }
        if (v_scale->parsed()) {
            return finish(harness::verify_scaledown(campaign(harness::Algorithm::Qhm)), flags.out);
        }
        if (z_stats->parsed()) {
            return finish(harness::zqle_stats(campaign(harness::Algorithm::Zqle)), flags.out);
        }
        if (meter->parsed()) {
            auto spec = campaign(harness::Algorithm::Qhm);
            if (flags.source == "enumerate") {
                spec.source = harness::GraphSource::Fixtures;
                auto [lo, hi] = parse_range(flags.n);
                for (int n = lo; n <= hi; n++) {
                    spec.fixtures.push_back("ring(" + std::to_string(n) + ")");
                }
            }
            return finish(harness::meter_rounds(spec), flags.out);
        }
        if (g_enum->parsed()) {
            return enumerate_graphs_cmd(g_n, g_mult, g_loops, g_out);
        }
        if (s_w->parsed()) {
            return selftest_wunitary(h_max);
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
