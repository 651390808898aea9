#ifndef ANONQ_HARNESS_CAMPAIGN_H
#define ANONQ_HARNESS_CAMPAIGN_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "anonq/netgraph/port_digraph.h"
#include "anonq/qsim/symbols.h"
#include "anonq/quantum/algorithms.h"
#include "anonq/runtime/scheduler.h"
#include "json.hpp"

namespace anonq::harness {

enum class Algorithm { Qsv, Qhm, Zqle, Qsym, T0, ColorCount, View };
enum class GraphSource { Enumerate, Fixtures, File, Random };
enum class Mode { Branch, Sampling };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string &name);

struct CampaignSpec {
    Algorithm algorithm = Algorithm::Qsv;
    int n_min = 2;
    int n_max = 3;

    GraphSource source = GraphSource::Enumerate;
    int max_multiplicity = 1;
    bool allow_self_loops = false;
    std::vector<std::string> fixtures;
    std::string graph_file;
    /// Graphs per n for GraphSource::Random.
    int random_graphs = 0;
    std::uint64_t graph_seed = 1;

    /// 0 means every numbering; otherwise the given graph followed by
    /// numbering_samples - 1 random renumberings.
    int numbering_samples = 0;
    std::uint64_t numbering_seed = 1;
    /// 0 means every input.
    int input_samples = 0;
    std::uint64_t input_seed = 1;

    /// N = n + offset for each offset, unless N_values is non-empty.
    std::vector<int> N_offsets{0};
    std::vector<int> N_values;

    Mode mode = Mode::Branch;
    std::uint64_t seed = 1;
    int trials = 10000;

    double mass_tolerance = 1e-9;
    /// Branch mode of quantum algorithms is refused above this many parties.
    int branch_cap_n = 4;
    /// 0: one per hardware thread.
    int workers = 0;
    std::string out_path;
    /// false: passing records are counted and then dropped, for sweeps too large to hold.
    bool keep_passing = true;

    /// Replaces W_h in every (h, m) lane. Negative controls only.
    std::optional<qsim::Matrix4> w_override;
    /// Target of qsym campaigns.
    quantum::SymmetricFunction function = quantum::exactly(1);
};

/// Throws ValidationError for an inconsistent spec.
void validate(const CampaignSpec &spec);

struct InstanceRecord {
    std::string graph_id;
    int numbering_id = 0;
    int n = 0;
    int N = 0;
    std::vector<int> input;
    std::uint64_t branches = 0;
    double mass = 0;
    nlohmann::json verdicts = nlohmann::json::array();
    nlohmann::json expected;
    bool pass = false;
    std::string error;
    int rounds = 0;
    std::uint64_t cbits = 0;
    std::uint64_t qubits = 0;
    nlohmann::json details = nlohmann::json::object();
    /// Present on failures: enough to rerun the failing branch or trial.
    nlohmann::json replay;

    nlohmann::json to_json() const;
};

struct CampaignReport {
    std::string algorithm;
    std::vector<InstanceRecord> records;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errors = 0;
    /// Passing records counted in `passed` but not kept in `records`.
    std::size_t dropped = 0;
    int max_rounds = 0;
    std::uint64_t max_cbits = 0;
    std::uint64_t max_qubits = 0;
    /// Campaign-level findings (fits, aggregate probabilities).
    nlohmann::json aggregate = nlohmann::json::object();
    /// Campaign-level assertion failures.
    std::vector<std::string> violations;

    std::size_t instances() const { return passed + failed + errors; }
    bool ok() const { return instances() > 0 && failed == 0 && errors == 0 && violations.empty(); }
    void add(InstanceRecord record);
    nlohmann::json summary() const;
    /// One record per line, then the summary line.
    void write_jsonl(std::ostream &os) const;
    void write_jsonl(const std::string &path) const;
};

/// QSV outputs H1(x) on every branch (or trial).
CampaignReport verify_qsv(const CampaignSpec &spec);
/// Agreement, correctness at (|x|, n), and all-true for |x| <= 1, for every (h, m) lane.
CampaignReport verify_lemma1(const CampaignSpec &spec);
/// QSYM outputs f(|x|) on every branch, within its round and stage budget.
CampaignReport verify_qsym(const CampaignSpec &spec);
/// Zero error, exact success probability, and the single-attempt lower bound.
CampaignReport zqle_stats(const CampaignSpec &spec);
/// color_count / consistency / T0 against direct set computations.
CampaignReport verify_classical(const CampaignSpec &spec);
/// eval_symmetric_guess with m = n returns |x| at every party.
CampaignReport verify_symmetric_guess(const CampaignSpec &spec);
/// At (h, m) = (|x|, n), every branch that reaches the scale-down step leaves
/// the active parties' R registers in (|0^...0^> + |1^...1^>)/sqrt2. Inputs with
/// |x| = 0 are skipped.
CampaignReport verify_scaledown(const CampaignSpec &spec, double tolerance = 1e-9);
/// Resources of every (h, m) lane, T0 and QSYM stage counts; fits rounds = a N + b.
CampaignReport meter_rounds(const CampaignSpec &spec);

/// Re-executes the run behind a failing record of a qsv, q_hm, qsym or zqle
/// campaign: one transcript per flat segment, or the single sampled run.
std::vector<runtime::Transcript> replay_record(const CampaignSpec &spec, const nlohmann::json &handle);

/// Dispatches on spec.algorithm (meter is separate).
CampaignReport run_campaign(const CampaignSpec &spec);

/// Instances of one campaign, before inputs are expanded.
struct GraphInstance {
    std::string graph_id;
    int numbering_id = 0;
    netgraph::PortDigraph graph;
};
std::vector<GraphInstance> graph_instances(const CampaignSpec &spec);
std::vector<std::vector<int>> input_vectors(const CampaignSpec &spec, int n);
std::vector<int> N_values_for(const CampaignSpec &spec, int n);

/// Least-squares line through (x, y); residual is the largest absolute deviation.
struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;
};
LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace anonq::harness

#endif
