#ifndef ANONQ_RUNTIME_SCHEDULER_H
#define ANONQ_RUNTIME_SCHEDULER_H

#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "anonq/netgraph/port_digraph.h"
#include "anonq/runtime/program.h"
#include "anonq/runtime/world.h"
#include "json.hpp"

namespace anonq::runtime {

struct RunOptions {
    /// <= 0 selects the default 20 N + 50.
    int max_rounds = 0;
    /// Process parties n-1..0 within a round instead of 0..n-1.
    bool reverse_party_order = false;
    /// Flat branch enumeration fails beyond this many live branches plus leaves.
    std::size_t branch_cap = 1u << 18;
};

int effective_max_rounds(const RunOptions &options, const GlobalInfo &global);

struct Transcript {
    int rounds = 0;
    std::uint64_t cbits = 0;
    std::uint64_t qubits = 0;
    std::vector<Value> outputs;
    double probability = 1.0;
    /// Choice indices taken at each random event, in execution order.
    std::vector<std::uint32_t> path;

    nlohmann::json to_json() const;
};

struct Leaf {
    Transcript transcript;
    std::shared_ptr<const World> world;
};

/// One sampled execution. Party p draws from a stream seeded by (seed, p).
Transcript run_sampling(const netgraph::PortDigraph &g, const RoundProgram &program, const std::vector<Value> &inputs,
                        const GlobalInfo &global, std::uint64_t seed, const RunOptions &options = {});

/// Every execution branch with its exact probability.
std::vector<Leaf> run_branches(const netgraph::PortDigraph &g, const RoundProgram &program,
                               const std::vector<Value> &inputs, const GlobalInfo &global,
                               const RunOptions &options = {});

/// Re-executes the branch identified by `path`.
Leaf replay(const netgraph::PortDigraph &g, const RoundProgram &program, const std::vector<Value> &inputs,
            const GlobalInfo &global, const std::vector<std::uint32_t> &path, const RunOptions &options = {});

struct ReplaySegment {
    std::string program_key;
    std::vector<Value> inputs;
    std::vector<std::uint32_t> path;
};

/// Branches merged by their output vector.
struct Outcome {
    std::vector<Value> outputs;
    double probability = 0;
    int rounds = 0;
    std::uint64_t cbits = 0;
    std::uint64_t qubits = 0;
    /// Flat runs that reproduce one representative branch.
    std::vector<ReplaySegment> replay;
    /// Number of flat branches merged into this outcome.
    std::uint64_t branches = 1;
};

/// Branch counts saturate instead of wrapping.
inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a + b < a ? ~std::uint64_t{0} : a + b;
}
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    return b != 0 && a > ~std::uint64_t{0} / b ? ~std::uint64_t{0} : a * b;
}

struct Distribution {
    std::vector<Outcome> outcomes;
    double total_probability() const;
    std::uint64_t branch_count() const;
    nlohmann::json to_json() const;
};

/// Merges outcomes with equal output vectors (probabilities add, resources max).
Distribution merge_outcomes(std::vector<Outcome> outcomes);

/// Exact-distribution evaluator for one graph. Caches results per (program, inputs).
class Engine {
   public:
    Engine(const netgraph::PortDigraph &g, GlobalInfo global, RunOptions options = {});

    const netgraph::PortDigraph &graph() const { return g_; }
    const GlobalInfo &global() const { return global_; }
    const RunOptions &options() const { return options_; }

    const Distribution &distribution(const RoundProgram &program, const std::vector<Value> &inputs);
    /// Flat enumeration merged by outputs, bypassing program overrides.
    Distribution flat_distribution(const RoundProgram &program, const std::vector<Value> &inputs);
    std::size_t cache_size() const { return cache_.size(); }

    /// Cache key of one (program, inputs) evaluation; replay handles refer to it.
    static std::string call_key(const std::string &program_key, const std::vector<Value> &inputs);
    struct Call {
        const RoundProgram *program = nullptr;
        std::vector<Value> inputs;
    };
    /// A call evaluated by this engine, or nullptr. Programs must outlive the engine.
    const Call *find_call(const std::string &key) const;

   private:
    std::unordered_map<std::string, Call> calls_;
    netgraph::PortDigraph g_;
    GlobalInfo global_;
    RunOptions options_;
    std::unordered_map<std::string, Distribution> cache_;
};

/// Output distribution as a map, for comparisons.
std::map<std::vector<Value>, double> output_distribution(const Distribution &d);

/// Runs the program on inputs x and on x relabeled by `automorphism` and checks
/// that the output distributions agree after relabeling.
bool assert_anonymity(const RoundProgram &program, const netgraph::PortDigraph &g, const std::vector<Value> &inputs,
                      const std::vector<int> &automorphism, const GlobalInfo &global, const RunOptions &options = {});

}  // namespace anonq::runtime

#endif
