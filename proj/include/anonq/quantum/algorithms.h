#ifndef ANONQ_QUANTUM_ALGORITHMS_H
#define ANONQ_QUANTUM_ALGORITHMS_H

#include <string>
#include <utility>
#include <vector>

#include "anonq/common/value.h"
#include "anonq/quantum/qhm.h"

namespace anonq::quantum {

/// (h, m) pairs run by the verification procedure, in lane order after the T0 lane.
std::vector<std::pair<int, int>> qsv_lanes(int N);

/// Input bool x. Output true iff |x| == 1, with zero error. 5N rounds.
/// `lane_options` is passed to every (h, m) lane; with_outcome is ignored.
ProgramPtr qsv(int N, const QhmOptions &lane_options = {});
/// As qsv, but parties that see a witness of |x| != 1 output their outcome
/// r (0..3, or 4 if inactive) instead of false. Output true when |x| == 1.
ProgramPtr qsv_prime(int N);

/// Zero-error leader election. Input ignored. Output 1 (leader), 0, or "give-up".
ProgramPtr zqle(int N);
/// Exact success probability of zqle on n parties: every s in [2..N] is an
/// independent attempt that succeeds with probability n (1/s)(1-1/s)^(n-1);
/// the run succeeds if any attempt does.
double zqle_success_probability(int n, int N);

/// Symmetric Boolean function given by its values on |x| = 0..k and one value
/// for every |x| > k.
struct SymmetricFunction {
    std::string name;
    int k = 0;
    std::vector<Value> table;
    Value tail;

    Value operator()(int weight) const;
};

/// 1 iff |x| == j (table up to k = j).
SymmetricFunction exactly(int j);
/// 1 iff |x| <= j.
SymmetricFunction at_most(int j);

/// Number of refinement stages before the closing pass.
int qsym_refinement_stages(int k);
/// Upper bound on the rounds of qsym.
int qsym_round_bound(int k, int N);

/// Input bool x. Output f(|x|), exactly.
ProgramPtr qsym(const SymmetricFunction &f, int N);

}  // namespace anonq::quantum

#endif
