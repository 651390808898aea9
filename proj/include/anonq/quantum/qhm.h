#ifndef ANONQ_QUANTUM_QHM_H
#define ANONQ_QUANTUM_QHM_H

#include <optional>

#include "anonq/qsim/symbols.h"
#include "anonq/runtime/program.h"

namespace anonq::quantum {

using runtime::ProgramPtr;

/// Where a probe run of the (h, m) subroutine stops. Probe runs halt at the
/// stop point with output ["probe", active] and leave the state in place.
enum class StopAt { End, AfterConsistency, AfterScaledown, AfterW };

struct QhmOptions {
    /// Output [verdict, r] instead of the verdict alone; r is the computational
    /// outcome of R (0..3), or 4 for a party that was never active.
    bool with_outcome = false;
    StopAt stop = StopAt::End;
    /// Replaces W_h; used only for negative controls.
    std::optional<qsim::Matrix4> w_override;
};

/// Sentinel outcome reported by inactive parties.
inline constexpr int kInactiveOutcome = 4;

/// Input bool x. Output bool: false means a witness that |x| != h was seen
/// (when |x| <= m). Runs exactly qhm_rounds(N) rounds.
ProgramPtr q_hm(int h, int m, int N, QhmOptions options = {});

/// Fixed round budget shared by all (h, m) lanes.
inline int qhm_rounds(int N) { return 5 * N; }
/// Round in which the last consistency check finishes.
inline int qhm_natural_end(int N, int m) { return 3 * N + 2 * m; }

}  // namespace anonq::quantum

#endif
