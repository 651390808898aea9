#ifndef ANONQ_CLASSICAL_PROGRAMS_H
#define ANONQ_CLASSICAL_PROGRAMS_H

#include "anonq/runtime/program.h"

namespace anonq::classical {

using runtime::ProgramPtr;

/// Input [active: bool, color]. Output [case: int, colors: sorted list]. delta + 1 rounds.
ProgramPtr color_count(int delta);
/// Input [active: bool, value]. Output true iff active values agree. delta + 1 rounds.
ProgramPtr consistency(int delta);
/// Input bool x. Output true iff every x is 0. delta + 1 rounds.
ProgramPtr compute_t0(int delta);
/// Input integer or bool label. Output the depth-k view. k + 1 rounds.
ProgramPtr build_view(int depth);
/// Input bool s. Output rational m * q1 / q from the depth 2m-1 view. 2m rounds.
ProgramPtr eval_symmetric_guess(int m);
/// Input [x: bool, leader: bool] with exactly one leader. Output |x| as an
/// integer, or [|x|, sorted list of [id, x]] when with_ids. 2N rounds.
ProgramPtr leader_weight(int N, bool with_ids = false);
/// One exchange: every party sends its out-port number on each out-port.
/// Output the list of [out-port, in-port] labels of incoming edges.
ProgramPtr edge_labels();

/// Round budget of leader_weight: identifier flooding (N - 1 exchanges) then
/// color counting (N exchanges).
inline int leader_weight_rounds(int N) { return 2 * N; }

}  // namespace anonq::classical

#endif
