#ifndef ANONQ_NETGRAPH_FIXTURES_H
#define ANONQ_NETGRAPH_FIXTURES_H

#include <string>
#include <vector>

#include "anonq/netgraph/port_digraph.h"

namespace anonq::netgraph {

/// Directed n-cycle i -> i+1, every port labeled 1.
PortDigraph ring(int n);
/// Complete digraph without self-loops, canonical ports.
PortDigraph complete(int n);
/// Bidirected 4-cycle with a numbering whose edge-label game has a unique winner (node 1).
PortDigraph example1a();
/// Same underlying graph, rotation-symmetric numbering: every edge label is a draw.
PortDigraph example1b();

/// Accepts example1a, example1b, ring(n), complete(n).
PortDigraph fixture(const std::string &name);
std::vector<std::string> fixture_names_up_to(int n);

/// Per-node score of the edge-label game: +1 per incoming edge labeled (i, j)
/// with i > j, -1 when i < j.
std::vector<int> edge_label_game_scores(const PortDigraph &g);

}  // namespace anonq::netgraph

#endif
