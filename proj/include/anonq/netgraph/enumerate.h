#ifndef ANONQ_NETGRAPH_ENUMERATE_H
#define ANONQ_NETGRAPH_ENUMERATE_H

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "anonq/netgraph/port_digraph.h"

namespace anonq::netgraph {

struct EnumerationLimits {
    int max_nodes = 5;
    std::uint64_t max_numberings = 1u << 20;
};

struct GraphEnumerationOptions {
    int n = 2;
    int max_multiplicity = 1;
    /// Self-loops are capped by max_multiplicity as well.
    bool allow_self_loops = false;
    EnumerationLimits limits;
};

/// Visits every strongly connected digraph within the caps, in a fixed order,
/// each with its canonical port numbering. Returning false stops the walk.
void for_each_graph(const GraphEnumerationOptions &options, const std::function<bool(const PortDigraph &)> &visit);
std::vector<PortDigraph> enumerate_graphs(const GraphEnumerationOptions &options);
std::vector<PortDigraph> enumerate_graphs(int n, int max_multiplicity);

/// prod_v d_in(v)! * d_out(v)!, saturating at UINT64_MAX.
std::uint64_t count_port_numberings(const PortDigraph &g);

/// Visits every port numbering of g's underlying multigraph. The first one
/// visited is g itself.
void for_each_port_numbering(const PortDigraph &g, const std::function<bool(const PortDigraph &)> &visit,
                             const EnumerationLimits &limits = {});
std::vector<PortDigraph> enumerate_port_numberings(const PortDigraph &g, const EnumerationLimits &limits = {});

/// Uniformly random port numbering of g's underlying multigraph.
PortDigraph random_port_numbering(const PortDigraph &g, std::mt19937_64 &rng);
/// Uniformly random strongly connected simple digraph on n nodes (rejection sampling).
PortDigraph random_strongly_connected(int n, std::mt19937_64 &rng, double edge_probability = 0.5);

}  // namespace anonq::netgraph

#endif
