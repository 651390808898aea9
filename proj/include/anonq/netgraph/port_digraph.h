#ifndef ANONQ_NETGRAPH_PORT_DIGRAPH_H
#define ANONQ_NETGRAPH_PORT_DIGRAPH_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace anonq::netgraph {

/// Nodes are 0-based in memory and 1-based in the text format. Ports are 1-based.
struct Edge {
    int src;
    int dst;
    int out_port;
    int in_port;
    bool operator==(const Edge &) const = default;
};

/// Directed multigraph with per-node port bijections. Construction checks the
/// port maps; strong connectivity is a separate predicate.
class PortDigraph {
   public:
    PortDigraph() = default;
    PortDigraph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge> &edges() const { return edges_; }
    int d_in(int v) const { return static_cast<int>(in_edges_[v].size()); }
    int d_out(int v) const { return static_cast<int>(out_edges_[v].size()); }
    /// Index into edges() of the edge leaving v through `port`.
    int out_edge(int v, int port) const { return out_edges_[v][port - 1]; }
    int in_edge(int v, int port) const { return in_edges_[v][port - 1]; }

    bool operator==(const PortDigraph &other) const { return n_ == other.n_ && edges_ == other.edges_; }

   private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<std::vector<int>> in_edges_;
};

/// Edges as (src, dst) pairs, numbered canonically: each node's incident edges
/// are sorted by (neighbor, edge index) and labeled 1..d.
PortDigraph with_canonical_ports(int n, const std::vector<std::pair<int, int>> &arcs);

bool is_strongly_connected(const PortDigraph &g);
/// Shortest-path distances, dist[u][v] = -1 when unreachable.
std::vector<std::vector<int>> distances(const PortDigraph &g);
int diameter(const PortDigraph &g);

PortDigraph parse_graph(std::string_view text);
std::string serialize_graph(const PortDigraph &g);
PortDigraph load_graph(const std::string &path);
void save_graph(const PortDigraph &g, const std::string &path);

/// Relabels nodes: node v of g becomes node perm[v].
PortDigraph relabel(const PortDigraph &g, const std::vector<int> &perm);
/// True iff perm maps every edge to an edge with identical port labels.
bool is_port_automorphism(const PortDigraph &g, const std::vector<int> &perm);

}  // namespace anonq::netgraph

#endif
