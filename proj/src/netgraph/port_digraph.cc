#include "anonq/netgraph/port_digraph.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "anonq/common/errors.h"

namespace anonq::netgraph {

PortDigraph::PortDigraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) {
        throw StructureError("negative node count");
    }
    out_edges_.assign(n, {});
    in_edges_.assign(n, {});
    std::vector<int> out_deg(n, 0), in_deg(n, 0);
    for (const auto &e : edges_) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
            throw StructureError("edge endpoint out of range");
        }
        out_deg[e.src]++;
        in_deg[e.dst]++;
    }
    for (int v = 0; v < n; v++) {
        out_edges_[v].assign(out_deg[v], -1);
        in_edges_[v].assign(in_deg[v], -1);
    }
    for (int k = 0; k < static_cast<int>(edges_.size()); k++) {
        const auto &e = edges_[k];
        if (e.out_port < 1 || e.out_port > out_deg[e.src]) {
            throw StructureError("out-port " + std::to_string(e.out_port) + " out of range at node " +
                                 std::to_string(e.src + 1));
        }
        if (e.in_port < 1 || e.in_port > in_deg[e.dst]) {
            throw StructureError("in-port " + std::to_string(e.in_port) + " out of range at node " +
                                 std::to_string(e.dst + 1));
        }
        int &o = out_edges_[e.src][e.out_port - 1];
        int &i = in_edges_[e.dst][e.in_port - 1];
        if (o != -1) {
            throw StructureError("duplicate out-port " + std::to_string(e.out_port) + " at node " +
                                 std::to_string(e.src + 1));
        }
        if (i != -1) {
            throw StructureError("duplicate in-port " + std::to_string(e.in_port) + " at node " +
                                 std::to_string(e.dst + 1));
        }
        o = k;
        i = k;
    }
}

PortDigraph with_canonical_ports(int n, const std::vector<std::pair<int, int>> &arcs) {
    std::vector<Edge> edges;
    edges.reserve(arcs.size());
    for (auto [s, d] : arcs) {
        edges.push_back({s, d, 0, 0});
    }
    std::vector<std::vector<int>> outs(n), ins(n);
    for (int k = 0; k < static_cast<int>(edges.size()); k++) {
        if (edges[k].src < 0 || edges[k].src >= n || edges[k].dst < 0 || edges[k].dst >= n) {
            throw StructureError("edge endpoint out of range");
        }
        outs[edges[k].src].push_back(k);
        ins[edges[k].dst].push_back(k);
    }
    for (int v = 0; v < n; v++) {
        std::sort(outs[v].begin(), outs[v].end(), [&](int a, int b) {
            return std::pair(edges[a].dst, a) < std::pair(edges[b].dst, b);
        });
        std::sort(ins[v].begin(), ins[v].end(), [&](int a, int b) {
            return std::pair(edges[a].src, a) < std::pair(edges[b].src, b);
        });
        for (int p = 0; p < static_cast<int>(outs[v].size()); p++) {
            edges[outs[v][p]].out_port = p + 1;
        }
        for (int p = 0; p < static_cast<int>(ins[v].size()); p++) {
            edges[ins[v][p]].in_port = p + 1;
        }
    }
    return PortDigraph(n, std::move(edges));
}

std::vector<std::vector<int>> distances(const PortDigraph &g) {
    int n = g.n();
    std::vector<std::vector<int>> adj(n);
    for (const auto &e : g.edges()) {
        adj[e.src].push_back(e.dst);
    }
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; s++) {
        std::deque<int> queue{s};
        dist[s][s] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[u]) {
                if (dist[s][v] < 0) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return dist;
}

bool is_strongly_connected(const PortDigraph &g) {
    int n = g.n();
    if (n == 0) {
        return false;
    }
    // Forward and backward reachability from node 0.
    std::vector<std::vector<int>> fwd(n), bwd(n);
    for (const auto &e : g.edges()) {
        fwd[e.src].push_back(e.dst);
        bwd[e.dst].push_back(e.src);
    }
    for (const auto *adj : {&fwd, &bwd}) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : (*adj)[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    count++;
                    stack.push_back(v);
                }
            }
        }
        if (count != n) {
            return false;
        }
    }
    return true;
}

int diameter(const PortDigraph &g) {
    if (!is_strongly_connected(g)) {
        throw DomainError("diameter of a graph that is not strongly connected");
    }
    int best = 0;
    for (const auto &row : distances(g)) {
        best = std::max(best, *std::max_element(row.begin(), row.end()));
    }
    return best;
}

PortDigraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long n, m;
    if (!(in >> n >> m) || n < 0 || m < 0) {
        throw StructureError("graph header must be 'n m'");
    }
    std::vector<Edge> edges;
    for (long long k = 0; k < m; k++) {
        long long s, d, o, i;
        if (!(in >> s >> d >> o >> i)) {
            throw StructureError("expected " + std::to_string(m) + " edge lines, got " + std::to_string(k));
        }
        if (s < 1 || s > n || d < 1 || d > n) {
            throw StructureError("edge endpoint out of range on edge line " + std::to_string(k + 1));
        }
        edges.push_back({static_cast<int>(s - 1), static_cast<int>(d - 1), static_cast<int>(o), static_cast<int>(i)});
    }
    std::string rest;
    if (in >> rest) {
        throw StructureError("trailing content after edge list");
    }
    return PortDigraph(static_cast<int>(n), std::move(edges));
}

std::string serialize_graph(const PortDigraph &g) {
    std::ostringstream out;
    out << g.n() << " " << g.edges().size() << "\n";
    for (const auto &e : g.edges()) {
        out << e.src + 1 << " " << e.dst + 1 << " " << e.out_port << " " << e.in_port << "\n";
    }
    return out.str();
}

PortDigraph load_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw LookupError("cannot open graph file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void save_graph(const PortDigraph &g, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw LookupError("cannot write graph file " + path);
    }
    out << serialize_graph(g);
}

PortDigraph relabel(const PortDigraph &g, const std::vector<int> &perm) {
    if (static_cast<int>(perm.size()) != g.n()) {
        throw ValidationError("permutation size mismatch");
    }
    std::vector<char> seen(g.n(), 0);
    for (int p : perm) {
        if (p < 0 || p >= g.n() || seen[p]) {
            throw ValidationError("not a permutation");
        }
        seen[p] = 1;
    }
    std::vector<Edge> edges = g.edges();
    for (auto &e : edges) {
        e.src = perm[e.src];
        e.dst = perm[e.dst];
    }
    return PortDigraph(g.n(), std::move(edges));
}

bool is_port_automorphism(const PortDigraph &g, const std::vector<int> &perm) {
    PortDigraph h = relabel(g, perm);
    auto key = [](const Edge &e) { return std::tuple(e.src, e.dst, e.out_port, e.in_port); };
    std::vector<std::tuple<int, int, int, int>> a, b;
    for (const auto &e : g.edges()) {
        a.push_back(key(e));
    }
    for (const auto &e : h.edges()) {
        b.push_back(key(e));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace anonq::netgraph
