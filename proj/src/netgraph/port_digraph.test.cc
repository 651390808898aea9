#include "anonq/netgraph/port_digraph.h"

#include <gtest/gtest.h>

#include "anonq/common/errors.h"
#include "anonq/netgraph/fixtures.h"

using namespace anonq;
using namespace anonq::netgraph;

TEST(PortDigraph, RejectsBrokenPortMaps) {
    // Two edges leave node 0 through port 1.
    EXPECT_THROW(PortDigraph(2, {{0, 1, 1, 1}, {0, 1, 1, 2}, {1, 0, 1, 1}}), StructureError);
    // Port 2 used without port 1.
    EXPECT_THROW(PortDigraph(2, {{0, 1, 2, 1}, {1, 0, 1, 1}}), StructureError);
    EXPECT_THROW(PortDigraph(2, {{0, 2, 1, 1}}), StructureError);
}

TEST(PortDigraph, StrongConnectivity) {
    EXPECT_TRUE(is_strongly_connected(ring(3)));
    EXPECT_FALSE(is_strongly_connected(with_canonical_ports(3, {{0, 1}, {1, 2}})));
    EXPECT_TRUE(is_strongly_connected(PortDigraph(1, {{0, 0, 1, 1}})));
}

TEST(PortDigraph, Diameter) {
    EXPECT_EQ(diameter(ring(5)), 4);
    EXPECT_EQ(diameter(complete(3)), 1);
    EXPECT_THROW(diameter(with_canonical_ports(2, {{0, 1}})), DomainError);
}

TEST(PortDigraph, DiameterOfExampleMatchesBreadthFirstSearch) {
    auto g = example1a();
    // Independent BFS over an adjacency matrix.
    int n = g.n();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (const auto &e : g.edges()) {
        adj[e.src][e.dst] = true;
    }
    int worst = 0;
    for (int s = 0; s < n; s++) {
        std::vector<int> dist(n, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (std::size_t k = 0; k < queue.size(); k++) {
            for (int v = 0; v < n; v++) {
                if (adj[queue[k]][v] && dist[v] < 0) {
                    dist[v] = dist[queue[k]] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (int d : dist) {
            worst = std::max(worst, d);
        }
    }
    EXPECT_EQ(diameter(g), worst);
}

TEST(PortDigraph, TextRoundTrip) {
    auto g = example1a();
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
    EXPECT_THROW(parse_graph("2 1\n1 3 1 1\n"), StructureError);
}

TEST(PortDigraph, RelabelAndAutomorphisms) {
    auto g = ring(4);
    EXPECT_TRUE(is_port_automorphism(g, {1, 2, 3, 0}));
    EXPECT_FALSE(is_port_automorphism(g, {1, 0, 2, 3}));
    auto h = relabel(g, {1, 2, 3, 0});
    EXPECT_EQ(h.n(), 4);
    EXPECT_TRUE(is_strongly_connected(h));
}
