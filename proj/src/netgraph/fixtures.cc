#include "anonq/netgraph/fixtures.h"

#include <regex>

#include "anonq/common/errors.h"

namespace anonq::netgraph {

PortDigraph ring(int n) {
    if (n < 1) {
        throw DomainError("ring needs n >= 1");
    }
    std::vector<Edge> edges;
    for (int v = 0; v < n; v++) {
        edges.push_back({v, (v + 1) % n, 1, 1});
    }
    return PortDigraph(n, std::move(edges));
}

PortDigraph complete(int n) {
    if (n < 2) {
        throw DomainError("complete digraph needs n >= 2");
    }
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; u++) {
        for (int v = 0; v < n; v++) {
            if (u != v) {
                arcs.emplace_back(u, v);
            }
        }
    }
    return with_canonical_ports(n, arcs);
}

// Nodes 1..4 sit upper-left, upper-right, lower-right, lower-left. The first
// four edges run clockwise, the last four counter-clockwise.
PortDigraph example1a() {
    return parse_graph(
        "4 8\n"
        "1 2 1 1\n"
        "2 3 1 1\n"
        "3 4 1 1\n"
        "4 1 2 1\n"
        "2 1 2 2\n"
        "3 2 2 2\n"
        "4 3 1 2\n"
        "1 4 2 2\n");
}

PortDigraph example1b() {
    return parse_graph(
        "4 8\n"
        "1 2 1 1\n"
        "2 3 1 1\n"
        "3 4 1 1\n"
        "4 1 1 1\n"
        "2 1 2 2\n"
        "3 2 2 2\n"
        "4 3 2 2\n"
        "1 4 2 2\n");
}

PortDigraph fixture(const std::string &name) {
    if (name == "example1a") {
        return example1a();
    }
    if (name == "example1b") {
        return example1b();
    }
    static const std::regex pattern(R"((ring|complete)\((\d+)\))");
    std::smatch match;
    if (std::regex_match(name, match, pattern)) {
        int n = std::stoi(match[2]);
        return match[1] == "ring" ? ring(n) : complete(n);
    }
    throw LookupError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names_up_to(int n) {
    std::vector<std::string> names;
    for (int k = 2; k <= n; k++) {
        names.push_back("ring(" + std::to_string(k) + ")");
    }
    if (n >= 4) {
        names.push_back("example1a");
        names.push_back("example1b");
    }
    return names;
}

std::vector<int> edge_label_game_scores(const PortDigraph &g) {
    std::vector<int> score(g.n(), 0);
    for (const auto &e : g.edges()) {
        score[e.dst] += (e.out_port > e.in_port) - (e.out_port < e.in_port);
    }
    return score;
}

}  // namespace anonq::netgraph
