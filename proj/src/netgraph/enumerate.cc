#include "anonq/netgraph/enumerate.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "anonq/common/errors.h"

namespace anonq::netgraph {

namespace {

bool masks_strongly_connected(const std::vector<std::uint32_t> &out, const std::vector<std::uint32_t> &in) {
    int n = static_cast<int>(out.size());
    std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
    for (const auto *adj : {&out, &in}) {
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint32_t next = 0;
            for (int v = 0; v < n; v++) {
                if (frontier >> v & 1) {
                    next |= (*adj)[v];
                }
            }
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen != all) {
            return false;
        }
    }
    return true;
}

}  // namespace

void for_each_graph(const GraphEnumerationOptions &options, const std::function<bool(const PortDigraph &)> &visit) {
    int n = options.n;
    if (n < 1) {
        throw DomainError("graph enumeration needs n >= 1");
    }
    if (options.max_multiplicity < 1) {
        throw DomainError("max_multiplicity must be >= 1");
    }
    if (n > options.limits.max_nodes) {
        throw CapacityError("graph enumeration limited to n <= " + std::to_string(options.limits.max_nodes));
    }
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; u++) {
        for (int v = 0; v < n; v++) {
            if (u != v || options.allow_self_loops) {
                slots.emplace_back(u, v);
            }
        }
    }
    int radix = options.max_multiplicity + 1;
    std::vector<int> mult(slots.size(), 0);
    std::vector<std::uint32_t> out(n), in(n);
    while (true) {
        std::fill(out.begin(), out.end(), 0);
        std::fill(in.begin(), in.end(), 0);
        for (std::size_t s = 0; s < slots.size(); s++) {
            if (mult[s]) {
                out[slots[s].first] |= 1u << slots[s].second;
                in[slots[s].second] |= 1u << slots[s].first;
            }
        }
        bool has_ports = std::all_of(out.begin(), out.end(), [](auto m) { return m != 0; });
        if (has_ports && masks_strongly_connected(out, in)) {
            std::vector<std::pair<int, int>> arcs;
            for (std::size_t s = 0; s < slots.size(); s++) {
                for (int k = 0; k < mult[s]; k++) {
                    arcs.push_back(slots[s]);
                }
            }
            if (!visit(with_canonical_ports(n, arcs))) {
                return;
            }
        }
        std::size_t s = 0;
        while (s < mult.size() && ++mult[s] == radix) {
            mult[s] = 0;
            s++;
        }
        if (s == mult.size()) {
            return;
        }
    }
}

std::vector<PortDigraph> enumerate_graphs(const GraphEnumerationOptions &options) {
    std::vector<PortDigraph> result;
    for_each_graph(options, [&](const PortDigraph &g) {
        result.push_back(g);
        return true;
    });
    return result;
}

std::vector<PortDigraph> enumerate_graphs(int n, int max_multiplicity) {
    GraphEnumerationOptions options;
    options.n = n;
    options.max_multiplicity = max_multiplicity;
    return enumerate_graphs(options);
}

std::uint64_t count_port_numberings(const PortDigraph &g) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1;
    auto mul = [&](std::uint64_t f) {
        total = (f != 0 && total > cap / f) ? cap : total * f;
    };
    for (int v = 0; v < g.n(); v++) {
        for (int d : {g.d_in(v), g.d_out(v)}) {
            for (int k = 2; k <= d; k++) {
                mul(k);
            }
        }
    }
    return total;
}

namespace {

// Port sides: for node v, side 2v lists out-edges by current out-port, side 2v+1 in-edges.
struct Sides {
    std::vector<std::vector<int>> edges;
    std::vector<std::vector<int>> perm;
};

Sides sides_of(const PortDigraph &g) {
    Sides s;
    for (int v = 0; v < g.n(); v++) {
        std::vector<int> outs, ins;
        for (int p = 1; p <= g.d_out(v); p++) {
            outs.push_back(g.out_edge(v, p));
        }
        for (int p = 1; p <= g.d_in(v); p++) {
            ins.push_back(g.in_edge(v, p));
        }
        s.edges.push_back(outs);
        s.edges.push_back(ins);
    }
    for (const auto &side : s.edges) {
        std::vector<int> id(side.size());
        std::iota(id.begin(), id.end(), 0);
        s.perm.push_back(id);
    }
    return s;
}

PortDigraph apply_sides(const PortDigraph &g, const Sides &s) {
    std::vector<Edge> edges = g.edges();
    for (std::size_t k = 0; k < s.edges.size(); k++) {
        bool out_side = k % 2 == 0;
        for (std::size_t j = 0; j < s.edges[k].size(); j++) {
            Edge &e = edges[s.edges[k][j]];
            (out_side ? e.out_port : e.in_port) = s.perm[k][j] + 1;
        }
    }
    return PortDigraph(g.n(), std::move(edges));
}

}  // namespace

void for_each_port_numbering(const PortDigraph &g, const std::function<bool(const PortDigraph &)> &visit,
                             const EnumerationLimits &limits) {
    if (count_port_numberings(g) > limits.max_numberings) {
        throw CapacityError("port numbering count exceeds cap " + std::to_string(limits.max_numberings) +
                            "; use random_port_numbering");
    }
    Sides s = sides_of(g);
    while (true) {
        if (!visit(apply_sides(g, s))) {
            return;
        }
        std::size_t k = 0;
        while (k < s.perm.size() && !std::next_permutation(s.perm[k].begin(), s.perm[k].end())) {
            k++;
        }
        if (k == s.perm.size()) {
            return;
        }
    }
}

std::vector<PortDigraph> enumerate_port_numberings(const PortDigraph &g, const EnumerationLimits &limits) {
    std::vector<PortDigraph> result;
    for_each_port_numbering(
        g,
        [&](const PortDigraph &h) {
            result.push_back(h);
            return true;
        },
        limits);
    return result;
}

PortDigraph random_port_numbering(const PortDigraph &g, std::mt19937_64 &rng) {
    Sides s = sides_of(g);
    for (auto &p : s.perm) {
        std::shuffle(p.begin(), p.end(), rng);
    }
    return apply_sides(g, s);
}

PortDigraph random_strongly_connected(int n, std::mt19937_64 &rng, double edge_probability) {
    if (n < 2) {
        throw DomainError("random_strongly_connected needs n >= 2");
    }
    std::bernoulli_distribution coin(edge_probability);
    for (int attempt = 0; attempt < 1000000; attempt++) {
        std::vector<std::pair<int, int>> arcs;
        for (int u = 0; u < n; u++) {
            for (int v = 0; v < n; v++) {
                if (u != v && coin(rng)) {
                    arcs.emplace_back(u, v);
                }
            }
        }
        PortDigraph g = with_canonical_ports(n, arcs);
        if (is_strongly_connected(g)) {
            return g;
        }
    }
    throw CapacityError("rejection sampling did not find a strongly connected digraph");
}

}  // namespace anonq::netgraph
