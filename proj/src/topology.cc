#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "qnetlim/netgraph.h"

namespace qnetlim {

namespace {

void check_p(double p) {
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("p must lie in (0,1]");
}

Network ring(int n, double p) {
    Network g;
    for (int i = 0; i < n; i++) g.add_node("v" + std::to_string(i + 1));
    for (int i = 0; i < n; i++) g.add_edge(i, (i + 1) % n, p);
    return g;
}

Network numbered(int n) {
    Network g;
    for (int i = 0; i < n; i++) g.add_node("v" + std::to_string(i + 1));
    return g;
}

}  // namespace

TopologySpec TopologySpec::star(int n, double p) {
    TopologySpec s;
    s.kind = Kind::Star;
    s.n = n;
    s.p = p;
    return s;
}

TopologySpec TopologySpec::full_mesh(int n, double p) {
    TopologySpec s;
    s.kind = Kind::FullMesh;
    s.n = n;
    s.p = p;
    return s;
}

TopologySpec TopologySpec::partial_mesh(int n, std::vector<std::pair<int, int>> edges, double p) {
    TopologySpec s;
    s.kind = Kind::PartialMesh;
    s.n = n;
    s.edges = std::move(edges);
    s.p = p;
    return s;
}

TopologySpec TopologySpec::circulant(int n, int d, double p) {
    TopologySpec s;
    s.kind = Kind::Circulant;
    s.n = n;
    s.d = d;
    s.p = p;
    return s;
}

TopologySpec TopologySpec::grid(int w, int h, double p) {
    TopologySpec s;
    s.kind = Kind::Grid;
    s.w = w;
    s.h = h;
    s.p = p;
    return s;
}

TopologySpec TopologySpec::processor_cell(Cell cell, double p) {
    TopologySpec s;
    s.kind = Kind::ProcessorCell;
    s.cell = cell;
    s.p = p;
    return s;
}

TopologySpec TopologySpec::square1024(double p) {
    TopologySpec s;
    s.kind = Kind::Square1024;
    s.p = p;
    return s;
}

Network build_topology(const TopologySpec &spec) {
    check_p(spec.p);
    switch (spec.kind) {
        case TopologySpec::Kind::Star: {
            if (spec.n < 2) throw std::invalid_argument("star needs at least 2 nodes");
            Network g = numbered(spec.n);
            for (int i = 1; i < spec.n; i++) g.add_edge(0, i, spec.p);
            return g;
        }
        case TopologySpec::Kind::FullMesh: {
            if (spec.n < 1) throw std::invalid_argument("mesh needs at least 1 node");
            Network g = numbered(spec.n);
            for (int i = 0; i < spec.n; i++)
                for (int j = i + 1; j < spec.n; j++) g.add_edge(i, j, spec.p);
            return g;
        }
        case TopologySpec::Kind::PartialMesh: {
            if (spec.n < 1) throw std::invalid_argument("mesh needs at least 1 node");
            Network g = numbered(spec.n);
            for (auto [a, b] : spec.edges) {
                if (a < 0 || b < 0 || a >= spec.n || b >= spec.n) throw std::invalid_argument("partial mesh edge out of range");
                g.add_edge(a, b, spec.p);
            }
            return g;
        }
        case TopologySpec::Kind::Circulant: {
            int n = spec.n, d = spec.d;
            if (n < 3 || d < 1 || d >= n) throw std::invalid_argument("circulant needs n >= 3 and 1 <= d < n");
            if (d % 2 == 1 && n % 2 == 1) throw std::invalid_argument("odd circulant degree needs an even node count");
            Network g = numbered(n);
            for (int k = 1; k <= d / 2; k++)
                for (int i = 0; i < n; i++) g.add_edge(i, (i + k) % n, std::pow(spec.p, k));
            if (d % 2 == 1)
                for (int i = 0; i < n / 2; i++) g.add_edge(i, i + n / 2, std::pow(spec.p, (d + 1) / 2));
            return g;
        }
        case TopologySpec::Kind::Grid:
        case TopologySpec::Kind::Square1024: {
            int w = spec.kind == TopologySpec::Kind::Grid ? spec.w : 32;
            int h = spec.kind == TopologySpec::Kind::Grid ? spec.h : 32;
            if (w < 1 || h < 1) throw std::invalid_argument("grid sides must be positive");
            Network g;
            for (int r = 0; r < h; r++)
                for (int c = 0; c < w; c++) g.add_node("g" + std::to_string(r) + "_" + std::to_string(c));
            for (int r = 0; r < h; r++)
                for (int c = 0; c < w; c++) {
                    int v = r * w + c;
                    if (c + 1 < w) g.add_edge(v, v + 1, spec.p);
                    if (r + 1 < h) g.add_edge(v, v + w, spec.p);
                }
            return g;
        }
        case TopologySpec::Kind::ProcessorCell: {
            switch (spec.cell) {
                case TopologySpec::Cell::Square:
                    return ring(4, spec.p);
                case TopologySpec::Cell::Octagonal:
                    return ring(8, spec.p);
                case TopologySpec::Cell::HeavyHexagonal:
                    return ring(12, spec.p);
            }
        }
    }
    throw std::invalid_argument("unknown topology");
}

namespace closed_form {

double star_hub_strength(int n, double p, bool include_self) {
    return ((include_self ? 1 : 0) + p * (n - 1)) / n;
}

double star_leaf_strength(int n, double p, StrategyKind strategy, bool include_self) {
    double s = (include_self ? 1 : 0) + p;
    if (strategy == StrategyKind::Cooperative) s += p * p * (n - 2);
    return s / n;
}

double star_sparsity_noncooperative(int n, bool include_self) {
    double nn = n;
    return 1 - (include_self ? 3 * nn - 2 : 2 * nn - 2) / (nn * nn);
}

double full_mesh_strength(int n, double p, bool include_self) {
    return ((include_self ? 1 : 0) + p * (n - 1)) / n;
}

double circulant_strength(int n, int d, double p, bool include_self) {
    double s;
    if (d % 2 == 0)
        s = 1 + 2 * p * (std::pow(p, d / 2) - 1) / (p - 1);
    else
        s = (1 + p) * (std::pow(p, (d + 1) / 2) - 1) / (p - 1);
    if (!include_self) s -= 1;
    return s / n;
}

double circulant_sparsity(int n, int d, bool include_self) {
    return 1 - static_cast<double>(d + (include_self ? 1 : 0)) / n;
}

}  // namespace closed_form

int max_vertex_disjoint_paths(const Network &g, const std::vector<int> &sources, const std::vector<int> &sinks) {
    // Node split: v_in = 2v, v_out = 2v+1, unit capacity inside each node.
    int n = g.size();
    int S = 2 * n, T = 2 * n + 1, V = 2 * n + 2;
    struct Arc {
        int to, cap, rev;
    };
    std::vector<std::vector<Arc>> adj(V);
    auto add = [&](int a, int b, int cap) {
        adj[a].push_back({b, cap, static_cast<int>(adj[b].size())});
        adj[b].push_back({a, 0, static_cast<int>(adj[a].size()) - 1});
    };
    for (int v = 0; v < n; v++) add(2 * v, 2 * v + 1, 1);
    for (const auto &e : g.edges()) {
        add(2 * e.u + 1, 2 * e.v, 1);
        add(2 * e.v + 1, 2 * e.u, 1);
    }
    for (int s : sources) add(S, 2 * s, 1);
    for (int t : sinks) add(2 * t + 1, T, 1);
    int flow = 0;
    while (true) {
        std::vector<std::pair<int, int>> from(V, {-1, -1});
        std::queue<int> q;
        q.push(S);
        from[S] = {S, -1};
        while (!q.empty() && from[T].first < 0) {
            int u = q.front();
            q.pop();
            for (int i = 0; i < static_cast<int>(adj[u].size()); i++) {
                const Arc &a = adj[u][i];
                if (a.cap > 0 && from[a.to].first < 0) {
                    from[a.to] = {u, i};
                    q.push(a.to);
                }
            }
        }
        if (from[T].first < 0) break;
        for (int v = T; v != S;) {
            auto [u, i] = from[v];
            Arc &a = adj[u][i];
            a.cap -= 1;
            adj[v][a.rev].cap += 1;
            v = u;
        }
        flow++;
    }
    return flow;
}

ConstructedNetwork construct_network(int n_a, int n_b, const std::vector<double> &mesh_p,
                                     const std::vector<double> &attach_p) {
    if (n_a < 1 || n_b < 1) throw std::invalid_argument("n_A and n_B must be >= 1");
    int core = n_a + n_b;
    size_t pairs = static_cast<size_t>(core) * (core - 1) / 2;
    if (mesh_p.size() != 1 && mesh_p.size() != pairs)
        throw std::invalid_argument("mesh_p must hold 1 or " + std::to_string(pairs) + " values");
    if (attach_p.size() != 1 && attach_p.size() != static_cast<size_t>(core))
        throw std::invalid_argument("attach_p must hold 1 or " + std::to_string(core) + " values");

    ConstructedNetwork out;
    Network &g = out.network;
    for (int i = 0; i < core; i++) g.add_node("C" + std::to_string(i + 1));
    std::vector<int> a_nodes, b_nodes;
    for (int i = 0; i < n_a; i++) a_nodes.push_back(g.add_node("A" + std::to_string(i + 1)));
    for (int i = 0; i < n_b; i++) b_nodes.push_back(g.add_node("B" + std::to_string(i + 1)));
    size_t k = 0;
    for (int i = 0; i < core; i++)
        for (int j = i + 1; j < core; j++, k++) g.add_edge(i, j, mesh_p.size() == 1 ? mesh_p[0] : mesh_p[k]);
    for (int i = 0; i < n_a; i++) g.add_edge(a_nodes[i], i, attach_p.size() == 1 ? attach_p[0] : attach_p[i]);
    for (int i = 0; i < n_b; i++)
        g.add_edge(b_nodes[i], n_a + i, attach_p.size() == 1 ? attach_p[0] : attach_p[n_a + i]);

    ConstructionCertificate &cert = out.certificate;
    const double tiny = std::numeric_limits<double>::min();
    std::vector<char> used(g.size(), 0);
    cert.pairing_disjoint = true;
    for (int i = 0; i < std::min(n_a, n_b); i++) {
        PathResult path = shortest_path(g, a_nodes[i], b_nodes[i], tiny);
        cert.pairing_paths.push_back(path.nodes);
        for (int v : path.nodes) {
            if (used[v]) cert.pairing_disjoint = false;
            used[v] = 1;
        }
    }
    cert.max_disjoint_paths = max_vertex_disjoint_paths(g, a_nodes, b_nodes);
    cert.all_pairs_connected = true;
    for (int a : a_nodes)
        for (int b : b_nodes)
            if (shortest_path(g, a, b, tiny).status != PathResult::Status::Found) cert.all_pairs_connected = false;
    return out;
}

}  // namespace qnetlim
