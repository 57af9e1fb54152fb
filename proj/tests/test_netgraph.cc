#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "qnetlim/netgraph.h"

using namespace qnetlim;

namespace {

Network from_edges(int n, const std::vector<std::tuple<int, int, double>> &edges) {
    Network g;
    for (int i = 0; i < n; i++) g.add_node("n" + std::to_string(i + 1));
    for (auto [u, v, p] : edges) g.add_edge(u, v, p);
    return g;
}

// Square 1-2-3-4-1 with diagonal 1-3, 0-based.
Network square_diag(double p) { return from_edges(4, {{0, 1, p}, {1, 2, p}, {2, 3, p}, {3, 0, p}, {0, 2, p}}); }

Network random_graph(std::mt19937 &rng, int n, double density, bool uniform) {
    std::uniform_real_distribution<double> u(0, 1), pd(0.3, 1.0);
    std::vector<double> levels = {0.5, 0.7, 0.9};
    Network g;
    for (int i = 0; i < n; i++) g.add_node("x" + std::to_string(i));
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++)
            if (u(rng) < density) g.add_edge(i, j, uniform ? levels[rng() % levels.size()] : pd(rng));
    return g;
}

struct Enumerated {
    double best_p = 0;
    double best_w = INFINITY;
    std::vector<std::vector<int>> paths;  // qualifying simple paths
    std::vector<double> weights;
};

// All simple paths s -> t whose success product stays >= p*.
Enumerated enumerate(const Network &g, int s, int t, double p_star) {
    Enumerated e;
    std::vector<int> path{s};
    std::vector<bool> used(g.size(), false);
    used[s] = true;
    std::function<void(int, double, double)> dfs = [&](int u, double prob, double w) {
        if (u == t) {
            e.paths.push_back(path);
            e.weights.push_back(w);
            if (w < e.best_w) e.best_w = w;
            e.best_p = std::max(e.best_p, prob);
            return;
        }
        for (const auto &nb : g.neighbors(u)) {
            if (used[nb.to] || prob * nb.p < p_star) continue;
            used[nb.to] = true;
            path.push_back(nb.to);
            dfs(nb.to, prob * nb.p, w - std::log2(nb.p));
            path.pop_back();
            used[nb.to] = false;
        }
    };
    dfs(s, 1.0, 0.0);
    return e;
}

bool tie(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::vector<long long> centrality_oracle(const Network &g, double p_star, bool canonical) {
    int n = g.size();
    std::vector<long long> tau(n, 0);
    for (int s = 0; s < n; s++)
        for (int t = s + 1; t < n; t++) {
            Enumerated e = enumerate(g, s, t, p_star);
            if (e.paths.empty()) continue;
            std::vector<bool> interior(n, false);
            std::vector<int> chosen;
            for (size_t k = 0; k < e.paths.size(); k++) {
                if (!tie(e.weights[k], e.best_w)) continue;
                if (canonical) {
                    if (chosen.empty() || e.paths[k] < chosen) chosen = e.paths[k];
                } else {
                    for (size_t i = 1; i + 1 < e.paths[k].size(); i++) interior[e.paths[k][i]] = true;
                }
            }
            for (size_t i = 1; i + 1 < chosen.size(); i++) interior[chosen[i]] = true;
            for (int v = 0; v < n; v++) tau[v] += interior[v];
        }
    return tau;
}

std::vector<int> random_perm(std::mt19937 &rng, int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST(Network, Construction) {
    Network g;
    g.add_node("a");
    g.add_node("b");
    EXPECT_EQ(g.add_node("a"), 0);
    g.add_edge("a", "b", 0.5);
    EXPECT_THROW(g.add_edge("a", "b", 0.6), std::invalid_argument);
    EXPECT_THROW(g.add_edge("a", "a", 0.6), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 1, 1.5), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 5, 0.5), std::invalid_argument);
    EXPECT_EQ(g.edge_count(), 1);
    EXPECT_EQ(*g.edge_p(1, 0), 0.5);
}

TEST(Weights, EffectiveWeight) {
    EXPECT_NEAR(effective_weight(0.5, 0.25), 1, 1e-15);
    EXPECT_TRUE(std::isinf(effective_weight(0.2, 0.25)));
    EXPECT_NEAR(effective_weight(0.54173, 0.5), -std::log2(0.54173), 1e-15);
    EXPECT_NEAR(effective_weight(0.54173, 0.5), 0.88435, 1e-5);
}

TEST(Matrices, ChainAndCutoff) {
    Network g = from_edges(3, {{0, 1, 0.8}, {1, 2, 0.8}});
    EXPECT_NEAR(matrices(g, 0.5).f_star(0, 2), 0.64, 1e-14);
    EXPECT_EQ(matrices(g, 0.7).f_star(0, 2), 0);
}

TEST(Matrices, IndirectBeatsDirect) {
    Network g = from_edges(3, {{0, 1, 0.198}, {0, 2, 0.79}, {2, 1, 0.6857}});
    EffectiveMatrices m = matrices(g, 0.5);
    EXPECT_NEAR(m.f_star(0, 1), 0.541703, 1e-6);
    EXPECT_NEAR(std::exp2(-m.A(0, 1)), 0.198, 1e-12);
    EXPECT_TRUE(std::isinf(m.A_star(0, 1)));
    PathResult r = shortest_path(g, 0, 1, 0.5);
    EXPECT_EQ(r.nodes, (std::vector<int>{0, 2, 1}));
}

TEST(ShortestPath, Examples) {
    Network one = from_edges(2, {{0, 1, 0.9}});
    PathResult r = shortest_path(one, 0, 1, 0.5);
    EXPECT_EQ(r.status, PathResult::Status::Found);
    EXPECT_NEAR(r.probability, 0.9, 1e-15);

    Network tri = from_edges(3, {{0, 1, 0.9}, {1, 2, 0.9}, {0, 2, 0.7}});
    r = shortest_path(tri, 0, 2, 0.5);
    EXPECT_EQ(r.nodes.size(), 3u);
    EXPECT_NEAR(r.probability, 0.81, 1e-14);

    r = shortest_path(from_edges(3, {{0, 1, 0.6}, {1, 2, 0.6}}), 0, 2, 0.5);
    EXPECT_EQ(r.status, PathResult::Status::Disconnected);
}

TEST(ShortestPath, ExhaustiveOracleOnRandomGraphs) {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 100; trial++) {
        int n = 2 + trial % 7;
        bool uniform = trial % 2 == 0;
        Network g = random_graph(rng, n, 0.5, uniform);
        double p_star = uniform ? 0.3 : 0.2;
        EffectiveMatrices m = matrices(g, p_star);
        for (int s = 0; s < n; s++)
            for (int t = 0; t < n; t++) {
                if (s == t) continue;
                Enumerated e = enumerate(g, s, t, p_star);
                PathResult r = shortest_path(g, s, t, p_star);
                EXPECT_NEAR(m.f_star(s, t), e.best_p, 1e-12);
                if (e.paths.empty()) {
                    EXPECT_EQ(r.status, PathResult::Status::Disconnected);
                    continue;
                }
                ASSERT_EQ(r.status, PathResult::Status::Found);
                EXPECT_NEAR(r.probability, e.best_p, 1e-12);
                std::vector<int> lex;
                for (size_t k = 0; k < e.paths.size(); k++)
                    if (tie(e.weights[k], e.best_w) && (lex.empty() || e.paths[k] < lex)) lex = e.paths[k];
                EXPECT_EQ(r.nodes, lex) << "trial " << trial;
            }
    }
}

TEST(Sparsity, Examples) {
    EXPECT_NEAR(link_sparsity(build_topology(TopologySpec::full_mesh(6, 0.9)), 0.5, StrategyKind::NonCooperative), 1.0 / 6,
                1e-15);
    EXPECT_NEAR(link_sparsity(build_topology(TopologySpec::square1024(0.9)), 0.5, StrategyKind::NonCooperative),
                1 - 3968.0 / (1024.0 * 1024.0), 1e-15);
    EXPECT_NEAR(link_sparsity(build_topology(TopologySpec::processor_cell(TopologySpec::Cell::Square, 0.9)), 0.5,
                              StrategyKind::NonCooperative),
                0.5, 1e-15);
    EXPECT_NEAR(link_sparsity(build_topology(TopologySpec::processor_cell(TopologySpec::Cell::Octagonal, 0.9)), 0.5,
                              StrategyKind::NonCooperative),
                0.75, 1e-15);
    EXPECT_NEAR(link_sparsity(build_topology(TopologySpec::processor_cell(TopologySpec::Cell::HeavyHexagonal, 0.9)), 0.5,
                              StrategyKind::NonCooperative),
                1 - 24.0 / 144, 1e-15);
}

TEST(Sparsity, CooperativeNeverAboveNonCooperative) {
    std::mt19937 rng(7);
    for (int t = 0; t < 30; t++) {
        Network g = random_graph(rng, 8, 0.4, false);
        EXPECT_LE(link_sparsity(g, 0.3, StrategyKind::Cooperative), link_sparsity(g, 0.3, StrategyKind::NonCooperative));
    }
}

TEST(Strength, Lattices) {
    for (double p : {0.3, 0.7}) {
        Network g = build_topology(TopologySpec::square1024(p));
        double ps = 0.1;
        EXPECT_NEAR(connection_strength(g, g.index("g2_2"), StrategyKind::NonCooperative, ps), p / 256, 1e-12);
        EXPECT_NEAR(connection_strength(g, g.index("g0_5"), StrategyKind::NonCooperative, ps), 3 * p / 1024, 1e-12);
        EXPECT_NEAR(connection_strength(g, g.index("g0_0"), StrategyKind::NonCooperative, ps), p / 512, 1e-12);
        using C = TopologySpec::Cell;
        std::vector<std::pair<C, double>> cells = {{C::Square, 2}, {C::Octagonal, 4}, {C::HeavyHexagonal, 6}};
        for (auto [cell, div] : cells) {
            Network c = build_topology(TopologySpec::processor_cell(cell, p));
            for (int v = 0; v < c.size(); v++)
                EXPECT_NEAR(connection_strength(c, v, StrategyKind::NonCooperative, ps), p / div, 1e-12);
        }
    }
}

TEST(Strength, ClosedForms) {
    EXPECT_NEAR(connection_strength(build_topology(TopologySpec::star(8, 0.5)), 0, StrategyKind::NonCooperative, 0.1, true),
                0.5625, 1e-15);
    for (bool self : {false, true})
        for (double p : {0.4, 0.9}) {
            Network star = build_topology(TopologySpec::star(8, p));
            double ps = 0.1;
            EXPECT_NEAR(connection_strength(star, 0, StrategyKind::NonCooperative, ps, self),
                        closed_form::star_hub_strength(8, p, self), 1e-14);
            for (auto st : {StrategyKind::NonCooperative, StrategyKind::Cooperative})
                EXPECT_NEAR(connection_strength(star, 3, st, ps, self), closed_form::star_leaf_strength(8, p, st, self),
                            1e-14);
            EXPECT_NEAR(link_sparsity(star, ps, StrategyKind::NonCooperative, self),
                        closed_form::star_sparsity_noncooperative(8, self), 1e-14);
            Network mesh = build_topology(TopologySpec::full_mesh(7, p));
            EXPECT_NEAR(connection_strength(mesh, 2, StrategyKind::NonCooperative, ps, self),
                        closed_form::full_mesh_strength(7, p, self), 1e-14);
            for (int d : {2, 3, 4, 5}) {
                Network c = build_topology(TopologySpec::circulant(12, d, p));
                double ps2 = 0.01;
                EXPECT_NEAR(connection_strength(c, 5, StrategyKind::NonCooperative, ps2, self),
                            closed_form::circulant_strength(12, d, p, self), 1e-14)
                    << d;
                EXPECT_NEAR(link_sparsity(c, ps2, StrategyKind::NonCooperative, self), closed_form::circulant_sparsity(12, d, self),
                            1e-14);
            }
        }
}

TEST(Strength, TotalOfMeshAndEmpty) {
    Network mesh = build_topology(TopologySpec::full_mesh(5, 0.8));
    EXPECT_NEAR(total_connection_strength(mesh, StrategyKind::NonCooperative, 0.5),
                5 * connection_strength(mesh, 0, StrategyKind::NonCooperative, 0.5), 1e-14);
    Network empty = from_edges(4, {});
    EXPECT_EQ(total_connection_strength(empty, StrategyKind::Cooperative, 0.5), 0);
}

TEST(SparsityIndex, Examples) {
    EXPECT_NEAR(sparsity_index_of(std::vector<double>(8, 0.3)), 1, 1e-14);
    std::vector<double> mass(8, 0.0);
    mass[3] = 2;
    EXPECT_NEAR(sparsity_index_of(mass), 1.0 / 8, 1e-14);
    EXPECT_EQ(sparsity_index_of(std::vector<double>(4, 0.0)), 0);
}

TEST(Clustering, Examples) {
    Network tri = from_edges(3, {{0, 1, 0.9}, {1, 2, 0.9}, {0, 2, 0.9}});
    EXPECT_NEAR(clustering_coefficient(tri, 0, 0.5), 1, 1e-15);
    Network claw = from_edges(4, {{0, 1, 0.9}, {0, 2, 0.9}, {0, 3, 0.9}, {1, 2, 0.9}});
    EXPECT_NEAR(clustering_coefficient(claw, 0, 0.5), 1.0 / 3, 1e-15);
    EXPECT_EQ(clustering_coefficient(claw, 3, 0.5), 0);
}

TEST(AverageWeight, Examples) {
    EXPECT_NEAR(average_effective_weight(from_edges(2, {{0, 1, 0.5}}), 0.25), 1, 1e-15);
    EXPECT_NEAR(average_effective_weight(from_edges(3, {{0, 1, 0.5}, {1, 2, 0.5}}), 1e-9), 4.0 / 3, 1e-14);
    EXPECT_TRUE(std::isinf(average_effective_weight(from_edges(3, {{0, 1, 0.5}}), 0.25)));
}

TEST(Centrality, Examples) {
    EXPECT_EQ(centrality(from_edges(3, {{0, 1, 0.9}, {1, 2, 0.9}}), 1, 0.5), 1);
    EXPECT_EQ(centrality(build_topology(TopologySpec::star(8, 0.9)), 0, 0.5), 21);
    for (auto rule : {CentralityRule::AnyMinimalPath, CentralityRule::CanonicalPath})
        EXPECT_EQ(centrality(square_diag(0.5), 0, 0.1, rule), 1);
    EXPECT_EQ(centrality(square_diag(0.5), 2, 0.1, CentralityRule::CanonicalPath), 0);
    EXPECT_EQ(centrality(square_diag(0.5), 2, 0.1, CentralityRule::AnyMinimalPath), 1);
}

TEST(Centrality, ExhaustiveOracle) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; trial++) {
        bool uniform = trial % 2 == 0;
        Network g = random_graph(rng, 3 + trial % 6, 0.5, uniform);
        double ps = 0.2;
        EXPECT_EQ(centralities(g, ps, CentralityRule::AnyMinimalPath), centrality_oracle(g, ps, false)) << trial;
        EXPECT_EQ(centralities(g, ps, CentralityRule::CanonicalPath), centrality_oracle(g, ps, true)) << trial;
    }
}

TEST(CriticalParameters, SquarePlusDiagonal) {
    auto rows = critical_parameters(square_diag(0.5), 0.1);
    const NodeReport *n1 = nullptr;
    for (const auto &r : rows)
        if (r.id == "n1") n1 = &r;
    ASSERT_NE(n1, nullptr);
    EXPECT_EQ(n1->centrality, 1);
    EXPECT_NEAR(n1->clustering, 2.0 / 3, 1e-15);
    EXPECT_NEAR(n1->neighbor_weight, 4.0 / 3, 1e-14);
    EXPECT_TRUE(n1->nu_defined);
    EXPECT_NEAR(n1->nu, 1.125, 1e-9);
}

TEST(CriticalParameters, UndefinedCases) {
    Network k4 = build_topology(TopologySpec::full_mesh(4, 1.0));
    for (const auto &r : critical_parameters(k4, 0.5)) EXPECT_FALSE(r.nu_defined);
    Network path = from_edges(3, {{0, 1, 0.9}, {1, 2, 0.9}});
    auto rows = critical_parameters(path, 0.5);
    for (const auto &r : rows)
        if (r.id != "n2") EXPECT_FALSE(r.nu_defined);
}

TEST(CriticalParameters, RankingOrder) {
    std::mt19937 rng(5);
    Network g = random_graph(rng, 9, 0.6, false);
    auto rows = critical_parameters(g, 0.2);
    for (size_t i = 1; i < rows.size(); i++) {
        const auto &a = rows[i - 1], &b = rows[i];
        if (a.nu_defined && b.nu_defined) EXPECT_GE(a.nu, b.nu);
        EXPECT_FALSE(!a.nu_defined && b.nu_defined);
    }
}

TEST(CriticalParameters, RelabelInvariant) {
    std::mt19937 rng(2024);
    std::vector<Network> graphs = {square_diag(0.5), random_graph(rng, 8, 0.5, true), random_graph(rng, 8, 0.5, false)};
    for (const auto &g : graphs) {
        auto base = critical_parameters(g, 0.1);
        std::map<std::string, NodeReport> by_id;
        for (const auto &r : base) by_id[r.id] = r;
        for (int k = 0; k < 20; k++) {
            Network h = g.relabeled(random_perm(rng, g.size()));
            for (const auto &r : critical_parameters(h, 0.1)) {
                const NodeReport &o = by_id.at(r.id);
                EXPECT_EQ(r.centrality, o.centrality);
                EXPECT_EQ(r.nu_defined, o.nu_defined);
                if (r.nu_defined) EXPECT_NEAR(r.nu, o.nu, 1e-12);
            }
        }
    }
}

TEST(Topology, Sizes) {
    Network star = build_topology(TopologySpec::star(8, 0.5));
    EXPECT_EQ(star.edge_count(), 7);
    EXPECT_EQ(star.neighbors(0).size(), 7u);
    Network cell = build_topology(TopologySpec::processor_cell(TopologySpec::Cell::Square, 0.5));
    EXPECT_EQ(cell.size(), 4);
    EXPECT_EQ(cell.edge_count(), 4);
    Network sq = build_topology(TopologySpec::square1024(0.5));
    EXPECT_EQ(sq.size(), 1024);
    EXPECT_EQ(sq.edge_count(), 1984);
    EXPECT_THROW(build_topology(TopologySpec::circulant(7, 3, 0.5)), std::invalid_argument);
}

TEST(Construct, Certificates) {
    auto c = construct_network(2, 2, {0.9}, {0.9});
    EXPECT_EQ(c.network.size(), 8);
    EXPECT_GE(c.certificate.max_disjoint_paths, 2);
    EXPECT_TRUE(c.certificate.pairing_disjoint);
    EXPECT_TRUE(c.certificate.all_pairs_connected);
    auto one = construct_network(1, 1, {0.9}, {0.9});
    EXPECT_EQ(one.network.size(), 4);
    EXPECT_EQ(one.certificate.max_disjoint_paths, 1);
    auto c32 = construct_network(3, 2, {0.8}, {0.9});
    EXPECT_GE(c32.certificate.max_disjoint_paths, 2);
    EXPECT_TRUE(c32.certificate.pairing_disjoint);
}

TEST(CriticallyLarge, Examples) {
    Network line = from_edges(2, {{0, 1, 0.9}});
    auto r = critically_large_check(line, 0.5, 0.9);
    EXPECT_EQ(r.n0, 7);
    EXPECT_EQ(r.distance_requirement, 8);
    EXPECT_FALSE(r.is_critically_large);
    auto grid = critically_large_check(build_topology(TopologySpec::grid(10, 10, 0.9)), 0.5, 0.9);
    EXPECT_EQ(grid.diameter, 18);
    EXPECT_TRUE(grid.is_critically_large);
    ASSERT_TRUE(grid.witness_pair.has_value());
    auto low = critically_large_check(from_edges(3, {{0, 1, 0.4}, {1, 2, 0.4}}), 0.5, 0.4);
    EXPECT_EQ(low.n0, 1);
    EXPECT_TRUE(low.is_critically_large);
}

TEST(Reachability, ChainAndGrids) {
    Network chain;
    for (int i = 0; i < 100; i++) chain.add_node("c" + std::to_string(i));
    for (int i = 0; i + 1 < 100; i++) chain.add_edge(i, i + 1, 0.8);
    auto r = task_reachability(chain, 0.5);
    EXPECT_EQ(r.reachable[50], 7);
    EXPECT_EQ(r.max_fraction, 0.07);
    double prev = 2;
    for (int side : {10, 20, 40}) {
        double f = task_reachability(build_topology(TopologySpec::grid(side, side, 0.9)), 0.5).max_fraction;
        EXPECT_LT(f, prev);
        prev = f;
    }
}

TEST(Evolve, SingleStepAndMonotone) {
    auto steps = evolve(from_edges(2, {{0, 1, 0.8}}), 0.9, 0.3, 0.5, 1);
    ASSERT_EQ(steps.size(), 2u);
    EXPECT_NEAR(*steps[1].network.edge_p(0, 1), 0.9 * std::exp(-0.3) * 0.8, 1e-15);
    EXPECT_NEAR(*steps[1].network.edge_p(0, 1), 0.533389, 1e-6);
    std::mt19937 rng(11);
    for (int t = 0; t < 20; t++) {
        Network g = random_graph(rng, 8, 0.5, false);
        auto seq = evolve(g, 0.95, 0.01, 0.2, 50);
        for (size_t i = 1; i < seq.size(); i++) EXPECT_GE(seq[i].sparsity, seq[i - 1].sparsity);
    }
}

TEST(EdgeList, RoundTripAndErrors) {
    Network g = build_topology(TopologySpec::circulant(8, 4, 0.7));
    g.add_node("lonely");
    std::stringstream ss;
    write_edge_list(ss, g);
    Network h = read_edge_list(ss);
    EXPECT_EQ(h.size(), g.size());
    EXPECT_EQ(h.edge_count(), g.edge_count());
    for (const auto &e : g.edges()) EXPECT_EQ(*h.edge_p(h.index(g.id(e.u)), h.index(g.id(e.v))), e.p);

    for (std::string bad : {"a,b,1.5\n", "a,b\n", "a,b,x\n", "a,a,0.5\n", "a,b,0.5\nb,a,0.6\n", "a,b,0\n"}) {
        std::istringstream in(bad);
        EXPECT_THROW(read_edge_list(in), DataError) << bad;
    }
    std::istringstream ok("# comment\n\nnode_a,node_b,p\na,b,0.5\n");
    EXPECT_EQ(read_edge_list(ok).edge_count(), 1);
}
