#include "qnetlim/netgraph.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

#include "parallel.h"

namespace qnetlim {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void check_p_star(double p_star) {
    if (!(p_star > 0 && p_star < 1)) throw std::invalid_argument("p* must lie in (0,1)");
}

void check_node(const Network &g, int v) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("node index out of range");
}

// Relative tolerance for treating two path probabilities as tied.
bool tied(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

struct Sssp {
    std::vector<double> prob;  // 0 where unreachable at p*
    std::vector<int> order;    // settle order, src first
};

// Max-product Dijkstra. Products only shrink along a path, so pruning below p*
// is exact.
Sssp best_paths(const Network &g, int src, double p_star) {
    int n = g.size();
    Sssp r;
    r.prob.assign(n, 0.0);
    std::vector<char> done(n, 0);
    using Item = std::pair<double, int>;
    auto cmp = [](const Item &a, const Item &b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    r.prob[src] = 1;
    pq.push({1.0, src});
    while (!pq.empty()) {
        auto [pr, u] = pq.top();
        pq.pop();
        if (done[u] || pr < r.prob[u]) continue;
        done[u] = 1;
        r.order.push_back(u);
        for (const auto &nb : g.neighbors(u)) {
            if (done[nb.to] || nb.p < p_star) continue;
            double c = pr * nb.p;
            if (c < p_star) continue;
            if (c > r.prob[nb.to]) {
                r.prob[nb.to] = c;
                pq.push({c, nb.to});
            }
        }
    }
    return r;
}

struct LexTree {
    std::vector<double> prob;
    std::vector<int> pred;
    std::vector<int> order;
};

std::vector<int> path_to(const std::vector<int> &pred, int v) {
    std::vector<int> path;
    for (; v >= 0; v = pred[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

// Dijkstra where tied candidates keep the lexicographically smaller node sequence.
LexTree lex_paths(const Network &g, int src, double p_star, int stop = -1) {
    int n = g.size();
    LexTree t;
    t.prob.assign(n, 0.0);
    t.pred.assign(n, -1);
    std::vector<char> done(n, 0);
    using Item = std::pair<double, int>;
    auto cmp = [](const Item &a, const Item &b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    t.prob[src] = 1;
    pq.push({1.0, src});
    while (!pq.empty()) {
        auto [pr, u] = pq.top();
        pq.pop();
        if (done[u] || pr != t.prob[u]) continue;
        done[u] = 1;
        t.order.push_back(u);
        if (u == stop) break;
        for (const auto &nb : g.neighbors(u)) {
            int v = nb.to;
            if (done[v] || nb.p < p_star) continue;
            double c = pr * nb.p;
            if (c < p_star) continue;
            bool take = false;
            if (t.prob[v] == 0 || (c > t.prob[v] && !tied(c, t.prob[v]))) {
                take = true;
            } else if (tied(c, t.prob[v])) {
                take = path_to(t.pred, u) < path_to(t.pred, t.pred[v]);
            }
            if (take) {
                t.pred[v] = u;
                if (c != t.prob[v]) {
                    t.prob[v] = c;
                    pq.push({c, v});
                }
            }
        }
    }
    return t;
}

std::vector<int> distinct_neighbors(const Network &g, int v) {
    std::vector<int> out;
    for (const auto &nb : g.neighbors(v)) out.push_back(nb.to);
    std::sort(out.begin(), out.end());
    return out;
}

// Per-source counts of pairs {s,t}, s < t, for which v is interior to some minimal path.
void any_minimal_counts(const Network &g, int s, double p_star, std::vector<long long> &tau) {
    Sssp r = best_paths(g, s, p_star);
    int k = static_cast<int>(r.order.size());
    if (k < 3) return;
    std::vector<int> pos(g.size(), -1);
    for (int i = 0; i < k; i++) pos[r.order[i]] = i;
    int words = (k + 63) / 64;
    std::vector<std::uint64_t> desc(static_cast<size_t>(k) * words, 0);
    std::vector<std::uint64_t> mask(words, 0);
    for (int i = 0; i < k; i++)
        if (r.order[i] > s) mask[i / 64] |= std::uint64_t{1} << (i % 64);
    for (int i = k - 1; i >= 1; i--) {
        int v = r.order[i];
        std::uint64_t *dv = &desc[static_cast<size_t>(i) * words];
        for (const auto &nb : g.neighbors(v)) {
            int j = pos[nb.to];
            if (j < 0 || j >= i || nb.p < p_star) continue;
            if (!tied(r.prob[nb.to] * nb.p, r.prob[v])) continue;
            std::uint64_t *du = &desc[static_cast<size_t>(j) * words];
            for (int w = 0; w < words; w++) du[w] |= dv[w];
            du[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        long long cnt = 0;
        for (int w = 0; w < words; w++) cnt += std::popcount(dv[w] & mask[w]);
        tau[v] += cnt;
    }
}

std::vector<long long> canonical_counts(const Network &g, double p_star) {
    int n = g.size();
    std::vector<long long> tau(n, 0);
    for (int s = 0; s < n; s++) {
        LexTree t = lex_paths(g, s, p_star);
        for (int v : t.order) {
            if (v <= s) continue;
            for (int u = t.pred[v]; u >= 0 && u != s; u = t.pred[u]) tau[u]++;
        }
    }
    return tau;
}

}  // namespace

std::uint64_t Network::key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

int Network::add_node(const std::string &id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    if (id.empty()) throw std::invalid_argument("node id must be nonempty");
    int v = size();
    ids_.push_back(id);
    index_.emplace(id, v);
    adj_.emplace_back();
    coords_.emplace_back();
    return v;
}

void Network::add_edge(int u, int v, double p) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop edges are not allowed");
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("edge probability must lie in (0,1]");
    if (!edge_p_.emplace(key(u, v), p).second)
        throw std::invalid_argument("duplicate edge " + ids_[u] + "," + ids_[v]);
    adj_[u].push_back({v, p});
    adj_[v].push_back({u, p});
    edge_count_++;
}

void Network::add_edge(const std::string &a, const std::string &b, double p) {
    add_edge(add_node(a), add_node(b), p);
}

void Network::set_coordinates(int v, double lat, double lon) { coords_.at(v) = std::make_pair(lat, lon); }

int Network::index(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown node id '" + id + "'");
    return it->second;
}

std::optional<int> Network::find(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> Network::edge_p(int u, int v) const {
    auto it = edge_p_.find(key(u, v));
    if (it == edge_p_.end()) return std::nullopt;
    return it->second;
}

std::vector<Network::Edge> Network::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < size(); u++)
        for (const auto &nb : adj_[u])
            if (u < nb.to) out.push_back({u, nb.to, nb.p});
    std::sort(out.begin(), out.end(), [](const Edge &a, const Edge &b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    return out;
}

bool Network::has_coordinates(int v) const { return coords_.at(v).has_value(); }

std::pair<double, double> Network::coordinates(int v) const {
    if (!coords_.at(v)) throw std::invalid_argument("node " + ids_.at(v) + " has no coordinates");
    return *coords_[v];
}

Network Network::induced_subgraph(const std::vector<int> &nodes) const {
    Network out;
    std::vector<int> map(size(), -1);
    for (int v : nodes) {
        map.at(v) = out.add_node(ids_[v]);
        if (coords_[v]) out.coords_[map[v]] = coords_[v];
    }
    for (int v : nodes)
        for (const auto &nb : adj_[v])
            if (map[nb.to] >= 0 && v < nb.to) out.add_edge(map[v], map[nb.to], nb.p);
    return out;
}

Network Network::relabeled(const std::vector<int> &perm, const std::vector<std::string> &new_ids) const {
    int n = size();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> inv(n, -1);
    for (int i = 0; i < n; i++) {
        if (perm[i] < 0 || perm[i] >= n || inv[perm[i]] >= 0) throw std::invalid_argument("not a permutation");
        inv[perm[i]] = i;
    }
    Network out;
    for (int j = 0; j < n; j++) {
        out.add_node(new_ids.empty() ? ids_[inv[j]] : new_ids.at(j));
        out.coords_[j] = coords_[inv[j]];
    }
    for (const auto &e : edges()) out.add_edge(perm[e.u], perm[e.v], e.p);
    return out;
}

double effective_weight(double p, double p_star) {
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("p must lie in (0,1]");
    check_p_star(p_star);
    return p >= p_star ? -std::log2(p) : kInf;
}

EffectiveMatrices matrices(const Network &g, double p_star) {
    check_p_star(p_star);
    int n = g.size();
    EffectiveMatrices m;
    m.A = Eigen::MatrixXd::Constant(n, n, kInf);
    m.A_star = Eigen::MatrixXd::Constant(n, n, kInf);
    m.f_star = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; i++) {
        m.A(i, i) = 0;
        m.A_star(i, i) = 0;
        for (const auto &nb : g.neighbors(i)) {
            m.A(i, nb.to) = -std::log2(nb.p);
            if (nb.p >= p_star) m.A_star(i, nb.to) = -std::log2(nb.p);
        }
    }
    detail::parallel_for(n, [&](int, int i) {
        Sssp r = best_paths(g, i, p_star);
        for (int j = 0; j < n; j++)
            if (j != i) m.f_star(i, j) = r.prob[j];
    });
    return m;
}

std::vector<double> best_path_probabilities(const Network &g, int src, double p_star) {
    check_p_star(p_star);
    check_node(g, src);
    return best_paths(g, src, p_star).prob;
}

PathResult shortest_path(const Network &g, int src, int dst, double p_star) {
    check_p_star(p_star);
    check_node(g, src);
    check_node(g, dst);
    PathResult res;
    if (src == dst) {
        res.nodes = {src};
        res.probability = 1;
        res.status = PathResult::Status::Found;
        return res;
    }
    LexTree t = lex_paths(g, src, p_star, dst);
    if (t.prob[dst] == 0) return res;
    res.nodes = path_to(t.pred, dst);
    res.probability = 1;
    for (size_t i = 1; i < res.nodes.size(); i++) {
        double p = *g.edge_p(res.nodes[i - 1], res.nodes[i]);
        res.weight += -std::log2(p);
        res.probability *= p;
    }
    res.status = PathResult::Status::Found;
    return res;
}

PathResult shortest_path(const Network &g, const std::string &src, const std::string &dst, double p_star) {
    return shortest_path(g, g.index(src), g.index(dst), p_star);
}

double link_sparsity(const Network &g, double p_star, StrategyKind strategy, bool include_self) {
    check_p_star(p_star);
    int n = g.size();
    if (n == 0) throw std::invalid_argument("empty network");
    long long count = 0;
    if (strategy == StrategyKind::NonCooperative) {
        for (const auto &e : g.edges())
            if (e.p >= p_star) count += 2;
    } else {
        std::vector<long long> per(detail::parallel_workers(n), 0);
        detail::parallel_for(n, [&](int w, int i) {
            Sssp r = best_paths(g, i, p_star);
            per[w] += static_cast<long long>(r.order.size()) - 1;
        });
        for (long long c : per) count += c;
    }
    if (include_self) count += n;
    return 1.0 - static_cast<double>(count) / (static_cast<double>(n) * n);
}

double connection_strength(const Network &g, int v, StrategyKind strategy, double p_star, bool include_self) {
    check_p_star(p_star);
    check_node(g, v);
    double sum = include_self ? 1.0 : 0.0;
    if (strategy == StrategyKind::NonCooperative) {
        for (const auto &nb : g.neighbors(v))
            if (nb.p >= p_star) sum += nb.p;
    } else {
        Sssp r = best_paths(g, v, p_star);
        for (int u : r.order)
            if (u != v) sum += r.prob[u];
    }
    return sum / g.size();
}

std::vector<double> connection_strengths(const Network &g, StrategyKind strategy, double p_star, bool include_self) {
    check_p_star(p_star);
    int n = g.size();
    std::vector<double> z(n, 0.0);
    int min_parallel = strategy == StrategyKind::Cooperative ? 64 : std::numeric_limits<int>::max();
    detail::parallel_for(
        n, [&](int, int v) { z[v] = connection_strength(g, v, strategy, p_star, include_self); }, min_parallel);
    return z;
}

double total_connection_strength(const Network &g, StrategyKind strategy, double p_star) {
    double total = 0;
    for (double z : connection_strengths(g, strategy, p_star)) total += z;
    return total;
}

double sparsity_index_of(std::vector<double> zeta) {
    int n = static_cast<int>(zeta.size());
    if (n == 0) throw std::invalid_argument("empty strength list");
    std::sort(zeta.begin(), zeta.end());
    double total = 0;
    for (double z : zeta) total += z;
    if (total <= 0) return 0;
    double area = 0, prev = 0, cum = 0;
    for (double z : zeta) {
        cum += z;
        double y = cum / total;
        area += (prev + y) / 2 / n;
        prev = y;
    }
    return area / 0.5;
}

double sparsity_index(const Network &g, StrategyKind strategy, double p_star) {
    return sparsity_index_of(connection_strengths(g, strategy, p_star));
}

double clustering_coefficient(const Network &g, int v, double p_star) {
    check_p_star(p_star);
    check_node(g, v);
    std::vector<int> nbrs = distinct_neighbors(g, v);
    long long ni = static_cast<long long>(nbrs.size());
    if (ni < 2) return 0;
    std::vector<char> in(g.size(), 0);
    for (int u : nbrs) in[u] = 1;
    long long e = 0;
    for (int u : nbrs)
        for (const auto &nb : g.neighbors(u))
            if (in[nb.to] && u < nb.to && nb.p >= p_star) e++;
    return 2.0 * e / (ni * (ni - 1));
}

double average_effective_weight(const Network &g, double p_star) {
    check_p_star(p_star);
    int n = g.size();
    if (n < 2) throw std::invalid_argument("average effective weight needs at least two nodes");
    double sum = 0;
    for (int s = 0; s < n; s++) {
        Sssp r = best_paths(g, s, p_star);
        if (static_cast<int>(r.order.size()) < n) return kInf;
        for (int t = 0; t < n; t++)
            if (t != s) sum += -std::log2(r.prob[t]);
    }
    return sum / (static_cast<double>(n) * (n - 1));
}

std::vector<long long> centralities(const Network &g, double p_star, CentralityRule rule) {
    check_p_star(p_star);
    int n = g.size();
    if (rule == CentralityRule::CanonicalPath) return canonical_counts(g, p_star);
    int workers = detail::parallel_workers(n, 16);
    std::vector<std::vector<long long>> per(workers, std::vector<long long>(n, 0));
    detail::parallel_for(n, [&](int w, int s) { any_minimal_counts(g, s, p_star, per[w]); }, 16);
    std::vector<long long> tau(n, 0);
    for (const auto &p : per)
        for (int i = 0; i < n; i++) tau[i] += p[i];
    return tau;
}

long long centrality(const Network &g, int v, double p_star, CentralityRule rule) {
    check_node(g, v);
    return centralities(g, p_star, rule)[v];
}

std::vector<NodeReport> critical_parameters(const Network &g, double p_star, CentralityRule rule) {
    check_p_star(p_star);
    int n = g.size();
    std::vector<long long> tau = centralities(g, p_star, rule);
    std::vector<double> zeta = connection_strengths(g, StrategyKind::Cooperative, p_star);
    std::vector<NodeReport> out(n);
    detail::parallel_for(
        n,
        [&](int, int i) {
            NodeReport &r = out[i];
            r.id = g.id(i);
            r.index = i;
            r.centrality = tau[i];
            r.connection_strength = zeta[i];
            r.clustering = clustering_coefficient(g, i, p_star);
            std::vector<int> nbrs = distinct_neighbors(g, i);
            r.neighbor_weight = nbrs.size() >= 2 ? average_effective_weight(g.induced_subgraph(nbrs), p_star) : kInf;
            r.nu_defined = r.clustering > 0 && std::isfinite(r.neighbor_weight) && r.neighbor_weight > 0;
            r.nu = r.nu_defined ? static_cast<double>(tau[i]) / (r.clustering * r.neighbor_weight) : 0.0;
        },
        16);
    std::sort(out.begin(), out.end(), [](const NodeReport &a, const NodeReport &b) {
        if (a.nu_defined != b.nu_defined) return a.nu_defined;
        if (a.nu_defined && a.nu != b.nu) return a.nu > b.nu;
        if (a.centrality != b.centrality) return a.centrality > b.centrality;
        return a.id < b.id;
    });
    return out;
}

CriticallyLargeResult critically_large_check(const Network &g, double p_star, double c) {
    check_p_star(p_star);
    if (!(c > 0 && c < 1)) throw std::invalid_argument("c must lie in (0,1)");
    for (const auto &e : g.edges())
        if (e.p > c) throw std::invalid_argument("edge probability exceeds c");
    CriticallyLargeResult res;
    res.n0 = 1;
    for (double v = c; !(v < p_star); v *= c) res.n0++;
    res.distance_requirement = static_cast<int>(std::ceil(std::log(p_star) / std::log(c))) + 1;
    int n = g.size();
    std::vector<int> far(n, 0), far_node(n, -1);
    detail::parallel_for(n, [&](int, int s) {
        std::vector<int> dist(n, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (size_t h = 0; h < queue.size(); h++) {
            int u = queue[h];
            for (const auto &nb : g.neighbors(u))
                if (dist[nb.to] < 0) {
                    dist[nb.to] = dist[u] + 1;
                    queue.push_back(nb.to);
                }
        }
        for (int t = s + 1; t < n; t++)
            if (dist[t] > far[s]) {
                far[s] = dist[t];
                far_node[s] = t;
            }
    });
    for (int s = 0; s < n; s++)
        if (far[s] > res.diameter) {
            res.diameter = far[s];
            res.witness_pair = std::make_pair(s, far_node[s]);
        }
    res.is_critically_large = res.diameter >= res.distance_requirement;
    if (!res.is_critically_large) res.witness_pair.reset();
    return res;
}

ReachabilityResult task_reachability(const Network &g, double p_star) {
    check_p_star(p_star);
    int n = g.size();
    ReachabilityResult res;
    res.reachable.assign(n, 0);
    detail::parallel_for(n, [&](int, int s) { res.reachable[s] = static_cast<int>(best_paths(g, s, p_star).order.size()); });
    int best = 0;
    for (int r : res.reachable) best = std::max(best, r);
    res.max_fraction = n > 0 ? static_cast<double>(best) / n : 0.0;
    return res;
}

std::vector<EvolutionStep> evolve(const Network &g, double w, double k, double p_star, int steps) {
    check_p_star(p_star);
    if (!(w > 0 && w <= 1)) throw std::invalid_argument("w must lie in (0,1]");
    if (!(k >= 0)) throw std::invalid_argument("k must be nonnegative");
    if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
    std::vector<EvolutionStep> out;
    out.push_back({1, g, link_sparsity(g, p_star, StrategyKind::Cooperative)});
    for (int t = 1; t <= steps; t++) {
        const Network &prev = out.back().network;
        Network next;
        for (int v = 0; v < prev.size(); v++) {
            next.add_node(prev.id(v));
            if (prev.has_coordinates(v)) {
                auto [lat, lon] = prev.coordinates(v);
                next.set_coordinates(v, lat, lon);
            }
        }
        double factor = w * std::exp(-k * t);
        for (const auto &e : prev.edges()) {
            double p = factor * e.p;
            if (p > p_star) next.add_edge(e.u, e.v, p);
        }
        double ups = link_sparsity(next, p_star, StrategyKind::Cooperative);
        out.push_back({t + 1, std::move(next), ups});
    }
    return out;
}

}  // namespace qnetlim
