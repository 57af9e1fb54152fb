#ifndef QNETLIM_NETGRAPH_H
#define QNETLIM_NETGRAPH_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qnetlim {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected graph with a success probability in (0,1] on every edge.
// p_ii = 1 by convention and is never stored.
class Network {
   public:
    struct Neighbor {
        int to;
        double p;
    };
    struct Edge {
        int u;
        int v;
        double p;
    };

    int add_node(const std::string &id);
    void add_edge(int u, int v, double p);
    void add_edge(const std::string &a, const std::string &b, double p);
    void set_coordinates(int v, double lat, double lon);

    int size() const { return static_cast<int>(ids_.size()); }
    int edge_count() const { return edge_count_; }
    const std::string &id(int v) const { return ids_.at(v); }
    const std::vector<std::string> &ids() const { return ids_; }
    int index(const std::string &id) const;
    std::optional<int> find(const std::string &id) const;
    const std::vector<Neighbor> &neighbors(int v) const { return adj_.at(v); }
    std::optional<double> edge_p(int u, int v) const;
    std::vector<Edge> edges() const;  // u < v, sorted

    bool has_coordinates(int v) const;
    std::pair<double, double> coordinates(int v) const;

    Network induced_subgraph(const std::vector<int> &nodes) const;
    // Node i of this network becomes node perm[i] of the result, with id new_ids[perm[i]]
    // (ids are kept when new_ids is empty).
    Network relabeled(const std::vector<int> &perm, const std::vector<std::string> &new_ids = {}) const;

   private:
    static std::uint64_t key(int u, int v);

    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Neighbor>> adj_;
    std::unordered_map<std::uint64_t, double> edge_p_;
    std::vector<std::optional<std::pair<double, double>>> coords_;
    int edge_count_ = 0;
};

enum class StrategyKind { NonCooperative, Cooperative };

// -log2 p when p >= p*, +inf otherwise.
double effective_weight(double p, double p_star);

struct EffectiveMatrices {
    Eigen::MatrixXd A;
    Eigen::MatrixXd A_star;
    Eigen::MatrixXd f_star;
};

EffectiveMatrices matrices(const Network &g, double p_star);

// Maximum path success probability from src to every node, 0 where below p*.
// The src entry holds 1.
std::vector<double> best_path_probabilities(const Network &g, int src, double p_star);

struct PathResult {
    enum class Status { Found, Disconnected };
    std::vector<int> nodes;
    double weight = 0;  // bits
    double probability = 0;
    Status status = Status::Disconnected;
};

// Minimum-weight path; ties go to the lexicographically smallest node-index sequence.
PathResult shortest_path(const Network &g, int src, int dst, double p_star);
PathResult shortest_path(const Network &g, const std::string &src, const std::string &dst, double p_star);

double link_sparsity(const Network &g, double p_star, StrategyKind strategy, bool include_self = false);
double connection_strength(const Network &g, int v, StrategyKind strategy, double p_star, bool include_self = false);
std::vector<double> connection_strengths(const Network &g, StrategyKind strategy, double p_star,
                                         bool include_self = false);
double total_connection_strength(const Network &g, StrategyKind strategy, double p_star);
double sparsity_index_of(std::vector<double> zeta);
double sparsity_index(const Network &g, StrategyKind strategy, double p_star);

double clustering_coefficient(const Network &g, int v, double p_star);
double average_effective_weight(const Network &g, double p_star);

enum class CentralityRule {
    // Pair counts for v when v is interior to at least one weight-minimal path.
    AnyMinimalPath,
    // Pair counts for v when v is interior to the lexicographically smallest minimal path.
    CanonicalPath,
};

long long centrality(const Network &g, int v, double p_star, CentralityRule rule = CentralityRule::AnyMinimalPath);
std::vector<long long> centralities(const Network &g, double p_star, CentralityRule rule = CentralityRule::AnyMinimalPath);

struct NodeReport {
    std::string id;
    int index = 0;
    double clustering = 0;
    long long centrality = 0;
    double connection_strength = 0;  // cooperative
    double neighbor_weight = 0;      // average effective weight of the neighbour subgraph
    double nu = 0;
    bool nu_defined = false;
};

// Ranked: defined nu descending, undefined last, then centrality descending, then id.
std::vector<NodeReport> critical_parameters(const Network &g, double p_star,
                                            CentralityRule rule = CentralityRule::AnyMinimalPath);

struct TopologySpec {
    enum class Kind { Star, FullMesh, PartialMesh, Circulant, Grid, ProcessorCell, Square1024 };
    enum class Cell { Square, Octagonal, HeavyHexagonal };
    Kind kind = Kind::Star;
    int n = 0;
    int d = 0;  // circulant degree
    int w = 0;
    int h = 0;
    Cell cell = Cell::Square;
    double p = 1;
    std::vector<std::pair<int, int>> edges;  // partial mesh, 0-based

    static TopologySpec star(int n, double p);
    static TopologySpec full_mesh(int n, double p);
    static TopologySpec partial_mesh(int n, std::vector<std::pair<int, int>> edges, double p);
    static TopologySpec circulant(int n, int d, double p);
    static TopologySpec grid(int w, int h, double p);
    static TopologySpec processor_cell(Cell cell, double p);
    static TopologySpec square1024(double p);
};

Network build_topology(const TopologySpec &spec);

// Closed forms for uniform topologies. include_self adds the p_ii = 1 term.
namespace closed_form {
double star_hub_strength(int n, double p, bool include_self);
double star_leaf_strength(int n, double p, StrategyKind strategy, bool include_self);
double star_sparsity_noncooperative(int n, bool include_self);
double full_mesh_strength(int n, double p, bool include_self);
double circulant_strength(int n, int d, double p, bool include_self);
double circulant_sparsity(int n, int d, bool include_self);
}  // namespace closed_form

struct ConstructionCertificate {
    std::vector<std::vector<int>> pairing_paths;  // A_i -> B_i shortest paths
    bool pairing_disjoint = false;
    int max_disjoint_paths = 0;  // vertex-disjoint A-set to B-set paths
    bool all_pairs_connected = false;
};

struct ConstructedNetwork {
    Network network;
    ConstructionCertificate certificate;
};

// mesh_p: one value, or one per core pair (i<j, row-major); attach_p: one value or n_A+n_B values.
ConstructedNetwork construct_network(int n_a, int n_b, const std::vector<double> &mesh_p,
                                     const std::vector<double> &attach_p);

int max_vertex_disjoint_paths(const Network &g, const std::vector<int> &sources, const std::vector<int> &sinks);

struct CriticallyLargeResult {
    bool is_critically_large = false;
    int n0 = 0;
    int distance_requirement = 0;
    int diameter = 0;  // hop diameter over connected pairs
    std::optional<std::pair<int, int>> witness_pair;
};

CriticallyLargeResult critically_large_check(const Network &g, double p_star, double c);

struct ReachabilityResult {
    std::vector<int> reachable;  // includes the node itself
    double max_fraction = 0;
};

ReachabilityResult task_reachability(const Network &g, double p_star);

struct EvolutionStep {
    int t;
    Network network;
    double sparsity;  // cooperative
};

// Entry 0 is the initial network at t = 1; each further entry applies one update.
std::vector<EvolutionStep> evolve(const Network &g, double w, double k, double p_star, int steps);

// Edge-list text: "node_a,node_b,p" per line, '#' comments. A line with a single
// field declares an isolated node.
Network read_edge_list(std::istream &in);
Network read_edge_list_file(const std::string &path);
void write_edge_list(std::ostream &out, const Network &g);
void write_matrix_csv(std::ostream &out, const Network &g, const Eigen::MatrixXd &m);

}  // namespace qnetlim

#endif
