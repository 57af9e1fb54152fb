// qnetlim command-line front end. Every command writes CSV with '#' comment
// headers that echo the resolved parameters.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnetlim/buffersim.h"
#include "qnetlim/figures.h"
#include "qnetlim/netgraph.h"
#include "qnetlim/repeater.h"
#include "qnetlim/scenario.h"
#include "qnetlim/text.h"

using namespace qnetlim;
using detail::fmt;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Infeasible parameters: the result is printed, then the process exits 1.
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw DataError("cannot write " + path);
        }
    }
    std::ostream &os() { return file_ ? *file_ : std::cout; }

   private:
    std::unique_ptr<std::ofstream> file_;
};

void header(std::ostream &os, const std::string &cmd, const std::vector<std::pair<std::string, std::string>> &params) {
    os << "# qnetlim " << cmd << "\n";
    for (const auto &[k, v] : params) os << "# " << k << "=" << v << "\n";
}

StrategyKind parse_strategy(const std::string &s) {
    if (s == "cooperative") return StrategyKind::Cooperative;
    if (s == "noncooperative") return StrategyKind::NonCooperative;
    throw UsageError("strategy must be cooperative or noncooperative");
}

std::string data_dir() {
    const char *env = std::getenv("QNETLIM_DATA_DIR");
    return env ? env : "";
}

// Relative paths that do not exist are looked up under QNETLIM_DATA_DIR.
std::string resolve(const std::string &path) {
    if (path.empty() || path.front() == '/') return path;
    std::ifstream probe(path);
    if (probe) return path;
    std::string dir = data_dir();
    return dir.empty() ? path : dir + "/" + path;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum network feasibility analyzer"};
    app.require_subcommand(1);
    std::string out_path;

    // chain
    auto *chain = app.add_subcommand("chain", "maximum repeater count of a linear isotropic-state chain");
    double c_lambda = 1, c_q = 1, c_theta = std::numbers::pi / 4, c_threshold = 0.5;
    std::string c_task = "diqkd";
    int c_n = -1;
    chain->add_option("--lambda", c_lambda, "link visibility, dimensionless in [0,1]")->required()->check(CLI::Range(0.0, 1.0));
    chain->add_option("--q", c_q, "Bell-measurement success probability in [0,1]")->check(CLI::Range(0.0, 1.0));
    chain->add_option("--task", c_task, "diqkd | chsh | teleportation | entanglement | entanglement-apph | custom");
    chain->add_option("--theta", c_theta, "DI-QKD angle, radians in (0, pi/2)");
    chain->add_option("--threshold", c_threshold, "custom visibility threshold in (0,1)");
    chain->add_option("--n", c_n, "also report the end-to-end visibility and zero-key window for n repeaters")->check(CLI::NonNegativeNumber);
    chain->add_option("--out", out_path, "output file (default stdout)");

    // tradeoff
    auto *tradeoff = app.add_subcommand("tradeoff", "critical fiber length / storage time trade-off");
    double t_alpha = 1.0 / 22, t_beta = 1.0 / 50, t_eta = 1, t_q = 1, t_pstar = 0.5, t_f = 0;
    double t_l = -1, t_t = -1;
    int t_r = 1;
    tradeoff->add_option("--alpha", t_alpha, "fiber loss, 1/km")->check(CLI::NonNegativeNumber);
    tradeoff->add_option("--beta", t_beta, "memory loss, 1/s")->check(CLI::NonNegativeNumber);
    tradeoff->add_option("--eta-s", t_eta, "source efficiency in [0,1]")->check(CLI::Range(0.0, 1.0));
    tradeoff->add_option("--q", t_q, "Bell success probability in [0,1]")->check(CLI::Range(0.0, 1.0));
    tradeoff->add_option("--p-star", t_pstar, "critical success probability in (0,1)")->check(CLI::Range(0.0, 1.0));
    tradeoff->add_option("--r", t_r, "repeater stations, >= 1")->check(CLI::PositiveNumber);
    tradeoff->add_option("--f", t_f, "use the f-fold bound -f ln p* instead (f >= 1)");
    tradeoff->add_option("--l", t_l, "fiber length to test, km");
    tradeoff->add_option("--t", t_t, "storage time to test, s");
    tradeoff->add_option("--out", out_path, "output file");

    // nqi
    auto *nqi = app.add_subcommand("nqi", "upper bound on fiber loss alpha for hub-to-lab entanglement");
    double n_L = 952, n_q = 1;
    int n_n = -1, n_max = 20;
    nqi->add_option("--L", n_L, "hub-to-lab distance, km")->check(CLI::PositiveNumber);
    nqi->add_option("--q", n_q, "Bell success probability in (0,1]")->check(CLI::Range(0.0, 1.0));
    nqi->add_option("--n", n_n, "repeater nodes; omitted sweeps 1..--n-max")->check(CLI::PositiveNumber);
    nqi->add_option("--n-max", n_max, "sweep upper limit")->check(CLI::PositiveNumber);
    nqi->add_option("--out", out_path, "output file");

    // graph
    auto *graph = app.add_subcommand("graph", "robustness metrics of an edge-list network");
    std::string g_in, g_matrix;
    double g_pstar = 0.5;
    bool g_metrics = false, g_self = false;
    graph->add_option("--in", g_in, "edge list file (node_a,node_b,p)")->required();
    graph->add_option("--p-star", g_pstar, "critical success probability in (0,1)")->check(CLI::Range(0.0, 1.0));
    graph->add_flag("--metrics", g_metrics, "per-node and aggregate metrics (default)");
    graph->add_flag("--include-self", g_self, "add the p_ii = 1 term to connection strengths");
    graph->add_option("--matrix", g_matrix, "export A | Astar | fstar instead (weights in bits, inf literal)");
    graph->add_option("--out", out_path, "output file");

    // critical-nodes
    auto *crit = app.add_subcommand("critical-nodes", "critical parameter ranking");
    std::string k_in, k_rule = "any";
    double k_pstar = 0.5;
    int k_top = 0;
    crit->add_option("--in", k_in, "edge list file")->required();
    crit->add_option("--p-star", k_pstar, "critical success probability in (0,1)")->check(CLI::Range(0.0, 1.0));
    crit->add_option("--rule", k_rule, "centrality rule: any (any minimal path) | canonical (lexicographic path)");
    crit->add_option("--top", k_top, "limit rows (0 = all)")->check(CLI::NonNegativeNumber);
    crit->add_option("--out", out_path, "output file");

    // path
    auto *path = app.add_subcommand("path", "best path between two nodes");
    std::string p_in, p_from, p_to;
    double p_pstar = 0.5;
    path->add_option("--in", p_in, "edge list file")->required();
    path->add_option("--from", p_from, "source node id")->required();
    path->add_option("--to", p_to, "target node id")->required();
    path->add_option("--p-star", p_pstar, "critical success probability in (0,1)")->check(CLI::Range(0.0, 1.0));
    path->add_option("--out", out_path, "output file");

    // topology
    auto *topo = app.add_subcommand("topology", "generate a topology as an edge list");
    std::string o_kind = "star", o_cell = "square";
    int o_n = 8, o_d = 2, o_w = 4, o_h = 4;
    double o_p = 0.9;
    topo->add_option("--kind", o_kind, "star | mesh | circulant | grid | cell | square1024");
    topo->add_option("--n", o_n, "node count")->check(CLI::PositiveNumber);
    topo->add_option("--d", o_d, "circulant degree")->check(CLI::PositiveNumber);
    topo->add_option("--width", o_w, "grid width")->check(CLI::PositiveNumber);
    topo->add_option("--height", o_h, "grid height")->check(CLI::PositiveNumber);
    topo->add_option("--cell", o_cell, "square | octagonal | heavy-hex");
    topo->add_option("--p", o_p, "uniform edge success probability in (0,1]")->check(CLI::Range(0.0, 1.0));
    topo->add_option("--out", out_path, "output file");

    // satellite
    auto *sat = app.add_subcommand("satellite", "entanglement yield of the satellite network");
    SatelliteYieldParams sp;
    sp.eta_e = 0.95;
    sp.eta_s = 0.9;
    sp.p = 0.1;
    sp.s = 1;
    sp.alpha = 1.0 / 22;
    sp.eta_g = 0.5;
    sp.kappa_g = 0.5;
    std::string s_variant = "derivation", s_mode = "paper";
    sat->add_option("--n", sp.n, "satellite-satellite links, >= 1")->check(CLI::PositiveNumber);
    sat->add_option("--eta-e", sp.eta_e, "erasure parameter in [0,1]")->check(CLI::Range(0.0, 1.0));
    sat->add_option("--eta-s", sp.eta_s, "source efficiency in [0,1]")->check(CLI::Range(0.0, 1.0));
    sat->add_option("--q", sp.q, "Bell success probability in [0,1]")->check(CLI::Range(0.0, 1.0));
    sat->add_option("--p", sp.p, "memory depolarizing parameter in [0,4/3]")->check(CLI::Range(0.0, 4.0 / 3.0));
    sat->add_option("--s", sp.s, "memory steps")->check(CLI::NonNegativeNumber);
    sat->add_option("--alpha", sp.alpha, "fiber loss, 1/km")->check(CLI::NonNegativeNumber);
    sat->add_option("--l-b", sp.l_b, "fiber length at B, km")->check(CLI::NonNegativeNumber);
    sat->add_option("--l-m", sp.l_m, "fiber length at M, km")->check(CLI::NonNegativeNumber);
    sat->add_option("--eta-g", sp.eta_g, "thermal transmissivity in [0,1]")->check(CLI::Range(0.0, 1.0));
    sat->add_option("--kappa-g", sp.kappa_g, "thermal occupation in [0,1]")->check(CLI::Range(0.0, 1.0));
    sat->add_option("--eta-crit", sp.eta_crit, "memory eviction threshold in [0,1]")->check(CLI::Range(0.0, 1.0));
    sat->add_option("--variant", s_variant, "derivation | summary");
    sat->add_option("--memory-mode", s_mode, "paper | iterated");
    sat->add_option("--out", out_path, "output file");

    // atmosphere
    auto *atm = app.add_subcommand("atmosphere", "free-space link transmittance");
    AtmosphereParams ap;
    atm->add_option("--w0", ap.w0, "beam waist, m")->check(CLI::PositiveNumber);
    atm->add_option("--z-r", ap.z_r, "Rayleigh range, m")->check(CLI::PositiveNumber);
    atm->add_option("--z", ap.z, "link distance, m")->check(CLI::NonNegativeNumber);
    atm->add_option("--r", ap.r, "aperture radius, m")->check(CLI::NonNegativeNumber);
    atm->add_option("--sigma-r", ap.sigma_r, "Rytov parameter")->check(CLI::NonNegativeNumber);
    atm->add_option("--lambda-f", ap.fresnel, "Fresnel ratio Lambda")->check(CLI::NonNegativeNumber);
    atm->add_option("--xi-t", ap.xi_t, "transmitter efficiency in [0,1]")->check(CLI::Range(0.0, 1.0));
    atm->add_option("--xi-r", ap.xi_r, "receiver efficiency in [0,1]")->check(CLI::Range(0.0, 1.0));
    atm->add_option("--xi-as", ap.xi_as, "atmospheric scattering efficiency in [0,1]")->check(CLI::Range(0.0, 1.0));
    atm->add_option("--eta", ap.eta, "pointing ratio sigma_p / w_at")->check(CLI::NonNegativeNumber);
    atm->add_option("--out", out_path, "output file");

    // airport
    auto *air = app.add_subcommand("airport", "airport network ingestion and report");
    std::string a_dir, a_airports, a_routes, a_edges;
    double a_pstar = 0.1;
    int a_top = 10;
    bool a_nocrit = false;
    air->add_option("--dir", a_dir, "directory holding airports.csv and routes.csv (default $QNETLIM_DATA_DIR/airports)");
    air->add_option("--airports", a_airports, "airports.csv (id,name,lat,lon)");
    air->add_option("--routes", a_routes, "routes.csv (src_id,dst_id)");
    air->add_option("--p-star", a_pstar, "critical success probability in (0,1)")->check(CLI::Range(0.0, 1.0));
    air->add_option("--top", a_top, "critical airports to list")->check(CLI::NonNegativeNumber);
    air->add_flag("--no-critical", a_nocrit, "skip the critical-parameter ranking");
    air->add_option("--edges-out", a_edges, "also export the network as an edge list");
    air->add_option("--out", out_path, "output file");

    // buffer
    auto *buf = app.add_subcommand("buffer", "ground-station buffer simulation");
    std::string b_config, b_completions;
    buf->add_option("--config", b_config, "JSON config file")->required();
    buf->add_option("--completions", b_completions, "write the completion schedule CSV");
    buf->add_option("--out", out_path, "trace CSV output (tick,event,pair_id,flow_id,fidelity)");

    // evolve
    auto *evo = app.add_subcommand("evolve", "time-varying network link sparsity");
    std::string e_in;
    double e_w = 0.9, e_k = 0.3, e_pstar = 0.5;
    int e_steps = 3;
    evo->add_option("--in", e_in, "edge list file")->required();
    evo->add_option("--w", e_w, "decay weight in (0,1]")->check(CLI::Range(0.0, 1.0));
    evo->add_option("--k", e_k, "decay rate, 1/s")->check(CLI::NonNegativeNumber);
    evo->add_option("--p-star", e_pstar, "critical success probability in (0,1)")->check(CLI::Range(0.0, 1.0));
    evo->add_option("--steps", e_steps, "update steps")->check(CLI::NonNegativeNumber);
    evo->add_option("--out", out_path, "output file");

    // figure
    auto *fig = app.add_subcommand("figure", "CSV series behind a figure");
    std::string f_id;
    bool f_list = false;
    fig->add_option("id", f_id, "figure id, e.g. fig4");
    fig->add_flag("--list", f_list, "list figure ids");
    fig->add_option("--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*chain) {
            TaskSpec task = parse_task(c_task, c_theta, c_threshold);
            RepeaterCount exact = max_repeaters(c_lambda, c_q, task);
            RepeaterCount floor_form = max_repeaters_floor_form(c_lambda, c_q, task);
            Output o(out_path);
            auto &os = o.os();
            header(os, "chain", {{"lambda", fmt(c_lambda)}, {"q", fmt(c_q)}, {"task", task.name()},
                                 {"theta_rad", fmt(c_theta)}, {"threshold", fmt(task.threshold())}});
            os << "lambda,q,task,threshold,max_repeaters,floor_form";
            if (c_n >= 0) os << ",n,visibility,feasible";
            os << "\n";
            os << fmt(c_lambda) << "," << fmt(c_q) << "," << task.name() << "," << fmt(task.threshold()) << ","
               << exact.to_string() << "," << floor_form.to_string();
            if (c_n >= 0) {
                double v = chain_visibility({c_lambda, c_q, c_n});
                os << "," << c_n << "," << fmt(v) << "," << yes_no(v > task.threshold());
            }
            os << "\n";
            if (c_n >= 0 && task.kind == TaskKind::DIQKD) {
                Interval iv = zero_key_window(c_lambda, c_q, c_n, c_theta);
                os << "# zero_key_window=" << (iv.empty ? "empty" : "(" + fmt(iv.lo) + "," + fmt(iv.hi) + ")") << "\n";
            }
        } else if (*tradeoff) {
            Output o(out_path);
            auto &os = o.os();
            double bound;
            if (t_f > 0) {
                bound = f_fold_bound(t_f, t_pstar);
                header(os, "tradeoff", {{"f", fmt(t_f)}, {"p_star", fmt(t_pstar)}, {"alpha_per_km", fmt(t_alpha)},
                                        {"beta_per_s", fmt(t_beta)}});
            } else {
                LinkBudget b;
                b.eta_s = t_eta;
                b.q = t_q;
                b.r = t_r;
                b.p_star = t_pstar;
                bound = critical_length_time_bound(b).bound;
                header(os, "tradeoff", {{"r", std::to_string(t_r)}, {"q", fmt(t_q)}, {"eta_s", fmt(t_eta)},
                                        {"p_star", fmt(t_pstar)}, {"alpha_per_km", fmt(t_alpha)},
                                        {"beta_per_s", fmt(t_beta)}});
            }
            os << "# bound on alpha*l + beta*t (natural log units)\n";
            os << "bound,l_cr_km_at_t0,t_cr_s_at_l0";
            bool test = t_l >= 0 && t_t >= 0;
            if (test) os << ",l_km,t_s,feasible";
            os << "\n";
            os << fmt(bound) << "," << (t_alpha > 0 ? fmt(bound / t_alpha) : "inf") << ","
               << (t_beta > 0 ? fmt(bound / t_beta) : "inf");
            if (test) os << "," << fmt(t_l) << "," << fmt(t_t) << "," << yes_no(t_alpha * t_l + t_beta * t_t < bound);
            os << "\n";
            if (!(bound > 0)) throw Infeasible("bound is not positive: the source/measurement budget fails at zero distance");
        } else if (*nqi) {
            Output o(out_path);
            auto &os = o.os();
            header(os, "nqi", {{"L_km", fmt(n_L)}, {"q", fmt(n_q)}});
            os << "# alpha < ln(3 q^n) / (L (1 + 1/n)), natural log, 1/km\n";
            os << "n,alpha_bound_per_km,positive\n";
            bool any = false;
            int lo = n_n > 0 ? n_n : 1, hi = n_n > 0 ? n_n : n_max;
            for (int n = lo; n <= hi; n++) {
                AlphaBound b = nqi_alpha_bound(n_L, n, n_q);
                any |= b.positive;
                os << n << "," << fmt(b.alpha) << "," << yes_no(b.positive) << "\n";
            }
            if (!any) throw Infeasible("3 q^n <= 1: no positive bound on alpha");
        } else if (*graph) {
            Network g = read_edge_list_file(resolve(g_in));
            Output o(out_path);
            auto &os = o.os();
            header(os, "graph", {{"in", g_in}, {"p_star", fmt(g_pstar)}, {"weights", "bits (-log2 p)"},
                                 {"include_self", yes_no(g_self)}});
            if (!g_matrix.empty()) {
                EffectiveMatrices m = matrices(g, g_pstar);
                if (g_matrix == "A")
                    write_matrix_csv(os, g, m.A);
                else if (g_matrix == "Astar")
                    write_matrix_csv(os, g, m.A_star);
                else if (g_matrix == "fstar")
                    write_matrix_csv(os, g, m.f_star);
                else
                    throw UsageError("--matrix must be A, Astar or fstar");
            } else {
                auto zn = connection_strengths(g, StrategyKind::NonCooperative, g_pstar, g_self);
                auto zc = connection_strengths(g, StrategyKind::Cooperative, g_pstar, g_self);
                double tn = 0, tc = 0;
                for (double z : zn) tn += z;
                for (double z : zc) tc += z;
                os << "# nodes=" << g.size() << " edges=" << g.edge_count() << "\n";
                os << "# link_sparsity_noncooperative=" << fmt(link_sparsity(g, g_pstar, StrategyKind::NonCooperative, g_self)) << "\n";
                os << "# link_sparsity_cooperative=" << fmt(link_sparsity(g, g_pstar, StrategyKind::Cooperative, g_self)) << "\n";
                os << "# total_connection_strength_noncooperative=" << fmt(tn) << "\n";
                os << "# total_connection_strength_cooperative=" << fmt(tc) << "\n";
                os << "# sparsity_index_noncooperative=" << fmt(sparsity_index_of(zn)) << "\n";
                os << "# sparsity_index_cooperative=" << fmt(sparsity_index_of(zc)) << "\n";
                os << "node,degree,clustering,zeta_noncooperative,zeta_cooperative\n";
                for (int v = 0; v < g.size(); v++)
                    os << g.id(v) << "," << g.neighbors(v).size() << "," << fmt(clustering_coefficient(g, v, g_pstar)) << ","
                       << fmt(zn[v]) << "," << fmt(zc[v]) << "\n";
            }
        } else if (*crit) {
            Network g = read_edge_list_file(resolve(k_in));
            CentralityRule rule;
            if (k_rule == "any")
                rule = CentralityRule::AnyMinimalPath;
            else if (k_rule == "canonical")
                rule = CentralityRule::CanonicalPath;
            else
                throw UsageError("--rule must be any or canonical");
            auto ranked = critical_parameters(g, k_pstar, rule);
            Output o(out_path);
            auto &os = o.os();
            header(os, "critical-nodes", {{"in", k_in}, {"p_star", fmt(k_pstar)}, {"rule", k_rule}});
            os << "rank,node,nu,centrality,clustering,neighbor_weight_bits,zeta_cooperative\n";
            int rank = 1;
            for (const auto &r : ranked) {
                if (k_top > 0 && rank > k_top) break;
                os << rank++ << "," << r.id << "," << (r.nu_defined ? fmt(r.nu) : "undefined") << "," << r.centrality << ","
                   << fmt(r.clustering) << "," << fmt(r.neighbor_weight) << "," << fmt(r.connection_strength) << "\n";
            }
        } else if (*path) {
            Network g = read_edge_list_file(resolve(p_in));
            auto src = g.find(p_from), dst = g.find(p_to);
            if (!src || !dst) throw DataError("unknown node id " + (!src ? p_from : p_to));
            PathResult r = shortest_path(g, *src, *dst, p_pstar);
            Output o(out_path);
            auto &os = o.os();
            header(os, "path", {{"in", p_in}, {"from", p_from}, {"to", p_to}, {"p_star", fmt(p_pstar)}});
            os << "status,weight_bits,probability,path\n";
            std::string seq;
            for (size_t i = 0; i < r.nodes.size(); i++) seq += (i ? " " : "") + g.id(r.nodes[i]);
            bool found = r.status == PathResult::Status::Found;
            os << (found ? "found" : "disconnected") << "," << (found ? fmt(r.weight) : "inf") << ","
               << fmt(r.probability) << "," << seq << "\n";
        } else if (*topo) {
            TopologySpec spec;
            if (o_kind == "star")
                spec = TopologySpec::star(o_n, o_p);
            else if (o_kind == "mesh")
                spec = TopologySpec::full_mesh(o_n, o_p);
            else if (o_kind == "circulant")
                spec = TopologySpec::circulant(o_n, o_d, o_p);
            else if (o_kind == "grid")
                spec = TopologySpec::grid(o_w, o_h, o_p);
            else if (o_kind == "square1024")
                spec = TopologySpec::square1024(o_p);
            else if (o_kind == "cell") {
                if (o_cell == "square")
                    spec = TopologySpec::processor_cell(TopologySpec::Cell::Square, o_p);
                else if (o_cell == "octagonal")
                    spec = TopologySpec::processor_cell(TopologySpec::Cell::Octagonal, o_p);
                else if (o_cell == "heavy-hex")
                    spec = TopologySpec::processor_cell(TopologySpec::Cell::HeavyHexagonal, o_p);
                else
                    throw UsageError("--cell must be square, octagonal or heavy-hex");
            } else
                throw UsageError("unknown --kind " + o_kind);
            Network g = build_topology(spec);
            Output o(out_path);
            auto &os = o.os();
            header(os, "topology", {{"kind", o_kind}, {"n", std::to_string(o_n)}, {"d", std::to_string(o_d)},
                                    {"w", std::to_string(o_w)}, {"h", std::to_string(o_h)}, {"cell", o_cell},
                                    {"p", fmt(o_p)}});
            os << "# nodes=" << g.size() << " edges=" << g.edge_count() << "\n";
            write_edge_list(os, g);
        } else if (*sat) {
            if (s_variant == "derivation")
                sp.variant = SatelliteVariant::Derivation;
            else if (s_variant == "summary")
                sp.variant = SatelliteVariant::Summary;
            else
                throw UsageError("--variant must be derivation or summary");
            if (s_mode == "paper")
                sp.memory_mode = DepolMode::PaperFormula;
            else if (s_mode == "iterated")
                sp.memory_mode = DepolMode::IteratedChannel;
            else
                throw UsageError("--memory-mode must be paper or iterated");
            double y = satellite_yield(sp);
            Output o(out_path);
            auto &os = o.os();
            header(os, "satellite", {{"n", std::to_string(sp.n)}, {"eta_e", fmt(sp.eta_e)}, {"eta_s", fmt(sp.eta_s)},
                                     {"q", fmt(sp.q)}, {"p", fmt(sp.p)}, {"s", std::to_string(sp.s)},
                                     {"alpha_per_km", fmt(sp.alpha)}, {"l_b_km", fmt(sp.l_b)}, {"l_m_km", fmt(sp.l_m)},
                                     {"eta_g", fmt(sp.eta_g)}, {"kappa_g", fmt(sp.kappa_g)},
                                     {"eta_crit", fmt(sp.eta_crit)}, {"variant", s_variant}, {"memory_mode", s_mode}});
            os << "yield\n" << fmt(y) << "\n";
        } else if (*atm) {
            double x = atmospheric_transmittance(ap);
            Output o(out_path);
            auto &os = o.os();
            header(os, "atmosphere", {{"w0_m", fmt(ap.w0)}, {"z_r_m", fmt(ap.z_r)}, {"z_m", fmt(ap.z)}, {"r_m", fmt(ap.r)},
                                      {"sigma_r", fmt(ap.sigma_r)}, {"lambda_f", fmt(ap.fresnel)}, {"xi_t", fmt(ap.xi_t)},
                                      {"xi_r", fmt(ap.xi_r)}, {"xi_as", fmt(ap.xi_as)}, {"eta", fmt(ap.eta)}});
            os << "transmittance\n" << fmt(x) << "\n";
        } else if (*air) {
            AirportDataset data;
            std::string source;
            if (!a_airports.empty() || !a_routes.empty()) {
                if (a_airports.empty() || a_routes.empty()) throw UsageError("--airports and --routes go together");
                std::ifstream fa(resolve(a_airports)), fr(resolve(a_routes));
                if (!fa) throw DataError("cannot open " + a_airports);
                if (!fr) throw DataError("cannot open " + a_routes);
                data = read_airports(fa, fr);
                source = a_airports + " " + a_routes;
            } else {
                std::string dir = a_dir.empty() ? (data_dir().empty() ? "" : data_dir() + "/airports") : resolve(a_dir);
                if (dir.empty()) throw DataError("no dataset: pass --dir or set QNETLIM_DATA_DIR");
                data = read_airport_dir(dir);
                source = dir;
            }
            AirportLoad load = load_airport_network(data);
            if (load.skipped_routes > 0)
                std::cerr << "warning: skipped " << load.skipped_routes << " routes with unknown or identical endpoints\n";
            AirportReport rep = airport_report(load.network, a_pstar, a_top, !a_nocrit);
            if (!a_edges.empty()) {
                std::ofstream eo(a_edges);
                if (!eo) throw DataError("cannot write " + a_edges);
                write_edge_list(eo, load.network);
            }
            Output o(out_path);
            auto &os = o.os();
            header(os, "airport", {{"source", source}, {"p_star", fmt(a_pstar)},
                                   {"edge_rule", "p=exp(-L/22) for L<50 km else 0.8"},
                                   {"skipped_routes", std::to_string(load.skipped_routes)},
                                   {"duplicate_routes", std::to_string(load.duplicate_routes)}});
            write_airport_report(os, rep);
        } else if (*buf) {
            SimConfig cfg = load_sim_config(resolve(b_config));
            SimResult res = run(cfg);
            Output o(out_path);
            auto &os = o.os();
            header(os, "buffer", {{"config", b_config}, {"capacity", std::to_string(cfg.capacity)},
                                  {"p_mem", fmt(cfg.p_mem)}, {"eta_crit", fmt(cfg.eta_crit)},
                                  {"horizon", std::to_string(cfg.horizon)},
                                  {"inserts", std::to_string(res.inserts)}, {"dispatches", std::to_string(res.dispatches)},
                                  {"evictions", std::to_string(res.evictions)}, {"rejects", std::to_string(res.rejects)},
                                  {"residual", std::to_string(res.residual)}});
            write_trace_csv(os, res.trace);
            if (!b_completions.empty()) {
                std::ofstream co(b_completions);
                if (!co) throw DataError("cannot write " + b_completions);
                write_completions_csv(co, res.completions);
            }
        } else if (*evo) {
            Network g = read_edge_list_file(resolve(e_in));
            auto steps = evolve(g, e_w, e_k, e_pstar, e_steps);
            Output o(out_path);
            auto &os = o.os();
            header(os, "evolve", {{"in", e_in}, {"w", fmt(e_w)}, {"k_per_s", fmt(e_k)}, {"p_star", fmt(e_pstar)},
                                  {"steps", std::to_string(e_steps)}});
            os << "t,edges,link_sparsity_cooperative\n";
            for (const auto &s : steps) os << s.t << "," << s.network.edge_count() << "," << fmt(s.sparsity) << "\n";
        } else if (*fig) {
            Output o(out_path);
            if (f_list) {
                for (const auto &f : figure_list()) o.os() << f.id << ",\"" << f.title << "\"\n";
            } else {
                if (f_id.empty()) throw UsageError("figure id required (see --list)");
                bool known = false;
                for (const auto &f : figure_list()) known |= f.id == f_id;
                if (!known) throw UsageError("unknown figure id '" + f_id + "'");
                write_figure(f_id, o.os());
            }
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Infeasible &e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return 1;
    } catch (const DataError &e) {
        std::cerr << "error: data: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
