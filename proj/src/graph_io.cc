#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qnetlim/netgraph.h"
#include "qnetlim/text.h"

namespace qnetlim {

Network read_edge_list(std::istream &in) {
    Network g;
    std::string line;
    int lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::vector<std::string> f = detail::split_csv(line);
        // optional header row
        if (first && f.size() == 3 && f[2] == "p") {
            first = false;
            continue;
        }
        first = false;
        auto fail = [&](const std::string &msg) {
            throw DataError("line " + std::to_string(lineno) + ": " + msg);
        };
        if (f.size() == 1) {
            if (f[0].empty()) fail("empty node id");
            g.add_node(f[0]);
            continue;
        }
        if (f.size() != 3) fail("expected node_a,node_b,p");
        if (f[0].empty() || f[1].empty()) fail("empty node id");
        if (f[0] == f[1]) fail("self-loop on " + f[0]);
        double p;
        if (!detail::parse_double(f[2], p)) fail("bad probability '" + f[2] + "'");
        if (!(p > 0 && p <= 1)) fail("probability must lie in (0,1]");
        int u = g.add_node(f[0]);
        int v = g.add_node(f[1]);
        if (g.edge_p(u, v)) fail("duplicate edge " + f[0] + "," + f[1]);
        g.add_edge(u, v, p);
    }
    return g;
}

Network read_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return read_edge_list(in);
    } catch (const DataError &e) {
        throw DataError(path + ": " + e.what());
    }
}

void write_edge_list(std::ostream &out, const Network &g) {
    out << "# node_a,node_b,p\n";
    std::vector<char> touched(g.size(), 0);
    auto edges = g.edges();
    for (const auto &e : edges) touched[e.u] = touched[e.v] = 1;
    for (int v = 0; v < g.size(); v++)
        if (!touched[v]) out << g.id(v) << "\n";
    for (const auto &e : edges) out << g.id(e.u) << "," << g.id(e.v) << "," << detail::fmt_exact(e.p) << "\n";
}

void write_matrix_csv(std::ostream &out, const Network &g, const Eigen::MatrixXd &m) {
    out << "node";
    for (const auto &id : g.ids()) out << "," << id;
    out << "\n";
    for (int i = 0; i < g.size(); i++) {
        out << g.id(i);
        for (int j = 0; j < g.size(); j++) out << "," << detail::fmt(m(i, j));
        out << "\n";
    }
}

}  // namespace qnetlim
