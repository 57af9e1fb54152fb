#include "qnetlim/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

#include "qnetlim/text.h"

namespace qnetlim {

namespace {

void check_unit(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

const double kEarthRadiusKm = 6371.0;

}  // namespace

double atmospheric_transmittance(const AtmosphereParams &a) {
    if (!(a.w0 > 0 && a.z_r > 0)) throw std::invalid_argument("w0 and z_R must be positive");
    if (a.z < 0 || a.r < 0 || a.sigma_r < 0 || a.fresnel < 0 || a.eta < 0)
        throw std::invalid_argument("atmosphere parameters must be nonnegative");
    check_unit(a.xi_t, "xi_t");
    check_unit(a.xi_r, "xi_r");
    check_unit(a.xi_as, "xi_as");
    double w2 = a.w0 * a.w0;
    double r2 = a.r * a.r;
    double zr2 = a.z_r * a.z_r;
    double z2 = a.z * a.z;
    double pointing = a.eta * a.eta / (a.eta * a.eta + 0.25);
    double diffraction = -std::expm1(-2 * r2 * zr2 / (w2 * (z2 + zr2)));
    double turbulence = 1 + 1.33 * std::pow(a.fresnel, 5.0 / 6.0) * a.sigma_r * a.sigma_r;
    double spread = -std::expm1(-2 * r2 / (w2 * turbulence * (z2 / zr2 + 1)));
    return pointing * a.xi_as * a.xi_r * a.xi_t * diffraction * spread;
}

double satellite_yield(const SatelliteYieldParams &p) {
    if (p.n < 1) throw std::invalid_argument("n must be >= 1");
    if (p.s < 0) throw std::invalid_argument("s must be >= 0");
    if (p.alpha < 0 || p.l_b < 0 || p.l_m < 0) throw std::invalid_argument("fiber parameters must be nonnegative");
    check_unit(p.eta_e, "eta_e");
    check_unit(p.eta_s, "eta_s");
    check_unit(p.q, "q");
    check_unit(p.eta_crit, "eta_crit");
    double memory = depol_yield(p.p, p.s, p.memory_mode);
    if (memory < p.eta_crit) return 0;
    double links = p.n - 1;
    double erasure = std::pow(p.eta_e * p.eta_e, p.variant == SatelliteVariant::Summary ? p.n : links);
    double bell = p.variant == SatelliteVariant::Summary ? 1.0 : std::pow(p.q, links);
    double fiber = std::exp(-p.alpha * (p.l_b + p.l_m));
    return fiber * erasure * std::pow(p.eta_s, links) * bell * memory * thermal_yield(p.eta_g, p.kappa_g);
}

double airport_yield(double L, double L0, double q, double eta_e, double eta_g, double kappa_g) {
    if (!(L0 > 0)) throw std::invalid_argument("L0 must be positive");
    if (!(L >= L0)) throw std::invalid_argument("L must be >= L0");
    check_unit(q, "q");
    check_unit(eta_e, "eta_e");
    double n = std::floor(L / L0);
    return std::pow(q, n - 1) * std::pow(eta_e * eta_e, n - 1) * thermal_yield(eta_g, kappa_g);
}

double great_circle_km(double lat1, double lon1, double lat2, double lon2) {
    for (double lat : {lat1, lat2})
        if (!(std::abs(lat) <= 90)) throw std::invalid_argument("latitude out of range");
    for (double lon : {lon1, lon2})
        if (!(std::abs(lon) <= 180)) throw std::invalid_argument("longitude out of range");
    const double rad = std::numbers::pi / 180;
    double dlat = (lat2 - lat1) * rad;
    double dlon = (lon2 - lon1) * rad;
    double h = std::pow(std::sin(dlat / 2), 2) + std::cos(lat1 * rad) * std::cos(lat2 * rad) * std::pow(std::sin(dlon / 2), 2);
    h = std::min(1.0, std::max(0.0, h));
    return 2 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double airport_link_probability(double km) {
    if (!(km >= 0)) throw std::invalid_argument("distance must be nonnegative");
    return km < 50 ? std::exp(-km / 22) : 0.8;
}

AirportDataset read_airports(std::istream &airports_csv, std::istream &routes_csv) {
    AirportDataset data;
    std::string line;
    int lineno = 0;
    bool header = true;
    while (std::getline(airports_csv, line)) {
        lineno++;
        if (detail::trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto f = detail::split_csv(line);
        auto fail = [&](const std::string &msg) {
            throw DataError("airports.csv line " + std::to_string(lineno) + ": " + msg);
        };
        if (f.size() != 4) fail("expected id,name,lat,lon");
        Airport a{f[0], f[1], 0, 0};
        if (a.id.empty()) fail("empty id");
        if (!detail::parse_double(f[2], a.lat) || !(std::abs(a.lat) <= 90)) fail("bad latitude '" + f[2] + "'");
        if (!detail::parse_double(f[3], a.lon) || !(std::abs(a.lon) <= 180)) fail("bad longitude '" + f[3] + "'");
        data.airports.push_back(a);
    }
    lineno = 0;
    header = true;
    while (std::getline(routes_csv, line)) {
        lineno++;
        if (detail::trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto f = detail::split_csv(line);
        if (f.size() != 2 || f[0].empty() || f[1].empty())
            throw DataError("routes.csv line " + std::to_string(lineno) + ": expected src_id,dst_id");
        data.routes.push_back({f[0], f[1]});
    }
    return data;
}

AirportDataset read_airport_dir(const std::string &dir) {
    std::ifstream a(dir + "/airports.csv");
    if (!a) throw DataError("cannot open " + dir + "/airports.csv");
    std::ifstream r(dir + "/routes.csv");
    if (!r) throw DataError("cannot open " + dir + "/routes.csv");
    return read_airports(a, r);
}

AirportLoad load_airport_network(const AirportDataset &data) {
    std::map<std::string, const Airport *> by_id;
    for (const auto &a : data.airports)
        if (!by_id.emplace(a.id, &a).second) throw DataError("duplicate airport id " + a.id);
    AirportLoad out;
    for (const auto &[id, a] : by_id) {
        int v = out.network.add_node(id);
        out.network.set_coordinates(v, a->lat, a->lon);
    }
    std::set<std::pair<int, int>> pairs;
    for (const auto &r : data.routes) {
        auto u = out.network.find(r.src);
        auto v = out.network.find(r.dst);
        if (!u || !v || *u == *v) {
            out.skipped_routes++;
            continue;
        }
        if (!pairs.insert(std::minmax(*u, *v)).second) out.duplicate_routes++;
    }
    for (auto [u, v] : pairs) {
        auto [la, lo] = out.network.coordinates(u);
        auto [lb, lob] = out.network.coordinates(v);
        out.network.add_edge(u, v, airport_link_probability(great_circle_km(la, lo, lb, lob)));
    }
    return out;
}

AirportReport airport_report(const Network &g, double p_star, int top_k, bool with_critical) {
    AirportReport r;
    r.nodes = g.size();
    r.edges = g.edge_count();
    double sum = 0;
    for (const auto &e : g.edges()) {
        auto [la, lo] = g.coordinates(e.u);
        auto [lb, lob] = g.coordinates(e.v);
        double km = great_circle_km(la, lo, lb, lob);
        sum += km;
        if (km > r.longest_route_km) {
            r.longest_route_km = km;
            r.longest_from = g.id(e.u);
            r.longest_to = g.id(e.v);
        }
    }
    r.mean_route_km = r.edges > 0 ? sum / r.edges : 0.0;
    if (r.nodes > 0) {
        r.link_sparsity = link_sparsity(g, p_star, StrategyKind::NonCooperative);
        r.total_connection_strength = total_connection_strength(g, StrategyKind::NonCooperative, p_star);
    }
    if (with_critical && r.nodes > 0) {
        auto ranked = critical_parameters(g, p_star);
        if (static_cast<int>(ranked.size()) > top_k) ranked.resize(top_k);
        r.top_critical = std::move(ranked);
    }
    return r;
}

void write_airport_report(std::ostream &out, const AirportReport &r) {
    out << "airports: " << r.nodes << "\n";
    out << "routes: " << r.edges << "\n";
    out << "longest route: " << detail::fmt(r.longest_route_km) << " km (" << r.longest_from << " - " << r.longest_to
        << ")\n";
    out << "mean route: " << detail::fmt(r.mean_route_km) << " km\n";
    out << "link sparsity (non-cooperative): " << detail::fmt(r.link_sparsity) << "\n";
    out << "total connection strength (non-cooperative): " << detail::fmt(r.total_connection_strength) << "\n";
    if (!r.top_critical.empty()) {
        out << "critical airports:\n";
        out << "rank,id,nu,centrality,clustering,neighbor_weight_bits\n";
        int rank = 1;
        for (const auto &n : r.top_critical)
            out << rank++ << "," << n.id << "," << (n.nu_defined ? detail::fmt(n.nu) : "undefined") << ","
                << n.centrality << "," << detail::fmt(n.clustering) << "," << detail::fmt(n.neighbor_weight) << "\n";
    }
}

}  // namespace qnetlim
