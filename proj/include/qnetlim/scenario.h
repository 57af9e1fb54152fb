#ifndef QNETLIM_SCENARIO_H
#define QNETLIM_SCENARIO_H

#include <iosfwd>
#include <string>
#include <vector>

#include "qnetlim/netgraph.h"
#include "qnetlim/qstate.h"

namespace qnetlim {

struct AtmosphereParams {
    double w0 = 0.0021;      // beam waist, m
    double z_r = 17.8;       // Rayleigh range, m
    double z = 0;            // link distance, m
    double r = 0.1;          // aperture radius, m
    double sigma_r = 0.1;    // Rytov parameter
    double fresnel = 0.1;    // Lambda
    double xi_t = 0.99;
    double xi_r = 0.99;
    double xi_as = 0.5;
    double eta = 0.95;       // pointing ratio sigma_p / w_at
};

double atmospheric_transmittance(const AtmosphereParams &p);

enum class SatelliteVariant {
    Derivation,  // (eta_e^2)^(n-1) eta_s^(n-1) q^(n-1)
    Summary,     // (eta_e^2)^n eta_s^(n-1), no q
};

struct SatelliteYieldParams {
    int n = 1;  // satellite-satellite links
    double eta_e = 1;
    double eta_s = 1;
    double q = 1;
    double p = 0;  // memory depolarizing parameter
    int s = 0;     // memory steps
    double alpha = 0;  // 1/km
    double l_b = 0;    // km
    double l_m = 0;    // km
    double eta_g = 1;
    double kappa_g = 0;
    double eta_crit = 0;
    DepolMode memory_mode = DepolMode::PaperFormula;
    SatelliteVariant variant = SatelliteVariant::Derivation;
};

double satellite_yield(const SatelliteYieldParams &p);

double airport_yield(double L, double L0, double q, double eta_e, double eta_g, double kappa_g);

double great_circle_km(double lat1, double lon1, double lat2, double lon2);

// p = exp(-L/22) for L < 50 km, 0.8 otherwise.
double airport_link_probability(double km);

struct Airport {
    std::string id;
    std::string name;
    double lat = 0;
    double lon = 0;
};

struct Route {
    std::string src;
    std::string dst;
};

struct AirportDataset {
    std::vector<Airport> airports;
    std::vector<Route> routes;
};

AirportDataset read_airports(std::istream &airports_csv, std::istream &routes_csv);
AirportDataset read_airport_dir(const std::string &dir);

struct AirportLoad {
    Network network;
    int skipped_routes = 0;    // unknown endpoints or self-routes
    int duplicate_routes = 0;  // repeated undirected routes
};

// Nodes are ordered by airport id and edges by endpoint index, so shuffled input
// produces an identical network.
AirportLoad load_airport_network(const AirportDataset &data);

struct AirportReport {
    int nodes = 0;
    int edges = 0;
    double longest_route_km = 0;
    std::string longest_from;
    std::string longest_to;
    double mean_route_km = 0;
    double link_sparsity = 0;             // non-cooperative
    double total_connection_strength = 0; // non-cooperative
    std::vector<NodeReport> top_critical;
};

AirportReport airport_report(const Network &g, double p_star = 0.1, int top_k = 10, bool with_critical = true);
void write_airport_report(std::ostream &out, const AirportReport &r);

}  // namespace qnetlim

#endif
