#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qnetlim/netgraph.h"
#include "qnetlim/qstate.h"
#include "qnetlim/scenario.h"

using namespace qnetlim;

namespace {

double fiber_factor(double alpha, double l) { return std::exp(-alpha * l); }
double erasure_factor(double eta_e, int n) { return std::pow(eta_e * eta_e, n - 1); }
double source_factor(double eta_s, int n) { return std::pow(eta_s, n - 1); }
double bell_factor(double q, int n) { return std::pow(q, n - 1); }
double memory_factor(double p, int s) { return s == 0 ? 1.0 : (1 + 3 * std::pow(1 - p, 2 * s)) / 4; }  // s <= 2
double thermal_factor(double e, double k) { return 0.5 * (1 + e * e) - k * (1 - k) * (1 - e) * (1 - e); }

SatelliteYieldParams fig17_point() {
    SatelliteYieldParams p;
    p.n = 2;
    p.eta_e = 0.95;
    p.eta_s = 0.9;
    p.q = 1;
    p.s = 1;
    p.p = 0.1;
    p.eta_g = 0.5;
    p.kappa_g = 0.5;
    p.alpha = 1.0 / 22;
    p.l_b = 20;
    return p;
}

}  // namespace

TEST(Atmosphere, SaturatedValue) {
    double expected = 0.95 * 0.95 / (0.95 * 0.95 + 0.25) * 0.5 * 0.99 * 0.99;
    AtmosphereParams a;
    EXPECT_NEAR(atmospheric_transmittance(a), expected, 1e-9);
    a.r = 10;
    a.z = 5;
    EXPECT_NEAR(atmospheric_transmittance(a), expected, 1e-12);
    a.r = 0;
    EXPECT_EQ(atmospheric_transmittance(a), 0);
}

TEST(Atmosphere, MonotoneAndBounded) {
    AtmosphereParams a;
    a.z = 20;
    double bound = a.xi_as * a.xi_r * a.xi_t * a.eta * a.eta / (a.eta * a.eta + 0.25);
    double prev = -1;
    for (int i = 0; i <= 200; i++) {
        a.r = i * 0.0005;
        double x = atmospheric_transmittance(a);
        EXPECT_GE(x, prev);
        EXPECT_LE(x, bound + 1e-15);
        prev = x;
    }
    a.r = 0.01;
    double base = atmospheric_transmittance(a);
    AtmosphereParams b = a;
    b.xi_as = 0.7;
    EXPECT_GT(atmospheric_transmittance(b), base);
    b = a;
    b.eta = 2;
    EXPECT_GT(atmospheric_transmittance(b), base);
}

TEST(Satellite, IdealIsOne) {
    SatelliteYieldParams p;
    p.n = 5;
    EXPECT_EQ(satellite_yield(p), 1.0);
}

TEST(Satellite, FigurePointAgainstFactors) {
    SatelliteYieldParams p = fig17_point();
    double oracle = fiber_factor(p.alpha, 20) * erasure_factor(0.95, 2) * source_factor(0.9, 2) * bell_factor(1, 2) *
                    memory_factor(0.1, 1) * thermal_factor(0.5, 0.5);
    EXPECT_NEAR(satellite_yield(p), oracle, 1e-12);
    EXPECT_NEAR(satellite_yield(p), 0.15785, 1e-4);
}

TEST(Satellite, FactorizationOnGrid) {
    for (int n = 1; n <= 6; n++)
        for (double q : {0.9, 1.0})
            for (int s : {0, 1, 2})
                for (double l : {0.0, 10.0, 40.0}) {
                    SatelliteYieldParams p = fig17_point();
                    p.n = n;
                    p.q = q;
                    p.s = s;
                    p.l_b = l / 2;
                    p.l_m = l / 2;
                    double oracle = fiber_factor(p.alpha, l) * erasure_factor(p.eta_e, n) * source_factor(p.eta_s, n) *
                                    bell_factor(q, n) * memory_factor(p.p, s) * thermal_factor(p.eta_g, p.kappa_g);
                    EXPECT_NEAR(satellite_yield(p), oracle, 1e-12);
                }
}

TEST(Satellite, SimpleVariantValue) {
    SatelliteYieldParams p;
    p.n = 4;
    p.eta_e = 0.95;
    p.eta_g = 0.5;
    p.kappa_g = 0.5;
    EXPECT_NEAR(satellite_yield(p), 0.5625 * std::pow(0.9025, 3), 1e-14);
    EXPECT_NEAR(satellite_yield(p), 0.41349, 1e-5);
    p.variant = SatelliteVariant::Summary;
    EXPECT_NEAR(satellite_yield(p), 0.5625 * std::pow(0.9025, 4), 1e-12);
}

TEST(Satellite, MonotoneSweeps) {
    for (double l : {10.0, 20.0, 40.0}) {
        double prev = 2;
        for (int n = 2; n <= 10; n++) {
            SatelliteYieldParams p = fig17_point();
            p.l_b = l;
            p.n = n;
            double y = satellite_yield(p);
            EXPECT_LT(y, prev);
            prev = y;
        }
    }
    double prev = 2;
    for (int s = 0; s <= 10; s++) {
        SatelliteYieldParams p = fig17_point();
        p.s = s;
        p.memory_mode = DepolMode::IteratedChannel;
        double y = satellite_yield(p);
        EXPECT_LE(y, prev);
        prev = y;
    }
}

TEST(Satellite, MemoryEviction) {
    SatelliteYieldParams p = fig17_point();
    p.eta_crit = 0.9;  // memory term 0.8575
    EXPECT_EQ(satellite_yield(p), 0);
}

TEST(AirportYield, Examples) {
    EXPECT_NEAR(airport_yield(4000, 1000, 1, 0.95, 0.5, 0.5), std::pow(0.9025, 3) * 0.5625, 1e-12);
    EXPECT_NEAR(airport_yield(4000, 1000, 1, 0.95, 0.5, 0.5), 0.41349, 1e-5);
    EXPECT_NEAR(airport_yield(1000, 1000, 0.7, 0.95, 0.5, 0.5), 0.5625, 1e-15);
    EXPECT_NEAR(airport_yield(4000, 1000, 0.9, 0.95, 0.5, 0.5), 0.729 * std::pow(0.9025, 3) * 0.5625, 1e-14);
}

TEST(GreatCircle, Examples) {
    EXPECT_EQ(great_circle_km(10, 20, 10, 20), 0);
    EXPECT_NEAR(great_circle_km(0, 0, 0, 180), std::numbers::pi * 6371, 1e-6);
    EXPECT_NEAR(great_circle_km(0, 0, 0, 90), 6371 * std::numbers::pi / 2, 1e-6);
    EXPECT_THROW(great_circle_km(91, 0, 0, 0), std::invalid_argument);
    EXPECT_THROW(great_circle_km(0, 181, 0, 0), std::invalid_argument);
}

TEST(AirportLink, Rule) {
    EXPECT_NEAR(airport_link_probability(22), std::exp(-1.0), 1e-15);
    EXPECT_EQ(airport_link_probability(5000), 0.8);
    EXPECT_EQ(airport_link_probability(50), 0.8);
}

TEST(AirportLoad, SmallDatasetAndShuffle) {
    std::string airports =
        "id,name,lat,lon\n1,\"Alpha, North\",0,0\n2,Beta,0,1\n3,Gamma,0.1,0\n4,Delta,10,10\n";
    std::string routes = "src_id,dst_id\n1,2\n2,1\n1,3\n3,4\n4,99\n2,2\n";
    std::istringstream a(airports), r(routes);
    AirportLoad load = load_airport_network(read_airports(a, r));
    EXPECT_EQ(load.network.size(), 4);
    EXPECT_EQ(load.network.edge_count(), 3);
    EXPECT_EQ(load.duplicate_routes, 1);
    EXPECT_EQ(load.skipped_routes, 2);
    double d13 = great_circle_km(0, 0, 0.1, 0);
    EXPECT_NEAR(*load.network.edge_p(load.network.index("1"), load.network.index("3")), std::exp(-d13 / 22), 1e-15);

    // shuffled lines produce the same network
    std::istringstream a2("id,name,lat,lon\n4,Delta,10,10\n3,Gamma,0.1,0\n2,Beta,0,1\n1,\"Alpha, North\",0,0\n");
    std::istringstream r2("src_id,dst_id\n3,4\n2,2\n1,3\n4,99\n2,1\n1,2\n");
    AirportLoad load2 = load_airport_network(read_airports(a2, r2));
    EXPECT_EQ(load2.network.ids(), load.network.ids());
    auto e1 = load.network.edges(), e2 = load2.network.edges();
    ASSERT_EQ(e1.size(), e2.size());
    for (size_t i = 0; i < e1.size(); i++) {
        EXPECT_EQ(e1[i].u, e2[i].u);
        EXPECT_EQ(e1[i].v, e2[i].v);
        EXPECT_EQ(e1[i].p, e2[i].p);
    }
}

TEST(AirportLoad, BadRows) {
    std::istringstream a("id,name,lat,lon\n1,A,95,0\n"), r("src_id,dst_id\n");
    EXPECT_THROW(read_airports(a, r), DataError);
    std::istringstream a2("id,name,lat,lon\n1,A,0,0\n1,B,0,0\n"), r2("src_id,dst_id\n");
    EXPECT_THROW(load_airport_network(read_airports(a2, r2)), DataError);
    std::istringstream a3("id,name,lat\n1,A,0\n"), r3("src_id,dst_id\n");
    EXPECT_THROW(read_airports(a3, r3), DataError);
}

TEST(AirportReport, TwoAirports) {
    std::istringstream a("id,name,lat,lon\nA,a,0,0\nB,b,0,90\n"), r("src_id,dst_id\nA,B\n");
    AirportReport rep = airport_report(load_airport_network(read_airports(a, r)).network);
    EXPECT_NEAR(rep.longest_route_km, 6371 * std::numbers::pi / 2, 1e-6);
    EXPECT_EQ(rep.mean_route_km, rep.longest_route_km);
    EXPECT_EQ(rep.nodes, 2);
    EXPECT_EQ(rep.edges, 1);
}

// Airport-scale synthetic network: 3463 nodes and 25482 routes with random
// coordinates. Exercises the full report (including critical parameters).
TEST(AirportReport, ScaleUnderOneMinute) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> lat(-60, 70), lon(-180, 180);
    const int n = 3463, m = 25482;
    Network g;
    for (int i = 0; i < n; i++) {
        int v = g.add_node("A" + std::to_string(i));
        g.set_coordinates(v, lat(rng), lon(rng));
    }
    // hub-heavy attachment resembling an airline network
    std::vector<int> ends;
    int added = 0;
    for (int i = 1; i < n && added < m; i++) {
        int j = ends.empty() ? 0 : ends[rng() % ends.size()];
        if (!g.edge_p(i, j)) {
            auto [a1, o1] = g.coordinates(i);
            auto [a2, o2] = g.coordinates(j);
            g.add_edge(i, j, airport_link_probability(great_circle_km(a1, o1, a2, o2)));
            ends.push_back(i);
            ends.push_back(j);
            added++;
        }
    }
    while (added < m) {
        int i = rng() % n, j = ends[rng() % ends.size()];
        if (i == j || g.edge_p(i, j)) continue;
        auto [a1, o1] = g.coordinates(i);
        auto [a2, o2] = g.coordinates(j);
        g.add_edge(i, j, airport_link_probability(great_circle_km(a1, o1, a2, o2)));
        ends.push_back(i);
        ends.push_back(j);
        added++;
    }
    auto t0 = std::chrono::steady_clock::now();
    AirportReport rep = airport_report(g, 0.1, 10, true);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(rep.edges, m);
    EXPECT_EQ(rep.top_critical.size(), 10u);
    EXPECT_LT(secs, 60.0);
}
