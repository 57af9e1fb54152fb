#include "qnetlim/figures.h"

#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "qnetlim/repeater.h"
#include "qnetlim/scenario.h"
#include "qnetlim/text.h"

namespace qnetlim {

namespace {

using detail::fmt;

std::string count_cell(const RepeaterCount &c) {
    switch (c.status) {
        case RepeaterCount::Status::Unbounded:
            return "inf";
        case RepeaterCount::Status::NoneFeasible:
            return "-1";
        default:
            return std::to_string(c.n);
    }
}

void repeater_counts(std::ostream &out, const TaskSpec &task, const std::vector<double> &qs, int lo, int hi, int denom) {
    out << "# n_max: largest n with q^n lambda^(n+1) > threshold; floor: closed-form floor placement\n";
    out << "# threshold=" << fmt(task.threshold()) << "\n";
    out << "# -1 means no feasible repeater count, inf means unbounded\n";
    out << "lambda";
    for (double q : qs) out << ",n_max_q" << fmt(q) << ",floor_q" << fmt(q);
    out << "\n";
    for (int i = lo; i <= hi; i++) {
        double lambda = static_cast<double>(i) / denom;
        out << fmt(lambda);
        for (double q : qs)
            out << "," << count_cell(max_repeaters(lambda, q, task)) << ","
                << count_cell(max_repeaters_floor_form(lambda, q, task));
        out << "\n";
    }
}

// t such that alpha l + beta t = bound; blank where negative.
std::string time_cell(double bound, double alpha, double beta, double l) {
    double t = (bound - alpha * l) / beta;
    return t >= 0 ? fmt(t) : "";
}

void fig4(std::ostream &out) {
    out << "# allowed repeater count for DI-QKD vs lambda\n# gamma_crit=0.7445 q in {0.95,0.99,1}\n";
    repeater_counts(out, TaskSpec::custom(0.7445), {0.95, 0.99, 1.0}, 300, 400, 400);
}

void fig7(std::ostream &out) {
    const double alpha = 1.0 / 22, beta = 1.0 / 50, p_star = 0.5;
    const std::vector<double> etas = {0.97, 0.88, 0.84};
    out << "# critical storage time vs critical fiber length, one repeater\n";
    out << "# p*=0.5 q=1 alpha=1/22 per km beta=1/50 per s\n";
    out << "l_km";
    for (double e : etas) out << ",t_s_eta" << fmt(e);
    out << "\n";
    for (int i = 0; i <= 160; i++) {
        double l = i * 0.05;
        out << fmt(l);
        for (double e : etas) {
            LinkBudget b;
            b.eta_s = e;
            b.r = 1;
            b.q = 1;
            b.p_star = p_star;
            out << "," << time_cell(critical_length_time_bound(b).bound, alpha, beta, l);
        }
        out << "\n";
    }
}

void fig8(std::ostream &out) {
    const double alpha = 1.0 / 22, beta = 1.0 / 50;
    const std::vector<int> rs = {1, 2, 3, 4, 5};
    out << "# critical storage time vs critical fiber length for r repeaters\n";
    out << "# p*=0.5 q=1 eta_s=0.999 alpha=1/22 per km beta=1/50 per s\n";
    out << "l_km";
    for (int r : rs) out << ",t_s_r" << r;
    out << "\n";
    for (int i = 0; i <= 160; i++) {
        double l = i * 0.05;
        out << fmt(l);
        for (int r : rs) {
            LinkBudget b;
            b.eta_s = 0.999;
            b.r = r;
            b.q = 1;
            b.p_star = 0.5;
            out << "," << time_cell(critical_length_time_bound(b).bound, alpha, beta, l);
        }
        out << "\n";
    }
}

void fig12(std::ostream &out) {
    const double alpha = 1.0 / 22;
    const std::vector<int> fs = {1, 2, 3, 4};
    out << "# repeater-assisted transmittance eta_R = exp(-alpha l / f), beta=0\n# alpha=1/22 per km\n";
    out << "l_km";
    for (int f : fs) out << ",eta_R_f" << f;
    out << "\n";
    for (int i = 0; i <= 100; i++) {
        double l = i;
        out << fmt(l);
        for (int f : fs) out << "," << fmt(std::exp(-alpha * l / f));
        out << "\n";
    }
}

void fig13(std::ostream &out) {
    const double alpha = 1.0 / 22, beta = 1.0 / 10, p_star = 0.5;
    const std::vector<int> fs = {1, 2, 3, 4};
    out << "# critical time vs critical length, alpha l + beta t < -f ln p*\n";
    out << "# p*=0.5 alpha=1/22 per km beta=1/10 per s\n";
    out << "l_km";
    for (int f : fs) out << ",t_s_f" << f;
    out << "\n";
    for (int i = 0; i <= 140; i++) {
        double l = i * 0.5;
        out << fmt(l);
        for (int f : fs) out << "," << time_cell(f_fold_bound(f, p_star), alpha, beta, l);
        out << "\n";
    }
}

SatelliteYieldParams satellite_base() {
    SatelliteYieldParams p;
    p.eta_s = 0.9;
    p.s = 1;
    p.p = 0.1;
    p.eta_e = 0.95;
    p.eta_g = 0.5;
    p.kappa_g = 0.5;
    p.alpha = 1.0 / 22;
    p.q = 1;
    return p;
}

void satellite_series(std::ostream &out, const std::string &column, const std::vector<double> &values,
                      const std::function<void(SatelliteYieldParams &, double)> &set, SatelliteYieldParams base) {
    out << "n";
    for (double v : values) out << ",yield_" << column << fmt(v);
    out << "\n";
    for (int n = 1; n <= 10; n++) {
        out << n;
        for (double v : values) {
            SatelliteYieldParams p = base;
            p.n = n;
            set(p, v);
            out << "," << fmt(satellite_yield(p));
        }
        out << "\n";
    }
}

void fig17(std::ostream &out) {
    out << "# satellite yield vs links n for fiber length L = l_B + l_M\n";
    out << "# eta_s=0.9 s=1 p=0.1 eta_e=0.95 eta_g=0.5 kappa_g=0.5 alpha=1/22 q=1\n";
    satellite_series(out, "L", {10, 20, 40}, [](SatelliteYieldParams &p, double v) { p.l_b = v; }, satellite_base());
}

void fig18(std::ostream &out) {
    out << "# satellite yield vs links n for source efficiency eta_s\n";
    out << "# L=10 s=1 p=0.95 eta_e=0.95 eta_g=0.5 kappa_g=0.5 alpha=1/22 q=1\n";
    SatelliteYieldParams base = satellite_base();
    base.l_b = 10;
    base.p = 0.95;
    satellite_series(out, "eta_s", {0.95, 0.99, 1.0}, [](SatelliteYieldParams &p, double v) { p.eta_s = v; }, base);
}

void fig19(std::ostream &out) {
    out << "# satellite yield vs links n for Bell success q\n";
    out << "# L=20 eta_s=0.9 s=1 p=0.1 eta_e=0.95 eta_g=0.5 kappa_g=0.5 alpha=1/22\n";
    SatelliteYieldParams base = satellite_base();
    base.l_b = 20;
    satellite_series(out, "q", {0.9, 0.95, 0.99, 1.0}, [](SatelliteYieldParams &p, double v) { p.q = v; }, base);
}

void fig20(std::ostream &out) {
    const std::vector<double> qs = {0.9, 0.95, 0.99, 1.0};
    out << "# airport-network yield vs virtual node spacing L0 for Bell success q\n";
    out << "# L=4000 km eta_e=0.95 eta_g=0.5 kappa_g=0.5\n";
    out << "L0_km";
    for (double q : qs) out << ",yield_q" << fmt(q);
    out << "\n";
    for (int i = 1; i <= 40; i++) {
        double l0 = 100.0 * i;
        out << fmt(l0);
        for (double q : qs) out << "," << fmt(airport_yield(4000, l0, q, 0.95, 0.5, 0.5));
        out << "\n";
    }
}

void fig21(std::ostream &out) {
    const std::vector<double> ls = {1000, 2000, 4000, 8000};
    out << "# airport-network yield vs virtual node spacing L0 for route length L\n";
    out << "# q=1 eta_e=0.95 eta_g=0.5 kappa_g=0.5\n";
    out << "L0_km";
    for (double l : ls) out << ",yield_L" << fmt(l);
    out << "\n";
    for (int i = 1; i <= 40; i++) {
        double l0 = 100.0 * i;
        out << fmt(l0);
        for (double l : ls) out << "," << (l >= l0 ? fmt(airport_yield(l, l0, 1, 0.95, 0.5, 0.5)) : "");
        out << "\n";
    }
}

void fig33(std::ostream &out) {
    const std::vector<double> zs = {0, 10, 20, 40};
    out << "# free-space transmittance vs aperture radius r for link distance z\n";
    out << "# w0=0.0021 z_R=17.8 sigma_R=0.1 Lambda=0.1 xi_r=0.99 xi_t=0.99 xi_as=0.5 eta=0.95 (lengths in m)\n";
    out << "r_m";
    for (double z : zs) out << ",xi_z" << fmt(z);
    out << "\n";
    for (int i = 0; i <= 100; i++) {
        double r = i * 0.001;
        out << fmt(r);
        for (double z : zs) {
            AtmosphereParams a;
            a.z = z;
            a.r = r;
            out << "," << fmt(atmospheric_transmittance(a));
        }
        out << "\n";
    }
}

void fig34(std::ostream &out) {
    out << "# allowed repeater count for teleportation vs lambda\n";
    repeater_counts(out, TaskSpec::teleportation(), {0.625, 0.95, 0.99}, 100, 200, 200);
}

void fig35(std::ostream &out) {
    out << "# allowed repeater count for Bell-CHSH violation vs lambda\n";
    repeater_counts(out, TaskSpec::chsh(), {0.625, 0.95, 0.99}, 100, 200, 200);
}

void fig36(std::ostream &out) {
    out << "# allowed repeater count for sharing entanglement vs lambda (separability threshold 1/3)\n";
    repeater_counts(out, TaskSpec::entanglement(), {0.625, 0.95, 0.99}, 100, 200, 200);
}

struct Entry {
    FigureInfo info;
    void (*fn)(std::ostream &);
};

const std::vector<Entry> &registry() {
    static const std::vector<Entry> r = {
        {{"fig4", "DI-QKD repeater count vs visibility"}, fig4},
        {{"fig7", "critical length/time, one repeater, source efficiencies"}, fig7},
        {{"fig8", "critical length/time for r repeaters"}, fig8},
        {{"fig12", "repeater-assisted transmittance vs length"}, fig12},
        {{"fig13", "f-fold critical length/time trade-off"}, fig13},
        {{"fig17", "satellite yield vs n, fiber length"}, fig17},
        {{"fig18", "satellite yield vs n, source efficiency"}, fig18},
        {{"fig19", "satellite yield vs n, Bell success"}, fig19},
        {{"fig20", "airport yield vs L0, Bell success"}, fig20},
        {{"fig21", "airport yield vs L0, route length"}, fig21},
        {{"fig33", "free-space transmittance vs aperture"}, fig33},
        {{"fig34", "teleportation repeater count vs visibility"}, fig34},
        {{"fig35", "CHSH repeater count vs visibility"}, fig35},
        {{"fig36", "entanglement repeater count vs visibility"}, fig36},
    };
    return r;
}

}  // namespace

std::vector<FigureInfo> figure_list() {
    std::vector<FigureInfo> out;
    for (const auto &e : registry()) out.push_back(e.info);
    return out;
}

void write_figure(const std::string &id, std::ostream &out) {
    for (const auto &e : registry())
        if (e.info.id == id) {
            out << "# " << e.info.id << ": " << e.info.title << "\n";
            e.fn(out);
            return;
        }
    throw std::invalid_argument("unknown figure id '" + id + "'");
}

}  // namespace qnetlim
