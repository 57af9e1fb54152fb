#include "qnetlim/repeater.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qnetlim/qstate.h"

namespace qnetlim {

namespace {

void check_unit(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

double visibility(double lambda, double q, long long n) {
    return std::pow(q, static_cast<double>(n)) * std::pow(lambda, static_cast<double>(n + 1));
}

// Real x such that lambda (q lambda)^n > thr  <=>  n < x.
double log_ratio(double lambda, double q, double thr) {
    double ql = q * lambda;
    if (ql <= 0) return 0;
    return std::log(lambda / thr) / std::log(1 / ql);
}

}  // namespace

TaskSpec TaskSpec::entanglement(EntanglementMode mode) {
    TaskSpec t;
    t.kind = TaskKind::Entanglement;
    t.entanglement_mode = mode;
    return t;
}

TaskSpec TaskSpec::teleportation() {
    TaskSpec t;
    t.kind = TaskKind::Teleportation;
    return t;
}

TaskSpec TaskSpec::chsh() {
    TaskSpec t;
    t.kind = TaskKind::CHSH;
    return t;
}

TaskSpec TaskSpec::diqkd(double theta) {
    if (!(theta > 0 && theta < std::numbers::pi / 2)) throw std::invalid_argument("theta must lie in (0, pi/2)");
    TaskSpec t;
    t.kind = TaskKind::DIQKD;
    t.theta = theta;
    return t;
}

TaskSpec TaskSpec::custom(double threshold) {
    if (!(threshold > 0 && threshold < 1)) throw std::invalid_argument("custom threshold must lie in (0,1)");
    TaskSpec t;
    t.kind = TaskKind::Custom;
    t.custom_threshold = threshold;
    return t;
}

double TaskSpec::threshold() const {
    switch (kind) {
        case TaskKind::DIQKD:
            return critical_visibility_diqkd(theta);
        case TaskKind::CHSH:
            return 1 / std::numbers::sqrt2;
        case TaskKind::Teleportation:
            return 1.0 / 3.0;
        case TaskKind::Entanglement:
            return entanglement_mode == EntanglementMode::PptThreshold ? 1.0 / 3.0 : 2 / std::sqrt(3.0) - 1;
        case TaskKind::Custom:
            return custom_threshold;
    }
    return 1;
}

std::string TaskSpec::name() const {
    switch (kind) {
        case TaskKind::DIQKD:
            return "diqkd";
        case TaskKind::CHSH:
            return "chsh";
        case TaskKind::Teleportation:
            return "teleportation";
        case TaskKind::Entanglement:
            return entanglement_mode == EntanglementMode::PptThreshold ? "entanglement" : "entanglement-apph";
        case TaskKind::Custom:
            return "custom";
    }
    return "?";
}

TaskSpec parse_task(const std::string &name, double theta, double custom) {
    if (name == "diqkd") return TaskSpec::diqkd(theta);
    if (name == "chsh") return TaskSpec::chsh();
    if (name == "teleportation") return TaskSpec::teleportation();
    if (name == "entanglement") return TaskSpec::entanglement();
    if (name == "entanglement-apph") return TaskSpec::entanglement(EntanglementMode::PaperAppendixH);
    if (name == "custom") return TaskSpec::custom(custom);
    throw std::invalid_argument("unknown task '" + name + "'");
}

double chain_visibility(const ChainConfig &cfg) {
    check_unit(cfg.lambda, "lambda");
    check_unit(cfg.q, "q");
    if (cfg.n < 0) throw std::invalid_argument("n must be >= 0");
    return visibility(cfg.lambda, cfg.q, cfg.n);
}

double critical_visibility_diqkd(double theta) {
    if (!(theta > 0 && theta < std::numbers::pi / 2)) throw std::invalid_argument("theta must lie in (0, pi/2)");
    double gl = 1 / (std::cos(theta) + std::sin(theta));
    return (gl + 1) / (3 - gl);
}

std::string RepeaterCount::to_string() const {
    switch (status) {
        case Status::Unbounded:
            return "unbounded";
        case Status::NoneFeasible:
            return "none";
        default:
            return std::to_string(n);
    }
}

RepeaterCount max_repeaters(double lambda, double q, const TaskSpec &task) {
    check_unit(lambda, "lambda");
    check_unit(q, "q");
    double thr = task.threshold();
    if (!(lambda > thr)) return {RepeaterCount::Status::NoneFeasible, -1};
    if (q * lambda >= 1) return {RepeaterCount::Status::Unbounded, 0};
    double x = log_ratio(lambda, q, thr);
    long long n = x >= 1 ? static_cast<long long>(std::ceil(x)) - 1 : 0;
    // Guard the logarithmic estimate against rounding at integer boundaries.
    while (n > 0 && !(visibility(lambda, q, n) > thr)) n--;
    while (visibility(lambda, q, n + 1) > thr) n++;
    return {RepeaterCount::Status::Finite, n};
}

RepeaterCount max_repeaters_floor_form(double lambda, double q, const TaskSpec &task) {
    check_unit(lambda, "lambda");
    check_unit(q, "q");
    double thr = task.threshold();
    if (!(lambda > thr)) return {RepeaterCount::Status::NoneFeasible, -1};
    if (q * lambda >= 1) return {RepeaterCount::Status::Unbounded, 0};
    long long n = static_cast<long long>(std::floor(log_ratio(lambda, q, thr))) - 1;
    if (n < 0) return {RepeaterCount::Status::NoneFeasible, -1};
    return {RepeaterCount::Status::Finite, n};
}

Interval zero_key_window(double lambda, double q, int n, double theta) {
    check_unit(lambda, "lambda");
    check_unit(q, "q");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    double g = critical_visibility_diqkd(theta);
    double qn = std::pow(q, n);
    double hi = qn > 0 ? std::min(1.0, std::pow(g / qn, 1.0 / (n + 1))) : 1.0;
    Interval iv{g, hi, !(g < hi), false};
    iv.contains = !iv.empty && lambda > g && lambda < hi;
    return iv;
}

LengthTimeBound critical_length_time_bound(const LinkBudget &b) {
    if (b.r < 1) throw std::invalid_argument("r must be >= 1");
    check_unit(b.q, "q");
    check_unit(b.eta_s, "eta_s");
    if (!(b.p_star > 0 && b.p_star < 1)) throw std::invalid_argument("p* must lie in (0,1)");
    double r = b.r;
    double bound = std::log(std::pow(b.q, r) * std::pow(b.eta_s, r + 1) / b.p_star) / (2 * r);
    return {bound, bound > 0};
}

bool length_time_feasible(const LinkBudget &b) {
    if (b.alpha < 0 || b.l < 0 || b.beta < 0 || b.t < 0) throw std::invalid_argument("loss parameters must be nonnegative");
    LengthTimeBound lt = critical_length_time_bound(b);
    return b.alpha * b.l + b.beta * b.t < lt.bound;
}

double f_fold_bound(double f, double p_star) {
    if (!(f >= 1)) throw std::invalid_argument("f must be >= 1");
    if (!(p_star > 0 && p_star < 1)) throw std::invalid_argument("p* must lie in (0,1)");
    return -f * std::log(p_star);
}

StarFactor star_repeater_factor(int n) {
    if (n < 3) throw std::invalid_argument("n must be >= 3");
    return {2 * std::sin(std::numbers::pi / n), n < 6};
}

double required_f_lattice(double r, double L, double alpha, double eps) {
    if (!(r > 0 && L > 0 && alpha > 0)) throw std::invalid_argument("r, L, alpha must be positive");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
    return r * L * alpha / std::log(1 / eps);
}

double lattice_length_bound(double f, double alpha, double eps) {
    if (!(f > 0 && alpha > 0)) throw std::invalid_argument("f, alpha must be positive");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
    return f / alpha * std::log(1 / eps);
}

double required_f_diqkd(double alpha, double l, double t, double p_mem, int s, double gamma, double exponent_factor) {
    if (alpha < 0 || l < 0 || t < 0 || exponent_factor < 0) throw std::invalid_argument("inputs must be nonnegative");
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
    double eta = depol_yield(p_mem, s, DepolMode::PaperFormula);
    double head = eta * eta;
    if (!(head > gamma)) return std::numeric_limits<double>::infinity();
    double c = exponent_factor * alpha * l * t;
    return c / std::log(head / gamma);
}

AlphaBound nqi_alpha_bound(double L, int n, double q) {
    if (!(L > 0)) throw std::invalid_argument("L must be positive");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(q > 0 && q <= 1)) throw std::invalid_argument("q must lie in (0,1]");
    double num = std::log(3.0) + n * std::log(q);
    double a = num / (L * (1 + 1.0 / n));
    return {a, num > 0};
}

CriticalProbability critical_probability(TaskKind task, int d) {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (task == TaskKind::Entanglement) return {1.0 / d, false};
    if (task == TaskKind::Teleportation) return {1.0 / d, true};
    throw std::invalid_argument("critical probability defined for entanglement and teleportation only");
}

}  // namespace qnetlim
