#ifndef QNETLIM_REPEATER_H
#define QNETLIM_REPEATER_H

#include <optional>
#include <string>
#include <utility>

namespace qnetlim {

enum class TaskKind { Entanglement, Teleportation, CHSH, DIQKD, Custom };
enum class EntanglementMode { PptThreshold, PaperAppendixH };

struct TaskSpec {
    TaskKind kind = TaskKind::DIQKD;
    double theta = 0.7853981633974483;  // DIQKD only, radians in (0, pi/2)
    double custom_threshold = 0.5;      // Custom only, in (0,1)
    EntanglementMode entanglement_mode = EntanglementMode::PptThreshold;

    static TaskSpec entanglement(EntanglementMode mode = EntanglementMode::PptThreshold);
    static TaskSpec teleportation();
    static TaskSpec chsh();
    static TaskSpec diqkd(double theta);
    static TaskSpec custom(double threshold);

    // Visibility threshold the end-to-end isotropic state must strictly exceed.
    double threshold() const;
    std::string name() const;
};

TaskSpec parse_task(const std::string &name, double theta = 0.7853981633974483, double custom = 0.5);

struct ChainConfig {
    double lambda = 1;
    double q = 1;
    int n = 0;
};

double chain_visibility(const ChainConfig &cfg);
double critical_visibility_diqkd(double theta);

struct RepeaterCount {
    enum class Status { Finite, Unbounded, NoneFeasible };
    Status status = Status::Finite;
    long long n = 0;  // valid when Finite; -1 when NoneFeasible

    bool operator==(const RepeaterCount &) const = default;
    std::string to_string() const;
};

RepeaterCount max_repeaters(double lambda, double q, const TaskSpec &task);
// Floor placement of the closed-form bound as printed for the DI key rate:
// n < floor(log(lambda/thr) / log(1/(q lambda))), largest such n.
RepeaterCount max_repeaters_floor_form(double lambda, double q, const TaskSpec &task);

struct Interval {
    double lo = 0;
    double hi = 0;
    bool empty = true;
    bool contains = false;  // whether the queried visibility lies inside
};
Interval zero_key_window(double lambda, double q, int n, double theta);

struct LinkBudget {
    double alpha = 0;  // 1/km
    double l = 0;      // km
    double beta = 0;   // 1/s
    double t = 0;      // s
    double eta_s = 1;
    int r = 1;
    double q = 1;
    double p_star = 0.5;
};

struct LengthTimeBound {
    double bound;
    bool feasible_at_zero;  // bound > 0
};

LengthTimeBound critical_length_time_bound(const LinkBudget &budget);
bool length_time_feasible(const LinkBudget &budget);

double f_fold_bound(double f, double p_star);

struct StarFactor {
    double f;
    bool advantage;
};
StarFactor star_repeater_factor(int n);

double required_f_lattice(double r, double L, double alpha, double eps);
double lattice_length_bound(double f, double alpha, double eps);

double required_f_diqkd(double alpha, double l, double t, double p_mem, int s, double gamma,
                        double exponent_factor = 1.0);

struct AlphaBound {
    double alpha;
    bool positive;  // false when 3 q^n <= 1
};
AlphaBound nqi_alpha_bound(double L, int n, double q);

struct CriticalProbability {
    double value;
    bool strict;
};
CriticalProbability critical_probability(TaskKind task, int d);

}  // namespace qnetlim

#endif
