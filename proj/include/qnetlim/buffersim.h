#ifndef QNETLIM_BUFFERSIM_H
#define QNETLIM_BUFFERSIM_H

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qnetlim/qstate.h"

namespace qnetlim {

struct StoredPair {
    int id = 0;
    int insertion_tick = 0;
    double initial_fidelity = 1;
    int age = 0;
    double current_fidelity = 1;
};

// Fidelity with Psi+ of an isotropic pair of initial fidelity f0 after s memory steps.
double decay_fidelity(double f0, double p_mem, int s, DepolMode mode = DepolMode::IteratedChannel);

class MemoryHeap {
   public:
    enum class InsertKind { Inserted, Replaced, Rejected };
    struct InsertResult {
        InsertKind kind;
        std::optional<StoredPair> evicted;  // set when Replaced
    };
    struct Extracted {
        StoredPair pair;
        int position;  // array index before removal
    };

    MemoryHeap(int capacity, double eta_crit, double p_mem, DepolMode mode = DepolMode::IteratedChannel);

    InsertResult insert(StoredPair pair);
    std::optional<StoredPair> extract_max();
    std::optional<Extracted> extract_max_at();
    // Most recently inserted entry (largest id).
    std::optional<Extracted> extract_latest();
    // Ages every entry by one step; returns the evicted entries ordered by id.
    std::vector<StoredPair> tick_decay();

    bool heap_property() const;
    int size() const { return static_cast<int>(heap_.size()); }
    int capacity() const { return capacity_; }
    bool empty() const { return heap_.empty(); }
    const std::vector<StoredPair> &entries() const { return heap_; }
    double eta_crit() const { return eta_crit_; }

   private:
    static bool before(const StoredPair &a, const StoredPair &b);
    void sift_up(int i);
    void sift_down(int i);
    StoredPair remove_at(int i);

    int capacity_;
    double eta_crit_;
    double p_mem_;
    DepolMode mode_;
    std::vector<StoredPair> heap_;
};

int finish_time(int t_f_prev, int t_r, int t_p);
// Ticks for an entry at array index pos to sift up to the root.
int sift_ticks(int pos);

enum class ServiceOrder { HighestFidelity, LatestFirst };

struct Arrival {
    int tick = 0;
    int producer = 0;
    double fidelity = 1;
};

struct FlowRequest {
    int flow_id = 0;
    int arrival_tick = 0;
    int demand = 1;  // pairs requested
    int t_p = 1;     // processing ticks per pair
};

struct SimConfig {
    int capacity = 1;
    double p_mem = 0;
    double eta_crit = 0;
    int horizon = 1;
    DepolMode decay_mode = DepolMode::IteratedChannel;
    ServiceOrder order = ServiceOrder::HighestFidelity;
    std::vector<Arrival> arrivals;
    std::vector<FlowRequest> flows;
};

enum class EventKind { Insert, Decay, Evict, Dispatch, Reject };
std::string event_name(EventKind k);

struct TraceEvent {
    int tick;
    EventKind kind;
    int pair_id;
    int flow_id;  // -1 when not flow related
    double fidelity;
};

struct Completion {
    int flow_id;
    int pair_id;
    int dispatch_tick;
    int t_r;
    int t_f;
};

struct SimResult {
    std::vector<TraceEvent> trace;
    std::vector<Completion> completions;
    int inserts = 0;
    int dispatches = 0;
    int evictions = 0;
    int rejects = 0;
    int residual = 0;
};

SimResult run(const SimConfig &config);

void write_trace_csv(std::ostream &out, const std::vector<TraceEvent> &trace);
void write_completions_csv(std::ostream &out, const std::vector<Completion> &completions);

// JSON config: capacity, p_mem, eta_crit, horizon, decay_mode ("iterated"|"paper"),
// service ("highest-fidelity"|"latest"), arrivals [{tick,producer,fidelity}],
// flows [{id,arrival_tick,demand,t_p}].
SimConfig parse_sim_config(const std::string &json_text);
SimConfig load_sim_config(const std::string &path);

}  // namespace qnetlim

#endif
