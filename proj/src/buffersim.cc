#include "qnetlim/buffersim.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qnetlim/netgraph.h"
#include "qnetlim/text.h"

namespace qnetlim {

double decay_fidelity(double f0, double p_mem, int s, DepolMode mode) {
    if (!(f0 >= 0 && f0 <= 1)) throw std::invalid_argument("fidelity must lie in [0,1]");
    // Same linear map in the initial visibility (4 f0 - 1)/3 for both modes.
    return 0.25 + (4 * f0 - 1) / 3 * (depol_yield(p_mem, s, mode) - 0.25);
}

MemoryHeap::MemoryHeap(int capacity, double eta_crit, double p_mem, DepolMode mode)
    : capacity_(capacity), eta_crit_(eta_crit), p_mem_(p_mem), mode_(mode) {
    if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
    if (!(eta_crit >= 0 && eta_crit <= 1)) throw std::invalid_argument("eta_crit must lie in [0,1]");
    if (!(p_mem >= 0 && p_mem <= 4.0 / 3.0)) throw std::invalid_argument("p_mem must lie in [0,4/3]");
}

bool MemoryHeap::before(const StoredPair &a, const StoredPair &b) {
    if (a.current_fidelity != b.current_fidelity) return a.current_fidelity > b.current_fidelity;
    return a.id < b.id;
}

void MemoryHeap::sift_up(int i) {
    while (i > 0) {
        int parent = (i - 1) / 2;
        if (!before(heap_[i], heap_[parent])) break;
        std::swap(heap_[i], heap_[parent]);
        i = parent;
    }
}

void MemoryHeap::sift_down(int i) {
    int n = size();
    while (true) {
        int best = i, l = 2 * i + 1, r = 2 * i + 2;
        if (l < n && before(heap_[l], heap_[best])) best = l;
        if (r < n && before(heap_[r], heap_[best])) best = r;
        if (best == i) return;
        std::swap(heap_[i], heap_[best]);
        i = best;
    }
}

StoredPair MemoryHeap::remove_at(int i) {
    StoredPair out = heap_[i];
    heap_[i] = heap_.back();
    heap_.pop_back();
    if (i < size()) {
        sift_down(i);
        sift_up(i);
    }
    return out;
}

MemoryHeap::InsertResult MemoryHeap::insert(StoredPair pair) {
    pair.current_fidelity = decay_fidelity(pair.initial_fidelity, p_mem_, pair.age, mode_);
    if (pair.current_fidelity < eta_crit_) return {InsertKind::Rejected, std::nullopt};
    if (size() < capacity_) {
        heap_.push_back(pair);
        sift_up(size() - 1);
        return {InsertKind::Inserted, std::nullopt};
    }
    int worst = 0;
    for (int i = 1; i < size(); i++)
        if (before(heap_[worst], heap_[i])) worst = i;
    if (pair.current_fidelity <= heap_[worst].current_fidelity) return {InsertKind::Rejected, std::nullopt};
    StoredPair evicted = remove_at(worst);
    heap_.push_back(pair);
    sift_up(size() - 1);
    return {InsertKind::Replaced, evicted};
}

std::optional<MemoryHeap::Extracted> MemoryHeap::extract_max_at() {
    if (heap_.empty()) return std::nullopt;
    return Extracted{remove_at(0), 0};
}

std::optional<StoredPair> MemoryHeap::extract_max() {
    auto e = extract_max_at();
    if (!e) return std::nullopt;
    return e->pair;
}

std::optional<MemoryHeap::Extracted> MemoryHeap::extract_latest() {
    if (heap_.empty()) return std::nullopt;
    int pos = 0;
    for (int i = 1; i < size(); i++)
        if (heap_[i].id > heap_[pos].id) pos = i;
    return Extracted{remove_at(pos), pos};
}

std::vector<StoredPair> MemoryHeap::tick_decay() {
    std::vector<StoredPair> evicted, kept;
    for (auto &e : heap_) {
        e.age++;
        e.current_fidelity = decay_fidelity(e.initial_fidelity, p_mem_, e.age, mode_);
        (e.current_fidelity < eta_crit_ ? evicted : kept).push_back(e);
    }
    heap_ = std::move(kept);
    for (int i = size() / 2 - 1; i >= 0; i--) sift_down(i);
    std::sort(evicted.begin(), evicted.end(), [](const StoredPair &a, const StoredPair &b) { return a.id < b.id; });
    return evicted;
}

bool MemoryHeap::heap_property() const {
    if (size() > capacity_) return false;
    for (int i = 1; i < size(); i++)
        if (heap_[(i - 1) / 2].current_fidelity < heap_[i].current_fidelity) return false;
    return true;
}

int finish_time(int t_f_prev, int t_r, int t_p) {
    if (t_f_prev < 0 || t_r < 0 || t_p < 0) throw std::invalid_argument("times must be nonnegative");
    return std::max(t_f_prev, t_r) + t_p;
}

int sift_ticks(int pos) {
    if (pos < 0) throw std::invalid_argument("position must be nonnegative");
    return static_cast<int>(std::bit_width(static_cast<unsigned>(pos)));
}

std::string event_name(EventKind k) {
    switch (k) {
        case EventKind::Insert:
            return "insert";
        case EventKind::Decay:
            return "decay";
        case EventKind::Evict:
            return "evict";
        case EventKind::Dispatch:
            return "dispatch";
        case EventKind::Reject:
            return "reject";
    }
    return "?";
}

SimResult run(const SimConfig &cfg) {
    if (cfg.horizon <= 0) throw std::invalid_argument("horizon must be positive");
    MemoryHeap heap(cfg.capacity, cfg.eta_crit, cfg.p_mem, cfg.decay_mode);

    std::vector<Arrival> arrivals = cfg.arrivals;
    for (const auto &a : arrivals) {
        if (a.tick < 0) throw std::invalid_argument("arrival tick must be nonnegative");
        if (!(a.fidelity >= 0 && a.fidelity <= 1)) throw std::invalid_argument("arrival fidelity must lie in [0,1]");
    }
    std::stable_sort(arrivals.begin(), arrivals.end(), [](const Arrival &a, const Arrival &b) {
        return a.tick != b.tick ? a.tick < b.tick : a.producer < b.producer;
    });

    std::vector<FlowRequest> flows = cfg.flows;
    std::sort(flows.begin(), flows.end(), [](const FlowRequest &a, const FlowRequest &b) { return a.flow_id < b.flow_id; });
    for (size_t i = 0; i < flows.size(); i++) {
        if (i > 0 && flows[i].flow_id == flows[i - 1].flow_id) throw std::invalid_argument("duplicate flow id");
        if (flows[i].arrival_tick < 0 || flows[i].t_p < 0 || flows[i].demand < 0)
            throw std::invalid_argument("flow times and demand must be nonnegative");
    }
    std::vector<int> served(flows.size(), 0), last_finish(flows.size(), 0);

    SimResult res;
    auto log = [&](int tick, EventKind k, int pair, int flow, double f) { res.trace.push_back({tick, k, pair, flow, f}); };
    size_t next_arrival = 0;
    int next_id = 0;
    size_t rr = 0;
    for (int t = 0; t < cfg.horizon; t++) {
        for (; next_arrival < arrivals.size() && arrivals[next_arrival].tick == t; next_arrival++) {
            StoredPair p{next_id++, t, arrivals[next_arrival].fidelity, 0, arrivals[next_arrival].fidelity};
            auto ins = heap.insert(p);
            if (ins.kind == MemoryHeap::InsertKind::Rejected) {
                log(t, EventKind::Reject, p.id, -1, p.initial_fidelity);
                res.rejects++;
                continue;
            }
            if (ins.evicted) {
                log(t, EventKind::Evict, ins.evicted->id, -1, ins.evicted->current_fidelity);
                res.evictions++;
            }
            log(t, EventKind::Insert, p.id, -1, p.initial_fidelity);
            res.inserts++;
        }

        auto before_decay = heap.entries();
        auto gone = heap.tick_decay();
        std::sort(before_decay.begin(), before_decay.end(), [](const StoredPair &a, const StoredPair &b) { return a.id < b.id; });
        std::map<int, double> now;
        for (const auto &e : heap.entries()) now[e.id] = e.current_fidelity;
        for (const auto &e : before_decay)
            if (now.count(e.id)) log(t, EventKind::Decay, e.id, -1, now[e.id]);
        for (const auto &e : gone) {
            log(t, EventKind::Evict, e.id, -1, e.current_fidelity);
            res.evictions++;
        }

        if (flows.empty()) continue;
        size_t count = flows.size();
        size_t start = rr;
        for (size_t k = 0; k < count; k++) {
            size_t f = (start + k) % count;
            const FlowRequest &fl = flows[f];
            if (fl.arrival_tick > t || served[f] >= fl.demand) continue;
            if (heap.empty()) {
                rr = f;
                break;
            }
            auto got = cfg.order == ServiceOrder::HighestFidelity ? heap.extract_max_at() : heap.extract_latest();
            int t_r = t + sift_ticks(got->position);
            int t_f = finish_time(last_finish[f], t_r, fl.t_p);
            last_finish[f] = t_f;
            served[f]++;
            log(t, EventKind::Dispatch, got->pair.id, fl.flow_id, got->pair.current_fidelity);
            res.completions.push_back({fl.flow_id, got->pair.id, t, t_r, t_f});
            res.dispatches++;
            rr = (f + 1) % count;
        }
    }
    res.residual = heap.size();
    return res;
}

void write_trace_csv(std::ostream &out, const std::vector<TraceEvent> &trace) {
    out << "tick,event,pair_id,flow_id,fidelity\n";
    for (const auto &e : trace) {
        out << e.tick << "," << event_name(e.kind) << "," << e.pair_id << ",";
        if (e.flow_id >= 0) out << e.flow_id;
        out << "," << detail::fmt(e.fidelity) << "\n";
    }
}

void write_completions_csv(std::ostream &out, const std::vector<Completion> &completions) {
    out << "flow_id,pair_id,dispatch_tick,t_r,t_f\n";
    for (const auto &c : completions)
        out << c.flow_id << "," << c.pair_id << "," << c.dispatch_tick << "," << c.t_r << "," << c.t_f << "\n";
}

SimConfig parse_sim_config(const std::string &text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw DataError(std::string("config: ") + e.what());
    }
    static const char *known[] = {"capacity", "p_mem", "eta_crit", "horizon", "decay_mode", "service", "arrivals", "flows"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
            throw DataError("config: unknown key '" + it.key() + "'");
    SimConfig c;
    try {
        c.capacity = j.at("capacity").get<int>();
        c.horizon = j.at("horizon").get<int>();
        c.p_mem = j.value("p_mem", 0.0);
        c.eta_crit = j.value("eta_crit", 0.0);
        std::string mode = j.value("decay_mode", std::string("iterated"));
        if (mode == "iterated")
            c.decay_mode = DepolMode::IteratedChannel;
        else if (mode == "paper")
            c.decay_mode = DepolMode::PaperFormula;
        else
            throw DataError("config: decay_mode must be iterated or paper");
        std::string svc = j.value("service", std::string("highest-fidelity"));
        if (svc == "highest-fidelity")
            c.order = ServiceOrder::HighestFidelity;
        else if (svc == "latest")
            c.order = ServiceOrder::LatestFirst;
        else
            throw DataError("config: service must be highest-fidelity or latest");
        for (const auto &a : j.value("arrivals", json::array()))
            c.arrivals.push_back({a.at("tick").get<int>(), a.value("producer", 0), a.at("fidelity").get<double>()});
        for (const auto &f : j.value("flows", json::array()))
            c.flows.push_back({f.at("id").get<int>(), f.value("arrival_tick", 0), f.value("demand", 1), f.value("t_p", 1)});
    } catch (const json::exception &e) {
        throw DataError(std::string("config: ") + e.what());
    }
    return c;
}

SimConfig load_sim_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sim_config(ss.str());
}

}  // namespace qnetlim
