#include "inventro/oracle.hpp"

#include <algorithm>
#include <map>

namespace inventro {

namespace {

// Prefix-deduplicated DFS over follower sets: each distinct prefix is visited
// once with the set of nodes a realizing walk can currently occupy.
void extend_node_words(const LabeledGraph& g, std::vector<int32_t>& word,
                       const std::vector<int32_t>& follower, int horizon, WordSet& out) {
    if (static_cast<int>(word.size()) == horizon) {
        out.words.insert(word);
        return;
    }
    std::map<int32_t, std::vector<int32_t>> next;  // label -> follower set
    for (int32_t v : follower)
        for (int32_t w : g.succ[v]) next[g.label[w]].push_back(w);
    for (auto& [a, f] : next) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        word.push_back(a);
        extend_node_words(g, word, f, horizon, out);
        word.pop_back();
    }
}

}  // namespace

WordSet enumerate_words(const LabeledGraph& g, int horizon, int64_t node_cap) {
    if (horizon < 1) throw DomainError("enumerate_words: horizon must be >= 1");
    if (g.n > node_cap)
        throw CapacityError("enumerate_words: graph has " + std::to_string(g.n) +
                            " nodes, cap is " + std::to_string(node_cap));
    WordSet out;
    out.horizon = horizon;
    std::map<int32_t, std::vector<int32_t>> start;
    for (int64_t v = 0; v < g.n; ++v) start[g.label[v]].push_back(static_cast<int32_t>(v));
    std::vector<int32_t> word;
    for (auto& [a, f] : start) {
        word.push_back(a);
        extend_node_words(g, word, f, horizon, out);
        word.pop_back();
    }
    return out;
}

namespace {

void extend_edge_words(const DeterministicGraph& g, std::vector<int32_t>& word,
                       const std::vector<int32_t>& states, int horizon, WordSet& out) {
    if (static_cast<int>(word.size()) == horizon) {
        out.words.insert(word);
        return;
    }
    std::map<int32_t, std::vector<int32_t>> next;
    for (int32_t v : states)
        for (auto& [a, t] : g.edges[v]) next[a].push_back(t);
    for (auto& [a, f] : next) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        word.push_back(a);
        extend_edge_words(g, word, f, horizon, out);
        word.pop_back();
    }
}

}  // namespace

WordSet enumerate_words(const DeterministicGraph& g, int horizon) {
    if (horizon < 1) throw DomainError("enumerate_words: horizon must be >= 1");
    WordSet out;
    out.horizon = horizon;
    std::vector<int32_t> all(g.node_count());
    for (size_t v = 0; v < all.size(); ++v) all[v] = static_cast<int32_t>(v);
    std::vector<int32_t> word;
    extend_edge_words(g, word, all, horizon, out);
    return out;
}

GrowthEstimate growth_estimate(const LabeledGraph& g, int n_max, int64_t node_cap) {
    if (n_max < 2) throw DomainError("growth_estimate: N_max must be >= 2");
    GrowthEstimate est;
    for (int n = 1; n <= n_max; ++n) {
        WordSet ws = enumerate_words(g, n, node_cap);
        est.counts.push_back(ws.count());
        est.per_n.push_back(std::log2(static_cast<double>(ws.count())) / n);
    }
    est.estimate = est.per_n.back();
    return est;
}

std::vector<int32_t> sample_trajectory_words(const ControlSystemModel& model,
                                             const InvariantController& ctrl,
                                             const InvariantPartition& partition,
                                             const Eigen::VectorXd& x0, int horizon) {
    std::vector<uint8_t> alive = alive_mask(ctrl);
    std::vector<int32_t> word;
    Eigen::VectorXd x = x0;
    std::vector<Eigen::VectorXd> visited{x};

    auto locate = [&](const Eigen::VectorXd& p) -> int64_t {
        int64_t idx = cell_index_of(ctrl.grid, p);
        if (idx >= 0 && alive[idx]) return idx;
        // a point on a shared face belongs to the closed boxes of both
        // neighbours; accept an alive one before declaring an exit
        if (idx >= 0) {
            std::vector<int64_t> mi = to_multi_index(ctrl.grid, idx);
            for (int d = 0; d < ctrl.grid.dim(); ++d) {
                if (mi[d] > 0 && p[d] == cell_face_lo(ctrl.grid, d, mi[d])) {
                    std::vector<int64_t> mj = mi;
                    --mj[d];
                    int64_t j = from_multi_index(ctrl.grid, mj);
                    if (alive[j]) return j;
                }
            }
        }
        return -1;
    };

    for (int t = 0; t < horizon; ++t) {
        int64_t idx = locate(x);
        if (idx < 0) {
            std::string msg = "trajectory left the controller domain at step " +
                              std::to_string(t) + "; states:";
            for (const auto& s : visited) {
                msg += " (";
                for (int d = 0; d < s.size(); ++d)
                    msg += (d ? "," : "") + std::to_string(s[d]);
                msg += ")";
            }
            throw SoundnessViolationError(msg);
        }
        int64_t dense = ctrl.dense_of(idx);
        int32_t label = partition.label_of[dense];
        word.push_back(label);
        x = model.step(x, partition.elements[label - 1].input);
        visited.push_back(x);
    }
    return word;
}

}  // namespace inventro
