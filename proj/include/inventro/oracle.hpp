#pragma once

#include <set>

#include "inventro/entropy.hpp"

namespace inventro {

/// Distinct label words of the graph at one horizon. For the labeled graph,
/// words follow the node convention: a word of length N reads the source
/// labels of an N-node walk (N-1 edges). For the deterministic graph, a word
/// of length N reads N edge labels starting anywhere.
struct WordSet {
    int horizon = 0;
    std::set<std::vector<int32_t>> words;

    int64_t count() const { return static_cast<int64_t>(words.size()); }
    bool contains(const std::vector<int32_t>& w) const { return words.count(w) != 0; }
};

WordSet enumerate_words(const LabeledGraph& g, int horizon, int64_t node_cap = 200);
WordSet enumerate_words(const DeterministicGraph& g, int horizon);

/// (1/N) log2 |W_N| for N = 1..N_max; by subadditivity every term bounds the
/// limit from above. estimate is the N_max term.
struct GrowthEstimate {
    std::vector<int64_t> counts;  // counts[k] = |W_{k+1}|
    std::vector<double> per_n;    // (1/N) log2 counts
    double estimate = 0.0;
};

GrowthEstimate growth_estimate(const LabeledGraph& g, int n_max, int64_t node_cap = 200);

/// Closed-loop label itinerary: iterates x <- step(x, G(A_label(x))) for N
/// steps recording labels. Throws SoundnessViolationError (with the visited
/// states in the message) if the trajectory leaves the controller domain.
std::vector<int32_t> sample_trajectory_words(const ControlSystemModel& model,
                                             const InvariantController& ctrl,
                                             const InvariantPartition& partition,
                                             const Eigen::VectorXd& x0, int horizon);

}  // namespace inventro
