#pragma once

#include <iosfwd>

#include "inventro/determinizer.hpp"

namespace inventro {

/// Sparse boolean cell-to-cell reachability under the determinized controller:
/// rows[i] lists (dense ids of) cells whose closed box meets the post box of
/// cell i under its element's input. Every row is non-empty.
struct TransitionMatrix {
    int64_t n = 0;
    std::vector<std::vector<int32_t>> rows;
};

/// Directed graph on the controller cells with source-labeled edges: an edge
/// i -> j carries label(i). Equals the support of the TransitionMatrix.
struct LabeledGraph {
    int64_t n = 0;
    std::vector<std::vector<int32_t>> succ;  // ascending
    std::vector<int32_t> label;              // 1..q per node
    std::vector<int64_t> node_cell;          // grid index per dense node
    int32_t label_count = 0;
};

/// Builds Eq.-(2)-style transitions from the box over-approximation of the
/// closed loop. Successor cells are collected with closed overlap (face
/// contact counts: over-approximation only adds words); interior-overlap
/// cells must all be alive or InvarianceViolationError is thrown.
TransitionMatrix transition_matrix(const ControlSystemModel& model,
                                   const InvariantController& ctrl,
                                   const InvariantPartition& partition, int threads = 1);

LabeledGraph labeled_graph(TransitionMatrix tm, const InvariantController& ctrl,
                           const InvariantPartition& partition);

/// Strongly connected components (iterative Tarjan); components are returned
/// with members ascending, ordered by smallest member.
std::vector<std::vector<int32_t>> tarjan_scc(const std::vector<std::vector<int32_t>>& succ);

/// Label-deterministic presentation of one SCC's language: nodes are subsets
/// of the SCC, obtained by breadth-first closure of the label-successor map
/// seeded at the full SCC, then trimmed to the essential (recurrent) part so
/// every remaining node lies on a cycle.
struct DeterministicGraph {
    std::vector<std::vector<int32_t>> subsets;                    // graph-node ids, ascending
    std::vector<std::vector<std::pair<int32_t, int32_t>>> edges;  // per node: (label, target)

    int64_t node_count() const { return static_cast<int64_t>(subsets.size()); }
    int64_t edge_count() const;
};

DeterministicGraph subset_construction(const LabeledGraph& graph,
                                       const std::vector<int32_t>& scc,
                                       int64_t max_subsets = 5000000);

/// Edge-count adjacency matrix R of the deterministic graph.
Eigen::MatrixXd adjacency_matrix(const DeterministicGraph& det);

/// Perron root of a non-negative matrix: power iteration (L1-normalized, on
/// I+R to damp periodicity) applied per SCC of the support, Rayleigh-quotient
/// convergence below 1e-12 relative or 1e5 iterations, max over SCCs.
double spectral_radius(const Eigen::MatrixXd& R);

struct SccReport {
    int64_t scc_size = 0;
    int64_t det_nodes = 0;
    int64_t det_edges = 0;
    double rho = 0.0;
};

struct EntropyReport {
    double bound = 0.0;
    double bound_per_Ts = 0.0;
    bool sampled = false;
    bool acyclic = false;  // no nontrivial SCC: bound 0 with a warning
    int64_t cells = 0;
    int32_t partition_size = 0;
    int64_t scc_total = 0;       // all SCCs
    std::vector<SccReport> sccs;  // nontrivial ones, processing order
    double wallclock_ms = 0.0;
    std::string system;
    std::string determinizer;
    std::vector<double> eta_s;
    std::vector<double> eta_i;
    double T_s = 0.0;
};

struct AnalysisOptions {
    int threads = 1;
    int64_t max_subsets = 5000000;
};

/// Steps 3..8 on an existing controller + partition: transition matrix, graph,
/// SCCs, per-SCC subset construction and spectral radius, final bound.
EntropyReport analyze_partition(const ControlSystemModel& model,
                                const InvariantController& ctrl,
                                const InvariantPartition& partition,
                                const AnalysisOptions& opts = {},
                                LabeledGraph* graph_out = nullptr);

/// Full pipeline: synthesis, determinization (maxfreq|minnorm), analysis.
EntropyReport entropy_upper_bound(const ControlSystemModel& model, const UniformGrid& grid,
                                  const InputGrid& inputs, const std::string& determinizer,
                                  const SynthesisOptions& sopts = {},
                                  const AnalysisOptions& aopts = {},
                                  InvariantController* ctrl_out = nullptr,
                                  InvariantPartition* part_out = nullptr,
                                  LabeledGraph* graph_out = nullptr);

std::string dot_export(const LabeledGraph& g);
std::string dot_export(const DeterministicGraph& g);

/// key=value report serialization; timings included only on request so that
/// written report files stay byte-identical across reruns.
void write_report(const EntropyReport& r, std::ostream& os, bool include_timings);
std::string write_report(const EntropyReport& r, bool include_timings);

}  // namespace inventro
