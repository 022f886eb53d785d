#include "inventro/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "inventro/util.hpp"

namespace inventro {

TransitionMatrix transition_matrix(const ControlSystemModel& model,
                                   const InvariantController& ctrl,
                                   const InvariantPartition& partition, int threads) {
    const int64_t m = ctrl.domain_size();
    std::vector<uint8_t> alive = alive_mask(ctrl);
    TransitionMatrix tm;
    tm.n = m;
    tm.rows.resize(m);

    std::atomic<bool> violated{false};
    std::string violation;
    std::mutex vmutex;

    parallel_for(m, threads, [&](int64_t b, int64_t e) {
        std::vector<IndexRange> closed_r, interior_r;
        for (int64_t i = b; i < e && !violated.load(std::memory_order_relaxed); ++i) {
            const auto& el = partition.elements[partition.label_of[i] - 1];
            IntervalBox post =
                model.post_overapprox(cell_box(ctrl.grid, ctrl.cells[i]), el.input);
            bool ok = ctrl.grid.domain.contains_box(post) &&
                      overlap_ranges(ctrl.grid, post, /*closed=*/false, interior_r) &&
                      for_each_cell_in_rect(ctrl.grid, interior_r,
                                            [&](int64_t j) { return alive[j] != 0; });
            if (!ok) {
                std::lock_guard<std::mutex> lock(vmutex);
                violated = true;
                violation = "post of cell " + std::to_string(ctrl.cells[i]) +
                            " under element " + std::to_string(el.label) +
                            " escapes the controller domain";
                return;
            }
            overlap_ranges(ctrl.grid, post, /*closed=*/true, closed_r);
            auto& row = tm.rows[i];
            for_each_cell_in_rect(ctrl.grid, closed_r, [&](int64_t j) {
                if (alive[j]) {
                    int64_t dense = ctrl.dense_of(j);
                    row.push_back(static_cast<int32_t>(dense));
                }
                return true;
            });
            if (row.empty()) {
                std::lock_guard<std::mutex> lock(vmutex);
                violated = true;
                violation = "cell " + std::to_string(ctrl.cells[i]) + " has no successor";
            }
        }
    });
    if (violated) throw InvarianceViolationError(violation);
    return tm;
}

LabeledGraph labeled_graph(TransitionMatrix tm, const InvariantController& ctrl,
                           const InvariantPartition& partition) {
    LabeledGraph g;
    g.n = tm.n;
    g.succ = std::move(tm.rows);
    g.label = partition.label_of;
    g.node_cell = ctrl.cells;
    g.label_count = partition.size();
    return g;
}

std::vector<std::vector<int32_t>> tarjan_scc(const std::vector<std::vector<int32_t>>& succ) {
    const int64_t n = static_cast<int64_t>(succ.size());
    std::vector<int64_t> index(n, -1), low(n, 0);
    std::vector<uint8_t> on_stack(n, 0);
    std::vector<int32_t> stack;
    std::vector<int32_t> comp_of(n, -1);
    int64_t counter = 0;
    int32_t ncomp = 0;

    // iterative DFS: (node, next successor position)
    std::vector<std::pair<int32_t, size_t>> work;
    for (int64_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        work.emplace_back(static_cast<int32_t>(root), 0);
        while (!work.empty()) {
            auto& [v, pos] = work.back();
            if (pos == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (pos < succ[v].size()) {
                int32_t w = succ[v][pos++];
                if (index[w] == -1) {
                    work.emplace_back(w, 0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                while (true) {
                    int32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp_of[w] = ncomp;
                    if (w == v) break;
                }
                ++ncomp;
            }
            int32_t finished = v;
            work.pop_back();
            if (!work.empty())
                low[work.back().first] = std::min(low[work.back().first], low[finished]);
        }
    }

    std::vector<std::vector<int32_t>> comps(ncomp);
    for (int64_t v = 0; v < n; ++v) comps[comp_of[v]].push_back(static_cast<int32_t>(v));
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

int64_t DeterministicGraph::edge_count() const {
    int64_t e = 0;
    for (const auto& row : edges) e += static_cast<int64_t>(row.size());
    return e;
}

namespace {

struct VecHash {
    size_t operator()(const std::vector<int32_t>& v) const {
        // FNV-1a over the raw words
        size_t h = 1469598103934665603ULL;
        for (int32_t x : v) {
            h ^= static_cast<uint32_t>(x);
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace

DeterministicGraph subset_construction(const LabeledGraph& graph,
                                       const std::vector<int32_t>& scc,
                                       int64_t max_subsets) {
    const int64_t m = static_cast<int64_t>(scc.size());
    // local ids within the SCC
    std::unordered_map<int32_t, int32_t> local;
    local.reserve(m * 2);
    for (int64_t i = 0; i < m; ++i) local[scc[i]] = static_cast<int32_t>(i);

    // restricted successor lists and labels
    std::vector<std::vector<int32_t>> succ(m);
    std::vector<int32_t> label(m);
    for (int64_t i = 0; i < m; ++i) {
        label[i] = graph.label[scc[i]];
        for (int32_t w : graph.succ[scc[i]]) {
            auto it = local.find(w);
            if (it != local.end()) succ[i].push_back(it->second);
        }
    }

    std::unordered_map<std::vector<int32_t>, int32_t, VecHash> ids;
    std::vector<const std::vector<int32_t>*> subset_of;
    std::vector<std::vector<std::pair<int32_t, int32_t>>> edges;

    auto intern = [&](std::vector<int32_t>&& s) -> int32_t {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int32_t id = static_cast<int32_t>(subset_of.size());
        if (id >= max_subsets)
            throw CapacityError("subset construction exceeded " +
                                std::to_string(max_subsets) + " states");
        auto ins = ids.emplace(std::move(s), id);
        subset_of.push_back(&ins.first->first);
        edges.emplace_back();
        return id;
    };

    std::vector<int32_t> all(m);
    for (int64_t i = 0; i < m; ++i) all[i] = static_cast<int32_t>(i);
    intern(std::move(all));

    std::vector<std::pair<int32_t, int32_t>> by_label;  // (label, member)
    for (int32_t at = 0; at < static_cast<int32_t>(subset_of.size()); ++at) {
        const std::vector<int32_t>& S = *subset_of[at];
        by_label.clear();
        by_label.reserve(S.size());
        for (int32_t v : S) by_label.emplace_back(label[v], v);
        std::stable_sort(by_label.begin(), by_label.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        size_t p = 0;
        while (p < by_label.size()) {
            int32_t a = by_label[p].first;
            std::vector<int32_t> next;
            for (; p < by_label.size() && by_label[p].first == a; ++p)
                for (int32_t w : succ[by_label[p].second]) next.push_back(w);
            if (next.empty()) continue;
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            int32_t target = intern(std::move(next));
            edges[at].emplace_back(a, target);
        }
    }

    // essential core: keep only subset states on cycles
    const int64_t N = static_cast<int64_t>(subset_of.size());
    std::vector<std::vector<int32_t>> plain(N);
    for (int64_t v = 0; v < N; ++v) {
        plain[v].reserve(edges[v].size());
        for (auto& [a, t] : edges[v]) plain[v].push_back(t);
        std::sort(plain[v].begin(), plain[v].end());
        plain[v].erase(std::unique(plain[v].begin(), plain[v].end()), plain[v].end());
    }
    auto comps = tarjan_scc(plain);
    std::vector<uint8_t> essential(N, 0);
    for (const auto& comp : comps) {
        bool keep = comp.size() > 1;
        if (!keep) {
            int32_t v = comp.front();
            keep = std::binary_search(plain[v].begin(), plain[v].end(), v);
        }
        if (keep)
            for (int32_t v : comp) essential[v] = 1;
    }

    std::vector<int32_t> new_id(N, -1);
    DeterministicGraph det;
    for (int64_t v = 0; v < N; ++v) {
        if (!essential[v]) continue;
        new_id[v] = static_cast<int32_t>(det.subsets.size());
        det.subsets.push_back(*subset_of[v]);
        det.edges.emplace_back();
    }
    for (int64_t v = 0; v < N; ++v) {
        if (!essential[v]) continue;
        for (auto& [a, t] : edges[v])
            if (essential[t]) det.edges[new_id[v]].emplace_back(a, new_id[t]);
    }
    return det;
}

Eigen::MatrixXd adjacency_matrix(const DeterministicGraph& det) {
    const int64_t n = det.node_count();
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
    for (int64_t v = 0; v < n; ++v)
        for (auto& [a, t] : det.edges[v]) R(v, t) += 1.0;
    return R;
}

namespace {

// L1-normalized power iteration on I+R restricted to one support-SCC. The
// shift keeps periodic matrices converging and the iterate strictly positive,
// so the Collatz-Wielandt quotients (x+Rx)_i / x_i - 1 bracket the Perron
// root; iteration stops once that bracket (and the Rayleigh estimate) is
// tight to 1e-12 relative.
double perron_one_scc(const std::vector<std::vector<std::pair<int32_t, double>>>& rows) {
    const int64_t n = static_cast<int64_t>(rows.size());
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double rq = 0.0;
    for (int it = 0; it < 100000; ++it) {
        Eigen::VectorXd rx = Eigen::VectorXd::Zero(n);
        for (int64_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (auto& [j, w] : rows[i]) acc += w * x[j];
            rx[i] = acc;
        }
        rq = x.dot(rx) / x.dot(x);
        Eigen::VectorXd y = x + rx;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int64_t i = 0; i < n; ++i) {
            double q = y[i] / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        if (hi - lo <= 1e-12 * std::max(1.0, hi)) return 0.5 * (lo + hi) - 1.0;
        x = y / y.lpNorm<1>();
    }
    return rq;
}

double spectral_radius_sparse(int64_t n,
                              const std::vector<std::vector<std::pair<int32_t, double>>>& rows) {
    if (n == 0) return 0.0;
    std::vector<std::vector<int32_t>> support(n);
    for (int64_t i = 0; i < n; ++i)
        for (auto& [j, w] : rows[i])
            if (w != 0.0) support[i].push_back(j);
    double best = 0.0;
    for (const auto& comp : tarjan_scc(support)) {
        bool has_edge = comp.size() > 1;
        if (!has_edge) {
            int32_t v = comp.front();
            for (int32_t w : support[v])
                if (w == v) has_edge = true;
        }
        if (!has_edge) continue;
        std::unordered_map<int32_t, int32_t> lid;
        for (size_t i = 0; i < comp.size(); ++i) lid[comp[i]] = static_cast<int32_t>(i);
        std::vector<std::vector<std::pair<int32_t, double>>> sub(comp.size());
        for (size_t i = 0; i < comp.size(); ++i)
            for (auto& [j, w] : rows[comp[i]]) {
                auto it = lid.find(j);
                if (it != lid.end()) sub[i].emplace_back(it->second, w);
            }
        best = std::max(best, perron_one_scc(sub));
    }
    return best;
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& R) {
    if (R.rows() != R.cols()) throw DomainError("spectral_radius: matrix must be square");
    const int64_t n = R.rows();
    std::vector<std::vector<std::pair<int32_t, double>>> rows(n);
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = 0; j < n; ++j) {
            double w = R(i, j);
            if (w < 0.0) throw DomainError("spectral_radius: negative entry");
            if (w != 0.0) rows[i].emplace_back(static_cast<int32_t>(j), w);
        }
    return spectral_radius_sparse(n, rows);
}

EntropyReport analyze_partition(const ControlSystemModel& model,
                                const InvariantController& ctrl,
                                const InvariantPartition& partition,
                                const AnalysisOptions& opts, LabeledGraph* graph_out) {
    auto t0 = std::chrono::steady_clock::now();
    EntropyReport rep;
    rep.system = model.name;
    rep.cells = ctrl.domain_size();
    rep.partition_size = partition.size();
    rep.sampled = model.sampling_time > 0.0;

    TransitionMatrix tm = transition_matrix(model, ctrl, partition, opts.threads);
    LabeledGraph g = labeled_graph(std::move(tm), ctrl, partition);
    auto comps = tarjan_scc(g.succ);
    rep.scc_total = static_cast<int64_t>(comps.size());

    double best = 0.0;
    bool any = false;
    for (const auto& comp : comps) {
        bool nontrivial = comp.size() > 1;
        if (!nontrivial) {
            int32_t v = comp.front();
            nontrivial = std::binary_search(g.succ[v].begin(), g.succ[v].end(), v);
        }
        if (!nontrivial) continue;
        any = true;
        DeterministicGraph det = subset_construction(g, comp, opts.max_subsets);
        std::vector<std::vector<std::pair<int32_t, double>>> rows(det.node_count());
        for (int64_t v = 0; v < det.node_count(); ++v) {
            auto& out = rows[v];
            for (auto& [a, t] : det.edges[v]) {
                bool merged = false;
                for (auto& [j, w] : out)
                    if (j == t) {
                        w += 1.0;
                        merged = true;
                        break;
                    }
                if (!merged) out.emplace_back(t, 1.0);
            }
        }
        SccReport sr;
        sr.scc_size = static_cast<int64_t>(comp.size());
        sr.det_nodes = det.node_count();
        sr.det_edges = det.edge_count();
        sr.rho = spectral_radius_sparse(det.node_count(), rows);
        rep.sccs.push_back(sr);
        best = std::max(best, sr.rho);
    }
    rep.acyclic = !any;
    rep.bound = (any && best > 0.0) ? std::log2(best) : 0.0;
    if (rep.sampled) rep.bound_per_Ts = rep.bound / model.sampling_time;
    rep.wallclock_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    if (graph_out) *graph_out = std::move(g);
    return rep;
}

EntropyReport entropy_upper_bound(const ControlSystemModel& model, const UniformGrid& grid,
                                  const InputGrid& inputs, const std::string& determinizer,
                                  const SynthesisOptions& sopts, const AnalysisOptions& aopts,
                                  InvariantController* ctrl_out, InvariantPartition* part_out,
                                  LabeledGraph* graph_out) {
    auto t0 = std::chrono::steady_clock::now();
    InvariantController ctrl = synthesize_invariant_controller(model, grid, inputs, sopts);
    std::vector<int32_t> choice;
    if (determinizer == "maxfreq") choice = determinize_maxfreq(ctrl);
    else if (determinizer == "minnorm") choice = determinize_minnorm(ctrl);
    else throw DomainError("unknown determinizer: " + determinizer);
    DecisionTree tree = build_tree(ctrl, choice);
    InvariantPartition part = tree_to_partition(tree, ctrl);
    EntropyReport rep = analyze_partition(model, ctrl, part, aopts, graph_out);
    rep.determinizer = determinizer;
    rep.wallclock_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    if (ctrl_out) *ctrl_out = std::move(ctrl);
    if (part_out) *part_out = std::move(part);
    return rep;
}

std::string dot_export(const LabeledGraph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    os << "  rankdir=LR;\n";
    for (int64_t v = 0; v < g.n; ++v)
        os << "  n" << v << " [label=\"B" << g.node_cell[v] << "\"];\n";
    for (int64_t v = 0; v < g.n; ++v)
        for (int32_t w : g.succ[v])
            os << "  n" << v << " -> n" << w << " [label=\"" << g.label[v] << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string dot_export(const DeterministicGraph& g) {
    std::ostringstream os;
    os << "digraph GR {\n";
    os << "  rankdir=LR;\n";
    for (int64_t v = 0; v < g.node_count(); ++v)
        os << "  r" << v << " [label=\"R" << v << "|" << g.subsets[v].size() << "\"];\n";
    for (int64_t v = 0; v < g.node_count(); ++v)
        for (auto& [a, t] : g.edges[v])
            os << "  r" << v << " -> r" << t << " [label=\"" << a << "\"];\n";
    os << "}\n";
    return os.str();
}

void write_report(const EntropyReport& r, std::ostream& os, bool include_timings) {
    os << "bound=" << fmt_real(r.bound) << "\n";
    if (r.sampled) os << "bound_per_Ts=" << fmt_real(r.bound_per_Ts) << "\n";
    os << "scc_count=" << r.sccs.size() << "\n";
    for (size_t k = 0; k < r.sccs.size(); ++k)
        os << "rho_" << k << "=" << fmt_real(r.sccs[k].rho) << "\n";
    os << "partition_size=" << r.partition_size << "\n";
    os << "cells=" << r.cells << "\n";
    if (r.acyclic) os << "warning=acyclic_graph\n";
    if (include_timings) os << "wallclock_ms=" << fmt_real(r.wallclock_ms) << "\n";
    os << "record=v1|system:" << r.system << "|determinizer:" << r.determinizer
       << "|cells:" << r.cells << "|partition_size:" << r.partition_size
       << "|scc_count:" << r.sccs.size() << "|bound:" << fmt_real(r.bound);
    if (r.sampled) os << "|bound_per_Ts:" << fmt_real(r.bound_per_Ts);
    os << "\n";
}

std::string write_report(const EntropyReport& r, bool include_timings) {
    std::ostringstream os;
    write_report(r, os, include_timings);
    return os.str();
}

}  // namespace inventro
