// Acceptance suite: one criterion per number, each printing [PASS]/[FAIL]
// lines per assertion and a criterion summary. Run `acceptance` with no
// arguments for all criteria, or pass the numbers to run.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "inventro/oracle.hpp"
#include "inventro/pipeline.hpp"
#include "inventro/util.hpp"

using namespace inventro;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "  [PASS] " : "  [FAIL] ") << what << "\n";
    if (!ok) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

long vm_peak_mb() {
    std::ifstream f("/proc/self/status");
    std::string line;
    while (std::getline(f, line)) {
        if (line.rfind("VmPeak:", 0) == 0) {
            long kb = 0;
            std::sscanf(line.c_str(), "VmPeak: %ld kB", &kb);
            return kb / 1024;
        }
    }
    return -1;
}

RunConfig walkthrough_cfg() {
    RunConfig cfg;
    cfg.system = "linear2d";
    cfg.eta_s = {0.57142};
    cfg.eta_i = {0.005};
    cfg.determinizer = "minnorm";  // realizes the column partition (+1, 0, -1)
    cfg.threads = 1;
    return cfg;
}

bool accepts(const LabeledGraph& g, const std::vector<int32_t>& word) {
    std::vector<int32_t> follower;
    for (int64_t v = 0; v < g.n; ++v)
        if (g.label[v] == word[0]) follower.push_back(static_cast<int32_t>(v));
    if (follower.empty()) return false;
    for (size_t t = 1; t < word.size(); ++t) {
        std::set<int32_t> next;
        for (int32_t v : follower)
            for (int32_t w : g.succ[v])
                if (g.label[w] == word[t]) next.insert(w);
        if (next.empty()) return false;
        follower.assign(next.begin(), next.end());
    }
    return true;
}

struct Instance {
    ControlSystemModel model;
    InvariantController ctrl;
    InvariantPartition part;
    LabeledGraph graph;
};

Instance build_instance(const ControlSystemModel& model, double eta_s, double eta_i,
                        const std::string& det) {
    Instance in{model, {}, {}, {}};
    UniformGrid g = build_grid(model.default_domain,
                               Eigen::VectorXd::Constant(model.state_dim, eta_s));
    InputGrid ig = build_input_grid(model.input_range,
                                    Eigen::VectorXd::Constant(model.input_dim, eta_i));
    in.ctrl = synthesize_invariant_controller(model, g, ig);
    std::vector<int32_t> choice =
        det == "maxfreq" ? determinize_maxfreq(in.ctrl) : determinize_minnorm(in.ctrl);
    DecisionTree t = build_tree(in.ctrl, choice);
    in.part = tree_to_partition(t, in.ctrl);
    TransitionMatrix tm = transition_matrix(model, in.ctrl, in.part);
    in.graph = labeled_graph(std::move(tm), in.ctrl, in.part);
    return in;
}

// ---- criterion 1: Example-1 coarse walkthrough, exact -----------------------

void criterion_1() {
    std::cout << "criterion 1: Example-1 coarse walkthrough (exact)\n";
    auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = walkthrough_cfg();
    PipelineResult res = run_pipeline(cfg, false);
    double elapsed = seconds_since(t0);

    check(res.report.cells == 21, "21 cells in the controller domain");
    // column partition realized: inputs (+1, 0, -1), labels by column
    bool inputs_ok = res.partition.size() == 3 &&
                     res.partition.elements[0].input[0] == 1.0 &&
                     res.partition.elements[1].input[0] == 0.0 &&
                     res.partition.elements[2].input[0] == -1.0;
    check(inputs_ok, "column partition with inputs (+1, 0, -1)");
    auto comps = tarjan_scc(res.graph.succ);
    check(comps.size() == 1 && comps[0].size() == 21, "G strongly connected (21 nodes)");
    DeterministicGraph det = subset_construction(res.graph, comps[0]);
    check(det.node_count() == 6,
          "G_R has 6 nodes (computed: " + std::to_string(det.node_count()) +
              "; the published 6-state presentation depends on SCOTS/dtControl internals -- "
              "language and spectral radius match exactly, see README)");
    double rho = res.report.sccs.empty() ? 0.0 : res.report.sccs[0].rho;
    check(std::abs(rho - 3.0) <= 1e-6, "rho(R) = 3 exactly (" + fmt_real(rho) + ")");
    check(std::abs(res.report.bound - 1.5849625007211562) <= 1e-6,
          "bound = log2(3) = 1.5850 +/- 1e-6 (" + fmt_real(res.report.bound) + ")");
    check(elapsed < 1.0, "runtime < 1 s (" + fmt_real(elapsed) + " s)");
}

// ---- criterion 2: Example-1 fine grid, interval ----------------------------

void criterion_2() {
    std::cout << "criterion 2: Example-1 fine grid (eta_s=0.01, eta_i=0.5)\n";
    auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.system = "linear2d";
    cfg.eta_s = {0.01};
    cfg.eta_i = {0.5};
    cfg.threads = 1;

    cfg.determinizer = "maxfreq";
    double b1 = run_pipeline(cfg, false).report.bound;
    check(b1 >= 1.0 && b1 <= 1.10,
          "maxfreq bound in [1.0, 1.10] (" + fmt_real(b1) + ", reference 1.0149)");
    cfg.determinizer = "minnorm";
    double b2 = run_pipeline(cfg, false).report.bound;
    check(b2 >= 1.0 && b2 <= 1.15,
          "minnorm bound in [1.0, 1.15] (" + fmt_real(b2) + ", reference 1.0517)");
    double elapsed = seconds_since(t0);
    check(elapsed < 900.0, "runtime < 15 min (" + fmt_real(elapsed) + " s)");
    long mb = vm_peak_mb();
    check(mb < 8192, "memory < 8 GB (VmPeak " + std::to_string(mb) + " MB)");
}

// ---- criterion 3: pendulum Table II, interval ------------------------------

void criterion_3() {
    std::cout << "criterion 3: pendulum Table II (b=1, rho=1, eta_s=1e-5, eta_i=0.2)\n";
    const std::pair<double, double> rows[] = {{0.8, 4.0207}, {0.5, 4.0847}, {0.1, 4.744}};
    for (auto [Ts, ref] : rows) {
        RunConfig cfg;
        cfg.system = "pendulum";
        cfg.b = 1.0;
        cfg.rho = 1.0;
        cfg.T_s = Ts;
        cfg.eta_s = {1e-5};
        cfg.eta_i = {0.2};
        cfg.threads = 1;
        double v = run_pipeline(cfg, false).report.bound_per_Ts;
        check(v >= 2.8854 && v <= 1.5 * ref,
              "T_s=" + fmt_real(Ts) + ": bound/T_s in [2.8854, " + fmt_real(1.5 * ref) +
                  "] (" + fmt_real(v) + ", reference " + fmt_real(ref) + ")");
    }
}

// ---- criterion 4: pendulum Table III spot check ----------------------------

void criterion_4() {
    std::cout << "criterion 4: pendulum Table III spot check (b=10, rho=50, T_s=0.1)\n";
    auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.system = "pendulum";
    cfg.b = 10.0;
    cfg.rho = 50.0;
    cfg.T_s = 0.1;
    cfg.eta_s = {1e-6};
    cfg.eta_i = {10.0};
    cfg.threads = 1;
    double v = run_pipeline(cfg, false).report.bound_per_Ts;
    double elapsed = seconds_since(t0);
    check(v >= 20.6058 && v <= 44.0,
          "bound/T_s in [20.6058, 44.0] (" + fmt_real(v) + ", reference 29.1723)");
    check(elapsed < 600.0, "runtime < 10 min (" + fmt_real(elapsed) + " s)");
}

// ---- criterion 5: Henon scaled down ----------------------------------------

void criterion_5() {
    std::cout << "criterion 5: Henon scaled (eps=0.009, eta_s=0.02, eta_i=0.003, "
                 "intersect_reversed)\n";
    auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.system = "henon";
    cfg.eps = 0.009;
    cfg.eta_s = {0.02};
    cfg.eta_i = {0.003};
    cfg.intersect_reversed = true;
    cfg.threads = 1;
    try {
        PipelineResult res = run_pipeline(cfg, false);
        double elapsed = seconds_since(t0);
        double ceiling = std::log2(static_cast<double>(res.report.partition_size));
        check(res.report.bound > 0.0 && res.report.bound <= ceiling,
              "finite bound in (0, log2|A|] (" + fmt_real(res.report.bound) + ")");
        check(elapsed < 900.0, "runtime < 15 min (" + fmt_real(elapsed) + " s)");
        long mb = vm_peak_mb();
        check(mb < 8192, "memory < 8 GB (VmPeak " + std::to_string(mb) + " MB)");
    } catch (const EmptyControllerError& e) {
        check(false,
              std::string("finite bound in (0, log2|A|] -- unattainable at this grid: ") +
                  e.what() +
                  " (tight-box posts are ~6.3*eta_s = 0.126 wide; the eps=0.009 "
                  "controlled-invariant web is ~1.4*eps = 0.013 thick, so eta_s <= "
                  "~0.002 is required, matching the published runs at 0.0021; see README)");
    }
}

// ---- criterion 6: property suites -------------------------------------------

void criterion_6() {
    std::cout << "criterion 6: property suites\n";
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // instances: linear2d coarse (21 cells), pendulum coarse (<= 50 cells),
    // pendulum medium, henon demo
    Instance lin = build_instance(builtin_linear2d(), 0.57142, 0.005, "minnorm");
    Instance pen50 = build_instance(builtin_pendulum(1.0, 1.0, 0.5), 3.1e-3, 0.2, "maxfreq");
    Instance pen = build_instance(builtin_pendulum(1.0, 1.0, 0.5), 1e-4, 0.2, "maxfreq");
    Instance hen = build_instance(builtin_henon(0.3, false), 0.02, 0.1, "maxfreq");

    // (a) controller soundness: random (cell, input, point) triples
    {
        bool ok = true;
        for (const Instance* in : {&lin, &pen, &hen}) {
            for (int t = 0; t < 10000 && ok; ++t) {
                int64_t i = static_cast<int64_t>(unit(rng) * in->ctrl.domain_size());
                const auto& row = in->ctrl.table[i];
                int32_t k = row[static_cast<size_t>(unit(rng) * row.size())];
                IntervalBox cb = cell_box(in->ctrl.grid, in->ctrl.cells[i]);
                Eigen::VectorXd x(cb.dim());
                for (int d = 0; d < cb.dim(); ++d)
                    x[d] = cb.lower[d] + unit(rng) * (cb.upper[d] - cb.lower[d]);
                Eigen::VectorXd y = in->model.step(x, in->ctrl.inputs.points[k]);
                IntervalBox post = in->model.post_overapprox(cb, in->ctrl.inputs.points[k]);
                if (!post.contains(y) || !in->ctrl.grid.domain.contains_box(post)) ok = false;
            }
        }
        check(ok, "controller soundness on 10^4 random (cell, input, point) triples per example");
    }

    // (b) closed-loop Monte-Carlo: 10^4 trajectories x 50 steps, words accepted
    {
        bool ok = true;
        int64_t total = 0;
        for (const Instance* in : {&lin, &pen, &hen}) {
            WordSet horizon8 =
                in == &lin ? enumerate_words(in->graph, 8) : WordSet{};
            for (int t = 0; t < 10000 && ok; ++t) {
                int64_t i = static_cast<int64_t>(unit(rng) * in->ctrl.domain_size());
                IntervalBox cb = cell_box(in->ctrl.grid, in->ctrl.cells[i]);
                Eigen::VectorXd x(cb.dim());
                for (int d = 0; d < cb.dim(); ++d)
                    x[d] = cb.lower[d] + unit(rng) * (cb.upper[d] - cb.lower[d]);
                try {
                    std::vector<int32_t> word =
                        sample_trajectory_words(in->model, in->ctrl, in->part, x, 50);
                    std::vector<int32_t> head(word.begin(), word.begin() + 8);
                    bool good = in == &lin ? horizon8.contains(head) : accepts(in->graph, word);
                    if (!good) ok = false;
                } catch (const SoundnessViolationError&) {
                    ok = false;
                }
                ++total;
            }
        }
        check(ok, "closed-loop Monte-Carlo (3 x 10^4 trajectories x 50 steps) stays in the "
                  "domain with graph-accepted label words");
    }

    // (c) language equality G vs G_R for N <= 8 on instances <= 50 cells
    {
        bool ok = true;
        for (const Instance* in : {&lin, &pen50}) {
            if (in->graph.n > 50) {
                ok = false;
                continue;
            }
            auto comps = tarjan_scc(in->graph.succ);
            for (const auto& comp : comps) {
                bool nontrivial =
                    comp.size() > 1 ||
                    std::binary_search(in->graph.succ[comp[0]].begin(),
                                       in->graph.succ[comp[0]].end(), comp[0]);
                if (!nontrivial) continue;
                // restrict the labeled graph to the component
                LabeledGraph sub;
                sub.n = static_cast<int64_t>(comp.size());
                std::vector<int32_t> lid(in->graph.n, -1);
                for (size_t k = 0; k < comp.size(); ++k) lid[comp[k]] = static_cast<int32_t>(k);
                sub.succ.resize(sub.n);
                sub.label.resize(sub.n);
                sub.node_cell.resize(sub.n);
                sub.label_count = in->graph.label_count;
                for (size_t k = 0; k < comp.size(); ++k) {
                    sub.label[k] = in->graph.label[comp[k]];
                    sub.node_cell[k] = in->graph.node_cell[comp[k]];
                    for (int32_t w : in->graph.succ[comp[k]])
                        if (lid[w] >= 0) sub.succ[k].push_back(lid[w]);
                }
                std::vector<int32_t> all(comp.size());
                for (size_t k = 0; k < comp.size(); ++k) all[k] = static_cast<int32_t>(k);
                DeterministicGraph det = subset_construction(sub, all);
                for (int N = 1; N <= 8 && ok; ++N)
                    if (!(enumerate_words(sub, N).words == enumerate_words(det, N).words))
                        ok = false;
            }
        }
        check(ok, "G vs G_R finite-horizon language equality, N <= 8, instances <= 50 cells");
    }

    // (d) log2 rho(R) <= (1/N) log2 |W_N| for N <= 8
    {
        bool ok = true;
        for (const Instance* in : {&lin, &pen50}) {
            AnalysisOptions opts;
            EntropyReport rep = analyze_partition(in->model, in->ctrl, in->part, opts);
            for (int N = 1; N <= 8; ++N) {
                WordSet ws = enumerate_words(in->graph, N, 200);
                double finite = std::log2(static_cast<double>(ws.count())) / N;
                if (rep.bound > finite + 1e-9) ok = false;
            }
        }
        check(ok, "log2 rho(R) <= (1/N) log2 |W_N| for N <= 8 (oracle subadditivity)");
    }

    // (e) spectral radius vs dense eigensolver oracle
    {
        bool ok = true;
        for (int t = 0; t < 100; ++t) {
            Eigen::MatrixXd R(5, 5);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) R(i, j) = static_cast<double>(rng() % 4);
            Eigen::EigenSolver<Eigen::MatrixXd> es(R, false);
            double expect = es.eigenvalues().cwiseAbs().maxCoeff();
            if (std::abs(spectral_radius(R) - expect) > 1e-9) ok = false;
        }
        check(ok, "spectral radius matches the dense eigensolver on 100 random 5x5 matrices");
    }

    // (f) |A| = 1 forces bound 0
    {
        ControlSystemModel m;
        m.name = "contraction";
        m.state_dim = 1;
        m.input_dim = 1;
        m.input_range = IntervalBox::from_scalars({0.0}, {0.0});
        m.default_domain = IntervalBox::from_scalars({-1.0}, {1.0});
        m.step = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
            return (0.5 * x).eval();
        };
        m.post_overapprox = [](const IntervalBox& B, const Eigen::VectorXd&) {
            return IntervalBox((0.5 * B.lower).eval(), (0.5 * B.upper).eval());
        };
        UniformGrid g = build_grid(m.default_domain, Eigen::VectorXd::Constant(1, 0.125));
        InputGrid ig = build_input_grid(m.input_range, Eigen::VectorXd::Ones(1));
        EntropyReport rep = entropy_upper_bound(m, g, ig, "maxfreq");
        check(rep.partition_size == 1 && rep.bound == 0.0, "|A| = 1 forces bound 0");
    }

    // (g) oracle fixed values
    {
        LabeledGraph full;
        full.n = 2;
        full.succ = {{0, 1}, {0, 1}};
        full.label = {1, 2};
        full.node_cell = {0, 1};
        full.label_count = 2;
        bool ok = enumerate_words(full, 5).count() == 32;
        LabeledGraph gm;
        gm.n = 2;
        gm.succ = {{0, 1}, {0}};
        gm.label = {1, 2};
        gm.node_cell = {0, 1};
        gm.label_count = 2;
        int64_t expect[] = {2, 3, 5, 8};
        for (int N = 1; N <= 4; ++N)
            if (enumerate_words(gm, N).count() != expect[N - 1]) ok = false;
        check(ok, "full-shift |W_5| = 32 and golden-mean counts 2, 3, 5, 8");
    }
}

// ---- criterion 7: determinism ------------------------------------------------

void criterion_7() {
    std::cout << "criterion 7: determinism of criterion-1 artifacts\n";
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    fs::path d1 = fs::temp_directory_path() / "inventro_acc7_a";
    fs::path d2 = fs::temp_directory_path() / "inventro_acc7_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    RunConfig cfg = walkthrough_cfg();
    cfg.out_dir = d1.string();
    run_pipeline(cfg, true);
    cfg.out_dir = d2.string();
    run_pipeline(cfg, true);
    check(slurp(d1 / "controller.txt") == slurp(d2 / "controller.txt"),
          "controller files byte-identical");
    check(slurp(d1 / "partition.txt") == slurp(d2 / "partition.txt"),
          "partition files byte-identical");
    check(slurp(d1 / "report.txt") == slurp(d2 / "report.txt"), "report files byte-identical");
    fs::remove_all(d1);
    fs::remove_all(d2);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};

    for (int k : which) {
        int before = g_failures;
        try {
            switch (k) {
                case 1: criterion_1(); break;
                case 2: criterion_2(); break;
                case 3: criterion_3(); break;
                case 4: criterion_4(); break;
                case 5: criterion_5(); break;
                case 6: criterion_6(); break;
                case 7: criterion_7(); break;
                default:
                    std::cerr << "unknown criterion " << k << "\n";
                    return 1;
            }
        } catch (const std::exception& e) {
            check(false, std::string("unexpected error: ") + e.what());
        }
        std::cout << (g_failures == before ? "[PASS] " : "[FAIL] ") << "criterion " << k
                  << "\n";
    }
    if (g_failures)
        std::cout << g_failures << " assertion(s) failed\n";
    return g_failures == 0 ? 0 : 1;
}
