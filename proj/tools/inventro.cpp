#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "inventro/oracle.hpp"
#include "inventro/pipeline.hpp"
#include "inventro/util.hpp"

namespace fs = std::filesystem;
using namespace inventro;

namespace {

constexpr int kExitEmpty = 2;
constexpr int kExitCapacity = 3;

RunConfig load(const std::string& path) { return parse_config_file(path); }

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << content;
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const EmptyControllerError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inventro: certified upper bounds on invariance entropy of "
                 "controlled-invariant sets"};
    app.require_subcommand(1);

    std::string config_path, out_path, tree_path, controller_path, which = "all";
    int horizon = 8;
    bool full_scale = false;

    auto* pipeline = app.add_subcommand("pipeline", "run synthesis, determinization and the "
                                                    "entropy bound; write all artifacts");
    pipeline->add_option("--config", config_path, "configuration file")->required();

    auto* abstract = app.add_subcommand("abstract", "synthesize the invariant controller only");
    abstract->add_option("--config", config_path)->required();
    abstract->add_option("--out", out_path, "controller export path (default out_dir/controller.txt)");

    auto* determinize = app.add_subcommand("determinize", "determinize into a tree + partition");
    determinize->add_option("--config", config_path)->required();
    determinize->add_option("--controller", controller_path,
                            "reuse a controller export instead of re-synthesizing");
    determinize->add_option("--out", out_path, "partition export path");
    determinize->add_option("--tree", tree_path, "tree export path");

    auto* entropy = app.add_subcommand("entropy", "run the pipeline and print the report");
    entropy->add_option("--config", config_path)->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force word counts on small instances");
    oracle->add_option("--config", config_path)->required();
    oracle->add_option("--horizon", horizon, "maximum word length (default 8)");

    auto* dot = app.add_subcommand("export-dot", "write DOT renderings of G and each G_R");
    dot->add_option("--config", config_path)->required();

    auto* reproduce = app.add_subcommand("reproduce", "reproduce the reference tables");
    reproduce->add_option("--table", which, "walkthrough|table1|table2|table3|henon|all");
    reproduce->add_flag("--full", full_scale, "include the full-scale Henon attempt");

    CLI11_PARSE(app, argc, argv);

    if (pipeline->parsed()) {
        return run_guarded([&] {
            RunConfig cfg = load(config_path);
            PipelineResult res = run_pipeline(cfg, /*write_artifacts=*/true);
            write_report(res.report, std::cerr, /*include_timings=*/true);
            if (res.report.sampled)
                std::cout << "bound_per_Ts=" << fmt_real(res.report.bound_per_Ts) << "\n";
            std::cout << "bound=" << fmt_real(res.report.bound) << std::endl;
        });
    }
    if (abstract->parsed()) {
        return run_guarded([&] {
            RunConfig cfg = load(config_path);
            ControlSystemModel model = model_from_config(cfg);
            UniformGrid grid = grid_from_config(cfg, model);
            InputGrid inputs = inputs_from_config(cfg, model);
            InvariantController ctrl = synthesize_from_config(cfg, model, grid, inputs);
            fs::path p = out_path.empty() ? fs::path(cfg.out_dir) / "controller.txt"
                                          : fs::path(out_path);
            write_file(p, export_controller(ctrl));
            std::cout << "cells=" << ctrl.domain_size() << "\n"
                      << "controller=" << p.string() << std::endl;
        });
    }
    if (determinize->parsed()) {
        return run_guarded([&] {
            RunConfig cfg = load(config_path);
            ControlSystemModel model = model_from_config(cfg);
            UniformGrid grid = grid_from_config(cfg, model);
            InputGrid inputs = inputs_from_config(cfg, model);
            InvariantController ctrl;
            if (!controller_path.empty()) {
                std::ifstream f(controller_path);
                if (!f) throw Error("cannot open " + controller_path);
                ctrl = import_controller(f, grid, inputs);
            } else {
                ctrl = synthesize_from_config(cfg, model, grid, inputs);
            }
            std::vector<int32_t> choice = cfg.determinizer == "maxfreq"
                                              ? determinize_maxfreq(ctrl)
                                              : determinize_minnorm(ctrl);
            DecisionTree tree = build_tree(ctrl, choice);
            InvariantPartition part = tree_to_partition(tree, ctrl);
            fs::path pp = out_path.empty() ? fs::path(cfg.out_dir) / "partition.txt"
                                           : fs::path(out_path);
            fs::path tp = tree_path.empty() ? fs::path(cfg.out_dir) / "tree.txt"
                                            : fs::path(tree_path);
            write_file(pp, export_partition(part));
            write_file(tp, export_tree(tree));
            std::cout << "partition_size=" << part.size() << "\n"
                      << "partition=" << pp.string() << std::endl;
        });
    }
    if (entropy->parsed()) {
        return run_guarded([&] {
            RunConfig cfg = load(config_path);
            PipelineResult res = run_pipeline(cfg, /*write_artifacts=*/true);
            write_report(res.report, std::cout, /*include_timings=*/true);
        });
    }
    if (oracle->parsed()) {
        return run_guarded([&] {
            RunConfig cfg = load(config_path);
            PipelineResult res = run_pipeline(cfg, /*write_artifacts=*/false);
            GrowthEstimate est =
                growth_estimate(res.graph, horizon, cfg.max_oracle_nodes);
            for (size_t n = 1; n <= est.counts.size(); ++n)
                std::cout << "N=" << n << " words=" << est.counts[n - 1]
                          << " estimate=" << fmt_real(est.per_n[n - 1]) << "\n";
            std::cout << "growth_estimate=" << fmt_real(est.estimate) << std::endl;
        });
    }
    if (dot->parsed()) {
        return run_guarded([&] {
            RunConfig cfg = load(config_path);
            PipelineResult res = run_pipeline(cfg, /*write_artifacts=*/true);
            std::cout << "graph=" << (fs::path(cfg.out_dir) / "graph.dot").string()
                      << std::endl;
        });
    }
    if (reproduce->parsed()) {
        return run_guarded([&] {
            int failures = reproduce_tables(which, std::cout, full_scale);
            std::cout << "rows_outside_acceptance=" << failures << std::endl;
        });
    }
    return 0;
}
