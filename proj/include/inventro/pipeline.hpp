#pragma once

#include "inventro/config.hpp"
#include "inventro/entropy.hpp"

namespace inventro {

ControlSystemModel model_from_config(const RunConfig& cfg);
UniformGrid grid_from_config(const RunConfig& cfg, const ControlSystemModel& model);
InputGrid inputs_from_config(const RunConfig& cfg, const ControlSystemModel& model);

/// Synthesis honoring the Hénon intersection workflow: when
/// intersect_reversed is set, forward and time-reversed controllers are
/// synthesized on the same grid, their domains intersected, and the forward
/// fixed point re-run seeded at the intersection.
InvariantController synthesize_from_config(const RunConfig& cfg,
                                           const ControlSystemModel& model,
                                           const UniformGrid& grid, const InputGrid& inputs);

struct PipelineResult {
    InvariantController ctrl;
    DecisionTree tree;
    InvariantPartition partition;
    LabeledGraph graph;
    EntropyReport report;
};

/// Full run (steps 1..8). With write_artifacts, drops controller.txt,
/// partition.txt, tree.txt, graph.dot, graph_det_<k>.dot and report.txt into
/// cfg.out_dir.
PipelineResult run_pipeline(const RunConfig& cfg, bool write_artifacts);

/// Reproduction presets printed side by side with the published reference
/// numbers. which: walkthrough | table1 | table2 | table3 | henon | all.
/// Returns the number of rows that errored or landed outside their acceptance
/// interval (rows without a gate only report).
int reproduce_tables(const std::string& which, std::ostream& os, bool full_scale = false);

}  // namespace inventro
