#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "inventro/pipeline.hpp"

using namespace inventro;
namespace fs = std::filesystem;

namespace {

RunConfig walkthrough_cfg(const std::string& out_dir) {
    RunConfig cfg = parse_config(
        "system = linear2d\n"
        "eta_s = 0.57142\n"
        "eta_i = 0.005\n"
        "determinizer = minnorm\n"
        "threads = 1\n");
    cfg.out_dir = out_dir;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("pipeline: walkthrough bound and report fields") {
    RunConfig cfg = walkthrough_cfg("");
    PipelineResult res = run_pipeline(cfg, /*write_artifacts=*/false);
    CHECK(res.report.bound == doctest::Approx(std::log2(3.0)).epsilon(1e-9));
    CHECK(res.report.cells == 21);
    CHECK(res.report.partition_size == 3);
    CHECK_FALSE(res.report.sampled);
    std::string rep = write_report(res.report, /*include_timings=*/false);
    CHECK(rep.find("bound=1.5849625007211561") != std::string::npos);
    CHECK(rep.find("cells=21") != std::string::npos);
    CHECK(rep.find("record=v1|") != std::string::npos);
    CHECK(rep.find("wallclock_ms") == std::string::npos);
    CHECK(write_report(res.report, true).find("wallclock_ms=") != std::string::npos);
}

TEST_CASE("pipeline: sampled systems report bound per sampling period") {
    RunConfig cfg = parse_config(
        "system = pendulum\n"
        "b = 1\nrho = 1\nT_s = 0.5\n"
        "eta_s = 1e-4\neta_i = 0.2\n"
        "determinizer = maxfreq\nthreads = 1\n");
    PipelineResult res = run_pipeline(cfg, false);
    CHECK(res.report.sampled);
    CHECK(res.report.bound_per_Ts ==
          doctest::Approx(res.report.bound / 0.5).epsilon(1e-12));
    CHECK(res.report.bound_per_Ts >= 2.8854);
}

TEST_CASE("pipeline: artifacts are written and reruns are byte-identical") {
    fs::path dir1 = fs::temp_directory_path() / "inventro_test_run1";
    fs::path dir2 = fs::temp_directory_path() / "inventro_test_run2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    run_pipeline(walkthrough_cfg(dir1.string()), true);
    run_pipeline(walkthrough_cfg(dir2.string()), true);
    for (const char* name :
         {"controller.txt", "partition.txt", "tree.txt", "graph.dot", "report.txt"}) {
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
    CHECK(fs::exists(dir1 / "graph_det_0.dot"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("pipeline: empty controller propagates as EmptyControllerError") {
    RunConfig cfg = parse_config(
        "system = henon\n"
        "eps = 0.009\n"
        "eta_s = 0.5\n"
        "eta_i = 0.009\n"
        "threads = 1\n");
    CHECK_THROWS_AS(run_pipeline(cfg, false), EmptyControllerError);
}

TEST_CASE("pipeline: intersect_reversed requires the henon system") {
    RunConfig cfg = parse_config(
        "system = linear2d\neta_s = 0.57142\neta_i = 0.5\nintersect_reversed = true\n");
    CHECK_THROWS_AS(run_pipeline(cfg, false), DomainError);
}

TEST_CASE("reproduce: walkthrough preset passes its gate") {
    std::ostringstream os;
    int failures = reproduce_tables("walkthrough", os);
    CHECK(failures == 0);
    CHECK(os.str().find("PASS") != std::string::npos);
}
