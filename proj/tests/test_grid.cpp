#include <doctest.h>

#include <random>

#include "inventro/grid.hpp"

using namespace inventro;

namespace {
IntervalBox box2(double xl, double xh, double yl, double yh) {
    return IntervalBox::from_scalars({xl, yl}, {xh, yh});
}
}  // namespace

TEST_CASE("build_grid: the reference 21-box grid") {
    UniformGrid g = build_grid(box2(-1, 1, -2, 2), Eigen::Vector2d(0.57142, 0.57142));
    CHECK(g.cells_per_dim[0] == 3);
    CHECK(g.cells_per_dim[1] == 7);
    CHECK(g.cell_count() == 21);
}

TEST_CASE("build_grid: fine grid and float-noise ratios") {
    UniformGrid g = build_grid(box2(-1, 1, -2, 2), Eigen::Vector2d(0.01, 0.01));
    CHECK(g.cells_per_dim[0] == 200);
    CHECK(g.cells_per_dim[1] == 400);
    CHECK(g.cell_count() == 80000);
}

TEST_CASE("build_grid: one cell when eta covers the domain") {
    UniformGrid g = build_grid(IntervalBox::from_scalars({0.0}, {1.0}), Eigen::VectorXd::Ones(1));
    CHECK(g.cell_count() == 1);
    IntervalBox b = cell_box(g, 0);
    CHECK(b.lower[0] == 0.0);
    CHECK(b.upper[0] == 1.0);
}

TEST_CASE("build_grid: capacity cap") {
    Eigen::VectorXd eta(2);
    eta << 1e-6, 1e-6;
    CHECK_THROWS_AS(build_grid(box2(-1, 1, -2, 2), eta, 1000000), CapacityError);
}

TEST_CASE("cell_box: first cell of the 3x7 grid") {
    UniformGrid g = build_grid(box2(-1, 1, -2, 2), Eigen::Vector2d(0.57142, 0.57142));
    IntervalBox b = cell_box(g, 0);
    CHECK(b.lower[0] == -1.0);
    CHECK(b.lower[1] == -2.0);
    CHECK(b.upper[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(b.upper[1] == doctest::Approx(-10.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("cell_box: boundary cells snap to the domain exactly") {
    UniformGrid g = build_grid(box2(-1, 1, -2, 2), Eigen::Vector2d(0.57142, 0.57142));
    IntervalBox last = cell_box(g, g.cell_count() - 1);
    CHECK(last.upper[0] == 1.0);
    CHECK(last.upper[1] == 2.0);
}

TEST_CASE("cell indexing: center round-trip on a 5x5 grid") {
    UniformGrid g = build_grid(box2(0, 1, 0, 1), Eigen::Vector2d(0.2, 0.2));
    REQUIRE(g.cell_count() == 25);
    for (int64_t i = 0; i < 25; ++i)
        CHECK(cell_index_of(g, cell_center(g, i)) == i);
    CHECK_THROWS_AS(cell_box(g, 25), IndexError);
    CHECK_THROWS_AS(cell_box(g, -1), IndexError);
}

TEST_CASE("multi-index round-trip on random grids") {
    std::mt19937 rng(5);
    UniformGrid g = build_grid(box2(-3, 2, 0, 9), Eigen::Vector2d(0.37, 0.81));
    std::uniform_int_distribution<int64_t> pick(0, g.cell_count() - 1);
    for (int t = 0; t < 200; ++t) {
        int64_t i = pick(rng);
        CHECK(from_multi_index(g, to_multi_index(g, i)) == i);
    }
}

TEST_CASE("overlap_range: closed counts face contact, interior does not") {
    UniformGrid g = build_grid(IntervalBox::from_scalars({0.0}, {1.0}),
                               Eigen::VectorXd::Constant(1, 0.25));
    REQUIRE(g.cells_per_dim[0] == 4);
    // [0.25, 0.5] touches cells 0 and 2 at faces
    IndexRange closed = overlap_range(g, 0, 0.25, 0.5, true);
    CHECK(closed.lo == 0);
    CHECK(closed.hi == 2);
    IndexRange open = overlap_range(g, 0, 0.25, 0.5, false);
    CHECK(open.lo == 1);
    CHECK(open.hi == 1);
    // fully outside
    CHECK(overlap_range(g, 0, 1.5, 2.0, true).empty());
    CHECK(overlap_range(g, 0, -1.0, -0.5, false).empty());
    // touching the domain edge from inside
    IndexRange edge = overlap_range(g, 0, 0.75, 1.0, false);
    CHECK(edge.lo == 3);
    CHECK(edge.hi == 3);
}

TEST_CASE("input grid: spacing 0.5 over [-1,1]") {
    InputGrid ig = build_input_grid(IntervalBox::from_scalars({-1.0}, {1.0}),
                                    Eigen::VectorXd::Constant(1, 0.5));
    REQUIRE(ig.count() == 5);
    CHECK(ig.points[0][0] == -1.0);
    CHECK(ig.points[2][0] == 0.0);
    CHECK(ig.points[4][0] == 1.0);
}

TEST_CASE("input grid: fine lattice keeps its endpoints despite float drift") {
    InputGrid ig = build_input_grid(IntervalBox::from_scalars({-1.0}, {1.0}),
                                    Eigen::VectorXd::Constant(1, 0.005));
    REQUIRE(ig.count() == 401);
    CHECK(ig.points[0][0] == -1.0);
    CHECK(ig.points[200][0] == 0.0);
    CHECK(ig.points[400][0] == 1.0);
    for (const auto& p : ig.points) {
        REQUIRE(p[0] >= -1.0);
        REQUIRE(p[0] <= 1.0);
    }
}

TEST_CASE("input grid: 2-d lattice in lexicographic order") {
    InputGrid ig = build_input_grid(box2(-0.009, 0.009, -0.009, 0.009),
                                    Eigen::Vector2d(0.003, 0.003));
    REQUIRE(ig.count() == 49);
    CHECK(ig.points[0][0] == -0.009);
    CHECK(ig.points[0][1] == -0.009);
    // dimension 0 varies slowest
    CHECK(ig.points[1][0] == -0.009);
    CHECK(ig.points[1][1] == doctest::Approx(-0.006));
    for (int k = 1; k < ig.count(); ++k) {
        bool lex = ig.points[k - 1][0] < ig.points[k][0] ||
                   (ig.points[k - 1][0] == ig.points[k][0] &&
                    ig.points[k - 1][1] < ig.points[k][1]);
        CHECK(lex);
    }
}
