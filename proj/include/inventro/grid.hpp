#pragma once

#include <cstdint>
#include <vector>

#include "inventro/box.hpp"

namespace inventro {

/// Uniform grid whose cells exactly tile the domain: per dimension,
/// cells_per_dim = max(1, floor(width/eta)) and the actual cell width is
/// stretched to width/cells_per_dim. Cell indexing is row-major with
/// dimension 0 fastest, and round-trips index <-> multi-index <-> box exactly.
struct UniformGrid {
    IntervalBox domain;
    Eigen::VectorXd eta;         // requested widths
    std::vector<int64_t> cells_per_dim;
    Eigen::VectorXd cell_width;  // stretched widths, width_d / cells_per_dim[d]

    int dim() const { return domain.dim(); }
    int64_t cell_count() const {
        int64_t n = 1;
        for (int64_t c : cells_per_dim) n *= c;
        return n;
    }
};

UniformGrid build_grid(const IntervalBox& domain, const Eigen::VectorXd& eta,
                       int64_t max_cells = 1000000000LL);

std::vector<int64_t> to_multi_index(const UniformGrid& g, int64_t index);
int64_t from_multi_index(const UniformGrid& g, const std::vector<int64_t>& mi);

/// Closed cell box; boundary cells snap exactly to the domain bounds so the
/// cells tile the domain with no float slack.
IntervalBox cell_box(const UniformGrid& g, int64_t index);
Eigen::VectorXd cell_center(const UniformGrid& g, int64_t index);

/// Coordinate of the j-th cell's lower/upper face along dimension d.
double cell_face_lo(const UniformGrid& g, int d, int64_t j);
double cell_face_hi(const UniformGrid& g, int d, int64_t j);

/// Cell containing the point (faces resolve to the higher cell), or -1.
int64_t cell_index_of(const UniformGrid& g, const Eigen::VectorXd& x);

struct IndexRange {
    int64_t lo = 0;
    int64_t hi = -1;
    bool empty() const { return hi < lo; }
    int64_t count() const { return empty() ? 0 : hi - lo + 1; }
};

/// Cells along dimension d whose closed (or open-interior) extent meets
/// [a, b]. Closed overlap counts face contact; interior overlap does not.
IndexRange overlap_range(const UniformGrid& g, int d, double a, double b, bool closed);

/// Per-dimension overlap ranges of a box; false if any dimension is empty.
bool overlap_ranges(const UniformGrid& g, const IntervalBox& box, bool closed,
                    std::vector<IndexRange>& out);

/// Visit every cell index in the rectangle of ranges in ascending index order;
/// the visitor returns false to stop early. Returns true if all cells visited.
bool for_each_cell_in_rect(const UniformGrid& g, const std::vector<IndexRange>& ranges,
                           const std::function<bool(int64_t)>& visit);

/// Finite input lattice of spacing eta covering the range, points in
/// lexicographic order. Lattice points overshooting the range top by float
/// noise (<= 1e-9 relative) are clamped onto it.
struct InputGrid {
    IntervalBox range;
    Eigen::VectorXd eta;
    std::vector<Eigen::VectorXd> points;

    int dim() const { return range.dim(); }
    int count() const { return static_cast<int>(points.size()); }
};

InputGrid build_input_grid(const IntervalBox& range, const Eigen::VectorXd& eta);

}  // namespace inventro
