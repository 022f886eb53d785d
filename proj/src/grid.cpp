#include "inventro/grid.hpp"

#include <cmath>

namespace inventro {

namespace {

// floor(width/eta) robust to the quotient landing a hair under an integer
// (e.g. 2/0.005 evaluating to 399.9999...).
int64_t counted_cells(double width, double eta) {
    double ratio = width / eta;
    return std::max<int64_t>(1, static_cast<int64_t>(std::floor(ratio * (1.0 + 1e-10) + 1e-10)));
}

}  // namespace

UniformGrid build_grid(const IntervalBox& domain, const Eigen::VectorXd& eta,
                       int64_t max_cells) {
    if (eta.size() != domain.dim())
        throw DomainError("build_grid: eta dimension mismatch");
    UniformGrid g;
    g.domain = domain;
    g.eta = eta;
    g.cell_width.resize(domain.dim());
    double total = 1.0;
    for (int d = 0; d < domain.dim(); ++d) {
        if (!(eta[d] > 0.0)) throw DomainError("build_grid: eta must be positive");
        double width = domain.upper[d] - domain.lower[d];
        if (!(width > 0.0)) throw DomainError("build_grid: degenerate domain");
        int64_t n = counted_cells(width, eta[d]);
        g.cells_per_dim.push_back(n);
        g.cell_width[d] = width / static_cast<double>(n);
        total *= static_cast<double>(n);
        if (total > static_cast<double>(max_cells))
            throw CapacityError("build_grid: cell count exceeds cap of " +
                                std::to_string(max_cells));
    }
    return g;
}

std::vector<int64_t> to_multi_index(const UniformGrid& g, int64_t index) {
    if (index < 0 || index >= g.cell_count())
        throw IndexError("cell index " + std::to_string(index) + " out of range");
    std::vector<int64_t> mi(g.dim());
    for (int d = 0; d < g.dim(); ++d) {
        mi[d] = index % g.cells_per_dim[d];
        index /= g.cells_per_dim[d];
    }
    return mi;
}

int64_t from_multi_index(const UniformGrid& g, const std::vector<int64_t>& mi) {
    int64_t index = 0;
    for (int d = g.dim() - 1; d >= 0; --d) index = index * g.cells_per_dim[d] + mi[d];
    return index;
}

double cell_face_lo(const UniformGrid& g, int d, int64_t j) {
    return j == 0 ? g.domain.lower[d]
                  : g.domain.lower[d] + static_cast<double>(j) * g.cell_width[d];
}

double cell_face_hi(const UniformGrid& g, int d, int64_t j) {
    return j + 1 == g.cells_per_dim[d]
               ? g.domain.upper[d]
               : g.domain.lower[d] + static_cast<double>(j + 1) * g.cell_width[d];
}

IntervalBox cell_box(const UniformGrid& g, int64_t index) {
    std::vector<int64_t> mi = to_multi_index(g, index);
    Eigen::VectorXd lo(g.dim()), hi(g.dim());
    for (int d = 0; d < g.dim(); ++d) {
        lo[d] = cell_face_lo(g, d, mi[d]);
        hi[d] = cell_face_hi(g, d, mi[d]);
    }
    return IntervalBox(std::move(lo), std::move(hi));
}

Eigen::VectorXd cell_center(const UniformGrid& g, int64_t index) {
    IntervalBox b = cell_box(g, index);
    return b.center();
}

int64_t cell_index_of(const UniformGrid& g, const Eigen::VectorXd& x) {
    std::vector<int64_t> mi(g.dim());
    for (int d = 0; d < g.dim(); ++d) {
        if (x[d] < g.domain.lower[d] || x[d] > g.domain.upper[d]) return -1;
        int64_t j = static_cast<int64_t>(std::floor((x[d] - g.domain.lower[d]) / g.cell_width[d]));
        j = std::min(std::max<int64_t>(j, 0), g.cells_per_dim[d] - 1);
        // resolve float drift with the exact face coordinates
        while (j > 0 && x[d] < cell_face_lo(g, d, j)) --j;
        while (j + 1 < g.cells_per_dim[d] && x[d] >= cell_face_hi(g, d, j)) ++j;
        mi[d] = j;
    }
    return from_multi_index(g, mi);
}

IndexRange overlap_range(const UniformGrid& g, int d, double a, double b, bool closed) {
    int64_t n = g.cells_per_dim[d];
    IndexRange r;
    if (b < a) return r;
    double w = g.cell_width[d];
    int64_t jlo = static_cast<int64_t>(std::floor((a - g.domain.lower[d]) / w));
    jlo = std::min(std::max<int64_t>(jlo, 0), n - 1);
    if (closed) {
        while (jlo + 1 < n && cell_face_hi(g, d, jlo) < a) ++jlo;
        while (jlo > 0 && cell_face_hi(g, d, jlo - 1) >= a) --jlo;
        if (cell_face_hi(g, d, jlo) < a) return r;  // entirely above the grid
    } else {
        while (jlo + 1 < n && cell_face_hi(g, d, jlo) <= a) ++jlo;
        while (jlo > 0 && cell_face_hi(g, d, jlo - 1) > a) --jlo;
        if (cell_face_hi(g, d, jlo) <= a) return r;
    }
    int64_t jhi = static_cast<int64_t>(std::floor((b - g.domain.lower[d]) / w));
    jhi = std::min(std::max<int64_t>(jhi, 0), n - 1);
    if (closed) {
        while (jhi > 0 && cell_face_lo(g, d, jhi) > b) --jhi;
        while (jhi + 1 < n && cell_face_lo(g, d, jhi + 1) <= b) ++jhi;
        if (cell_face_lo(g, d, jhi) > b) return r;
    } else {
        while (jhi > 0 && cell_face_lo(g, d, jhi) >= b) --jhi;
        while (jhi + 1 < n && cell_face_lo(g, d, jhi + 1) < b) ++jhi;
        if (cell_face_lo(g, d, jhi) >= b) return r;
    }
    r.lo = jlo;
    r.hi = jhi;
    return r;
}

bool overlap_ranges(const UniformGrid& g, const IntervalBox& box, bool closed,
                    std::vector<IndexRange>& out) {
    out.resize(g.dim());
    for (int d = 0; d < g.dim(); ++d) {
        out[d] = overlap_range(g, d, box.lower[d], box.upper[d], closed);
        if (out[d].empty()) return false;
    }
    return true;
}

bool for_each_cell_in_rect(const UniformGrid& g, const std::vector<IndexRange>& ranges,
                           const std::function<bool(int64_t)>& visit) {
    const int dim = g.dim();
    std::vector<int64_t> mi(dim);
    for (int d = 0; d < dim; ++d) {
        if (ranges[d].empty()) return true;
        mi[d] = ranges[d].lo;
    }
    while (true) {
        if (!visit(from_multi_index(g, mi))) return false;
        int d = 0;
        while (d < dim) {
            if (++mi[d] <= ranges[d].hi) break;
            mi[d] = ranges[d].lo;
            ++d;
        }
        if (d == dim) return true;
    }
}

InputGrid build_input_grid(const IntervalBox& range, const Eigen::VectorXd& eta) {
    if (eta.size() != range.dim())
        throw DomainError("build_input_grid: eta dimension mismatch");
    InputGrid ig;
    ig.range = range;
    ig.eta = eta;
    std::vector<std::vector<double>> axes(range.dim());
    for (int d = 0; d < range.dim(); ++d) {
        if (!(eta[d] > 0.0)) throw DomainError("build_input_grid: eta must be positive");
        double lo = range.lower[d], hi = range.upper[d];
        for (int64_t k = 0;; ++k) {
            double p = lo + static_cast<double>(k) * eta[d];
            if (p > hi) {
                if (p - hi <= 1e-9 * std::max(1.0, std::abs(hi))) p = hi;
                else break;
            }
            axes[d].push_back(p);
            if (p == hi) break;
        }
    }
    // lexicographic order: dimension 0 varies slowest
    std::vector<int64_t> idx(range.dim(), 0);
    while (true) {
        Eigen::VectorXd pt(range.dim());
        for (int d = 0; d < range.dim(); ++d) pt[d] = axes[d][idx[d]];
        ig.points.push_back(std::move(pt));
        int d = range.dim() - 1;
        while (d >= 0) {
            if (++idx[d] < static_cast<int64_t>(axes[d].size())) break;
            idx[d] = 0;
            --d;
        }
        if (d < 0) break;
    }
    return ig;
}

}  // namespace inventro
