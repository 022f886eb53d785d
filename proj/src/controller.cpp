#include "inventro/controller.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "inventro/util.hpp"

namespace inventro {

int64_t InvariantController::dense_of(int64_t grid_index) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), grid_index);
    if (it == cells.end() || *it != grid_index) return -1;
    return it - cells.begin();
}

bool covered_by(const UniformGrid& grid, const std::vector<uint8_t>& alive,
                const IntervalBox& post) {
    if (!grid.domain.contains_box(post)) return false;
    std::vector<IndexRange> ranges;
    if (!overlap_ranges(grid, post, /*closed=*/false, ranges)) return true;
    return for_each_cell_in_rect(grid, ranges,
                                 [&](int64_t j) { return alive[j] != 0; });
}

std::vector<uint8_t> alive_mask(const InvariantController& ctrl) {
    std::vector<uint8_t> alive(ctrl.grid.cell_count(), 0);
    for (int64_t c : ctrl.cells) alive[c] = 1;
    return alive;
}

namespace {

struct BitTable {
    int64_t words_per = 0;
    std::vector<uint64_t> bits;

    void init(int64_t n, int k, const std::vector<uint8_t>& alive) {
        words_per = (k + 63) / 64;
        bits.assign(n * words_per, 0);
        std::vector<uint64_t> full(words_per, ~0ULL);
        if (k % 64) full[words_per - 1] = (1ULL << (k % 64)) - 1;
        for (int64_t i = 0; i < n; ++i)
            if (alive[i])
                std::copy(full.begin(), full.end(), bits.begin() + i * words_per);
    }
    uint64_t* row(int64_t i) { return bits.data() + i * words_per; }
    const uint64_t* row(int64_t i) const { return bits.data() + i * words_per; }
    void clear(int64_t i, int k) { row(i)[k >> 6] &= ~(1ULL << (k & 63)); }
    bool empty(int64_t i) const {
        const uint64_t* r = row(i);
        for (int64_t w = 0; w < words_per; ++w)
            if (r[w]) return false;
        return true;
    }
    template <class F>
    void for_each(int64_t i, F f) const {
        const uint64_t* r = row(i);
        for (int64_t w = 0; w < words_per; ++w) {
            uint64_t v = r[w];
            while (v) {
                int b = __builtin_ctzll(v);
                f(static_cast<int32_t>(w * 64 + b));
                v &= v - 1;
            }
        }
    }
};

}  // namespace

InvariantController synthesize_invariant_controller(const ControlSystemModel& model,
                                                    const UniformGrid& grid,
                                                    const InputGrid& inputs,
                                                    const SynthesisOptions& opts) {
    const int64_t n = grid.cell_count();
    const int K = inputs.count();
    const int dim = grid.dim();
    if (K == 0) throw DomainError("synthesize: empty input grid");

    std::vector<uint8_t> alive(n, 1);
    if (opts.initial_alive) {
        if (static_cast<int64_t>(opts.initial_alive->size()) != n)
            throw DomainError("synthesize: initial domain mask size mismatch");
        alive = *opts.initial_alive;
    }

    BitTable masks;
    masks.init(n, K, alive);

    const bool cached = n * static_cast<int64_t>(K) <= opts.post_cache_pairs;
    std::vector<double> post_lo, post_hi;
    if (cached) {
        post_lo.resize(static_cast<size_t>(n) * K * dim);
        post_hi.resize(static_cast<size_t>(n) * K * dim);
        parallel_for(n, opts.threads, [&](int64_t b, int64_t e) {
            for (int64_t i = b; i < e; ++i) {
                if (!alive[i]) continue;
                IntervalBox cb = cell_box(grid, i);
                for (int k = 0; k < K; ++k) {
                    IntervalBox p = model.post_overapprox(cb, inputs.points[k]);
                    size_t at = (static_cast<size_t>(i) * K + k) * dim;
                    for (int d = 0; d < dim; ++d) {
                        post_lo[at + d] = p.lower[d];
                        post_hi[at + d] = p.upper[d];
                    }
                }
            }
        });
    }

    // one (cell, input) coverage test against the given alive view
    auto pair_ok = [&](int64_t i, int32_t k, const std::vector<uint8_t>& view,
                       const IntervalBox* cb) {
        IntervalBox post;
        if (cached) {
            size_t at = (static_cast<size_t>(i) * K + k) * dim;
            Eigen::VectorXd lo(dim), hi(dim);
            for (int d = 0; d < dim; ++d) {
                lo[d] = post_lo[at + d];
                hi[d] = post_hi[at + d];
            }
            post = IntervalBox(std::move(lo), std::move(hi));
        } else {
            post = model.post_overapprox(*cb, inputs.points[k]);
        }
        return covered_by(grid, view, post);
    };

    int sweep = 0;
    const bool jacobi = opts.threads > 1;
    std::vector<uint8_t> snapshot;
    for (;; ++sweep) {
        if (sweep >= opts.sweep_limit)
            throw Error("synthesize: sweep limit reached without convergence");
        std::atomic<int64_t> removals{0};
        const std::vector<uint8_t>* view = &alive;
        if (jacobi) {
            snapshot = alive;
            view = &snapshot;
        }
        parallel_for(n, opts.threads, [&](int64_t b, int64_t e) {
            int64_t local = 0;
            std::vector<int32_t> doomed;
            for (int64_t i = b; i < e; ++i) {
                if (!alive[i]) continue;
                IntervalBox cb;
                if (!cached) cb = cell_box(grid, i);
                doomed.clear();
                masks.for_each(i, [&](int32_t k) {
                    if (!pair_ok(i, k, *view, &cb)) doomed.push_back(k);
                });
                for (int32_t k : doomed) masks.clear(i, k);
                if (!doomed.empty() && masks.empty(i)) {
                    alive[i] = 0;
                    ++local;
                }
            }
            removals += local;
        });
        if (removals.load() == 0) break;
    }

    InvariantController ctrl;
    ctrl.grid = grid;
    ctrl.inputs = inputs;
    for (int64_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        ctrl.cells.push_back(i);
        std::vector<int32_t> row;
        masks.for_each(i, [&](int32_t k) { row.push_back(k); });
        ctrl.table.push_back(std::move(row));
    }
    if (ctrl.cells.empty()) throw EmptyControllerError(sweep + 1);
    return ctrl;
}

void export_controller(const InvariantController& ctrl, std::ostream& os) {
    os << "#inventro-controller v1 dim=" << ctrl.grid.dim()
       << " cells=" << ctrl.cells.size() << " inputs=" << ctrl.inputs.count() << "\n";
    for (size_t i = 0; i < ctrl.cells.size(); ++i) {
        IntervalBox b = cell_box(ctrl.grid, ctrl.cells[i]);
        os << ctrl.cells[i];
        for (int d = 0; d < b.dim(); ++d) os << ' ' << fmt_real(b.lower[d]);
        for (int d = 0; d < b.dim(); ++d) os << ' ' << fmt_real(b.upper[d]);
        os << ' ' << ctrl.table[i].size();
        for (int32_t k : ctrl.table[i]) os << ' ' << k;
        os << "\n";
    }
}

std::string export_controller(const InvariantController& ctrl) {
    std::ostringstream os;
    export_controller(ctrl, os);
    return os.str();
}

InvariantController import_controller(std::istream& is, const UniformGrid& grid,
                                      const InputGrid& inputs) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(1, "empty controller file");
    int dim = 0;
    long long cells = 0, ninputs = 0;
    if (std::sscanf(line.c_str(), "#inventro-controller v1 dim=%d cells=%lld inputs=%lld",
                    &dim, &cells, &ninputs) != 3)
        throw ParseError(1, "bad controller header: " + line);
    if (dim != grid.dim()) throw ParseError(1, "controller dimension mismatch");
    if (ninputs != inputs.count()) throw ParseError(1, "controller input count mismatch");

    InvariantController ctrl;
    ctrl.grid = grid;
    ctrl.inputs = inputs;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int64_t idx;
        if (!(ls >> idx)) throw ParseError(lineno, "bad cell line");
        if (idx < 0 || idx >= grid.cell_count())
            throw ParseError(lineno, "cell index out of range");
        double skip;
        for (int d = 0; d < 2 * dim; ++d)
            if (!(ls >> skip)) throw ParseError(lineno, "missing box bound");
        size_t k;
        if (!(ls >> k) || k == 0) throw ParseError(lineno, "bad input count");
        std::vector<int32_t> row(k);
        for (size_t j = 0; j < k; ++j) {
            if (!(ls >> row[j]) || row[j] < 0 || row[j] >= inputs.count())
                throw ParseError(lineno, "bad input index");
        }
        if (!ctrl.cells.empty() && idx <= ctrl.cells.back())
            throw ParseError(lineno, "cell indices must be ascending");
        ctrl.cells.push_back(idx);
        ctrl.table.push_back(std::move(row));
    }
    if (static_cast<long long>(ctrl.cells.size()) != cells)
        throw ParseError(lineno, "cell count does not match header");
    if (ctrl.cells.empty()) throw ParseError(lineno, "controller file has no cells");
    return ctrl;
}

}  // namespace inventro
