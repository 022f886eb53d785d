#pragma once

#include <iosfwd>
#include <optional>

#include "inventro/grid.hpp"
#include "inventro/system.hpp"

namespace inventro {

/// The symbolic invariant controller: for every surviving cell, the set of
/// input points whose over-approximated post stays inside the union of
/// surviving cells. cells is ascending; table[i] lists permissible input
/// indices (ascending) for cells[i] and is never empty.
struct InvariantController {
    UniformGrid grid;
    InputGrid inputs;
    std::vector<int64_t> cells;
    std::vector<std::vector<int32_t>> table;

    int64_t domain_size() const { return static_cast<int64_t>(cells.size()); }
    /// Dense id of a grid cell (-1 if not in the domain). Binary search.
    int64_t dense_of(int64_t grid_index) const;
};

struct SynthesisOptions {
    int threads = 1;
    /// Optional seed for the fixed point: only these cells start alive.
    const std::vector<uint8_t>* initial_alive = nullptr;
    /// Post boxes are cached when cells*inputs stays under this many pairs.
    int64_t post_cache_pairs = 16LL << 20;
    int sweep_limit = 1000000;
};

/// Greatest fixed point of the one-step safety operator (Gauss-Seidel sweeps
/// when threads == 1, snapshot/Jacobi sweeps otherwise; both reach the same
/// fixed point). Coverage means: the post box lies inside the closed grid
/// domain and every cell meeting its interior is alive.
InvariantController synthesize_invariant_controller(const ControlSystemModel& model,
                                                    const UniformGrid& grid,
                                                    const InputGrid& inputs,
                                                    const SynthesisOptions& opts = {});

/// True when the box is covered by alive cells in the synthesis sense.
bool covered_by(const UniformGrid& grid, const std::vector<uint8_t>& alive,
                const IntervalBox& post);

/// Alive mask over the full grid (1 byte per grid cell).
std::vector<uint8_t> alive_mask(const InvariantController& ctrl);

/// Plain-text export: header line then one line per cell,
/// `cell_index lower.. upper.. k input_idx..`, reals at 17 significant digits.
void export_controller(const InvariantController& ctrl, std::ostream& os);
std::string export_controller(const InvariantController& ctrl);

/// Parse an export produced against the same grid/input parameters.
InvariantController import_controller(std::istream& is, const UniformGrid& grid,
                                      const InputGrid& inputs);

}  // namespace inventro
