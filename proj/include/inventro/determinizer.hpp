#pragma once

#include <iosfwd>

#include "inventro/controller.hpp"

namespace inventro {

/// Per surviving cell (in controller order), select the permissible input
/// with the highest global frequency (count of cells allowing it); ties break
/// to the smallest input index.
std::vector<int32_t> determinize_maxfreq(const InvariantController& ctrl);

/// Per surviving cell, the permissible input of minimal Euclidean norm; ties
/// break to the lexicographically smallest vector.
std::vector<int32_t> determinize_minnorm(const InvariantController& ctrl);

/// Axis-aligned binary decision tree over the controller domain. Inner nodes
/// test `coordinate[dim] < threshold` with thresholds on grid-cell faces, so
/// every leaf is a union of whole cells by construction.
struct DecisionTree {
    struct Node {
        bool leaf = false;
        int dim = -1;
        double threshold = 0.0;
        int left = -1;   // cells with coordinate < threshold
        int right = -1;
        int32_t input = -1;  // leaf payload: input-point index
    };
    std::vector<Node> nodes;  // pre-order; nodes[0] is the root
    int leaf_count = 0;

    /// Leaf reached by a point (follows the predicates from the root).
    int descend(const Eigen::VectorXd& x) const;
};

/// CART recursion: split on the grid boundary maximizing information gain of
/// the chosen-input distribution (Shannon entropy impurity); ties prefer the
/// lowest dimension, then the lowest threshold. Pure nodes become leaves.
DecisionTree build_tree(const InvariantController& ctrl, const std::vector<int32_t>& choice);

/// Coarse invariant partition: one element per leaf, labels 1..q in
/// depth-first leaf order, with the leaf input as the element's control.
struct InvariantPartition {
    struct Element {
        int32_t label = 0;
        int32_t input_index = -1;
        Eigen::VectorXd input;
        std::vector<int64_t> cells;  // grid indices, ascending
    };
    std::vector<Element> elements;
    /// label per surviving cell, parallel to the controller's cell list
    std::vector<int32_t> label_of;

    int32_t size() const { return static_cast<int32_t>(elements.size()); }
};

/// Converts tree leaves to partition elements and validates the partition
/// invariants (cover, disjointness, one-step invariance of every cell under
/// its leaf input). Invariance failures throw InvarianceViolationError.
InvariantPartition tree_to_partition(const DecisionTree& tree, const InvariantController& ctrl);

/// Label map L: dense cell id -> label of the element containing the cell.
const std::vector<int32_t>& label_map(const InvariantPartition& partition);

void export_partition(const InvariantPartition& p, std::ostream& os);
std::string export_partition(const InvariantPartition& p);
void export_tree(const DecisionTree& t, std::ostream& os);
std::string export_tree(const DecisionTree& t);

}  // namespace inventro
