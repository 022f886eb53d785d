#include "inventro/determinizer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "inventro/util.hpp"

namespace inventro {

std::vector<int32_t> determinize_maxfreq(const InvariantController& ctrl) {
    const int K = ctrl.inputs.count();
    std::vector<int64_t> freq(K, 0);
    for (const auto& row : ctrl.table)
        for (int32_t k : row) ++freq[k];
    std::vector<int32_t> choice(ctrl.table.size());
    for (size_t i = 0; i < ctrl.table.size(); ++i) {
        int32_t best = ctrl.table[i][0];
        for (int32_t k : ctrl.table[i])
            if (freq[k] > freq[best]) best = k;  // ties keep the smaller index
        choice[i] = best;
    }
    return choice;
}

std::vector<int32_t> determinize_minnorm(const InvariantController& ctrl) {
    const auto& pts = ctrl.inputs.points;
    auto lex_less = [&](int32_t a, int32_t b) {
        for (int d = 0; d < pts[a].size(); ++d) {
            if (pts[a][d] < pts[b][d]) return true;
            if (pts[a][d] > pts[b][d]) return false;
        }
        return false;
    };
    std::vector<double> norm(pts.size());
    for (size_t k = 0; k < pts.size(); ++k) norm[k] = pts[k].norm();
    std::vector<int32_t> choice(ctrl.table.size());
    for (size_t i = 0; i < ctrl.table.size(); ++i) {
        int32_t best = ctrl.table[i][0];
        for (int32_t k : ctrl.table[i]) {
            if (norm[k] < norm[best] || (norm[k] == norm[best] && lex_less(k, best)))
                best = k;
        }
        choice[i] = best;
    }
    return choice;
}

int DecisionTree::descend(const Eigen::VectorXd& x) const {
    int at = 0;
    while (!nodes[at].leaf)
        at = x[nodes[at].dim] < nodes[at].threshold ? nodes[at].left : nodes[at].right;
    return at;
}

namespace {

double shannon(const std::vector<int64_t>& counts, int64_t total) {
    double h = 0.0;
    for (int64_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

struct TreeBuilder {
    const InvariantController& ctrl;
    const std::vector<int32_t>& choice;
    DecisionTree tree;
    std::vector<std::vector<int64_t>> mindex;  // multi-index per dense cell

    explicit TreeBuilder(const InvariantController& c, const std::vector<int32_t>& ch)
        : ctrl(c), choice(ch) {
        mindex.reserve(ctrl.cells.size());
        for (int64_t cell : ctrl.cells) mindex.push_back(to_multi_index(ctrl.grid, cell));
    }

    // members are dense cell ids
    int build(std::vector<int32_t>& members) {
        bool pure = true;
        for (int32_t m : members)
            if (choice[m] != choice[members[0]]) {
                pure = false;
                break;
            }
        if (pure) {
            DecisionTree::Node leaf;
            leaf.leaf = true;
            leaf.input = choice[members[0]];
            int id = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(leaf);
            ++tree.leaf_count;
            return id;
        }

        const int dim = ctrl.grid.dim();
        // class ids for the chosen inputs present in this node
        std::vector<int32_t> class_of_input(ctrl.inputs.count(), -1);
        int nclasses = 0;
        std::vector<int32_t> cls(members.size());
        for (size_t i = 0; i < members.size(); ++i) {
            int32_t in = choice[members[i]];
            if (class_of_input[in] < 0) class_of_input[in] = nclasses++;
            cls[i] = class_of_input[in];
        }
        std::vector<int64_t> total_counts(nclasses, 0);
        for (int32_t c : cls) ++total_counts[c];
        const double parent = shannon(total_counts, members.size());

        double best_gain = 0.0;
        int best_dim = -1;
        int64_t best_t = -1;
        for (int d = 0; d < dim; ++d) {
            int64_t lo = mindex[members[0]][d], hi = lo;
            for (int32_t m : members) {
                lo = std::min(lo, mindex[m][d]);
                hi = std::max(hi, mindex[m][d]);
            }
            if (lo == hi) continue;
            // histogram over (coordinate, class)
            int64_t span = hi - lo + 1;
            std::vector<int64_t> hist(span * nclasses, 0);
            for (size_t i = 0; i < members.size(); ++i)
                ++hist[(mindex[members[i]][d] - lo) * nclasses + cls[i]];
            std::vector<int64_t> left(nclasses, 0);
            int64_t nleft = 0;
            for (int64_t t = lo + 1; t <= hi; ++t) {
                for (int c = 0; c < nclasses; ++c) {
                    left[c] += hist[(t - 1 - lo) * nclasses + c];
                }
                nleft = 0;
                for (int c = 0; c < nclasses; ++c) nleft += left[c];
                if (nleft == 0 || nleft == static_cast<int64_t>(members.size())) continue;
                std::vector<int64_t> right(nclasses);
                for (int c = 0; c < nclasses; ++c) right[c] = total_counts[c] - left[c];
                int64_t nright = members.size() - nleft;
                double gain = parent - (nleft * shannon(left, nleft) +
                                        nright * shannon(right, nright)) /
                                           static_cast<double>(members.size());
                if (gain > best_gain) {  // strict: ties keep lowest dim, then lowest face
                    best_gain = gain;
                    best_dim = d;
                    best_t = t;
                }
            }
        }
        if (best_dim < 0) {
            // no positive-gain split; fall back to the first separating face
            for (int d = 0; d < dim && best_dim < 0; ++d) {
                int64_t lo = mindex[members[0]][d], hi = lo;
                for (int32_t m : members) {
                    lo = std::min(lo, mindex[m][d]);
                    hi = std::max(hi, mindex[m][d]);
                }
                if (lo < hi) {
                    best_dim = d;
                    best_t = lo + 1;
                }
            }
            if (best_dim < 0)
                throw Error("build_tree: impure node with no separating face");
        }

        std::vector<int32_t> left_m, right_m;
        for (int32_t m : members)
            (mindex[m][best_dim] < best_t ? left_m : right_m).push_back(m);
        members.clear();
        members.shrink_to_fit();

        DecisionTree::Node inner;
        inner.dim = best_dim;
        inner.threshold = cell_face_lo(ctrl.grid, best_dim, best_t);
        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(inner);
        int l = build(left_m);
        int r = build(right_m);
        tree.nodes[id].left = l;
        tree.nodes[id].right = r;
        return id;
    }
};

}  // namespace

DecisionTree build_tree(const InvariantController& ctrl, const std::vector<int32_t>& choice) {
    if (choice.size() != ctrl.table.size())
        throw DomainError("build_tree: choice map must cover the controller domain");
    for (size_t i = 0; i < choice.size(); ++i) {
        if (!std::binary_search(ctrl.table[i].begin(), ctrl.table[i].end(), choice[i]))
            throw DomainError("build_tree: chosen input not permissible for cell " +
                              std::to_string(ctrl.cells[i]));
    }
    TreeBuilder builder(ctrl, choice);
    std::vector<int32_t> all(ctrl.cells.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int32_t>(i);
    builder.build(all);
    builder.tree.nodes.shrink_to_fit();
    return std::move(builder.tree);
}

InvariantPartition tree_to_partition(const DecisionTree& tree, const InvariantController& ctrl) {
    InvariantPartition part;
    part.label_of.assign(ctrl.cells.size(), 0);

    // depth-first leaf numbering
    std::vector<int32_t> leaf_label(tree.nodes.size(), 0);
    int32_t next = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int at = stack.back();
        stack.pop_back();
        const auto& nd = tree.nodes[at];
        if (nd.leaf) {
            leaf_label[at] = ++next;
            part.elements.emplace_back();
            auto& el = part.elements.back();
            el.label = next;
            el.input_index = nd.input;
            el.input = ctrl.inputs.points[nd.input];
        } else {
            stack.push_back(nd.right);  // left explored first
            stack.push_back(nd.left);
        }
    }

    for (size_t i = 0; i < ctrl.cells.size(); ++i) {
        int leaf = tree.descend(cell_center(ctrl.grid, ctrl.cells[i]));
        int32_t label = leaf_label[leaf];
        if (label == 0) throw PartitionIntegrityError("cell descended to a non-leaf");
        part.label_of[i] = label;
        part.elements[label - 1].cells.push_back(ctrl.cells[i]);
    }
    for (const auto& el : part.elements)
        if (el.cells.empty())
            throw PartitionIntegrityError("empty partition element " + std::to_string(el.label));

    // One-step invariance of (A, G): the element input must be permissible for
    // every cell it governs; permissibility is exactly post-coverage by the
    // controller domain. (The transition builder re-checks the boxes directly.)
    int64_t covered = 0;
    for (size_t i = 0; i < ctrl.cells.size(); ++i) {
        const auto& el = part.elements[part.label_of[i] - 1];
        if (!std::binary_search(ctrl.table[i].begin(), ctrl.table[i].end(), el.input_index))
            throw InvarianceViolationError(
                "partition element " + std::to_string(el.label) +
                " assigns a non-permissible input to cell " + std::to_string(ctrl.cells[i]));
        ++covered;
    }
    if (covered != static_cast<int64_t>(ctrl.cells.size()))
        throw PartitionIntegrityError("partition does not cover the controller domain");
    return part;
}

const std::vector<int32_t>& label_map(const InvariantPartition& partition) {
    return partition.label_of;
}

void export_partition(const InvariantPartition& p, std::ostream& os) {
    os << "#inventro-partition v1 elements=" << p.elements.size() << "\n";
    for (const auto& el : p.elements) {
        os << el.label;
        for (int d = 0; d < el.input.size(); ++d) os << ' ' << fmt_real(el.input[d]);
        os << ' ' << el.cells.size();
        for (int64_t c : el.cells) os << ' ' << c;
        os << "\n";
    }
}

std::string export_partition(const InvariantPartition& p) {
    std::ostringstream os;
    export_partition(p, os);
    return os.str();
}

namespace {
void export_tree_rec(const DecisionTree& t, int at, std::ostream& os) {
    const auto& nd = t.nodes[at];
    if (nd.leaf) {
        os << "leaf " << nd.input << "\n";
        return;
    }
    os << "node " << nd.dim << ' ' << fmt_real(nd.threshold) << "\n";
    export_tree_rec(t, nd.left, os);
    export_tree_rec(t, nd.right, os);
}
}  // namespace

void export_tree(const DecisionTree& t, std::ostream& os) { export_tree_rec(t, 0, os); }

std::string export_tree(const DecisionTree& t) {
    std::ostringstream os;
    export_tree(t, os);
    return os.str();
}

}  // namespace inventro
