#pragma once

#include <Eigen/Dense>
#include <vector>

#include "inventro/errors.hpp"
#include "inventro/interval.hpp"

namespace inventro {

/// Axis-aligned hyperrectangle, the universal geometric currency: grid cells,
/// state sets, and reachable-set over-approximations are all IntervalBoxes.
struct IntervalBox {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    IntervalBox() = default;
    IntervalBox(Eigen::VectorXd lo, Eigen::VectorXd hi)
        : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower.size() != upper.size() || lower.size() < 1)
            throw DomainError("IntervalBox: mismatched or empty bounds");
        for (int i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i]))
                throw DomainError("IntervalBox: lower > upper in dimension " + std::to_string(i));
    }

    static IntervalBox from_scalars(std::initializer_list<double> lo,
                                    std::initializer_list<double> hi) {
        Eigen::VectorXd l(static_cast<int>(lo.size())), u(static_cast<int>(hi.size()));
        int i = 0;
        for (double v : lo) l[i++] = v;
        i = 0;
        for (double v : hi) u[i++] = v;
        return IntervalBox(std::move(l), std::move(u));
    }

    int dim() const { return static_cast<int>(lower.size()); }
    Eigen::VectorXd width() const { return upper - lower; }
    Eigen::VectorXd center() const { return 0.5 * (lower + upper); }

    bool contains(const Eigen::VectorXd& x) const {
        return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
    }
    /// Closed containment of another box.
    bool contains_box(const IntervalBox& b) const {
        return (b.lower.array() >= lower.array()).all() &&
               (b.upper.array() <= upper.array()).all();
    }

    Interval interval(int d) const { return {lower[d], upper[d]}; }
    std::vector<Interval> intervals() const {
        std::vector<Interval> out(dim());
        for (int d = 0; d < dim(); ++d) out[d] = interval(d);
        return out;
    }
};

inline IntervalBox box_from_intervals(const std::vector<Interval>& iv) {
    Eigen::VectorXd lo(static_cast<int>(iv.size())), hi(static_cast<int>(iv.size()));
    for (size_t d = 0; d < iv.size(); ++d) {
        lo[static_cast<int>(d)] = iv[d].lo;
        hi[static_cast<int>(d)] = iv[d].hi;
    }
    return IntervalBox(std::move(lo), std::move(hi));
}

}  // namespace inventro
