#pragma once

#include <algorithm>
#include <cmath>

#include "inventro/errors.hpp"

namespace inventro {

/// Closed scalar interval [lo, hi] with the natural-extension arithmetic used
/// to over-approximate box images of explicit maps. Images of the provided
/// primitives are tight (no outward rounding; soundness of the resulting
/// posts is established by the sampling property tests).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double point) : lo(point), hi(point) {}
    Interval(double lo, double hi) : lo(lo), hi(hi) {}

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval operator*(double c, Interval a) {
    return c >= 0 ? Interval{c * a.lo, c * a.hi} : Interval{c * a.hi, c * a.lo};
}
inline Interval operator*(Interval a, double c) { return c * a; }

inline Interval operator/(Interval a, double c) {
    if (c == 0.0) throw UnsupportedOperationError("interval division by zero constant");
    return (1.0 / c) * a;
}

/// General interval division is not part of the supported primitive set.
inline Interval operator/(Interval, Interval) {
    throw UnsupportedOperationError("interval/interval division is not implemented");
}

/// Tight square: [0, max^2] when the interval straddles zero.
inline Interval square(Interval a) {
    double p = a.lo * a.lo, q = a.hi * a.hi;
    if (a.lo <= 0.0 && a.hi >= 0.0) return {0.0, std::max(p, q)};
    return {std::min(p, q), std::max(p, q)};
}

inline Interval sqrt(Interval a) {
    if (a.lo < 0.0) throw DomainError("interval sqrt of a negative range");
    return {std::sqrt(a.lo), std::sqrt(a.hi)};
}

inline Interval atan(Interval a) { return {std::atan(a.lo), std::atan(a.hi)}; }

/// cos over [lo, hi], scanning contained extrema k*pi.
inline Interval cos(Interval a) {
    if (a.width() >= 2.0 * M_PI) return {-1.0, 1.0};
    double clo = std::cos(a.lo), chi = std::cos(a.hi);
    double lo = std::min(clo, chi), hi = std::max(clo, chi);
    long k0 = static_cast<long>(std::ceil(a.lo / M_PI));
    long k1 = static_cast<long>(std::floor(a.hi / M_PI));
    for (long k = k0; k <= k1; ++k) {
        if ((k % 2) == 0) hi = 1.0;
        else lo = -1.0;
    }
    return {lo, hi};
}

inline Interval sin(Interval a) { return cos(Interval{a.lo - M_PI / 2.0, a.hi - M_PI / 2.0}); }

inline Interval abs(Interval a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

}  // namespace inventro
