#include "inventro/system.hpp"

#include <cmath>

namespace inventro {

Eigen::VectorXd rk4_step(const FieldFn& field, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u, double h) {
    if (!(h > 0.0)) throw DomainError("rk4_step: step size must be positive");
    Eigen::VectorXd k1 = field(x, u);
    Eigen::VectorXd k2 = field(x + 0.5 * h * k1, u);
    Eigen::VectorXd k3 = field(x + 0.5 * h * k2, u);
    Eigen::VectorXd k4 = field(x + h * k3, u);
    Eigen::VectorXd out = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.allFinite()) {
        std::string at = "(";
        for (int i = 0; i < x.size(); ++i) at += (i ? ", " : "") + std::to_string(x[i]);
        throw IntegrationError("rk4_step: non-finite field value near state " + at + ")");
    }
    return out;
}

Eigen::VectorXd rk4_integrate(const FieldFn& field, Eigen::VectorXd x,
                              const Eigen::VectorXd& u, double T, int n) {
    double h = T / n;
    for (int i = 0; i < n; ++i) x = rk4_step(field, x, u, h);
    return x;
}

IntervalBox interval_extension_post(const IntervalMapFn& map, const IntervalBox& B,
                                    const Eigen::VectorXd& u) {
    std::vector<Interval> in = B.intervals();
    return box_from_intervals(map(in, u));
}

ControlSystemModel sampled_to_model(const SampledOde& ode, IntervalBox input_range,
                                    IntervalBox default_domain, std::string name) {
    ControlSystemModel m;
    m.name = std::move(name);
    m.state_dim = default_domain.dim();
    m.input_dim = input_range.dim();
    m.input_range = std::move(input_range);
    m.default_domain = std::move(default_domain);
    m.sampling_time = ode.sampling_time;
    const SampledOde o = ode;
    m.step = [o](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
        return rk4_integrate(o.vector_field, x, u, o.sampling_time, o.substeps);
    };
    m.post_overapprox = [o](const IntervalBox& B, const Eigen::VectorXd& u) {
        Eigen::VectorXd c = rk4_integrate(o.vector_field, B.center(), u, o.sampling_time, o.substeps);
        Eigen::VectorXd r = rk4_integrate(o.growth_bound, 0.5 * B.width(), u, o.sampling_time, o.substeps);
        return IntervalBox(c - r, c + r);
    };
    return m;
}

ControlSystemModel builtin_linear2d() {
    ControlSystemModel m;
    m.name = "linear2d";
    m.state_dim = 2;
    m.input_dim = 1;
    m.input_range = IntervalBox::from_scalars({-1.0}, {1.0});
    m.default_domain = IntervalBox::from_scalars({-1.0, -2.0}, {1.0, 2.0});
    m.step = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
        Eigen::VectorXd y(2);
        y[0] = 2.0 * x[0] + u[0];
        y[1] = 0.5 * x[1] + u[0];
        return y;
    };
    IntervalMapFn map = [](std::span<const Interval> x, const Eigen::VectorXd& u) {
        return std::vector<Interval>{2.0 * x[0] + Interval(u[0]), 0.5 * x[1] + Interval(u[0])};
    };
    m.post_overapprox = [map](const IntervalBox& B, const Eigen::VectorXd& u) {
        return interval_extension_post(map, B, u);
    };
    return m;
}

IntervalBox pendulum_invariant_set(double b, double rho) {
    if (!(b > 0.0) || !(rho > 0.0) || !(rho < b * b + 1.0))
        throw DomainError("pendulum: requires b > 0 and 0 < rho < b^2 + 1");
    double lo = std::atan(-b - std::sqrt(b * b + 1.0 + rho));
    double hi = std::atan(-b - std::sqrt(b * b + 1.0 - rho));
    return IntervalBox::from_scalars({lo}, {hi});
}

ControlSystemModel builtin_pendulum(double b, double rho, double T_s, int substeps) {
    if (!(T_s > 0.0)) throw DomainError("pendulum: sampling time must be positive");
    if (substeps < 1) throw DomainError("pendulum: substeps must be positive");
    IntervalBox domain = pendulum_invariant_set(b, rho);

    SampledOde ode;
    ode.sampling_time = T_s;
    ode.substeps = substeps;
    ode.vector_field = [b](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
        double s = std::sin(x[0]), c = std::cos(x[0]);
        Eigen::VectorXd dx(1);
        dx[0] = -2.0 * b * s * c - s * s + c * c + u[0] * c * c;
        return dx;
    };
    // Scalar Lipschitz bound over the invariant interval: the field derivative
    // is -2b cos(2x) - (2+u) sin(2x); its magnitude is bounded by interval
    // arithmetic on [2*lo, 2*hi]. Radius dynamics r' = L(u) r.
    Interval twoq(2.0 * domain.lower[0], 2.0 * domain.upper[0]);
    ode.growth_bound = [b, twoq](const Eigen::VectorXd& r, const Eigen::VectorXd& u) {
        Interval df = (-2.0 * b) * cos(twoq) - (2.0 + u[0]) * sin(twoq);
        double L = std::max(std::abs(df.lo), std::abs(df.hi));
        Eigen::VectorXd dr(1);
        dr[0] = L * r[0];
        return dr;
    };
    return sampled_to_model(ode, IntervalBox::from_scalars({-rho}, {rho}), domain, "pendulum");
}

double henon_enclosure_side() { return 1.3 + std::sqrt(1.3 * 1.3 + 20.0); }

ControlSystemModel builtin_henon(double eps, bool reversed) {
    if (!(eps > 0.0)) throw DomainError("henon: eps must be positive");
    double h = henon_enclosure_side() / 2.0;

    ControlSystemModel m;
    m.name = reversed ? "henon-reversed" : "henon";
    m.state_dim = 2;
    m.input_dim = 2;
    m.input_range = IntervalBox::from_scalars({-eps, -eps}, {eps, eps});
    m.default_domain = IntervalBox::from_scalars({-h, -h}, {h, h});

    IntervalMapFn map;
    if (!reversed) {
        m.step = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
            Eigen::VectorXd y(2);
            y[0] = 5.0 - 0.3 * x[1] - x[0] * x[0] + u[0];
            y[1] = x[0] + u[1];
            return y;
        };
        map = [](std::span<const Interval> x, const Eigen::VectorXd& u) {
            return std::vector<Interval>{
                Interval(5.0) - 0.3 * x[1] - square(x[0]) + Interval(u[0]),
                x[0] + Interval(u[1])};
        };
    } else {
        m.step = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
            Eigen::VectorXd y(2);
            double w = x[1] - u[1];
            y[0] = w;
            y[1] = (5.0 - w * w + u[0] - x[0]) / 0.3;
            return y;
        };
        map = [](std::span<const Interval> x, const Eigen::VectorXd& u) {
            Interval w = x[1] - Interval(u[1]);
            return std::vector<Interval>{
                w, (Interval(5.0) - square(w) + Interval(u[0]) - x[0]) / 0.3};
        };
    }
    m.post_overapprox = [map](const IntervalBox& B, const Eigen::VectorXd& u) {
        return interval_extension_post(map, B, u);
    };
    return m;
}

}  // namespace inventro
