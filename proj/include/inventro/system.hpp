#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>

#include "inventro/box.hpp"

namespace inventro {

using StepFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using PostFn = std::function<IntervalBox(const IntervalBox&, const Eigen::VectorXd&)>;
using FieldFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using IntervalMapFn =
    std::function<std::vector<Interval>(std::span<const Interval>, const Eigen::VectorXd&)>;

/// A control system with exact pointwise evaluation (step) and a sound box
/// image over-approximator (post_overapprox): for every x in B and admissible
/// u, step(x,u) lies in post_overapprox(B,u). Both are pure and deterministic.
struct ControlSystemModel {
    std::string name;
    int state_dim = 0;
    int input_dim = 0;
    IntervalBox input_range;
    StepFn step;
    PostFn post_overapprox;
    /// The compact controlled-invariant candidate shipped with the built-ins.
    IntervalBox default_domain;
    /// Sampling period for sampled ODE models; 0 for explicit discrete maps.
    double sampling_time = 0.0;
};

/// Sampled continuous-time dynamics: step = fixed-step RK4 of the vector field
/// over one sampling period with the input held constant; the post box is the
/// center trajectory inflated by the RK4-integrated growth-bound radius.
struct SampledOde {
    FieldFn vector_field;
    double sampling_time = 0.0;
    int substeps = 10;
    /// radius dynamics: (radius, input) -> radius derivative
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> growth_bound;
};

/// One classical 4th-order Runge-Kutta update x + h/6 (k1 + 2k2 + 2k3 + k4).
Eigen::VectorXd rk4_step(const FieldFn& field, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u, double h);

/// Integrate over [0, T] with n equal RK4 steps.
Eigen::VectorXd rk4_integrate(const FieldFn& field, Eigen::VectorXd x,
                              const Eigen::VectorXd& u, double T, int n);

/// Natural interval extension of an explicit map: evaluates the map on the box
/// treated as a vector of intervals, with u as a degenerate interval.
IntervalBox interval_extension_post(const IntervalMapFn& map, const IntervalBox& B,
                                    const Eigen::VectorXd& u);

/// Wrap sampled dynamics as a ControlSystemModel over the given input range.
ControlSystemModel sampled_to_model(const SampledOde& ode, IntervalBox input_range,
                                    IntervalBox default_domain, std::string name);

/// x' = 2x + u, y' = y/2 + u with u in [-1,1]; Q = [-1,1] x [-2,2].
ControlSystemModel builtin_linear2d();

/// Projectivized damped pendulum at the unstable position, sampled with
/// period T_s. Requires 0 < rho < b^2 + 1; the input range is [-rho, rho].
ControlSystemModel builtin_pendulum(double b, double rho, double T_s, int substeps = 10);

/// The controlled-invariant interval of the pendulum model.
IntervalBox pendulum_invariant_set(double b, double rho);

/// Henon control system (forward or time-reversed) with the input square
/// max{|u|,|v|} <= eps; Q = [-r/2, r/2]^2, r = 1.3 + sqrt(1.3^2 + 20).
ControlSystemModel builtin_henon(double eps, bool reversed = false);

/// Side length of the square enclosing the Henon horseshoe.
double henon_enclosure_side();

}  // namespace inventro
