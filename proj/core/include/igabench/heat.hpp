#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igabench/assembly.hpp"
#include "igabench/parallel_runtime.hpp"
#include "igabench/splines.hpp"

namespace igabench {

using ScalarField3 = std::function<double(double, double, double)>;

/// Spline function on [0,1]^3 with coefficients in dof_index order.
struct SplineField {
    int elements = 1;
    int degree = 0;
    std::vector<double> coefficients;

    SplineField() = default;
    SplineField(int elements, int degree, std::vector<double> coefficients);
    static SplineField constant(int elements, int degree, double value);

    /// Throws std::invalid_argument on a length mismatch or non-finite entry.
    void validate() const;
    [[nodiscard]] double evaluate(double x, double y, double z) const;
    [[nodiscard]] std::array<double, 3> gradient(double x, double y, double z) const;
};

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Unpreconditioned conjugate gradients on the Gram matrix. x holds the
/// initial guess. Throws std::runtime_error when the tolerance is not reached
/// within max_iterations (0: 10 n).
CgResult conjugate_gradient(const GlobalGram& g, std::span<const double> b, std::span<double> x,
                            double tolerance = 1e-10, int max_iterations = 0);

/// Forward Euler time step on the default mesh h = 1/K: h^2/6.
double default_time_step(int elements);

/// 1 + cos(pi x) cos(pi y) cos(pi z).
double default_initial_state(double x, double y, double z);
/// Exact solution for the default initial state, decaying at rate 3 pi^2.
double analytic_solution(double t, double x, double y, double z);

struct HeatConfig {
    int elements = 4;
    int degree = 2;
    double dt = 0.0;  // 0: default_time_step, capped below the stability bound
    double t_final = 0.01;
    /// Rebuild the Gram matrix every step through the integration runtime.
    bool reassemble = true;
    Method method = Method::sumfact;
    Strategy strategy = Strategy::sequential;
    int workers = 1;
    double tolerance = 1e-10;
};

class HeatSolver {
public:
    explicit HeatSolver(const HeatConfig& cfg);

    [[nodiscard]] const HeatConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const GlobalGram& gram() const noexcept { return gram_; }
    [[nodiscard]] std::size_t dofs() const noexcept { return gram_.rows(); }

    /// Solves G mu = b with b the quadrature moments of u0 against each basis function.
    SplineField l2_project(const ScalarField3& u0, CgResult* info = nullptr);

    /// L = G mu - dt * (grad U, grad B) by element quadrature.
    std::vector<double> assemble_rhs(const SplineField& u, double dt) const;

    SplineField step(const SplineField& u, double dt, CgResult* info = nullptr);

    /// Integral of U over the domain, 1^T G mu.
    [[nodiscard]] double mass(const SplineField& u) const;

    [[nodiscard]] double l2_error(const SplineField& u, const ScalarField3& exact) const;

    /// Largest stable forward Euler step, 2 / lambda_max(G^-1 S), estimated by
    /// power iteration.
    double stability_bound(int iterations = 60);

private:
    void check_field(const SplineField& u) const;
    void reassemble();

    HeatConfig cfg_;
    KnotVector kv_;
    Runtime runtime_;
    GlobalGram gram_;
};

struct HeatStepRecord {
    int step = 0;
    double time = 0.0;
    double mass = 0.0;
    std::optional<double> l2_error;
    int cg_iterations = 0;
};

struct HeatRun {
    std::vector<HeatStepRecord> steps;
    std::vector<std::string> warnings;
    double dt = 0.0;
    double stability_bound = 0.0;
    SplineField final_state;
};

using ExactSolution = std::function<double(double, double, double, double)>;

/// Projects u0, then steps to t_final. With exact given, each record carries
/// the L2 error against it. Step 0 is the projected initial state. Warnings
/// (such as an explicit dt above the stability bound) are passed to warn
/// before the first step.
HeatRun run_heat(const HeatConfig& cfg, const ScalarField3& u0, const ExactSolution& exact = {},
                 const std::function<void(const std::string&)>& warn = {});

}  // namespace igabench
