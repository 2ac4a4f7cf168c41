#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fqch/model.hpp"

namespace fqch {

struct NewtonStats {
    int iterations = 0;
    double residual = 0.0;
    int line_search_halvings = 0;
    std::int64_t barrier_clamps = 0;
};

// Discrete solution of the coupled system.  y is stored in basis_B, the
// chemical potential mu in basis_A.
struct StateTrajectory {
    std::vector<double> times;
    std::vector<SpectralField> y;
    std::vector<SpectralField> mu;
    std::vector<NewtonStats> newton_stats;
    double separation_min = 1.0;  // running min of grid values of y
    double separation_max = -1.0; // running max
    bool mu_mean_unique = true;   // false for obstacle mode with lambda_1 = 0

    int steps() const { return static_cast<int>(times.size()) - 1; }
    Eigen::VectorXd y_grid(int m) const { return y[m].grid_values(); }
    Eigen::VectorXd mu_grid(int m) const { return mu[m].grid_values(); }
};

// E(y) = 1/2 |B^sigma y|^2 + int (f1(y) + f2(y)) with f1 the active
// nonlinearity, plus cumulative dissipation integrals.
struct EnergyReport {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> diss_A;    // cumulative int |A^r mu|^2
    std::vector<double> diss_tau;  // cumulative tau int |dy/dt|^2
    std::vector<double> work;      // cumulative int int u dy/dt
    // | E(T) - E(0) + diss_A + diss_tau - work |
    double identity_residual() const {
        return std::abs(energy.back() - energy.front() + diss_A.back() + diss_tau.back() -
                        work.back());
    }
};

// One implicit Euler step of
//   (y+ - y)/dt + A^{2r} mu+ = 0
//   tau (y+ - y)/dt + B^{2 sigma} y+ + N(y+) + f2'(y) = mu+ + u
// solved by damped Newton with barrier safeguard; N is the scaled barrier
// derivative (quench) or the Yosida ramp (obstacle).  With lambda_1(A) = 0
// the mean of y is conserved exactly and mean(mu+) is recovered from the
// constant-mode component of the second equation.
class StateSolver {
public:
    explicit StateSolver(ModelConfig cfg);

    const ModelConfig& config() const { return cfg_; }

    // Advance one step from grid values y_prev with control sample u_now
    // (the control at t_{m+1}).  Returns grid values of (y_next, mu_next).
    struct StepResult {
        Eigen::VectorXd y;
        Eigen::VectorXd mu;
        NewtonStats stats;
    };
    StepResult step(const Eigen::VectorXd& y_prev, const Eigen::VectorXd& u_now) const;

    std::pair<StateTrajectory, EnergyReport> solve(const InitialState& init,
                                                   const ControlTrajectory& u) const;

    // Grid-space application helpers shared with the adjoint solver.
    const Eigen::MatrixXd& op_A_inv2r() const { return op_A_inv2r_; }
    const Eigen::MatrixXd& op_B_2sigma() const { return op_B_2sigma_; }
    bool conserves_mean() const { return mean_free_; }

    // Pointwise nonlinearity and its derivative at grid values.
    Eigen::VectorXd nonlinearity(const Eigen::VectorXd& y) const;
    Eigen::VectorXd nonlinearity_derivative(const Eigen::VectorXd& y) const;

private:
    ModelConfig cfg_;
    bool mean_free_;        // lambda_1(A) = 0: evolve on the zero-mean subspace
    Eigen::MatrixXd op_A_inv2r_;  // A^{-2r} (all modes) or A_0^{-2r} P_0
    Eigen::MatrixXd op_B_2sigma_;
    Eigen::MatrixXd newton_fixed_; // step-independent part of the Newton matrix
    BarrierEval barrier_;

    double energy(const Eigen::VectorXd& y_grid, const SpectralField& y_spec) const;
    Eigen::VectorXd residual(const Eigen::VectorXd& y_next, const Eigen::VectorXd& y_prev,
                             const Eigen::VectorXd& f2_prev, const Eigen::VectorXd& u_now) const;
};

// Norms entering the two-run comparison: C0([0,t];L2), L2(0,t;H1) of the
// state gap, plus the C0 L2 norm of the running integral of A^r (mu1 - mu2).
struct PerturbationReport {
    double c0_l2 = 0.0;
    double l2_h1 = 0.0;
    double mu_antiderivative = 0.0;
    double left_side = 0.0;  // c0_l2 + l2_h1 + mu_antiderivative
    double right_side = 0.0; // |a1 - a2|^{1/2} + |u1 - u2|_{L2(Q)}
    double ratio = 0.0;      // left / right (0 when right vanishes)
};

PerturbationReport compare_two_runs(const StateTrajectory& run1, const StateTrajectory& run2,
                                    double alpha1, double alpha2, const ControlTrajectory& u1,
                                    const ControlTrajectory& u2, double r);

} // namespace fqch
