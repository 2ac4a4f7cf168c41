#include "fqch/state_solver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

namespace fqch {

namespace {

// P0 D P0 for diagonal D given as a vector, with P0 = I - (1/n) 1 1^T.
Eigen::MatrixXd projected_diagonal(const Eigen::VectorXd& d) {
    const int n = static_cast<int>(d.size());
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    m.diagonal() = d;
    m.noalias() -= (1.0 / n) * ones * d.transpose();
    m.noalias() -= (1.0 / n) * d * ones.transpose();
    m.noalias() += (d.mean() / n) * ones * ones.transpose();
    return m;
}

constexpr double kBarrierBound = 1.0 - 1e-10;

} // namespace

StateSolver::StateSolver(ModelConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    mean_free_ = cfg_.basis_A->first_eigenvalue_zero();
    const EigenBasis& ba = *cfg_.basis_A;
    const EigenBasis& bb = *cfg_.basis_B;
    const int n = ba.size();

    std::vector<double> inv_factors(n);
    for (int j = 0; j < n; ++j) {
        const double lam = ba.eigenvalue(j);
        inv_factors[j] = lam > 0.0 ? std::pow(lam, -2.0 * cfg_.r) : 0.0;
    }
    op_A_inv2r_ = ba.grid_operator(inv_factors);

    std::vector<double> b_factors(n);
    for (int j = 0; j < n; ++j) {
        const double lam = bb.eigenvalue(j);
        b_factors[j] = lam > 0.0 ? std::pow(lam, 2.0 * cfg_.sigma) : 0.0;
    }
    op_B_2sigma_ = bb.grid_operator(b_factors);

    newton_fixed_ = (Eigen::MatrixXd::Identity(n, n) * cfg_.tau + op_A_inv2r_) / cfg_.dt;
    if (mean_free_) {
        const Eigen::MatrixXd pin = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
        newton_fixed_ += pin / cfg_.dt;
        // P0 B P0; B already kills constants for Neumann B, the projection
        // covers mixed boundary families.
        const Eigen::MatrixXd p0 = Eigen::MatrixXd::Identity(n, n) - pin;
        newton_fixed_ += p0 * op_B_2sigma_ * p0;
    } else {
        newton_fixed_ += op_B_2sigma_;
    }
}

Eigen::VectorXd StateSolver::nonlinearity(const Eigen::VectorXd& y) const {
    const int n = static_cast<int>(y.size());
    Eigen::VectorXd out(n);
    if (cfg_.mode == NonlinearityMode::quench) {
        const double scale = cfg_.schedule.phi(cfg_.alpha);
        for (int i = 0; i < n; ++i) out[i] = scale * barrier_.h_prime(y[i]);
    } else {
        for (int i = 0; i < n; ++i) out[i] = yosida_indicator(y[i], cfg_.yosida_lambda);
    }
    return out;
}

Eigen::VectorXd StateSolver::nonlinearity_derivative(const Eigen::VectorXd& y) const {
    const int n = static_cast<int>(y.size());
    Eigen::VectorXd out(n);
    if (cfg_.mode == NonlinearityMode::quench) {
        const double scale = cfg_.schedule.phi(cfg_.alpha);
        for (int i = 0; i < n; ++i) out[i] = scale * barrier_.h_second(y[i]);
    } else {
        for (int i = 0; i < n; ++i)
            out[i] = std::abs(y[i]) > 1.0 ? 1.0 / cfg_.yosida_lambda : 0.0;
    }
    return out;
}

Eigen::VectorXd StateSolver::residual(const Eigen::VectorXd& y_next, const Eigen::VectorXd& y_prev,
                                      const Eigen::VectorXd& f2_prev,
                                      const Eigen::VectorXd& u_now) const {
    const Eigen::VectorXd delta = y_next - y_prev;
    Eigen::VectorXd core = op_B_2sigma_ * y_next + nonlinearity(y_next) + f2_prev - u_now;
    Eigen::VectorXd r = (cfg_.tau * delta + op_A_inv2r_ * delta) / cfg_.dt;
    if (mean_free_) {
        core.array() -= core.mean();
        r.array() += delta.mean() / cfg_.dt;
    }
    return r + core;
}

StateSolver::StepResult StateSolver::step(const Eigen::VectorXd& y_prev,
                                          const Eigen::VectorXd& u_now) const {
    const int n = static_cast<int>(y_prev.size());
    const double mean0 = y_prev.mean();
    Eigen::VectorXd f2_prev(n);
    for (int i = 0; i < n; ++i) f2_prev[i] = cfg_.smooth.prime(y_prev[i]);

    StepResult out;
    out.stats.barrier_clamps = barrier_.clamp_count();
    Eigen::VectorXd y = y_prev;
    Eigen::VectorXd r = residual(y, y_prev, f2_prev, u_now);
    double rnorm = r.lpNorm<Eigen::Infinity>();

    int it = 0;
    while (rnorm > cfg_.newton.tolerance) {
        if (++it > cfg_.newton.max_iterations) {
            std::ostringstream msg;
            msg << "Newton did not converge: residual " << rnorm << " after "
                << cfg_.newton.max_iterations << " iterations";
            throw solver_error(msg.str(), -1, rnorm);
        }
        const Eigen::VectorXd d = nonlinearity_derivative(y);
        Eigen::MatrixXd k = newton_fixed_;
        if (mean_free_)
            k += projected_diagonal(d);
        else
            k.diagonal() += d;
        Eigen::LDLT<Eigen::MatrixXd> fact(k);
        if (fact.info() != Eigen::Success)
            throw solver_error("Newton matrix factorization failed", -1, rnorm);
        Eigen::VectorXd delta = fact.solve(-r);
        if (mean_free_) delta.array() -= delta.mean();

        double s = 1.0;
        while (true) {
            Eigen::VectorXd y_trial = y + s * delta;
            if (mean_free_) y_trial.array() -= y_trial.mean() - mean0;
            if (cfg_.mode == NonlinearityMode::quench)
                y_trial = y_trial.cwiseMax(-kBarrierBound).cwiseMin(kBarrierBound);
            Eigen::VectorXd r_trial = residual(y_trial, y_prev, f2_prev, u_now);
            const double rt = r_trial.lpNorm<Eigen::Infinity>();
            if (rt < rnorm || rt <= cfg_.newton.tolerance) {
                y = std::move(y_trial);
                r = std::move(r_trial);
                rnorm = rt;
                break;
            }
            s *= 0.5;
            ++out.stats.line_search_halvings;
            if (s < cfg_.newton.min_step) {
                std::ostringstream msg;
                msg << "Newton line search stalled at residual " << rnorm;
                throw solver_error(msg.str(), -1, rnorm);
            }
        }
    }

    out.stats.iterations = it;
    out.stats.residual = rnorm;
    out.stats.barrier_clamps = barrier_.clamp_count() - out.stats.barrier_clamps;

    const Eigen::VectorXd delta = y - y_prev;
    Eigen::VectorXd mu = -(op_A_inv2r_ * delta) / cfg_.dt;
    if (mean_free_) {
        const Eigen::VectorXd core =
            op_B_2sigma_ * y + nonlinearity(y) + f2_prev - u_now;
        mu.array() += core.mean();
    }
    out.y = std::move(y);
    out.mu = std::move(mu);
    return out;
}

double StateSolver::energy(const Eigen::VectorXd& y_grid, const SpectralField& y_spec) const {
    const double grad_part = l2_norm(apply_power(y_spec, cfg_.sigma));
    double pot = 0.0;
    const int n = static_cast<int>(y_grid.size());
    if (cfg_.mode == NonlinearityMode::quench) {
        const double scale = cfg_.schedule.phi(cfg_.alpha);
        for (int i = 0; i < n; ++i)
            pot += scale * barrier_.h(y_grid[i]) + cfg_.smooth.value(y_grid[i]);
    } else {
        for (int i = 0; i < n; ++i)
            pot += yosida_envelope(y_grid[i], cfg_.yosida_lambda) + cfg_.smooth.value(y_grid[i]);
    }
    return 0.5 * grad_part * grad_part + cfg_.basis_B->domain().cell_weight() * pot;
}

std::pair<StateTrajectory, EnergyReport> StateSolver::solve(const InitialState& init,
                                                            const ControlTrajectory& u) const {
    const int steps = cfg_.steps();
    if (u.nodes() != steps + 1)
        throw config_error("solve: control trajectory has wrong node count");
    const Domain& dom = cfg_.basis_A->domain();

    StateTrajectory traj;
    EnergyReport report;
    traj.mu_mean_unique = !(mean_free_ && cfg_.mode == NonlinearityMode::obstacle);

    Eigen::VectorXd y = init.y0.grid_values();
    traj.times.resize(steps + 1);
    traj.y.reserve(steps + 1);
    traj.mu.reserve(steps + 1);
    traj.y.push_back(SpectralField::from_grid(cfg_.basis_B, y));
    traj.mu.push_back(SpectralField::zero(cfg_.basis_A)); // no potential at t = 0
    traj.separation_min = y.minCoeff();
    traj.separation_max = y.maxCoeff();
    traj.times[0] = 0.0;

    report.times.resize(steps + 1);
    report.energy.resize(steps + 1);
    report.diss_A.assign(steps + 1, 0.0);
    report.diss_tau.assign(steps + 1, 0.0);
    report.work.assign(steps + 1, 0.0);
    report.times[0] = 0.0;
    report.energy[0] = energy(y, traj.y.front());

    for (int m = 0; m < steps; ++m) {
        StepResult res;
        try {
            res = step(y, u.values[m + 1]);
        } catch (solver_error& err) {
            throw solver_error(std::string(err.what()) + " at time step " + std::to_string(m + 1),
                               m + 1, err.residual);
        }
        const Eigen::VectorXd delta = res.y - y;
        y = res.y;
        traj.times[m + 1] = (m + 1) * cfg_.dt;
        traj.y.push_back(SpectralField::from_grid(cfg_.basis_B, y));
        traj.mu.push_back(SpectralField::from_grid(cfg_.basis_A, res.mu));
        traj.newton_stats.push_back(res.stats);
        traj.separation_min = std::min(traj.separation_min, y.minCoeff());
        traj.separation_max = std::max(traj.separation_max, y.maxCoeff());

        const double diss_a = l2_norm(apply_power(traj.mu.back(), cfg_.r));
        const double dydt = grid_l2_norm(dom, delta) / cfg_.dt;
        report.times[m + 1] = traj.times[m + 1];
        report.energy[m + 1] = energy(y, traj.y.back());
        report.diss_A[m + 1] = report.diss_A[m] + cfg_.dt * diss_a * diss_a;
        report.diss_tau[m + 1] = report.diss_tau[m] + cfg_.dt * cfg_.tau * dydt * dydt;
        report.work[m + 1] = report.work[m] + grid_l2_inner(dom, u.values[m + 1], delta);
    }
    return {std::move(traj), std::move(report)};
}

PerturbationReport compare_two_runs(const StateTrajectory& run1, const StateTrajectory& run2,
                                    double alpha1, double alpha2, const ControlTrajectory& u1,
                                    const ControlTrajectory& u2, double r) {
    const int nodes = static_cast<int>(run1.times.size());
    if (nodes != static_cast<int>(run2.times.size()) ||
        run1.y.front().size() != run2.y.front().size())
        throw config_error("compare_two_runs: runs use different grids");
    for (int m = 0; m < nodes; ++m)
        if (std::abs(run1.times[m] - run2.times[m]) > 1e-12)
            throw config_error("compare_two_runs: time grids differ");

    const BasisPtr& bb = run1.y.front().basis();
    const Domain& dom = bb->domain();
    const double dt = nodes > 1 ? run1.times[1] - run1.times[0] : 0.0;
    const int steps = nodes - 1;

    PerturbationReport rep;
    double h1_sq = 0.0;
    double du_sq = 0.0;
    Eigen::VectorXd antideriv = Eigen::VectorXd::Zero(run1.mu.front().size());
    for (int m = 0; m < nodes; ++m) {
        const SpectralField dy = run1.y[m] - run2.y[m];
        rep.c0_l2 = std::max(rep.c0_l2, l2_norm(dy));
        double h1 = 0.0;
        for (int j = 0; j < bb->size(); ++j) {
            const double c = dy.coeffs()[j];
            h1 += (1.0 + bb->laplacian_eigenvalue(j)) * c * c;
        }
        h1_sq += trapezoid_weight(m, steps) * dt * h1;

        if (m > 0) {
            // Right-endpoint antiderivative of A^r (mu1 - mu2); mu is not
            // defined at t = 0 in the implicit scheme.
            const SpectralField dmu = run1.mu[m] - run2.mu[m];
            antideriv += dt * apply_power(dmu, r).coeffs();
            rep.mu_antiderivative = std::max(rep.mu_antiderivative, antideriv.norm());
        }
        if (u1.nodes() == nodes && u2.nodes() == nodes) {
            const Eigen::VectorXd du = u1.values[m] - u2.values[m];
            du_sq += trapezoid_weight(m, steps) * dt * grid_l2_inner(dom, du, du);
        }
    }
    rep.l2_h1 = std::sqrt(h1_sq);
    rep.right_side = std::sqrt(std::abs(alpha1 - alpha2)) + std::sqrt(du_sq);
    rep.left_side = rep.c0_l2 + rep.l2_h1 + rep.mu_antiderivative;
    rep.ratio = rep.right_side > 0.0 ? rep.left_side / rep.right_side : 0.0;
    return rep;
}

} // namespace fqch
