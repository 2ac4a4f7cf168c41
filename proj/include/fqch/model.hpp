#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "fqch/potentials.hpp"
#include "fqch/spectral_field.hpp"

namespace fqch {

enum class NonlinearityMode {
    quench,   // f_1 = phi(alpha) h, barrier stays strictly inside (-1,1)
    obstacle, // Moreau-Yosida approximation of I_{[-1,1]} at parameter lambda
};

struct NewtonOptions {
    double tolerance = 1e-10; // max-norm residual of both step equations
    int max_iterations = 50;
    double min_step = 1.0 / (1 << 30);
};

// All PDE parameters of one run.  basis_A and basis_B must share the domain;
// r, sigma > 0 and tau >= 0; dt must divide T.
struct ModelConfig {
    double r = 0.5;
    double sigma = 0.5;
    double tau = 0.1;
    NonlinearityMode mode = NonlinearityMode::quench;
    double alpha = 0.1;          // quench mode
    double yosida_lambda = 1e-6; // obstacle mode
    BasisPtr basis_A;
    BasisPtr basis_B;
    double dt = 1e-3;
    double T = 0.25;
    QuenchSchedule schedule;
    SmoothPart smooth;
    NewtonOptions newton;

    int steps() const { return static_cast<int>(std::llround(T / dt)); }
    void validate() const {
        if (!(r > 0.0) || !(sigma > 0.0)) throw config_error("ModelConfig: r and sigma must be positive");
        if (!(tau >= 0.0)) throw config_error("ModelConfig: tau must be nonnegative");
        if (!(dt > 0.0) || !(T > 0.0)) throw config_error("ModelConfig: dt and T must be positive");
        if (!basis_A || !basis_B) throw config_error("ModelConfig: missing bases");
        if (!(basis_A->domain() == basis_B->domain()))
            throw config_error("ModelConfig: basis_A and basis_B must share the domain");
        const double m = T / dt;
        if (std::abs(m - std::llround(m)) > 1e-12 * m)
            throw config_error("ModelConfig: dt must divide T");
        if (mode == NonlinearityMode::quench && !(alpha > 0.0))
            throw config_error("ModelConfig: quench mode needs alpha > 0");
        if (mode == NonlinearityMode::obstacle && !(yosida_lambda > 0.0))
            throw config_error("ModelConfig: obstacle mode needs yosida lambda > 0");
        smooth.validate();
        schedule.validate();
    }
    ModelConfig with_mode(NonlinearityMode m) const {
        ModelConfig c = *this;
        c.mode = m;
        return c;
    }
    ModelConfig with_alpha(double a) const {
        ModelConfig c = *this;
        c.alpha = a;
        return c;
    }
};

// Initial state with essential bounds -1 < m_minus <= y0 <= m_plus < 1.
struct InitialState {
    SpectralField y0;
    double m_minus;
    double m_plus;
    double vb_2sigma_norm = 0.0; // recorded V_B^{2 sigma} norm of y0

    InitialState(SpectralField field, double lo, double hi) : y0(std::move(field)), m_minus(lo), m_plus(hi) {
        if (!(-1.0 < m_minus && m_minus <= m_plus && m_plus < 1.0))
            throw config_error("InitialState: bounds must satisfy -1 < m- <= m+ < 1");
        const Eigen::VectorXd g = y0.grid_values();
        if (g.minCoeff() < m_minus - 1e-12 || g.maxCoeff() > m_plus + 1e-12)
            throw config_error("InitialState: grid values violate the essential bounds");
    }
};

// Time-indexed control samples on the shared grid (node m holds u(t_m)).
// rho1/rho2 record the admissible-set metadata the control was projected to.
struct ControlTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> values;
    double rho1 = std::numeric_limits<double>::infinity();
    double rho2 = std::numeric_limits<double>::infinity();

    static ControlTrajectory zero(const ModelConfig& cfg) {
        ControlTrajectory u;
        const int m = cfg.steps();
        const int n = cfg.basis_A->size();
        u.times.resize(m + 1);
        u.values.assign(m + 1, Eigen::VectorXd::Zero(n));
        for (int i = 0; i <= m; ++i) u.times[i] = i * cfg.dt;
        return u;
    }
    int nodes() const { return static_cast<int>(values.size()); }
};

// Trapezoid weight for time node m on a grid with M steps.
inline double trapezoid_weight(int m, int steps) { return (m == 0 || m == steps) ? 0.5 : 1.0; }

// --- discrete L2 quadrature on the shared midpoint grid ---------------------

inline double grid_l2_inner(const Domain& d, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return d.cell_weight() * a.dot(b);
}
inline double grid_l2_norm(const Domain& d, const Eigen::VectorXd& a) {
    return std::sqrt(grid_l2_inner(d, a, a));
}

// L2(Q) = L2(0,T;L2) pairing of time-indexed grid fields, trapezoid in time.
inline double qspace_inner(const Domain& d, double dt, const std::vector<Eigen::VectorXd>& a,
                           const std::vector<Eigen::VectorXd>& b) {
    const int steps = static_cast<int>(a.size()) - 1;
    double acc = 0.0;
    for (int m = 0; m <= steps; ++m)
        acc += trapezoid_weight(m, steps) * dt * grid_l2_inner(d, a[m], b[m]);
    return acc;
}
inline double qspace_norm(const Domain& d, double dt, const std::vector<Eigen::VectorXd>& a) {
    return std::sqrt(qspace_inner(d, dt, a, a));
}

} // namespace fqch
