#include "fqch/eigen_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace fqch {

namespace {

constexpr double kPi = std::numbers::pi;

struct Axis1D {
    Eigen::MatrixXd transform;       // orthonormal, row = mode
    std::vector<double> lap_values;  // 1D Laplacian eigenvalues per mode
    std::vector<double> integrals;   // integral of the sampled mode over (0,L)
};

// Cosine family on midpoints: mode a (0-based) has frequency a.
Axis1D cosine_axis(double length, int n) {
    Axis1D ax;
    ax.transform.resize(n, n);
    ax.lap_values.resize(n);
    ax.integrals.assign(n, 0.0);
    const double enorm = std::sqrt(static_cast<double>(n) / length);
    for (int a = 0; a < n; ++a) {
        const double amp = (a == 0) ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (int k = 0; k < n; ++k)
            ax.transform(a, k) = amp * std::cos(kPi * a * (k + 0.5) / n);
        ax.lap_values[a] = (kPi * a / length) * (kPi * a / length);
    }
    // Only the constant mode has nonzero integral: e_1 = 1/sqrt(L).
    ax.integrals[0] = std::sqrt(1.0 / n) * enorm * length;
    return ax;
}

// Sine family on midpoints: mode a (0-based) has frequency a+1.  The top mode
// needs the DST-II half weight to stay orthonormal on the midpoint grid.
Axis1D sine_axis(double length, int n) {
    Axis1D ax;
    ax.transform.resize(n, n);
    ax.lap_values.resize(n);
    ax.integrals.assign(n, 0.0);
    const double enorm = std::sqrt(static_cast<double>(n) / length);
    for (int a = 0; a < n; ++a) {
        const int freq = a + 1;
        const double amp = (freq == n) ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (int k = 0; k < n; ++k)
            ax.transform(a, k) = amp * std::sin(kPi * freq * (k + 0.5) / n);
        ax.lap_values[a] = (kPi * freq / length) * (kPi * freq / length);
        // int_0^L sin(pi f x / L) dx = L (1 - cos(pi f)) / (pi f)
        ax.integrals[a] = amp * enorm * length * (1.0 - std::cos(kPi * freq)) / (kPi * freq);
    }
    return ax;
}

} // namespace

std::string to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::laplacian_neumann: return "laplacian_neumann";
        case OperatorKind::laplacian_dirichlet: return "laplacian_dirichlet";
        case OperatorKind::bilaplacian_neumann: return "bilaplacian_neumann";
        case OperatorKind::bilaplacian_dirichlet: return "bilaplacian_dirichlet";
    }
    return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& name) {
    if (name == "laplacian_neumann") return OperatorKind::laplacian_neumann;
    if (name == "laplacian_dirichlet") return OperatorKind::laplacian_dirichlet;
    if (name == "bilaplacian_neumann") return OperatorKind::bilaplacian_neumann;
    if (name == "bilaplacian_dirichlet") return OperatorKind::bilaplacian_dirichlet;
    throw config_error("unknown operator kind: " + name);
}

bool is_neumann(OperatorKind kind) {
    return kind == OperatorKind::laplacian_neumann || kind == OperatorKind::bilaplacian_neumann;
}

bool is_bilaplacian(OperatorKind kind) {
    return kind == OperatorKind::bilaplacian_neumann || kind == OperatorKind::bilaplacian_dirichlet;
}

EigenBasis::EigenBasis(Domain domain, OperatorKind kind) : domain_(domain), kind_(kind) {
    const bool neumann = is_neumann(kind);
    const bool squared = is_bilaplacian(kind);
    const int nx = domain_.grid_points[0];
    const int ny = domain_.dimension == 2 ? domain_.grid_points[1] : 1;

    Axis1D ax = neumann ? cosine_axis(domain_.lengths[0], nx) : sine_axis(domain_.lengths[0], nx);
    axis_transform_[0] = ax.transform;
    Axis1D ay;
    if (domain_.dimension == 2) {
        ay = neumann ? cosine_axis(domain_.lengths[1], ny) : sine_axis(domain_.lengths[1], ny);
        axis_transform_[1] = ay.transform;
    } else {
        axis_transform_[1] = Eigen::MatrixXd::Identity(1, 1);
        ay.lap_values = {0.0};
        ay.integrals = {1.0};
    }

    const int ntot = nx * ny;
    coeff_scale_ = std::sqrt(domain_.volume() / ntot);

    struct Entry {
        double lambda;
        int a, b;
    };
    std::vector<Entry> entries;
    entries.reserve(ntot);
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
            double lap = ax.lap_values[a] + (domain_.dimension == 2 ? ay.lap_values[b] : 0.0);
            entries.push_back({lap, a, b});
        }
    std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
        return std::tie(l.lambda, l.a, l.b) < std::tie(r.lambda, r.a, r.b);
    });

    eigenvalues_.resize(ntot);
    laplacian_values_.resize(ntot);
    modes_.resize(ntot);
    integrals_.resize(ntot);
    sorted_to_tensor_.resize(ntot);
    tensor_to_sorted_.resize(ntot);
    for (int j = 0; j < ntot; ++j) {
        const Entry& e = entries[j];
        laplacian_values_[j] = e.lambda;
        eigenvalues_[j] = squared ? e.lambda * e.lambda : e.lambda;
        modes_[j] = {e.a + 1, e.b + 1};
        const double iy = domain_.dimension == 2 ? ay.integrals[e.b] : 1.0;
        integrals_[j] = ax.integrals[e.a] * iy;
        const int tensor = e.a * ny + e.b;
        sorted_to_tensor_[j] = tensor;
        tensor_to_sorted_[tensor] = j;
    }
    eigenvalues_vec_ = Eigen::Map<const Eigen::VectorXd>(eigenvalues_.data(), ntot);
    first_zero_ = neumann;
}

double EigenBasis::node(int axis, int k) const {
    return (k + 0.5) * domain_.lengths[axis] / domain_.grid_points[axis];
}

Eigen::VectorXd EigenBasis::tensor_forward(const Eigen::VectorXd& grid_values) const {
    const int nx = domain_.grid_points[0];
    if (domain_.dimension == 1) return axis_transform_[0] * grid_values;
    const int ny = domain_.grid_points[1];
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
        grid_values.data(), nx, ny);
    Eigen::MatrixXd t = axis_transform_[0] * x * axis_transform_[1].transpose();
    Eigen::VectorXd out(nx * ny);
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) out[a * ny + b] = t(a, b);
    return out;
}

Eigen::VectorXd EigenBasis::tensor_backward(const Eigen::VectorXd& tensor_coeffs) const {
    const int nx = domain_.grid_points[0];
    if (domain_.dimension == 1) return axis_transform_[0].transpose() * tensor_coeffs;
    const int ny = domain_.grid_points[1];
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(
        tensor_coeffs.data(), nx, ny);
    Eigen::MatrixXd g = axis_transform_[0].transpose() * c * axis_transform_[1];
    Eigen::VectorXd out(nx * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) out[i * ny + j] = g(i, j);
    return out;
}

Eigen::VectorXd EigenBasis::to_spectral(const Eigen::VectorXd& grid_values) const {
    if (grid_values.size() != size())
        throw config_error("to_spectral: grid size mismatch");
    Eigen::VectorXd tensor = tensor_forward(grid_values);
    Eigen::VectorXd coeffs(size());
    for (int j = 0; j < size(); ++j) coeffs[j] = coeff_scale_ * tensor[sorted_to_tensor_[j]];
    return coeffs;
}

Eigen::VectorXd EigenBasis::to_grid(const Eigen::VectorXd& coeffs) const {
    if (coeffs.size() != size())
        throw config_error("to_grid: coefficient size mismatch");
    Eigen::VectorXd tensor(size());
    for (int j = 0; j < size(); ++j) tensor[sorted_to_tensor_[j]] = coeffs[j] / coeff_scale_;
    return tensor_backward(tensor);
}

Eigen::MatrixXd EigenBasis::grid_operator(const std::vector<double>& mode_factors) const {
    const int n = size();
    if (static_cast<int>(mode_factors.size()) != n)
        throw config_error("grid_operator: factor size mismatch");
    // U^T diag(g) U with U the flattened orthonormal transform; the
    // coefficient scale cancels, so the result is symmetric in grid space.
    Eigen::MatrixXd rows(n, n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
        unit[k] = 1.0;
        rows.col(k) = tensor_forward(unit);
    }
    Eigen::VectorXd diag(n);
    for (int j = 0; j < n; ++j) diag[sorted_to_tensor_[j]] = mode_factors[j];
    return rows.transpose() * diag.asDiagonal() * rows;
}

BasisPtr build_basis(const Domain& domain, OperatorKind kind) {
    return std::make_shared<const EigenBasis>(domain, kind);
}

} // namespace fqch
