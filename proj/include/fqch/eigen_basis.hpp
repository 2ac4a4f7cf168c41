#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "fqch/domain.hpp"

namespace fqch {

enum class OperatorKind {
    laplacian_neumann,
    laplacian_dirichlet,
    bilaplacian_neumann,
    bilaplacian_dirichlet,
};

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);
bool is_neumann(OperatorKind kind);
bool is_bilaplacian(OperatorKind kind);

// Discrete eigenbasis of -Laplace or Laplace^2 on a box, diagonalized by
// cosine (Neumann) or sine (Dirichlet) tensor modes.  Both families are
// sampled on the same per-axis midpoint grid x_k = (k+1/2) L/N, where the
// N x N sample matrix is orthogonal (DCT-II / DST-II), so grid<->spectral
// transforms are exact up to roundoff and A- and B-bases of different
// boundary families can share one grid.
//
// Modes are flattened and sorted by ascending eigenvalue with a lexicographic
// tensor-mode tie-break.  Immutable after construction; transform calls are
// pure and safe to share across threads.
class EigenBasis {
public:
    EigenBasis(Domain domain, OperatorKind kind);

    const Domain& domain() const { return domain_; }
    OperatorKind kind() const { return kind_; }
    int size() const { return static_cast<int>(eigenvalues_.size()); }
    bool first_eigenvalue_zero() const { return first_zero_; }

    // j is 0-based; eigenvalue(0) is the smallest.
    double eigenvalue(int j) const { return eigenvalues_[j]; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_vec_; }
    // Eigenvalue of the companion -Laplacian with the same eigenfunctions
    // (equals eigenvalue(j) for laplacian kinds, its square root otherwise).
    double laplacian_eigenvalue(int j) const { return laplacian_values_[j]; }
    // Tensor mode of sorted index j, 1-based per axis; second entry is 1 in 1D.
    std::array<int, 2> mode_of(int j) const { return modes_[j]; }

    // Midpoint grid node coordinate along an axis.
    double node(int axis, int k) const;
    // Flat grid index convention: k = ix * Ny + iy (ix for 1D).
    int flat_index(int ix, int iy) const { return ix * domain_.grid_points[1] + iy; }

    // Exact integral of the j-th normalized eigenfunction over the box.
    double eigenfunction_integral(int j) const { return integrals_[j]; }

    Eigen::VectorXd to_spectral(const Eigen::VectorXd& grid_values) const;
    Eigen::VectorXd to_grid(const Eigen::VectorXd& coeffs) const;

    // Dense grid-space matrix of the operator sum_j g(lambda_j) <., e_j> e_j.
    // Symmetric; used to assemble Newton systems.
    Eigen::MatrixXd grid_operator(const std::vector<double>& mode_factors) const;

private:
    Domain domain_;
    OperatorKind kind_;
    bool first_zero_ = false;
    std::vector<double> eigenvalues_;
    Eigen::VectorXd eigenvalues_vec_;
    std::vector<double> laplacian_values_;
    std::vector<std::array<int, 2>> modes_;
    std::vector<double> integrals_;
    // Orthonormal per-axis sample matrices, mode-major (row = mode).
    std::array<Eigen::MatrixXd, 2> axis_transform_;
    // sorted index -> tensor index a*Ny + b (0-based), and its inverse
    std::vector<int> sorted_to_tensor_;
    std::vector<int> tensor_to_sorted_;
    double coeff_scale_ = 1.0; // sqrt(|Omega| / Ntot)

    Eigen::VectorXd tensor_forward(const Eigen::VectorXd& grid_values) const;
    Eigen::VectorXd tensor_backward(const Eigen::VectorXd& tensor_coeffs) const;
};

using BasisPtr = std::shared_ptr<const EigenBasis>;

// Realizes the concrete operator families on a box.  Closed-form eigenvalues:
// 1D Neumann Laplacian on (0,L): lambda_j = (pi (j-1)/L)^2; Dirichlet:
// (pi j / L)^2; tensor sums in 2D; bilaplacian kinds square the Laplacian
// values.
BasisPtr build_basis(const Domain& domain, OperatorKind kind);

} // namespace fqch
