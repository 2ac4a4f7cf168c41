#pragma once

#include <Eigen/Dense>

#include "fqch/eigen_basis.hpp"

namespace fqch {

// Coefficient vector of a function in an EigenBasis.  Immutable in spirit:
// all calculus operations return new fields.
class SpectralField {
public:
    SpectralField(BasisPtr basis, Eigen::VectorXd coeffs);

    static SpectralField zero(BasisPtr basis);
    static SpectralField from_grid(BasisPtr basis, const Eigen::VectorXd& grid_values);
    // Field with a single unit coefficient on sorted mode j (0-based).
    static SpectralField unit_mode(BasisPtr basis, int j);
    static SpectralField constant(BasisPtr basis, double value);

    const BasisPtr& basis() const { return basis_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    int size() const { return static_cast<int>(coeffs_.size()); }
    Eigen::VectorXd grid_values() const { return basis_->to_grid(coeffs_); }

    SpectralField operator+(const SpectralField& other) const;
    SpectralField operator-(const SpectralField& other) const;
    SpectralField operator*(double s) const;

private:
    BasisPtr basis_;
    Eigen::VectorXd coeffs_;
};

// --- fractional operator calculus -----------------------------------------

// coeffs_j <- lambda_j^e coeffs_j, with the conventions 0^0 = 1 (e = 0 is the
// identity) and 0^e = 0 for e > 0 (the constant mode is annihilated).
SpectralField apply_power(const SpectralField& field, double exponent);

// Hilbert norm of V_A^r: (sum |lambda_j^r (v,e_j)|^2)^{1/2} when the first
// eigenvalue is positive; with lambda_1 = 0 the constant-mode coefficient
// enters unweighted instead.
double frac_norm(const SpectralField& field, double exponent);
double frac_inner(const SpectralField& a, const SpectralField& b, double exponent);
// Graph norm (|v|^2 + |A^r v|^2)^{1/2}; equivalent to frac_norm on the
// truncated space.
double graph_norm(const SpectralField& field, double exponent);
// Dual-space norm with weights lambda_j^{-2r} (constant mode unweighted when
// lambda_1 = 0).
double dual_frac_norm(const SpectralField& field, double exponent);

// Plain L^2 quantities (Parseval: coefficient 2-norm equals the grid
// quadrature norm).
double l2_norm(const SpectralField& field);
double l2_inner(const SpectralField& a, const SpectralField& b);

// |Omega|^{-1} integral of the field.
double mean(const SpectralField& field);
double grid_mean(const Eigen::VectorXd& grid_values);

// Field with the constant-mode coefficient forced to zero; meaningful for
// lambda_1 = 0 bases, a plain wrapper otherwise.
class ZeroMeanField {
public:
    // Validating constructor: rejects a field whose constant-mode
    // coefficient is not negligibly small.
    explicit ZeroMeanField(SpectralField field);
    // Projecting factory: drops the constant mode.
    static ZeroMeanField project(const SpectralField& field);

    const SpectralField& inner() const { return field_; }

private:
    struct projected_tag {};
    ZeroMeanField(SpectralField field, projected_tag);
    SpectralField field_;
};

// coeffs_j <- lambda_j^{-e} coeffs_j over modes with lambda_j > 0.  With
// lambda_1 = 0 the input must have zero mean (domain error otherwise) and the
// output is again mean free; with lambda_1 > 0 it acts on all modes.
SpectralField inverse_power(const SpectralField& field, double exponent);
ZeroMeanField inverse_power_zero_mean(const ZeroMeanField& field, double exponent);

// coeffs_j <- (lambda_j^{-2r} + tau)^{-1} coeffs_j over admissible modes.
// Operator norm is at most 1/tau.
SpectralField shifted_resolvent(const SpectralField& field, double r, double tau);

} // namespace fqch
