#include "fqch/spectral_field.hpp"

#include <cmath>

namespace fqch {

namespace {

void require_same_basis(const SpectralField& a, const SpectralField& b) {
    if (a.basis().get() != b.basis().get())
        throw config_error("spectral fields live in different bases");
}

void require_finite(const Eigen::VectorXd& v, const char* who) {
    if (!v.allFinite()) throw std::domain_error(std::string(who) + ": non-finite input");
}

} // namespace

SpectralField::SpectralField(BasisPtr basis, Eigen::VectorXd coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (!basis_) throw config_error("SpectralField: null basis");
    if (coeffs_.size() != basis_->size())
        throw config_error("SpectralField: coefficient count does not match basis size");
}

SpectralField SpectralField::zero(BasisPtr basis) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(basis->size());
    return SpectralField(std::move(basis), std::move(c));
}

SpectralField SpectralField::from_grid(BasisPtr basis, const Eigen::VectorXd& grid_values) {
    Eigen::VectorXd c = basis->to_spectral(grid_values);
    return SpectralField(std::move(basis), std::move(c));
}

SpectralField SpectralField::unit_mode(BasisPtr basis, int j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(basis->size());
    c[j] = 1.0;
    return SpectralField(std::move(basis), std::move(c));
}

SpectralField SpectralField::constant(BasisPtr basis, double value) {
    Eigen::VectorXd g = Eigen::VectorXd::Constant(basis->size(), value);
    return from_grid(std::move(basis), g);
}

SpectralField SpectralField::operator+(const SpectralField& other) const {
    require_same_basis(*this, other);
    return SpectralField(basis_, coeffs_ + other.coeffs_);
}

SpectralField SpectralField::operator-(const SpectralField& other) const {
    require_same_basis(*this, other);
    return SpectralField(basis_, coeffs_ - other.coeffs_);
}

SpectralField SpectralField::operator*(double s) const {
    return SpectralField(basis_, coeffs_ * s);
}

SpectralField apply_power(const SpectralField& field, double exponent) {
    require_finite(field.coeffs(), "apply_power");
    if (exponent < 0.0) throw std::domain_error("apply_power: exponent must be nonnegative");
    if (exponent == 0.0) return field;
    const EigenBasis& basis = *field.basis();
    Eigen::VectorXd c = field.coeffs();
    for (int j = 0; j < basis.size(); ++j) {
        const double lam = basis.eigenvalue(j);
        c[j] = (lam == 0.0) ? 0.0 : std::pow(lam, exponent) * c[j];
    }
    return SpectralField(field.basis(), std::move(c));
}

double frac_inner(const SpectralField& a, const SpectralField& b, double exponent) {
    require_same_basis(a, b);
    if (exponent < 0.0) throw std::domain_error("frac_inner: exponent must be nonnegative");
    const EigenBasis& basis = *a.basis();
    double acc = 0.0;
    for (int j = 0; j < basis.size(); ++j) {
        const double lam = basis.eigenvalue(j);
        double wgt;
        if (lam == 0.0)
            wgt = basis.first_eigenvalue_zero() ? 1.0 : 0.0;
        else
            wgt = std::pow(lam, 2.0 * exponent);
        acc += wgt * a.coeffs()[j] * b.coeffs()[j];
    }
    return acc;
}

double frac_norm(const SpectralField& field, double exponent) {
    return std::sqrt(frac_inner(field, field, exponent));
}

double graph_norm(const SpectralField& field, double exponent) {
    double pow_part = l2_norm(apply_power(field, exponent));
    double l2 = l2_norm(field);
    return std::sqrt(l2 * l2 + pow_part * pow_part);
}

double dual_frac_norm(const SpectralField& field, double exponent) {
    const EigenBasis& basis = *field.basis();
    double acc = 0.0;
    for (int j = 0; j < basis.size(); ++j) {
        const double lam = basis.eigenvalue(j);
        const double c = field.coeffs()[j];
        if (lam == 0.0)
            acc += basis.first_eigenvalue_zero() ? c * c : 0.0;
        else
            acc += std::pow(lam, -2.0 * exponent) * c * c;
    }
    return std::sqrt(acc);
}

double l2_norm(const SpectralField& field) { return field.coeffs().norm(); }

double l2_inner(const SpectralField& a, const SpectralField& b) {
    require_same_basis(a, b);
    return a.coeffs().dot(b.coeffs());
}

double grid_mean(const Eigen::VectorXd& grid_values) {
    return grid_values.mean();
}

double mean(const SpectralField& field) {
    const EigenBasis& basis = *field.basis();
    if (basis.first_eigenvalue_zero())
        return field.coeffs()[0] / std::sqrt(basis.domain().volume());
    // No constant mode in the basis: integrate the representation exactly.
    double integral = 0.0;
    for (int j = 0; j < basis.size(); ++j)
        integral += field.coeffs()[j] * basis.eigenfunction_integral(j);
    return integral / basis.domain().volume();
}

ZeroMeanField::ZeroMeanField(SpectralField field) : field_(std::move(field)) {
    const EigenBasis& basis = *field_.basis();
    if (basis.first_eigenvalue_zero()) {
        const double c0 = field_.coeffs()[0];
        const double scale = 1.0 + field_.coeffs().norm();
        if (std::abs(c0) > 1e-12 * scale)
            throw std::domain_error("ZeroMeanField: nonzero constant-mode coefficient");
        Eigen::VectorXd c = field_.coeffs();
        c[0] = 0.0;
        field_ = SpectralField(field_.basis(), std::move(c));
    }
}

ZeroMeanField::ZeroMeanField(SpectralField field, projected_tag) : field_(std::move(field)) {}

ZeroMeanField ZeroMeanField::project(const SpectralField& field) {
    Eigen::VectorXd c = field.coeffs();
    if (field.basis()->first_eigenvalue_zero()) c[0] = 0.0;
    return ZeroMeanField(SpectralField(field.basis(), std::move(c)), projected_tag{});
}

SpectralField inverse_power(const SpectralField& field, double exponent) {
    if (!(exponent > 0.0)) throw std::domain_error("inverse_power: exponent must be positive");
    require_finite(field.coeffs(), "inverse_power");
    const EigenBasis& basis = *field.basis();
    Eigen::VectorXd c = field.coeffs();
    if (basis.first_eigenvalue_zero()) {
        const double scale = 1.0 + c.norm();
        if (std::abs(c[0]) > 1e-12 * scale)
            throw std::domain_error("inverse_power: nonzero mean with lambda_1 = 0");
        c[0] = 0.0;
    }
    for (int j = 0; j < basis.size(); ++j) {
        const double lam = basis.eigenvalue(j);
        if (lam > 0.0) c[j] *= std::pow(lam, -exponent);
    }
    return SpectralField(field.basis(), std::move(c));
}

ZeroMeanField inverse_power_zero_mean(const ZeroMeanField& field, double exponent) {
    return ZeroMeanField::project(inverse_power(field.inner(), exponent));
}

SpectralField shifted_resolvent(const SpectralField& field, double r, double tau) {
    if (!(tau > 0.0)) throw config_error("shifted_resolvent: tau must be positive");
    if (!(r > 0.0)) throw config_error("shifted_resolvent: exponent must be positive");
    require_finite(field.coeffs(), "shifted_resolvent");
    const EigenBasis& basis = *field.basis();
    Eigen::VectorXd c = field.coeffs();
    for (int j = 0; j < basis.size(); ++j) {
        const double lam = basis.eigenvalue(j);
        if (lam == 0.0) {
            if (basis.first_eigenvalue_zero()) {
                const double scale = 1.0 + field.coeffs().norm();
                if (std::abs(c[j]) > 1e-12 * scale)
                    throw std::domain_error("shifted_resolvent: nonzero mean with lambda_1 = 0");
                c[j] = 0.0;
            }
        } else {
            c[j] /= std::pow(lam, -2.0 * r) + tau;
        }
    }
    return SpectralField(field.basis(), std::move(c));
}

} // namespace fqch
