#include "fqch/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fqch {

namespace {

// (1+s) ln(1+s) with the convention 0 ln 0 = 0.
double xlogx(double s) { return s > 0.0 ? s * std::log(s) : 0.0; }

[[noreturn]] void outside_interval(const char* who, double v) {
    std::ostringstream msg;
    msg << who << ": argument " << v << " outside [-1,1]";
    throw std::domain_error(msg.str());
}

} // namespace

double barrier_h(double v) {
    if (std::abs(v) > 1.0) outside_interval("barrier_h", v);
    return xlogx(1.0 + v) + xlogx(1.0 - v);
}

double barrier_h_prime(double v) {
    if (std::abs(v) >= 1.0) outside_interval("barrier_h_prime", v);
    return std::log((1.0 + v) / (1.0 - v));
}

double barrier_h_second(double v) {
    if (std::abs(v) >= 1.0) outside_interval("barrier_h_second", v);
    return 2.0 / (1.0 - v * v);
}

double QuenchSchedule::phi(double alpha) const {
    if (!(alpha >= 0.0)) throw std::domain_error("phi: alpha must be nonnegative");
    switch (phi_kind) {
        case PhiKind::linear: return alpha;
        case PhiKind::power: return std::pow(alpha, phi_power);
    }
    return alpha;
}

void QuenchSchedule::validate() const {
    if (phi_kind == PhiKind::power && !(phi_power >= 1.0))
        throw config_error("QuenchSchedule: phi power must be >= 1");
    for (std::size_t i = 0; i < alpha_sequence.size(); ++i) {
        if (!(alpha_sequence[i] > 0.0))
            throw config_error("QuenchSchedule: alphas must be positive");
        if (i > 0 && !(alpha_sequence[i] < alpha_sequence[i - 1]))
            throw config_error("QuenchSchedule: alpha sequence must be strictly decreasing");
    }
}

QuenchEval quench_potential(double v, double alpha, const QuenchSchedule& schedule) {
    if (!(alpha > 0.0)) throw std::domain_error("quench_potential: alpha must be positive");
    const double scale = schedule.phi(alpha);
    return {scale * barrier_h(v), scale * barrier_h_prime(v), scale * barrier_h_second(v)};
}

double yosida_indicator(double v, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("yosida_indicator: lambda must be positive");
    const double proj = std::clamp(v, -1.0, 1.0);
    return (v - proj) / lambda;
}

double yosida_envelope(double v, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("yosida_envelope: lambda must be positive");
    const double d = v - std::clamp(v, -1.0, 1.0);
    return d * d / (2.0 * lambda);
}

double f_regular(double v) {
    const double s = v * v - 1.0;
    return 0.25 * s * s;
}

double f_regular_prime(double v) { return v * v * v - v; }

double f_logarithmic(double v, double c1) {
    if (std::abs(v) > 1.0) outside_interval("f_logarithmic", v);
    return barrier_h(v) - c1 * v * v;
}

double f_logarithmic_prime(double v, double c1) {
    return barrier_h_prime(v) - 2.0 * c1 * v;
}

double f_obstacle(double v, double c1) {
    if (std::abs(v) > 1.0) outside_interval("f_obstacle", v);
    return -c1 * v * v;
}

double BarrierEval::clamp(double v) const {
    constexpr double limit = 1.0 - 1e-12;
    if (std::abs(v) > limit) {
        ++clamps_;
        return std::copysign(limit, v);
    }
    return v;
}

double BarrierEval::h(double v) const { return barrier_h(std::clamp(v, -1.0, 1.0)); }
double BarrierEval::h_prime(double v) const { return barrier_h_prime(clamp(v)); }
double BarrierEval::h_second(double v) const { return barrier_h_second(clamp(v)); }

} // namespace fqch
