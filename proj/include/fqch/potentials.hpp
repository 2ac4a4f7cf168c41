#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqch/errors.hpp"

namespace fqch {

// --- logarithmic barrier h and its deep-quench scaling ----------------------

// h(v) = (1+v) ln(1+v) + (1-v) ln(1-v) on [-1,1], endpoint value 2 ln 2 by
// continuity; domain error outside (the potential is +infinity there).
double barrier_h(double v);
// h'(v) = ln((1+v)/(1-v)) and h''(v) = 2/(1-v^2), defined on the open
// interval only; both blow up at the endpoints.
double barrier_h_prime(double v);
double barrier_h_second(double v);

enum class PhiKind { linear, power };

// phi(alpha) from the quench family: strictly increasing C^1 with
// phi(alpha) -> 0 as alpha -> 0.  Linear phi(a) = a or power phi(a) = a^p.
struct QuenchSchedule {
    PhiKind phi_kind = PhiKind::linear;
    double phi_power = 1.0; // p >= 1, used for PhiKind::power
    std::vector<double> alpha_sequence;

    double phi(double alpha) const;
    void validate() const;
};

struct QuenchEval {
    double value;
    double first;
    double second;
};

// (h^alpha)(v) = phi(alpha) h(v) together with the scaled derivatives.
QuenchEval quench_potential(double v, double alpha, const QuenchSchedule& schedule);

// Yosida approximation of the subdifferential of I_{[-1,1]}:
// (v - clamp(v,-1,1)) / lambda.  Monotone, 1/lambda-Lipschitz, zero inside.
double yosida_indicator(double v, double lambda);
// Moreau envelope of I_{[-1,1]}: dist(v,[-1,1])^2 / (2 lambda).
double yosida_envelope(double v, double lambda);

// --- classic double-well potentials ----------------------------------------

double f_regular(double v);        // (v^2-1)^2 / 4
double f_regular_prime(double v);  // v^3 - v
double f_logarithmic(double v, double c1);
double f_logarithmic_prime(double v, double c1);
double f_obstacle(double v, double c1); // -c1 v^2 on [-1,1], domain error outside

// --- smooth concave part f2 -------------------------------------------------

// f2(v) = -c1 v^2 plus optional cubic/quartic corrections.  f2' is Lipschitz
// on [-1,1] with the constant reported by lipschitz().
struct SmoothPart {
    double c1 = 1.0;
    double cubic = 0.0;
    double quartic = 0.0;

    double value(double v) const { return -c1 * v * v + cubic * v * v * v + quartic * v * v * v * v; }
    double prime(double v) const { return -2.0 * c1 * v + 3.0 * cubic * v * v + 4.0 * quartic * v * v * v; }
    double second(double v) const { return -2.0 * c1 + 6.0 * cubic * v + 12.0 * quartic * v * v; }
    double lipschitz() const { return 2.0 * c1 + 6.0 * std::abs(cubic) + 12.0 * std::abs(quartic); }
    void validate() const {
        if (!(c1 > 0.0)) throw config_error("SmoothPart: c1 must be positive");
    }
};

// Barrier derivatives with the solver-facing safeguard: arguments are clamped
// to |v| <= 1 - 1e-12 and every clamp is counted, so a run can report how
// often the safeguard fired.
class BarrierEval {
public:
    double h(double v) const;
    double h_prime(double v) const;
    double h_second(double v) const;
    std::int64_t clamp_count() const { return clamps_; }

private:
    double clamp(double v) const;
    mutable std::int64_t clamps_ = 0;
};

} // namespace fqch
