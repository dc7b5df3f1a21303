#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "selfaffine/evaluator.hpp"
#include "selfaffine/system.hpp"

namespace selfaffine {

// Brute-force numerical checks used to cross-validate the closed-form
// exponent and spectrum machinery.

struct ChordExponent {
    double slope = 0.0;      // OLS fit of log increment vs log scale
    double std_error = 0.0;  // standard error of the slope
    bool infinite = false;   // every increment fell below 1e-14
    std::size_t points = 0;  // scales that produced a usable increment
};

// Largest two-sided chord |f(t +- h) - f(t)| per scale, fit in log-log.
ChordExponent empirical_chord_exponent(const Evaluator& ev, double t,
                                       const std::vector<double>& scales);
std::vector<double> dyadic_scales(int kmin, int kmax);  // 2^-kmin .. 2^-kmax

struct EmpiricalBin {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double alpha_center = 0.0;
    std::size_t count = 0;
    double dim = 0.0;  // log(count) / mean(-log interval length)
};
struct EmpiricalSpectrum {
    std::vector<EmpiricalBin> bins;
    std::size_t level = 0;
};

// Exponent histogram over all level-n digit strings avoiding constant maps,
// with a box-counting dimension estimate per bin.  Requires
// (#support)^level <= 2^22.
EmpiricalSpectrum empirical_spectrum(const SelfAffineSystem& sys, std::size_t level,
                                     std::size_t nbins);

enum class DerivativeVerdict { ToZero, ToInfinity, Bounded };
std::string derivative_verdict_name(DerivativeVerdict v);

// Tracks the chord slope ratio prod(lambda/c) along the digit expansion of
// t down to `depth` (<= 40) and reports where the difference quotient is
// headed: a constant map or a consistently shrinking ratio reports ToZero,
// a consistently growing ratio ToInfinity, otherwise the drift sign decides
// with Bounded for a balanced ratio.
DerivativeVerdict empirical_derivative_test(const SelfAffineSystem& sys, double t,
                                            std::size_t depth);

}  // namespace selfaffine
