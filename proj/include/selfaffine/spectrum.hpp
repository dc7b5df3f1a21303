#pragma once

#include <cstddef>
#include <vector>

#include "selfaffine/system.hpp"

namespace selfaffine {

// Exponent data of the system.  rho[i-1] = log(lambda_i)/log(c_i) is the
// exponent realized by the constant coding of digit i (+inf on constant
// maps).  alpha_hat is the exponent at Lebesgue-almost every point, s_hat
// the root of sum_{lambda_i>0} c_i^s = 1, and s_min/s_max the spectrum
// values at the extreme exponents.
struct SpectrumProfile {
    std::vector<double> rho;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    double alpha_hat = 0.0;
    double s_hat = 0.0;
    double s_min = 0.0;
    double s_max = 0.0;
    std::vector<std::size_t> i_zero;  // 1-based digits with lambda == 0
    std::vector<std::size_t> i_plus;  // 1-based digits with lambda > 0
};

SpectrumProfile spectrum_profile(const SelfAffineSystem& sys);

// Root beta of sum_{lambda_i>0} lambda_i^q c_i^beta = 1 (decreasing, convex,
// beta(0) = s_hat).
double beta_exponent(const SelfAffineSystem& sys, double q);

// Hausdorff dimension of the level set of exponent alpha: the Legendre-type
// transform inf_q (alpha q + beta(q)), with the endpoint values s_min/s_max
// at alpha_min/alpha_max and -inf outside [alpha_min, alpha_max].
double beta_star(const SelfAffineSystem& sys, double alpha);

struct SpectrumRow {
    double alpha = 0.0;
    double dim = 0.0;
};
struct SpectrumTable {
    std::vector<SpectrumRow> rows;
    // Set when constant maps exist: exponent +inf then occurs on a set of
    // full Lebesgue measure.
    bool infinite_atom = false;
};
// Uniform alpha grid over [alpha_min, alpha_max] with `grid` points.
SpectrumTable spectrum_table(const SelfAffineSystem& sys, std::size_t grid);

// Digit distribution maximizing the entropy dimension among distributions
// with frequency exponent alpha; zero on constant maps.  Throws if alpha
// lies outside [alpha_min, alpha_max].
std::vector<double> duality_maximizer(const SelfAffineSystem& sys, double alpha);

// Closed form of the maximizer for m = 2.
std::vector<double> binary_maximizer_closed_form(const SelfAffineSystem& sys, double alpha);

// sum p_i log p_i / sum p_i log c_i  (0 log 0 = 0; base-invariant).
double entropy_dimension(const SelfAffineSystem& sys, const std::vector<double>& p);

// Exponent of a coding with digit frequencies freq:
// sum freq_i log lambda_i / sum freq_i log c_i  (+inf when a constant map
// carries positive frequency).
double frequency_exponent(const SelfAffineSystem& sys, const std::vector<double>& freq);

}  // namespace selfaffine
