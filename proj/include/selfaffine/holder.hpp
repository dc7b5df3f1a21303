#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selfaffine/coding.hpp"
#include "selfaffine/system.hpp"

namespace selfaffine {

enum class HolderCase {
    DensityFormula,   // tail digit frequencies (eventually periodic coding)
    Endpoint1Inf,     // branch point, a coding ends in the first digit
    EndpointMInf,     // branch point, both codings end in the last digit
    EndpointAlt,      // branch point, both codings alternate first/last
    InfiniteI0,       // coding reaches a constant map: exponent +inf
    FiniteEstimate,   // truncated coding: interval estimate
};
std::string holder_case_name(HolderCase k);

struct HolderResult {
    double value = 0.0;  // point value (+inf allowed); equals lo for estimates
    double lo = 0.0;
    double hi = 0.0;
    HolderCase kind = HolderCase::DensityFormula;
    double k_const = 0.0;   // boundary-run correction constant
    bool one_sided = false; // answer describes one side of t only
};

// True when the first digit's exponent exceeds the last digit's, in which
// case analysis runs on the reversed system (t -> 1-t) transparently.
bool needs_reversal(const SelfAffineSystem& sys);

// Boundary-run correction constant, computed after normalization:
// K = (log c_m / log c_1) log lambda_1 - log lambda_m, or 0 with a constant
// last map.  Nonnegative.
double holder_K(const SelfAffineSystem& sys);

// Pointwise Holder (chord) exponent of f at the point with the given
// coding.  Eventually periodic codings get exact values; finite codings get
// the window estimate [lo, hi] over n in [N/4, N].
HolderResult holder_exponent(const SelfAffineSystem& sys, const Coding& cd);

// Exponent at a numeric t via its digit expansion.
HolderResult holder_exponent_at(const SelfAffineSystem& sys, double t, std::size_t depth = 48);

struct Classification {
    std::string kind;  // nowhere-differentiable | ae-nondifferentiable | ae-differentiable
    std::optional<double> dim_diff;  // Hausdorff dimension of the differentiability set
    double dim_nondiff = 1.0;        // dimension of its complement
    double drift_sum = 0.0;          // sum c_i log(lambda_i / c_i)
    double hat_drift = 0.0;          // sum over support of c^s_hat log(lambda / c)
    std::string criterion;           // which inequality decided the class
};

// Differentiability trichotomy from the sign structure of lambda vs c.
Classification classify(const SelfAffineSystem& sys);

// Factorization f = h . g with g the increasing self-affine homeomorphism
// of [0,1] built from lambda^s (sum lambda_i^s = 1, s >= 1) and h the
// monofractal curve with exponent 1/s everywhere.
struct Subordination {
    SelfAffineSystem g;
    SelfAffineSystem h;
    double s = 1.0;
    std::vector<std::size_t> support;  // digit of f behind each digit of h
};
Subordination subordinate(const SelfAffineSystem& sys);

}  // namespace selfaffine
