#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "selfaffine/similitude.hpp"

namespace selfaffine {

// Self-affine function f : [0,1] -> R^d determined by a partition of [0,1]
// into m consecutive intervals of lengths c_i, per-interval time reversal
// flags epsilon_i, and contractive similitudes S_i.  f is the unique
// continuous solution of f(t) = S_i(f(phi_i^{-1}(t))) on the i-th interval,
// where phi_i(t) = (-1)^{epsilon_i} c_i t + sigma_i maps [0,1] onto it.
// The endpoint gauge is fixed: f(0) = 0, f(1) = e1.
struct SelfAffineSystem {
    std::size_t d = 1;
    std::size_t m = 2;
    std::vector<double> c;        // interval lengths, positive, sum 1
    std::vector<int> epsilon;     // 0 or 1
    std::vector<Similitude> maps;

    // All digit/index arguments below are 1-based, matching coding digits.
    double lambda(std::size_t i) const { return maps[i - 1].scale; }
    std::vector<double> lambdas() const;
    std::vector<std::size_t> support() const;    // digits with lambda > 0
    std::vector<std::size_t> zero_set() const;   // digits with lambda == 0
    bool has_zero_maps() const;
    Vec point_a() const;  // f(0) = origin
    Vec point_b() const;  // f(1) = first basis vector
    double cum_c(std::size_t i) const;           // c_1 + ... + c_i
    double sigma(std::size_t i) const;           // offset of phi_i
    double phi(std::size_t i, double t) const;
    double phi_inv(std::size_t i, double t) const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::string str() const;
};

// Checks structure, partition, orthogonality, endpoint matching conditions,
// the total-contraction lower bound, and nondegeneracy (lambda != c).
ValidationReport validate(const SelfAffineSystem& sys);

// Plane-filling two-map curve with c = (1/2, 1/2), contraction factors
// (sin theta, cos theta), theta in (0, pi/4).
SelfAffineSystem preset_polya(double theta);
// d=1, m=3, c=(1/3,1/3,1/3): S1 = a x, S2 = a + (1-2a)x, S3 = a x + 1 - a.
// a in (0,1), a != 1/3 (degenerate).  a = 1/2 gives the Cantor function.
SelfAffineSystem preset_okamoto(double a);
// d=1, m=2, c=(1/2,1/2): S1 = a x, S2 = a + (1-a)x.  a in (0,1), a != 1/2.
SelfAffineSystem preset_riesz_nagy(double a);
// Variant of the previous with the second map reversed in time and space:
// S2 = 1 - (1-a)x, epsilon = (0,1).  a in (0,1), a != 1/2.
SelfAffineSystem preset_gray(double a);

// Planar curve with prescribed contraction pair (l1, l2), l1 + l2 >= 1,
// c = (1/2,1/2), epsilon = (0,0); the two reflections meet at the apex of
// the triangle with side lengths l1, l2 over [0,1].  planar_two_map(sin t,
// cos t) reproduces preset_polya(t).
SelfAffineSystem planar_two_map(double lambda1, double lambda2);

// Distribution function of a self-similar measure: intervals J_j = [s_j,t_j]
// (disjoint, ordered, within [0,1]), orientation flags, and weights pi_j.
struct MeasureSpec {
    std::vector<std::array<double, 2>> intervals;
    std::vector<int> orientations;  // 0 increasing, 1 decreasing
    std::vector<double> weights;    // positive, sum 1
};

// Builds the system whose function is the distribution function of the
// measure: one map per interval plus a constant map per gap.
SelfAffineSystem from_measure(const MeasureSpec& spec);

// Conjugation by t -> 1-t in time and x -> b-x in space.  Reverses the
// digit order; digit i of the result corresponds to digit m+1-i.
SelfAffineSystem reversed(const SelfAffineSystem& sys);

}  // namespace selfaffine
