#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "selfaffine/coding.hpp"
#include "selfaffine/system.hpp"

namespace selfaffine {

// Evaluates f by composing the maps along a digit string until the composed
// contraction times a curve-size constant drops below the tolerance.  The
// curve-size constant D bounds max_y |y - f(0)| over the curve:
//   d = 1: exact min/max by value iteration (error < 1e-12),
//   d = 2: support-function value iteration on an angle grid, a rigorous
//          upper bound started from an invariant ball,
//   d >= 3: invariant-ball radius.
// Codings whose suffix is the coding of 0 or 1, and digit strings that hit
// a constant map, evaluate exactly (error bound 0).
class Evaluator {
  public:
    explicit Evaluator(const SelfAffineSystem& sys, double tol = 1e-12);

    struct Result {
        Vec value;
        double err = 0.0;        // bound on |value - f(t)|
        std::size_t depth = 0;   // digits consumed
    };

    Result eval(double t) const;
    Result eval(const Coding& cd) const;

    // Bound on max distance from f(0) to the curve (evaluation constant).
    double size_bound() const { return size_bound_; }
    // Estimate of the curve diameter with a rigorous bracket [lo, hi];
    // the estimate is the bracket midpoint.
    double diameter() const { return 0.5 * (diam_lo_ + diam_hi_); }
    double diameter_lo() const { return diam_lo_; }
    double diameter_hi() const { return diam_hi_; }

    // Oscillation of f over the basic interval of a digit string: product of
    // the contraction factors times the curve diameter (0 past a constant).
    double oscillation(const std::vector<int>& digits) const;

    // |f(v) - f(u)| over the basic interval [u, v] of a digit string:
    // the product of the contraction factors, exactly.
    double chord_increment(const std::vector<int>& digits) const;
    // The same quantity from the composed endpoint images (float check).
    double chord_increment_numeric(const std::vector<int>& digits) const;

    struct SamplePoint {
        double t = 0.0;
        Vec value;
        double err = 0.0;
    };
    // Curve polyline at all level-n basic interval endpoints, in t order.
    // Requires m^level <= 2^24.
    std::vector<SamplePoint> sample_curve(std::size_t level) const;

    const SelfAffineSystem& system() const { return sys_; }
    double tol() const { return tol_; }

    static constexpr std::size_t kMaxDepth = 64;

  private:
    SelfAffineSystem sys_;
    double tol_;
    double size_bound_ = 0.0;
    double diam_lo_ = 0.0;
    double diam_hi_ = 0.0;

    void compute_bounds();
    Result eval_digits(const std::vector<int>& digits, bool end_at_b) const;
};

// CSV rows "t,x1,...,xd,err" (%.12g).
std::string curve_to_csv(const std::vector<Evaluator::SamplePoint>& pts);
// Standalone SVG polyline; d = 1 plots (t, f), d = 2 plots (x1, x2).
std::string curve_to_svg(const std::vector<Evaluator::SamplePoint>& pts, std::size_t d);

}  // namespace selfaffine
