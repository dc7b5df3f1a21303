#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

namespace selfaffine {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log with log(0) = -inf instead of a domain error.
inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

// Root of a continuous decreasing function g.  The initial bracket [lo, hi]
// is expanded geometrically until g(lo) >= 0 >= g(hi), then bisected until
// the interval width drops below xtol (relative to the magnitude of the
// iterates).  Returns the bracket midpoint.
double solve_decreasing(const std::function<double(double)>& g, double lo, double hi,
                        double xtol = 1e-15, int max_expand = 200, int max_iter = 200);

// Root of a continuous increasing function, same contract.
double solve_increasing(const std::function<double(double)>& g, double lo, double hi,
                        double xtol = 1e-15, int max_expand = 200, int max_iter = 200);

// snprintf("%.12g") helper used for all CSV/report formatting.
std::string fmt_g12(double x);

}  // namespace selfaffine
