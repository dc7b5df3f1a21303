#include "selfaffine/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace selfaffine {

double solve_decreasing(const std::function<double(double)>& g, double lo, double hi,
                        double xtol, int max_expand, int max_iter) {
    if (lo > hi) std::swap(lo, hi);
    double glo = g(lo);
    double step = std::max(1.0, hi - lo);
    for (int k = 0; k < max_expand && glo < 0.0; ++k) {
        lo -= step;
        step *= 2.0;
        glo = g(lo);
    }
    double ghi = g(hi);
    step = std::max(1.0, hi - lo);
    for (int k = 0; k < max_expand && ghi > 0.0; ++k) {
        hi += step;
        step *= 2.0;
        ghi = g(hi);
    }
    if (!(glo >= 0.0 && ghi <= 0.0))
        throw std::runtime_error("solve_decreasing: could not bracket a root");
    for (int k = 0; k < max_iter; ++k) {
        if (hi - lo <= xtol * std::max(1.0, std::abs(lo) + std::abs(hi))) break;
        double mid = 0.5 * (lo + hi);
        if (g(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double solve_increasing(const std::function<double(double)>& g, double lo, double hi,
                        double xtol, int max_expand, int max_iter) {
    auto neg = [&g](double x) { return -g(x); };
    return solve_decreasing(neg, lo, hi, xtol, max_expand, max_iter);
}

std::string fmt_g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace selfaffine
