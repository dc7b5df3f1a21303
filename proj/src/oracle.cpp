#include "selfaffine/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "selfaffine/coding.hpp"
#include "selfaffine/numeric.hpp"
#include "selfaffine/spectrum.hpp"

namespace selfaffine {

namespace {

constexpr double kFlatTol = 1e-14;

}  // namespace

std::vector<double> dyadic_scales(int kmin, int kmax) {
    if (kmin > kmax) std::swap(kmin, kmax);
    std::vector<double> out;
    for (int k = kmin; k <= kmax; ++k) out.push_back(std::ldexp(1.0, -k));
    return out;
}

ChordExponent empirical_chord_exponent(const Evaluator& ev, double t,
                                       const std::vector<double>& scales) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("t must lie in [0,1]");
    ChordExponent res;
    Vec f0 = ev.eval(t).value;
    std::vector<double> xs, ys;
    for (double h : scales) {
        if (!(h > 0.0)) throw std::invalid_argument("scales must be positive");
        double inc = 0.0;
        if (t + h <= 1.0) inc = std::max(inc, vec_dist(ev.eval(t + h).value, f0));
        if (t - h >= 0.0) inc = std::max(inc, vec_dist(ev.eval(t - h).value, f0));
        if (inc < kFlatTol) continue;
        xs.push_back(std::log(h));
        ys.push_back(std::log(inc));
    }
    res.points = xs.size();
    if (xs.empty()) {
        res.infinite = true;
        res.slope = kInf;
        return res;
    }
    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("need at least two distinct scales");
    res.slope = sxy / sxx;
    if (xs.size() > 2) {
        double ss = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            double r = ys[k] - my - res.slope * (xs[k] - mx);
            ss += r * r;
        }
        res.std_error = std::sqrt(ss / (n - 2.0) / sxx);
    }
    return res;
}

EmpiricalSpectrum empirical_spectrum(const SelfAffineSystem& sys, std::size_t level,
                                     std::size_t nbins) {
    if (level == 0 || nbins == 0)
        throw std::invalid_argument("level and bin count must be positive");
    std::vector<std::size_t> sup = sys.support();
    double total = 1.0;
    for (std::size_t k = 0; k < level; ++k) {
        total *= static_cast<double>(sup.size());
        if (total > static_cast<double>(1 << 22))
            throw std::invalid_argument("too many digit strings (support^level > 2^22)");
    }
    std::vector<double> ll(sup.size()), lc(sup.size());
    for (std::size_t k = 0; k < sup.size(); ++k) {
        ll[k] = std::log(sys.lambda(sup[k]));
        lc[k] = std::log(sys.c[sup[k] - 1]);
    }
    SpectrumProfile pr = spectrum_profile(sys);
    double lo = pr.alpha_min, hi = pr.alpha_max;
    if (hi - lo < 1e-12) {
        lo -= 1e-9;
        hi += 1e-9;
    }
    std::vector<std::size_t> counts(nbins, 0);
    std::vector<double> sumlc(nbins, 0.0);

    // Odometer over support digits with running log sums.
    std::vector<std::size_t> idx(level, 0);
    std::vector<double> accl(level + 1, 0.0), accc(level + 1, 0.0);
    for (std::size_t k = 0; k < level; ++k) {
        accl[k + 1] = accl[k] + ll[0];
        accc[k + 1] = accc[k] + lc[0];
    }
    for (;;) {
        double alpha = accl[level] / accc[level];
        double pos = (alpha - lo) / (hi - lo) * static_cast<double>(nbins);
        std::size_t b = pos <= 0.0 ? 0
                                   : std::min(nbins - 1, static_cast<std::size_t>(pos));
        ++counts[b];
        sumlc[b] += accc[level];
        std::size_t k = level;
        while (k > 0 && idx[k - 1] + 1 == sup.size()) {
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k - 1; j < level; ++j) {
            accl[j + 1] = accl[j] + ll[idx[j]];
            accc[j + 1] = accc[j] + lc[idx[j]];
        }
    }

    EmpiricalSpectrum es;
    es.level = level;
    for (std::size_t b = 0; b < nbins; ++b) {
        if (counts[b] == 0) continue;
        EmpiricalBin bin;
        bin.alpha_lo = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(nbins);
        bin.alpha_hi = lo + (hi - lo) * static_cast<double>(b + 1) / static_cast<double>(nbins);
        bin.alpha_center = 0.5 * (bin.alpha_lo + bin.alpha_hi);
        bin.count = counts[b];
        double mean_neg = -sumlc[b] / static_cast<double>(counts[b]);
        bin.dim = std::log(static_cast<double>(counts[b])) / mean_neg;
        es.bins.push_back(bin);
    }
    return es;
}

std::string derivative_verdict_name(DerivativeVerdict v) {
    switch (v) {
        case DerivativeVerdict::ToZero: return "to-zero";
        case DerivativeVerdict::ToInfinity: return "to-infinity";
        case DerivativeVerdict::Bounded: return "bounded-oscillating";
    }
    return "?";
}

DerivativeVerdict empirical_derivative_test(const SelfAffineSystem& sys, double t,
                                            std::size_t depth) {
    if (depth == 0 || depth > 40)
        throw std::invalid_argument("depth must lie in [1,40]");
    CodingResult cr = standard_coding(sys, t, depth);
    std::vector<int> digits;
    if (cr.standard.periodic())
        digits = cr.standard.first_digits(depth);
    else
        digits = cr.standard.prefix;
    if (digits.empty()) digits = cr.standard.first_digits(depth);

    double L = 0.0;
    bool all_up = true, all_down = true;
    for (int d : digits) {
        double lam = sys.lambda(static_cast<std::size_t>(d));
        if (lam == 0.0) return DerivativeVerdict::ToZero;  // locally constant
        double step = std::log(lam) - std::log(sys.c[static_cast<std::size_t>(d) - 1]);
        if (step < -1e-12) all_up = false;
        if (step > 1e-12) all_down = false;
        L += step;
    }
    if (all_up && L > 1e-9) return DerivativeVerdict::ToInfinity;
    if (all_down && L < -1e-9) return DerivativeVerdict::ToZero;
    if (L > 1e-9) return DerivativeVerdict::ToInfinity;
    if (L < -1e-9) return DerivativeVerdict::ToZero;
    return DerivativeVerdict::Bounded;
}

}  // namespace selfaffine
