#include "selfaffine/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "selfaffine/numeric.hpp"

namespace selfaffine {

namespace {

constexpr double kEndpointTol = 1e-9;
constexpr double kRhoTie = 1e-12;

struct LogData {
    std::vector<double> ll;  // log lambda_i over the support
    std::vector<double> lc;  // log c_i over the support
};

LogData support_logs(const SelfAffineSystem& sys) {
    LogData ld;
    for (std::size_t i = 1; i <= sys.m; ++i) {
        if (sys.lambda(i) <= 0.0) continue;
        ld.ll.push_back(std::log(sys.lambda(i)));
        ld.lc.push_back(std::log(sys.c[i - 1]));
    }
    if (ld.ll.empty()) throw std::invalid_argument("system has no expanding digits");
    return ld;
}

// log sum exp(q*ll + b*lc); root in b of this = 0 defines beta(q).
double log_pressure(const LogData& ld, double q, double b) {
    double mx = -kInf;
    for (std::size_t k = 0; k < ld.ll.size(); ++k)
        mx = std::max(mx, q * ld.ll[k] + b * ld.lc[k]);
    double s = 0.0;
    for (std::size_t k = 0; k < ld.ll.size(); ++k)
        s += std::exp(q * ld.ll[k] + b * ld.lc[k] - mx);
    return mx + std::log(s);
}

double beta_of(const LogData& ld, double q) {
    auto g = [&](double b) { return log_pressure(ld, q, b); };
    return solve_decreasing(g, -4.0, 4.0);
}

// Weighted mean exponent at inverse temperature q (decreasing in q, runs
// from alpha_max at -inf to alpha_min at +inf).
double alpha_of(const LogData& ld, double q) {
    double b = beta_of(ld, q);
    double mx = -kInf;
    for (std::size_t k = 0; k < ld.ll.size(); ++k)
        mx = std::max(mx, q * ld.ll[k] + b * ld.lc[k]);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ld.ll.size(); ++k) {
        double w = std::exp(q * ld.ll[k] + b * ld.lc[k] - mx);
        num += w * ld.ll[k];
        den += w * ld.lc[k];
    }
    return num / den;
}

// Root s of sum c_i^s = 1 restricted to the given digits (1-based).
double partition_dimension(const SelfAffineSystem& sys, const std::vector<std::size_t>& digits) {
    auto g = [&](double s) {
        double mx = -kInf;
        for (std::size_t i : digits) mx = std::max(mx, s * std::log(sys.c[i - 1]));
        double sum = 0.0;
        for (std::size_t i : digits) sum += std::exp(s * std::log(sys.c[i - 1]) - mx);
        return mx + std::log(sum);
    };
    return solve_decreasing(g, 0.0, 2.0);
}

}  // namespace

SpectrumProfile spectrum_profile(const SelfAffineSystem& sys) {
    SpectrumProfile pr;
    pr.rho.resize(sys.m);
    for (std::size_t i = 1; i <= sys.m; ++i) {
        double l = sys.lambda(i);
        pr.rho[i - 1] = l > 0.0 ? std::log(l) / std::log(sys.c[i - 1]) : kInf;
        (l > 0.0 ? pr.i_plus : pr.i_zero).push_back(i);
    }
    pr.alpha_min = kInf;
    pr.alpha_max = -kInf;
    for (std::size_t i : pr.i_plus) {
        pr.alpha_min = std::min(pr.alpha_min, pr.rho[i - 1]);
        pr.alpha_max = std::max(pr.alpha_max, pr.rho[i - 1]);
    }
    LogData ld = support_logs(sys);
    pr.s_hat = beta_of(ld, 0.0);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ld.ll.size(); ++k) {
        double w = std::exp(pr.s_hat * ld.lc[k]);
        num += w * ld.ll[k];
        den += w * ld.lc[k];
    }
    pr.alpha_hat = num / den;
    std::vector<std::size_t> amin_set, amax_set;
    for (std::size_t i : pr.i_plus) {
        if (std::abs(pr.rho[i - 1] - pr.alpha_min) <= kRhoTie) amin_set.push_back(i);
        if (std::abs(pr.rho[i - 1] - pr.alpha_max) <= kRhoTie) amax_set.push_back(i);
    }
    pr.s_min = partition_dimension(sys, amin_set);
    pr.s_max = partition_dimension(sys, amax_set);
    return pr;
}

double beta_exponent(const SelfAffineSystem& sys, double q) {
    return beta_of(support_logs(sys), q);
}

double beta_star(const SelfAffineSystem& sys, double alpha) {
    SpectrumProfile pr = spectrum_profile(sys);
    if (alpha < pr.alpha_min - kEndpointTol || alpha > pr.alpha_max + kEndpointTol) return -kInf;
    if (pr.alpha_max - pr.alpha_min <= kRhoTie) return pr.s_hat;
    if (std::abs(alpha - pr.alpha_min) <= kEndpointTol) return pr.s_min;
    if (std::abs(alpha - pr.alpha_max) <= kEndpointTol) return pr.s_max;
    LogData ld = support_logs(sys);
    auto g = [&](double q) { return alpha_of(ld, q) - alpha; };
    double qs = solve_decreasing(g, -32.0, 32.0, 1e-13);
    return alpha * qs + beta_of(ld, qs);
}

SpectrumTable spectrum_table(const SelfAffineSystem& sys, std::size_t grid) {
    if (grid < 2) throw std::invalid_argument("grid must have at least 2 points");
    SpectrumProfile pr = spectrum_profile(sys);
    SpectrumTable tab;
    tab.infinite_atom = !pr.i_zero.empty();
    if (pr.alpha_max - pr.alpha_min <= kRhoTie) {
        tab.rows.push_back({pr.alpha_min, pr.s_hat});
        return tab;
    }
    for (std::size_t k = 0; k < grid; ++k) {
        double alpha = pr.alpha_min + (pr.alpha_max - pr.alpha_min) * static_cast<double>(k) /
                                          static_cast<double>(grid - 1);
        tab.rows.push_back({alpha, beta_star(sys, alpha)});
    }
    return tab;
}

std::vector<double> duality_maximizer(const SelfAffineSystem& sys, double alpha) {
    SpectrumProfile pr = spectrum_profile(sys);
    if (alpha < pr.alpha_min - kEndpointTol || alpha > pr.alpha_max + kEndpointTol)
        throw std::invalid_argument("alpha outside the spectrum range");
    std::vector<double> p(sys.m, 0.0);
    auto fill_endpoint = [&](double target, double s) {
        for (std::size_t i : pr.i_plus)
            if (std::abs(pr.rho[i - 1] - target) <= kRhoTie)
                p[i - 1] = std::pow(sys.c[i - 1], s);
    };
    if (pr.alpha_max - pr.alpha_min <= kRhoTie || std::abs(alpha - pr.alpha_min) <= kEndpointTol) {
        fill_endpoint(pr.alpha_min, pr.s_min);
    } else if (std::abs(alpha - pr.alpha_max) <= kEndpointTol) {
        fill_endpoint(pr.alpha_max, pr.s_max);
    } else {
        LogData ld = support_logs(sys);
        auto g = [&](double q) { return alpha_of(ld, q) - alpha; };
        double qs = solve_decreasing(g, -32.0, 32.0, 1e-13);
        double b = beta_of(ld, qs);
        for (std::size_t i : pr.i_plus)
            p[i - 1] = std::exp(qs * std::log(sys.lambda(i)) + b * std::log(sys.c[i - 1]));
    }
    double sum = 0.0;
    for (double v : p) sum += v;
    for (double& v : p) v /= sum;
    return p;
}

std::vector<double> binary_maximizer_closed_form(const SelfAffineSystem& sys, double alpha) {
    if (sys.m != 2) throw std::invalid_argument("closed form requires m = 2");
    double l1 = std::log(sys.lambda(1)), l2 = std::log(sys.lambda(2));
    double c1 = std::log(sys.c[0]), c2 = std::log(sys.c[1]);
    double p1 = (alpha * c2 - l2) / (l1 - l2 - alpha * (c1 - c2));
    return {p1, 1.0 - p1};
}

double entropy_dimension(const SelfAffineSystem& sys, const std::vector<double>& p) {
    if (p.size() != sys.m) throw std::invalid_argument("distribution has wrong length");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sys.m; ++i) {
        if (p[i] <= 0.0) continue;
        num += p[i] * std::log(p[i]);
        den += p[i] * std::log(sys.c[i]);
    }
    return num / den;
}

double frequency_exponent(const SelfAffineSystem& sys, const std::vector<double>& freq) {
    if (freq.size() != sys.m) throw std::invalid_argument("frequency vector has wrong length");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sys.m; ++i) {
        if (freq[i] <= 0.0) continue;
        num += freq[i] * safe_log(sys.lambda(i + 1));
        den += freq[i] * std::log(sys.c[i]);
    }
    return num / den;  // +inf when a zero map carries frequency
}

}  // namespace selfaffine
