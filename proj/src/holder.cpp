#include "selfaffine/holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "selfaffine/numeric.hpp"
#include "selfaffine/spectrum.hpp"

namespace selfaffine {

namespace {

enum class TailKind { Ones, Ems, Alt, Other };

TailKind tail_kind(const Coding& cd, std::size_t m) {
    const std::vector<int>& t = cd.tail;
    int mm = static_cast<int>(m);
    if (t.size() == 1 && t[0] == 1) return TailKind::Ones;
    if (t.size() == 1 && t[0] == mm) return TailKind::Ems;
    if (t.size() == 2 && ((t[0] == 1 && t[1] == mm) || (t[0] == mm && t[1] == 1)))
        return TailKind::Alt;
    return TailKind::Other;
}

bool visits_zero_map(const SelfAffineSystem& sys, const Coding& cd) {
    for (int d : cd.prefix)
        if (sys.lambda(static_cast<std::size_t>(d)) == 0.0) return true;
    for (int d : cd.tail)
        if (sys.lambda(static_cast<std::size_t>(d)) == 0.0) return true;
    return false;
}

double rho_of(const SelfAffineSystem& sys, std::size_t i) {
    double l = sys.lambda(i);
    return l > 0.0 ? std::log(l) / std::log(sys.c[i - 1]) : kInf;
}

HolderResult exact_result(double value, HolderCase kind, double K, bool one_sided) {
    HolderResult r;
    r.value = r.lo = r.hi = value;
    r.kind = kind;
    r.k_const = K;
    r.one_sided = one_sided;
    return r;
}

// Dispatch on the tail pattern of a branch point's codings (normalized
// system: first digit carries the smallest exponent).
HolderResult branch_dispatch(const SelfAffineSystem& sys, TailKind k1, TailKind k2, double K,
                             bool one_sided) {
    std::size_t m = sys.m;
    if (k1 == TailKind::Ones || k2 == TailKind::Ones)
        return exact_result(rho_of(sys, 1), HolderCase::Endpoint1Inf, K, one_sided);
    if (k1 == TailKind::Ems && k2 == TailKind::Ems)
        return exact_result(rho_of(sys, m), HolderCase::EndpointMInf, K, one_sided);
    if ((k1 == TailKind::Alt || k1 == TailKind::Ems) &&
        (k2 == TailKind::Alt || k2 == TailKind::Ems)) {
        double val = std::log(sys.lambda(1) * sys.lambda(m)) /
                     std::log(sys.c[0] * sys.c[m - 1]);
        return exact_result(val, HolderCase::EndpointAlt, K, one_sided);
    }
    throw std::logic_error("branch point with unexpected coding tails");
}

}  // namespace

std::string holder_case_name(HolderCase k) {
    switch (k) {
        case HolderCase::DensityFormula: return "density-formula";
        case HolderCase::Endpoint1Inf: return "endpoint-1inf";
        case HolderCase::EndpointMInf: return "endpoint-minf";
        case HolderCase::EndpointAlt: return "endpoint-alt";
        case HolderCase::InfiniteI0: return "infinite-I0";
        case HolderCase::FiniteEstimate: return "finite-n-estimate";
    }
    return "?";
}

bool needs_reversal(const SelfAffineSystem& sys) {
    return rho_of(sys, sys.m) < rho_of(sys, 1);
}

double holder_K(const SelfAffineSystem& sys_in) {
    const SelfAffineSystem sys = needs_reversal(sys_in) ? reversed(sys_in) : sys_in;
    if (sys.lambda(sys.m) == 0.0) return 0.0;
    return std::log(sys.c[sys.m - 1]) / std::log(sys.c[0]) * std::log(sys.lambda(1)) -
           std::log(sys.lambda(sys.m));
}

HolderResult holder_exponent(const SelfAffineSystem& sys_in, const Coding& cd_in) {
    Coding cd = canonicalized(cd_in);
    if (cd.prefix.empty() && cd.tail.empty())
        throw std::invalid_argument("holder_exponent: empty coding");
    bool rev = needs_reversal(sys_in);
    const SelfAffineSystem sys = rev ? reversed(sys_in) : sys_in;
    if (rev) cd = canonicalized(relabel_reversed(cd, sys.m));
    const double K = holder_K(sys);

    if (cd.periodic()) {
        if (auto pair = endpoint_codings(sys, cd)) {
            auto& [low, high] = *pair;
            bool single = coding_equal(low, high);  // t = 0 or t = 1
            if (single) {
                if (visits_zero_map(sys, low))
                    return exact_result(kInf, HolderCase::InfiniteI0, K, true);
                return branch_dispatch(sys, tail_kind(low, sys.m), tail_kind(low, sys.m), K,
                                       true);
            }
            bool z1 = visits_zero_map(sys, low);
            bool z2 = visits_zero_map(sys, high);
            if (z1 && z2) return exact_result(kInf, HolderCase::InfiniteI0, K, false);
            if (z1 || z2) {
                const Coding& clean = z1 ? high : low;
                TailKind k = tail_kind(clean, sys.m);
                return branch_dispatch(sys, k, k, K, true);
            }
            return branch_dispatch(sys, tail_kind(low, sys.m), tail_kind(high, sys.m), K,
                                   false);
        }
        if (visits_zero_map(sys, cd)) return exact_result(kInf, HolderCase::InfiniteI0, K, false);
        std::vector<double> freq = digit_frequencies(sys, cd);
        return exact_result(frequency_exponent(sys, freq), HolderCase::DensityFormula, K,
                            false);
    }

    // Truncated coding: window estimate over n in [N/4, N].
    if (visits_zero_map(sys, cd)) return exact_result(kInf, HolderCase::InfiniteI0, K, false);
    std::size_t N = cd.prefix.size();
    std::size_t n0 = std::max<std::size_t>(1, N / 4);
    double lo = kInf, hi = -kInf;
    for (std::size_t n = n0; n <= N; ++n) {
        DigitStats st = digit_stats(sys, cd, n);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 1; i <= sys.m; ++i) {
            if (st.counts[i - 1] == 0) continue;
            double cnt = static_cast<double>(st.counts[i - 1]);
            num += cnt * std::log(sys.lambda(i));
            den += cnt * std::log(sys.c[i - 1]);
        }
        num += K * static_cast<double>(st.chi.value_or(0)) * static_cast<double>(st.run_len);
        double an = num / den;
        lo = std::min(lo, an);
        hi = std::max(hi, an);
    }
    HolderResult r;
    r.value = lo;
    r.lo = lo;
    r.hi = hi;
    r.kind = HolderCase::FiniteEstimate;
    r.k_const = K;
    r.one_sided = false;
    return r;
}

HolderResult holder_exponent_at(const SelfAffineSystem& sys, double t, std::size_t depth) {
    CodingResult cr = standard_coding(sys, t, depth);
    return holder_exponent(sys, cr.standard);
}

Classification classify(const SelfAffineSystem& sys) {
    constexpr double tol = 1e-12;
    Classification cl;
    bool all_geq = true;
    for (std::size_t i = 1; i <= sys.m; ++i)
        if (sys.lambda(i) - sys.c[i - 1] < -tol) all_geq = false;
    double drift = 0.0;
    for (std::size_t i = 1; i <= sys.m; ++i) {
        if (sys.lambda(i) == 0.0) {
            drift = -kInf;
            break;
        }
        drift += sys.c[i - 1] * std::log(sys.lambda(i) / sys.c[i - 1]);
    }
    cl.drift_sum = drift;
    SpectrumProfile pr = spectrum_profile(sys);
    double hat_drift = 0.0;
    for (std::size_t i : pr.i_plus)
        hat_drift += std::pow(sys.c[i - 1], pr.s_hat) *
                     std::log(sys.lambda(i) / sys.c[i - 1]);
    cl.hat_drift = hat_drift;

    if (all_geq) {
        cl.kind = "nowhere-differentiable";
        cl.dim_diff = std::nullopt;
        cl.dim_nondiff = 1.0;
        cl.criterion = "every contraction factor at least its interval length";
        return cl;
    }
    if (drift >= -tol) {
        cl.kind = "ae-nondifferentiable";
        cl.dim_diff = beta_star(sys, 1.0);
        cl.dim_nondiff = 1.0;
        cl.criterion = "nonnegative length-weighted log ratio";
        return cl;
    }
    cl.kind = "ae-differentiable";
    cl.dim_diff = 1.0;
    if (hat_drift >= -tol) {
        cl.dim_nondiff = pr.s_hat;
        cl.criterion = "negative drift, nonnegative support drift";
    } else {
        cl.dim_nondiff = beta_star(sys, 1.0);
        cl.criterion = "negative drift and support drift";
    }
    return cl;
}

Subordination subordinate(const SelfAffineSystem& sys) {
    Subordination sub;
    auto logsum = [&](double s) {
        double mx = -kInf;
        for (std::size_t i = 1; i <= sys.m; ++i)
            if (sys.lambda(i) > 0.0) mx = std::max(mx, s * std::log(sys.lambda(i)));
        double acc = 0.0;
        for (std::size_t i = 1; i <= sys.m; ++i)
            if (sys.lambda(i) > 0.0) acc += std::exp(s * std::log(sys.lambda(i)) - mx);
        return mx + std::log(acc);
    };
    sub.s = solve_decreasing(logsum, 1.0, 4.0);
    if (sub.s < 1.0) sub.s = 1.0;  // sum lambda >= 1 puts the root at s >= 1

    SelfAffineSystem& g = sub.g;
    g.d = 1;
    g.m = sys.m;
    g.c = sys.c;
    g.epsilon.assign(sys.epsilon.begin(), sys.epsilon.end());
    double G = 0.0;  // accumulated lambda^s
    for (std::size_t i = 1; i <= sys.m; ++i) {
        double w = sys.lambda(i) > 0.0 ? std::pow(sys.lambda(i), sub.s) : 0.0;
        Similitude S;
        if (sys.epsilon[i - 1] == 0) {
            S = Similitude{w, Mat{{1.0}}, {G}};
        } else {
            S = Similitude{w, Mat{{-1.0}}, {G + w}};
        }
        if (w == 0.0) S.rotation = Mat{{1.0}};
        g.maps.push_back(S);
        G += w;
    }

    SelfAffineSystem& h = sub.h;
    h.d = sys.d;
    for (std::size_t i = 1; i <= sys.m; ++i) {
        if (sys.lambda(i) == 0.0) continue;
        sub.support.push_back(i);
        h.c.push_back(std::pow(sys.lambda(i), sub.s));
        h.epsilon.push_back(sys.epsilon[i - 1]);
        h.maps.push_back(sys.maps[i - 1]);
    }
    h.m = h.c.size();
    return sub;
}

}  // namespace selfaffine
