#include "selfaffine/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "selfaffine/numeric.hpp"

namespace selfaffine {

namespace {

constexpr std::size_t kSupportGrid = 2048;

// Anchor cloud: images of a and b under compositions, expanded widest-first
// until every remaining piece has contraction below leaf_tol.
std::vector<Vec> anchor_cloud(const SelfAffineSystem& sys, double leaf_tol,
                              std::size_t max_nodes) {
    struct Node {
        double scale;
        Similitude acc;
    };
    auto cmp = [](const Node& a, const Node& b) { return a.scale < b.scale; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> pq(cmp);
    Similitude id{1.0, identity_matrix(sys.d), Vec(sys.d, 0.0)};
    pq.push({1.0, id});
    Vec A = sys.point_a();
    Vec B = sys.point_b();
    std::vector<Vec> anchors;
    std::size_t popped = 0;
    while (!pq.empty() && popped < max_nodes) {
        Node nd = pq.top();
        pq.pop();
        ++popped;
        anchors.push_back(nd.acc.apply(A));
        anchors.push_back(nd.acc.apply(B));
        if (nd.scale <= leaf_tol) continue;
        for (std::size_t i = 1; i <= sys.m; ++i) {
            const Similitude& S = sys.maps[i - 1];
            if (S.scale == 0.0) {
                anchors.push_back(nd.acc.apply(S.translation));
                continue;
            }
            pq.push({nd.scale * S.scale, nd.acc.compose(S)});
        }
    }
    while (!pq.empty()) {
        anchors.push_back(pq.top().acc.apply(A));
        anchors.push_back(pq.top().acc.apply(B));
        pq.pop();
    }
    return anchors;
}

double cross(const Vec& o, const Vec& p, const Vec& q) {
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
}

// Max pairwise distance of a planar point set via its convex hull.
double planar_spread(std::vector<Vec> pts) {
    if (pts.size() < 2) return 0.0;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::size_t n = pts.size();
    if (n < 2) return 0.0;
    std::vector<Vec> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);
    std::size_t stride = 1 + hull.size() / 3000;  // cap the pairwise scan
    double best = 0.0;
    for (std::size_t i = 0; i < hull.size(); i += stride)
        for (std::size_t j = i + 1; j < hull.size(); j += stride)
            best = std::max(best, vec_dist(hull[i], hull[j]));
    return best;
}

}  // namespace

Evaluator::Evaluator(const SelfAffineSystem& sys, double tol) : sys_(sys), tol_(tol) {
    ValidationReport rep = validate(sys);
    if (!rep.ok)
        throw std::invalid_argument("evaluator requires a valid system: " + rep.str());
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    compute_bounds();
}

void Evaluator::compute_bounds() {
    double lmax = 0.0;
    for (const Similitude& S : sys_.maps) lmax = std::max(lmax, S.scale);
    Vec A = sys_.point_a();
    double reach = 0.0;
    for (const Similitude& S : sys_.maps) reach = std::max(reach, vec_dist(S.apply(A), A));
    double ball = reach / (1.0 - lmax);  // invariant ball radius around a

    if (sys_.d == 1) {
        // Range by interval value iteration from an enclosing start; the
        // iterates always contain the true range, so hi/lo stay outer bounds.
        double lo = -ball, hi = ball;
        double change = ball;
        for (int it = 0; it < 200000; ++it) {
            double nlo = kInf, nhi = -kInf;
            for (const Similitude& S : sys_.maps) {
                double r = S.scale * S.rotation[0][0];
                double v1 = r * lo + S.translation[0];
                double v2 = r * hi + S.translation[0];
                nlo = std::min(nlo, std::min(v1, v2));
                nhi = std::max(nhi, std::max(v1, v2));
            }
            change = std::max(std::abs(nlo - lo), std::abs(nhi - hi));
            lo = nlo;
            hi = nhi;
            if (change < 1e-15) break;
        }
        double slack = change / (1.0 - lmax);  // distance left to the fixed point
        diam_lo_ = std::max(0.0, (hi - lo) - 2.0 * slack - 1e-12);
        diam_hi_ = (hi - lo) + 1e-12;
        size_bound_ = std::max(std::abs(lo), std::abs(hi)) + 1e-12;
        return;
    }

    if (sys_.d == 2) {
        // Support-function value iteration on an angle grid, started from the
        // invariant ball so every iterate stays an upper bound; the
        // circumscribed (sine-weighted) interpolation keeps it sound.
        const std::size_t K = kSupportGrid;
        const double step = 2.0 * std::acos(-1.0) / static_cast<double>(K);
        const double sin_step = std::sin(step);
        std::vector<double> h(K, ball), nh(K);
        std::vector<std::array<double, 2>> dirs(K);
        for (std::size_t kk = 0; kk < K; ++kk)
            dirs[kk] = {std::cos(step * static_cast<double>(kk)),
                        std::sin(step * static_cast<double>(kk))};
        auto lookup = [&](double vx, double vy) {
            double ang = std::atan2(vy, vx);
            if (ang < 0.0) ang += 2.0 * std::acos(-1.0);
            double pos = ang / step;
            std::size_t k0 = static_cast<std::size_t>(pos) % K;
            double frac = pos - std::floor(pos);
            double alpha = frac * step;
            return (h[k0] * std::sin(step - alpha) + h[(k0 + 1) % K] * std::sin(alpha)) /
                   sin_step;
        };
        double change = 0.0;
        for (int it = 0; it < 60000; ++it) {
            change = 0.0;
            for (std::size_t kk = 0; kk < K; ++kk) {
                double ux = dirs[kk][0], uy = dirs[kk][1];
                double best = -kInf;
                for (const Similitude& S : sys_.maps) {
                    double base = ux * S.translation[0] + uy * S.translation[1];
                    double val = base;
                    if (S.scale > 0.0) {
                        double vx = S.rotation[0][0] * ux + S.rotation[1][0] * uy;
                        double vy = S.rotation[0][1] * ux + S.rotation[1][1] * uy;
                        val += S.scale * lookup(vx, vy);
                    }
                    best = std::max(best, val);
                }
                change = std::max(change, std::abs(best - h[kk]));
                nh[kk] = best;
            }
            h.swap(nh);
            if (change < 1e-14 * std::max(1.0, ball)) break;
        }
        double slack = change / (1.0 - lmax);  // tail of the iteration
        double edge = 1.0 / std::cos(0.5 * step);
        double hmax = 0.0, wmax = 0.0;
        for (std::size_t kk = 0; kk < K; ++kk) {
            hmax = std::max(hmax, h[kk]);
            wmax = std::max(wmax, h[kk] + h[(kk + K / 2) % K]);
        }
        size_bound_ = hmax * edge + slack;
        diam_hi_ = wmax * edge + 2.0 * slack;
        diam_lo_ = planar_spread(anchor_cloud(sys_, 2e-3, 60000));
        diam_lo_ = std::min(diam_lo_, diam_hi_);
        return;
    }

    size_bound_ = ball;
    diam_hi_ = 2.0 * ball;
    diam_lo_ = 1.0;  // |f(1) - f(0)|
}

Evaluator::Result Evaluator::eval(double t) const {
    if (t < -1e-13 || t > 1.0 + 1e-13) throw std::invalid_argument("t must lie in [0,1]");
    std::vector<double> cum(sys_.m + 1, 0.0);
    for (std::size_t i = 1; i <= sys_.m; ++i) cum[i] = cum[i - 1] + sys_.c[i - 1];
    Similitude acc{1.0, identity_matrix(sys_.d), Vec(sys_.d, 0.0)};
    double x = std::clamp(t, 0.0, 1.0);
    Result res;
    for (std::size_t step = 0; step < kMaxDepth; ++step) {
        if (acc.scale * size_bound_ <= tol_) break;
        std::size_t j = 1;
        while (j < sys_.m && x >= cum[j]) ++j;
        const Similitude& S = sys_.maps[j - 1];
        if (S.scale == 0.0) {
            res.value = acc.apply(S.translation);
            res.err = 0.0;
            res.depth = step + 1;
            return res;
        }
        if (sys_.epsilon[j - 1] == 0)
            x = (x - cum[j - 1]) / sys_.c[j - 1];
        else
            x = (cum[j] - x) / sys_.c[j - 1];
        x = std::clamp(x, 0.0, 1.0);
        acc = acc.compose(S);
        res.depth = step + 1;
    }
    res.value = acc.apply(sys_.point_a());
    res.err = acc.scale * size_bound_;
    return res;
}

Evaluator::Result Evaluator::eval_digits(const std::vector<int>& digits, bool end_at_b) const {
    Similitude acc{1.0, identity_matrix(sys_.d), Vec(sys_.d, 0.0)};
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(sys_.m))
            throw std::invalid_argument("coding digit out of range");
        acc = acc.compose(sys_.maps[static_cast<std::size_t>(d - 1)]);
    }
    Result res;
    res.value = acc.apply(end_at_b ? sys_.point_b() : sys_.point_a());
    res.err = 0.0;
    res.depth = digits.size();
    return res;
}

Evaluator::Result Evaluator::eval(const Coding& cd_in) const {
    Coding cd = canonicalized(cd_in);
    if (cd.prefix.empty() && cd.tail.empty())
        throw std::invalid_argument("empty coding");
    // A coding whose suffix is the coding of 0 or 1 evaluates exactly as a
    // finite composition applied to the corresponding endpoint value.
    if (cd.periodic()) {
        Coding cz = canonicalized(coding_of_zero(sys_));
        Coding co = canonicalized(coding_of_one(sys_));
        std::size_t limit = cd.prefix.size() + cd.tail.size();
        for (std::size_t n = 0; n <= limit; ++n) {
            Coding suf = canonicalized(
                Coding{std::vector<int>(cd.prefix.begin() +
                                            static_cast<std::ptrdiff_t>(
                                                std::min(n, cd.prefix.size())),
                                        cd.prefix.end()),
                       cd.tail});
            if (n > cd.prefix.size()) {
                std::size_t r = (n - cd.prefix.size()) % cd.tail.size();
                std::vector<int> rot(cd.tail.begin() + static_cast<std::ptrdiff_t>(r),
                                     cd.tail.end());
                rot.insert(rot.end(), cd.tail.begin(),
                           cd.tail.begin() + static_cast<std::ptrdiff_t>(r));
                suf = canonicalized(Coding{{}, rot});
            }
            if (coding_equal(suf, cz)) return eval_digits(cd.first_digits(n), false);
            if (coding_equal(suf, co)) return eval_digits(cd.first_digits(n), true);
        }
    }
    Similitude acc{1.0, identity_matrix(sys_.d), Vec(sys_.d, 0.0)};
    Result res;
    std::size_t avail = cd.periodic() ? kMaxDepth : std::min(kMaxDepth, cd.prefix.size());
    for (std::size_t k = 0; k < avail; ++k) {
        if (acc.scale * size_bound_ <= tol_) break;
        int d = cd.digit(k);
        if (d < 1 || d > static_cast<int>(sys_.m))
            throw std::invalid_argument("coding digit out of range");
        const Similitude& S = sys_.maps[static_cast<std::size_t>(d - 1)];
        if (S.scale == 0.0) {
            res.value = acc.apply(S.translation);
            res.err = 0.0;
            res.depth = k + 1;
            return res;
        }
        acc = acc.compose(S);
        res.depth = k + 1;
    }
    res.value = acc.apply(sys_.point_a());
    res.err = acc.scale * size_bound_;
    return res;
}

double Evaluator::oscillation(const std::vector<int>& digits) const {
    double prod = 1.0;
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(sys_.m))
            throw std::invalid_argument("digit out of range");
        prod *= sys_.maps[static_cast<std::size_t>(d - 1)].scale;
    }
    return prod * diameter();
}

double Evaluator::chord_increment(const std::vector<int>& digits) const {
    double prod = 1.0;
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(sys_.m))
            throw std::invalid_argument("digit out of range");
        prod *= sys_.maps[static_cast<std::size_t>(d - 1)].scale;
    }
    return prod;
}

double Evaluator::chord_increment_numeric(const std::vector<int>& digits) const {
    Similitude acc{1.0, identity_matrix(sys_.d), Vec(sys_.d, 0.0)};
    for (int d : digits) {
        if (d < 1 || d > static_cast<int>(sys_.m))
            throw std::invalid_argument("digit out of range");
        acc = acc.compose(sys_.maps[static_cast<std::size_t>(d - 1)]);
    }
    return vec_dist(acc.apply(sys_.point_a()), acc.apply(sys_.point_b()));
}

std::vector<Evaluator::SamplePoint> Evaluator::sample_curve(std::size_t level) const {
    double count = 1.0;
    for (std::size_t k = 0; k < level; ++k) {
        count *= static_cast<double>(sys_.m);
        if (count > static_cast<double>(1 << 24))
            throw std::invalid_argument("sample level too deep (m^level > 2^24)");
    }
    std::vector<SamplePoint> pts;
    pts.reserve(static_cast<std::size_t>(count) + 1);
    Vec A = sys_.point_a();
    Vec B = sys_.point_b();

    struct Frame {
        Similitude acc;
        double tA, tB;  // time affine: t = tA * s + tB
        std::size_t depth;
    };
    std::vector<Frame> stack;
    stack.push_back({Similitude{1.0, identity_matrix(sys_.d), Vec(sys_.d, 0.0)}, 1.0, 0.0, 0});
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.depth == level) {
            SamplePoint p;
            bool forward = fr.tA > 0.0;
            p.t = forward ? fr.tB : fr.tA + fr.tB;
            p.value = fr.acc.apply(forward ? A : B);
            p.err = fr.acc.scale * diameter_hi();
            pts.push_back(p);
            continue;
        }
        // Push children in reverse visiting order (stack).
        bool forward = fr.tA > 0.0;
        for (std::size_t idx = 0; idx < sys_.m; ++idx) {
            std::size_t i = forward ? sys_.m - idx : idx + 1;
            const Similitude& S = sys_.maps[i - 1];
            double sign = sys_.epsilon[i - 1] ? -1.0 : 1.0;
            Frame ch;
            ch.acc = fr.acc.compose(S);
            ch.tA = fr.tA * sign * sys_.c[i - 1];
            ch.tB = fr.tA * sys_.sigma(i) + fr.tB;
            ch.depth = fr.depth + 1;
            stack.push_back(ch);
        }
    }
    SamplePoint last;
    last.t = 1.0;
    last.value = B;
    last.err = 0.0;
    pts.push_back(last);
    return pts;
}

std::string curve_to_csv(const std::vector<Evaluator::SamplePoint>& pts) {
    std::ostringstream os;
    os << "t";
    if (!pts.empty())
        for (std::size_t k = 1; k <= pts.front().value.size(); ++k) os << ",x" << k;
    os << ",err\n";
    for (const auto& p : pts) {
        os << fmt_g12(p.t);
        for (double v : p.value) os << ',' << fmt_g12(v);
        os << ',' << fmt_g12(p.err) << '\n';
    }
    return os.str();
}

std::string curve_to_svg(const std::vector<Evaluator::SamplePoint>& pts, std::size_t d) {
    if (d < 1 || d > 2) throw std::invalid_argument("svg export supports d = 1 or 2");
    std::vector<std::array<double, 2>> xy;
    xy.reserve(pts.size());
    for (const auto& p : pts) {
        if (d == 1)
            xy.push_back({p.t, p.value[0]});
        else
            xy.push_back({p.value[0], p.value[1]});
    }
    double minx = kInf, maxx = -kInf, miny = kInf, maxy = -kInf;
    for (auto& q : xy) {
        minx = std::min(minx, q[0]);
        maxx = std::max(maxx, q[0]);
        miny = std::min(miny, q[1]);
        maxy = std::max(maxy, q[1]);
    }
    double w = std::max(maxx - minx, 1e-9);
    double hgt = std::max(maxy - miny, 1e-9);
    double pad = 0.02 * std::max(w, hgt);
    minx -= pad;
    maxx += pad;
    miny -= pad;
    maxy += pad;
    w = maxx - minx;
    hgt = maxy - miny;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_g12(minx) << ' '
       << fmt_g12(miny) << ' ' << fmt_g12(w) << ' ' << fmt_g12(hgt) << "\" width=\"800\" height=\""
       << fmt_g12(800.0 * hgt / w) << "\">\n";
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt_g12(std::max(w, hgt) / 800.0)
       << "\" points=\"";
    for (std::size_t k = 0; k < xy.size(); ++k) {
        if (k) os << ' ';
        // Flip vertically: SVG y grows downward.
        os << fmt_g12(xy[k][0]) << ',' << fmt_g12(miny + maxy - xy[k][1]);
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

}  // namespace selfaffine
