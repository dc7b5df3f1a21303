#include "selfaffine/system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace selfaffine {

namespace {

constexpr double kPartitionTol = 1e-12;
constexpr double kOrthTol = 1e-10;
constexpr double kConnectTol = 1e-9;

Mat scalar_rot(double s) { return Mat{{s}}; }

void push(ValidationReport& rep, const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
}

}  // namespace

std::vector<double> SelfAffineSystem::lambdas() const {
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = maps[i].scale;
    return out;
}

std::vector<std::size_t> SelfAffineSystem::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= m; ++i)
        if (lambda(i) > 0.0) out.push_back(i);
    return out;
}

std::vector<std::size_t> SelfAffineSystem::zero_set() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= m; ++i)
        if (lambda(i) == 0.0) out.push_back(i);
    return out;
}

bool SelfAffineSystem::has_zero_maps() const { return !zero_set().empty(); }

Vec SelfAffineSystem::point_a() const { return Vec(d, 0.0); }

Vec SelfAffineSystem::point_b() const {
    Vec b(d, 0.0);
    b[0] = 1.0;
    return b;
}

double SelfAffineSystem::cum_c(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 1; j <= i; ++j) s += c[j - 1];
    return s;
}

double SelfAffineSystem::sigma(std::size_t i) const {
    // Left endpoint of the i-th interval when epsilon_i = 0, right otherwise.
    double s = cum_c(i - 1);
    if (epsilon[i - 1]) s += c[i - 1];
    return s;
}

double SelfAffineSystem::phi(std::size_t i, double t) const {
    double sign = epsilon[i - 1] ? -1.0 : 1.0;
    return sign * c[i - 1] * t + sigma(i);
}

double SelfAffineSystem::phi_inv(std::size_t i, double t) const {
    double sign = epsilon[i - 1] ? -1.0 : 1.0;
    return (t - sigma(i)) / (sign * c[i - 1]);
}

std::string ValidationReport::str() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i];
    }
    return os.str();
}

ValidationReport validate(const SelfAffineSystem& sys) {
    ValidationReport rep;
    if (sys.d < 1) push(rep, "d must be >= 1");
    if (sys.m < 2) push(rep, "m must be >= 2");
    if (sys.c.size() != sys.m) push(rep, "c has wrong length");
    if (sys.epsilon.size() != sys.m) push(rep, "epsilon has wrong length");
    if (sys.maps.size() != sys.m) push(rep, "maps has wrong length");
    if (!rep.ok) return rep;

    for (std::size_t i = 0; i < sys.m; ++i) {
        const Similitude& S = sys.maps[i];
        if (S.translation.size() != sys.d)
            push(rep, "map " + std::to_string(i + 1) + ": translation has wrong dimension");
        if (S.rotation.size() != sys.d)
            push(rep, "map " + std::to_string(i + 1) + ": rotation has wrong shape");
        for (const auto& row : S.rotation)
            if (row.size() != sys.d)
                push(rep, "map " + std::to_string(i + 1) + ": rotation has wrong shape");
    }
    if (!rep.ok) return rep;

    double csum = 0.0;
    for (std::size_t i = 0; i < sys.m; ++i) {
        if (!(sys.c[i] > 0.0)) push(rep, "c[" + std::to_string(i + 1) + "] must be positive");
        csum += sys.c[i];
    }
    if (std::abs(csum - 1.0) > kPartitionTol) push(rep, "interval lengths must sum to 1");

    for (std::size_t i = 0; i < sys.m; ++i)
        if (sys.epsilon[i] != 0 && sys.epsilon[i] != 1)
            push(rep, "epsilon[" + std::to_string(i + 1) + "] must be 0 or 1");

    double lsum = 0.0;
    bool any_zero = false;
    for (std::size_t i = 0; i < sys.m; ++i) {
        double l = sys.maps[i].scale;
        if (l < 0.0) push(rep, "map " + std::to_string(i + 1) + ": scale must be >= 0");
        if (l >= 1.0) push(rep, "map " + std::to_string(i + 1) + ": scale must be < 1");
        if (l == 0.0) any_zero = true;
        lsum += l;
        if (orthogonality_defect(sys.maps[i].rotation) > kOrthTol)
            push(rep, "map " + std::to_string(i + 1) + ": rotation is not orthogonal");
    }
    if (any_zero && sys.m < 3) push(rep, "constant maps require m >= 3");
    if (lsum < 1.0 - kPartitionTol) push(rep, "contraction factors must sum to at least 1");

    // Endpoint matching: the pieces S_i(f(.)) must join into a continuous
    // path from a to b.  With a = 0 and b = e1, the i-th piece runs from
    // S_i(a or b) to S_i(b or a) depending on epsilon_i.
    Vec A = sys.point_a();
    Vec B = sys.point_b();
    auto piece_start = [&](std::size_t i) {
        return sys.maps[i - 1].apply(sys.epsilon[i - 1] ? B : A);
    };
    auto piece_end = [&](std::size_t i) {
        return sys.maps[i - 1].apply(sys.epsilon[i - 1] ? A : B);
    };
    if (vec_dist(piece_start(1), A) > kConnectTol) push(rep, "first piece does not start at a");
    if (vec_dist(piece_end(sys.m), B) > kConnectTol) push(rep, "last piece does not end at b");
    for (std::size_t i = 2; i <= sys.m; ++i)
        if (vec_dist(piece_end(i - 1), piece_start(i)) > kConnectTol)
            push(rep, "pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                          " do not join");

    double degen = 0.0;
    for (std::size_t i = 0; i < sys.m; ++i)
        degen = std::max(degen, std::abs(sys.maps[i].scale - sys.c[i]));
    if (degen <= kPartitionTol)
        push(rep, "degenerate: contraction factors equal interval lengths (f is the identity)");

    return rep;
}

SelfAffineSystem planar_two_map(double l1, double l2) {
    if (!(l1 > 0.0 && l1 < 1.0 && l2 > 0.0 && l2 < 1.0))
        throw std::invalid_argument("planar_two_map: factors must lie in (0,1)");
    if (l1 + l2 < 1.0)
        throw std::invalid_argument("planar_two_map: factors must sum to at least 1");
    // Apex of the triangle over [0,1] with side lengths l1, l2.
    double x = 0.5 * (1.0 + l1 * l1 - l2 * l2);
    double y2 = l1 * l1 - x * x;
    double y = std::sqrt(std::max(y2, 0.0));

    SelfAffineSystem sys;
    sys.d = 2;
    sys.m = 2;
    sys.c = {0.5, 0.5};
    sys.epsilon = {0, 0};
    Similitude S1, S2;
    S1.scale = l1;
    S1.rotation = {{x / l1, y / l1}, {y / l1, -x / l1}};
    S1.translation = {0.0, 0.0};
    S2.scale = l2;
    S2.rotation = {{(1.0 - x) / l2, -y / l2}, {-y / l2, -(1.0 - x) / l2}};
    S2.translation = {x, y};
    sys.maps = {S1, S2};
    return sys;
}

SelfAffineSystem preset_polya(double theta) {
    if (!(theta > 0.0 && theta < std::atan(1.0)))
        throw std::invalid_argument("polya: theta must lie strictly inside (0, pi/4)");
    return planar_two_map(std::sin(theta), std::cos(theta));
}

SelfAffineSystem preset_okamoto(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("okamoto: a must lie in (0,1)");
    if (a == 1.0 / 3.0)
        throw std::invalid_argument("okamoto: a = 1/3 gives the degenerate identity");
    SelfAffineSystem sys;
    sys.d = 1;
    sys.m = 3;
    sys.c = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    sys.epsilon = {0, 0, 0};
    Similitude S1{a, scalar_rot(1.0), {0.0}};
    Similitude S2;  // a + (1-2a) x
    if (a > 0.5)
        S2 = {2.0 * a - 1.0, scalar_rot(-1.0), {a}};
    else if (a < 0.5)
        S2 = {1.0 - 2.0 * a, scalar_rot(1.0), {a}};
    else
        S2 = {0.0, scalar_rot(1.0), {0.5}};
    Similitude S3{a, scalar_rot(1.0), {1.0 - a}};
    sys.maps = {S1, S2, S3};
    return sys;
}

SelfAffineSystem preset_riesz_nagy(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("riesz_nagy: a must lie in (0,1)");
    if (a == 0.5)
        throw std::invalid_argument("riesz_nagy: a = 1/2 gives the degenerate identity");
    SelfAffineSystem sys;
    sys.d = 1;
    sys.m = 2;
    sys.c = {0.5, 0.5};
    sys.epsilon = {0, 0};
    sys.maps = {Similitude{a, scalar_rot(1.0), {0.0}},
                Similitude{1.0 - a, scalar_rot(1.0), {a}}};
    return sys;
}

SelfAffineSystem preset_gray(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("gray: a must lie in (0,1)");
    if (a == 0.5) throw std::invalid_argument("gray: a = 1/2 gives a degenerate system");
    SelfAffineSystem sys;
    sys.d = 1;
    sys.m = 2;
    sys.c = {0.5, 0.5};
    sys.epsilon = {0, 1};
    sys.maps = {Similitude{a, scalar_rot(1.0), {0.0}},
                Similitude{1.0 - a, scalar_rot(-1.0), {1.0}}};
    return sys;
}

SelfAffineSystem from_measure(const MeasureSpec& spec) {
    std::size_t k = spec.intervals.size();
    if (k == 0) throw std::invalid_argument("from_measure: no intervals");
    if (spec.orientations.size() != k || spec.weights.size() != k)
        throw std::invalid_argument("from_measure: mismatched field lengths");
    double wsum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        auto [s, t] = spec.intervals[j];
        if (!(t - s > 0.0))
            throw std::invalid_argument("from_measure: intervals must have positive length");
        if (s < 0.0 || t > 1.0)
            throw std::invalid_argument("from_measure: intervals must lie inside [0,1]");
        if (j > 0 && s < spec.intervals[j - 1][1])
            throw std::invalid_argument("from_measure: intervals must be ordered and disjoint");
        if (spec.orientations[j] != 0 && spec.orientations[j] != 1)
            throw std::invalid_argument("from_measure: orientations must be 0 or 1");
        if (!(spec.weights[j] > 0.0))
            throw std::invalid_argument("from_measure: weights must be positive");
        wsum += spec.weights[j];
    }
    if (std::abs(wsum - 1.0) > kPartitionTol)
        throw std::invalid_argument("from_measure: weights must sum to 1");

    SelfAffineSystem sys;
    sys.d = 1;
    double P = 0.0;     // accumulated weight
    double prev = 0.0;  // right end of the previous piece
    for (std::size_t j = 0; j < k; ++j) {
        auto [s, t] = spec.intervals[j];
        double pi = spec.weights[j];
        if (s > prev) {  // gap: f is constant at the accumulated weight
            sys.c.push_back(s - prev);
            sys.epsilon.push_back(0);
            sys.maps.push_back(Similitude{0.0, scalar_rot(1.0), {P}});
        }
        sys.c.push_back(t - s);
        if (spec.orientations[j] == 0) {
            sys.epsilon.push_back(0);
            sys.maps.push_back(Similitude{pi, scalar_rot(1.0), {P}});
        } else {
            sys.epsilon.push_back(1);
            sys.maps.push_back(Similitude{pi, scalar_rot(-1.0), {P + pi}});
        }
        P += pi;
        prev = t;
    }
    if (prev < 1.0) {
        sys.c.push_back(1.0 - prev);
        sys.epsilon.push_back(0);
        sys.maps.push_back(Similitude{0.0, scalar_rot(1.0), {P}});
    }
    sys.m = sys.c.size();
    return sys;
}

SelfAffineSystem reversed(const SelfAffineSystem& sys) {
    SelfAffineSystem out;
    out.d = sys.d;
    out.m = sys.m;
    Vec B = sys.point_b();
    for (std::size_t i = sys.m; i >= 1; --i) {
        const Similitude& S = sys.maps[i - 1];
        out.c.push_back(sys.c[i - 1]);
        out.epsilon.push_back(sys.epsilon[i - 1]);
        Similitude R;
        R.scale = S.scale;
        R.rotation = S.rotation;
        Vec Sb = S.apply(B);
        Vec tr(sys.d);
        for (std::size_t kdim = 0; kdim < sys.d; ++kdim) tr[kdim] = B[kdim] - Sb[kdim];
        R.translation = tr;
        out.maps.push_back(R);
    }
    return out;
}

}  // namespace selfaffine
