#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "selfaffine/coding.hpp"
#include "selfaffine/evaluator.hpp"
#include "selfaffine/system.hpp"

using namespace selfaffine;

namespace {

SelfAffineSystem cantor_measure_system() {
    MeasureSpec mc;
    mc.intervals = {{0.0, 1.0 / 3.0}, {2.0 / 3.0, 1.0}};
    mc.orientations = {0, 0};
    mc.weights = {0.5, 0.5};
    return from_measure(mc);
}

double pi_const() { return std::acos(-1.0); }

// Appends the coding of 0 as a tail, giving the exact coding of one endpoint
// of the basic interval addressed by w.
Coding with_zero_tail(const SelfAffineSystem& sys, std::vector<int> w) {
    Coding cz = coding_of_zero(sys);
    w.insert(w.end(), cz.prefix.begin(), cz.prefix.end());
    return Coding{std::move(w), cz.tail};
}

}  // namespace

TEST_CASE("evaluator construction guards") {
    SelfAffineSystem bad = preset_riesz_nagy(0.3);
    bad.maps[0].scale = 0.05;  // breaks sum(lambda) >= 1 and the junction
    CHECK_THROWS_AS(Evaluator(bad, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(Evaluator(preset_riesz_nagy(0.3), 0.0), std::invalid_argument);
    Evaluator ev(preset_riesz_nagy(0.3), 1e-9);
    CHECK_THROWS_AS(ev.eval(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(ev.eval(1.01), std::invalid_argument);
    CHECK_THROWS_AS(ev.eval(Coding{{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(ev.sample_curve(40), std::invalid_argument);
    CHECK_THROWS_AS(ev.oscillation({0}), std::invalid_argument);
}

TEST_CASE("d=1 range bounds are essentially exact") {
    for (const SelfAffineSystem& sys :
         {preset_riesz_nagy(0.3), preset_okamoto(0.6), preset_okamoto(0.8),
          cantor_measure_system(), preset_gray(0.3)}) {
        Evaluator ev(sys, 1e-9);
        CHECK(ev.diameter_lo() <= 1.0 + 1e-9);
        CHECK(ev.diameter_hi() >= 1.0 - 1e-9);
        CHECK(ev.diameter_hi() - ev.diameter_lo() <= 1e-8);
        CHECK(ev.size_bound() >= 1.0 - 1e-9);
        CHECK(ev.size_bound() <= 1.0 + 1e-6);
    }
}

TEST_CASE("plane curve bounds bracket the hull spread") {
    Evaluator ev(preset_polya(25.0 * pi_const() / 180.0), 1e-9);
    CHECK(ev.diameter_lo() >= 0.99);
    CHECK(ev.diameter_lo() <= ev.diameter_hi() + 1e-15);
    CHECK(ev.diameter_hi() <= 3.0);
    CHECK(ev.size_bound() >= 0.99);
    CHECK(ev.size_bound() <= 2.0);
}

TEST_CASE("junction values come out exact") {
    Evaluator rn(preset_riesz_nagy(0.3), 1e-12);
    CHECK(std::abs(rn.eval(0.5).value[0] - 0.3) <= rn.eval(0.5).err + 1e-12);
    CHECK(std::abs(rn.eval(0.25).value[0] - 0.09) <= rn.eval(0.25).err + 1e-12);
    CHECK(std::abs(rn.eval(0.75).value[0] - 0.51) <= rn.eval(0.75).err + 1e-12);

    Evaluator ok(preset_okamoto(0.6), 1e-12);
    CHECK(std::abs(ok.eval(1.0 / 3.0).value[0] - 0.6) <= ok.eval(1.0 / 3.0).err + 1e-11);
    CHECK(std::abs(ok.eval(2.0 / 3.0).value[0] - 0.4) <= ok.eval(2.0 / 3.0).err + 1e-11);

    double th = 25.0 * pi_const() / 180.0;
    double s = std::sin(th), c = std::cos(th);
    Evaluator pl(preset_polya(th), 1e-9);
    auto r = pl.eval(0.5);
    CHECK(vec_dist(r.value, Vec{s * s, s * c}) <= r.err + 1e-12);

    Evaluator gr(preset_gray(0.3), 1e-12);
    CHECK(std::abs(gr.eval(0.5).value[0] - 0.3) <= gr.eval(0.5).err + 1e-12);
}

TEST_CASE("constant maps stop the walk with a zero error bound") {
    Evaluator ev(cantor_measure_system(), 1e-12);
    auto mid = ev.eval(0.5);
    CHECK(mid.err == 0.0);
    CHECK(mid.value[0] == doctest::Approx(0.5).epsilon(1e-15));
    auto sixth = ev.eval(1.0 / 6.0);
    CHECK(sixth.err == 0.0);
    CHECK(sixth.value[0] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("self-affinity holds at random points") {
    std::mt19937_64 rng(101);

    // Half-length partitions admit exactly representable phi_i(t) when t is
    // a coarse dyadic rational, so the residual carries no input rounding
    // and the strict 2 tol bound is sound.
    struct Case {
        SelfAffineSystem sys;
        double tol;
    };
    std::vector<Case> dyadic;
    dyadic.push_back({preset_riesz_nagy(0.3), 1e-9});
    dyadic.push_back({preset_gray(0.3), 1e-9});
    dyadic.push_back({preset_polya(44.0 * pi_const() / 180.0), 1e-9});
    std::uniform_int_distribution<long> grid(0, 1L << 30);
    for (const Case& cs : dyadic) {
        Evaluator ev(cs.sys, cs.tol);
        std::uniform_int_distribution<std::size_t> pick(1, cs.sys.m);
        for (int rep = 0; rep < 300; ++rep) {
            double t = static_cast<double>(grid(rng)) / static_cast<double>(1L << 30);
            std::size_t i = pick(rng);
            auto lhs = ev.eval(cs.sys.phi(i, t));
            auto rhs = ev.eval(t);
            Vec mapped = cs.sys.maps[i - 1].apply(rhs.value);
            double resid = vec_dist(lhs.value, mapped);
            CHECK(lhs.err <= cs.tol);
            CHECK(rhs.err <= cs.tol);
            CHECK(resid <= 2.0 * cs.tol);
        }
    }

    // Ternary partitions round phi_i(t) to a neighboring double; the value
    // moves by about |dt|^alpha with alpha as low as 0.46, so the strict
    // budget needs a tolerance above that floor.
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Case> ternary;
    ternary.push_back({preset_okamoto(0.6), 1e-6});
    ternary.push_back({cantor_measure_system(), 1e-6});
    for (const Case& cs : ternary) {
        Evaluator ev(cs.sys, cs.tol);
        Evaluator tight(cs.sys, 1e-12);
        std::uniform_int_distribution<std::size_t> pick(1, cs.sys.m);
        for (int rep = 0; rep < 300; ++rep) {
            double t = uni(rng);
            std::size_t i = pick(rng);
            auto lhs = ev.eval(cs.sys.phi(i, t));
            auto rhs = ev.eval(t);
            double resid = vec_dist(lhs.value, cs.sys.maps[i - 1].apply(rhs.value));
            CHECK(lhs.err <= cs.tol);
            CHECK(rhs.err <= cs.tol);
            CHECK(resid <= 2.0 * cs.tol);
            auto tl = tight.eval(cs.sys.phi(i, t));
            auto tr = tight.eval(t);
            double tresid = vec_dist(tl.value, cs.sys.maps[i - 1].apply(tr.value));
            CHECK(tresid <= 2e-12 + 1e-9);  // 1e-9 covers the input rounding
        }
    }

    // Weakly contracting planar system: the depth cap keeps err above tol on
    // bad paths, so only the error-aware bound applies.
    SelfAffineSystem polya = preset_polya(25.0 * pi_const() / 180.0);
    Evaluator ev(polya, 1e-9);
    std::uniform_int_distribution<std::size_t> pick(1, polya.m);
    for (int rep = 0; rep < 300; ++rep) {
        double t = static_cast<double>(grid(rng)) / static_cast<double>(1L << 30);
        std::size_t i = pick(rng);
        auto lhs = ev.eval(polya.phi(i, t));
        auto rhs = ev.eval(t);
        double resid = vec_dist(lhs.value, polya.maps[i - 1].apply(rhs.value));
        CHECK(resid <= lhs.err + polya.lambda(i) * rhs.err + 1e-12);
    }
}

TEST_CASE("depth cap reports its error honestly") {
    Evaluator ev(preset_polya(25.0 * pi_const() / 180.0), 1e-9);
    auto r = ev.eval(1.0);  // all digits hit the weakly contracting map
    CHECK(r.depth == Evaluator::kMaxDepth);
    CHECK(r.err > ev.tol());
    CHECK(vec_dist(r.value, Vec{1.0, 0.0}) <= r.err);
}

TEST_CASE("chord increments multiply exactly") {
    std::mt19937_64 rng(202);
    for (const SelfAffineSystem& sys :
         {preset_riesz_nagy(0.3), preset_gray(0.3), preset_okamoto(0.7),
          preset_polya(20.0 * pi_const() / 180.0), cantor_measure_system()}) {
        Evaluator ev(sys, 1e-9);
        std::uniform_int_distribution<int> pick(1, static_cast<int>(sys.m));
        std::uniform_int_distribution<int> len(1, 10);
        for (int rep = 0; rep < 60; ++rep) {
            std::vector<int> w;
            double prod = 1.0;
            int n = len(rng);
            for (int k = 0; k < n; ++k) {
                int dg = pick(rng);
                w.push_back(dg);
                prod *= sys.lambda(static_cast<std::size_t>(dg));
            }
            CHECK(ev.chord_increment(w) == prod);
            CHECK(std::abs(ev.chord_increment_numeric(w) - prod) <= 1e-9);
        }
    }
}

TEST_CASE("oscillation over a basic interval") {
    Evaluator ev(preset_riesz_nagy(0.3), 1e-9);
    CHECK(ev.oscillation({1, 1}) == doctest::Approx(0.09 * ev.diameter()).epsilon(1e-12));
    CHECK(ev.oscillation({1, 1}) == doctest::Approx(0.09).epsilon(1e-6));
    Evaluator ec(cantor_measure_system(), 1e-9);
    CHECK(ec.oscillation({1, 2, 3}) == 0.0);
}

TEST_CASE("coding evaluation agrees with numeric evaluation at interval endpoints") {
    std::mt19937_64 rng(303);
    for (const SelfAffineSystem& sys :
         {preset_riesz_nagy(0.3), preset_gray(0.3), preset_okamoto(0.7)}) {
        Evaluator ev(sys, 1e-10);
        std::uniform_int_distribution<int> pick(1, static_cast<int>(sys.m));
        for (int rep = 0; rep < 40; ++rep) {
            std::vector<int> w;
            int parity = 0;
            for (int k = 0; k < 8; ++k) {
                int dg = pick(rng);
                w.push_back(dg);
                parity ^= sys.epsilon[static_cast<std::size_t>(dg - 1)];
            }
            BasicInterval iv = interval_of(sys, w);
            auto exact = ev.eval(with_zero_tail(sys, w));
            CHECK(exact.err == 0.0);
            double t = parity == 0 ? iv.left : iv.right;
            auto num = ev.eval(t);
            // The endpoint double sits within ~1e-11 of the exact point after
            // boundary detection; the value moves by at most the oscillation
            // of the deepest basic interval still containing both.
            double cmax = *std::max_element(sys.c.begin(), sys.c.end());
            double lmax = 0.0;
            for (std::size_t dg = 1; dg <= sys.m; ++dg) lmax = std::max(lmax, sys.lambda(dg));
            double shared = std::floor(std::log(1e-11) / std::log(cmax));
            double slack = 2.0 * ev.size_bound() * std::pow(lmax, shared);
            CHECK(vec_dist(exact.value, num.value) <= num.err + slack);
        }
    }
}

TEST_CASE("periodic codings of the same point evaluate identically") {
    SelfAffineSystem polya = preset_polya(25.0 * pi_const() / 180.0);
    Evaluator ev(polya, 1e-9);
    auto left = ev.eval(parse_coding("1|2", 2));
    auto right = ev.eval(parse_coding("2|1", 2));
    CHECK(left.err == 0.0);
    CHECK(right.err == 0.0);
    CHECK(vec_dist(left.value, right.value) <= 1e-12);
    double th = 25.0 * pi_const() / 180.0;
    CHECK(vec_dist(right.value, Vec{std::sin(th) * std::sin(th),
                                    std::sin(th) * std::cos(th)}) <= 1e-12);

    // A periodic coding that is not an endpoint walks to the depth cap.
    auto interior = ev.eval(parse_coding("|21", 2));
    CHECK(interior.err > 0.0);
    CHECK(interior.err <= 1e-6);
}

TEST_CASE("sample_curve visits interval endpoints in time order") {
    for (const SelfAffineSystem& sys :
         {preset_riesz_nagy(0.3), preset_gray(0.3), preset_okamoto(0.6)}) {
        Evaluator ev(sys, 1e-10);
        auto pts = ev.sample_curve(5);
        std::size_t expect = 1;
        for (std::size_t k = 0; k < 5; ++k) expect *= sys.m;
        REQUIRE(pts.size() == expect + 1);
        CHECK(pts.front().t == 0.0);
        CHECK(pts.back().t == 1.0);
        for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k].t > pts[k - 1].t - 1e-15);
        for (std::size_t k = 0; k < pts.size(); k += 7) {
            auto r = ev.eval(pts[k].t);
            CHECK(vec_dist(r.value, pts[k].value) <= r.err + pts[k].err + 1e-11);
        }
    }
    Evaluator pl(preset_polya(25.0 * pi_const() / 180.0), 1e-9);
    auto pts = pl.sample_curve(4);
    REQUIRE(pts.size() == 17);
    CHECK(vec_dist(pts.front().value, Vec{0.0, 0.0}) == 0.0);
    CHECK(vec_dist(pts.back().value, Vec{1.0, 0.0}) == 0.0);
    for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k].t > pts[k - 1].t);
}

TEST_CASE("csv and svg exports") {
    Evaluator ev(preset_riesz_nagy(0.3), 1e-10);
    auto pts = ev.sample_curve(3);
    std::string csv = curve_to_csv(pts);
    CHECK(csv.rfind("t,x1,err\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == pts.size() + 1);

    Evaluator pl(preset_polya(25.0 * pi_const() / 180.0), 1e-9);
    std::string csv2 = curve_to_csv(pl.sample_curve(3));
    CHECK(csv2.rfind("t,x1,x2,err\n", 0) == 0);

    std::string svg = curve_to_svg(pts, 1);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(curve_to_svg(pts, 3), std::invalid_argument);
}
