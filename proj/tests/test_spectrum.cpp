#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "selfaffine/spectrum.hpp"
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

double deg(double x) { return x * std::acos(-1.0) / 180.0; }

std::vector<SelfAffineSystem> preset_quartet() {
    return {preset_polya(deg(25.0)), preset_okamoto(2.0 / 3.0), preset_riesz_nagy(0.25),
            preset_gray(0.3)};
}

}  // namespace

TEST_CASE("profile: exponents and digit sets per preset") {
    const double ln3 = std::log(3.0);

    SpectrumProfile rn = spectrum_profile(preset_riesz_nagy(0.25));
    CHECK(rn.rho[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rn.rho[1] == doctest::Approx(std::log(0.75) / std::log(0.5)).epsilon(1e-14));
    CHECK(rn.alpha_min == doctest::Approx(rn.rho[1]));
    CHECK(rn.alpha_max == doctest::Approx(2.0));
    CHECK(rn.s_hat == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rn.s_min == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rn.s_max == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rn.alpha_hat ==
          doctest::Approx((std::log(0.25) + std::log(0.75)) / (2.0 * std::log(0.5))));
    CHECK(rn.i_zero.empty());
    CHECK(rn.i_plus == std::vector<std::size_t>{1, 2});

    SpectrumProfile ok = spectrum_profile(preset_okamoto(2.0 / 3.0));
    CHECK(ok.rho[0] == doctest::Approx(std::log(1.5) / ln3).epsilon(1e-14));
    CHECK(ok.rho[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ok.rho[2] == doctest::Approx(ok.rho[0]).epsilon(1e-15));
    CHECK(ok.alpha_max == doctest::Approx(1.0));
    CHECK(std::abs(ok.s_min - std::log(2.0) / ln3) <= 1e-12);
    CHECK(std::abs(ok.s_max - 0.0) <= 1e-12);
    CHECK(ok.s_hat == doctest::Approx(1.0).epsilon(1e-12));

    SpectrumProfile ca = spectrum_profile(cantor_measure_system());
    CHECK(ca.i_zero == std::vector<std::size_t>{2});
    CHECK(ca.i_plus == std::vector<std::size_t>{1, 3});
    CHECK(std::isinf(ca.rho[1]));
    CHECK(ca.alpha_min == doctest::Approx(std::log(2.0) / ln3).epsilon(1e-13));
    CHECK(ca.alpha_max == doctest::Approx(ca.alpha_min).epsilon(1e-13));
    CHECK(ca.s_hat == doctest::Approx(std::log(2.0) / ln3).epsilon(1e-12));
}

TEST_CASE("beta exponent: value at 0, monotone, convex, pressure root") {
    for (const SelfAffineSystem& sys : preset_quartet()) {
        SpectrumProfile pr = spectrum_profile(sys);
        CHECK(beta_exponent(sys, 0.0) == doctest::Approx(pr.s_hat).epsilon(1e-12));
        std::vector<double> qs, bs;
        for (double q = -3.0; q <= 3.01; q += 0.5) {
            qs.push_back(q);
            bs.push_back(beta_exponent(sys, q));
        }
        for (std::size_t k = 1; k < bs.size(); ++k) CHECK(bs[k] < bs[k - 1] + 1e-12);
        for (std::size_t k = 1; k + 1 < bs.size(); ++k)
            CHECK(bs[k - 1] + bs[k + 1] >= 2.0 * bs[k] - 1e-9);
        for (std::size_t k = 0; k < qs.size(); ++k) {
            double total = 0.0;
            for (std::size_t i = 1; i <= sys.m; ++i) {
                if (sys.lambda(i) <= 0.0) continue;
                total += std::pow(sys.lambda(i), qs[k]) * std::pow(sys.c[i - 1], bs[k]);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("beta_star: apex and endpoint identities") {
    for (const SelfAffineSystem& sys : preset_quartet()) {
        SpectrumProfile pr = spectrum_profile(sys);
        CHECK(std::abs(beta_star(sys, pr.alpha_hat) - pr.s_hat) <= 1e-10);
        CHECK(std::abs(beta_star(sys, pr.alpha_min) - pr.s_min) <= 1e-10);
        CHECK(std::abs(beta_star(sys, pr.alpha_max) - pr.s_max) <= 1e-10);
        CHECK(std::isinf(beta_star(sys, pr.alpha_min - 0.01)));
        CHECK(beta_star(sys, pr.alpha_min - 0.01) < 0.0);
        CHECK(std::isinf(beta_star(sys, pr.alpha_max + 0.01)));
    }
}

TEST_CASE("spectrum table: shape, concavity, singleton support") {
    SelfAffineSystem rn = preset_riesz_nagy(0.25);
    SpectrumTable tab = spectrum_table(rn, 51);
    SpectrumProfile pr = spectrum_profile(rn);
    REQUIRE(tab.rows.size() == 51);
    CHECK_FALSE(tab.infinite_atom);
    CHECK(tab.rows.front().alpha == doctest::Approx(pr.alpha_min));
    CHECK(tab.rows.back().alpha == doctest::Approx(pr.alpha_max));
    for (std::size_t k = 1; k < tab.rows.size(); ++k)
        CHECK(tab.rows[k].alpha > tab.rows[k - 1].alpha);
    for (const SpectrumRow& row : tab.rows) CHECK(row.dim <= pr.s_hat + 1e-10);
    for (std::size_t k = 1; k + 1 < tab.rows.size(); ++k)
        CHECK(tab.rows[k - 1].dim + tab.rows[k + 1].dim <= 2.0 * tab.rows[k].dim + 1e-8);
    CHECK_THROWS_AS(spectrum_table(rn, 1), std::invalid_argument);

    SpectrumTable ct = spectrum_table(cantor_measure_system(), 41);
    CHECK(ct.infinite_atom);
    REQUIRE(ct.rows.size() == 1);
    CHECK(ct.rows[0].alpha == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-13));
    CHECK(ct.rows[0].dim == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("duality: maximizer entropy meets the spectrum on a grid") {
    for (const SelfAffineSystem& sys : preset_quartet()) {
        SpectrumProfile pr = spectrum_profile(sys);
        for (int k = 0; k <= 20; ++k) {
            double alpha =
                pr.alpha_min + (pr.alpha_max - pr.alpha_min) * static_cast<double>(k) / 20.0;
            std::vector<double> p = duality_maximizer(sys, alpha);
            double sum = 0.0;
            for (std::size_t i = 0; i < sys.m; ++i) {
                CHECK(p[i] >= -1e-15);
                if (sys.lambda(i + 1) == 0.0) CHECK(p[i] == 0.0);
                sum += p[i];
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            if (k > 0 && k < 20)
                CHECK(frequency_exponent(sys, p) == doctest::Approx(alpha).epsilon(1e-8));
            CHECK(std::abs(entropy_dimension(sys, p) - beta_star(sys, alpha)) <= 1e-8);
        }
        CHECK_THROWS_AS(duality_maximizer(sys, pr.alpha_min - 0.1), std::invalid_argument);
        CHECK_THROWS_AS(duality_maximizer(sys, pr.alpha_max + 0.1), std::invalid_argument);
    }
}

TEST_CASE("duality: no feasible perturbation beats the maximizer") {
    SelfAffineSystem ok = preset_okamoto(2.0 / 3.0);
    SpectrumProfile pr = spectrum_profile(ok);
    for (double alpha : {pr.alpha_hat, 0.5, 0.8, 0.95}) {
        std::vector<double> p = duality_maximizer(ok, alpha);
        double h = entropy_dimension(ok, p);
        // Tangent direction of the two constraints (sum = 1, exponent = alpha).
        std::vector<double> g(3);
        for (std::size_t i = 0; i < 3; ++i)
            g[i] = std::log(ok.lambda(i + 1)) - alpha * std::log(ok.c[i]);
        std::vector<double> v = {g[1] - g[2], g[2] - g[0], g[0] - g[1]};
        for (double delta : {1e-3, -1e-3}) {
            std::vector<double> q(3);
            bool feasible = true;
            double dot = 0.0, sum = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                q[i] = p[i] + delta * v[i];
                feasible = feasible && q[i] > 0.0;
                dot += q[i] * g[i];
                sum += q[i];
            }
            REQUIRE(feasible);
            CHECK(std::abs(dot) <= 1e-12);  // still on the constraint slice
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(entropy_dimension(ok, q) <= h + 1e-9);
        }
    }
}

TEST_CASE("closed form binary maximizer matches the general one") {
    for (const SelfAffineSystem& sys :
         {preset_riesz_nagy(0.25), preset_gray(0.3), preset_polya(deg(25.0))}) {
        SpectrumProfile pr = spectrum_profile(sys);
        for (int k = 1; k < 20; ++k) {
            double alpha =
                pr.alpha_min + (pr.alpha_max - pr.alpha_min) * static_cast<double>(k) / 20.0;
            std::vector<double> a = duality_maximizer(sys, alpha);
            std::vector<double> b = binary_maximizer_closed_form(sys, alpha);
            CHECK(std::abs(a[0] - b[0]) <= 1e-9);
            CHECK(std::abs(a[1] - b[1]) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(binary_maximizer_closed_form(preset_okamoto(0.6), 1.0),
                    std::invalid_argument);
}

TEST_CASE("half-half partitions follow the binary entropy law") {
    const double ln2 = std::log(2.0);
    for (auto [l1, l2] : {std::pair{0.6, 0.8}, std::pair{0.35, 0.9}, std::pair{0.55, 0.55}}) {
        SelfAffineSystem sys = planar_two_map(l1, l2);
        SpectrumProfile pr = spectrum_profile(sys);
        if (pr.alpha_max - pr.alpha_min <= 1e-12) {
            CHECK(beta_star(sys, pr.alpha_min) == doctest::Approx(1.0).epsilon(1e-10));
            continue;
        }
        for (int k = 0; k <= 40; ++k) {
            double alpha =
                pr.alpha_min + (pr.alpha_max - pr.alpha_min) * static_cast<double>(k) / 40.0;
            double u = (alpha - pr.alpha_min) / (pr.alpha_max - pr.alpha_min);
            double hh = 0.0;
            if (u > 0.0 && u < 1.0) hh = -(u * std::log(u) + (1.0 - u) * std::log(1.0 - u)) / ln2;
            CHECK(std::abs(beta_star(sys, alpha) - hh) <= 1e-9);
        }
    }
}

TEST_CASE("frequency exponent and entropy handle constant maps") {
    SelfAffineSystem ca = cantor_measure_system();
    CHECK(std::isinf(frequency_exponent(ca, {0.25, 0.5, 0.25})));
    CHECK(frequency_exponent(ca, {0.25, 0.5, 0.25}) > 0.0);
    CHECK(frequency_exponent(ca, {0.5, 0.0, 0.5}) ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-13));
    CHECK(entropy_dimension(ca, {0.5, 0.0, 0.5}) ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-13));
    CHECK_THROWS_AS(entropy_dimension(ca, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("rational digit frequencies never beat the spectrum") {
    SelfAffineSystem ok = preset_okamoto(2.0 / 3.0);
    SpectrumProfile pr = spectrum_profile(ok);
    for (int n1 = 0; n1 <= 8; ++n1)
        for (int n2 = 0; n2 + n1 <= 8; ++n2) {
            int n3 = 8 - n1 - n2;
            std::vector<double> freq = {n1 / 8.0, n2 / 8.0, n3 / 8.0};
            double alpha = frequency_exponent(ok, freq);
            CHECK(alpha >= pr.alpha_min - 1e-12);
            CHECK(alpha <= pr.alpha_max + 1e-12);
            CHECK(entropy_dimension(ok, freq) <= beta_star(ok, alpha) + 1e-9);
        }
}
