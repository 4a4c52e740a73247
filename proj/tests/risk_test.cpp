// Unit tests for the MSE breakdown, asymptotes, and grid minimizer.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "penreg/errors.hpp"
#include "penreg/risk.hpp"
#include "test_data.hpp"

using namespace penreg;

namespace {

const std::string kCreditPath =
    std::string(PENREG_DATA_DIR) + "/us_credit.csv";

Dataset credit() { return load_dataset(kCreditPath, "D"); }

struct CreditContext {
    Dataset data;
    AlphaVector alpha;
    Vector beta;
    double sigma2;
    CreditContext() : data(credit()) {
        alpha = compute_alpha(data);
        beta = ols_beta(data.X, data.y);
        sigma2 = sigma2_hat(data);
    }
};

Dataset random_toy(unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const std::size_t n = 12;
    Matrix R(n, 3);
    for (auto& v : R.data()) v = u(gen);
    Vector y(n);
    for (auto& v : y) v = u(gen);
    return make_dataset(y, R, {"x2", "x3", "x4"}, "y");
}

Dataset orthogonal_toy() {
    Matrix R(4, 2);
    const double a[4] = {1.0, -1.0, 1.0, -1.0};
    const double b[4] = {1.0, 1.0, -1.0, -1.0};
    for (std::size_t i = 0; i < 4; ++i) {
        R(i, 0) = a[i];
        R(i, 1) = b[i];
    }
    return make_dataset({2.0, 0.5, -1.0, 3.5}, R, {"x2", "x3"}, "y");
}

} // namespace

TEST_CASE("mse reproduces the published credit values") {
    const CreditContext c;

    const MseBreakdown m0 = mse(c.data, c.alpha, {0.0, 1.0, std::nullopt},
                                c.beta, c.sigma2);
    CHECK(m0.total == doctest::Approx(199.948387).epsilon(1e-6));
    CHECK(std::fabs(m0.total - 199.9497) / 199.9497 < 0.01);
    CHECK(m0.bias_term < 1e-12);
    CHECK(m0.variance_term == doctest::Approx(m0.total).epsilon(1e-12));

    const MseBreakdown m7 = mse(c.data, c.alpha, {0.07, 1.0, std::nullopt},
                                c.beta, c.sigma2);
    CHECK(m7.total == doctest::Approx(5.474854058).epsilon(1e-8));
    CHECK(std::fabs(m7.total - 5.4749) / 5.4749 < 0.01);

    const MseBreakdown m2 = mse(c.data, c.alpha, {0.02, 0.0, std::nullopt},
                                c.beta, c.sigma2);
    CHECK(m2.total == doctest::Approx(41.32252448).epsilon(1e-8));
    CHECK(std::fabs(m2.total - 41.3225) / 41.3225 < 0.01);

    const MseBreakdown m8 = mse(c.data, c.alpha, {0.08, 1.0, std::nullopt},
                                c.beta, c.sigma2);
    CHECK(m8.total == doctest::Approx(5.480811933).epsilon(1e-8));
}

TEST_CASE("mse decomposition invariants") {
    const CreditContext c;
    for (double k : {0.0, 0.01, 0.07, 0.3, 2.0}) {
        for (double h : {0.0, 1.0}) {
            const MseBreakdown m = mse(c.data, c.alpha, {k, h, std::nullopt},
                                       c.beta, c.sigma2);
            CHECK(std::fabs(m.total - (m.variance_term + m.bias_term)) <
                  1e-10 * std::max(1.0, m.total));
            CHECK(std::fabs(m.total - (m.ridge_mse + m.s_term)) < 1e-8);
            if (h == 0.0) {
                CHECK(m.s_term == 0.0);
                CHECK(m.ridge_mse == doctest::Approx(m.total).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("mse decomposition holds on random instances") {
    for (unsigned seed = 1; seed <= 15; ++seed) {
        const Dataset d = random_toy(seed);
        const AlphaVector a = compute_alpha(d);
        const Vector b = ols_beta(d.X, d.y);
        for (double k : {0.05, 0.4, 1.7}) {
            const MseBreakdown m =
                mse(d, a, {k, 1.0, std::nullopt}, b, 1.3);
            CHECK(std::fabs(m.total - (m.variance_term + m.bias_term)) <
                  1e-10 * std::max(1.0, m.total));
            CHECK(std::fabs(m.total - (m.ridge_mse + m.s_term)) < 1e-8);
        }
    }
}

TEST_CASE("mse_asymptote special cases") {
    const Vector alpha = {1.0, -2.0, 0.5};
    CHECK(mse_asymptote(alpha, alpha, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    const Vector beta = {2.0, 1.0, -1.0};
    CHECK(mse_asymptote(alpha, beta, 0.0) ==
          doctest::Approx(dot(beta, beta)).epsilon(1e-14));
}

TEST_CASE("mse approaches its asymptote at large k") {
    const CreditContext c;
    for (double h : {0.0, 1.0}) {
        const double want = mse_asymptote(c.alpha, c.beta, h);
        const MseBreakdown m = mse(c.data, c.alpha, {1e8, h, std::nullopt},
                                   c.beta, c.sigma2);
        CHECK(std::fabs(m.total - want) / want < 1e-3);
    }
    const double s_want =
        -2.0 * dot(c.beta, c.alpha) + dot(c.alpha, c.alpha);
    const MseBreakdown m = mse(c.data, c.alpha, {1e8, 1.0, std::nullopt},
                               c.beta, c.sigma2);
    CHECK(std::fabs(m.s_term - s_want) / std::fabs(s_want) < 1e-3);
}

TEST_CASE("gap second summand is non-decreasing in k") {
    const CreditContext c;
    const DesignMoments dm = design_moments(c.data);
    const SpectralMse s = spectral_mse(dm, c.alpha, c.beta, c.sigma2);
    double prev = -1.0;
    for (double k = 0.0; k <= 2.0; k += 0.05) {
        double term2 = 0.0;
        for (std::size_t i = 0; i < s.lambda.size(); ++i) {
            const double t = k * s.b[i] / (s.lambda[i] + k);
            term2 += t * t;
        }
        CHECK(term2 >= prev - 1e-12);
        prev = term2;
    }
}

TEST_CASE("spectral grid path agrees with the direct breakdown") {
    const CreditContext c;
    const DesignMoments dm = design_moments(c.data);
    const SpectralMse s = spectral_mse(dm, c.alpha, c.beta, c.sigma2);
    for (double k : {0.0, 0.02, 0.07, 0.5, 10.0}) {
        for (double h : {0.0, 1.0}) {
            const MseBreakdown m = mse(c.data, c.alpha, {k, h, std::nullopt},
                                       c.beta, c.sigma2);
            CHECK(std::fabs(s.total(k, h) - m.total) <=
                  1e-3 * std::max(1.0, m.total));
        }
    }
}

TEST_CASE("grid minimizer finds the published minima") {
    const CreditContext c;
    const Vector grid = uniform_grid(0.0, 1.0, 0.01);
    REQUIRE(grid.size() == 101);

    const GridMinimum g1 =
        minimize_mse_grid(c.data, c.alpha, 1.0, grid, c.beta, c.sigma2);
    REQUIRE(g1.k_star.has_value());
    CHECK(std::fabs(*g1.k_star - 0.07) < 1e-12);
    CHECK(g1.uniqueness == Uniqueness::unique);
    CHECK(g1.mse_star == doctest::Approx(5.474854058).epsilon(1e-8));

    const GridMinimum g0 =
        minimize_mse_grid(c.data, c.alpha, 0.0, grid, c.beta, c.sigma2);
    REQUIRE(g0.k_star.has_value());
    CHECK(std::fabs(*g0.k_star - 0.02) < 1e-12);
    CHECK(g0.uniqueness == Uniqueness::unique);
    CHECK(g0.mse_star == doctest::Approx(41.32252448).epsilon(1e-8));
}

TEST_CASE("orthogonal design has no interior minimum for h=1") {
    const Dataset d = orthogonal_toy();
    const AlphaVector a = compute_alpha(d);
    const Vector b = ols_beta(d.X, d.y);
    const Vector grid = uniform_grid(0.0, 1.0, 0.01);
    const GridMinimum g = minimize_mse_grid(d, a, 1.0, grid, b, 1.0);
    CHECK_FALSE(g.k_star.has_value());
    CHECK(g.uniqueness == Uniqueness::none);
    CHECK(std::isnan(g.mse_star));
}

TEST_CASE("grid validation") {
    const CreditContext c;
    CHECK_THROWS_AS(minimize_mse_grid(c.data, c.alpha, 1.0, Vector{0.0, 0.1},
                                      c.beta, c.sigma2),
                    InvalidArgument);
    CHECK_THROWS_AS(minimize_mse_grid(c.data, c.alpha, 1.0,
                                      Vector{0.1, 0.2, 0.3}, c.beta, c.sigma2),
                    InvalidArgument);
    CHECK_THROWS_AS(minimize_mse_grid(c.data, c.alpha, 1.0,
                                      Vector{0.0, 0.2, 0.2}, c.beta, c.sigma2),
                    InvalidArgument);
}

TEST_CASE("uniform_grid construction") {
    const Vector g = uniform_grid(0.0, 1.0, 0.01);
    REQUIRE(g.size() == 101);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j = 1; j < g.size(); ++j)
        CHECK(g[j] - g[j - 1] == doctest::Approx(0.01).epsilon(1e-9));
    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(uniform_grid(1.0, 0.5, 0.1), InvalidArgument);
}
