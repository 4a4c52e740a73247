// Unit tests for the multicollinearity diagnostics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "penreg/diagnostics.hpp"
#include "penreg/errors.hpp"
#include "test_data.hpp"

using namespace penreg;

namespace {

const std::string kCreditPath =
    std::string(PENREG_DATA_DIR) + "/us_credit.csv";

Dataset credit() { return load_dataset(kCreditPath, "D"); }

// Oracles frozen from an independent computation on the bundled data.
const Vector kCvOracle = {0.171893998707, 0.248280435639, 0.360784942464};
const Vector kVif0Oracle = {589.756765562, 281.889091424, 189.480580514};
const Vector kVif008Oracle = {8.98003178759, 8.66861034913, 8.57513515245};
const double kCn0Oracle = 332.3009617;
const double kCn001Oracle = 19.8305273;
const double kCn004Oracle = 9.966163148;

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

TEST_CASE("coefficient_of_variation matches the published values") {
    const Dataset d = credit();
    const Vector cv = coefficient_of_variation(d.X);
    REQUIRE(cv.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(cv[i] == doctest::Approx(kCvOracle[i]).epsilon(1e-10));
    const Vector published = {0.1718940, 0.2482804, 0.3607848};
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::fabs(cv[i] - published[i]) < 1e-5);
}

TEST_CASE("coefficient_of_variation corner cases") {
    Matrix X(2, 3);
    X(0, 0) = 1.0;
    X(1, 0) = 1.0;
    X(0, 1) = 5.0;
    X(1, 1) = 5.0;
    X(0, 2) = 1.0;
    X(1, 2) = -1.0;
    const Vector cv = coefficient_of_variation(X);
    REQUIRE(cv.size() == 2);
    CHECK(cv[0] == 0.0);
    CHECK(std::isinf(cv[1]));
}

TEST_CASE("vif_extended matches the published values") {
    const Dataset d = credit();

    const Vector v0 = vif_extended(d, 0.0);
    REQUIRE(v0.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(v0[i] == doctest::Approx(kVif0Oracle[i]).epsilon(1e-9));
    const Vector pub0 = {589.7540, 281.8862, 189.4874};
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::fabs(v0[i] - pub0[i]) / pub0[i] < 1e-3);

    const Vector v8 = vif_extended(d, 0.08);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(v8[i] == doctest::Approx(kVif008Oracle[i]).epsilon(1e-9));
    const Vector pub8 = {8.980033, 8.6686, 8.5752};
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::fabs(v8[i] - pub8[i]) / pub8[i] < 5e-3);
}

TEST_CASE("vif_extended is 1 on an orthogonal standardized design") {
    const Dataset d = orthogonal_toy();
    const Vector v = vif_extended(d, 0.0);
    for (double x : v) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vif_extended is >= 1, non-increasing, continuous at 0") {
    const Dataset d = credit();
    Vector prev = vif_extended(d, 0.0);
    for (double v : prev) CHECK(v >= 1.0 - 1e-9);
    for (double k : {0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 10.0, 1000.0}) {
        const Vector cur = vif_extended(d, k);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            CHECK(cur[i] >= 1.0 - 1e-9);
            CHECK(cur[i] <= prev[i] + 1e-9);
        }
        prev = cur;
    }
    const Vector near = vif_extended(d, 1e-10);
    const Vector at0 = vif_extended(d, 0.0);
    for (std::size_t i = 0; i < near.size(); ++i)
        CHECK(near[i] == doctest::Approx(at0[i]).epsilon(1e-4));
}

TEST_CASE("single-regressor VIF is 1") {
    Matrix R(5, 1);
    for (std::size_t i = 0; i < 5; ++i) R(i, 0) = static_cast<double>(i);
    const Dataset d = make_dataset({1.0, 3.0, 2.0, 5.0, 4.0}, R, {"x"}, "y");
    const Vector v = vif_extended(d, 0.3);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == 1.0);
}

TEST_CASE("condition_number_extended matches the published values") {
    const Dataset d = credit();
    CHECK(condition_number_extended(d, 0.0) ==
          doctest::Approx(kCn0Oracle).epsilon(1e-8));
    CHECK(condition_number_extended(d, 0.01) ==
          doctest::Approx(kCn001Oracle).epsilon(1e-8));
    CHECK(condition_number_extended(d, 0.04) ==
          doctest::Approx(kCn004Oracle).epsilon(1e-8));
    CHECK(std::fabs(condition_number_extended(d, 0.0) - 332.3) / 332.3 < 5e-3);
    CHECK(std::fabs(condition_number_extended(d, 0.01) - 19.8305) < 1e-3);
}

TEST_CASE("condition number is 1 for orthogonal columns at any k") {
    const Dataset d = orthogonal_toy();
    for (double k : {0.0, 0.1, 5.0})
        CHECK(condition_number_extended(d, k) ==
              doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("condition number decreases strictly to 1") {
    const Dataset d = credit();
    double prev = condition_number_extended(d, 0.0);
    for (double k : {0.01, 0.1, 1.0, 100.0, 1e6}) {
        const double cn = condition_number_extended(d, k);
        CHECK(cn < prev);
        CHECK(cn >= 1.0);
        prev = cn;
    }
    CHECK(condition_number_extended(d, 1e12) ==
          doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("correlation determinant is scale invariant") {
    const Dataset d = credit();
    const DiagnosticsReport base = full_report(d, 0.0);

    Matrix R(d.n(), 3);
    const double scales[3] = {3.5, 0.02, 117.0};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < d.n(); ++i)
            R(i, j) = scales[j] * d.X(i, j + 1);
    const Dataset ds = make_dataset(d.y, R, {"C", "I", "CP"}, "D");
    const DiagnosticsReport scaled = full_report(ds, 0.0);
    CHECK(scaled.corr_det == doctest::Approx(base.corr_det).epsilon(1e-10));
}

TEST_CASE("full_report verdicts on the credit data") {
    const Dataset d = credit();

    const DiagnosticsReport r0 = full_report(d, 0.0);
    CHECK(r0.corr_det == doctest::Approx(testdata::kCreditCorrDet).epsilon(1e-6));
    CHECK(r0.vif_trouble);
    CHECK(r0.cn_trouble_20);
    CHECK(r0.cn_trouble_30);
    CHECK(r0.det_trouble);
    CHECK_FALSE(r0.cv_trouble);
    CHECK_FALSE(r0.has_infinite_cv);

    const DiagnosticsReport r8 = full_report(d, 0.08);
    CHECK_FALSE(r8.vif_trouble);
    CHECK_FALSE(r8.cn_trouble_20);
    CHECK_FALSE(r8.cn_trouble_30);
}

TEST_CASE("full_report clears all flags on an orthogonal design") {
    const DiagnosticsReport r = full_report(orthogonal_toy(), 0.0);
    CHECK_FALSE(r.cv_trouble);
    CHECK_FALSE(r.vif_trouble);
    CHECK_FALSE(r.cn_trouble_20);
    CHECK_FALSE(r.cn_trouble_30);
    CHECK_FALSE(r.det_trouble);
    CHECK(r.has_infinite_cv);
}

TEST_CASE("diagnostics reject negative k") {
    const Dataset d = credit();
    CHECK_THROWS_AS(vif_extended(d, -0.1), InvalidArgument);
    CHECK_THROWS_AS(condition_number_extended(d, -0.1), InvalidArgument);
}
