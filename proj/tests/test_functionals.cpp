#include <catch2/catch_amalgamated.hpp>

#include "confspec/functionals.hpp"
#include "oracles.hpp"

using namespace confspec;
using Catch::Approx;

namespace {
const double kVolS3 = 2.0 * M_PI * M_PI;
FunctionalOptions fast_opts() {
    FunctionalOptions o;
    o.L = 16;
    o.cloud_points = 1500;
    return o;
}
}  // namespace

TEST_CASE("normalized eigenvalue closed forms") {
    ConformalFactor one(3, make_constant(1.0));
    SpectralSummary s = summarize(one);
    CHECK(normalized_eigenvalue(s, 0) == Approx(0.75 * kVolS3).epsilon(1e-10));

    // homothety cancellation
    ConformalFactor c2(3, make_constant(2.0));
    SpectralSummary s2 = summarize(c2);
    for (int k : {0, 1, 5}) {
        CHECK(normalized_eigenvalue(s2, k) == Approx(normalized_eigenvalue(s, k)).epsilon(1e-10));
    }

    // dilation pullback: lambda_0 is round but the m-mass shrinks, so
    // lambda_bar_0 = 0.75 * 8 pi^2 t/(1+t)^2 < lambda_bar_0(round)
    double t = 2.0;
    ConformalFactor omega(3, make_bubble(3, t));
    SpectralSummary so = summarize(omega, FunctionalOptions{.L = 32});
    double want = 0.75 * 8.0 * M_PI * M_PI * t / ((1.0 + t) * (1.0 + t));
    CHECK(normalized_eigenvalue(so, 0) == Approx(want).epsilon(1e-7));
    CHECK(normalized_eigenvalue(so, 0) < 0.75 * kVolS3);
}

TEST_CASE("korevaar ratio closed forms") {
    ConformalFactor one(3, make_constant(1.0));
    SpectralSummary s = summarize(one);
    CHECK(korevaar_ratio(s, 1) == Approx(3.75 * kVolS3).epsilon(1e-10));
    CHECK(korevaar_ratio(s, 4) < korevaar_ratio(s, 1));  // eigenvalue plateau
    CHECK_THROWS_AS(korevaar_ratio(s, 0), std::invalid_argument);
}

TEST_CASE("volume normalized functional") {
    ConformalFactor one(3, make_constant(1.0));
    SpectralSummary s = summarize(one);
    CHECK(volume_normalized(s, 0) ==
          Approx(0.75 * std::pow(kVolS3, 2.0 / 3.0)).epsilon(1e-10));
    ConformalFactor c3(3, make_constant(3.0));
    SpectralSummary s3 = summarize(c3);
    CHECK(volume_normalized(s3, 0) == Approx(volume_normalized(s, 0)).epsilon(1e-10));
}

TEST_CASE("scale invariance of lambda_bar") {
    Rng rng(509);
    ConformalFactor base(3, random_positive_polynomial(5, rng));
    SpectralSummary sb = summarize(base);
    for (double c : {0.1, 10.0}) {
        ConformalFactor scaled(3, std::make_shared<ProductProfile>(base.profile_ptr(),
                                                                   make_constant(c)));
        SpectralSummary sc = summarize(scaled);
        for (int k : {0, 1, 3})
            CHECK(normalized_eigenvalue(sc, k) ==
                  Approx(normalized_eigenvalue(sb, k)).epsilon(1e-10));
    }
}

TEST_CASE("certified upper bounds on the round sphere") {
    ConformalFactor one(3, make_constant(1.0));
    FunctionalOptions opts = fast_opts();
    SpectralSummary s = summarize(one, opts);

    BoundReport r1 = certify_upper_bound(one, 1, opts, &s);
    CHECK(r1.solver_value == Approx(0.75).margin(1e-8));
    CHECK(r1.certified_bound >= 0.75);
    CHECK(r1.quotients.size() == 1u);

    BoundReport r5 = certify_upper_bound(one, 5, opts, &s);
    CHECK(r5.solver_value == Approx(3.75).margin(1e-8));
    CHECK(r5.certified_bound >= 3.75);
    CHECK(r5.quotients.size() == 5u);
    for (double q : r5.quotients) CHECK(q > 0.0);
}

TEST_CASE("min-max consistency for mixed factors") {
    Rng rng(521);
    FunctionalOptions opts = fast_opts();
    std::vector<ConformalFactor> mus{ConformalFactor(3, make_bubble(3, 1.5)),
                                     ConformalFactor(3, make_two_bubble(3, 2.0)),
                                     ConformalFactor(3, random_positive_polynomial(6, rng))};
    for (const auto& mu : mus) {
        for (int k : {1, 3}) {
            BoundReport rep = certify_upper_bound(mu, k, opts);
            CHECK(rep.certified_bound >= rep.solver_value);
            CHECK(rep.achieved_c > 0.0);
        }
    }
}

TEST_CASE("hersch check") {
    ConformalFactor one(3, make_constant(1.0));
    HerschReport h1 = hersch_check(one);
    CHECK(h1.round_normalized_lambda0 == Approx(0.75 * kVolS3).epsilon(1e-14));
    CHECK(std::abs(h1.gap) < 1e-10);

    ConformalFactor c4(3, make_constant(4.0));
    HerschReport h4 = hersch_check(c4);
    CHECK(std::abs(h4.gap) < 1e-10);

    Rng rng(523);
    for (int trial = 0; trial < 5; ++trial) {
        ConformalFactor mu(3, random_positive_polynomial(6, rng));
        HerschReport h = hersch_check(mu);
        CHECK(h.gap > 0.0);
        if (h.oscillation > 1e-2) CHECK(h.gap > 1e-6);
        CHECK(h.normalized_lambda0 <= h.round_normalized_lambda0 + 1e-8);
    }
}

TEST_CASE("family generators") {
    auto consts = family_generators(3, "const");
    CHECK(consts.size() == 3u);
    auto bubbles = family_generators(3, "bubble:1.5,3");
    CHECK(bubbles.size() == 2u);
    CHECK(bubbles[0].params == "bubble:1.5");
    auto polys = family_generators(3, "randpoly:6,4", 99);
    CHECK(polys.size() == 4u);
    // deterministic for a fixed seed
    auto polys2 = family_generators(3, "randpoly:6,4", 99);
    for (size_t i = 0; i < polys.size(); ++i) CHECK(polys[i].params == polys2[i].params);
    CHECK_THROWS_AS(family_generators(3, "nope"), std::invalid_argument);

    auto regression = korevaar_regression_families();
    CHECK(regression.size() == 10u);  // 1 const + 3 bubbles + 3 twobubbles + 3 polys
}

TEST_CASE("sweep rows") {
    FunctionalOptions opts;
    opts.L = 12;
    auto fams = family_generators(3, "const:1");
    auto rows = korevaar_sweep(fams, 5, opts);
    REQUIRE(rows.size() == 6u);
    CHECK(rows[1].ratio == Approx(3.75 * kVolS3).epsilon(1e-9));
    CHECK(rows[0].hersch_gap == Approx(0.0).margin(1e-9));
    CHECK(max_korevaar_ratio(rows) == Approx(3.75 * kVolS3).epsilon(1e-9));
    CHECK_THROWS_AS(korevaar_sweep({}, 5, opts), std::invalid_argument);
}
