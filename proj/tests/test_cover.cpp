#include <catch2/catch_amalgamated.hpp>

#include "confspec/cover.hpp"
#include "confspec/functionals.hpp"
#include "oracles.hpp"

using namespace confspec;
using Catch::Approx;

namespace {

MetricMeasureSpace cluster_cloud(int count, const SpherePoint& center, double spread,
                                 std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd coords(count, 4);
    Eigen::VectorXd m = Eigen::VectorXd::Constant(count, 1.0 / count);
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd v = center.coords();
        for (int c = 0; c < 4; ++c) v[c] += spread * rng.gaussian();
        coords.row(i) = v.normalized();
    }
    return MetricMeasureSpace(3, coords, m, m);
}

}  // namespace

TEST_CASE("zonal cloud discretizes both measures") {
    ConformalFactor mu(3, make_bubble(3, 2.0));
    MetricMeasureSpace cloud = build_zonal_cloud(mu, 2000, 5);
    CHECK(cloud.size() >= 2000);
    QuadratureGrid grid = QuadratureGrid::build(3, 48);
    CHECK(cloud.m_total() == Approx(measure_m_total(mu, grid)).epsilon(1e-12));
    CHECK(cloud.nu_total() == Approx(2.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("metric measure space validation") {
    Eigen::MatrixXd coords(2, 4);
    coords << 1, 0, 0, 0, 0, 1, 0, 0;
    Eigen::VectorXd w(2);
    w << 0.5, 0.5;
    CHECK_NOTHROW(MetricMeasureSpace(3, coords, w, w));
    Eigen::VectorXd neg(2);
    neg << 0.5, -0.1;
    CHECK_THROWS_AS(MetricMeasureSpace(3, coords, neg, w), std::invalid_argument);
    Eigen::MatrixXd off = coords;
    off(0, 0) = 1.5;
    CHECK_THROWS_AS(MetricMeasureSpace(3, off, w, w), std::invalid_argument);
}

TEST_CASE("decompose k=1 on a uniform cloud") {
    ConformalFactor one(3, make_constant(1.0));
    MetricMeasureSpace cloud = build_zonal_cloud(one, 2000, 11);
    AnnulusFamily fam = decompose(cloud, 1, 11);
    REQUIRE(fam.annuli.size() == 2u);
    CHECK(fam.achieved_c > 0.0);
    for (const auto& a : fam.annuli) CHECK(a.m_mass >= fam.achieved_c * cloud.m_total() - 1e-12);
    std::string diag;
    CHECK(verify_family(cloud, fam, &diag));
    INFO(diag);

    fam = reindex_and_select(std::move(fam), cloud, 1);
    REQUIRE(fam.selected.size() == 1u);
    CHECK(fam.annuli[fam.selected[0]].nu_doubled <=
          std::min(fam.annuli[0].nu_doubled, fam.annuli[1].nu_doubled) + 1e-15);
    CHECK(fam.annuli[fam.selected[0]].nu_doubled <= cloud.nu_total());
}

TEST_CASE("decompose on a concentrated two-cap measure") {
    ConformalFactor mu(3, make_two_bubble(3, 2.0));
    MetricMeasureSpace cloud = build_zonal_cloud(mu, 2200, 13);
    AnnulusFamily fam = decompose(cloud, 4, 13);
    REQUIRE(fam.annuli.size() == 8u);
    std::string diag;
    CHECK(verify_family(cloud, fam, &diag));
    INFO(diag);
    fam = reindex_and_select(std::move(fam), cloud, 4);
    for (int j : fam.selected)
        CHECK(fam.annuli[j].nu_doubled <= cloud.nu_total() / 4 * (1 + 1e-12));
}

TEST_CASE("non-atomicity proxy") {
    Eigen::MatrixXd coords(4, 4);
    coords << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
    Eigen::VectorXd m(4), nu(4);
    m << 0.97, 0.01, 0.01, 0.01;
    nu << 0.25, 0.25, 0.25, 0.25;
    MetricMeasureSpace degenerate(3, coords, m, nu);
    CHECK_THROWS_AS(decompose(degenerate, 2, 1), std::invalid_argument);
}

TEST_CASE("decompose is deterministic per seed") {
    ConformalFactor mu(3, make_bubble(3, 1.5));
    MetricMeasureSpace cloud = build_zonal_cloud(mu, 1600, 17);
    AnnulusFamily a = decompose(cloud, 3, 17);
    AnnulusFamily b = decompose(cloud, 3, 17);
    REQUIRE(a.annuli.size() == b.annuli.size());
    for (size_t i = 0; i < a.annuli.size(); ++i) {
        CHECK(a.annuli[i].center_index == b.annuli[i].center_index);
        CHECK(a.annuli[i].r == b.annuli[i].r);
        CHECK(a.annuli[i].R == b.annuli[i].R);
    }
}

TEST_CASE("reindex over random factors") {
    Rng rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        ConformalFactor mu(3, random_positive_polynomial(5, rng));
        MetricMeasureSpace cloud = build_zonal_cloud(mu, 1800, 100 + trial);
        int k = 4;
        AnnulusFamily fam = decompose(cloud, k, 100 + trial);
        std::string diag;
        REQUIRE(verify_family(cloud, fam, &diag));
        fam = reindex_and_select(std::move(fam), cloud, k);
        REQUIRE((int)fam.selected.size() == k);
        for (int j : fam.selected)
            CHECK(fam.annuli[j].nu_doubled <= cloud.nu_total() / k * (1 + 1e-12));
    }
}

TEST_CASE("achieved_c trend in k") {
    ConformalFactor one(3, make_constant(1.0));
    MetricMeasureSpace cloud = build_zonal_cloud(one, 2200, 23);
    double prev = 1e300;
    for (int k : {1, 2, 4, 8, 16}) {
        AnnulusFamily fam = decompose(cloud, k, 23);
        CHECK(fam.achieved_c <= prev + 1e-12);
        prev = fam.achieved_c;
    }
}

TEST_CASE("verifier rejects corrupted families") {
    ConformalFactor one(3, make_constant(1.0));
    MetricMeasureSpace cloud = build_zonal_cloud(one, 1500, 29);
    AnnulusFamily fam = decompose(cloud, 2, 29);
    std::string diag;
    REQUIRE(verify_family(cloud, fam, &diag));

    AnnulusFamily broken = fam;
    broken.annuli[0].m_mass *= 2.0;  // inconsistent certificate
    CHECK_FALSE(verify_family(cloud, broken, &diag));

    AnnulusFamily overlapping = fam;
    overlapping.annuli[0].R = M_PI * 0.49;  // giant annulus overlaps the others
    overlapping.annuli[0].r = 0.0;
    CHECK_FALSE(verify_family(cloud, overlapping, &diag));
}

TEST_CASE("doubling estimates") {
    ConformalFactor one(3, make_constant(1.0));
    MetricMeasureSpace uniform = build_zonal_cloud(one, 2200, 31);
    double est = estimate_doubling(uniform, 250, 31);
    CHECK(est <= 8.0 * 1.15);
    CHECK(est > 1.0);

    // single tight cluster: big balls saturate, ratio near 1
    MetricMeasureSpace cluster = cluster_cloud(400, SpherePoint::axis(3, 0), 0.02, 33);
    double est_cluster = estimate_doubling(cluster, 200, 33);
    CHECK(est_cluster == Approx(1.0).margin(0.2));

    // two far clusters can exceed 2^n (diagnostic only, not a sphere sample)
    Rng rng(37);
    Eigen::MatrixXd coords(400, 4);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(400, 1.0 / 400);
    for (int i = 0; i < 400; ++i) {
        Eigen::VectorXd v = (i % 2 == 0 ? SpherePoint::axis(3, 0) : SpherePoint::axis(3, 0).antipode()).coords();
        for (int c = 0; c < 4; ++c) v[c] += 0.05 * rng.gaussian();
        coords.row(i) = v.normalized();
    }
    MetricMeasureSpace twoclusters(3, coords, w, w);
    double est_two = estimate_doubling(twoclusters, 400, 37);
    CHECK(est_two > 8.0);
}

TEST_CASE("covering number diagnostic") {
    ConformalFactor one(3, make_constant(1.0));
    MetricMeasureSpace uniform = build_zonal_cloud(one, 1800, 41);
    CoveringReport rep = covering_number_check(uniform, 40, 41);
    CHECK(rep.samples_used > 0);
    CHECK(rep.pass);
    CHECK(rep.max_cover_count <= rep.threshold);
}
