#include <catch2/catch_amalgamated.hpp>

#include "confspec/spectrum.hpp"
#include "oracles.hpp"

using namespace confspec;
using Catch::Approx;

TEST_CASE("closed-form round spectrum") {
    auto eig = round_box_eigenvalues(3, 4);
    CHECK(eig[0].first == Approx(0.75));
    CHECK(eig[0].second == 1);
    CHECK(eig[1].first == Approx(3.75));
    CHECK(eig[1].second == 4);
    CHECK(eig[2].first == Approx(8.75));
    CHECK(eig[2].second == 9);
    CHECK(eig[3].second == 16);
    CHECK(harmonic_dimension(2, 5) == 11);   // 2j+1 on S^2
    CHECK(harmonic_dimension(4, 1) == 5);
}

TEST_CASE("round blocks reproduce the separated spectrum") {
    ConformalFactor one(3, make_constant(1.0));
    SpectralProblem prob(one, 12);
    for (int j : {0, 1, 3, 7}) {
        auto [S, M] = assemble_block(prob, j);
        CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
        Eigen::VectorXd ev = solve_block(S, M);
        for (int i = 0; i < ev.size(); ++i) {
            int l = j + i;
            CHECK(ev[i] == Approx(l * (l + 2) + 0.75).margin(1e-9));
        }
        // round mass matrix is the identity in this basis
        CHECK((M - Eigen::MatrixXd::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("1x1 block: constant eigenfunction") {
    ConformalFactor one(3, make_constant(1.0));
    SpectralProblem prob(one, 4, 0, 0);
    auto [S, M] = assemble_block(prob, 0);
    Eigen::MatrixXd S1 = S.topLeftCorner(1, 1), M1 = M.topLeftCorner(1, 1);
    Eigen::VectorXd ev = solve_block(S1, M1);
    CHECK(ev[0] == Approx(0.75).margin(1e-12));
}

TEST_CASE("solve_block basics and oracle") {
    // diagonal pencil
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2, 2), M = Eigen::MatrixXd::Zero(2, 2);
    S(0, 0) = 1.0;
    S(1, 1) = 2.0;
    M(0, 0) = 1.0;
    M(1, 1) = 4.0;
    Eigen::VectorXd ev = solve_block(S, M);
    CHECK(ev[0] == Approx(0.5));
    CHECK(ev[1] == Approx(1.0));

    // identity mass reduces to a plain symmetric problem
    Rng rng(401);
    const int m = 12;
    Eigen::MatrixXd A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd plain = solve_block(A, Eigen::MatrixXd::Identity(m, m));
    Eigen::VectorXd oracle = oracles::jacobi_eigenvalues(A);
    for (int i = 0; i < m; ++i) CHECK(plain[i] == Approx(oracle[i]).margin(1e-10));

    // random SPD pencil against the brute-force generalized oracle
    const int p = 20;
    Eigen::MatrixXd B(p, p), C(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j <= i; ++j) B(i, j) = B(j, i) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j <= i; ++j) C(i, j) = C(j, i) = rng.uniform(-0.3, 0.3);
    C += p * Eigen::MatrixXd::Identity(p, p);  // diagonally dominant -> SPD
    Eigen::VectorXd got = solve_block(B, C);
    Eigen::VectorXd want = oracles::generalized_eigen_bruteforce(B, C);
    for (int i = 0; i < p; ++i) CHECK(got[i] == Approx(want[i]).margin(1e-9));

    // non-SPD mass is rejected
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
    bad(2, 2) = -1.0;
    CHECK_THROWS_AS(solve_block(Eigen::MatrixXd::Identity(3, 3), bad),
                    MassNotPositiveDefinite);
}

TEST_CASE("merged round spectrum with multiplicities") {
    ConformalFactor one(3, make_constant(1.0));
    SpectrumResult res = compute_spectrum(one, 6, {.with_trust = false});
    auto ex = res.expanded(30);
    std::vector<double> want;
    for (auto [val, mult] : round_box_eigenvalues(3, 3))
        for (int i = 0; i < mult; ++i) want.push_back(val);
    REQUIRE(ex.size() == 30u);
    for (size_t i = 0; i < want.size(); ++i) CHECK(ex[i] == Approx(want[i]).margin(1e-10));

    // eigenvalue 3.75 comes from block 0 (second radial mode) and block 1
    int count_block0 = 0, count_block1 = 0;
    for (const auto& e : res.entries()) {
        if (std::abs(e.value - 3.75) < 1e-9) {
            if (e.block == 0) count_block0 += (int)e.multiplicity;
            if (e.block == 1) count_block1 += (int)e.multiplicity;
        }
    }
    CHECK(count_block0 == 1);
    CHECK(count_block1 == 3);
}

TEST_CASE("single-block merge is the identity") {
    Eigen::VectorXd ev(3);
    ev << 0.5, 1.5, 9.0;
    SpectrumResult res = merge_spectrum(3, 4, {ev});
    REQUIRE(res.entries().size() == 3u);
    for (int i = 0; i < 3; ++i) {
        CHECK(res.entries()[i].value == ev[i]);
        CHECK(res.entries()[i].block == 0);
        CHECK(res.entries()[i].multiplicity == 1);
    }
}

TEST_CASE("lambda_k indexing and trust gate") {
    ConformalFactor one(3, make_constant(1.0));
    SpectrumResult res = compute_spectrum(one, 12);
    CHECK(lambda_k(res, 0) == Approx(0.75).margin(1e-10));
    for (int k = 1; k <= 4; ++k) CHECK(lambda_k(res, k) == Approx(3.75).margin(1e-10));
    CHECK(lambda_k(res, 5) == Approx(8.75).margin(1e-10));
    CHECK(res.trusted_count() > 30);
    CHECK_THROWS_AS(lambda_k(res, res.trusted_count()), std::out_of_range);
}

TEST_CASE("homothety scaling") {
    ConformalFactor two(3, make_constant(2.0));
    SpectrumResult res = compute_spectrum(two, 10, {.with_trust = false});
    auto ex = res.expanded(14);
    CHECK(ex[0] == Approx(0.75 / 16.0).epsilon(1e-13));
    for (int k = 1; k <= 4; ++k) CHECK(ex[k] == Approx(3.75 / 16.0).epsilon(1e-13));
    CHECK(ex[5] == Approx(8.75 / 16.0).epsilon(1e-13));
}

TEST_CASE("isospectrality of dilation pullbacks") {
    ConformalFactor omega(3, make_bubble(3, 1.5));
    SpectrumResult res = compute_spectrum(omega, 40, {.with_trust = false});
    auto ex = res.expanded(10);
    std::vector<double> want;
    for (auto [val, mult] : round_box_eigenvalues(3, 3))
        for (int i = 0; i < mult && want.size() < 10; ++i) want.push_back(val);
    for (int i = 0; i < 10; ++i) CHECK(ex[i] == Approx(want[i]).margin(1e-6));
}

TEST_CASE("positivity and Rayleigh-Ritz monotonicity") {
    Rng rng(409);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> c{1.0};
        for (int d = 0; d < 5; ++d) c.push_back(rng.uniform(-0.3, 0.3));
        ConformalFactor mu(3, make_polynomial(c));
        SpectrumResult lo = compute_spectrum(mu, 12);
        SpectrumResult hi = compute_spectrum(mu, 16, {.with_trust = false});
        auto a = lo.expanded(lo.trusted_count());
        auto b = hi.expanded(lo.trusted_count());
        REQUIRE(!a.empty());
        CHECK(a[0] > 0.0);
        for (size_t i = 0; i < a.size(); ++i) CHECK(b[i] <= a[i] + 1e-12);
    }
}

TEST_CASE("quadrature order validation") {
    ConformalFactor mu(3, make_polynomial({1.0, 0.5, 0.25}));
    CHECK_THROWS_AS(SpectralProblem(mu, 12, 20), std::invalid_argument);  // 20 < 2L+deg+2
    CHECK_NOTHROW(SpectralProblem(mu, 12, 40));
    CHECK_THROWS_AS(SpectralProblem(mu, 3), std::invalid_argument);  // L >= 4
}
