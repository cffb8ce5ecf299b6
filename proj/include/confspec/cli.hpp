#pragma once

// Command implementations behind the confspec binary. Each command reads a
// RunConfig, writes results.csv plus manifest.json (and command-specific
// artifacts) under the output directory, and returns a process exit code.
// Manifests carry every input needed to reproduce a run bit-for-bit; no
// timestamps or environment data.

#include <filesystem>
#include <iostream>
#include <sstream>

#include "confspec/io.hpp"

namespace confspec {

struct RunConfig {
    std::string command;
    int n = 3;
    int L = 24;
    int quad_order = 0;  // 0: solver default
    std::vector<std::string> families;
    std::vector<int> k_list;
    int kmax = 20;
    int count = 50;      // sample count for hersch
    int cloud_points = 2500;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
};

namespace detail {

inline FunctionalOptions functional_options(const RunConfig& rc) {
    FunctionalOptions o;
    o.L = rc.L;
    o.quad_order = rc.quad_order;
    o.cloud_points = rc.cloud_points;
    o.seed = rc.seed;
    return o;
}

inline nlohmann::json manifest_base(const RunConfig& rc) {
    nlohmann::json j;
    j["command"] = rc.command;
    j["n"] = rc.n;
    j["L"] = rc.L;
    j["quad_order"] = rc.quad_order;
    j["families"] = rc.families;
    j["k_list"] = rc.k_list;
    j["kmax"] = rc.kmax;
    j["count"] = rc.count;
    j["cloud_points"] = rc.cloud_points;
    j["seed"] = rc.seed;
    j["tolerances"] = {{"mu_floor", 1e-8},
                       {"trust_tol", 1e-7},
                       {"trust_increment", 8},
                       {"eigen_residual", 1e-9}};
    return j;
}

inline std::filesystem::path prepare_out(const RunConfig& rc) {
    std::filesystem::path dir(rc.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_manifest(const std::filesystem::path& dir, const nlohmann::json& j) {
    write_text(dir / "manifest.json", j.dump(2) + "\n");
}

inline ConformalFactor single_factor(const RunConfig& rc) {
    if (rc.families.size() != 1)
        throw std::invalid_argument("this command needs exactly one --family");
    auto members = family_generators(rc.n, rc.families[0], rc.seed);
    if (members.size() != 1)
        throw std::invalid_argument("this command needs a family spec with a single member; got " +
                                    std::to_string(members.size()));
    return members[0].mu;
}

}  // namespace detail

/// Solves the spectrum for one conformal factor and writes it as CSV. For
/// constant factors the result is also checked against the closed-form
/// round spectrum scaled by c^{-4/(n-2)} as a built-in self test.
inline int cmd_spectrum(const RunConfig& rc) {
    auto dir = detail::prepare_out(rc);
    ConformalFactor mu = detail::single_factor(rc);
    SpectrumOptions so;
    so.quad_order = rc.quad_order;
    SpectrumResult res = compute_spectrum(mu, rc.L, so);

    if (auto* c = dynamic_cast<const ConstantProfile*>(&mu.profile())) {
        double scale = std::pow(c->value(0.0), -mu.exponent_m());
        auto closed = round_box_eigenvalues(rc.n, rc.L);
        auto got = res.expanded(std::min<std::int64_t>(res.trusted_count(), 30));
        std::int64_t idx = 0;
        for (auto [val, mult] : closed) {
            for (std::int64_t i = 0; i < mult && idx < (std::int64_t)got.size(); ++i, ++idx) {
                if (std::abs(got[idx] - val * scale) > 1e-8 * std::max(1.0, val * scale)) {
                    std::cerr << "self-test failed: eigenvalue " << idx << " = " << got[idx]
                              << ", closed form " << val * scale << "\n";
                    return 1;
                }
            }
        }
        std::cout << "constant-factor self-test: " << idx << " eigenvalues match closed form\n";
    }

    spectrum_csv(res).write(dir / "results.csv");
    auto manifest = detail::manifest_base(rc);
    manifest["trusted_count"] = res.trusted_count();
    manifest["total_count"] = res.total_count();
    detail::write_manifest(dir, manifest);
    std::cout << "spectrum: " << res.trusted_count() << " trusted eigenvalues written to "
              << (dir / "results.csv") << "\n";
    return 0;
}

/// Runs the covering certification pipeline for each requested k and writes
/// per-k bound reports. Min-max consistency is a hard assertion.
inline int cmd_certify(const RunConfig& rc) {
    auto dir = detail::prepare_out(rc);
    ConformalFactor mu = detail::single_factor(rc);
    FunctionalOptions fo = detail::functional_options(rc);
    SpectralSummary summary = summarize(mu, fo);

    CsvWriter csv({"k", "certified_bound", "solver_lambda", "normalized_bound", "bound_ratio",
                   "solver_ratio", "achieved_c"});
    nlohmann::json reports = nlohmann::json::array();
    std::vector<int> ks = rc.k_list.empty() ? std::vector<int>{1, 2, 4} : rc.k_list;
    for (int k : ks) {
        BoundReport rep = certify_upper_bound(mu, k, fo, &summary);
        csv.add_row({std::to_string(k), format_number(rep.certified_bound),
                     format_number(rep.solver_value), format_number(rep.normalized_bound),
                     format_number(rep.bound_ratio), format_number(rep.solver_ratio),
                     format_number(rep.achieved_c)});
        reports.push_back(bound_report_json(rep));
        std::cout << "k=" << k << ": certified " << rep.certified_bound << " >= solver "
                  << rep.solver_value << " (achieved_c=" << rep.achieved_c << ")\n";
    }
    csv.write(dir / "results.csv");
    write_text(dir / "bound_reports.json", reports.dump(2) + "\n");
    detail::write_manifest(dir, detail::manifest_base(rc));
    return 0;
}

/// Family sweep of the functionals: ratio table, concentration-family
/// companion table, and SVG plots.
inline int cmd_sweep(const RunConfig& rc) {
    auto dir = detail::prepare_out(rc);
    std::vector<FamilyMember> fams;
    if (rc.families.empty() || (rc.families.size() == 1 && rc.families[0] == "default")) {
        fams = korevaar_regression_families(rc.n);
    } else {
        for (const auto& spec : rc.families)
            for (auto& fm : family_generators(rc.n, spec, rc.seed)) fams.push_back(std::move(fm));
    }
    FunctionalOptions fo = detail::functional_options(rc);
    std::vector<SweepRow> rows = korevaar_sweep(fams, rc.kmax, fo);
    sweep_csv(rows).write(dir / "results.csv");

    std::filesystem::create_directories(dir / "plots");
    SvgPlot ratio_plot("normalized eigenvalue ratio", "k", "lambda_bar_k / k^(2/n)");
    for (const auto& fm : fams) {
        std::vector<double> xs, ys;
        for (const auto& r : rows)
            if (r.params == fm.params && r.k >= 1) {
                xs.push_back((double)r.k);
                ys.push_back(r.ratio);
            }
        if (!xs.empty()) ratio_plot.add_series(fm.params, xs, ys);
    }
    ratio_plot.write(dir / "plots" / "ratio_vs_k.svg");

    // concentration trend: volume-normalized functional along the twobubble family
    std::vector<double> ts, vols, bars;
    for (const auto& fm : fams) {
        if (fm.family != "twobubble") continue;
        auto open = fm.params.find("bubble:");
        double t = std::stod(fm.params.substr(open + 7));
        for (const auto& r : rows)
            if (r.params == fm.params && r.k == 1) {
                ts.push_back(t);
                vols.push_back(r.volume_normalized);
                bars.push_back(r.lambda_bar);
            }
    }
    if (!ts.empty()) {
        CsvWriter conc({"t", "volume_normalized_lambda1", "lambda_bar_1"});
        for (size_t i = 0; i < ts.size(); ++i)
            conc.add_row({format_number(ts[i]), format_number(vols[i]), format_number(bars[i])});
        conc.write(dir / "concentration.csv");
        SvgPlot trend("concentration family trend", "t", "lambda_1 * Vol(g~)^(2/n)");
        trend.add_series("twobubble", ts, vols);
        trend.write(dir / "plots" / "functional_vs_param.svg");
    }

    auto manifest = detail::manifest_base(rc);
    manifest["max_ratio"] = max_korevaar_ratio(rows);
    manifest["family_count"] = fams.size();
    detail::write_manifest(dir, manifest);
    std::cout << "sweep: " << rows.size() << " rows, max ratio " << max_korevaar_ratio(rows)
              << "\n";
    return 0;
}

/// Standalone invariant suite for the test functions; prints one pass/fail
/// line per property.
inline int cmd_testfn(const RunConfig& rc) {
    const int n = rc.n;
    SpherePoint p = SpherePoint::axis(n, 0);
    Rng rng(rc.seed);
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        all_ok = all_ok && ok;
    };

    {
        bool ok = true;
        double prev = 0.0;
        for (int i = 1; i <= 1000; ++i) {
            double R = i * (0.5 * M_PI - 2e-4) / 1000.0 + 1e-4;
            double f = boundary_profile_f(R);
            if (i > 1 && f <= prev) ok = false;
            prev = f;
        }
        ok = ok && std::abs(boundary_profile_f(1e-4) - 0.6) < 1e-6;
        report("boundary profile f increasing with f(0+) = 3/5", ok);
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            double R = rng.uniform(0.05, 0.5 * M_PI - 0.05);
            double r = rng.uniform(0.02, 2.0 * R * 0.9);
            TestFunction ball = TestFunction::ball(p, R);
            TestFunction comp = TestFunction::complement(p, r);
            TestFunction ann = TestFunction::annulus(p, std::min(r, R * 0.9), R);
            for (int i = 0; i < 500; ++i) {
                double phi = rng.uniform(0.0, M_PI);
                for (const TestFunction* tf : {&ball, &comp, &ann}) {
                    double v = tf->value(phi);
                    if (!(v >= 0.0 && v <= 1.0)) ok = false;
                }
            }
        }
        report("0 <= phi <= 1 for all kinds", ok);
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            double R = rng.uniform(0.05, 0.5 * M_PI - 0.05);
            double r = rng.uniform(0.02, R * 0.9);
            TestFunction ball = TestFunction::ball(p, R);
            TestFunction comp = TestFunction::complement(p, r);
            TestFunction ann = TestFunction::annulus(p, r, R);
            for (int i = 0; i <= 2000; ++i) {
                double phi_in = R * i / 2000.0;
                if (ball.value(phi_in) < 0.6 - 1e-12) ok = false;
                double phi_out = r + (M_PI - r) * i / 2000.0;
                if (comp.value(phi_out) < 0.6 - 1e-12) ok = false;
                double phi_ann = r + (R - r) * i / 2000.0 * 0.9999;
                if (ann.value(phi_ann) < 0.36 - 1e-12) ok = false;
            }
        }
        report("phi >= 3/5 on B(p,R); phibar >= 3/5 off B(p,r); phi >= 9/25 on A", ok);
    }
    {
        bool ok = true;
        for (double t : {0.1, 1.0, 10.0})
            ok = ok && std::abs(dilation_gradient_integral(t) - 0.5) < 1e-10;
        report("inner gradient integral = 1/2 for t in {0.1, 1, 10}", ok);
    }
    {
        bool ok = true;
        for (int dim : {3, 4, 5}) {
            double cap = 2.0 * sphere_volume(dim - 1);
            for (int i = 1; i <= 12; ++i) {
                double R = i * (0.5 * M_PI) / 13.0;
                TestFunction ball = TestFunction::ball(SpherePoint::axis(dim, 0), R);
                if (energy_n_norm(ball, dim) > cap) ok = false;
            }
        }
        report("gradient n-energy of phi_ball <= 2 Vol(S^{n-1}) for n in {3,4,5}", ok);
    }
    return all_ok ? 0 : 1;
}

/// Standalone covering diagnostics on a cloud built from the given factor.
inline int cmd_cover(const RunConfig& rc) {
    ConformalFactor mu = rc.families.empty()
                             ? ConformalFactor(rc.n, make_constant(1.0))
                             : detail::single_factor(rc);
    MetricMeasureSpace cloud = build_zonal_cloud(mu, rc.cloud_points, rc.seed);
    std::cout << "cloud: " << cloud.size() << " points, m total " << cloud.m_total() << "\n";
    bool all_ok = true;

    std::vector<int> ks = rc.k_list.empty() ? std::vector<int>{1, 2, 4, 8} : rc.k_list;
    for (int k : ks) {
        AnnulusFamily fam = decompose(cloud, k, rc.seed);
        std::string diag;
        bool ok = verify_family(cloud, fam, &diag);
        if (ok) {
            fam = reindex_and_select(std::move(fam), cloud, k);
            for (int j : fam.selected)
                ok = ok && fam.annuli[j].nu_doubled <= cloud.nu_total() / k * (1.0 + 1e-12);
        }
        std::cout << (ok ? "PASS " : "FAIL ") << "decompose k=" << k
                  << " achieved_c=" << fam.achieved_c << (diag.empty() ? "" : " (" + diag + ")")
                  << "\n";
        all_ok = all_ok && ok && fam.achieved_c >= 0.01;
    }

    double doubling = estimate_doubling(cloud, 300, rc.seed);
    bool dok = doubling <= std::pow(2.0, rc.n) * 1.15;
    std::cout << (dok ? "PASS " : "FAIL ") << "doubling estimate " << doubling << " <= "
              << std::pow(2.0, rc.n) * 1.15 << "\n";

    CoveringReport cov = covering_number_check(cloud, 60, rc.seed);
    std::cout << (cov.pass ? "PASS " : "FAIL ") << "covering count " << cov.max_cover_count
              << " <= " << cov.threshold << " (" << cov.samples_used << " samples)\n";

    return (all_ok && dok && cov.pass) ? 0 : 1;
}

/// Hersch functional over seeded random zonal factors; writes the gaps.
inline int cmd_hersch(const RunConfig& rc) {
    auto dir = detail::prepare_out(rc);
    FunctionalOptions fo = detail::functional_options(rc);
    CsvWriter csv({"sample", "params", "oscillation", "lambda_bar_0", "round_lambda_bar_0",
                   "gap"});
    int violations = 0;
    for (int i = 0; i < rc.count; ++i) {
        Rng rng(rc.seed + 104729u * (std::uint64_t)i);
        ProfilePtr prof = random_positive_polynomial(6, rng);
        ConformalFactor mu(rc.n, prof);
        HerschReport rep = hersch_check(mu, fo);
        if (rep.gap < -1e-8 * rep.round_normalized_lambda0) ++violations;
        if (rep.oscillation > 1e-2 && rep.gap <= 1e-6) ++violations;
        csv.add_row({std::to_string(i), prof->describe(), format_number(rep.oscillation),
                     format_number(rep.normalized_lambda0),
                     format_number(rep.round_normalized_lambda0), format_number(rep.gap)});
    }
    csv.write(dir / "results.csv");
    detail::write_manifest(dir, detail::manifest_base(rc));
    std::cout << "hersch: " << rc.count << " samples, " << violations << " violations\n";
    return violations == 0 ? 0 : 1;
}

inline int run_command(const RunConfig& rc) {
    if (rc.command == "spectrum") return cmd_spectrum(rc);
    if (rc.command == "certify") return cmd_certify(rc);
    if (rc.command == "sweep") return cmd_sweep(rc);
    if (rc.command == "testfn") return cmd_testfn(rc);
    if (rc.command == "cover") return cmd_cover(rc);
    if (rc.command == "hersch") return cmd_hersch(rc);
    throw std::invalid_argument("unknown command '" + rc.command + "'");
}

}  // namespace confspec
