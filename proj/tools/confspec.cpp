// Command-line front end for the conformal-spectrum laboratory.

#include <CLI11.hpp>

#include "confspec/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"confspec: conformal Laplacian spectra and covering-based eigenvalue bounds"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; command-line flags win");
    app.allow_config_extras(CLI::config_extras_mode::ignore);

    confspec::RunConfig rc;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", rc.n, "sphere dimension (>= 3)");
        sub->add_option("--L", rc.L, "Galerkin truncation degree");
        sub->add_option("--quad-order", rc.quad_order, "quadrature order (0 = automatic)");
        sub->add_option("--family", rc.families,
                        "conformal factor family spec (repeatable); e.g. const:1, bubble:2, "
                        "twobubble:1.5,3, randpoly:6,3, poly:1,0.2");
        sub->add_option("--k", rc.k_list, "eigenvalue/annuli counts (repeatable)");
        sub->add_option("--kmax", rc.kmax, "largest k in sweeps");
        sub->add_option("--count", rc.count, "sample count for hersch");
        sub->add_option("--cloud-points", rc.cloud_points, "target covering cloud size");
        sub->add_option("--seed", rc.seed, "random seed (recorded in manifest)");
        sub->add_option("--out", rc.out_dir, "output directory");
    };
    for (const char* name : {"spectrum", "certify", "sweep", "testfn", "cover", "hersch"}) {
        auto* sub = app.add_subcommand(name);
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
        rc.command = app.get_subcommands().front()->get_name();
        if (rc.n < 3) throw std::invalid_argument("--n must be at least 3");
        for (int k : rc.k_list)
            if (k < 1) throw std::invalid_argument("--k entries must be positive");
        return confspec::run_command(rc);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
