#include <iostream>

#include <CLI11.hpp>

#include "micz/runner.hpp"

int main(int argc, char** argv) {
    micz::RunOptions opt;
    CLI::App app{"Exact verification of the generalized MICZ-Kepler dynamical algebra "
                 "(D = 2n, magnetic charge mu)"};
    app.add_option("--n", opt.n, "half-dimension n, D = 2n")->capture_default_str();
    app.add_option("--mu", opt.mu, "magnetic charge: 0, 1/2, or 1 (negative control)")
        ->capture_default_str();
    app.add_option("--suites", opt.suites,
                   "comma-separated subset of gauge, closed-forms, commutation, quadratic, "
                   "radial, full-scalar, reps, abstract, all")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--mode", opt.mode, "exact or float")->capture_default_str();
    app.add_option("--points", opt.points,
                   "sample points for pointwise strategies (0 = 20 exact / 200 float)")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for sampled points and subsets")
        ->capture_default_str();
    app.add_option("--kmax", opt.kmax, "largest radial quantum number k")->capture_default_str();
    app.add_option("--lmax", opt.lmax, "largest angular label l")->capture_default_str();
    app.add_option("--imax", opt.imax, "largest level I in the module decomposition")
        ->capture_default_str();
    app.add_option("--format", opt.format, "text or json")->capture_default_str();
    app.add_flag("--timings", opt.timings, "report wall-clock millis per item");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return micz::run_cli(opt, std::cout, std::cerr);
}
