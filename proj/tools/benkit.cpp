#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "benkit/cli.hpp"

namespace {

// Out-dir precedence: --out, then BENKIT_OUT_DIR, then cwd.
std::string default_out_dir() {
    if (const char* env = std::getenv("BENKIT_OUT_DIR")) return env;
    return ".";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benkit: deviation-inequality and generalization-bound toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global flags after the subcommand

    std::string config_path;
    std::string out_dir = default_out_dir();
    std::string format = "csv";
    std::optional<uint64_t> seed;

    app.add_option("--config", config_path, "configuration file (key = value sections)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "payload format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", seed, "override every configured seed");

    auto* eval = app.add_subcommand("eval", "evaluate tail bounds (deviation -> probability)");
    auto* invert = app.add_subcommand("invert", "invert bounds (confidence -> radius)");
    auto* constants = app.add_subcommand(
        "constants", "re-derive the exponent-interval constants and figure data");
    auto* complexity =
        app.add_subcommand("complexity", "covering numbers and Rademacher complexity");
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo tail estimation and bound validity checks");
    auto* rates = app.add_subcommand("rates", "radius-vs-N curves and log-log slopes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors exit 1; --help keeps CLI11's zero
        const int code = app.exit(e);
        return code == 0 ? 0 : benkit::kExitConfigError;
    }

    try {
        const benkit::Config cfg =
            config_path.empty() ? benkit::Config::parse_string(benkit::default_config_text())
                                : benkit::Config::parse_file(config_path);
        benkit::RunOptions opts;
        opts.out_dir = out_dir;
        opts.format = format;
        opts.seed = seed;

        if (eval->parsed()) return benkit::run_eval(cfg, opts);
        if (invert->parsed()) return benkit::run_invert(cfg, opts);
        if (constants->parsed()) return benkit::run_constants(cfg, opts);
        if (complexity->parsed()) return benkit::run_complexity(cfg, opts);
        if (simulate->parsed()) return benkit::run_simulate(cfg, opts);
        if (rates->parsed()) return benkit::run_rates(cfg, opts);
    } catch (const benkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return benkit::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return benkit::kExitConfigError;
    }
    return benkit::kExitConfigError;
}
