#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghzmux/experiment/config_loader.hpp"
#include "ghzmux/experiment/robustness.hpp"
#include "ghzmux/experiment/scenario.hpp"
#include "ghzmux/experiment/self_test.hpp"
#include "ghzmux/experiment/sweep.hpp"

namespace ex = ghzmux::experiment;
namespace pr = ghzmux::protocol;

namespace
{

constexpr int kExitOk         = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo         = 2;

struct Common
{
    std::string                  config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t>   trials;
    std::string                  backend = "factorized";
    std::optional<std::string>   grid;
    unsigned                     threads = 0;
};

void
add_common(CLI::App* cmd, Common& c, bool with_grid)
{
    cmd->add_option("--config", c.config, "JSON scenario file (default: the built-in figure scenarios)");
    cmd->add_option("--seed", c.seed, "Master seed, overrides every scenario");
    cmd->add_option("--trials", c.trials, "Monte Carlo trials for noisy-qudit scenarios")->check(CLI::PositiveNumber);
    cmd->add_option("--backend", c.backend, "brute | factorized")->check(CLI::IsMember({"brute", "factorized"}));
    cmd->add_option("--threads", c.threads, "Worker threads, 0 = all cores");
    if (with_grid)
        cmd->add_option("--grid", c.grid, "L0 grid in km as start:stop:step");
}

std::vector<ex::Scenario>
figure_scenarios()
{
    std::vector<ex::Scenario> out;
    for (auto preset : {ex::Preset::ideal, ex::Preset::practical})
        for (auto [M, N] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}})
            out.push_back(ex::make_scenario(
                std::string(ex::to_string(preset)) + "-M" + std::to_string(M) + "N" + std::to_string(N), M, N, preset));
    return out;
}

struct Loaded
{
    std::vector<ex::Scenario> scenarios;
    std::vector<double>       grid;
};

Loaded
load(const Common& c)
{
    Loaded                     out;
    std::optional<std::string> grid = c.grid;
    if (c.config.empty()) {
        out.scenarios = figure_scenarios();
    } else {
        auto cfg      = ex::load_config(c.config);
        out.scenarios = std::move(cfg.scenarios);
        if (!grid)
            grid = cfg.grid;
    }
    for (auto& s : out.scenarios) {
        if (c.seed)
            s.config.seed = *c.seed;
        if (c.trials)
            s.config.trials = *c.trials;
    }
    out.grid = grid ? ex::parse_grid(*grid) : ex::default_grid();
    return out;
}

int
cmd_sweep(const Common& c, const std::string& out_dir)
{
    const Loaded l    = load(c);
    const auto   rows = ex::run_sweep(l.scenarios, l.grid, out_dir, {pr::parse_backend(c.backend), c.threads});
    std::cout << "wrote " << rows.size() << " rows to " << (std::filesystem::path(out_dir) / "results.csv").string()
              << '\n';
    return kExitOk;
}

int
cmd_single(const Common& c, std::optional<double> L0)
{
    const Loaded l       = load(c);
    const auto   backend = pr::parse_backend(c.backend);
    std::cout << std::setprecision(10);
    for (const auto& s : l.scenarios) {
        const double L = L0 ? *L0 : s.config.L0_km;
        const auto   p = ex::evaluate_point(s, L, backend);
        std::cout << "scenario " << s.name << " (" << ex::to_string(s.preset) << ", M=" << s.config.M
                  << ", N=" << s.config.N << ", L0=" << L << " km)\n"
                  << "  avg_fidelity          " << p.avg_fidelity << '\n'
                  << "  survival              " << p.survival << '\n'
                  << "  eta1 eta2 eta3 eta4   " << p.efficiency.eta1 << ' ' << p.efficiency.eta2 << ' '
                  << p.efficiency.eta3 << ' ' << p.efficiency.eta4 << '\n'
                  << "  avg_efficiency        " << p.efficiency.total << '\n'
                  << "  protocol_duration_s   " << p.timing.protocol_duration_s << '\n'
                  << "  avg_completion_time_s " << p.timing.avg_completion_time_s << '\n'
                  << "  min_coherence_time_s  " << p.timing.min_coherence_time_s << '\n'
                  << "  conventional_time_s   " << p.timing.conventional_coherence_time_s << '\n'
                  << "  trials                " << p.trials << '\n';
        if (p.degenerate)
            std::cout << "  degenerate outcomes   " << p.degenerate << '\n';

        // Per-outcome p(k), F_k for the first evaluated variant.
        auto cfg  = ex::evaluation_variants(s).front();
        cfg.L0_km = L;
        for (const auto& o : pr::run_protocol(cfg, backend).outcomes)
            std::cout << "  k=" << o.k << "  p=" << o.probability << "  F=" << o.fidelity
                      << (o.degenerate ? "  (degenerate)" : "") << '\n';
    }
    return kExitOk;
}

int
cmd_robustness(const Common& c, const std::string& out_dir, const std::string& mode, std::size_t count,
               std::uint64_t seed)
{
    const Loaded          l = load(c);
    ex::RobustnessOptions opt;
    opt.mode    = ex::parse_robustness_mode(mode);
    opt.count   = count;
    opt.seed    = seed;
    opt.backend = pr::parse_backend(c.backend);
    opt.threads = c.threads;

    if (!out_dir.empty())
        std::filesystem::create_directories(out_dir);
    for (const auto& s : l.scenarios) {
        const auto points = ex::run_robustness(s, l.grid, opt);
        if (out_dir.empty()) {
            std::cout << "# scenario " << s.name << " mode " << mode << '\n';
            ex::write_robustness_csv(points, std::cout);
        } else {
            const auto    path = std::filesystem::path(out_dir) / ("robustness_" + s.name + ".csv");
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw ex::IoError(path.string() + ": cannot open for writing");
            ex::write_robustness_csv(points, f);
            if (!f)
                throw ex::IoError(path.string() + ": write failed");
            std::cout << "wrote " << path.string() << '\n';
        }
    }
    return kExitOk;
}

int
cmd_self_test(const Common& c, const std::string& filter)
{
    ex::SelfTestContext ctx;
    ctx.backend = pr::parse_backend(c.backend);
    ctx.threads = c.threads;
    if (c.trials)
        ctx.trials = *c.trials;
    const auto results = ex::run_self_test(ctx, filter, std::cout);
    for (const auto& r : results)
        if (!r.passed())
            return kExitValidation;
    return kExitOk;
}

}  // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Multiplexed GHZ-state distribution simulator"};
    app.require_subcommand(1);

    Common common;

    std::string out_dir = "out";
    auto*       sweep   = app.add_subcommand("sweep", "L0 sweep over every scenario, writes CSV and plot data");
    add_common(sweep, common, true);
    sweep->add_option("--out", out_dir, "Output directory");

    std::optional<double> L0;
    auto*                 single = app.add_subcommand("single", "Evaluate each scenario at one distance");
    add_common(single, common, false);
    single->add_option("--L0", L0, "Distance in km (default: the scenario's L0_km)")->check(CLI::NonNegativeNumber);

    std::string   mode = "corners";
    std::size_t   count = 100;
    std::uint64_t rseed = 7;
    std::string   rout;
    auto*         robust = app.add_subcommand("robustness", "Fidelity spread over perturbed cavity parameters");
    add_common(robust, common, true);
    robust->add_option("--mode", mode, "corners | random | nonuniform")
        ->check(CLI::IsMember({"corners", "random", "nonuniform"}));
    robust->add_option("--count", count, "Samples for random and nonuniform modes")->check(CLI::PositiveNumber);
    robust->add_option("--sample-seed", rseed, "Seed for the parameter samples");
    robust->add_option("--out", rout, "Output directory (default: print to stdout)");

    std::string filter;
    auto*       self = app.add_subcommand("self-test", "Run the acceptance criteria");
    self->add_option("--filter", filter, "Criterion id or name substring");
    self->add_option("--trials", common.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    self->add_option("--backend", common.backend, "brute | factorized")
        ->check(CLI::IsMember({"brute", "factorized"}));
    self->add_option("--threads", common.threads, "Worker threads, 0 = all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (*sweep)
            return cmd_sweep(common, out_dir);
        if (*single)
            return cmd_single(common, L0);
        if (*robust)
            return cmd_robustness(common, rout, mode, count, rseed);
        return cmd_self_test(common, filter);
    } catch (const ex::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ex::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const pr::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
