#include "ghzmux/experiment/self_test.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ghzmux/experiment/scenario.hpp"
#include "ghzmux/experiment/sweep.hpp"
#include "ghzmux/noise/models.hpp"
#include "ghzmux/protocol/engine.hpp"
#include "ghzmux/protocol/run.hpp"

namespace ghzmux::experiment
{

namespace
{

std::string
fmt(double v, int precision = 6)
{
    std::ostringstream s;
    s << std::setprecision(precision) << v;
    return s.str();
}

std::string
mn(int M, int N)
{
    return "(" + std::to_string(M) + "," + std::to_string(N) + ")";
}

noise::DeviceParams
practical_devices(int M)
{
    protocol::ProtocolConfig c;
    c.M = M;
    apply_preset(c, Preset::practical);
    return c.device;
}

Check
at_least(std::string label, double measured, double bound, double slack = 0.0)
{
    Check c{std::move(label), measured, ">= " + fmt(bound) + (slack > 0 ? " (tol " + fmt(slack) + ")" : ""), false};
    c.passed = measured >= bound - slack;
    return c;
}

Check
above(std::string label, double measured, double bound)
{
    Check c{std::move(label), measured, "> " + fmt(bound), false};
    c.passed = measured > bound;
    return c;
}

Check
within(std::string label, double measured, double expected, double tol)
{
    Check c{std::move(label), measured, fmt(expected, 10) + " +- " + fmt(tol), false};
    c.passed = std::abs(measured - expected) <= tol;
    return c;
}

Check
at_most(std::string label, double measured, double bound)
{
    Check c{std::move(label), measured, "<= " + fmt(bound), false};
    c.passed = measured <= bound;
    return c;
}

// 1 -------------------------------------------------------------------------
std::vector<Check>
efficiency_closed_form(const SelfTestContext& ctx)
{
    struct Case
    {
        int    M, N;
        bool   practical;
        double percent;
    };
    const Case cases[] = {{3, 3, true, 1.37}, {2, 4, true, 0.53}, {3, 3, false, 5.68}, {2, 4, false, 1.70}};
    std::vector<Check> out;
    for (const auto& c : cases) {
        const noise::DeviceParams dev = c.practical ? practical_devices(c.M) : noise::DeviceParams{};
        const auto e = ctx.efficiency(c.M, c.N, 25.0, protocol::kHeadlineEta0, dev, protocol::kDefaultAlphaPerKm);
        out.push_back(within(std::string(c.practical ? "practical " : "ideal ") + mn(c.M, c.N) + " total [%]",
                             100.0 * e.total, c.percent, 0.05));
    }
    return out;
}

// 2 -------------------------------------------------------------------------
std::vector<Check>
fidelity_thresholds(const SelfTestContext& ctx)
{
    struct Case
    {
        int    M, N;
        Preset preset;
        double threshold;
    };
    const Case cases[] = {{3, 3, Preset::ideal, 0.85},
                          {2, 4, Preset::ideal, 0.73},
                          {3, 3, Preset::practical, 0.81},
                          {2, 4, Preset::practical, 0.70}};
    std::vector<Check> out;
    for (const auto& c : cases) {
        Scenario s      = make_scenario("c2", c.M, c.N, c.preset);
        s.config.trials = ctx.trials;
        const auto p    = evaluate_point(s, 25.0, ctx.backend);
        out.push_back(at_least(std::string(to_string(c.preset)) + " " + mn(c.M, c.N) + " fidelity at 25 km",
                               p.avg_fidelity, c.threshold, 0.02));
    }
    return out;
}

// 3 -------------------------------------------------------------------------
std::vector<Check>
noiseless_limit(const SelfTestContext& ctx)
{
    Scenario unit                = make_scenario("c3a", 2, 3, Preset::ideal);
    unit.config.fixed_reflection = protocol::kUnitReflection;
    const Scenario cavity        = make_scenario("c3b", 2, 3, Preset::ideal);
    const auto     unit_point    = evaluate_point(unit, 0.0, ctx.backend);
    const auto     cavity_point  = evaluate_point(cavity, 0.0, ctx.backend);
    return {within("(2,3) L0=0 unit reflection fidelity", unit_point.avg_fidelity, 1.0, 1e-9),
            at_least("(2,3) L0=0 cavity reflection fidelity", cavity_point.avg_fidelity, 0.999)};
}

// 4 -------------------------------------------------------------------------
std::vector<Check>
worst_case_robustness(const SelfTestContext& ctx)
{
    const std::vector<double> grid = parse_grid("0:22.5:2.5");
    struct Case
    {
        int    M, N;
        double bound;
    };
    std::vector<Check> out;
    for (const Case c : {Case{3, 3, 0.80}, Case{2, 4, 0.69}}) {
        Scenario s      = make_scenario("c4", c.M, c.N, Preset::worst_case);
        s.config.trials = ctx.trials;
        SweepOptions opt{ctx.backend, ctx.threads};
        const auto   rows = compute_sweep({s}, grid, opt);
        double       lo   = 1.0;
        for (const auto& r : rows)
            lo = std::min(lo, r.avg_fidelity);
        out.push_back(above("worst-case " + mn(c.M, c.N) + " min fidelity over L0 in [0, 22.5] km", lo, c.bound));
    }
    return out;
}

// 5 -------------------------------------------------------------------------
protocol::ProtocolConfig
random_setting(int M, int N, std::mt19937_64& rng)
{
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    protocol::ProtocolConfig c;
    c.M                = M;
    c.N                = N;
    c.L0_km            = u(0.0, 50.0);
    c.decoherence.T1_s = u(1e-3, 20e-3);
    c.decoherence.T2_s = u(0.5e-3, 2.0 * c.decoherence.T1_s);
    c.device.x         = u(0.0, 0.8);
    c.qudit_noise      = {u(0.0, 0.2), u(0.0, 0.3)};
    c.schedule         = static_cast<protocol::SchedulePolicy>(rng() % 3);
    for (std::size_t q = 0; q < c.qubit_count(); ++q) {
        photon::CavityParams cav;
        cav.kappa_ratio = u(0.9, 1.0);
        cav.C0          = u(20.0, 60.0);
        cav.C1          = u(20.0, 60.0);
        cav.delta_c     = u(0.0, 0.5);
        cav.delta_0     = u(-2.0, 2.0);
        cav.delta_1     = u(100.0, 200.0);
        c.unit_cavities.push_back(cav);
    }
    return c;
}

std::vector<Check>
backend_equivalence(const SelfTestContext&)
{
    std::vector<Check> out;
    std::mt19937_64    rng(0x5eed5);
    for (const auto& [M, N] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{1, 3}}) {
        double dp = 0.0, df = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto c     = random_setting(M, N, rng);
            auto       qrng  = noise::trial_stream(c.seed, static_cast<std::uint64_t>(i));
            const auto qudit = protocol::prepare_qudit(c, &qrng);
            const auto b     = protocol::evaluate_trial(c, qudit, protocol::Backend::brute);
            const auto f     = protocol::evaluate_trial(c, qudit, protocol::Backend::factorized);
            for (std::size_t k = 0; k < c.d(); ++k) {
                dp = std::max(dp, std::abs(b.outcomes[k].probability - f.outcomes[k].probability));
                df = std::max(df, std::abs(b.outcomes[k].fidelity - f.outcomes[k].fidelity));
            }
        }
        out.push_back(at_most(mn(M, N) + " max |dp| over 20 settings", dp, 1e-10));
        out.push_back(at_most(mn(M, N) + " max |dF| over 20 settings", df, 1e-10));
    }
    return out;
}

// 6 -------------------------------------------------------------------------
std::vector<Check>
channel_properties(const SelfTestContext&)
{
    std::mt19937_64                        rng(606);
    const noise::DecoherenceParams         p;
    std::uniform_real_distribution<double> expo(-6.0, -1.0);
    const quantum::StateVector             plus = quantum::StateVector::uniform(2);
    const quantum::DensityMatrix           rho  = quantum::DensityMatrix::from_pure(plus);
    const std::size_t                      target[] = {0};
    const quantum::Layout                  one      = quantum::Layout::qubits(1);

    double completeness = 0.0, coherence = 0.0, population = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t   = std::pow(10.0, expo(rng));
        const auto   ch  = noise::qubit_decoherence_channel(t, p);
        completeness     = std::max(completeness, ch.completeness_error());
        const auto   out = quantum::apply_channel(ch, rho, target, one);
        const double mu1 = std::exp(-t / p.T1_s);
        const double mu2 = std::exp(-t / p.T2_s);
        coherence        = std::max(coherence, std::abs(out(0, 1) - 0.5 * std::sqrt(mu1) * mu2));
        population       = std::max(population, std::abs(out(0, 0) - 0.5));
    }

    // Lambda_D on a random mixed state over (qubit, qubit, time bin d = 4).
    const quantum::Layout layout({2, 2, 4});
    const auto            dim = static_cast<Eigen::Index>(layout.total_dim());
    std::normal_distribution<double> g;
    quantum::Matrix A(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            A(i, j) = {g(rng), g(rng)};
    quantum::Matrix mixed = A * A.adjoint();
    mixed /= mixed.trace().real();
    const quantum::DensityMatrix in(mixed);

    double trace_err = 0.0, scale_err = 0.0;
    for (double lam : {0.0, 0.25, 0.56, 0.98, 1.0}) {
        const auto out = noise::interferometer_dephasing(in, lam, layout, 2);
        trace_err      = std::max(trace_err, std::abs(out.trace() - in.trace()));
        for (std::size_t i = 0; i < layout.total_dim(); ++i)
            for (std::size_t j = 0; j < layout.total_dim(); ++j) {
                const double f = layout.digit(i, 2) == layout.digit(j, 2) ? 1.0 : lam;
                scale_err      = std::max(scale_err, std::abs(out(i, j) - f * in(i, j)));
            }
    }
    return {at_most("max completeness error over 100 t", completeness, 1e-12),
            at_most("max |rho01 - sqrt(mu1) mu2 / 2| on |+><+|", coherence, 1e-12),
            at_most("max |rho00 - 1/2| on |+><+|", population, 1e-12),
            at_most("Lambda_D max trace change", trace_err, 1e-14),
            at_most("Lambda_D max off-diagonal scaling error", scale_err, 1e-15)};
}

// 7 -------------------------------------------------------------------------
std::vector<Check>
efficiency_consistency(const SelfTestContext& ctx)
{
    std::vector<Check> out;
    for (const auto& [M, N] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
        Scenario s      = make_scenario("c7", M, N, Preset::practical);
        s.config.trials = ctx.trials;
        s.config.L0_km  = 25.0;
        const auto run  = protocol::run_protocol(s.config, ctx.backend);
        const auto e    = ctx.efficiency(M, N, 25.0, s.config.eta0, s.config.device, s.config.alpha_per_km);
        const double simulated = run.survival * e.eta2 * e.eta3 * e.eta4;
        out.push_back(at_most(mn(M, N) + " |survival*eta2*eta3*eta4 / total - 1|",
                              std::abs(simulated / e.total - 1.0), 0.02));
    }
    return out;
}

// 8 -------------------------------------------------------------------------
std::vector<Check>
timing_model(const SelfTestContext& ctx)
{
    std::vector<Check> out;
    const auto t = metrics::timing_report(3, 25.0, 0.0137, 3);
    out.push_back(within("N=3 L0=25 km protocol duration [s]", t.protocol_duration_s, 5.0e-4, 1e-15));

    {
        const noise::DeviceParams dev = practical_devices(3);
        const auto e = ctx.efficiency(3, 3, 25.0, protocol::kHeadlineEta0, dev, protocol::kDefaultAlphaPerKm);
        const auto r = metrics::timing_report(3, 25.0, e.total, 3);
        out.push_back(above("practical (3,3) L0=25 km coherence-time ratio", r.coherence_ratio(), 1.0));
    }

    // Small distances included on purpose: the claim is for every L0 > 0.
    std::vector<double> grid = {0.1, 0.5, 1.0};
    for (double L : parse_grid("2.5:50:2.5"))
        grid.push_back(L);
    double      worst = INFINITY;
    std::string where;
    for (int M : {2, 3})
        for (int N : {3, 4})
            for (bool practical : {false, true}) {
                const noise::DeviceParams dev = practical ? practical_devices(M) : noise::DeviceParams{};
                for (double L : grid) {
                    const auto e = ctx.efficiency(M, N, L, protocol::kHeadlineEta0, dev, protocol::kDefaultAlphaPerKm);
                    const double ratio = metrics::timing_report(N, L, e.total, M).coherence_ratio();
                    if (ratio < worst) {
                        worst = ratio;
                        where = std::string(practical ? "practical " : "ideal ") + mn(M, N) + " L0=" + fmt(L);
                    }
                }
            }
    out.push_back(above("min coherence-time ratio, M in {2,3}, N in {3,4}, L0 in [0.1, 50] km (at " + where + ")",
                        worst, 1.0));
    return out;
}

// 9 -------------------------------------------------------------------------
std::string
slurp(const std::filesystem::path& p)
{
    std::ifstream      in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<Check>
determinism(const SelfTestContext& ctx)
{
    std::vector<Scenario> scenarios;
    for (const auto& [M, N] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
        scenarios.push_back(make_scenario("M" + std::to_string(M) + "N" + std::to_string(N), M, N, Preset::practical));
        scenarios.back().config.trials = ctx.trials;
    }
    const auto grid = parse_grid("0:50:5");

    std::random_device rd;
    const auto root = std::filesystem::temp_directory_path()
                    / ("ghzmux-determinism-" + std::to_string(rd()) + std::to_string(rd()));
    struct Cleanup
    {
        std::filesystem::path p;
        ~Cleanup()
        {
            std::error_code ec;
            std::filesystem::remove_all(p, ec);
        }
    } cleanup{root};

    const auto rows = run_sweep(scenarios, grid, root / "serial_a", {ctx.backend, 1});
    run_sweep(scenarios, grid, root / "serial_b", {ctx.backend, 1});
    run_sweep(scenarios, grid, root / "parallel", {ctx.backend, 4});
    const std::string a = slurp(root / "serial_a" / "results.csv");
    const std::string b = slurp(root / "serial_b" / "results.csv");
    const std::string p = slurp(root / "parallel" / "results.csv");

    Check rerun{"serial rerun byte-identical CSV", a == b ? 1.0 : 0.0, "1 (identical)", a == b && !a.empty()};
    Check par{"serial vs 4-thread byte-identical CSV", a == p ? 1.0 : 0.0, "1 (identical)", a == p && !a.empty()};
    return {rerun, par, within("row count", static_cast<double>(rows.size()), 33.0, 0.0)};
}

}  // namespace

bool
CriterionResult::passed() const
{
    return error.empty() && !checks.empty()
        && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<Criterion>&
acceptance_criteria()
{
    static const std::vector<Criterion> all = {
        {"1", "efficiency-closed-form", efficiency_closed_form},
        {"2", "fidelity-thresholds", fidelity_thresholds},
        {"3", "noiseless-limit", noiseless_limit},
        {"4", "worst-case-robustness", worst_case_robustness},
        {"5", "backend-equivalence", backend_equivalence},
        {"6", "channel-properties", channel_properties},
        {"7", "efficiency-consistency", efficiency_consistency},
        {"8", "timing-model", timing_model},
        {"9", "determinism", determinism},
    };
    return all;
}

bool
matches(const Criterion& c, const std::string& filter)
{
    return filter.empty() || filter == c.id || c.name.find(filter) != std::string::npos;
}

CriterionResult
run_criterion(const Criterion& c, const SelfTestContext& ctx)
{
    CriterionResult r{c.id, c.name, {}, 0.0, {}};
    const auto      start = std::chrono::steady_clock::now();
    try {
        r.checks = c.run(ctx);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

void
print_result(const CriterionResult& r, std::ostream& out)
{
    out << (r.passed() ? "PASS " : "FAIL ") << std::setw(2) << r.id << "  " << std::left << std::setw(24) << r.name
        << std::right << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat
        << '\n';
    if (!r.error.empty())
        out << "        error: " << r.error << '\n';
    for (const auto& c : r.checks)
        out << "        [" << (c.passed ? "ok" : "XX") << "] " << c.label << ": " << fmt(c.measured, 10)
            << ", expected " << c.expectation << '\n';
}

std::vector<CriterionResult>
run_self_test(const SelfTestContext& ctx, const std::string& filter, std::ostream& out)
{
    std::vector<CriterionResult> results;
    for (const auto& c : acceptance_criteria())
        if (matches(c, filter)) {
            results.push_back(run_criterion(c, ctx));
            print_result(results.back(), out);
            out.flush();
        }
    if (results.empty())
        throw std::invalid_argument("filter: no criterion matches '" + filter + "'");
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
    out << passed << "/" << results.size() << " criteria passed\n";
    return results;
}

}  // namespace ghzmux::experiment
