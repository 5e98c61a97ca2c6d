#include "ghzmux/experiment/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "ghzmux/metrics/metrics.hpp"

namespace ghzmux::experiment
{

std::vector<double>
parse_grid(const std::string& text)
{
    double      v[3] = {};
    std::size_t pos  = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? text.find(':', pos) : text.size();
        if (end == std::string::npos)
            throw std::invalid_argument("grid: expected start:stop:step, got '" + text + "'");
        const char* first = text.data() + pos;
        const char* last  = text.data() + end;
        auto [ptr, ec]    = std::from_chars(first, last, v[i]);
        if (ec != std::errc{} || ptr != last || !std::isfinite(v[i]))
            throw std::invalid_argument("grid: bad number in '" + text + "'");
        pos = end + 1;
    }
    const auto [start, stop, step] = std::tuple{v[0], v[1], v[2]};
    if (start < 0.0)
        throw std::invalid_argument("grid: start must be >= 0");
    if (!(step > 0.0))
        throw std::invalid_argument("grid: step must be > 0");
    if (stop < start)
        throw std::invalid_argument("grid: stop must be >= start");

    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 100000)
        throw std::invalid_argument("grid: too many points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = start + static_cast<double>(i) * step;
    return out;
}

std::vector<double>
default_grid()
{
    return parse_grid("0:50:2.5");
}

void
parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task)
{
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t>        next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::vector<SweepRow>
compute_sweep(const std::vector<Scenario>& scenarios, const std::vector<double>& grid, const SweepOptions& options)
{
    if (grid.empty())
        throw std::invalid_argument("grid: must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("grid: must be strictly ascending");

    std::vector<SweepRow> rows(scenarios.size() * grid.size());
    parallel_for(rows.size(), options.threads, [&](std::size_t i) {
        const Scenario&   s = scenarios[i / grid.size()];
        const PointResult p = evaluate_point(s, grid[i % grid.size()], options.backend);
        SweepRow&         r = rows[i];
        r.L0_km                 = p.L0_km;
        r.M                     = s.config.M;
        r.N                     = s.config.N;
        r.avg_fidelity          = p.avg_fidelity;
        r.avg_efficiency        = p.efficiency.total;
        r.eta1                  = p.efficiency.eta1;
        r.eta2                  = p.efficiency.eta2;
        r.eta3                  = p.efficiency.eta3;
        r.eta4                  = p.efficiency.eta4;
        r.protocol_duration_s   = p.timing.protocol_duration_s;
        r.avg_completion_time_s = p.timing.avg_completion_time_s;
        r.min_coherence_time_s  = p.timing.min_coherence_time_s;
        r.trials                = p.trials;
        r.seed                  = s.config.seed;
        r.scenario              = s.name;
    });
    return rows;
}

std::string
csv_header()
{
    return "L0_km,M,N,avg_fidelity,avg_efficiency,eta1,eta2,eta3,eta4,protocol_duration_s,"
           "avg_completion_time_s,min_coherence_time_s,trials,seed,scenario";
}

namespace
{

void
require_finite(double v, const SweepRow& r)
{
    if (!std::isfinite(v))
        throw std::runtime_error("sweep: non-finite value in scenario '" + r.scenario + "' at L0 = "
                                 + std::to_string(r.L0_km));
}

std::ostream&
number_format(std::ostream& out)
{
    out.imbue(std::locale::classic());
    out << std::setprecision(12);
    return out;
}

void
write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError(path.string() + ": cannot open for writing");
    f << content;
    f.close();
    if (!f)
        throw IoError(path.string() + ": write failed");
}

}  // namespace

void
write_csv(const std::vector<SweepRow>& rows, std::ostream& out)
{
    number_format(out);
    out << csv_header() << '\n';
    for (const auto& r : rows) {
        for (double v : {r.L0_km, r.avg_fidelity, r.avg_efficiency, r.eta1, r.eta2, r.eta3, r.eta4,
                         r.protocol_duration_s, r.avg_completion_time_s, r.min_coherence_time_s})
            require_finite(v, r);
        out << r.L0_km << ',' << r.M << ',' << r.N << ',' << r.avg_fidelity << ',' << r.avg_efficiency << ','
            << r.eta1 << ',' << r.eta2 << ',' << r.eta3 << ',' << r.eta4 << ',' << r.protocol_duration_s << ','
            << r.avg_completion_time_s << ',' << r.min_coherence_time_s << ',' << r.trials << ',' << r.seed << ','
            << r.scenario << '\n';
    }
}

std::vector<SweepRow>
run_sweep(const std::vector<Scenario>& scenarios, const std::vector<double>& grid,
          const std::filesystem::path& out_dir, const SweepOptions& options)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw IoError(out_dir.string() + ": cannot create output directory");

    const std::vector<SweepRow> rows = compute_sweep(scenarios, grid, options);

    std::ostringstream csv;
    write_csv(rows, csv);
    write_file(out_dir / "results.csv", csv.str());

    std::ostringstream summary;
    number_format(summary);
    summary << "backend " << protocol::to_string(options.backend) << "\n";
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        std::ostringstream fid, eff;
        number_format(fid);
        number_format(eff);
        std::vector<metrics::CurvePoint> curve;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const SweepRow& r = rows[s * grid.size() + g];
            fid << r.L0_km << ' ' << r.avg_fidelity << '\n';
            eff << r.L0_km << ' ' << r.avg_efficiency << '\n';
            curve.push_back({r.L0_km, r.avg_fidelity});
        }
        const std::string& name = scenarios[s].name;
        write_file(out_dir / ("fidelity_" + name + ".dat"), fid.str());
        write_file(out_dir / ("efficiency_" + name + ".dat"), eff.str());

        const SweepRow& first = rows[s * grid.size()];
        const SweepRow& last  = rows[(s + 1) * grid.size() - 1];
        summary << "scenario " << name << " preset " << to_string(scenarios[s].preset) << " M " << first.M << " N "
                << first.N << " trials " << first.trials << " seed " << first.seed << "\n"
                << "  fidelity " << first.avg_fidelity << " at " << first.L0_km << " km, " << last.avg_fidelity
                << " at " << last.L0_km << " km\n"
                << "  efficiency " << first.avg_efficiency << " at " << first.L0_km << " km, "
                << last.avg_efficiency << " at " << last.L0_km << " km\n"
                << "  witness threshold distance " << metrics::witness_threshold_distance(curve) << " km\n";
    }
    write_file(out_dir / "summary.txt", summary.str());
    return rows;
}

}  // namespace ghzmux::experiment
