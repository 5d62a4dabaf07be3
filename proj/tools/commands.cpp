#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "boundmon/benchmarks.hpp"
#include "boundmon/plot.hpp"
#include "boundmon/random.hpp"
#include "boundmon/report_io.hpp"

namespace boundmon::cli
{
namespace
{
//! Stream offset separating the log generator from the trace generator.
constexpr std::uint64_t log_stream = 17;

double tolerance()
{
    const char* env = std::getenv("BOUNDMON_EPS");
    if (env == nullptr || *env == '\0')
        return kFeasibilityTolerance;
    char* end = nullptr;
    double const eps = std::strtod(env, &end);
    if (*end != '\0' || !(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument(std::string("BOUNDMON_EPS: not a positive number: ") + env);
    return eps;
}

//! One value is broadcast to all dimensions; otherwise one per state or per dimension.
Vector radius_vector(const std::vector<double>& values, const ModelConfig& cfg)
{
    Index const n = cfg.dim();
    Vector r = Vector::Zero(n);
    if (values.size() == 1)
        r.head(cfg.state_count).setConstant(values[0]);
    else if (static_cast<Index>(values.size()) == cfg.state_count
             || static_cast<Index>(values.size()) == n)
        for (std::size_t i = 0; i < values.size(); ++i)
            r[static_cast<Index>(i)] = values[i];
    else
        throw std::invalid_argument("--sensor-radius: expected 1, " + std::to_string(cfg.state_count)
                                    + " or " + std::to_string(n) + " values");
    if ((r.array() < 0.0).any())
        throw std::invalid_argument("--sensor-radius: values must be non-negative");
    return r;
}

ReachOptions reach_options(const std::optional<long>& max_generators)
{
    ReachOptions opts;
    if (max_generators)
    {
        if (*max_generators < 1)
            throw std::invalid_argument("--reduce-order: must be at least 1");
        opts.max_generators = static_cast<Index>(*max_generators);
    }
    return opts;
}

class Timer
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_text(const std::string& text, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

struct GenlogArgs
{
    std::string config, trace, log;
    std::optional<std::uint64_t> seed;
    std::optional<double> p_log;
    std::optional<int> t_delta;
    std::optional<int> horizon;
    std::vector<double> sensor_radius;
};

int genlog(const GenlogArgs& a, std::ostream& out)
{
    ModelConfig cfg = load_config(a.config);
    std::uint64_t const seed = a.seed.value_or(cfg.seed);
    int const horizon = a.horizon.value_or(cfg.horizon);
    if (horizon < 1)
        throw std::invalid_argument("--horizon: must be at least 1");
    LogSettings settings = cfg.logging;
    if (a.p_log)
    {
        if (*a.p_log < 0.0 || *a.p_log > 1.0)
            throw std::invalid_argument("--p-log: must lie in [0, 1]");
        settings.p_log = *a.p_log;
    }
    if (a.t_delta)
    {
        if (*a.t_delta < 0)
            throw std::invalid_argument("--t-delta: must be non-negative");
        settings.t_delta = *a.t_delta;
    }
    if (!a.sensor_radius.empty())
        settings.sensor_radius = radius_vector(a.sensor_radius, cfg);

    GroundTruthTrace const trace
        = simulate_trace(cfg.system, cfg.initial, horizon, seed, cfg.trace_mode);
    UncertainLog const log
        = generate_log(cfg.system, trace, settings, derive_seed(seed, log_stream));
    write_trace(trace, a.trace);
    write_log(log, a.log);
    out << "samples: " << log.size() << "\nhorizon: " << log.horizon() << "\n";
    return exit_safe;
}

struct OfflineArgs
{
    std::string config, log, out, csv;
    std::optional<long> reduce;
    unsigned threads = 1;
};

int offline(const OfflineArgs& a, std::ostream& out, std::ostream& err)
{
    ModelConfig const cfg = load_config(a.config);
    UncertainLog const log = read_log(a.log);
    require_same_dim(cfg.dim(), log.dim(), "log");
    OfflineOptions opts;
    opts.eps = tolerance();
    opts.reach = reach_options(a.reduce);
    opts.threads = a.threads;

    Timer timer;
    Verdict const verdict = monitor_offline(cfg.system, log, cfg.unsafe, opts);
    double const elapsed = timer.seconds();

    write_json_file(verdict_to_json(verdict, log), a.out);
    if (!a.csv.empty())
        write_csv(offline_plot_rows(cfg.system, log, cfg.unsafe, verdict, opts.reach), a.csv);
    out << "outcome: " << to_string(verdict.outcome) << "\n";
    err << "offline time: " << elapsed << " s\n";
    return verdict.outcome == Outcome::safe ? exit_safe : exit_unsafe;
}

struct OnlineArgs
{
    std::string config, trace, out, csv;
    std::optional<long> reduce;
    std::optional<int> horizon;
    std::vector<double> sensor_radius;
};

int online(const OnlineArgs& a, std::ostream& out, std::ostream& err)
{
    ModelConfig const cfg = load_config(a.config);
    GroundTruthTrace trace = read_trace(a.trace);
    require_same_dim(cfg.dim(), trace.dim(), "trace");
    int const horizon = a.horizon.value_or(trace.horizon());
    if (horizon < 1 || horizon > trace.horizon())
        throw std::invalid_argument("--horizon: must lie in [1, "
                                    + std::to_string(trace.horizon()) + "]");
    Vector const radius = a.sensor_radius.empty() ? cfg.logging.sensor_radius
                                                  : radius_vector(a.sensor_radius, cfg);
    OnlineOptions opts;
    opts.eps = tolerance();
    opts.reach = reach_options(a.reduce);
    opts.record = !a.csv.empty();

    SimulatedLogger logger(std::move(trace), radius);
    Timer timer;
    OnlineReport const report = monitor_online(cfg.system, logger, cfg.unsafe, horizon, opts);
    double const elapsed = timer.seconds();

    write_json_file(report_to_json(report), a.out);
    if (!a.csv.empty())
        write_csv(online_plot_rows(report, cfg.unsafe), a.csv);
    out << "outcome: " << to_string(report.outcome) << "\ntriggers: "
        << report.triggered_steps.size() << "\n";
    err << "online time: " << elapsed << " s\n";
    return report.outcome == Outcome::safe ? exit_safe : exit_unsafe;
}

struct PlotArgs
{
    std::string csv, out;
    int dim = 0;
};

int plot(const PlotArgs& a)
{
    write_text(render_svg(read_csv(a.csv), a.dim), a.out);
    return exit_safe;
}
}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Offline and online safety monitoring with uncertain linear bounding models",
                 "boundmon"};
    app.require_subcommand(1);

    GenlogArgs g;
    auto* gen = app.add_subcommand("genlog", "simulate a ground-truth trace and an uncertain log");
    gen->add_option("--config", g.config, "model config JSON")->required();
    gen->add_option("--trace", g.trace, "output trace JSON")->required();
    gen->add_option("--log", g.log, "output log JSON")->required();
    gen->add_option("--seed", g.seed, "seed (default from config)");
    gen->add_option("--p-log", g.p_log, "logging probability");
    gen->add_option("--t-delta", g.t_delta, "maximum timestamp delay");
    gen->add_option("--horizon", g.horizon, "trace horizon");
    gen->add_option("--sensor-radius", g.sensor_radius, "sensor half-widths")->delimiter(',');

    OfflineArgs f;
    auto* off = app.add_subcommand("offline", "check a recorded log");
    off->add_option("--config", f.config, "model config JSON")->required();
    off->add_option("--log", f.log, "log JSON")->required();
    off->add_option("--out", f.out, "output verdict JSON")->required();
    off->add_option("--csv", f.csv, "output plot rows");
    off->add_option("--threads", f.threads, "worker threads, 0 for all cores");
    off->add_option("--reduce-order", f.reduce, "maximum generator count");

    OnlineArgs o;
    auto* on = app.add_subcommand("online", "monitor a trace with on-demand sampling");
    on->add_option("--config", o.config, "model config JSON")->required();
    on->add_option("--trace", o.trace, "trace JSON")->required();
    on->add_option("--out", o.out, "output report JSON")->required();
    on->add_option("--csv", o.csv, "output plot rows");
    on->add_option("--horizon", o.horizon, "monitored horizon (default: trace length)");
    on->add_option("--reduce-order", o.reduce, "maximum generator count");
    on->add_option("--sensor-radius", o.sensor_radius, "sensor half-widths")->delimiter(',');

    PlotArgs p;
    auto* plt = app.add_subcommand("plot", "render one dimension of a plot CSV as SVG");
    plt->add_option("--csv", p.csv, "plot rows")->required();
    plt->add_option("--dim", p.dim, "dimension index")->required();
    plt->add_option("--out", p.out, "output SVG")->required();

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return exit_safe;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_safe;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    try
    {
        if (*gen)
            return genlog(g, out);
        if (*off)
            return offline(f, out, err);
        if (*on)
            return online(o, out, err);
        return plot(p);
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
}

}  // namespace boundmon::cli
