#include "boundmon/monitor_online.hpp"

#include <string>

namespace boundmon
{

LoggerError::LoggerError(int step, const std::string& what)
    : std::runtime_error("logger failed at step " + std::to_string(step) + ": " + what),
      step_(step)
{
}

SimulatedLogger::SimulatedLogger(GroundTruthTrace trace, Vector sensor_radius)
    : trace_(std::move(trace)), radius_(std::move(sensor_radius))
{
    if (radius_.size() == 0)
        radius_ = Vector::Zero(trace_.dim());
    require_same_dim(radius_.size(), trace_.dim(), "sensor radius");
    if ((radius_.array() < 0.0).any())
        throw std::invalid_argument("sensor radius must be non-negative");
}

Zonotope SimulatedLogger::trigger(int step)
{
    if (step < 0 || step > trace_.horizon())
        throw std::out_of_range("step " + std::to_string(step) + " outside trace range [0, "
                                + std::to_string(trace_.horizon()) + "]");
    return sensor_box(trace_.states[static_cast<std::size_t>(step)], radius_);
}

std::unique_ptr<TriggerLogger> make_simulated_logger(GroundTruthTrace trace,
                                                     Vector sensor_radius)
{
    return std::make_unique<SimulatedLogger>(std::move(trace), std::move(sensor_radius));
}

//---------------------------------------------------------------------------//
namespace
{
Zonotope take_sample(TriggerLogger& logger, int step, Index dim)
{
    Zonotope s;
    try
    {
        s = logger.trigger(step);
    }
    catch (const std::exception& e)
    {
        throw LoggerError(step, e.what());
    }
    if (s.dim() != dim)
        throw LoggerError(step, "sample has dimension " + std::to_string(s.dim())
                                    + ", expected " + std::to_string(dim));
    return s;
}

bool meets_unsafe(const Zonotope& z, const UnsafeSpec& unsafe, double eps)
{
    for (const Zonotope& region : unsafe.regions())
    {
        if (intersects(z, region, eps))
            return true;
    }
    return false;
}
}  // namespace

OnlineReport monitor_online(const UncertainLinearSystem& sys,
                            TriggerLogger& logger,
                            const UnsafeSpec& unsafe,
                            int horizon,
                            const OnlineOptions& opts)
{
    if (horizon < 1)
        throw std::invalid_argument("online horizon must be at least 1");
    require_same_dim(sys.dim(), unsafe.dim(), "unsafe set");

    OnlineReport report;
    report.horizon = horizon;

    Zonotope theta = take_sample(logger, 0, sys.dim());
    report.triggered_steps.push_back(0);
    if (opts.record)
        report.records.push_back({0, interval_hull(theta), interval_hull(theta)});
    if (meets_unsafe(theta, unsafe, opts.eps))
    {
        report.outcome = Outcome::unsafe;
        report.unsafe_step = 0;
        return report;
    }

    for (int t = 0; t < horizon; ++t)
    {
        int const step = t + 1;
        theta = reach_step(sys, theta, opts.reach);
        ++report.reach_steps;
        if (opts.record)
            report.records.push_back({step, interval_hull(theta), std::nullopt});
        if (!meets_unsafe(theta, unsafe, opts.eps))
            continue;

        Zonotope sample = take_sample(logger, step, sys.dim());
        report.triggered_steps.push_back(step);
        if (opts.record)
            report.records.back().sample = interval_hull(sample);
        if (meets_unsafe(sample, unsafe, opts.eps))
        {
            report.outcome = Outcome::unsafe;
            report.unsafe_step = step;
            return report;
        }
        theta = std::move(sample);
    }
    return report;
}

}  // namespace boundmon
