#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "boundmon/dynamics.hpp"
#include "boundmon/logging.hpp"
#include "boundmon/monitor_offline.hpp"

namespace boundmon
{

//! Source of on-demand samples. The returned set must contain the true state.
class TriggerLogger
{
  public:
    virtual ~TriggerLogger() = default;
    virtual Zonotope trigger(int step) = 0;
};

//! Raised when a logger fails at a triggered step.
class LoggerError : public std::runtime_error
{
  public:
    LoggerError(int step, const std::string& what);
    int step() const { return step_; }

  private:
    int step_;
};

//! Logger replaying a ground-truth trace through a sensor box.
class SimulatedLogger final : public TriggerLogger
{
  public:
    SimulatedLogger(GroundTruthTrace trace, Vector sensor_radius);
    Zonotope trigger(int step) override;

  private:
    GroundTruthTrace trace_;
    Vector radius_;
};

std::unique_ptr<TriggerLogger> make_simulated_logger(GroundTruthTrace trace,
                                                     Vector sensor_radius);

struct OnlineStepRecord
{
    int step = 0;
    //! Propagated set (for step 0, the initial sample).
    Box hull{Vector(), Vector()};
    //! Sample taken at this step, if the monitor triggered.
    std::optional<Box> sample;
};

struct OnlineReport
{
    Outcome outcome = Outcome::safe;
    std::optional<int> unsafe_step;
    std::vector<int> triggered_steps;
    std::uint64_t reach_steps = 0;
    int horizon = 0;
    std::vector<OnlineStepRecord> records;
};

struct OnlineOptions
{
    double eps = kFeasibilityTolerance;
    ReachOptions reach;
    bool record = false;
};

/*!
 * Online monitoring over steps 0..H.
 *
 * Samples step 0, then propagates one step at a time; whenever the
 * propagated set meets an unsafe region a fresh sample is triggered. An
 * intersecting sample ends the run as unsafe at that step, otherwise the
 * propagated set is replaced by the sample.
 */
OnlineReport monitor_online(const UncertainLinearSystem& sys,
                            TriggerLogger& logger,
                            const UnsafeSpec& unsafe,
                            int horizon,
                            const OnlineOptions& opts = {});

}  // namespace boundmon
