#include <doctest.h>

#include "boundmon/monitor_online.hpp"
#include "boundmon/report_io.hpp"
#include "oracles.hpp"

using namespace boundmon;

namespace
{
Vector v1(double a)
{
    return Vector::Constant(1, a);
}

//! x_{t+1} = 0.95 x_t from x_0 = 1, observed exactly.
class DecayLogger final : public TriggerLogger
{
  public:
    Zonotope trigger(int step) override
    {
        calls.push_back(step);
        return Zonotope::point(v1(std::pow(0.95, step)));
    }
    std::vector<int> calls;
};

class WrongDimLogger final : public TriggerLogger
{
  public:
    Zonotope trigger(int) override { return Zonotope::point(Vector::Zero(3)); }
};

UncertainLinearSystem widening()
{
    return {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 0.1)};
}

GroundTruthTrace decay_trace(int horizon)
{
    GroundTruthTrace trace;
    for (int t = 0; t <= horizon; ++t)
        trace.states.push_back(v1(std::pow(0.95, t)));
    return trace;
}
}  // namespace

TEST_CASE("benign run triggers only the initial sample")
{
    Matrix a(2, 2);
    a << 0.9, 0.1, -0.1, 0.9;
    auto const sys = UncertainLinearSystem::exact(a);
    Vector x0(2);
    x0 << 1, 0;
    GroundTruthTrace const trace = simulate_trace(sys, Zonotope::point(x0), 50, 1, TraceMode::per_step);
    SimulatedLogger logger(trace, Vector::Zero(2));
    UnsafeSpec const unsafe({box_to_zonotope(Box(Vector::Constant(2, 5.0), Vector::Constant(2, 6.0)))});
    OnlineReport const r = monitor_online(sys, logger, unsafe, 50);
    CHECK(r.outcome == Outcome::safe);
    CHECK(r.triggered_steps == std::vector<int>{0});
    CHECK_FALSE(r.unsafe_step);
    CHECK(r.reach_steps == 50);
    CHECK(r.horizon == 50);
}

TEST_CASE("unsafe initial sample stops at step zero")
{
    DecayLogger logger;
    UnsafeSpec const unsafe({UnsafeSpec::half_open_box({0.5}, {std::nullopt})});
    OnlineReport const r = monitor_online(widening(), logger, unsafe, 10);
    CHECK(r.outcome == Outcome::unsafe);
    REQUIRE(r.unsafe_step);
    CHECK(*r.unsafe_step == 0);
    CHECK(r.triggered_steps == std::vector<int>{0});
    CHECK(r.reach_steps == 0);
}

TEST_CASE("a trajectory skirting the unsafe set is safe after triggering")
{
    DecayLogger logger;
    UnsafeSpec const unsafe({UnsafeSpec::half_open_box({1.05}, {std::nullopt})});
    OnlineOptions opts;
    opts.record = true;
    OnlineReport const r = monitor_online(widening(), logger, unsafe, 20, opts);
    CHECK(r.outcome == Outcome::safe);
    CHECK(r.triggered_steps.size() >= 2);
    CHECK(r.triggered_steps == logger.calls);
    // From the point 1 the first reach set is [0.9, 1.1]; from 0.95 the next
    // two reach 1.045 and 1.1495 at the top.
    REQUIRE(r.triggered_steps.size() >= 3);
    CHECK(r.triggered_steps[1] == 1);
    CHECK(r.triggered_steps[2] == 3);
    REQUIRE(r.records.size() == 21);
    for (const OnlineStepRecord& rec : r.records)
    {
        bool const triggered = std::find(r.triggered_steps.begin(), r.triggered_steps.end(), rec.step)
                               != r.triggered_steps.end();
        CHECK(rec.sample.has_value() == triggered);
    }
}

TEST_CASE("agreement with brute-force trajectory checks")
{
    int unsafe_runs = 0, safe_runs = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        Rng rng(seed + 300);
        Index const n = 1 + Rng::index_from(rng.uniform(), 3);
        int const horizon = 10 + Rng::index_from(rng.uniform(), 91);
        auto const sys = oracle::random_system(rng, n, 0.1);
        Zonotope const init = box_to_zonotope(
            Box(Vector::Constant(n, 0.5), Vector::Constant(n, 1.5)));
        GroundTruthTrace const trace = simulate_trace(sys, init, horizon, seed, TraceMode::per_step);

        std::vector<Box> boxes;
        std::vector<Zonotope> regions;
        for (int i = 0; i < 2; ++i)
        {
            Vector const c = oracle::random_vector(rng, n, -1.0, 1.0);
            Vector const h = oracle::random_vector(rng, n, 0.05, 0.4);
            boxes.emplace_back(c - h, c + h);
            regions.push_back(box_to_zonotope(boxes.back()));
        }
        SimulatedLogger logger(trace, Vector::Zero(n));
        OnlineReport const r = monitor_online(sys, logger, UnsafeSpec(regions), horizon);
        auto const truth = oracle::first_unsafe_step(trace.states, boxes, horizon);
        INFO("seed " << seed);
        if (truth)
        {
            ++unsafe_runs;
            CHECK(r.outcome == Outcome::unsafe);
            REQUIRE(r.unsafe_step);
            CHECK(*r.unsafe_step == *truth);
            CHECK(r.triggered_steps.back() == *truth);
        }
        else
        {
            ++safe_runs;
            CHECK(r.outcome == Outcome::safe);
            CHECK_FALSE(r.unsafe_step);
        }
        CHECK(r.triggered_steps.front() == 0);
        CHECK(std::is_sorted(r.triggered_steps.begin(), r.triggered_steps.end()));
    }
    CHECK(unsafe_runs > 10);
    CHECK(safe_runs > 10);
}

TEST_CASE("exact dynamics never trigger on a safe trajectory")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        Rng rng(seed + 900);
        Index const n = 2;
        auto const sys = UncertainLinearSystem::exact(oracle::random_system(rng, n, 0.0).center());
        GroundTruthTrace const trace
            = simulate_trace(sys, Zonotope::point(Vector::Constant(n, 1.0)), 40, seed, TraceMode::per_step);
        Vector const c = oracle::random_vector(rng, n, -1.0, 1.0);
        Box const bad(c.array() - 0.2, c.array() + 0.2);
        if (oracle::first_unsafe_step(trace.states, {bad}, 40))
            continue;
        SimulatedLogger logger(trace, Vector::Zero(n));
        OnlineReport const r = monitor_online(sys, logger, UnsafeSpec({box_to_zonotope(bad)}), 40);
        CHECK(r.triggered_steps == std::vector<int>{0});
    }
}

TEST_CASE("logger failures carry the step")
{
    UnsafeSpec const unsafe({UnsafeSpec::half_open_box({1.05}, {std::nullopt})});
    SimulatedLogger short_trace(decay_trace(2), Vector::Zero(1));
    try
    {
        monitor_online(widening(), short_trace, unsafe, 10);
        FAIL("expected LoggerError");
    }
    catch (const LoggerError& e)
    {
        CHECK(e.step() == 3);
    }

    WrongDimLogger wrong;
    CHECK_THROWS_AS(monitor_online(widening(), wrong, unsafe, 10), LoggerError);
    DecayLogger ok;
    CHECK_THROWS(monitor_online(widening(), ok, unsafe, 0));
    CHECK_THROWS_AS(SimulatedLogger(decay_trace(2), Vector::Zero(2)), DimensionError);
    CHECK_THROWS(SimulatedLogger(decay_trace(2), v1(-1.0)));
}

TEST_CASE("simulated logger boxes contain the true state and runs repeat exactly")
{
    Rng rng(55);
    auto const sys = oracle::random_system(rng, 3, 0.05);
    Zonotope const init = box_to_zonotope(Box(Vector::Constant(3, 0.5), Vector::Constant(3, 1.5)));
    GroundTruthTrace const trace = simulate_trace(sys, init, 80, 8, TraceMode::per_step);
    Vector const radius = Vector::Constant(3, 0.03);
    SimulatedLogger logger(trace, radius);
    for (int t = 0; t <= 80; ++t)
        CHECK(contains_point(logger.trigger(t), trace.states[static_cast<std::size_t>(t)]));
    CHECK_THROWS(logger.trigger(81));

    UnsafeSpec const unsafe({box_to_zonotope(Box(Vector::Constant(3, 0.0), Vector::Constant(3, 0.3)))});
    auto l1 = make_simulated_logger(trace, radius);
    auto l2 = make_simulated_logger(trace, radius);
    OnlineReport const a = monitor_online(sys, *l1, unsafe, 80);
    OnlineReport const b = monitor_online(sys, *l2, unsafe, 80);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(report_to_json(report_from_json(report_to_json(a))) == report_to_json(a));
}
