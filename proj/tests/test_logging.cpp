#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "boundmon/logging.hpp"
#include "oracles.hpp"

using namespace boundmon;
using nlohmann::json;

namespace
{
Vector v2(double a, double b)
{
    Vector v(2);
    v << a, b;
    return v;
}

UncertainLinearSystem example_system()
{
    Matrix c(2, 2), r(2, 2);
    c << 1, 2.5, 0, 2;
    r << 0, 0.5, 0, 0;
    return {c, r};
}

UncertainLinearSystem damped_system()
{
    Matrix c(2, 2), r(2, 2);
    c << 0.9, 0.2, -0.2, 0.9;
    r << 0.01, 0.01, 0.01, 0.01;
    return {c, r};
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("boundmon_test_logging_" + name);
}

json sample_json(int lb, int ub, double x)
{
    return {{"t_lb", lb}, {"t_ub", ub}, {"center", {x}}, {"generators", json::array({{0.1}})}};
}
}  // namespace

TEST_CASE("log validation reports the offending sample")
{
    auto pt = [](double x) { return Zonotope::point(Vector::Constant(1, x)); };
    CHECK_THROWS_AS(UncertainLog(5, {}), LogError);

    try
    {
        UncertainLog(5, {{pt(0), 0, 0}, {pt(1), 3, 2}});
        FAIL("expected rejection");
    }
    catch (const LogError& e)
    {
        CHECK(e.index() == 1);
    }
    try
    {
        UncertainLog(10, {{pt(0), 0, 2}, {pt(1), 4, 6}, {pt(2), 6, 7}});
        FAIL("expected rejection");
    }
    catch (const LogError& e)
    {
        CHECK(e.index() == 2);
        CHECK(std::string(e.what()).find("overlap") != std::string::npos);
    }
    try
    {
        UncertainLog(5, {{pt(0), 0, 0}, {Zonotope::point(v2(0, 0)), 2, 2}});
        FAIL("expected rejection");
    }
    catch (const LogError& e)
    {
        CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(UncertainLog(3, {{pt(0), 0, 4}}), LogError);
    CHECK_THROWS_AS(UncertainLog(3, {{pt(0), -1, 0}}), LogError);

    UncertainLog const ok(9, {{pt(0), 0, 1}, {pt(1), 2, 5}, {pt(1), 9, 9}});
    CHECK_FALSE(ok.fixed_timestamps());
    CHECK(ok.total_width() == 4);
}

TEST_CASE("simulate_trace without uncertainty follows the centre matrix")
{
    Matrix c(2, 2);
    c << 0.5, 1, 0, 0.8;
    auto const sys = UncertainLinearSystem::exact(c);
    GroundTruthTrace const tr = simulate_trace(sys, Zonotope::point(v2(1, 2)), 6, 3,
                                               TraceMode::per_step);
    REQUIRE(tr.horizon() == 6);
    Vector x = v2(1, 2);
    for (int t = 0; t <= 6; ++t)
    {
        CHECK((tr.states[static_cast<std::size_t>(t)] - x).norm() <= 1e-12);
        x = c * x;
    }
}

TEST_CASE("simulate_trace is deterministic and starts inside the initial set")
{
    auto const sys = damped_system();
    Zonotope const init = box_to_zonotope(Box(v2(0, 1), v2(1, 2)));
    for (auto mode : {TraceMode::fixed_matrix, TraceMode::per_step})
    {
        GroundTruthTrace const a = simulate_trace(sys, init, 40, 99, mode);
        GroundTruthTrace const b = simulate_trace(sys, init, 40, 99, mode);
        CHECK(a.states == b.states);
        CHECK(contains_point(init, a.states[0]));
        CHECK(simulate_trace(sys, init, 40, 100, mode).states != a.states);
    }
    CHECK_THROWS(simulate_trace(sys, init, 0, 1, TraceMode::per_step));
}

TEST_CASE("fixed-matrix trace on the example system")
{
    GroundTruthTrace const tr
        = simulate_trace(example_system(), Zonotope::point(v2(1, 1)), 1, 17, TraceMode::fixed_matrix);
    double const x1 = tr.states[1][0];
    CHECK(tr.states[1][1] == 2.0);
    CHECK(x1 >= 3.0);
    CHECK(x1 <= 4.0);
}

TEST_CASE("fixed mode reuses one member matrix")
{
    auto const sys = damped_system();
    GroundTruthTrace const tr = simulate_trace(sys, Zonotope::point(v2(1, 0.5)), 12, 5,
                                               TraceMode::fixed_matrix);
    // Recover A from two consecutive pairs of independent states and
    // check it reproduces the rest of the trajectory.
    Matrix x(2, 2), y(2, 2);
    x.col(0) = tr.states[0];
    x.col(1) = tr.states[1];
    y.col(0) = tr.states[1];
    y.col(1) = tr.states[2];
    Matrix const a = y * x.inverse();
    CHECK(sys.contains(a, 1e-9));
    for (int t = 2; t < 12; ++t)
        CHECK((a * tr.states[static_cast<std::size_t>(t)]
               - tr.states[static_cast<std::size_t>(t + 1)])
                  .norm()
              <= 1e-9);
}

TEST_CASE("complete exact logging reproduces the trace")
{
    auto const sys = damped_system();
    GroundTruthTrace const tr = simulate_trace(sys, Zonotope::point(v2(1, 1)), 30, 2,
                                               TraceMode::per_step);
    LogSettings s;
    s.p_log = 1.0;
    s.t_delta = 0;
    s.sensor_radius = Vector::Zero(2);
    UncertainLog const log = generate_log(sys, tr, s, 4);
    REQUIRE(log.size() == 31);
    CHECK(log.fixed_timestamps());
    for (int t = 0; t <= 30; ++t)
    {
        const Sample& smp = log[static_cast<std::size_t>(t)];
        CHECK(smp.t_lb == t);
        CHECK(smp.t_ub == t);
        CHECK(smp.set.is_point());
        CHECK(smp.set.center() == tr.states[static_cast<std::size_t>(t)]);
    }
}

TEST_CASE("zero probability keeps only the initial sample")
{
    auto const sys = damped_system();
    GroundTruthTrace const tr = simulate_trace(sys, Zonotope::point(v2(1, 1)), 50, 2,
                                               TraceMode::per_step);
    LogSettings s;
    s.p_log = 0.0;
    s.t_delta = 5;
    UncertainLog const log = generate_log(sys, tr, s, 4);
    REQUIRE(log.size() == 1);
    CHECK(log[0].t_lb == 0);
}

TEST_CASE("generated logs keep their invariants")
{
    auto const sys = damped_system();
    Zonotope const init = box_to_zonotope(Box(v2(0, 1), v2(1, 2)));
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        int const h = seed == 0 ? 2000 : 200;
        GroundTruthTrace const tr = simulate_trace(sys, init, h, seed, TraceMode::per_step);
        LogSettings s;
        s.p_log = 0.4;
        s.t_delta = 10;
        s.sensor_radius = v2(0.01, 0.02);
        s.sensor_relative = seed % 2 ? 0.05 : 0.0;
        UncertainLog const log = generate_log(sys, tr, s, seed + 1000);
        REQUIRE(log[0].t_lb == 0);
        for (std::size_t k = 0; k < log.size(); ++k)
        {
            const Sample& smp = log[k];
            // The true logging step is the lower bound.
            int const t = smp.t_lb;
            REQUIRE(smp.t_ub - smp.t_lb <= 10);
            REQUIRE(smp.t_ub <= h);
            REQUIRE(contains_point(smp.set, tr.states[static_cast<std::size_t>(t)]));
            if (k > 0)
                REQUIRE(log[k - 1].t_ub < smp.t_lb);
        }
    }
}

TEST_CASE("logged steps nest in the probability and delays grow with the bound")
{
    auto const sys = damped_system();
    GroundTruthTrace const tr = simulate_trace(sys, Zonotope::point(v2(1, 1)), 500, 8,
                                               TraceMode::per_step);
    LogSettings lo, hi;
    lo.p_log = 0.2;
    hi.p_log = 0.4;
    std::set<int> steps_lo, steps_hi;
    for (const Sample& s : generate_log(sys, tr, lo, 3).samples())
        steps_lo.insert(s.t_lb);
    for (const Sample& s : generate_log(sys, tr, hi, 3).samples())
        steps_hi.insert(s.t_lb);
    CHECK(std::includes(steps_hi.begin(), steps_hi.end(), steps_lo.begin(), steps_lo.end()));
    CHECK(steps_hi.size() > steps_lo.size());

    // Delays for a step logged under both bounds never shrink.
    LogSettings d2, d8;
    d2.p_log = d8.p_log = 0.05;
    d2.t_delta = 2;
    d8.t_delta = 8;
    UncertainLog const l2 = generate_log(sys, tr, d2, 3);
    UncertainLog const l8 = generate_log(sys, tr, d8, 3);
    std::map<int, int> w2;
    for (const Sample& s : l2.samples())
        w2[s.t_lb] = s.width();
    for (const Sample& s : l8.samples())
        if (w2.count(s.t_lb))
            CHECK(s.width() >= w2[s.t_lb]);
}

TEST_CASE("sensor box")
{
    Zonotope const z = sensor_box(v2(2, -4), v2(0.1, 0), 0.05);
    Box const b = interval_hull(z);
    CHECK(b.lower()[0] == doctest::Approx(1.8));
    CHECK(b.upper()[0] == doctest::Approx(2.2));
    CHECK(b.lower()[1] == doctest::Approx(-4.2));
    CHECK(b.upper()[1] == doctest::Approx(-3.8));
    CHECK(sensor_box(v2(2, -4), v2(0, 0)).is_point());
    CHECK_THROWS(sensor_box(v2(2, -4), v2(-1, 0)));
}

TEST_CASE("log files round-trip exactly")
{
    auto const sys = damped_system();
    Zonotope const init = box_to_zonotope(Box(v2(0.1, 1.0 / 3.0), v2(1, 2)));
    GroundTruthTrace const tr = simulate_trace(sys, init, 300, 21, TraceMode::per_step);
    LogSettings s;
    s.p_log = 0.3;
    s.t_delta = 4;
    s.sensor_radius = v2(1e-3, 0.0);
    s.sensor_relative = 0.013;
    UncertainLog const log = generate_log(sys, tr, s, 22);
    auto const path = temp_file("log.json");
    write_log(log, path);
    UncertainLog const back = read_log(path);
    REQUIRE(back.size() == log.size());
    CHECK(back.horizon() == log.horizon());
    for (std::size_t k = 0; k < log.size(); ++k)
    {
        CHECK(back[k].t_lb == log[k].t_lb);
        CHECK(back[k].t_ub == log[k].t_ub);
        CHECK(back[k].set == log[k].set);
    }
    auto const trace_path = temp_file("trace.json");
    write_trace(tr, trace_path);
    GroundTruthTrace const tb = read_trace(trace_path);
    CHECK(tb.states == tr.states);
    CHECK(tb.seed == tr.seed);
    CHECK(tb.mode == tr.mode);

    // Writing is deterministic.
    auto const again = temp_file("log2.json");
    write_log(back, again);
    std::ifstream f1(path), f2(again);
    std::string s1((std::istreambuf_iterator<char>(f1)), {});
    std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
}

TEST_CASE("log documents are validated on read")
{
    json doc = {{"horizon", 10},
                {"dim", 1},
                {"samples", json::array({sample_json(0, 0, 1.0), sample_json(3, 2, 1.0)})}};
    try
    {
        log_from_json(doc);
        FAIL("expected rejection");
    }
    catch (const LogError& e)
    {
        CHECK(e.index() == 1);
    }

    doc["samples"] = json::array({sample_json(0, 4, 1.0), sample_json(4, 5, 1.0)});
    try
    {
        log_from_json(doc);
        FAIL("expected rejection");
    }
    catch (const LogError& e)
    {
        CHECK(e.index() == 1);
        CHECK(std::string(e.what()).find("overlap") != std::string::npos);
    }

    doc["samples"] = json::array({sample_json(0, 0, 1.0)});
    doc["samples"][0]["center"] = {1.0, 2.0};
    try
    {
        log_from_json(doc);
        FAIL("expected rejection");
    }
    catch (const LogError& e)
    {
        CHECK(e.index() == 0);
    }

    CHECK_THROWS_AS(log_from_json(json{{"horizon", 3}}), LogError);
    doc["samples"] = json::array({sample_json(0, 0, 1.0)});
    doc["samples"][0]["generators"] = json::array();
    CHECK(log_from_json(doc)[0].set.is_point());

    auto const path = temp_file("broken.json");
    std::ofstream(path) << "{ not json";
    CHECK_THROWS(read_log(path));
    CHECK_THROWS(read_log(temp_file("missing.json")));
}
