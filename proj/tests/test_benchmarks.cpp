#include <doctest.h>

#include "boundmon/benchmarks.hpp"
#include "oracles.hpp"

using namespace boundmon;
using nlohmann::json;

namespace
{
std::string config_path(const std::string& name)
{
    return std::string(BOUNDMON_CONFIG_DIR) + "/" + name + ".json";
}

json minimal_doc()
{
    return json::parse(R"({
      "name": "tiny",
      "states": [{"name": "x", "initial": [0.0, 1.0]}, {"name": "y", "initial": [0.0, 1.0]}],
      "time": {"discretization": "discrete", "step": 1.0},
      "dynamics": {"center": [[0.9, 0.0], [0.0, 0.9]], "radius": [[0.0, 0.01], [0.0, 0.0]]},
      "unsafe": {"regions": [{"lower": [5.0, null], "upper": [null, null]}]},
      "horizon": 10,
      "seed": 3,
      "logging": {"p_log": 0.5}
    })");
}

std::string error_path(const json& doc)
{
    try
    {
        parse_config(doc);
    }
    catch (const ConfigError& e)
    {
        return e.path();
    }
    return "";
}

bool any_region_meets(const UnsafeSpec& u, const Vector& x)
{
    for (const Zonotope& r : u.regions())
        if (intersects(r, Zonotope::point(x)))
            return true;
    return false;
}

//! exp(M) by scaling and squaring of a truncated Taylor series.
Matrix taylor_exp(const Matrix& m)
{
    int squarings = 0;
    Matrix a = m;
    while (a.cwiseAbs().maxCoeff() > 0.1)
    {
        a /= 2.0;
        ++squarings;
    }
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    Matrix sum = term;
    for (int k = 1; k < 25; ++k)
    {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i)
        sum = sum * sum;
    return sum;
}
}  // namespace

TEST_CASE("minimal config parses")
{
    ModelConfig const cfg = parse_config(minimal_doc());
    CHECK(cfg.name == "tiny");
    CHECK(cfg.dim() == 2);
    CHECK(cfg.state_count == 2);
    CHECK(cfg.logging.p_log == 0.5);
    CHECK(cfg.logging.t_delta == 0);
    CHECK(cfg.logging.sensor_radius.size() == 2);
    CHECK(cfg.system.center()(0, 0) == 0.9);
    CHECK(cfg.system.radius()(0, 1) == 0.01);
    CHECK(any_region_meets(cfg.unsafe, Vector::Constant(2, 6.0)));
    CHECK_FALSE(any_region_meets(cfg.unsafe, Vector::Constant(2, 4.0)));
}

TEST_CASE("config errors name the offending field")
{
    json doc = minimal_doc();
    doc["dynamics"]["radius"][0][1] = -0.5;
    CHECK(error_path(doc) == "dynamics.radius[0][1]");

    doc = minimal_doc();
    doc["dynamics"]["center"][1] = json::array({1.0});
    CHECK(error_path(doc).rfind("dynamics.center", 0) == 0);

    doc = minimal_doc();
    doc.erase("horizon");
    CHECK(error_path(doc) == "horizon");

    doc = minimal_doc();
    doc["states"][1].erase("initial");
    CHECK(error_path(doc) == "states[1].initial");

    doc = minimal_doc();
    doc["states"][0]["initial"] = json::array({2.0, 1.0});
    CHECK(error_path(doc) == "states[0].initial");

    doc = minimal_doc();
    doc["time"]["discretization"] = "rk4";
    CHECK(error_path(doc) == "time.discretization");

    doc = minimal_doc();
    doc["logging"]["p_log"] = 1.5;
    CHECK(error_path(doc) == "logging.p_log");

    doc = minimal_doc();
    doc["unsafe"]["regions"][0]["lower"] = json::array({1.0});
    CHECK(error_path(doc).rfind("unsafe.regions[0]", 0) == 0);

    CHECK_THROWS_AS(load_config(config_path("does_not_exist")), ConfigError);
}

TEST_CASE("anesthesia config")
{
    ModelConfig const cfg = load_config(config_path("anesthesia"));
    CHECK(cfg.state_count == 4);
    REQUIRE(cfg.dim() == 5);
    CHECK(cfg.names.back() == "u");
    Box const init = interval_hull(cfg.initial);
    CHECK(init.lower()[4] == 2.0);
    CHECK(init.upper()[4] == 5.0);
    // The input dimension is constant.
    CHECK(cfg.system.center().row(4) == Matrix::Identity(5, 5).row(4));
    CHECK(cfg.system.radius().row(4).isZero());
    CHECK(cfg.unsafe.regions().size() == 8);

    Vector inside(5);
    inside << 3.5, 3.5, 4.5, 3.5, 3.0;
    CHECK_FALSE(any_region_meets(cfg.unsafe, inside));
    Vector low = inside;
    low[0] = 0.5;
    CHECK(any_region_meets(cfg.unsafe, low));
    Vector high = inside;
    high[3] = 8.5;
    CHECK(any_region_meets(cfg.unsafe, high));
    CHECK(cfg.probabilities.at("sporadic") == 0.2);
    CHECK(cfg.probabilities.at("frequent") == 0.4);
}

TEST_CASE("acc config")
{
    ModelConfig const cfg = load_config(config_path("acc"));
    CHECK(cfg.state_count == 3);
    REQUIRE(cfg.dim() == 4);
    REQUIRE(cfg.unsafe.regions().size() == 1);
    Box const region = interval_hull(cfg.unsafe.regions()[0]);
    CHECK(region.upper()[1] == 0.5);
    CHECK(region.lower()[1] <= -1e5);
    Vector x(4);
    x << 15.0, 0.4, 15.0, 1.0;
    CHECK(any_region_meets(cfg.unsafe, x));
    x[1] = 3.0;
    CHECK_FALSE(any_region_meets(cfg.unsafe, x));
}

TEST_CASE("aircraft config")
{
    ModelConfig const cfg = load_config(config_path("aircraft"));
    CHECK(cfg.dim() == 4);
    CHECK(cfg.discretization == Discretization::exponential);
    CHECK(cfg.unsafe.regions().size() == 2);
    Vector x(4);
    x << 0.0, 0.0, 20.0, 20.0;
    CHECK_FALSE(any_region_meets(cfg.unsafe, x));
    x[0] = 11.5;
    CHECK(any_region_meets(cfg.unsafe, x));
    x[0] = -50.0;
    CHECK(any_region_meets(cfg.unsafe, x));
    CHECK(cfg.probabilities.size() == 3);
}

TEST_CASE("shipped ground-truth traces stay safe")
{
    for (std::string const name : {"anesthesia", "acc", "aircraft"})
    {
        ModelConfig const cfg = load_config(config_path(name));
        GroundTruthTrace const trace
            = simulate_trace(cfg.system, cfg.initial, cfg.horizon, cfg.seed, cfg.trace_mode);
        INFO(name);
        for (const Vector& x : trace.states)
            REQUIRE_FALSE(any_region_meets(cfg.unsafe, x));
    }
}

TEST_CASE("frequent logs of the shipped models are judged safe")
{
    for (std::string const name : {"anesthesia", "acc", "aircraft"})
    {
        ModelConfig const cfg = load_config(config_path(name));
        GroundTruthTrace const trace
            = simulate_trace(cfg.system, cfg.initial, cfg.horizon, cfg.seed, cfg.trace_mode);
        for (double p : {cfg.probabilities.at("frequent"), 1.0})
        {
            LogSettings settings = cfg.logging;
            settings.p_log = p;
            UncertainLog const log = generate_log(cfg.system, trace, settings, derive_seed(cfg.seed, 17));
            INFO(name << " p=" << p);
            CHECK(monitor_offline(cfg.system, log, cfg.unsafe).outcome == Outcome::safe);
        }
    }
}

TEST_CASE("euler discretisation")
{
    Matrix c(2, 2), r(2, 2);
    c << -1, 2, 0, -3;
    r << 0.1, 0, 0, 0.2;
    UncertainLinearSystem const d = discretize(c, r, Discretization::euler, 0.5);
    Matrix expected(2, 2);
    expected << 0.5, 1, 0, -0.5;
    CHECK(d.center().isApprox(expected));
    CHECK(d.radius().isApprox(0.5 * r));
    UncertainLinearSystem const same = discretize(c, r, Discretization::discrete, 0.5);
    CHECK(same.center() == c);
    CHECK(same.radius() == r);
}

TEST_CASE("exponential discretisation encloses sampled members")
{
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial)
    {
        Index const n = 1 + Rng::index_from(rng.uniform(), 4);
        Matrix const c = oracle::random_matrix(rng, n, n, -2.0, 2.0);
        Matrix const r = oracle::random_matrix(rng, n, n, 0.0, 0.3);
        double const h = rng.uniform(0.01, 0.5);
        UncertainLinearSystem const d = discretize(c, r, Discretization::exponential, h);
        CHECK(d.center().isApprox(taylor_exp(h * c), 1e-10));
        UncertainLinearSystem const cont(c, r);
        for (int s = 0; s < 5; ++s)
        {
            Matrix const a = sample_member(cont, rng);
            Matrix const e = taylor_exp(h * a);
            Matrix const dev = (e - d.center()).cwiseAbs() - d.radius();
            Matrix const slack = 1e-10 * (Matrix::Ones(n, n) + e.cwiseAbs());
            CHECK((dev - slack).maxCoeff() <= 0.0);
        }
    }
}
