#include "boundmon/benchmarks.hpp"

#include <cmath>
#include <optional>

#include <unsupported/Eigen/MatrixFunctions>

namespace boundmon
{

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& what)
    : std::runtime_error(path + ": " + what), path_(std::move(path))
{
}

UncertainLinearSystem discretize(const Matrix& center,
                                 const Matrix& radius,
                                 Discretization method,
                                 double step)
{
    Index const n = center.rows();
    switch (method)
    {
        case Discretization::discrete:
            return {center, radius};
        case Discretization::euler:
            return {Matrix::Identity(n, n) + step * center, step * radius};
        case Discretization::exponential: {
            Matrix const nominal = (step * center).exp();
            Matrix const abs_c = center.cwiseAbs();
            Matrix const upper = (step * (abs_c + radius)).exp();
            Matrix const base = (step * abs_c).exp();
            Matrix const bound = (upper - base).cwiseMax(0.0);
            return {nominal, bound};
        }
    }
    throw std::logic_error("unknown discretization");
}

//---------------------------------------------------------------------------//
namespace
{
std::string at(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& path, const std::string& key)
{
    if (!obj.is_object())
        throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(at(path, key), "missing required field");
    return *it;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number())
        throw ConfigError(path, "expected a number");
    double const v = j.get<double>();
    if (!std::isfinite(v))
        throw ConfigError(path, "expected a finite number");
    return v;
}

int integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

std::string string(const json& j, const std::string& path)
{
    if (!j.is_string())
        throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

Vector numbers(const json& j, const std::string& path, Index expected = -1)
{
    if (!j.is_array())
        throw ConfigError(path, "expected an array of numbers");
    if (expected >= 0 && static_cast<Index>(j.size()) != expected)
        throw ConfigError(path, "expected " + std::to_string(expected) + " entries, got "
                                    + std::to_string(j.size()));
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Index>(i)] = number(j[i], at(path, i));
    return v;
}

Matrix rows_matrix(const json& j, const std::string& path, Index rows, Index cols)
{
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw ConfigError(path, "expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        m.row(i) = numbers(j[static_cast<std::size_t>(i)], at(path, static_cast<std::size_t>(i)),
                           cols)
                       .transpose();
    return m;
}

std::vector<std::optional<double>> faces(const json& j, const std::string& path, Index states,
                                         Index dim)
{
    if (!j.is_array()
        || (static_cast<Index>(j.size()) != states && static_cast<Index>(j.size()) != dim))
        throw ConfigError(path, "expected " + std::to_string(states) + " or "
                                    + std::to_string(dim) + " entries (number or null)");
    std::vector<std::optional<double>> out(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        if (!j[i].is_null())
            out[i] = number(j[i], at(path, i));
    }
    return out;
}

struct Interval
{
    double lo;
    double hi;
};

Interval interval_of(const json& j, const std::string& path)
{
    Vector const v = numbers(j, path, 2);
    if (v[0] > v[1])
        throw ConfigError(path, "interval lower bound exceeds upper bound");
    return {v[0], v[1]};
}

Discretization discretization_of(const std::string& s, const std::string& path)
{
    if (s == "discrete")
        return Discretization::discrete;
    if (s == "euler")
        return Discretization::euler;
    if (s == "exp")
        return Discretization::exponential;
    throw ConfigError(path, "unknown discretization '" + s + "' (discrete, euler or exp)");
}
}  // namespace

ModelConfig parse_config(const json& doc)
{
    ModelConfig cfg;
    cfg.name = string(require(doc, "", "name"), "name");

    const json& states = require(doc, "", "states");
    if (!states.is_array() || states.empty())
        throw ConfigError("states", "expected a non-empty array");
    json const inputs = doc.contains("inputs") ? doc["inputs"] : json::array();
    if (!inputs.is_array())
        throw ConfigError("inputs", "expected an array");

    auto const ns = static_cast<Index>(states.size());
    Index const n = ns + static_cast<Index>(inputs.size());
    cfg.state_count = ns;

    Vector init_lo(n), init_hi(n);
    auto take_entry = [&](const json& entry, const std::string& path, Index i) {
        cfg.names.push_back(string(require(entry, path, "name"), at(path, "name")));
        Interval const iv = interval_of(require(entry, path, "initial"), at(path, "initial"));
        init_lo[i] = iv.lo;
        init_hi[i] = iv.hi;
    };
    for (std::size_t i = 0; i < states.size(); ++i)
        take_entry(states[i], at("states", i), static_cast<Index>(i));
    for (std::size_t i = 0; i < inputs.size(); ++i)
        take_entry(inputs[i], at("inputs", i), ns + static_cast<Index>(i));
    cfg.initial = box_to_zonotope(Box(init_lo, init_hi));

    const json& time = require(doc, "", "time");
    cfg.discretization = discretization_of(
        string(require(time, "time", "discretization"), "time.discretization"),
        "time.discretization");
    cfg.step_size = number(require(time, "time", "step"), "time.step");
    if (!(cfg.step_size > 0.0))
        throw ConfigError("time.step", "step size must be positive");

    const json& dyn = require(doc, "", "dynamics");
    Matrix const c_rows
        = rows_matrix(require(dyn, "dynamics", "center"), "dynamics.center", ns, n);
    Matrix const r_rows
        = rows_matrix(require(dyn, "dynamics", "radius"), "dynamics.radius", ns, n);
    for (Index i = 0; i < ns; ++i)
        for (Index j = 0; j < n; ++j)
            if (r_rows(i, j) < 0.0)
                throw ConfigError("dynamics.radius[" + std::to_string(i) + "]["
                                      + std::to_string(j) + "]",
                                  "radius entries must be non-negative");

    // Inputs hold their value: zero derivative, or identity when discrete.
    Matrix center = Matrix::Zero(n, n);
    Matrix radius = Matrix::Zero(n, n);
    center.topRows(ns) = c_rows;
    radius.topRows(ns) = r_rows;
    if (cfg.discretization == Discretization::discrete)
        for (Index i = ns; i < n; ++i)
            center(i, i) = 1.0;
    cfg.system = discretize(center, radius, cfg.discretization, cfg.step_size);

    const json& unsafe = require(doc, "", "unsafe");
    double bound = 1e6;
    if (unsafe.contains("unbounded_bound"))
    {
        bound = number(unsafe["unbounded_bound"], "unsafe.unbounded_bound");
        if (!(bound > 0.0))
            throw ConfigError("unsafe.unbounded_bound", "must be positive");
    }
    if (unsafe.contains("complement_of"))
    {
        const json& safe = unsafe["complement_of"];
        auto lo = faces(require(safe, "unsafe.complement_of", "lower"),
                        "unsafe.complement_of.lower", ns, n);
        auto hi = faces(require(safe, "unsafe.complement_of", "upper"),
                        "unsafe.complement_of.upper", ns, n);
        try
        {
            cfg.unsafe = UnsafeSpec::complement_of(lo, hi, bound);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError("unsafe.complement_of", e.what());
        }
    }
    else
    {
        const json& regions = require(unsafe, "unsafe", "regions");
        if (!regions.is_array() || regions.empty())
            throw ConfigError("unsafe.regions", "expected a non-empty array");
        std::vector<Zonotope> boxes;
        for (std::size_t r = 0; r < regions.size(); ++r)
        {
            std::string const path = at("unsafe.regions", r);
            auto lo = faces(require(regions[r], path, "lower"), at(path, "lower"), ns, n);
            auto hi = faces(require(regions[r], path, "upper"), at(path, "upper"), ns, n);
            try
            {
                boxes.push_back(UnsafeSpec::half_open_box(lo, hi, bound));
            }
            catch (const std::invalid_argument& e)
            {
                throw ConfigError(path, e.what());
            }
        }
        cfg.unsafe = UnsafeSpec(std::move(boxes), bound);
    }

    cfg.horizon = integer(require(doc, "", "horizon"), "horizon");
    if (cfg.horizon < 1)
        throw ConfigError("horizon", "must be at least 1");
    const json& seed = require(doc, "", "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
        throw ConfigError("seed", "expected a non-negative integer");
    cfg.seed = seed.get<std::uint64_t>();
    if (doc.contains("trace_mode"))
    {
        try
        {
            cfg.trace_mode = trace_mode_from_string(string(doc["trace_mode"], "trace_mode"));
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError("trace_mode", e.what());
        }
    }

    const json& logging = require(doc, "", "logging");
    cfg.logging.p_log = number(require(logging, "logging", "p_log"), "logging.p_log");
    if (cfg.logging.p_log < 0.0 || cfg.logging.p_log > 1.0)
        throw ConfigError("logging.p_log", "probability must lie in [0, 1]");
    cfg.logging.t_delta = logging.contains("t_delta")
                              ? integer(logging["t_delta"], "logging.t_delta")
                              : 0;
    if (cfg.logging.t_delta < 0)
        throw ConfigError("logging.t_delta", "must be non-negative");
    cfg.logging.sensor_radius = Vector::Zero(n);
    if (logging.contains("sensor_radius"))
    {
        Vector const r = numbers(logging["sensor_radius"], "logging.sensor_radius");
        if (r.size() != ns && r.size() != n)
            throw ConfigError("logging.sensor_radius", "expected " + std::to_string(ns) + " or "
                                                           + std::to_string(n) + " entries");
        if ((r.array() < 0.0).any())
            throw ConfigError("logging.sensor_radius", "radius must be non-negative");
        cfg.logging.sensor_radius.head(r.size()) = r;
    }
    if (logging.contains("sensor_relative"))
    {
        cfg.logging.sensor_relative
            = number(logging["sensor_relative"], "logging.sensor_relative");
        if (cfg.logging.sensor_relative < 0.0)
            throw ConfigError("logging.sensor_relative", "must be non-negative");
    }
    if (logging.contains("probabilities"))
    {
        const json& probs = logging["probabilities"];
        if (!probs.is_object())
            throw ConfigError("logging.probabilities", "expected an object");
        for (auto it = probs.begin(); it != probs.end(); ++it)
        {
            std::string const path = "logging.probabilities." + it.key();
            double const p = number(it.value(), path);
            if (p < 0.0 || p > 1.0)
                throw ConfigError(path, "probability must lie in [0, 1]");
            cfg.probabilities[it.key()] = p;
        }
    }
    return cfg;
}

ModelConfig load_config(const std::filesystem::path& path)
{
    json doc;
    try
    {
        doc = read_json_file(path);
    }
    catch (const std::exception& e)
    {
        throw ConfigError("<file>", e.what());
    }
    return parse_config(doc);
}

}  // namespace boundmon
