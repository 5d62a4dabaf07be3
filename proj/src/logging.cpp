#include "boundmon/logging.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "boundmon/random.hpp"

namespace boundmon
{

using nlohmann::json;

LogError::LogError(std::ptrdiff_t index, const std::string& what)
    : std::runtime_error(index >= 0 ? "sample " + std::to_string(index) + ": " + what : what),
      index_(index)
{
}

//---------------------------------------------------------------------------//
UncertainLog::UncertainLog(int horizon, std::vector<Sample> samples)
    : horizon_(horizon), samples_(std::move(samples))
{
    if (horizon_ < 0)
        throw LogError(-1, "horizon must be non-negative");
    if (samples_.empty())
        throw LogError(-1, "log must contain at least one sample");
    Index const n = samples_.front().set.dim();
    for (std::size_t k = 0; k < samples_.size(); ++k)
    {
        auto const idx = static_cast<std::ptrdiff_t>(k);
        const Sample& s = samples_[k];
        if (s.set.dim() != n || n == 0)
            throw LogError(idx, "state dimension " + std::to_string(s.set.dim())
                                    + " differs from " + std::to_string(n));
        if (s.t_lb < 0)
            throw LogError(idx, "t_lb must be non-negative");
        if (s.t_ub < s.t_lb)
            throw LogError(idx, "t_ub " + std::to_string(s.t_ub) + " is below t_lb "
                                    + std::to_string(s.t_lb));
        if (s.t_ub > horizon_)
            throw LogError(idx, "t_ub exceeds the horizon");
        if (k > 0 && samples_[k - 1].t_ub >= s.t_lb)
            throw LogError(idx, "timestamp interval overlaps the previous sample; "
                                "consecutive intervals must be disjoint (t_ub < next t_lb)");
    }
}

bool UncertainLog::fixed_timestamps() const
{
    return std::all_of(samples_.begin(), samples_.end(),
                       [](const Sample& s) { return s.fixed_timestamp(); });
}

long UncertainLog::total_width() const
{
    long total = 0;
    for (const Sample& s : samples_)
        total += s.width();
    return total;
}

std::string to_string(TraceMode mode)
{
    return mode == TraceMode::fixed_matrix ? "fixed" : "per-step";
}

TraceMode trace_mode_from_string(const std::string& s)
{
    if (s == "fixed")
        return TraceMode::fixed_matrix;
    if (s == "per-step")
        return TraceMode::per_step;
    throw std::invalid_argument("unknown trace mode '" + s + "' (expected fixed or per-step)");
}

//---------------------------------------------------------------------------//
GroundTruthTrace simulate_trace(const UncertainLinearSystem& sys,
                                const Zonotope& init,
                                int horizon,
                                std::uint64_t seed,
                                TraceMode mode)
{
    require_same_dim(sys.dim(), init.dim(), "trace initial set");
    if (horizon < 1)
        throw std::invalid_argument("trace horizon must be at least 1");

    Rng rng(seed);
    Vector alpha(init.order());
    for (Index j = 0; j < alpha.size(); ++j)
        alpha[j] = rng.uniform(-1.0, 1.0);

    GroundTruthTrace trace;
    trace.mode = mode;
    trace.seed = seed;
    trace.states.reserve(static_cast<std::size_t>(horizon) + 1);
    trace.states.push_back(init.at(alpha));

    Matrix a = sample_member(sys, rng);
    for (int t = 0; t < horizon; ++t)
    {
        if (mode == TraceMode::per_step && t > 0)
            a = sample_member(sys, rng);
        trace.states.push_back(a * trace.states.back());
    }
    return trace;
}

Zonotope sensor_box(const Vector& x, const Vector& radius, double relative)
{
    require_same_dim(x.size(), radius.size(), "sensor radius");
    if ((radius.array() < 0.0).any() || relative < 0.0)
        throw std::invalid_argument("sensor radius must be non-negative");
    Vector const half = radius + relative * x.cwiseAbs();
    return Zonotope(x, Matrix(half.asDiagonal()));
}

UncertainLog generate_log(const UncertainLinearSystem& sys,
                          const GroundTruthTrace& trace,
                          const LogSettings& settings,
                          std::uint64_t seed)
{
    require_same_dim(sys.dim(), trace.dim(), "trace");
    if (!(settings.p_log >= 0.0 && settings.p_log <= 1.0))
        throw std::invalid_argument("logging probability must lie in [0, 1]");
    if (settings.t_delta < 0)
        throw std::invalid_argument("timestamp delay bound must be non-negative");
    Vector const radius = settings.sensor_radius.size() == 0
                              ? Vector::Zero(trace.dim())
                              : settings.sensor_radius;

    int const horizon = trace.horizon();
    Rng decide(derive_seed(seed, 1));
    Rng delay(derive_seed(seed, 2));

    std::vector<Sample> samples;
    for (int t = 0; t <= horizon; ++t)
    {
        double const u_log = decide.uniform();
        double const u_delay = delay.uniform();
        bool const logged = t == 0 || u_log < settings.p_log;
        if (!logged)
            continue;
        int const w = Rng::index_from(u_delay, settings.t_delta + 1);
        int const t_ub = std::min(horizon, t + w);
        if (!samples.empty() && samples.back().t_ub >= t)
            continue;
        samples.push_back(Sample{
            sensor_box(trace.states[static_cast<std::size_t>(t)], radius,
                       settings.sensor_relative),
            t, t_ub});
    }
    return UncertainLog(horizon, std::move(samples));
}

//---------------------------------------------------------------------------//
json vector_to_json(const Vector& v)
{
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(v[i]);
    return out;
}

Vector vector_from_json(const json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("expected an array of numbers");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        if (!j[i].is_number())
            throw std::invalid_argument("expected a number at position " + std::to_string(i));
        v[static_cast<Index>(i)] = j[i].get<double>();
    }
    return v;
}

json matrix_to_json(const Matrix& m)
{
    json out = json::array();
    for (Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Matrix matrix_from_json(const json& j, Index rows)
{
    if (!j.is_array())
        throw std::invalid_argument("expected a row-major array of rows");
    if (j.empty())
        return Matrix(rows, 0);
    if (static_cast<Index>(j.size()) != rows)
        throw std::invalid_argument("expected " + std::to_string(rows) + " rows, got "
                                    + std::to_string(j.size()));
    Index const cols = j[0].is_array() ? static_cast<Index>(j[0].size()) : -1;
    Matrix m(rows, std::max<Index>(cols, 0));
    for (Index i = 0; i < rows; ++i)
    {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw std::invalid_argument("ragged matrix row " + std::to_string(i));
        m.row(i) = vector_from_json(row).transpose();
    }
    return m;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_json_file(const json& doc, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

//---------------------------------------------------------------------------//
json log_to_json(const UncertainLog& log)
{
    json samples = json::array();
    for (const Sample& s : log.samples())
    {
        samples.push_back({{"t_lb", s.t_lb},
                           {"t_ub", s.t_ub},
                           {"center", vector_to_json(s.set.center())},
                           {"generators", matrix_to_json(s.set.generators())}});
    }
    return {{"horizon", log.horizon()}, {"dim", log.dim()}, {"samples", std::move(samples)}};
}

UncertainLog log_from_json(const json& doc)
{
    if (!doc.is_object() || !doc.contains("horizon") || !doc.contains("dim")
        || !doc.contains("samples") || !doc["samples"].is_array())
    {
        throw LogError(-1, "log document needs horizon, dim and a samples array");
    }
    int const horizon = doc["horizon"].get<int>();
    auto const dim = doc["dim"].get<Index>();
    std::vector<Sample> samples;
    const json& arr = doc["samples"];
    for (std::size_t k = 0; k < arr.size(); ++k)
    {
        auto const idx = static_cast<std::ptrdiff_t>(k);
        const json& s = arr[k];
        try
        {
            Vector center = vector_from_json(s.at("center"));
            if (center.size() != dim)
                throw std::invalid_argument("center has dimension "
                                            + std::to_string(center.size()) + ", expected "
                                            + std::to_string(dim));
            Matrix gens = matrix_from_json(s.at("generators"), dim);
            samples.push_back(Sample{Zonotope(std::move(center), std::move(gens)),
                                     s.at("t_lb").get<int>(), s.at("t_ub").get<int>()});
        }
        catch (const LogError&)
        {
            throw;
        }
        catch (const std::exception& e)
        {
            throw LogError(idx, e.what());
        }
    }
    return UncertainLog(horizon, std::move(samples));
}

void write_log(const UncertainLog& log, const std::filesystem::path& path)
{
    write_json_file(log_to_json(log), path);
}

UncertainLog read_log(const std::filesystem::path& path)
{
    json doc;
    try
    {
        doc = read_json_file(path);
    }
    catch (const std::exception& e)
    {
        throw LogError(-1, e.what());
    }
    return log_from_json(doc);
}

json trace_to_json(const GroundTruthTrace& trace)
{
    json states = json::array();
    for (const Vector& x : trace.states)
        states.push_back(vector_to_json(x));
    return {{"seed", trace.seed}, {"mode", to_string(trace.mode)}, {"states", std::move(states)}};
}

GroundTruthTrace trace_from_json(const json& doc)
{
    GroundTruthTrace trace;
    trace.seed = doc.at("seed").get<std::uint64_t>();
    trace.mode = trace_mode_from_string(doc.at("mode").get<std::string>());
    for (const json& x : doc.at("states"))
    {
        trace.states.push_back(vector_from_json(x));
        if (trace.states.back().size() != trace.states.front().size())
            throw std::invalid_argument("trace states have inconsistent dimensions");
    }
    if (trace.states.size() < 2)
        throw std::invalid_argument("trace needs at least two states");
    return trace;
}

void write_trace(const GroundTruthTrace& trace, const std::filesystem::path& path)
{
    write_json_file(trace_to_json(trace), path);
}

GroundTruthTrace read_trace(const std::filesystem::path& path)
{
    return trace_from_json(read_json_file(path));
}

}  // namespace boundmon
