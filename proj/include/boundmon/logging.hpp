#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boundmon/dynamics.hpp"
#include "boundmon/geometry.hpp"

namespace boundmon
{

//! State estimate observed at some unknown step in [t_lb, t_ub].
struct Sample
{
    Zonotope set;
    int t_lb = 0;
    int t_ub = 0;

    bool fixed_timestamp() const { return t_lb == t_ub; }
    int width() const { return t_ub - t_lb; }
};

//! Malformed or invariant-violating log; index is the offending sample.
class LogError : public std::runtime_error
{
  public:
    LogError(std::ptrdiff_t index, const std::string& what);
    std::ptrdiff_t index() const { return index_; }

  private:
    std::ptrdiff_t index_;
};

/*!
 * Ordered samples with pairwise disjoint timestamp intervals.
 *
 * Construction validates: non-empty, 0 <= t_lb <= t_ub <= horizon, shared
 * dimension, and t_ub of each sample strictly below t_lb of the next.
 */
class UncertainLog
{
  public:
    UncertainLog(int horizon, std::vector<Sample> samples);

    int horizon() const { return horizon_; }
    Index dim() const { return samples_.front().set.dim(); }
    std::size_t size() const { return samples_.size(); }
    const Sample& operator[](std::size_t k) const { return samples_[k]; }
    const std::vector<Sample>& samples() const { return samples_; }
    bool fixed_timestamps() const;
    //! Sum of the timestamp interval widths.
    long total_width() const;

  private:
    int horizon_;
    std::vector<Sample> samples_;
};

enum class TraceMode
{
    fixed_matrix,
    per_step
};

std::string to_string(TraceMode mode);
TraceMode trace_mode_from_string(const std::string& s);

//! Concrete trajectory x_0 ... x_H of the bounding model.
struct GroundTruthTrace
{
    std::vector<Vector> states;
    TraceMode mode = TraceMode::per_step;
    std::uint64_t seed = 0;

    int horizon() const { return static_cast<int>(states.size()) - 1; }
    Index dim() const { return states.front().size(); }
};

GroundTruthTrace simulate_trace(const UncertainLinearSystem& sys,
                                const Zonotope& init,
                                int horizon,
                                std::uint64_t seed,
                                TraceMode mode);

struct LogSettings
{
    double p_log = 1.0;
    int t_delta = 0;
    //! Absolute half-width per dimension of the sensor box.
    Vector sensor_radius;
    //! Additional half-width as a fraction of |x_t|, converted per sample.
    double sensor_relative = 0.0;
};

//! Box of half-widths sensor_radius + relative * |x| centred on x.
Zonotope sensor_box(const Vector& x, const Vector& radius, double relative = 0.0);

/*!
 * Probabilistic log of a trace.
 *
 * Step 0 is always logged and every later step independently with
 * probability p_log. A logged step t gets the interval [t, min(H, t + w)]
 * with w uniform in {0, ..., t_delta}. Candidates whose interval would
 * overlap the previous sample are dropped. Per-step draws come from two
 * independent streams, so for a fixed seed the logged steps are nested in
 * p_log and the delays are monotone in t_delta.
 */
UncertainLog generate_log(const UncertainLinearSystem& sys,
                          const GroundTruthTrace& trace,
                          const LogSettings& settings,
                          std::uint64_t seed);

nlohmann::json log_to_json(const UncertainLog& log);
UncertainLog log_from_json(const nlohmann::json& doc);
void write_log(const UncertainLog& log, const std::filesystem::path& path);
UncertainLog read_log(const std::filesystem::path& path);

nlohmann::json trace_to_json(const GroundTruthTrace& trace);
GroundTruthTrace trace_from_json(const nlohmann::json& doc);
void write_trace(const GroundTruthTrace& trace, const std::filesystem::path& path);
GroundTruthTrace read_trace(const std::filesystem::path& path);

//! Shared helpers for the JSON formats.
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, Index rows);
nlohmann::json read_json_file(const std::filesystem::path& path);
//! Writes dump(2) plus a trailing newline.
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace boundmon
