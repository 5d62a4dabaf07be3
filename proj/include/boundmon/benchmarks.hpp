#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boundmon/dynamics.hpp"
#include "boundmon/logging.hpp"
#include "boundmon/monitor_offline.hpp"

namespace boundmon
{

//! Schema violation; path names the offending field, e.g. "dynamics.radius[0][2]".
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string path, const std::string& what);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

enum class Discretization
{
    //! Matrices are already discrete-time.
    discrete,
    //! Forward Euler: I + h C, h R.
    euler,
    //! exp(h C); radius bounded by exp(h(|C| + R)) - exp(h|C|).
    exponential
};

struct ModelConfig
{
    std::string name;
    //! State names followed by augmented input names.
    std::vector<std::string> names;
    Index state_count = 0;
    Discretization discretization = Discretization::euler;
    double step_size = 1.0;
    UncertainLinearSystem system{Matrix::Identity(1, 1), Matrix::Zero(1, 1)};
    Zonotope initial;
    UnsafeSpec unsafe{{Zonotope::point(Vector::Zero(1))}};
    int horizon = 1;
    std::uint64_t seed = 0;
    TraceMode trace_mode = TraceMode::per_step;
    LogSettings logging;
    //! Named logging probabilities (e.g. sporadic, frequent).
    std::map<std::string, double> probabilities;

    Index dim() const { return system.dim(); }
};

/*!
 * Build a validated config from its JSON document.
 *
 * Constant uncertain inputs listed under "inputs" become extra state
 * dimensions with identity dynamics whose initial interval is the input's
 * range; dynamics rows are given for the physical states only and span
 * states followed by inputs.
 */
ModelConfig parse_config(const nlohmann::json& doc);
ModelConfig load_config(const std::filesystem::path& path);

//! Discretise continuous-time interval dynamics (square n x n).
UncertainLinearSystem discretize(const Matrix& center,
                                 const Matrix& radius,
                                 Discretization method,
                                 double step);

}  // namespace boundmon
