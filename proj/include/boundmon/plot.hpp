#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundmon/monitor_offline.hpp"
#include "boundmon/monitor_online.hpp"

namespace boundmon
{

//! One CSV row: bounds of one dimension of one set over [t_lo, t_hi].
struct PlotRow
{
    //! reach, sample, trigger or unsafe
    std::string kind;
    int t_lo = 0;
    int t_hi = 0;
    int dim = 0;
    double lb = 0.0;
    double ub = 0.0;

    friend bool operator==(const PlotRow&, const PlotRow&) = default;
};

class CsvError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::vector<PlotRow> offline_plot_rows(const UncertainLinearSystem& sys,
                                       const UncertainLog& log,
                                       const UnsafeSpec& unsafe,
                                       const Verdict& verdict,
                                       const ReachOptions& reach = {});

//! Requires a report produced with OnlineOptions::record.
std::vector<PlotRow> online_plot_rows(const OnlineReport& report, const UnsafeSpec& unsafe);

std::string format_csv(const std::vector<PlotRow>& rows);
std::vector<PlotRow> parse_csv(const std::string& text);
void write_csv(const std::vector<PlotRow>& rows, const std::filesystem::path& path);
std::vector<PlotRow> read_csv(const std::filesystem::path& path);

/*!
 * SVG of one dimension over time: reach rows as translucent bands, samples and
 * triggers as filled rectangles, finite unsafe faces as dashed lines.
 * Throws CsvError when no row carries the requested dimension.
 */
std::string render_svg(const std::vector<PlotRow>& rows, int dim);

}  // namespace boundmon
