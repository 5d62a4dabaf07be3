#include "boundmon/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace boundmon
{
namespace
{
void push_box(std::vector<PlotRow>& rows, const char* kind, int t_lo, int t_hi, const Box& box)
{
    for (Index i = 0; i < box.dim(); ++i)
        rows.push_back({kind, t_lo, t_hi, static_cast<int>(i), box.lower()[i], box.upper()[i]});
}

//! Unsafe regions with faces at the unbounded magnitude written as +/-inf.
void push_unsafe(std::vector<PlotRow>& rows, const UnsafeSpec& unsafe, int horizon)
{
    double const bound = unsafe.unbounded_bound();
    for (const Zonotope& region : unsafe.regions())
    {
        Box const hull = interval_hull(region);
        for (Index i = 0; i < hull.dim(); ++i)
        {
            double lb = hull.lower()[i];
            double ub = hull.upper()[i];
            if (lb <= -bound)
                lb = -std::numeric_limits<double>::infinity();
            if (ub >= bound)
                ub = std::numeric_limits<double>::infinity();
            if (std::isinf(lb) && std::isinf(ub))
                continue;
            rows.push_back({"unsafe", 0, horizon, static_cast<int>(i), lb, ub});
        }
    }
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}
}  // namespace

std::vector<PlotRow> offline_plot_rows(const UncertainLinearSystem& sys,
                                       const UncertainLog& log,
                                       const UnsafeSpec& unsafe,
                                       const Verdict& verdict,
                                       const ReachOptions& reach)
{
    std::vector<PlotRow> rows;
    for (const TubeRecord& rec : offline_tubes(sys, log, verdict, reach))
        push_box(rows, "reach", rec.step, rec.step, rec.hull);
    std::size_t const last = verdict.witness ? verdict.witness->pair_index : log.size() - 1;
    for (std::size_t k = 0; k <= last; ++k)
        push_box(rows, "sample", log[k].t_lb, log[k].t_ub, interval_hull(log[k].set));
    push_unsafe(rows, unsafe, log.horizon());
    return rows;
}

std::vector<PlotRow> online_plot_rows(const OnlineReport& report, const UnsafeSpec& unsafe)
{
    std::vector<PlotRow> rows;
    for (const OnlineStepRecord& rec : report.records)
    {
        push_box(rows, "reach", rec.step, rec.step, rec.hull);
        if (rec.sample)
            push_box(rows, "trigger", rec.step, rec.step, *rec.sample);
    }
    push_unsafe(rows, unsafe, report.horizon);
    return rows;
}

//---------------------------------------------------------------------------//
std::string format_csv(const std::vector<PlotRow>& rows)
{
    std::string out = "kind,t_lo,t_hi,dim,lb,ub\n";
    for (const PlotRow& r : rows)
    {
        out += r.kind + ',' + std::to_string(r.t_lo) + ',' + std::to_string(r.t_hi) + ','
               + std::to_string(r.dim) + ',' + num(r.lb) + ',' + num(r.ub) + '\n';
    }
    return out;
}

std::vector<PlotRow> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "kind,t_lo,t_hi,dim,lb,ub")
        throw CsvError("line 1: expected header kind,t_lo,t_hi,dim,lb,ub");

    std::vector<PlotRow> rows;
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        auto fail = [&](const std::string& why) {
            return CsvError("line " + std::to_string(line_no) + ": " + why);
        };
        if (fields.size() != 6)
            throw fail("expected 6 fields");
        PlotRow r;
        r.kind = fields[0];
        if (r.kind != "reach" && r.kind != "sample" && r.kind != "trigger" && r.kind != "unsafe")
            throw fail("unknown row kind '" + r.kind + "'");
        try
        {
            auto whole = [](const std::string& f) {
                std::size_t used = 0;
                int const v = std::stoi(f, &used);
                if (used != f.size())
                    throw std::invalid_argument(f);
                return v;
            };
            r.t_lo = whole(fields[1]);
            r.t_hi = whole(fields[2]);
            r.dim = whole(fields[3]);
        }
        catch (const std::exception&)
        {
            throw fail("malformed integer field");
        }
        for (int f = 4; f < 6; ++f)
        {
            char* end = nullptr;
            double const v = std::strtod(fields[static_cast<std::size_t>(f)].c_str(), &end);
            if (fields[static_cast<std::size_t>(f)].empty() || *end != '\0' || std::isnan(v))
                throw fail("malformed bound");
            (f == 4 ? r.lb : r.ub) = v;
        }
        if (r.t_hi < r.t_lo || r.dim < 0 || r.lb > r.ub)
            throw fail("inconsistent row");
        rows.push_back(r);
    }
    return rows;
}

void write_csv(const std::vector<PlotRow>& rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << format_csv(rows);
}

std::vector<PlotRow> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CsvError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

//---------------------------------------------------------------------------//
std::string render_svg(const std::vector<PlotRow>& rows, int dim)
{
    constexpr double width = 900.0;
    constexpr double height = 420.0;
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 20.0;
    constexpr double bottom = 45.0;

    bool found = false;
    int t_max = 1;
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -y_lo;
    auto widen = [&](double v) {
        if (std::isfinite(v))
        {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    };
    for (const PlotRow& r : rows)
    {
        if (r.dim != dim)
            continue;
        found = true;
        t_max = std::max(t_max, r.t_hi + 1);
        widen(r.lb);
        widen(r.ub);
    }
    if (!found)
        throw CsvError("no rows for dimension " + std::to_string(dim));
    if (!std::isfinite(y_lo))
    {
        y_lo = -1.0;
        y_hi = 1.0;
    }
    double const pad = std::max(1e-9, 0.05 * (y_hi - y_lo));
    y_lo -= pad;
    y_hi += pad;
    if (y_hi - y_lo < 1e-12)
        y_hi = y_lo + 1.0;

    auto x_of = [&](double t) { return left + (width - left - right) * t / t_max; };
    auto y_of = [&](double v) {
        double const c = std::clamp(v, y_lo, y_hi);
        return top + (height - top - bottom) * (y_hi - c) / (y_hi - y_lo);
    };
    auto rect = [&](std::string& out, double t0, double t1, double lb, double ub,
                    const char* style) {
        double const y0 = y_of(ub);
        double const y1 = y_of(lb);
        out += "<rect x=\"" + fixed(x_of(t0)) + "\" y=\"" + fixed(y0) + "\" width=\""
               + fixed(std::max(0.5, x_of(t1) - x_of(t0))) + "\" height=\""
               + fixed(std::max(0.5, y1 - y0)) + "\" " + style + "/>\n";
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\""
           + fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width) + "\" height=\"" + fixed(height)
           + "\" fill=\"white\"/>\n";

    // Axes with five ticks each.
    double const x0 = left, x1 = width - right, y0 = top, y1 = height - bottom;
    svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y1) + "\" x2=\"" + fixed(x1)
           + "\" y2=\"" + fixed(y1) + "\"/>\n";
    svg += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y0) + "\" x2=\"" + fixed(x0)
           + "\" y2=\"" + fixed(y1) + "\"/>\n";
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i)
    {
        double const t = t_max * i / 4.0;
        double const v = y_lo + (y_hi - y_lo) * i / 4.0;
        svg += "<text x=\"" + fixed(x_of(t)) + "\" y=\"" + fixed(y1 + 16)
               + "\" text-anchor=\"middle\">" + fixed(t) + "</text>\n";
        svg += "<text x=\"" + fixed(x0 - 6) + "\" y=\"" + fixed(y_of(v) + 4)
               + "\" text-anchor=\"end\">" + fixed(v) + "</text>\n";
    }
    svg += "<text x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed(height - 8)
           + "\" text-anchor=\"middle\">time step</text>\n";
    svg += "<text x=\"14\" y=\"" + fixed((y0 + y1) / 2) + "\" transform=\"rotate(-90 14 "
           + fixed((y0 + y1) / 2) + ")\" text-anchor=\"middle\">x[" + std::to_string(dim)
           + "]</text>\n</g>\n";

    svg += "<g id=\"reach\">\n";
    for (const PlotRow& r : rows)
        if (r.dim == dim && r.kind == "reach")
            rect(svg, r.t_lo, r.t_hi + 1, r.lb, r.ub,
                 "fill=\"#3b6fd8\" fill-opacity=\"0.35\" stroke=\"none\"");
    svg += "</g>\n<g id=\"samples\">\n";
    for (const PlotRow& r : rows)
        if (r.dim == dim && (r.kind == "sample" || r.kind == "trigger"))
            rect(svg, r.t_lo, r.t_hi + 1, r.lb, r.ub, "fill=\"black\" stroke=\"none\"");
    svg += "</g>\n<g id=\"unsafe\" stroke=\"#d62728\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6 4\">\n";
    std::vector<double> faces;
    for (const PlotRow& r : rows)
    {
        if (r.dim != dim || r.kind != "unsafe")
            continue;
        for (double v : {r.lb, r.ub})
            if (std::isfinite(v) && std::find(faces.begin(), faces.end(), v) == faces.end())
                faces.push_back(v);
    }
    for (double v : faces)
        svg += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y_of(v)) + "\" x2=\"" + fixed(x1)
               + "\" y2=\"" + fixed(y_of(v)) + "\"/>\n";
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace boundmon
