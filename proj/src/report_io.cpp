#include "boundmon/report_io.hpp"

#include <stdexcept>

namespace boundmon
{

using nlohmann::json;

Outcome outcome_from_string(const std::string& s)
{
    if (s == "safe")
        return Outcome::safe;
    if (s == "unsafe")
        return Outcome::unsafe;
    throw std::invalid_argument("unknown outcome '" + s + "'");
}

json verdict_to_json(const Verdict& verdict, const UncertainLog& log)
{
    json witness = nullptr;
    if (verdict.witness)
    {
        const OfflineWitness& w = *verdict.witness;
        bool const is_sample = w.kind == OfflineWitness::Kind::sample;
        witness = {{"kind", is_sample ? "sample" : "refinement"},
                   {"pair_index", w.pair_index},
                   {"sample_index", is_sample ? w.pair_index : w.pair_index + 1},
                   {"t_k", w.t_k},
                   {"t_next", w.t_next},
                   {"step", w.step},
                   {"region_index", w.region_index},
                   {"psi",
                    {{"lower", vector_to_json(w.psi.lower())},
                     {"upper", vector_to_json(w.psi.upper())}}}};
    }
    const OfflineStats& s = verdict.stats;
    return {{"outcome", to_string(verdict.outcome)},
            {"witness", std::move(witness)},
            {"stats",
             {{"reach_steps", s.reach_steps()},
              {"propagation_steps", s.propagation_steps},
              {"refinement_reach_steps", s.refinement_reach_steps},
              {"refinements", s.refinements},
              {"intersection_checks", s.intersection_checks},
              {"timestamp_pairs", s.timestamp_pairs},
              {"pairs_evaluated", s.pairs_evaluated}}},
            {"unbounded_bound", verdict.unbounded_bound},
            {"log", {{"samples", log.size()}, {"horizon", log.horizon()}}}};
}

json report_to_json(const OnlineReport& report)
{
    return {{"outcome", to_string(report.outcome)},
            {"unsafe_step", report.unsafe_step ? json(*report.unsafe_step) : json(nullptr)},
            {"triggered_steps", report.triggered_steps},
            {"stats",
             {{"reach_steps", report.reach_steps},
              {"triggers", report.triggered_steps.size()},
              {"horizon", report.horizon}}}};
}

OnlineReport report_from_json(const json& doc)
{
    OnlineReport r;
    r.outcome = outcome_from_string(doc.at("outcome").get<std::string>());
    if (!doc.at("unsafe_step").is_null())
        r.unsafe_step = doc["unsafe_step"].get<int>();
    r.triggered_steps = doc.at("triggered_steps").get<std::vector<int>>();
    const json& stats = doc.at("stats");
    r.reach_steps = stats.at("reach_steps").get<std::uint64_t>();
    r.horizon = stats.at("horizon").get<int>();

    if (r.triggered_steps.empty() || r.triggered_steps.front() != 0)
        throw std::invalid_argument("report: step 0 must be the first triggered step");
    for (std::size_t i = 1; i < r.triggered_steps.size(); ++i)
    {
        if (r.triggered_steps[i] <= r.triggered_steps[i - 1])
            throw std::invalid_argument("report: triggered steps must be strictly increasing");
    }
    if (r.triggered_steps.back() > r.horizon)
        throw std::invalid_argument("report: triggered step beyond the horizon");
    if (stats.at("triggers").get<std::size_t>() != r.triggered_steps.size())
        throw std::invalid_argument("report: trigger count disagrees with triggered steps");
    if ((r.outcome == Outcome::unsafe) != r.unsafe_step.has_value())
        throw std::invalid_argument("report: unsafe step must be present iff outcome is unsafe");
    if (r.unsafe_step && *r.unsafe_step != r.triggered_steps.back())
        throw std::invalid_argument("report: unsafe step must be the last triggered step");
    return r;
}

}  // namespace boundmon
