#pragma once

#include <nlohmann/json.hpp>

#include "boundmon/monitor_offline.hpp"
#include "boundmon/monitor_online.hpp"

namespace boundmon
{

//! Verdict document; wall-clock timings are deliberately left out.
nlohmann::json verdict_to_json(const Verdict& verdict, const UncertainLog& log);

nlohmann::json report_to_json(const OnlineReport& report);

/*!
 * Parse and validate a report document: step 0 triggered, triggered steps
 * strictly increasing and within the horizon, and the unsafe step present
 * exactly when the outcome is unsafe (and equal to the last trigger).
 */
OnlineReport report_from_json(const nlohmann::json& doc);

Outcome outcome_from_string(const std::string& s);

}  // namespace boundmon
