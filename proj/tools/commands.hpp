#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace boundmon::cli
{

//! Exit statuses shared by all subcommands.
enum Exit : int
{
    exit_safe = 0,
    exit_unsafe = 1,
    exit_error = 2
};

/*!
 * Run one invocation; args excludes the program name. Results and
 * diagnostics go to out and err; timings go to err only.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boundmon::cli
