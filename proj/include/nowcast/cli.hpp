#pragma once

#include "nowcast/evaluation.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nowcast::cli {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// A backtest configuration file with every path resolved.
struct BacktestJob {
    BacktestConfig config;
    std::vector<std::string> data;
    /// Empty for the built-in calendar / schema.
    std::string calendar;
    std::string schema;
    std::string output_dir;
};

/**
 * JSON configuration (comments allowed). Keys: data (path or list), calendar,
 * schema, output_dir, eval_start, eval_end, sample_start, subsample_end,
 * days, window_quarters, hp_lambda, theta {input, error_correction}, audit,
 * parallel. Relative paths resolve against `base_dir`. Unknown keys and
 * inconsistent values are InputErrors.
 */
BacktestJob parse_backtest_config(std::string_view text, const std::string& base_dir);
BacktestJob load_backtest_config(const std::string& path);

/// Runs the tool with args (args[0] is the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nowcast::cli
