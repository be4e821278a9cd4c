#ifndef ZPT_CLI_HPP
#define ZPT_CLI_HPP

// Command implementations behind the zptower executable. Each command
// returns the files it would write plus a human-readable summary, so the
// same code path can be driven from tests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "zpt/ff.hpp"
#include "zpt/lfun.hpp"
#include "zpt/slopes.hpp"
#include "zpt/tower.hpp"

namespace zpt::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kOk = 0, kUsage = 1, kPartial = 2 };

struct RunConfig {
    std::string spec_path;  // tower spec, or family spec for sweep
    std::string spec_text;  // used instead of spec_path when nonempty
    int n_max = 2;
    std::uint64_t budget = ff::kDefaultBudget;
    unsigned jobs = 1;
    std::string out_dir;  // empty: do not write files
    std::string format = "json";  // json | csv | both
    std::uint64_t seed = 0;
    int K = 6, M = 9, N = 4;
};

struct CommandResult {
    int exit_code = kOk;
    std::string summary;                         // printed to stdout
    std::map<std::string, std::string> files;  // file name -> contents
};

CommandResult cmd_info(const RunConfig& cfg);
CommandResult cmd_slopes(const RunConfig& cfg);
CommandResult cmd_classnumbers(const RunConfig& cfg);
CommandResult cmd_tadic(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);

// Runs a command by name, turning schema and usage errors into exit code 1.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

// Writes result.files under dir (created if missing).
void write_files(const CommandResult& result, const std::string& dir);

// Rendering helpers shared by the commands.
std::string rational_json(const mpq_class& x);
std::string dump(const nlohmann::json& j);
nlohmann::json slope_seq_json(const SlopeSeq& s);
std::string slopes_csv_header();
std::string slopes_csv_rows(const SlopeSeq& s);
nlohmann::json stability_json(const slopes::StabilityReport& r);
std::string info_table(const tower::TowerSpec& t, int n_max);

// Slope analysis of one tower, shared by slopes and sweep.
struct SlopeAnalysis {
    nlohmann::json json;
    std::string csv;
    bool truncated = false;
    std::optional<int> n0;
    bool mismatch = false;
};
SlopeAnalysis analyze_slopes(lfun::Engine& engine, int n_max);

}  // namespace zpt::cli

#endif  // ZPT_CLI_HPP
