#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apzeta/divisor.hpp"
#include "apzeta/moments.hpp"

namespace apzeta {

enum class OutputMode { human, json, csv };

// Everything a single invocation needs; filled by the argument parser (or
// directly by tests / bindings) and handed to run().
struct RunConfig {
    std::string command;
    int precision_bits = 128;
    int threads = 0;  // 0: hardware concurrency
    OutputMode output = OutputMode::human;
    bool no_timestamp = false;

    std::string out_path;
    std::string table_path;
    std::string plot_path;

    std::uint64_t limit = 0;  // sieve
    std::uint64_t entry_cap = DivisorTable::kDefaultEntryCap;
    double t = 0;             // zeta-eval
    double T = 0;             // mean-square / moment
    double step = 0;          // mean-square
    std::uint64_t M = 0;      // expsum / approx
    std::string alpha_expr;   // expsum / approx
    std::string algo = "direct";
    std::string a_expr;       // moment / report spacing expression
    double b = 0;
    std::optional<std::array<std::int64_t, 3>> rs_k0;  // --rs R:S:K0
    std::vector<double> t_ladder;                      // report
    std::string key_form = "refined";
    std::int64_t r = 0, s = 1;  // classify
    int k0 = 1, kmax = 10;
};

struct ReportBundle {
    std::string schema = "apzeta.report/1";
    std::string version;
    std::string timestamp;  // empty when suppressed
    std::string config_echo;
    std::vector<MomentReport> rows;  // strictly increasing T
};

// Two-column (T, ratio_full) file for external plotting; refuses an empty
// bundle and creates no file in that case.
void emit_plot_data(const ReportBundle& bundle, const std::filesystem::path& path);

std::string report_csv(const ReportBundle& bundle);
std::string report_json(const ReportBundle& bundle);

// Execute one parsed invocation. Returns the process exit status: 0 success,
// 2 usage, 3 resource cap, 1 anything else; failures emit a JSON error
// object on err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace apzeta
