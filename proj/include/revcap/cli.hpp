#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "revcap/capacity.hpp"
#include "revcap/verify.hpp"

// Command-line surface: point evaluations, capacity optimization, figure
// sweeps as CSV/JSON, theta scans and the verification suites. Exit codes:
// 0 success, 1 computation or suite failure, 2 usage error.

namespace revcap::cli {

struct ThresholdJob {
    Measure measure = Measure::ci;
    double eta_from = 0.0;
    double eta_to = 1.0;
    int steps = 25;
};

struct CommandRequest {
    std::string subcommand;  // info | capacity | curve | noise-threshold | scan-theta | verify
    ChannelSpec channel;
    std::vector<Measure> measures{Measure::ci, Measure::rci};
    std::vector<Method> methods{Method::generic, Method::closed_form};
    InputParams input;                  // info
    double eta_from = 0.0;              // curve
    double eta_to = 1.0;
    int steps = 100;
    std::vector<ThresholdJob> threshold_jobs;
    std::vector<double> p_values;       // scan-theta
    int grid_n = 256;
    bool print_extrema = false;
    double tol = 1e-9;
    std::string out_path;               // empty: write to the output stream
    std::string format;                 // text/csv or json, per subcommand default
    int jobs = 1;
    std::vector<std::string> suites;    // verify
    std::uint64_t seed = 20250811;
    double tolerance_scale = 1.0;
    std::string errata_out;
};

// Exact sweep parameters behind the named figure presets:
//   fig4 -> damping capacity curve over eta in [0, 1];
//   fig6 -> thermal-noise thresholds, ci over [0.5, 1] and rci over [0, 1];
//   fig7 -> theta scan at (eta 0.62, alpha 0.5), ci, p in {0.25, 0.5};
//   fig8 -> theta scan at (eta 0.75, alpha 0.4), rci, p in {0.25, 0.5}.
CommandRequest figure_presets(const std::string& id);

// Executes a fully validated request.
int run_request(const CommandRequest& request, std::ostream& out, std::ostream& err);

// Parses and runs; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Minimal CSV reader for the tool's own output (no quoting in this dialect).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Fixed 12-significant-digit rendering used for all numeric output.
std::string format_value(double v);

}  // namespace revcap::cli
