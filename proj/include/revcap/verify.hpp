#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Verification suites shared by the command-line tool and the test binaries:
// closed-form/generic equivalence, derivative finite-difference checks,
// additivity sampling, degradability and antidegradability identities, phase
// invariance, theta-optimality scans, purification identities, the mixture
// decomposition, and the data-processing probe. Suites also emit the
// formula-errata entries documenting every reconciliation applied to the
// transcribed closed-form expressions.

namespace revcap::verify {

struct ErrataEntry {
    std::string id;
    std::string location;
    std::string baseline;    // the expression as transcribed
    std::string reconciled;  // what the artifact evaluates instead
    std::string status;      // corrected | verified | deviation_reported
    double max_abs_deviation_baseline = 0.0;
    double max_abs_deviation_reconciled = 0.0;
    long points = 0;
};

struct SuiteReport {
    std::string name;
    long cases = 0;
    long failures = 0;
    std::vector<ErrataEntry> errata;
    std::vector<std::string> details;  // failure descriptions and probe discoveries, capped
    double wall_seconds = 0.0;         // excluded from canonical serializations
};

struct VerifyOptions {
    int jobs = 1;
    std::uint64_t seed = 20250811;
    double tolerance_scale = 1.0;  // scales every pass tolerance; test hook
};

// Suite names in canonical run order.
const std::vector<std::string>& suite_names();

SuiteReport run_suite(const std::string& name, const VerifyOptions& opts);

std::vector<SuiteReport> run_suites(const std::vector<std::string>& names,
                                    const VerifyOptions& opts);

}  // namespace revcap::verify
