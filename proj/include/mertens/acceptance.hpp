// acceptance.hpp
//
// The end-to-end verification suite: every headline reproduction target is
// pinned here with its tolerance and runs as one pass/fail line. Used by
// the acceptance test binary and by the `check` CLI subcommand.

#pragma once

#include <string>
#include <vector>

namespace mertens::acceptance {

struct Options {
    std::string data_dir;        // directory holding zeros/ and golden/
    std::uint64_t sweep_max = 100'000'000;   // criterion-1 sweep end
    int workers = 0;
    std::string report_path;     // calibration report destination ("" = stdout only)
};

struct CriterionResult {
    int id;
    bool passed;
    std::string name;
    std::string detail;
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    bool all_passed() const {
        for (auto& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

SuiteResult run(const Options& opt);

// one line per criterion, "PASS"/"FAIL" prefixed
void print(const SuiteResult& r);

} // namespace mertens::acceptance
