#pragma once

#include <string>
#include <vector>

namespace unitsig {

struct SuiteResult {
    std::string name;
    long long checks = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

SuiteResult suite_core_arith();
SuiteResult suite_quadfield(long long max_d);
SuiteResult suite_unit_type(long long max_d);
SuiteResult suite_form_class(long long max_D);
SuiteResult suite_abelian2(int instances);

// Runs every suite with ceilings derived from max_d; prints one line per
// suite to stdout.  Returns true when everything passed.
bool run_selftest(long long max_d, std::string* out = nullptr);

} // namespace unitsig
