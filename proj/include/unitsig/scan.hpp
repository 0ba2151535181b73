#pragma once

#include <map>
#include <string>
#include <vector>

#include "unitsig/form_class.hpp"
#include "unitsig/unit_type.hpp"

namespace unitsig {

// One row per squarefree d; the CSV column order is exactly the field order
// here.
struct ScanRow {
    long long d = 0, D = 0;
    mpz_class eps_x, eps_y;
    int unit_norm = 0;
    mpz_class m;  // 0 when the unit has norm -1
    CaseLabel case_label = CaseLabel::c;
    bool is_square_mod4 = false, is_sum_two_squares = false;
    int rho = 0, rho_plus = 0, rho_inf = 0, four_rank_plus = 0;
    bool splits = false, omega_exists = false;
};

ScanRow scan_row(long long d);

// Rows for every squarefree d in [lo, hi], ascending regardless of the
// worker count.
std::vector<ScanRow> scan_range(long long lo, long long hi, int jobs);

extern const char* const kScanCsvHeader;

std::string to_csv(const ScanRow& row);
std::string to_json_line(const ScanRow& row);

std::map<std::string, long long> case_counts(const std::vector<ScanRow>& rows);
std::string csv_footer(const std::vector<ScanRow>& rows);
std::string json_footer(const std::vector<ScanRow>& rows);

} // namespace unitsig
