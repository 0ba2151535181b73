#include "unitsig/scan.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace unitsig {

ScanRow scan_row(long long d) {
    QuadraticField K = make_field(d);
    UnitRecord unit = fundamental_unit(K);
    ClassificationReport cls = classify_with_unit(K, unit, 0);
    RankReport rk = rank_report(K, unit);

    ScanRow r;
    r.d = d;
    r.D = K.D;
    r.eps_x = unit.epsilon.x();
    r.eps_y = unit.epsilon.y();
    r.unit_norm = unit.norm;
    r.m = cls.m.value_or(0);
    r.case_label = cls.case_label;
    r.is_square_mod4 = cls.is_square_mod4;
    r.is_sum_two_squares = cls.is_sum_two_squares;
    r.rho = rk.rho;
    r.rho_plus = rk.rho_plus;
    r.rho_inf = rk.rho_inf;
    r.four_rank_plus = rk.four_rank_plus;
    r.splits = rk.splits;
    r.omega_exists = rk.omega_exists;
    return r;
}

std::vector<ScanRow> scan_range(long long lo, long long hi, int jobs) {
    std::vector<long long> ds = squarefree_range(std::max(lo, 2LL), hi);
    std::vector<ScanRow> rows(ds.size());
    if (jobs < 1) jobs = 1;
    jobs = std::min<long long>(jobs, std::max<size_t>(ds.size(), 1));

    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::string first_error;
    auto work = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ds.size()) return;
            try {
                rows[i] = scan_row(ds[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error.empty())
                    first_error = "d=" + std::to_string(ds[i]) + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw InternalInconsistency(first_error);
    return rows;
}

const char* const kScanCsvHeader =
    "d,D,eps_x,eps_y,unit_norm,m,case,is_square_mod4,is_sum_two_squares,rho,rho_plus,rho_inf,"
    "four_rank_plus,splits,omega_exists";

std::string to_csv(const ScanRow& r) {
    std::ostringstream os;
    os << r.d << ',' << r.D << ',' << r.eps_x.get_str() << ',' << r.eps_y.get_str() << ','
       << r.unit_norm << ',' << r.m.get_str() << ',' << to_string(r.case_label) << ','
       << (r.is_square_mod4 ? 1 : 0) << ',' << (r.is_sum_two_squares ? 1 : 0) << ',' << r.rho
       << ',' << r.rho_plus << ',' << r.rho_inf << ',' << r.four_rank_plus << ','
       << (r.splits ? 1 : 0) << ',' << (r.omega_exists ? 1 : 0);
    return os.str();
}

std::string to_json_line(const ScanRow& r) {
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["D"] = r.D;
    j["eps_x"] = r.eps_x.get_str();
    j["eps_y"] = r.eps_y.get_str();
    j["unit_norm"] = r.unit_norm;
    j["m"] = r.m.get_si();
    j["case"] = to_string(r.case_label);
    j["is_square_mod4"] = r.is_square_mod4;
    j["is_sum_two_squares"] = r.is_sum_two_squares;
    j["rho"] = r.rho;
    j["rho_plus"] = r.rho_plus;
    j["rho_inf"] = r.rho_inf;
    j["four_rank_plus"] = r.four_rank_plus;
    j["splits"] = r.splits;
    j["omega_exists"] = r.omega_exists;
    return j.dump();
}

std::map<std::string, long long> case_counts(const std::vector<ScanRow>& rows) {
    std::map<std::string, long long> counts;
    for (CaseLabel c : {CaseLabel::norm_minus_one, CaseLabel::a_i, CaseLabel::a_ii,
                        CaseLabel::a_iii, CaseLabel::a_iv, CaseLabel::a_v, CaseLabel::b,
                        CaseLabel::c})
        counts[to_string(c)] = 0;
    for (const auto& r : rows) counts[to_string(r.case_label)]++;
    return counts;
}

std::string csv_footer(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "# case_counts";
    for (const auto& [label, n] : case_counts(rows)) os << ' ' << label << '=' << n;
    return os.str();
}

std::string json_footer(const std::vector<ScanRow>& rows) {
    nlohmann::ordered_json j;
    for (const auto& [label, n] : case_counts(rows)) j["summary"]["case_counts"][label] = n;
    return j.dump();
}

} // namespace unitsig
