#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nlgap::lab {

/// One CSV cell. monostate renders as an empty cell (undefined quantity).
using Value = std::variant<std::monostate, std::int64_t, double, std::string>;

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d = 0;
    std::vector<std::pair<std::string, Value>> values;
    std::vector<std::pair<std::string, bool>> checks;

    void set(std::string key, Value v) { values.emplace_back(std::move(key), std::move(v)); }
    void check(std::string key, bool ok) { checks.emplace_back(std::move(key), ok); }
    bool passed() const;
};

struct ExperimentResult {
    std::string name;
    std::vector<TrialRecord> records;
    std::vector<std::pair<std::string, Value>> summary;
    std::vector<std::pair<std::string, bool>> summary_checks;

    bool passed() const;
    /// Names of failed checks, "trial <i>: <check>" for per-trial ones.
    std::vector<std::string> failures() const;
};

/// Doubles use 17 significant digits; NaN and infinities print as nan/inf/-inf.
std::string format_value(const Value& v);

/// Header row then one row per record. Columns: trial, seed, n, m, d, every
/// value key and every check key (prefixed "ok_") in first-seen order.
std::string records_csv(const ExperimentResult& result);

/// "key,value" rows for the summary values followed by the summary checks.
std::string summary_csv(const ExperimentResult& result);

/// Writes `path` (records) and `path` with ".summary.csv" appended; throws IoError.
void emit_results(const ExperimentResult& result, const std::string& path);

}  // namespace nlgap::lab
