#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nlgap/io.hpp"
#include "nlgap/lab/records.hpp"

namespace nlgap::lab {

bool TrialRecord::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

bool ExperimentResult::passed() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.passed(); }) &&
           std::all_of(summary_checks.begin(), summary_checks.end(), [](const auto& c) { return c.second; });
}

std::vector<std::string> ExperimentResult::failures() const {
    std::vector<std::string> out;
    for (const auto& r : records) {
        for (const auto& [name, ok] : r.checks) {
            if (!ok) out.push_back("trial " + std::to_string(r.trial) + ": " + name);
        }
    }
    for (const auto& [name, ok] : summary_checks) {
        if (!ok) out.push_back(name);
    }
    return out;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

void add_column(std::vector<std::string>& cols, const std::string& name) {
    if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
}

}  // namespace

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(double x) const {
            if (std::isnan(x)) return "nan";
            if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }
        std::string operator()(const std::string& s) const { return quote(s); }
    };
    return std::visit(Visitor{}, v);
}

std::string records_csv(const ExperimentResult& result) {
    std::vector<std::string> value_cols;
    std::vector<std::string> check_cols;
    for (const auto& r : result.records) {
        for (const auto& [k, _] : r.values) add_column(value_cols, k);
        for (const auto& [k, _] : r.checks) add_column(check_cols, k);
    }

    std::string out = "trial,seed,n,m,d";
    for (const auto& c : value_cols) out += ',' + quote(c);
    for (const auto& c : check_cols) out += "," + quote("ok_" + c);
    out += '\n';

    for (const auto& r : result.records) {
        out += std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.m) + ',' + std::to_string(r.d);
        for (const auto& c : value_cols) {
            out += ',';
            const auto it = std::find_if(r.values.begin(), r.values.end(), [&](const auto& kv) { return kv.first == c; });
            if (it != r.values.end()) out += format_value(it->second);
        }
        for (const auto& c : check_cols) {
            out += ',';
            const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const auto& kv) { return kv.first == c; });
            if (it != r.checks.end()) out += it->second ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::string summary_csv(const ExperimentResult& result) {
    std::string out = "key,value\n";
    for (const auto& [k, v] : result.summary) out += quote(k) + ',' + format_value(v) + '\n';
    for (const auto& [k, ok] : result.summary_checks) out += quote("ok_" + k) + ',' + (ok ? "1" : "0") + '\n';
    return out;
}

void emit_results(const ExperimentResult& result, const std::string& path) {
    write_text_file(path, records_csv(result));
    write_text_file(path + ".summary.csv", summary_csv(result));
}

}  // namespace nlgap::lab
