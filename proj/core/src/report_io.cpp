#include "knstat/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace knstat {

namespace {

std::string symbol(KodairaType k, const RenderOptions& opts) {
    return opts.unicode ? k.to_unicode() : k.to_string();
}

// Display width counting UTF-8 code points.
std::size_t width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& cells) {
    std::vector<std::size_t> widths;
    for (const auto& row : cells) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], width(row[i]));
        }
    }
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                line += "  ";
            }
            const std::string pad(widths[i] - width(row[i]), ' ');
            // first two columns left-aligned, numbers right-aligned
            line += i < 2 ? row[i] + pad : pad + row[i];
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out << line << '\n';
    }
}

nlohmann::json request_json(const CensusRequest& req) {
    nlohmann::json j;
    j["family"] = to_string(req.family);
    j["height_bound"] = to_string(req.height_bound);
    j["grouping"] = to_string(req.grouping);
    j["signs"] = to_string(req.signs);
    j["include_exceptional"] = req.include_exceptional;
    if (req.range) {
        j["coefficient_range"] = {req.range->lo, req.range->hi};
    }
    return j;
}

} // namespace

OutputFormat parse_output_format(std::string_view text) {
    if (text == "table") {
        return OutputFormat::Table;
    }
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

void write_census(std::ostream& out, const CensusReport& report, const RenderOptions& opts) {
    const std::string family = to_string(report.request.family);
    switch (opts.format) {
    case OutputFormat::Csv:
        out << "family,group,kodaira,count\n";
        for (const auto& row : report.rows) {
            out << family << ',' << row.group << ',' << symbol(row.kodaira, opts) << ','
                << row.count << '\n';
        }
        return;
    case OutputFormat::Json: {
        nlohmann::json j;
        j["request"] = request_json(report.request);
        j["rows"] = nlohmann::json::array();
        for (const auto& row : report.rows) {
            j["rows"].push_back({{"family", family},
                                 {"group", row.group},
                                 {"kodaira", symbol(row.kodaira, opts)},
                                 {"count", row.count}});
        }
        j["total"] = report.total;
        out << j.dump(2) << '\n';
        return;
    }
    case OutputFormat::Table: {
        const auto& req = report.request;
        out << "family " << family << ", height <= " << to_string(req.height_bound) << ", "
            << to_string(req.grouping) << ", signs " << to_string(req.signs)
            << (req.include_exceptional ? "" : ", exceptional curves excluded") << '\n';
        std::vector<std::vector<std::string>> cells = {{"group", "kodaira", "count"}};
        for (const auto& row : report.rows) {
            cells.push_back({row.group, symbol(row.kodaira, opts), std::to_string(row.count)});
        }
        cells.push_back({"total", "", std::to_string(report.total)});
        print_table(out, cells);
        return;
    }
    }
}

void write_comparison(std::ostream& out, const CensusReport& report,
                      const std::vector<ComparisonRow>& rows, const RenderOptions& opts) {
    const std::string family = to_string(report.request.family);
    auto predicted_text = [](const ComparisonRow& r) {
        return r.predicted ? format_fixed(*r.predicted, 1) : std::string("unpredicted");
    };
    auto rel_text = [](const ComparisonRow& r) {
        return r.relative_error ? format_fixed(*r.relative_error, 6) : std::string();
    };
    switch (opts.format) {
    case OutputFormat::Csv:
        out << "family,group,kodaira,observed,predicted,rel_error\n";
        for (const auto& r : rows) {
            out << family << ',' << r.group << ',' << symbol(r.kodaira, opts) << ',' << r.observed
                << ',' << predicted_text(r) << ',' << rel_text(r) << '\n';
        }
        return;
    case OutputFormat::Json: {
        nlohmann::json j;
        j["request"] = request_json(report.request);
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json row = {{"family", family},
                                  {"group", r.group},
                                  {"kodaira", symbol(r.kodaira, opts)},
                                  {"observed", r.observed}};
            // fixed-decimal strings keep the output byte-stable
            row["predicted"] = r.predicted ? nlohmann::json(predicted_text(r)) : nlohmann::json();
            row["rel_error"] = r.relative_error ? nlohmann::json(rel_text(r)) : nlohmann::json();
            row["allowed"] = r.allowed ? nlohmann::json(format_fixed(*r.allowed, 1)) : nlohmann::json();
            row["within_tolerance"] = r.within_tolerance;
            j["rows"].push_back(row);
        }
        out << j.dump(2) << '\n';
        return;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> cells = {
            {"group", "kodaira", "observed", "predicted", "rel_error", "allowed", "ok"}};
        for (const auto& r : rows) {
            cells.push_back({r.group, symbol(r.kodaira, opts), std::to_string(r.observed),
                             predicted_text(r), rel_text(r),
                             r.allowed ? format_fixed(*r.allowed, 1) : std::string(),
                             r.predicted ? (r.within_tolerance ? "yes" : "NO") : ""});
        }
        print_table(out, cells);
        return;
    }
    }
}

} // namespace knstat
