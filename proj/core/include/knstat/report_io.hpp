#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "knstat/asymptotics.hpp"
#include "knstat/census.hpp"

namespace knstat {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_output_format(std::string_view text);

struct RenderOptions {
    OutputFormat format = OutputFormat::Table;
    bool unicode = false; // Kodaira symbols via KodairaType::to_unicode()
};

/// CSV header: family,group,kodaira,count
void write_census(std::ostream& out, const CensusReport& report, const RenderOptions& opts);

/// CSV header: family,group,kodaira,observed,predicted,rel_error. Predicted
/// values carry one decimal; rows without a formula print "unpredicted".
void write_comparison(std::ostream& out, const CensusReport& report,
                      const std::vector<ComparisonRow>& rows, const RenderOptions& opts);

/// Fixed-point rendering with the given number of decimals.
std::string format_fixed(double value, int decimals);

} // namespace knstat
