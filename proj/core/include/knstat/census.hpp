#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knstat/families.hpp"
#include "knstat/kodaira.hpp"

namespace knstat {

enum class Grouping { ByTorsion, ByGraph, Overall };
enum class Signs { Both, Positive };

std::string to_string(Grouping g);
std::string to_string(Signs s);
Grouping parse_grouping(std::string_view text);
Signs parse_signs(std::string_view text);

/// Closed window of |coefficient| values (|A| for j = 1728, |B| for j = 0).
struct CoefficientRange {
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
};

struct CensusRequest {
    Family family = Family::J1728;
    i128 height_bound = 1;
    Grouping grouping = Grouping::Overall;
    Signs signs = Signs::Both;
    bool include_exceptional = true;
    /// Restricts the run to curves whose short-model coefficient has absolute
    /// value in the window. Used for chunked and distributed runs.
    std::optional<CoefficientRange> range;
};

/// Family defaults: j = 1728 counts both signs of A, j = 0 positive B.
CensusRequest default_request(Family family, i128 height_bound);

struct CensusRow {
    std::string group;
    KodairaType kodaira;
    std::uint64_t count = 0;

    friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

struct CensusReport {
    CensusRequest request;
    std::vector<CensusRow> rows; // canonical order: group rank, then Kodaira
    std::uint64_t total = 0;

    std::uint64_t count(std::string_view group, KodairaType k) const;
};

/// Heights above this overflow c4^3 on family models.
inline constexpr i128 kMaxHeight = static_cast<i128>(1'000'000'000'000'000'000ULL) * 1'000'000'000'000'000ULL;

/// Largest |A| (resp. |B|) with 4|A|^3 <= X (resp. 27 B^2 <= X).
/// Throws OverflowError when X exceeds kMaxHeight.
std::uint64_t coefficient_limit(Family family, i128 height_bound);

/// Group label a member is counted under for the given grouping. Exceptional
/// members get their isogeny class ("27.a") under by_torsion and their graph
/// under by_graph.
std::string group_label(const FamilyMember& m, Grouping grouping);

/// Rank used to order groups in reports; unknown labels sort last.
int group_rank(std::string_view label);

/// Streams every member, sub-family by sub-family, each in ascending
/// |parameter| order; exceptional members come last.
void enumerate_members(const CensusRequest& req,
                       const std::function<void(const FamilyMember&)>& visit);

/// Exact counts. threads == 0 means hardware concurrency. Work is split into
/// coefficient windows and merged by summation, so the result does not
/// depend on the thread count.
CensusReport census(const CensusRequest& req, unsigned threads = 1);

/// Sums reports of the same family and grouping (e.g. disjoint ranges).
CensusReport merge_reports(const std::vector<CensusReport>& parts);

} // namespace knstat
