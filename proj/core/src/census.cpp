#include "knstat/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "knstat/arith.hpp"

namespace knstat {

namespace {

constexpr std::array<std::string_view, 15> kGroupOrder = {
    "trivial", "Z2",   "Z3",   "Z4",   "Z6",   "Z2xZ2", "T41", "T42",
    "T43",     "L22",  "27.a", "32.a", "36.a", "64.a",  "all"};

constexpr int kKinds = 10;
constexpr int kMaxIndex = 16;

std::uint64_t isqrt64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

std::uint64_t icbrt64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
    while (r * r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

bool is_square64(std::uint64_t n) {
    std::uint64_t r = isqrt64(n);
    return r * r == n;
}

bool is_cube64(std::uint64_t n) {
    std::uint64_t r = icbrt64(n);
    return r * r * r == n;
}

// Smallest r >= 0 with r^k >= n.
std::uint64_t ceil_root(std::uint64_t n, int k) {
    auto r = static_cast<std::uint64_t>(integer_root(n, k));
    u128 p = 1;
    for (int i = 0; i < k; ++i) {
        p *= r;
    }
    return p == n ? r : r + 1;
}

struct Plan {
    CensusRequest req;
    std::uint64_t limit = 0; // largest admissible |coefficient|
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    std::optional<KFreeSieve> sieve;
};

Plan make_plan(const CensusRequest& req) {
    if (req.grouping == Grouping::ByGraph && req.family == Family::J0) {
        throw std::invalid_argument("grouping by isogeny-torsion graph applies to j1728 only");
    }
    Plan plan;
    plan.req = req;
    plan.limit = coefficient_limit(req.family, req.height_bound);
    plan.hi = plan.limit;
    if (req.range) {
        plan.lo = std::max<std::uint64_t>(plan.lo, req.range->lo);
        plan.hi = std::min(plan.hi, req.range->hi);
    }
    if (plan.limit > 0) {
        plan.sieve.emplace(plan.limit, req.family == Family::J1728 ? 4 : 6);
    }
    return plan;
}

bool sign_allowed(const CensusRequest& req, i128 coefficient) {
    return req.signs == Signs::Both || coefficient > 0;
}

FamilyMember j1728_member(i128 A, i128 parameter, IsogenyTorsionGraph graph) {
    FamilyMember m;
    m.family = Family::J1728;
    m.model = {A, 0};
    m.minimal_model = m.model.embed();
    m.parameter = parameter;
    m.graph = graph;
    auto cls = classify_j1728(A);
    m.torsion = cls.torsion;
    m.exceptional_label = cls.label;
    m.kodaira = kodaira_fast_j1728(A);
    return m;
}

FamilyMember j0_member(i128 B, i128 parameter, TorsionGroup torsion) {
    FamilyMember m;
    m.family = Family::J0;
    m.model = {0, B};
    m.minimal_model = m.model.embed();
    m.parameter = parameter;
    m.torsion = torsion;
    m.kodaira = kodaira_fast_j0(B);
    return m;
}

template <class F>
void visit_j1728(const Plan& plan, std::uint64_t lo, std::uint64_t hi,
                 std::vector<std::uint8_t>& flags, F& visit) {
    for (std::uint64_t start = lo; start <= hi; start += kDefaultSegment) {
        std::uint64_t len = std::min<std::uint64_t>(kDefaultSegment, hi - start + 1);
        flags.resize(len);
        plan.sieve->mark(start, flags);
        for (std::uint64_t i = 0; i < len; ++i) {
            const std::uint64_t a = start + i;
            if (flags[i] == 0 || a == 1) {
                continue;
            }
            const auto A = static_cast<i128>(a);
            const std::uint64_t t = isqrt64(a);
            if (t * t == a) {
                visit(j1728_member(A, t, IsogenyTorsionGraph::T43));
                if (plan.req.signs == Signs::Both) {
                    visit(j1728_member(-A, t, IsogenyTorsionGraph::T43));
                }
            } else {
                visit(j1728_member(A, A, IsogenyTorsionGraph::L22));
                if (plan.req.signs == Signs::Both) {
                    visit(j1728_member(-A, -A, IsogenyTorsionGraph::L22));
                }
            }
        }
    }
}

template <class F>
void visit_j0_trivial(const Plan& plan, std::uint64_t lo, std::uint64_t hi,
                      std::vector<std::uint8_t>& flags, F& visit) {
    for (std::uint64_t start = lo; start <= hi; start += kDefaultSegment) {
        std::uint64_t len = std::min<std::uint64_t>(kDefaultSegment, hi - start + 1);
        flags.resize(len);
        plan.sieve->mark(start, flags);
        for (std::uint64_t i = 0; i < len; ++i) {
            const std::uint64_t b = start + i;
            if (flags[i] == 0) {
                continue;
            }
            // v_2(b) = 4 needs B/16 = 3 (mod 4); for -b that is b/16 = 1.
            const bool v2_is_4 = (b & 31U) == 16;
            const std::uint64_t q = (b >> 4U) & 3U;
            const bool cube = is_cube64(b);
            const auto B = static_cast<i128>(b);
            if ((!v2_is_4 || q == 3) && !cube && !is_square64(b)) {
                visit(j0_member(B, B, TorsionGroup::Trivial));
            }
            if (plan.req.signs == Signs::Both && (!v2_is_4 || q == 1) && !cube) {
                visit(j0_member(-B, -B, TorsionGroup::Trivial));
            }
        }
    }
}

template <class F>
void visit_j0_torsion(const Plan& plan, std::uint64_t lo, std::uint64_t hi, F& visit) {
    // B = t^3, t squarefree, t not in {-3, 1}.
    for (std::uint64_t t = std::max<std::uint64_t>(1, ceil_root(lo, 3)); t * t * t <= hi; ++t) {
        const auto T = static_cast<i128>(t);
        if (!is_kth_power_free(T, 2)) {
            continue;
        }
        if (t != 1) {
            visit(j0_member(T * T * T, T, TorsionGroup::Z2));
        }
        if (plan.req.signs == Signs::Both && t != 3) {
            visit(j0_member(-T * T * T, -T, TorsionGroup::Z2));
        }
    }
    // B = t^2, t >= 2 cubefree with v_2(t) <= 1.
    for (std::uint64_t t = std::max<std::uint64_t>(2, ceil_root(lo, 2)); t * t <= hi; ++t) {
        const auto T = static_cast<i128>(t);
        if (t % 4 == 0 || !is_kth_power_free(T, 3)) {
            continue;
        }
        visit(j0_member(T * T, T, TorsionGroup::Z3));
    }
}

template <class F>
void visit_exceptional(const Plan& plan, std::uint64_t lo, std::uint64_t hi, F& visit) {
    if (!plan.req.include_exceptional) {
        return;
    }
    for (const auto& e : exceptional_curves()) {
        if (e.family != plan.req.family) {
            continue;
        }
        const i128 coefficient = e.family == Family::J0 ? e.short_model.B : e.short_model.A;
        const i128 mag = abs128(coefficient);
        if (mag < lo || mag > hi || height(e.short_model) > plan.req.height_bound ||
            !sign_allowed(plan.req, coefficient)) {
            continue;
        }
        FamilyMember m;
        m.family = e.family;
        m.model = e.short_model;
        m.minimal_model = e.model;
        m.torsion = e.torsion;
        m.graph = e.graph;
        m.exceptional_label = e.label;
        m.exceptional = true;
        m.kodaira = e.kodaira;
        visit(m);
    }
}

// Parameterised members whose |coefficient| lies in [lo, hi].
template <class F>
void visit_window(const Plan& plan, std::uint64_t lo, std::uint64_t hi,
                  std::vector<std::uint8_t>& flags, F& visit) {
    if (lo > hi) {
        return;
    }
    if (plan.req.family == Family::J1728) {
        visit_j1728(plan, lo, hi, flags, visit);
    } else {
        visit_j0_trivial(plan, lo, hi, flags, visit);
        visit_j0_torsion(plan, lo, hi, visit);
    }
}

int group_index(const FamilyMember& m, Grouping grouping) {
    // Fast paths rely on kGroupOrder following the enum orders.
    if (grouping == Grouping::Overall) {
        return static_cast<int>(kGroupOrder.size()) - 1;
    }
    if (grouping == Grouping::ByTorsion && !m.exceptional) {
        return static_cast<int>(m.torsion);
    }
    if (grouping == Grouping::ByGraph && m.graph) {
        return 6 + static_cast<int>(*m.graph);
    }
    const std::string label = group_label(m, grouping);
    const auto it = std::find(kGroupOrder.begin(), kGroupOrder.end(), label);
    if (it == kGroupOrder.end()) {
        throw std::logic_error("census: no slot for group '" + label + "'");
    }
    return static_cast<int>(it - kGroupOrder.begin());
}

class Tally {
  public:
    Tally() : counts_(kGroupOrder.size() * kKinds * kMaxIndex, 0) {}

    void add(const FamilyMember& m, Grouping grouping) {
        const int n = m.kodaira.index();
        if (n >= kMaxIndex) {
            throw std::logic_error("census: Kodaira index out of range");
        }
        const auto kind = static_cast<std::size_t>(m.kodaira.kind());
        counts_[(static_cast<std::size_t>(group_index(m, grouping)) * kKinds + kind) * kMaxIndex +
                static_cast<std::size_t>(n)] += 1;
    }

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            counts_[i] += other.counts_[i];
        }
    }

    CensusReport report(const CensusRequest& req) const {
        CensusReport out;
        out.request = req;
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i] == 0) {
                continue;
            }
            const std::size_t n = i % kMaxIndex;
            const std::size_t kind = (i / kMaxIndex) % kKinds;
            const std::size_t group = i / (kMaxIndex * kKinds);
            out.rows.push_back({std::string(kGroupOrder[group]),
                                KodairaType::make(static_cast<KodairaType::Kind>(kind),
                                                  static_cast<int>(n)),
                                counts_[i]});
            out.total += counts_[i];
        }
        return out;
    }

  private:
    std::vector<std::uint64_t> counts_;
};

} // namespace

std::string to_string(Grouping g) {
    switch (g) {
    case Grouping::ByTorsion: return "by_torsion";
    case Grouping::ByGraph: return "by_graph";
    case Grouping::Overall: return "overall";
    }
    return "?";
}

std::string to_string(Signs s) {
    return s == Signs::Both ? "both" : "positive";
}

Grouping parse_grouping(std::string_view text) {
    if (text == "by_torsion" || text == "torsion") {
        return Grouping::ByTorsion;
    }
    if (text == "by_graph" || text == "graph") {
        return Grouping::ByGraph;
    }
    if (text == "overall") {
        return Grouping::Overall;
    }
    throw std::invalid_argument("unknown grouping '" + std::string(text) + "'");
}

Signs parse_signs(std::string_view text) {
    if (text == "both") {
        return Signs::Both;
    }
    if (text == "positive") {
        return Signs::Positive;
    }
    throw std::invalid_argument("unknown sign mode '" + std::string(text) + "'");
}

CensusRequest default_request(Family family, i128 height_bound) {
    CensusRequest req;
    req.family = family;
    req.height_bound = height_bound;
    req.signs = family == Family::J1728 ? Signs::Both : Signs::Positive;
    return req;
}

std::uint64_t CensusReport::count(std::string_view group, KodairaType k) const {
    for (const auto& row : rows) {
        if (row.group == group && row.kodaira == k) {
            return row.count;
        }
    }
    return 0;
}

std::uint64_t coefficient_limit(Family family, i128 height_bound) {
    if (height_bound < 1) {
        throw std::invalid_argument("height bound must be positive");
    }
    if (height_bound > kMaxHeight) {
        throw OverflowError("height bound " + to_string(height_bound) + " exceeds 10^33");
    }
    const auto x = static_cast<u128>(height_bound);
    const u128 r = family == Family::J1728 ? integer_root(x / 4, 3) : integer_root(x / 27, 2);
    return static_cast<std::uint64_t>(r);
}

std::string group_label(const FamilyMember& m, Grouping grouping) {
    switch (grouping) {
    case Grouping::Overall: return "all";
    case Grouping::ByGraph:
        if (!m.graph) {
            throw std::invalid_argument("member has no isogeny-torsion graph");
        }
        return to_string(*m.graph);
    case Grouping::ByTorsion:
        if (m.exceptional) {
            const std::string& label = *m.exceptional_label;
            return label.substr(0, label.find_last_not_of("0123456789") + 1);
        }
        return to_string(m.torsion);
    }
    return "?";
}

int group_rank(std::string_view label) {
    const auto it = std::find(kGroupOrder.begin(), kGroupOrder.end(), label);
    return static_cast<int>(it - kGroupOrder.begin());
}

void enumerate_members(const CensusRequest& req,
                       const std::function<void(const FamilyMember&)>& visit) {
    const Plan plan = make_plan(req);
    std::vector<std::uint8_t> flags;
    auto fn = [&](const FamilyMember& m) { visit(m); };
    if (req.family == Family::J1728) {
        if (plan.lo <= plan.hi) {
            visit_j1728(plan, plan.lo, plan.hi, flags, fn);
        }
    } else if (plan.lo <= plan.hi) {
        visit_j0_trivial(plan, plan.lo, plan.hi, flags, fn);
        visit_j0_torsion(plan, plan.lo, plan.hi, fn);
    }
    visit_exceptional(plan, plan.lo, plan.hi, fn);
}

CensusReport census(const CensusRequest& req, unsigned threads) {
    const Plan plan = make_plan(req);
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }

    const std::uint64_t span = plan.lo <= plan.hi ? plan.hi - plan.lo + 1 : 0;
    const std::uint64_t chunks = (span + kDefaultSegment - 1) / kDefaultSegment;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

    std::vector<Tally> tallies(threads);
    std::atomic<std::uint64_t> next{0};
    auto work = [&](unsigned id) {
        Tally& tally = tallies[id];
        std::vector<std::uint8_t> flags;
        auto add = [&](const FamilyMember& m) { tally.add(m, req.grouping); };
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            const std::uint64_t lo = plan.lo + c * kDefaultSegment;
            const std::uint64_t hi = std::min(plan.hi, lo + kDefaultSegment - 1);
            visit_window(plan, lo, hi, flags, add);
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned id = 0; id < threads; ++id) {
            pool.emplace_back([&, id] {
                try {
                    work(id);
                } catch (...) {
                    errors[id] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    Tally total;
    for (const auto& t : tallies) {
        total.merge(t);
    }
    auto add = [&](const FamilyMember& m) { total.add(m, req.grouping); };
    visit_exceptional(plan, plan.lo, plan.hi, add);
    return total.report(req);
}

CensusReport merge_reports(const std::vector<CensusReport>& parts) {
    if (parts.empty()) {
        throw std::invalid_argument("merge_reports: nothing to merge");
    }
    std::map<std::pair<int, KodairaType>, CensusRow> merged;
    for (const auto& part : parts) {
        if (part.request.family != parts.front().request.family ||
            part.request.grouping != parts.front().request.grouping) {
            throw std::invalid_argument("merge_reports: family or grouping differs");
        }
        for (const auto& row : part.rows) {
            auto [it, fresh] =
                merged.try_emplace({group_rank(row.group), row.kodaira}, row);
            if (!fresh) {
                it->second.count += row.count;
            }
        }
    }
    CensusReport out;
    out.request = parts.front().request;
    out.request.range.reset();
    for (auto& [key, row] : merged) {
        out.total += row.count;
        out.rows.push_back(row);
    }
    return out;
}

} // namespace knstat
