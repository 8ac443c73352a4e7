// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "knstat/asymptotics.hpp"
#include "knstat/census.hpp"
#include "knstat/report_io.hpp"
#include "knstat/tate.hpp"
#include "support/oracles.hpp"

using namespace knstat;
using K = KodairaType;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Records the first few mismatches; later ones only count.
struct Mismatches {
    std::uint64_t count = 0;
    std::ostringstream first;

    void add(const std::string& what) {
        if (count++ < 3) {
            first << (count > 1 ? "; " : "") << what;
        }
    }
    Outcome outcome(std::uint64_t checked, const std::string& noun) const {
        Outcome o;
        o.pass = count == 0;
        o.detail = std::to_string(checked) + " " + noun + ", " + std::to_string(count) +
                   " mismatches";
        if (count > 0) {
            o.detail += " (" + first.str() + ")";
        }
        return o;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome exact_counts(const CensusRequest& req, const std::string& group,
                     const std::vector<std::pair<K, std::uint64_t>>& expected, double budget) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = census(req, 1);
    const double elapsed = seconds_since(t0);
    Outcome o;
    std::ostringstream d;
    for (auto [k, n] : expected) {
        const auto got = report.count(group, k);
        d << k.to_string() << "=" << got << " ";
        if (got != n) {
            o.pass = false;
            d << "(want " << n << ") ";
        }
    }
    d << "in " << format_fixed(elapsed, 2) << " s, single thread";
    if (elapsed > budget) {
        o.pass = false;
        d << " (budget " << budget << " s)";
    }
    o.detail = d.str();
    return o;
}

Outcome criterion1() {
    auto req = default_request(Family::J1728, checked_pow(10, 18));
    req.signs = Signs::Both;
    return exact_counts(req, "all",
                        {{K::III(), 620846},
                         {K::II(), 310424},
                         {K::InStar(2), 77607},
                         {K::InStar(3), 77607},
                         {K::IIIStar(), 77610}},
                        10.0);
}

Outcome criterion2() {
    auto req = default_request(Family::J0, checked_pow(10, 12));
    req.grouping = Grouping::ByTorsion;
    req.signs = Signs::Positive;
    return exact_counts(req, "trivial",
                        {{K::II(), 124138},
                         {K::III(), 41331},
                         {K::IV(), 13736},
                         {K::IVStar(), 4579},
                         {K::IIIStar(), 1525},
                         {K::IIStar(), 512}},
                        5.0);
}

Outcome criterion3() {
    const std::vector<std::pair<K, std::string>> reference = {
        {K::II(), "124281.5"},  {K::III(), "41427.2"},    {K::IV(), "13809.2"},
        {K::IVStar(), "4603.1"}, {K::IIIStar(), "1534.3"}, {K::IIStar(), "511.4"}};
    Outcome o;
    std::ostringstream d;
    int matched = 0;
    for (const auto& [k, want] : reference) {
        const std::string got = format_fixed(
            predicted(FormulaKey::J0_Trivial, k, checked_pow(10, 12), Signs::Positive), 1);
        if (got == want) {
            ++matched;
        } else {
            o.pass = false;
            d << k.to_string() << " " << got << " vs " << want << "; ";
        }
    }
    d << matched << "/6 rows agree to one decimal";
    o.detail = d.str();
    return o;
}

Outcome criterion4() {
    Mismatches bad;
    std::uint64_t checked = 0;
    const i128 X = checked_pow(10, 9);
    for (Family f : {Family::J0, Family::J1728}) {
        const std::int64_t p = family_prime(f);
        // every minimal coefficient directly
        const auto limit = static_cast<i128>(coefficient_limit(f, X));
        for (i128 c = -limit; c <= limit; ++c) {
            if (c == 0) {
                continue;
            }
            const bool minimal = f == Family::J0 ? minimal_j0(c) : minimal_j1728(c);
            if (!minimal) {
                continue;
            }
            const ShortModel s = f == Family::J0 ? ShortModel{0, c} : ShortModel{c, 0};
            const K fast = f == Family::J0 ? kodaira_fast_j0(c) : kodaira_fast_j1728(c);
            const K slow = tate(s.embed(), p).kodaira;
            ++checked;
            if (fast != slow) {
                bad.add(s.to_string() + ": " + fast.to_string() + " vs " + slow.to_string());
            }
        }
        // and every member the census enumerates
        auto req = default_request(f, X);
        req.signs = Signs::Both;
        enumerate_members(req, [&](const FamilyMember& m) {
            ++checked;
            const K slow = tate(m.minimal_model, p).kodaira;
            if (m.kodaira != slow) {
                bad.add(m.minimal_model.to_string() + ": " + m.kodaira.to_string() + " vs " +
                        slow.to_string());
            }
        });
    }
    return bad.outcome(checked, "models");
}

Outcome criterion5() {
    const std::vector<std::pair<std::string, K>> expected = {
        {"27.a3", K::IVStar()},  {"27.a4", K::II()},       {"36.a3", K::IIIStar()},
        {"36.a4", K::III()},     {"32.a3", K::III()},      {"32.a4", K::InStar(3)},
        {"64.a3", K::InStar(2)}, {"64.a4", K::II()}};
    Mismatches bad;
    const auto curves = exceptional_curves();
    if (curves.size() != expected.size()) {
        bad.add("curve count " + std::to_string(curves.size()));
    }
    for (std::size_t i = 0; i < std::min(curves.size(), expected.size()); ++i) {
        const auto& c = curves[i];
        const K got = tate(c.model, family_prime(c.family)).kodaira;
        const auto g = global_reduction(c.model);
        const std::string cls = to_string(g.conductor) + ".a";
        if (c.label != expected[i].first || got != expected[i].second ||
            cls != c.isogeny_class()) {
            bad.add(c.label + " " + got.to_string() + " conductor " + to_string(g.conductor));
        }
    }
    Outcome o = bad.outcome(expected.size(), "curves");
    if (o.pass) {
        std::ostringstream d;
        for (const auto& c : curves) {
            d << c.label << "=" << c.kodaira.to_string() << " ";
        }
        o.detail = d.str() + "(Tate, conductors confirmed)";
    }
    return o;
}

Outcome criterion6() {
    Mismatches bad;
    std::uint64_t checked = 0;
    for (i128 v = -100000; v <= 100000; ++v) {
        if (v == 0) {
            continue;
        }
        checked += 2;
        if (minimal_j1728(v) != oracle::short_model_minimal({v, 0})) {
            bad.add("A=" + to_string(v));
        }
        if (minimal_j0(v) != oracle::short_model_minimal({0, v})) {
            bad.add("B=" + to_string(v));
        }
    }
    return bad.outcome(checked, "coefficients");
}

Outcome criterion7() {
    using C = DensityCondition;
    const std::uint64_t N = 1'000'000;
    const std::vector<std::tuple<int, C, std::function<bool(std::uint64_t)>>> cases = {
        {2, C::Odd, [](std::uint64_t n) { return n % 2 == 1; }},
        {2, C::CoprimeTo3, [](std::uint64_t n) { return n % 3 != 0; }},
        {3, C::Odd, [](std::uint64_t n) { return n % 2 == 1; }},
        {3, C::V2Equals1, [](std::uint64_t n) { return n % 4 == 2; }},
        {4, C::Odd, [](std::uint64_t n) { return n % 2 == 1; }}};
    Outcome o;
    std::ostringstream d;
    double worst = 0.0;
    for (const auto& [k, c, keep] : cases) {
        const auto table = kfree_sieve(N, k);
        std::uint64_t count = 0;
        for (std::uint64_t n = 1; n <= N; ++n) {
            count += table[n] && keep(n) ? 1 : 0;
        }
        const Rational r = density_constant(k, c);
        const double want = static_cast<double>(r.num()) / static_cast<double>(r.den()) /
                            static_cast<double>(zeta_value(k)) * static_cast<double>(N);
        const double rel = std::fabs(static_cast<double>(count) / want - 1.0);
        worst = std::max(worst, rel);
        if (rel > 0.002) {
            o.pass = false;
            d << "(" << k << ", " << to_string(c) << ") off by " << rel << "; ";
        }
    }
    d << "5 cases, worst relative error " << format_fixed(worst * 100, 4) << "%";
    o.detail = d.str();
    return o;
}

Outcome criterion8() {
    Mismatches bad;
    std::uint64_t checked = 0;

    // Tate on random models with random powers of p in the coefficients
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> expo(0, 5);
    for (std::int64_t p : {2, 3, 5, 7, 13}) {
        for (int i = 0; i < 2000; ++i) {
            auto draw = [&](int cap) {
                i128 v = coef(rng);
                for (int e = std::min(expo(rng), cap); e > 0; --e) {
                    v *= p;
                }
                return v;
            };
            const WeierstrassModel m{draw(2), draw(3), draw(4), draw(5), draw(6)};
            if (raw_invariants(m).discriminant == 0) {
                continue;
            }
            ++checked;
            const auto d = tate(m, p);
            const auto again = tate(d.minimal_model, p);
            if (!again.was_minimal || again.kodaira != d.kodaira ||
                again.minimal_model != d.minimal_model) {
                bad.add("idempotence " + m.to_string());
            }
            const int drop = valuation(raw_invariants(m).discriminant, p) -
                             valuation(raw_invariants(d.minimal_model).discriminant, p);
            if (drop != 12 * d.scaling_exponent) {
                bad.add("discriminant drop " + m.to_string());
            }
            if (d.reduction == ReductionClass::Multiplicative &&
                (d.kodaira.index() != d.discriminant_valuation ||
                 -valuation(j_invariant(m), p) != d.kodaira.index())) {
                bad.add("multiplicative index " + m.to_string());
            }
        }
    }

    // chunk invariance under random splits
    for (Family f : {Family::J0, Family::J1728}) {
        auto req = default_request(f, checked_pow(10, 16));
        req.grouping = f == Family::J0 ? Grouping::ByTorsion : Grouping::ByGraph;
        req.signs = Signs::Both;
        const auto whole = census(req);
        const std::uint64_t limit = coefficient_limit(f, req.height_bound);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::uint64_t> cuts = {0, limit};
            for (int i = 0; i <= trial; ++i) {
                cuts.push_back(std::uniform_int_distribution<std::uint64_t>(1, limit)(rng));
            }
            std::sort(cuts.begin(), cuts.end());
            std::vector<CensusReport> parts;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                auto part = req;
                part.range = CoefficientRange{cuts[i] + 1, cuts[i + 1]};
                parts.push_back(census(part, 2));
            }
            ++checked;
            const auto merged = merge_reports(parts);
            if (merged.rows != whole.rows || merged.total != whole.total) {
                bad.add("split census " + to_string(f));
            }
        }
    }

    // census against the brute-force loop
    for (Family f : {Family::J0, Family::J1728}) {
        for (i128 X : {i128{30}, i128{5000}, checked_pow(10, 6), checked_pow(10, 8)}) {
            for (Grouping g : {Grouping::Overall, Grouping::ByTorsion, Grouping::ByGraph}) {
                if (f == Family::J0 && g == Grouping::ByGraph) {
                    continue;
                }
                for (Signs s : {Signs::Both, Signs::Positive}) {
                    auto req = default_request(f, X);
                    req.grouping = g;
                    req.signs = s;
                    ++checked;
                    const auto fast = census(req);
                    const auto slow = oracle::naive_census(req);
                    if (fast.rows != slow.rows || fast.total != slow.total) {
                        bad.add("naive census " + to_string(f) + " X=" + to_string(X));
                    }
                }
            }
        }
    }
    return bad.outcome(checked, "checks");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"j=1728 census at 10^18, both signs", criterion1},
        {"j=0 trivial-torsion census at 10^12, positive", criterion2},
        {"predicted j=0 trivial values at 10^12 to one decimal", criterion3},
        {"fast classifiers equal Tate for height <= 10^9", criterion4},
        {"exceptional curves under Tate", criterion5},
        {"minimality predicates for |A|, |B| <= 10^5", criterion6},
        {"k-free densities at 10^6 within 0.2%", criterion7},
        {"property suite", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s  %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
