#include "knstat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace knstat {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr long double kApery = 1.202056903159594285399738161511449991L;

long double as_ld(const Rational& q) {
    return static_cast<long double>(q.num()) / static_cast<long double>(q.den());
}

std::vector<AsymptoticFormula> build_formulas() {
    using K = KodairaType;
    std::vector<AsymptoticFormula> out;
    auto add = [&](FormulaKey key, K kodaira, Rational c, Rational coefficient,
                   std::vector<RadicalFactor> radicals, int zk, Rational e, Rational err,
                   SignCoverage coverage) {
        out.push_back({key, kodaira, c, coefficient, std::move(radicals), zk, e, err, coverage});
    };

    // (1/zeta(4)) (X/4)^(1/3)
    const std::vector<RadicalFactor> l22 = {{2, Rational(-2, 3)}};
    for (auto [k, c] : {std::pair{K::II(), Rational(4, 15)}, {K::III(), Rational(8, 15)},
                        {K::InStar(2), Rational(1, 15)}, {K::InStar(3), Rational(1, 15)},
                        {K::IIIStar(), Rational(1, 15)}}) {
        add(FormulaKey::J1728_L22, k, c, 1, l22, 4, Rational(1, 3), Rational(1, 6),
            SignCoverage::Symmetric);
    }

    // (1/zeta(2)) (X/2)^(1/6); III and I2* come from y^2 = x^3 - t^2 x,
    // II and I3* from y^2 = x^3 + t^2 x.
    const std::vector<RadicalFactor> t43 = {{2, Rational(-1, 3)}};
    add(FormulaKey::J1728_T43, K::II(), Rational(2, 3), 1, t43, 2, Rational(1, 6),
        Rational(1, 12), SignCoverage::PositiveOnly);
    add(FormulaKey::J1728_T43, K::III(), Rational(2, 3), 1, t43, 2, Rational(1, 6),
        Rational(1, 12), SignCoverage::NegativeOnly);
    add(FormulaKey::J1728_T43, K::InStar(2), Rational(1, 3), 1, t43, 2, Rational(1, 6),
        Rational(1, 12), SignCoverage::NegativeOnly);
    add(FormulaKey::J1728_T43, K::InStar(3), Rational(1, 3), 1, t43, 2, Rational(1, 6),
        Rational(1, 12), SignCoverage::PositiveOnly);

    const std::vector<RadicalFactor> j0_trivial = {{3, Rational(-3, 2)}};
    for (auto [k, c] : {std::pair{K::II(), Rational(243, 364)}, {K::III(), Rational(81, 364)},
                        {K::IV(), Rational(27, 364)}, {K::IVStar(), Rational(9, 364)},
                        {K::IIIStar(), Rational(3, 364)}, {K::IIStar(), Rational(1, 364)}}) {
        add(FormulaKey::J0_Trivial, k, c, Rational(62, 63), j0_trivial, 6, Rational(1, 2),
            Rational(1, 4), SignCoverage::Symmetric);
    }

    const std::vector<RadicalFactor> j0_z2 = {{3, Rational(-1, 2)}};
    for (auto [k, c] : {std::pair{K::III(), Rational(3, 4)}, {K::IIIStar(), Rational(1, 4)}}) {
        add(FormulaKey::J0_Z2, k, c, 2, j0_z2, 2, Rational(1, 6), Rational(1, 12),
            SignCoverage::BothSigns);
    }

    const std::vector<RadicalFactor> j0_z3 = {{3, Rational(1, 4)}};
    for (auto [k, c] : {std::pair{K::II(), Rational(6, 13)}, {K::III(), Rational(3, 13)},
                        {K::IV(), Rational(3, 13)}, {K::IVStar(), Rational(1, 13)}}) {
        add(FormulaKey::J0_Z3, k, c, Rational(2, 7), j0_z3, 3, Rational(1, 4), Rational(1, 12),
            SignCoverage::PositiveOnly);
    }
    return out;
}

long double sign_factor(SignCoverage coverage, Signs signs) {
    const bool both = signs == Signs::Both;
    switch (coverage) {
    case SignCoverage::Symmetric: return both ? 2.0L : 1.0L;
    case SignCoverage::PositiveOnly: return 1.0L;
    case SignCoverage::NegativeOnly: return both ? 1.0L : 0.0L;
    case SignCoverage::BothSigns: return both ? 1.0L : 0.5L;
    }
    return 0.0L;
}

std::vector<FormulaKey> keys_for(Family family, std::string_view group) {
    if (family == Family::J1728) {
        if (group == "L22") {
            return {FormulaKey::J1728_L22};
        }
        if (group == "T43") {
            return {FormulaKey::J1728_T43};
        }
        if (group == "all") {
            return {FormulaKey::J1728_L22, FormulaKey::J1728_T43};
        }
        return {};
    }
    if (group == "trivial") {
        return {FormulaKey::J0_Trivial};
    }
    if (group == "Z2") {
        return {FormulaKey::J0_Z2};
    }
    if (group == "Z3") {
        return {FormulaKey::J0_Z3};
    }
    if (group == "all") {
        return {FormulaKey::J0_Trivial, FormulaKey::J0_Z2, FormulaKey::J0_Z3};
    }
    return {};
}

std::vector<std::string> predicted_groups(Family family, Grouping grouping) {
    if (grouping == Grouping::Overall) {
        return {"all"};
    }
    if (family == Family::J1728) {
        return grouping == Grouping::ByGraph ? std::vector<std::string>{"T43", "L22"}
                                             : std::vector<std::string>{};
    }
    return {"trivial", "Z2", "Z3"};
}

} // namespace

std::string to_string(FormulaKey k) {
    switch (k) {
    case FormulaKey::J1728_L22: return "j1728/L22";
    case FormulaKey::J1728_T43: return "j1728/T43";
    case FormulaKey::J0_Trivial: return "j0/trivial";
    case FormulaKey::J0_Z2: return "j0/Z2";
    case FormulaKey::J0_Z3: return "j0/Z3";
    }
    return "?";
}

std::string to_string(DensityCondition c) {
    switch (c) {
    case DensityCondition::Unrestricted: return "unrestricted";
    case DensityCondition::Odd: return "odd";
    case DensityCondition::CoprimeTo3: return "coprime_to_3";
    case DensityCondition::V2Equals1: return "v2_equals_1";
    }
    return "?";
}

long double AsymptoticFormula::leading_constant(Signs signs) const {
    long double value = as_ld(c_T) * as_ld(coefficient) / zeta_value(zeta_k);
    for (const auto& r : radicals) {
        value *= std::pow(static_cast<long double>(r.base), as_ld(r.exponent));
    }
    return value * sign_factor(coverage, signs);
}

std::span<const AsymptoticFormula> formulas() {
    static const std::vector<AsymptoticFormula> table = build_formulas();
    return table;
}

const AsymptoticFormula& formula(FormulaKey key, KodairaType kodaira) {
    for (const auto& f : formulas()) {
        if (f.key == key && f.kodaira == kodaira) {
            return f;
        }
    }
    throw std::invalid_argument("no asymptotic formula for " + kodaira.to_string() + " in " +
                                to_string(key));
}

long double zeta_value(int k) {
    switch (k) {
    case 2: return kPi * kPi / 6.0L;
    case 3: return kApery;
    case 4: return std::pow(kPi, 4.0L) / 90.0L;
    case 6: return std::pow(kPi, 6.0L) / 945.0L;
    default: throw std::invalid_argument("zeta_value: unsupported argument " + std::to_string(k));
    }
}

double predicted(FormulaKey key, KodairaType kodaira, i128 X, Signs signs) {
    if (X < 1) {
        throw std::invalid_argument("height bound must be positive");
    }
    const auto& f = formula(key, kodaira);
    return static_cast<double>(f.leading_constant(signs) *
                               std::pow(static_cast<long double>(X), as_ld(f.exponent)));
}

Rational density_constant(int k, DensityCondition condition) {
    using C = DensityCondition;
    if (condition == C::Unrestricted && k >= 2) {
        return 1;
    }
    if (k == 2 && condition == C::Odd) {
        return {2, 3};
    }
    if (k == 2 && condition == C::CoprimeTo3) {
        return {3, 4};
    }
    if (k == 3 && condition == C::Odd) {
        return {4, 7};
    }
    if (k == 3 && condition == C::V2Equals1) {
        return {2, 7};
    }
    if (k == 4 && condition == C::Odd) {
        return {8, 15};
    }
    throw std::invalid_argument("density_constant: unsupported pair (" + std::to_string(k) +
                                ", " + to_string(condition) + ")");
}

std::vector<ComparisonRow> compare(const CensusReport& report, double tolerance_constant) {
    const auto& req = report.request;
    const auto X = static_cast<long double>(req.height_bound);

    std::map<std::pair<int, KodairaType>, ComparisonRow> rows;
    for (const auto& r : report.rows) {
        ComparisonRow row;
        row.group = r.group;
        row.kodaira = r.kodaira;
        row.observed = r.count;
        rows.emplace(std::pair{group_rank(r.group), r.kodaira}, row);
    }
    for (const auto& group : predicted_groups(req.family, req.grouping)) {
        for (FormulaKey key : keys_for(req.family, group)) {
            for (const auto& f : formulas()) {
                if (f.key != key || f.leading_constant(req.signs) == 0.0L) {
                    continue;
                }
                ComparisonRow row;
                row.group = group;
                row.kodaira = f.kodaira;
                rows.try_emplace(std::pair{group_rank(group), f.kodaira}, row);
            }
        }
    }

    std::vector<ComparisonRow> out;
    for (auto& [key, row] : rows) {
        long double value = 0.0L;
        long double error_exponent = -1.0L;
        for (FormulaKey fk : keys_for(req.family, row.group)) {
            for (const auto& f : formulas()) {
                if (f.key != fk || f.kodaira != row.kodaira) {
                    continue;
                }
                const long double c = f.leading_constant(req.signs);
                if (c == 0.0L) {
                    continue;
                }
                value += c * std::pow(X, as_ld(f.exponent));
                error_exponent = std::max(error_exponent, as_ld(f.error_exponent));
            }
        }
        if (error_exponent >= 0.0L) {
            row.predicted = static_cast<double>(value);
            row.relative_error = static_cast<double>(static_cast<long double>(row.observed) / value - 1.0L);
            row.allowed = static_cast<double>(tolerance_constant * std::pow(X, error_exponent));
            row.within_tolerance =
                std::fabs(static_cast<long double>(row.observed) - value) <= *row.allowed;
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace knstat
