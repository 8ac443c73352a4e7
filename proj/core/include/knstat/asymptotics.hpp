#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knstat/arith.hpp"
#include "knstat/census.hpp"
#include "knstat/kodaira.hpp"

namespace knstat {

/// Family/group keys that carry an asymptotic count.
enum class FormulaKey { J1728_L22, J1728_T43, J0_Trivial, J0_Z2, J0_Z3 };

std::string to_string(FormulaKey k);

/// Which coefficient signs a formula counts natively.
enum class SignCoverage {
    Symmetric,    // counts positive coefficients; negatives behave identically
    PositiveOnly, // the type only occurs for positive coefficients
    NegativeOnly, // the type only occurs for negative coefficients
    BothSigns,    // already counts both signs
};

/// base^exponent with rational exponent.
struct RadicalFactor {
    int base = 1;
    Rational exponent;
};

/// c_T * coefficient * prod(radicals) / zeta(zeta_k) * X^exponent.
struct AsymptoticFormula {
    FormulaKey key;
    KodairaType kodaira;
    Rational c_T;
    Rational coefficient;
    std::vector<RadicalFactor> radicals;
    int zeta_k = 2;
    Rational exponent;
    Rational error_exponent;
    SignCoverage coverage = SignCoverage::Symmetric;

    /// Constant in front of X^exponent, for one sign convention.
    long double leading_constant(Signs signs) const;
};

std::span<const AsymptoticFormula> formulas();

/// Throws std::invalid_argument for a (key, kodaira) pair without a formula.
const AsymptoticFormula& formula(FormulaKey key, KodairaType kodaira);

/// zeta(k) for k in {2, 3, 4, 6}.
long double zeta_value(int k);

/// Leading term of the count of minimal curves of type kodaira in the
/// sub-family key with height <= X.
double predicted(FormulaKey key, KodairaType kodaira, i128 X, Signs signs);

enum class DensityCondition { Unrestricted, Odd, CoprimeTo3, V2Equals1 };

std::string to_string(DensityCondition c);

/// Density of k-free positive integers with the condition, as a rational
/// multiple of 1/zeta(k). Only the pairs (2, odd), (2, coprime to 3),
/// (3, odd), (3, v_2 = 1), (4, odd) and unrestricted k >= 2 are supported.
Rational density_constant(int k, DensityCondition condition);

struct ComparisonRow {
    std::string group;
    KodairaType kodaira;
    std::uint64_t observed = 0;
    std::optional<double> predicted;      // empty: no formula for this row
    std::optional<double> relative_error; // observed / predicted - 1
    std::optional<double> allowed;        // absolute tolerance on |observed - predicted|
    bool within_tolerance = true;
};

/// Default constant C in the tolerance C * X^(error exponent).
inline constexpr double kDefaultToleranceConstant = 5.0;

/// Rows of the report matched against the formulas. Groups with formulas
/// also get rows for predicted types that were not observed. Overall rows
/// sum the formulas of the family and use the largest error exponent.
std::vector<ComparisonRow> compare(const CensusReport& report,
                                   double tolerance_constant = kDefaultToleranceConstant);

} // namespace knstat
