#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "knstat/kodaira.hpp"
#include "knstat/weierstrass.hpp"

namespace knstat {

enum class Family { J0, J1728 };

enum class TorsionGroup { Trivial, Z2, Z3, Z4, Z6, Z2xZ2 };

/// Rational isogeny-torsion graphs available to j = 1728.
enum class IsogenyTorsionGraph { T41, T42, T43, L22 };

std::string to_string(Family f);
std::string to_string(TorsionGroup g);
std::string to_string(IsogenyTorsionGraph g);
Family parse_family(std::string_view text);
TorsionGroup parse_torsion(std::string_view text);
IsogenyTorsionGraph parse_graph(std::string_view text);

/// The prime at which every member of the family has additive reduction.
std::int64_t family_prime(Family f);

/// y^2 = x^3 + A x is minimal iff |A| is fourth-power-free.
bool minimal_j1728(i128 A);

/// y^2 = x^3 + B is minimal iff B is sixth-power-free and, when v_2(B) = 4,
/// B/16 = 3 (mod 4).
bool minimal_j0(i128 B);

/// Torsion of y^2 = x^3 + B from whether B is a square and/or a cube.
/// Requires minimal_j0(B).
TorsionGroup torsion_j0(i128 B);

struct J1728Class {
    TorsionGroup torsion = TorsionGroup::Z2;
    IsogenyTorsionGraph graph = IsogenyTorsionGraph::L22;
    std::optional<std::string> label; // LMFDB label for the 32.a / 64.a curves
};

/// Requires minimal_j1728(A). The four curves A = -1, 4 (class 32.a) and
/// A = 1, -4 (class 64.a) are recognised before the generic square test.
J1728Class classify_j1728(i128 A);

/// Type at 2 of y^2 = x^3 + A x from A mod 16. Requires minimal_j1728(A).
KodairaType kodaira_fast_j1728(i128 A);

/// Type at 3 of y^2 = x^3 + B from B modulo powers of 3. Requires
/// minimal_j0(B).
KodairaType kodaira_fast_j0(i128 B);

struct ExceptionalCurve {
    std::string label;            // LMFDB curve label, e.g. "27.a3"
    Family family;
    WeierstrassModel model;       // global minimal model
    ShortModel short_model;       // integral short model (27.a ones are not minimal at 2)
    KodairaType kodaira;          // at family_prime(family)
    TorsionGroup torsion;
    std::optional<IsogenyTorsionGraph> graph;

    std::string isogeny_class() const; // "27.a"
};

/// 27.a3, 27.a4, 36.a3, 36.a4, 32.a3, 32.a4, 64.a3, 64.a4.
std::span<const ExceptionalCurve> exceptional_curves();

/// One curve produced by a family enumeration.
///
/// Parameterised members are specialisations of the family models: for
/// j = 1728 the T43 models y^2 = x^3 -+ t^2 x (squarefree t >= 2) and the L22
/// model y^2 = x^3 + A x; for j = 0 the trivial-torsion model y^2 = x^3 + B
/// and the torsion models y^2 = x^3 + t^3, y^2 = x^3 + t^2. The torsion and
/// graph fields name the sub-family the member came from. The t = 2 members
/// of the T43 models are the curves 64.a3 and 32.a4; exceptional_label
/// records that coincidence.
struct FamilyMember {
    Family family = Family::J0;
    ShortModel model;
    WeierstrassModel minimal_model;
    std::optional<i128> parameter; // empty for exceptional members
    TorsionGroup torsion = TorsionGroup::Trivial;
    std::optional<IsogenyTorsionGraph> graph;
    std::optional<std::string> exceptional_label;
    bool exceptional = false; // drawn from exceptional_curves()
    KodairaType kodaira;
};

} // namespace knstat
