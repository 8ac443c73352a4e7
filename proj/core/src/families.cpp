#include "knstat/families.hpp"

#include <array>
#include <stdexcept>

#include "knstat/arith.hpp"

namespace knstat {

std::string to_string(Family f) {
    return f == Family::J0 ? "j0" : "j1728";
}

std::string to_string(TorsionGroup g) {
    switch (g) {
    case TorsionGroup::Trivial: return "trivial";
    case TorsionGroup::Z2: return "Z2";
    case TorsionGroup::Z3: return "Z3";
    case TorsionGroup::Z4: return "Z4";
    case TorsionGroup::Z6: return "Z6";
    case TorsionGroup::Z2xZ2: return "Z2xZ2";
    }
    return "?";
}

std::string to_string(IsogenyTorsionGraph g) {
    switch (g) {
    case IsogenyTorsionGraph::T41: return "T41";
    case IsogenyTorsionGraph::T42: return "T42";
    case IsogenyTorsionGraph::T43: return "T43";
    case IsogenyTorsionGraph::L22: return "L22";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    if (text == "j0" || text == "0") {
        return Family::J0;
    }
    if (text == "j1728" || text == "1728") {
        return Family::J1728;
    }
    throw std::invalid_argument("unknown family '" + std::string(text) + "' (expected j0 or j1728)");
}

TorsionGroup parse_torsion(std::string_view text) {
    for (auto g : {TorsionGroup::Trivial, TorsionGroup::Z2, TorsionGroup::Z3, TorsionGroup::Z4,
                   TorsionGroup::Z6, TorsionGroup::Z2xZ2}) {
        if (text == to_string(g)) {
            return g;
        }
    }
    throw std::invalid_argument("unknown torsion group '" + std::string(text) + "'");
}

IsogenyTorsionGraph parse_graph(std::string_view text) {
    for (auto g : {IsogenyTorsionGraph::T41, IsogenyTorsionGraph::T42, IsogenyTorsionGraph::T43,
                   IsogenyTorsionGraph::L22}) {
        if (text == to_string(g)) {
            return g;
        }
    }
    throw std::invalid_argument("unknown isogeny-torsion graph '" + std::string(text) + "'");
}

std::int64_t family_prime(Family f) {
    return f == Family::J0 ? 3 : 2;
}

bool minimal_j1728(i128 A) {
    if (A == 0) {
        throw SingularModelError("y^2 = x^3 + 0x is singular");
    }
    return is_kth_power_free(A, 4);
}

bool minimal_j0(i128 B) {
    if (B == 0) {
        throw SingularModelError("y^2 = x^3 is singular");
    }
    if (!is_kth_power_free(B, 6)) {
        return false;
    }
    return valuation(B, 2) != 4 || mod_floor(B / 16, 4) == 3;
}

TorsionGroup torsion_j0(i128 B) {
    const bool square = is_perfect_power(B, 2);
    const bool cube = is_perfect_power(B, 3);
    if (square && cube) {
        return TorsionGroup::Z6;
    }
    if (cube) {
        return TorsionGroup::Z2;
    }
    if (square) {
        return TorsionGroup::Z3;
    }
    return TorsionGroup::Trivial;
}

J1728Class classify_j1728(i128 A) {
    using G = IsogenyTorsionGraph;
    using T = TorsionGroup;
    if (A == -1) {
        return {T::Z2xZ2, G::T41, "32.a3"};
    }
    if (A == 4) {
        return {T::Z4, G::T41, "32.a4"};
    }
    if (A == -4) {
        return {T::Z2xZ2, G::T42, "64.a3"};
    }
    if (A == 1) {
        return {T::Z2, G::T42, "64.a4"};
    }
    if (is_perfect_power(abs128(A), 2)) {
        return {A < 0 ? T::Z2xZ2 : T::Z2, G::T43, std::nullopt};
    }
    return {T::Z2, G::L22, std::nullopt};
}

KodairaType kodaira_fast_j1728(i128 A) {
    switch (valuation(A, 2)) {
    case 0: return mod_floor(A, 4) == 1 ? KodairaType::II() : KodairaType::III();
    case 1: return KodairaType::III();
    case 2: return mod_floor(A / 4, 4) == 3 ? KodairaType::InStar(2) : KodairaType::InStar(3);
    case 3: return KodairaType::IIIStar();
    default: throw std::invalid_argument("kodaira_fast_j1728: A is not fourth-power-free at 2");
    }
}

KodairaType kodaira_fast_j0(i128 B) {
    const int v = valuation(B, 3);
    auto plus_minus_one_mod9 = [](i128 x) {
        i128 r = mod_floor(x, 9);
        return r == 1 || r == 8;
    };
    switch (v) {
    case 0:
    case 1: return plus_minus_one_mod9(B) ? KodairaType::III() : KodairaType::II();
    case 2: return KodairaType::IV();
    case 3: return plus_minus_one_mod9(B / 27) ? KodairaType::IIIStar() : KodairaType::IVStar();
    case 4: return KodairaType::IVStar();
    case 5: return KodairaType::IIStar();
    default: throw std::invalid_argument("kodaira_fast_j0: B is not sixth-power-free at 3");
    }
}

std::string ExceptionalCurve::isogeny_class() const {
    return label.substr(0, label.find_last_not_of("0123456789") + 1);
}

std::span<const ExceptionalCurve> exceptional_curves() {
    using G = IsogenyTorsionGraph;
    using T = TorsionGroup;
    using K = KodairaType;
    static const std::array<ExceptionalCurve, 8> curves = {{
        {"27.a3", Family::J0, {0, 0, 1, 0, -7}, {0, -432}, K::IVStar(), T::Z3, std::nullopt},
        {"27.a4", Family::J0, {0, 0, 1, 0, 0}, {0, 16}, K::II(), T::Z3, std::nullopt},
        {"36.a3", Family::J0, {0, 0, 0, 0, -27}, {0, -27}, K::IIIStar(), T::Z2, std::nullopt},
        {"36.a4", Family::J0, {0, 0, 0, 0, 1}, {0, 1}, K::III(), T::Z6, std::nullopt},
        {"32.a3", Family::J1728, {0, 0, 0, -1, 0}, {-1, 0}, K::III(), T::Z2xZ2, G::T41},
        {"32.a4", Family::J1728, {0, 0, 0, 4, 0}, {4, 0}, K::InStar(3), T::Z4, G::T41},
        {"64.a3", Family::J1728, {0, 0, 0, -4, 0}, {-4, 0}, K::InStar(2), T::Z2xZ2, G::T42},
        {"64.a4", Family::J1728, {0, 0, 0, 1, 0}, {1, 0}, K::II(), T::Z2, G::T42},
    }};
    return curves;
}

} // namespace knstat
