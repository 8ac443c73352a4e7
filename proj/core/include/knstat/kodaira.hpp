#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace knstat {

/// Kodaira-Neron symbol. I_n and I_n^* carry n >= 1; every other kind has
/// index 0. Ordering is the canonical report ordering.
class KodairaType {
  public:
    enum class Kind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

    constexpr KodairaType() = default;
    static KodairaType make(Kind kind, int n = 0);

    static constexpr KodairaType I0() { return KodairaType(Kind::I0, 0); }
    static KodairaType In(int n) { return make(Kind::In, n); }
    static constexpr KodairaType II() { return KodairaType(Kind::II, 0); }
    static constexpr KodairaType III() { return KodairaType(Kind::III, 0); }
    static constexpr KodairaType IV() { return KodairaType(Kind::IV, 0); }
    static constexpr KodairaType I0Star() { return KodairaType(Kind::I0Star, 0); }
    static KodairaType InStar(int n) { return make(Kind::InStar, n); }
    static constexpr KodairaType IVStar() { return KodairaType(Kind::IVStar, 0); }
    static constexpr KodairaType IIIStar() { return KodairaType(Kind::IIIStar, 0); }
    static constexpr KodairaType IIStar() { return KodairaType(Kind::IIStar, 0); }

    Kind kind() const { return kind_; }
    int index() const { return n_; }

    /// ASCII rendering: I0, I5, II, III, IV, I0*, I3*, IV*, III*, II*.
    std::string to_string() const;
    /// Starred symbols with a superscript asterisk, subscripted indices.
    std::string to_unicode() const;
    /// Inverse of to_string(); throws std::invalid_argument.
    static KodairaType parse(std::string_view text);

    friend constexpr bool operator==(const KodairaType&, const KodairaType&) = default;
    friend constexpr std::strong_ordering operator<=>(const KodairaType&,
                                                      const KodairaType&) = default;

  private:
    constexpr KodairaType(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_ = Kind::I0;
    int n_ = 0;
};

} // namespace knstat
