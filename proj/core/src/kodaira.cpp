#include "knstat/kodaira.hpp"

#include <cctype>
#include <stdexcept>

namespace knstat {

namespace {

std::string subscript(int n) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄",
                                   "₅", "₆", "₇", "₈", "₉"};
    std::string text = std::to_string(n);
    std::string out;
    for (char c : text) {
        out += digits[c - '0'];
    }
    return out;
}

} // namespace

KodairaType KodairaType::make(Kind kind, int n) {
    bool indexed = kind == Kind::In || kind == Kind::InStar;
    if (indexed && n < 1) {
        throw std::invalid_argument("I_n and I_n* need n >= 1");
    }
    if (!indexed && n != 0) {
        throw std::invalid_argument("only I_n and I_n* carry an index");
    }
    return {kind, n};
}

std::string KodairaType::to_string() const {
    switch (kind_) {
    case Kind::I0: return "I0";
    case Kind::In: return "I" + std::to_string(n_);
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::I0Star: return "I0*";
    case Kind::InStar: return "I" + std::to_string(n_) + "*";
    case Kind::IVStar: return "IV*";
    case Kind::IIIStar: return "III*";
    case Kind::IIStar: return "II*";
    }
    return "?";
}

std::string KodairaType::to_unicode() const {
    static const std::string star = "∗";
    switch (kind_) {
    case Kind::I0: return "I" + subscript(0);
    case Kind::In: return "I" + subscript(n_);
    case Kind::I0Star: return "I" + subscript(0) + star;
    case Kind::InStar: return "I" + subscript(n_) + star;
    case Kind::IVStar: return "IV" + star;
    case Kind::IIIStar: return "III" + star;
    case Kind::IIStar: return "II" + star;
    default: return to_string();
    }
}

KodairaType KodairaType::parse(std::string_view text) {
    auto fail = [&]() -> KodairaType {
        throw std::invalid_argument("unknown Kodaira symbol '" + std::string(text) + "'");
    };
    bool starred = !text.empty() && text.back() == '*';
    std::string_view body = starred ? text.substr(0, text.size() - 1) : text;
    if (body == "II") {
        return starred ? IIStar() : II();
    }
    if (body == "III") {
        return starred ? IIIStar() : III();
    }
    if (body == "IV") {
        return starred ? IVStar() : IV();
    }
    if (body.size() < 2 || body[0] != 'I') {
        return fail();
    }
    int n = 0;
    for (char c : body.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || n > 1'000'000) {
            return fail();
        }
        n = n * 10 + (c - '0');
    }
    if (n == 0) {
        return starred ? I0Star() : I0();
    }
    return starred ? InStar(n) : In(n);
}

} // namespace knstat
