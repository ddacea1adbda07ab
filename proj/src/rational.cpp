#include "leibcheck/rational.hpp"

#include <stdexcept>

namespace leibcheck {

Rational parse_rational(std::string_view text) {
    auto bad = [&] {
        return std::invalid_argument("bad rational literal: '" + std::string(text) + "'");
    };
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos) throw bad();
    text = text.substr(begin, end - begin + 1);

    auto is_integer = [](std::string_view s) {
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };

    using Int = boost::multiprecision::cpp_int;
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer(text)) throw bad();
        return Rational(Int{std::string(text)});
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_integer(num) || !is_integer(den)) throw bad();
    Int d{std::string(den)};
    if (d == 0) throw bad();
    return Rational(Int{std::string(num)}, d);
}

std::string rational_str(const Rational& value) {
    return value.str();
}

} // namespace leibcheck
