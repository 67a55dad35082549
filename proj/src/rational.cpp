#include "cms/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cms {

std::string rat_to_string(const Rat& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

Rat rat_from_string(const std::string& text) {
    size_t pos = 0;
    auto bad = [&]() { throw std::invalid_argument("not a rational: '" + text + "'"); };
    if (text.empty()) bad();

    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](BigInt& out) {
        size_t start = pos;
        out = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out = out * 10 + (text[pos] - '0');
            ++pos;
        }
        return pos > start;
    };

    BigInt whole;
    if (!digits(whole)) bad();
    Rat value(whole);
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        BigInt frac;
        size_t start = pos;
        if (!digits(frac)) bad();
        BigInt scale = 1;
        for (size_t i = start; i < pos; ++i) scale *= 10;
        value += Rat(frac, scale);
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        BigInt den;
        if (!digits(den) || den == 0) bad();
        value = Rat(whole, den);
    }
    if (pos != text.size()) bad();
    return negative ? Rat(-value) : value;
}

}  // namespace cms
