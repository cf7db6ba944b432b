#include "faraday/half_int.hpp"

#include <cmath>

namespace faraday {

HalfInt HalfInt::from_double(double v) {
    const double doubled = 2.0 * v;
    const double rounded = std::round(doubled);
    if (!std::isfinite(doubled) || std::abs(doubled - rounded) > 1e-9)
        throw std::invalid_argument("value " + std::to_string(v) +
                                    " is not representable as a half-integer");
    return from_twice((int)rounded);
}

HalfInt HalfInt::parse(const std::string& text) {
    const auto bad = [&] {
        return std::invalid_argument("cannot parse half-integer from '" + text + "'");
    };
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t pos = 0;
            int whole = std::stoi(text, &pos);
            if (pos != text.size()) throw bad();
            return HalfInt(whole);
        }
        std::size_t pos = 0;
        int num = std::stoi(text.substr(0, slash), &pos);
        if (pos != slash) throw bad();
        std::string den = text.substr(slash + 1);
        if (den != "2") throw bad();
        return from_twice(num);
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
}

std::string HalfInt::str() const {
    if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

} // namespace faraday
