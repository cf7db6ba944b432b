#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace faraday {

// Angular momentum quantum number stored as twice its value, so that
// half-integers like 7/2 are exact and never compared through floats.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    // Accepts values that are exactly representable as n/2.
    static HalfInt from_double(double v);

    // Parses "4", "-3" or "7/2".
    static HalfInt parse(const std::string& text);

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    std::string str() const;

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
    friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice_ != b.twice_; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }
    friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice_ <= b.twice_; }
    friend constexpr bool operator>(HalfInt a, HalfInt b) { return a.twice_ > b.twice_; }
    friend constexpr bool operator>=(HalfInt a, HalfInt b) { return a.twice_ >= b.twice_; }

private:
    int twice_ = 0;
};

constexpr HalfInt abs(HalfInt a) {
    return a.twice() < 0 ? HalfInt::from_twice(-a.twice()) : a;
}

// True when j is usable as a magnitude: j >= 0.
constexpr bool valid_magnitude(HalfInt j) { return j.twice() >= 0; }

// True when (j, m) is a valid angular momentum pair: |m| <= j and j - m whole.
constexpr bool valid_jm(HalfInt j, HalfInt m) {
    return valid_magnitude(j) && abs(m) <= j && (j - m).twice() % 2 == 0;
}

} // namespace faraday
