// Exact rational arithmetic and closed probability intervals.
//
// All probability values in the library are exact rationals; decimal text is
// converted to an exact fraction on input and rendered back to a fixed number
// of decimal places only for display.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace palc {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Parses a plain decimal literal ("0.95", "12", "1.") into an exact rational.
// Returns nullopt on malformed input; never loses precision.
inline std::optional<Rat> rat_from_decimal(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    BigInt numer = 0;
    BigInt denom = 1;
    bool any_digit = false;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            numer = numer * 10 + (c - '0');
            if (seen_dot) denom *= 10;
            any_digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    if (neg) numer = -numer;
    return Rat(numer, denom);
}

// Renders a rational in its exact form: "3", "19/20", "-1/2".
inline std::string rat_to_string(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) {
        s += "/";
        s += rat_den(r).str();
    }
    return s;
}

// Fixed-point decimal rendering, rounded to nearest (ties away from zero).
// Used only for display next to the exact form.
inline std::string rat_to_decimal(const Rat& r, unsigned digits = 4) {
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    BigInt num = rat_num(r) * scale * 2 + (r < 0 ? -rat_den(r) : rat_den(r));
    BigInt scaled = num / (rat_den(r) * 2);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string body = scaled.str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = neg ? "-" : "";
    out += body.substr(0, body.size() - digits);
    if (digits > 0) {
        out += ".";
        out += body.substr(body.size() - digits);
    }
    return out;
}

// A closed subinterval of [0, 1] with exact rational endpoints.
struct Interval {
    Rat lo;
    Rat hi;

    Interval() : lo(0), hi(1) {}
    Interval(Rat low, Rat high) : lo(std::move(low)), hi(std::move(high)) {
        if (lo < 0 || hi > 1 || lo > hi)
            throw std::invalid_argument("interval endpoints must satisfy 0 <= lo <= hi <= 1");
    }

    static Interval full() { return Interval(); }
    static Interval point(const Rat& v) { return Interval(v, v); }
    static Interval zero() { return Interval(0, 0); }
    static Interval one() { return Interval(1, 1); }

    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }

    // The interval of 1 - x for x in this interval.
    Interval dual() const { return Interval(Rat(1) - hi, Rat(1) - lo); }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
    bool operator!=(const Interval& o) const { return !(*this == o); }

    std::string to_string() const {
        return "[" + rat_to_string(lo) + ", " + rat_to_string(hi) + "]";
    }
    std::string to_decimal_string(unsigned digits = 4) const {
        return "[" + rat_to_decimal(lo, digits) + ", " + rat_to_decimal(hi, digits) + "]";
    }
};

// Intersection of two intervals; nullopt signals an empty intersection.
inline std::optional<Interval> interval_intersect(const Interval& a, const Interval& b) {
    Rat lo = a.lo > b.lo ? a.lo : b.lo;
    Rat hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo > hi) return std::nullopt;
    return Interval(lo, hi);
}

}  // namespace palc
