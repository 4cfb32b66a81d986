#pragma once
// Exact arithmetic in Z[tau] and in the planar coordinate field spanned by
// {1, tau, s, s*tau} with s = sin 72 deg.

#include <cstdint>
#include <compare>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rph {

/// Raised when a 64-bit component would overflow.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

inline constexpr double kTau = 1.6180339887498948482;
inline const double kSin72 = std::sin(2.0 * M_PI / 5.0);

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

}  // namespace detail

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

/// The number a + b*tau with integer a, b.
struct GoldenInt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr GoldenInt() = default;
    constexpr GoldenInt(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

    static constexpr GoldenInt tau() { return {0, 1}; }

    double to_double() const { return static_cast<double>(a) + static_cast<double>(b) * kTau; }

    friend constexpr bool operator==(const GoldenInt&, const GoldenInt&) = default;
    friend constexpr auto operator<=>(const GoldenInt&, const GoldenInt&) = default;

    friend GoldenInt operator+(GoldenInt x, GoldenInt y) {
        return {detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b)};
    }
    friend GoldenInt operator-(GoldenInt x, GoldenInt y) {
        return {detail::checked_sub(x.a, y.a), detail::checked_sub(x.b, y.b)};
    }
    friend GoldenInt operator-(GoldenInt x) { return GoldenInt{} - x; }

    // (a + b t)(c + d t) = ac + (ad + bc) t + bd t^2,  t^2 = t + 1
    friend GoldenInt operator*(GoldenInt x, GoldenInt y) {
        using namespace detail;
        const std::int64_t ac = checked_mul(x.a, y.a);
        const std::int64_t bd = checked_mul(x.b, y.b);
        const std::int64_t cross = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
        return {checked_add(ac, bd), checked_add(cross, bd)};
    }

    GoldenInt& operator+=(GoldenInt o) { return *this = *this + o; }
    GoldenInt& operator-=(GoldenInt o) { return *this = *this - o; }
    GoldenInt& operator*=(GoldenInt o) { return *this = *this * o; }
};

inline GoldenInt gold_mul(GoldenInt x, GoldenInt y) { return x * y; }

/// Galois conjugate tau -> 1 - tau.
inline GoldenInt gold_conj(GoldenInt x) {
    return {detail::checked_add(x.a, x.b), detail::checked_sub(0, x.b)};
}

/// Exact sign of a + b*tau. Uses 2(a + b tau) = (2a + b) + b sqrt5.
inline Sign gold_sign(GoldenInt x) {
    const __int128 m = static_cast<__int128>(x.a) * 2 + x.b;
    const __int128 b = x.b;
    auto sgn = [](__int128 v) { return v > 0 ? Sign::positive : (v < 0 ? Sign::negative : Sign::zero); };
    if (m >= 0 && b >= 0) return (m == 0 && b == 0) ? Sign::zero : Sign::positive;
    if (m <= 0 && b <= 0) return Sign::negative;
    // opposite signs: compare m^2 with 5 b^2 (both fit comfortably in 128 bits)
    const __int128 lhs = m * m;
    const __int128 rhs = b * b * 5;
    return m > 0 ? sgn(lhs - rhs) : sgn(rhs - lhs);
}

inline int sign_int(Sign s) { return static_cast<int>(s); }

inline std::ostream& operator<<(std::ostream& os, const GoldenInt& x) {
    return os << '(' << x.a << (x.b < 0 ? " - " : " + ") << (x.b < 0 ? -x.b : x.b) << "t)";
}

/// Exact planar point. Module coordinates have x in (1/2) Z[tau] and y in s Z[tau],
/// so the value is stored as (2x, y/s).
struct GoldenCoord {
    GoldenInt x2;
    GoldenInt ys;

    friend bool operator==(const GoldenCoord&, const GoldenCoord&) = default;

    friend GoldenCoord operator+(const GoldenCoord& p, const GoldenCoord& q) { return {p.x2 + q.x2, p.ys + q.ys}; }
    friend GoldenCoord operator-(const GoldenCoord& p, const GoldenCoord& q) { return {p.x2 - q.x2, p.ys - q.ys}; }
    friend GoldenCoord operator*(GoldenInt k, const GoldenCoord& p) { return {k * p.x2, k * p.ys}; }

    double x() const { return 0.5 * x2.to_double(); }
    double y() const { return kSin72 * ys.to_double(); }

    /// 4|p|^2, using s^2 = (tau + 2) / 4.
    GoldenInt norm2_x4() const { return x2 * x2 + GoldenInt{2, 1} * ys * ys; }
};

/// Sign of the planar cross product p x q. cross = (s/2)(p.x2 q.ys - p.ys q.x2) and s > 0.
inline Sign cross_sign(const GoldenCoord& p, const GoldenCoord& q) {
    return gold_sign(p.x2 * q.ys - p.ys * q.x2);
}

/// Twice the signed area spanned by p and q, as a multiple of s/2: 2*cross = s * value / 1.
/// Returned value v satisfies cross(p, q) = v * s / 2.
inline GoldenInt cross_scaled(const GoldenCoord& p, const GoldenCoord& q) { return p.x2 * q.ys - p.ys * q.x2; }

/// Orientation of r relative to the directed line p -> q.
inline Sign orient(const GoldenCoord& p, const GoldenCoord& q, const GoldenCoord& r) {
    return cross_sign(q - p, r - p);
}

}  // namespace rph

template <>
struct std::hash<rph::GoldenInt> {
    std::size_t operator()(const rph::GoldenInt& x) const noexcept {
        return std::hash<std::int64_t>{}(x.a) * 0x9e3779b97f4a7c15ULL ^ std::hash<std::int64_t>{}(x.b);
    }
};
