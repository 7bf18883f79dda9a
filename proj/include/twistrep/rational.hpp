#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace twistrep {

namespace detail {

using Wide = __int128;
using UWide = unsigned __int128;

inline UWide wide_abs(Wide x) { return x < 0 ? -static_cast<UWide>(x) : static_cast<UWide>(x); }

inline UWide wide_gcd(UWide a, UWide b) {
    while (b != 0) {
        UWide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

/// Exact rational number with 64-bit numerator and denominator, always stored
/// normalized (coprime, denominator positive). All arithmetic runs through
/// 128-bit intermediates and throws std::overflow_error if a reduced result
/// leaves the 64-bit range, so results are exact or loudly absent. The values
/// arising here (lattice pairings, series coefficients, degrees) stay tiny;
/// the checked fixed width is dramatically faster than arbitrary precision.
class Rat {
public:
    constexpr Rat() = default;
    template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
    constexpr Rat(T n) : n_(static_cast<std::int64_t>(n)) {}  // NOLINT: implicit by design
    template <typename T, typename U,
              typename = std::enable_if_t<std::is_integral_v<T> && std::is_integral_v<U>>>
    Rat(T num, U den) {
        *this = make(static_cast<detail::Wide>(num), static_cast<detail::Wide>(den));
    }

    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(static_cast<detail::Wide>(a.n_) * b.d_ + static_cast<detail::Wide>(b.n_) * a.d_,
                    static_cast<detail::Wide>(a.d_) * b.d_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(static_cast<detail::Wide>(a.n_) * b.d_ - static_cast<detail::Wide>(b.n_) * a.d_,
                    static_cast<detail::Wide>(a.d_) * b.d_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(static_cast<detail::Wide>(a.n_) * b.n_,
                    static_cast<detail::Wide>(a.d_) * b.d_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.n_ == 0) throw std::domain_error("rational division by zero");
        return make(static_cast<detail::Wide>(a.n_) * b.d_,
                    static_cast<detail::Wide>(a.d_) * b.n_);
    }
    Rat operator-() const {
        Rat r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<detail::Wide>(a.n_) * b.d_ < static_cast<detail::Wide>(b.n_) * a.d_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

private:
    static Rat make(detail::Wide num, detail::Wide den) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        detail::UWide g = detail::wide_gcd(detail::wide_abs(num), static_cast<detail::UWide>(den));
        if (g > 1) {
            num /= static_cast<detail::Wide>(g);
            den /= static_cast<detail::Wide>(g);
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw std::overflow_error("rational arithmetic overflow");
        Rat r;
        r.n_ = static_cast<std::int64_t>(num);
        r.d_ = static_cast<std::int64_t>(den);
        return r;
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
};

using Int = std::int64_t;

inline Int numerator(const Rat& r) { return r.num(); }
inline Int denominator(const Rat& r) { return r.den(); }

inline Rat make_rat(long num, long den = 1) { return Rat(num, den); }

// "p/q" with the denominator omitted when it is 1.
inline std::string rat_to_string(const Rat& r) {
    std::string s = std::to_string(r.num());
    if (r.den() != 1) s += "/" + std::to_string(r.den());
    return s;
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline bool is_integer(const Rat& r) { return r.den() == 1; }

// Floor of a rational, rounding toward -infinity.
inline Int rat_floor(const Rat& r) {
    Int q = r.num() / r.den();
    if (r.num() < 0 && q * r.den() != r.num()) --q;
    return q;
}

}  // namespace twistrep
