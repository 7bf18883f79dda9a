#pragma once

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

#include "twistrep/rational.hpp"

namespace twistrep {

/// Element of the 8th cyclotomic field Q(zeta), zeta = primitive 8th root of
/// unity, stored as exact rational coordinates over the basis {1, zeta,
/// zeta^2, zeta^3} with zeta^4 = -1. zeta^2 plays the role of sqrt(-1).
class Cyc8 {
public:
    Cyc8() = default;
    Cyc8(const Rat& rational) { c_[0] = rational; }  // NOLINT: implicit by design
    Cyc8(long n) { c_[0] = n; }                      // NOLINT

    static Cyc8 zeta_pow(long k) {
        k %= 8;
        if (k < 0) k += 8;
        Cyc8 z;
        z.c_[0] = 0;
        z.c_[static_cast<size_t>(k % 4)] = (k < 4) ? 1 : -1;
        return z;
    }

    static Cyc8 sqrt_minus_one() { return zeta_pow(2); }

    const Rat& coord(int i) const { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    const Rat& rational_part() const { return c_[0]; }

    friend bool operator==(const Cyc8& a, const Cyc8& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Cyc8& a, const Cyc8& b) { return !(a == b); }

    Cyc8 operator-() const {
        Cyc8 r;
        for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
        return r;
    }
    friend Cyc8 operator+(const Cyc8& a, const Cyc8& b) {
        Cyc8 r;
        for (int i = 0; i < 4; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend Cyc8 operator-(const Cyc8& a, const Cyc8& b) { return a + (-b); }
    friend Cyc8 operator*(const Cyc8& a, const Cyc8& b) {
        // zeta^{i+j} with zeta^4 = -1.
        Cyc8 r;
        for (int i = 0; i < 4; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (b.c_[j] == 0) continue;
                Rat prod = a.c_[i] * b.c_[j];
                int k = i + j;
                if (k >= 4) {
                    k -= 4;
                    prod = -prod;
                }
                r.c_[static_cast<size_t>(k)] += prod;
            }
        }
        return r;
    }
    Cyc8& operator+=(const Cyc8& o) { return *this = *this + o; }
    Cyc8& operator-=(const Cyc8& o) { return *this = *this - o; }
    Cyc8& operator*=(const Cyc8& o) { return *this = *this * o; }

    /// Galois conjugate zeta -> zeta^k, k odd in {1,3,5,7}.
    Cyc8 galois(int k) const {
        Cyc8 r;
        r.c_[0] = c_[0];
        for (int i = 1; i < 4; ++i) {
            if (c_[i] == 0) continue;
            int e = (i * k) % 8;
            Rat v = c_[i];
            if (e >= 4) {
                e -= 4;
                v = -v;
            }
            r.c_[static_cast<size_t>(e)] += v;
        }
        return r;
    }

    Cyc8 inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in Q(zeta_8)");
        Cyc8 adj = galois(3) * galois(5) * galois(7);
        Cyc8 norm = *this * adj;  // the field norm, a nonzero rational
        if (!norm.is_rational()) throw std::logic_error("cyclotomic norm is not rational");
        Cyc8 r;
        for (int i = 0; i < 4; ++i) r.c_[i] = adj.c_[i] / norm.c_[0];
        return r;
    }
    friend Cyc8 operator/(const Cyc8& a, const Cyc8& b) { return a * b.inverse(); }

    bool operator<(const Cyc8& o) const { return c_ < o.c_; }  // ordering for maps only

    std::string to_string() const {
        static const char* names[4] = {"", "z", "z^2", "z^3"};
        std::string out;
        for (int i = 0; i < 4; ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty() && c_[i] > 0) out += "+";
            if (i == 0) {
                out += rat_to_string(c_[0]);
            } else if (c_[i] == 1) {
                out += names[i];
            } else if (c_[i] == -1) {
                out += std::string("-") + names[i];
            } else {
                out += rat_to_string(c_[i]) + "*" + names[i];
            }
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyc8& x) {
        return os << x.to_string();
    }

private:
    std::array<Rat, 4> c_{};
};

}  // namespace twistrep
