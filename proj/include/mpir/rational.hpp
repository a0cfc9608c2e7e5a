#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mpir {

// Exact rational on int64 with 128-bit intermediates. All capacity and rate
// formulas at desk scale fit comfortably; narrowing overflow throws instead
// of silently wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    static Rational pow(const Rational& base, int e) {
        Rational r(1);
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_integer() const { return den_ == 1; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // "p/q" or bare integer.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    void assign(long long n, long long d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    static Rational from128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 a = n < 0 ? -n : n;
        i128 b = d;
        while (b) { i128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        constexpr i128 kMax = INT64_MAX;
        if (n > kMax || -n > kMax || d > kMax)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    long long num_;
    long long den_;
};

// C(n, k) as long long; zero outside the triangle.
inline long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

inline long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace mpir
