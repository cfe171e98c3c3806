#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hochcalc {

/// Exact rational scalar. Arbitrary precision; no floating point anywhere.
class Rat {
public:
    using Big = boost::multiprecision::cpp_rational;

    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(Big(num) / Big(den)) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    }
    explicit Rat(Big v) : v_(std::move(v)) {}

    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }

    /// Parses "n" or "n/d" with arbitrary-precision integers.
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rat(Big(boost::multiprecision::cpp_int(s)));
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("Rat: zero denominator in " + s);
        return Rat(Big(num) / Big(den));
    }

    std::string str() const {
        if (denominator(v_) == 1) return numerator(v_).str();
        return numerator(v_).str() + "/" + denominator(v_).str();
    }

    bool is_zero() const { return v_ == 0; }
    Rat operator-() const { return Rat(Big(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(Big(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(Big(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(Big(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(Big(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat inv() const { return Rat(1) / *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }

private:
    Big v_;
};

/// Residue-class scalar modulo a prime. The modulus travels with the value;
/// mixed-modulus arithmetic is a programming error and throws.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    static Fp from_long(long n, std::uint64_t p) {
        long r = n % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    static Fp parse(const std::string& s, std::uint64_t p) {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            boost::multiprecision::cpp_int n(s);
            boost::multiprecision::cpp_int r = n % p;
            if (r < 0) r += p;
            return Fp(r.convert_to<std::uint64_t>(), p);
        }
        Fp num = parse(s.substr(0, slash), p);
        Fp den = parse(s.substr(slash + 1), p);
        return num / den;
    }

    std::string str() const { return std::to_string(v_); }

    bool is_zero() const { return v_ == 0; }
    std::uint64_t modulus() const { return p_; }

    Fp operator-() const { return p_ == 0 ? *this : Fp(p_ - v_, p_); }
    Fp operator+(const Fp& o) const { auto p = join(o); return Fp((v_ + o.v_) % p, p); }
    Fp operator-(const Fp& o) const { auto p = join(o); return Fp((v_ + p - o.v_) % p, p); }
    Fp operator*(const Fp& o) const { auto p = join(o); return Fp((v_ * o.v_) % p, p); }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    Fp inv() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid; p_ is prime so gcd(v_, p_) = 1
        long long t = 0, newt = 1;
        long long r = static_cast<long long>(p_), newr = static_cast<long long>(v_);
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (t < 0) t += static_cast<long long>(p_);
        return Fp(static_cast<std::uint64_t>(t), p_);
    }

    bool operator==(const Fp& o) const { return v_ == o.v_ && (p_ == o.p_ || p_ == 0 || o.p_ == 0); }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    bool operator<(const Fp& o) const { return v_ < o.v_; }

private:
    std::uint64_t join(const Fp& o) const {
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
            throw std::invalid_argument("Fp: mixed moduli");
        return p_ != 0 ? p_ : o.p_;
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

/// Field trait glue used by the generic layers. FieldCtx carries whatever is
/// needed to mint constants of the field (nothing for Q, the modulus for F_p).
template <class K> struct FieldCtx;

template <> struct FieldCtx<Rat> {
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat of_long(long n) const { return Rat(n); }
    Rat parse(const std::string& s) const { return Rat::parse(s); }
    std::string name() const { return "Q"; }
    std::uint64_t characteristic() const { return 0; }
};

template <> struct FieldCtx<Fp> {
    std::uint64_t p = 0;
    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp of_long(long n) const { return Fp::from_long(n, p); }
    Fp parse(const std::string& s) const { return Fp::parse(s, p); }
    std::string name() const { return "F" + std::to_string(p); }
    std::uint64_t characteristic() const { return p; }
};

/// (-1)^e as a field element; exponents may be negative.
template <class K>
K sign_of(long e, const FieldCtx<K>& F) {
    return ((e % 2) + 2) % 2 == 0 ? F.one() : -F.one();
}

inline int sign_int(long e) { return ((e % 2) + 2) % 2 == 0 ? 1 : -1; }

} // namespace hochcalc
