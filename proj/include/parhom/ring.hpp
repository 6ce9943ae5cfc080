// Exact scalar rings: arbitrary-precision integers, rationals, prime fields.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace parhom {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};
struct RingMismatch : Error {
    explicit RingMismatch(const std::string& m = "ring mismatch") : Error(m) {}
};
struct MatrixTooLarge : Error {
    explicit MatrixTooLarge(const std::string& m) : Error(m) {}
};
struct GroupTooLarge : Error {
    explicit GroupTooLarge(const std::string& m) : Error(m) {}
};

enum class RingKind { Integers, Rationals, PrimeField };

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Ring tag carried by every Scalar and ExactMatrix.
class Ring {
  public:
    static Ring Z() { return Ring(RingKind::Integers, 0); }
    static Ring Q() { return Ring(RingKind::Rationals, 0); }
    static Ring GF(std::int64_t p) {
        if (!is_prime(p)) throw Error("GF(p): p must be prime, got " + std::to_string(p));
        return Ring(RingKind::PrimeField, p);
    }

    RingKind kind() const { return kind_; }
    std::int64_t prime() const { return p_; }
    bool is_field() const { return kind_ != RingKind::Integers; }

    std::string name() const {
        switch (kind_) {
            case RingKind::Integers: return "Z";
            case RingKind::Rationals: return "Q";
            default: return "GF(" + std::to_string(p_) + ")";
        }
    }

    bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

  private:
    Ring(RingKind k, std::int64_t p) : kind_(k), p_(p) {}
    RingKind kind_;
    std::int64_t p_;
};

inline void require_same_ring(const Ring& a, const Ring& b) {
    if (a != b) throw RingMismatch("ring mismatch: " + a.name() + " vs " + b.name());
}

/// Exact scalar: a value in Z, Q or GF(p).  GF(p) values are canonical
/// residues in [0, p).
class Scalar {
  public:
    Scalar() : ring_(Ring::Q()), v_(0) {}
    Scalar(Ring ring, Rat v) : ring_(ring), v_(std::move(v)) { canon(); }
    static Scalar zero(Ring r) { return Scalar(r, 0); }
    static Scalar one(Ring r) { return Scalar(r, 1); }
    static Scalar of(Ring r, long v) { return Scalar(r, Rat(v)); }

    const Ring& ring() const { return ring_; }
    const Rat& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return boost::multiprecision::denominator(v_) == 1; }
    Int as_int() const {
        if (!is_integer()) throw Error("scalar is not an integer: " + str());
        return boost::multiprecision::numerator(v_);
    }

    Scalar operator+(const Scalar& o) const { return bin(o, v_ + o.v_); }
    Scalar operator-(const Scalar& o) const { return bin(o, v_ - o.v_); }
    Scalar operator*(const Scalar& o) const { return bin(o, v_ * o.v_); }
    Scalar operator-() const { return Scalar(ring_, -v_); }

    Scalar inverse() const {
        if (v_ == 0) throw Error("division by zero");
        switch (ring_.kind()) {
            case RingKind::Rationals: return Scalar(ring_, 1 / v_);
            case RingKind::PrimeField: {
                Int inv = mod_inverse(boost::multiprecision::numerator(v_), ring_.prime());
                return Scalar(ring_, Rat(inv));
            }
            default:
                if (v_ == 1 || v_ == -1) return *this;
                throw Error("non-unit integer has no inverse: " + str());
        }
    }

    bool operator==(const Scalar& o) const { return ring_ == o.ring_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const { return v_.str(); }

    /// Parse "p/q" or integer text in the given ring.
    static Scalar parse(Ring r, const std::string& text) {
        Rat v;
        try {
            v = Rat(text);
        } catch (...) {
            throw Error("cannot parse scalar '" + text + "'");
        }
        if (r.kind() != RingKind::Rationals && boost::multiprecision::denominator(v) != 1)
            throw Error("non-integer scalar '" + text + "' in ring " + r.name());
        return Scalar(r, v);
    }

  private:
    Scalar bin(const Scalar& o, Rat v) const {
        require_same_ring(ring_, o.ring_);
        return Scalar(ring_, std::move(v));
    }
    void canon() {
        if (ring_.kind() == RingKind::PrimeField) {
            Int p = ring_.prime();
            Int num = boost::multiprecision::numerator(v_);
            Int den = boost::multiprecision::denominator(v_);
            if (den != 1) num *= mod_inverse(den, ring_.prime());
            Int r = num % p;
            if (r < 0) r += p;
            v_ = Rat(r);
        }
    }
    static Int mod_inverse(Int a, std::int64_t p) {
        Int r = a % p;
        if (r < 0) r += p;
        if (r == 0) throw Error("division by zero mod p");
        // extended Euclid
        Int t = 0, newt = 1, q = p, newq = r;
        while (newq != 0) {
            Int quot = q / newq;
            Int tmp = t - quot * newt;
            t = newt; newt = tmp;
            tmp = q - quot * newq;
            q = newq; newq = tmp;
        }
        if (t < 0) t += p;
        return t;
    }

    Ring ring_;
    Rat v_;
};

}  // namespace parhom
