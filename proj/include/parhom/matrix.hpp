// Dense exact matrices over Z, Q, GF(p).
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "ring.hpp"

namespace parhom {

/// Hard cap on rows*cols for any single matrix; exceeding it raises
/// MatrixTooLarge instead of thrashing.
inline constexpr std::size_t kMaxMatrixEntries = 12'000'000;

namespace detail {
inline std::int64_t fmod_pos(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}
inline std::int64_t fmul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}
inline std::int64_t finv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = fmod_pos(a, p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw Error("not invertible mod p");
    return fmod_pos(t, p);
}
}  // namespace detail

class ExactMatrix {
  public:
    using ZVec = std::vector<Int>;
    using QVec = std::vector<Rat>;
    using FVec = std::vector<std::int64_t>;

    ExactMatrix() : ring_(Ring::Q()), r_(0), c_(0), d_(QVec{}) {}

    ExactMatrix(Ring ring, std::size_t rows, std::size_t cols)
        : ring_(ring), r_(rows), c_(cols) {
        check_size(rows, cols);
        switch (ring.kind()) {
            case RingKind::Integers: d_ = ZVec(rows * cols); break;
            case RingKind::Rationals: d_ = QVec(rows * cols); break;
            case RingKind::PrimeField: d_ = FVec(rows * cols, 0); break;
        }
    }

    static ExactMatrix identity(Ring ring, std::size_t n) {
        ExactMatrix m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static ExactMatrix from_rows(Ring ring,
                                 std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        ExactMatrix m(ring, r, c);
        std::size_t i = 0;
        for (auto& row : rows) {
            if (row.size() != c) throw Error("ragged matrix literal");
            std::size_t j = 0;
            for (long v : row) m.set(i, j++, v);
            ++i;
        }
        return m;
    }

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Scalar at(std::size_t i, std::size_t j) const {
        idx_check(i, j);
        switch (ring_.kind()) {
            case RingKind::Integers: return Scalar(ring_, Rat(z()[i * c_ + j]));
            case RingKind::Rationals: return Scalar(ring_, q()[i * c_ + j]);
            default: return Scalar(ring_, Rat(f()[i * c_ + j]));
        }
    }

    bool entry_zero(std::size_t i, std::size_t j) const {
        switch (ring_.kind()) {
            case RingKind::Integers: return z()[i * c_ + j] == 0;
            case RingKind::Rationals: return q()[i * c_ + j] == 0;
            default: return f()[i * c_ + j] == 0;
        }
    }

    void set(std::size_t i, std::size_t j, const Scalar& v) {
        idx_check(i, j);
        require_same_ring(ring_, v.ring());
        switch (ring_.kind()) {
            case RingKind::Integers: z()[i * c_ + j] = v.as_int(); break;
            case RingKind::Rationals: q()[i * c_ + j] = v.value(); break;
            default:
                f()[i * c_ + j] = detail::fmod_pos(
                    static_cast<std::int64_t>(v.as_int()), ring_.prime());
                break;
        }
    }
    void set(std::size_t i, std::size_t j, long v) { set(i, j, Scalar::of(ring_, v)); }
    void add_to(std::size_t i, std::size_t j, const Scalar& v) {
        set(i, j, at(i, j) + v);
    }

    ExactMatrix operator+(const ExactMatrix& o) const { return addsub(o, +1); }
    ExactMatrix operator-(const ExactMatrix& o) const { return addsub(o, -1); }

    ExactMatrix operator*(const ExactMatrix& o) const {
        require_same_ring(ring_, o.ring_);
        if (c_ != o.r_) throw Error("matrix product shape mismatch");
        ExactMatrix out(ring_, r_, o.c_);
        // Row-major product with zero-skip on the left factor.
        switch (ring_.kind()) {
            case RingKind::Integers: mul_kernel(z(), o.z(), out.z(), o); break;
            case RingKind::Rationals: mul_kernel(q(), o.q(), out.q(), o); break;
            default: {
                const auto& a = f(); const auto& b = o.f(); auto& cvec = out.f();
                std::int64_t p = ring_.prime();
                for (std::size_t i = 0; i < r_; ++i)
                    for (std::size_t k = 0; k < c_; ++k) {
                        std::int64_t av = a[i * c_ + k];
                        if (av == 0) continue;
                        for (std::size_t j = 0; j < o.c_; ++j)
                            cvec[i * o.c_ + j] = detail::fmod_pos(
                                cvec[i * o.c_ + j] + detail::fmul(av, b[k * o.c_ + j], p), p);
                    }
                break;
            }
        }
        return out;
    }

    ExactMatrix scale(const Scalar& s) const {
        ExactMatrix out(ring_, r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!entry_zero(i, j)) out.set(i, j, at(i, j) * s);
        return out;
    }

    ExactMatrix operator-() const { return scale(Scalar::of(ring_, -1)); }

    ExactMatrix transpose() const {
        ExactMatrix out(ring_, c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!entry_zero(i, j)) out.set(j, i, at(i, j));
        return out;
    }

    ExactMatrix hstack(const ExactMatrix& o) const {
        require_same_ring(ring_, o.ring_);
        if (r_ != o.r_) throw Error("hstack row mismatch");
        ExactMatrix out(ring_, r_, c_ + o.c_);
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < c_; ++j)
                if (!entry_zero(i, j)) out.set(i, j, at(i, j));
            for (std::size_t j = 0; j < o.c_; ++j)
                if (!o.entry_zero(i, j)) out.set(i, c_ + j, o.at(i, j));
        }
        return out;
    }

    ExactMatrix vstack(const ExactMatrix& o) const {
        require_same_ring(ring_, o.ring_);
        if (c_ != o.c_) throw Error("vstack col mismatch");
        ExactMatrix out(ring_, r_ + o.r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!entry_zero(i, j)) out.set(i, j, at(i, j));
        for (std::size_t i = 0; i < o.r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!o.entry_zero(i, j)) out.set(r_ + i, j, o.at(i, j));
        return out;
    }

    ExactMatrix col(std::size_t j) const { return select_cols({j}); }

    ExactMatrix select_cols(const std::vector<std::size_t>& js) const {
        ExactMatrix out(ring_, r_, js.size());
        for (std::size_t k = 0; k < js.size(); ++k)
            for (std::size_t i = 0; i < r_; ++i)
                if (!entry_zero(i, js[k])) out.set(i, k, at(i, js[k]));
        return out;
    }

    ExactMatrix select_rows(const std::vector<std::size_t>& is) const {
        ExactMatrix out(ring_, is.size(), c_);
        for (std::size_t k = 0; k < is.size(); ++k)
            for (std::size_t j = 0; j < c_; ++j)
                if (!entry_zero(is[k], j)) out.set(k, j, at(is[k], j));
        return out;
    }

    bool is_zero() const {
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!entry_zero(i, j)) return false;
        return true;
    }

    bool operator==(const ExactMatrix& o) const {
        if (ring_ != o.ring_ || r_ != o.r_ || c_ != o.c_) return false;
        return d_ == o.d_;
    }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < r_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < c_; ++j) {
                if (j) s += ", ";
                s += at(i, j).str();
            }
            s += "]\n";
        }
        return s;
    }

    // Typed storage access for elimination kernels.
    ZVec& z() { return std::get<ZVec>(d_); }
    const ZVec& z() const { return std::get<ZVec>(d_); }
    QVec& q() { return std::get<QVec>(d_); }
    const QVec& q() const { return std::get<QVec>(d_); }
    FVec& f() { return std::get<FVec>(d_); }
    const FVec& f() const { return std::get<FVec>(d_); }

    static void check_size(std::size_t rows, std::size_t cols) {
        if (rows != 0 && cols != 0 && rows * cols > kMaxMatrixEntries)
            throw MatrixTooLarge("matrix " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " exceeds guardrail of " +
                                 std::to_string(kMaxMatrixEntries) + " entries");
    }

  private:
    template <class V>
    void mul_kernel(const V& a, const V& b, V& out, const ExactMatrix& o) const {
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const auto& av = a[i * c_ + k];
                if (av == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j) {
                    const auto& bv = b[k * o.c_ + j];
                    if (bv == 0) continue;
                    out[i * o.c_ + j] += av * bv;
                }
            }
    }

    ExactMatrix addsub(const ExactMatrix& o, int sgn) const {
        require_same_ring(ring_, o.ring_);
        if (r_ != o.r_ || c_ != o.c_) throw Error("matrix sum shape mismatch");
        ExactMatrix out(ring_, r_, c_);
        Scalar s = Scalar::of(ring_, sgn);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) {
                if (entry_zero(i, j) && o.entry_zero(i, j)) continue;
                out.set(i, j, at(i, j) + o.at(i, j) * s);
            }
        return out;
    }

    void idx_check(std::size_t i, std::size_t j) const {
        if (i >= r_ || j >= c_) throw Error("matrix index out of range");
    }

    Ring ring_;
    std::size_t r_, c_;
    std::variant<ZVec, QVec, FVec> d_;
};

}  // namespace parhom
