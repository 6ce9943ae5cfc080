// Exact dense elimination: rank, kernels, solving, span comparisons.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace parhom {
namespace detail {

struct OverflowBail {};

// ---- fast exact rank of an integer row set (int64 with overflow bail) ----

inline std::int64_t iabs64(std::int64_t v) { return v < 0 ? -v : v; }

inline std::size_t rank_rows_i64(std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t nc = rows[0].size();
    std::size_t rank = 0;
    const std::int64_t LIM = (std::int64_t{1} << 62);
    for (std::size_t col = 0; col < nc && rank < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i) {
            std::int64_t v = rows[i][col];
            if (v != 0 && (piv == rows.size() || iabs64(v) < iabs64(rows[piv][col])))
                piv = i;
        }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const std::int64_t p = rows[rank][col];
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const std::int64_t a = rows[i][col];
            if (a == 0) continue;
            std::int64_t g = 0;
            for (std::size_t j = col; j < nc; ++j) {
                __int128 v = (__int128)rows[i][j] * p - (__int128)rows[rank][j] * a;
                if (v >= LIM || v <= -LIM) throw OverflowBail{};
                rows[i][j] = (std::int64_t)v;
                g = std::gcd(g, iabs64(rows[i][j]));
            }
            if (g > 1)
                for (std::size_t j = col; j < nc; ++j) rows[i][j] /= g;
        }
        ++rank;
    }
    return rank;
}

inline std::size_t rank_rows_big(std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t nc = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i) {
            const Int& v = rows[i][col];
            if (v != 0 && (piv == rows.size() ||
                           abs(v) < abs(rows[piv][col])))
                piv = i;
        }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const Int p = rows[rank][col];
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const Int a = rows[i][col];
            if (a == 0) continue;
            Int g = 0;
            for (std::size_t j = col; j < nc; ++j) {
                rows[i][j] = rows[i][j] * p - rows[rank][j] * a;
                g = gcd(g, abs(rows[i][j]));
            }
            if (g > 1)
                for (std::size_t j = col; j < nc; ++j) rows[i][j] /= g;
        }
        ++rank;
    }
    return rank;
}

inline std::size_t rank_mod_p(const ExactMatrix& A) {
    const std::size_t nr = A.rows(), nc = A.cols();
    const std::int64_t p = A.ring().prime();
    std::vector<std::vector<std::int64_t>> rows(nr, std::vector<std::int64_t>(nc));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) rows[i][j] = A.f()[i * nc + j];
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (rows[i][col] != 0) { piv = i; break; }
        if (piv == nr) continue;
        std::swap(rows[rank], rows[piv]);
        const std::int64_t inv = finv(rows[rank][col], p);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            if (rows[i][col] == 0) continue;
            const std::int64_t c = fmul(rows[i][col], inv, p);
            for (std::size_t j = col; j < nc; ++j) {
                if (rows[rank][j] == 0) continue;
                rows[i][j] = fmod_pos(rows[i][j] - fmul(c, rows[rank][j], p), p);
            }
        }
        ++rank;
    }
    return rank;
}

// Integer row copies of a Z or Q matrix (Q rows scaled by denominator lcm).
inline bool to_int_rows_i64(const ExactMatrix& A,
                            std::vector<std::vector<std::int64_t>>& out) {
    const std::size_t nr = A.rows(), nc = A.cols();
    out.assign(nr, std::vector<std::int64_t>(nc));
    const Int LIM = Int(1) << 62;
    if (A.ring().kind() == RingKind::Integers) {
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) {
                const Int& v = A.z()[i * nc + j];
                if (abs(v) >= LIM) return false;
                out[i][j] = static_cast<std::int64_t>(v);
            }
        return true;
    }
    for (std::size_t i = 0; i < nr; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < nc; ++j)
            l = lcm(l, denominator(A.q()[i * nc + j]));
        for (std::size_t j = 0; j < nc; ++j) {
            Int v = numerator(A.q()[i * nc + j]) * (l / denominator(A.q()[i * nc + j]));
            if (abs(v) >= LIM) return false;
            out[i][j] = static_cast<std::int64_t>(v);
        }
    }
    return true;
}

inline void to_int_rows_big(const ExactMatrix& A,
                            std::vector<std::vector<Int>>& out) {
    const std::size_t nr = A.rows(), nc = A.cols();
    out.assign(nr, std::vector<Int>(nc));
    if (A.ring().kind() == RingKind::Integers) {
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) out[i][j] = A.z()[i * nc + j];
        return;
    }
    for (std::size_t i = 0; i < nr; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < nc; ++j)
            l = lcm(l, denominator(A.q()[i * nc + j]));
        for (std::size_t j = 0; j < nc; ++j)
            out[i][j] = numerator(A.q()[i * nc + j]) *
                        (l / denominator(A.q()[i * nc + j]));
    }
}

}  // namespace detail

/// Exact rank over the matrix's ring (rank over Q for integer matrices).
inline std::size_t rank(const ExactMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    if (A.ring().kind() == RingKind::PrimeField) return detail::rank_mod_p(A);
    std::vector<std::vector<std::int64_t>> rows;
    if (detail::to_int_rows_i64(A, rows)) {
        try {
            return detail::rank_rows_i64(rows);
        } catch (detail::OverflowBail&) {
        }
    }
    std::vector<std::vector<Int>> big;
    detail::to_int_rows_big(A, big);
    return detail::rank_rows_big(big);
}

namespace detail {

// ---- reduced echelon over a field with optional companion tracking ----
//
// Maintains a fully reduced set of column vectors: each has a unit pivot
// entry at a distinct row and zeros at all other pivot rows.

class FieldEchelon {
  public:
    FieldEchelon(Ring ring, std::size_t dim, std::size_t comp_dim = 0)
        : ring_(ring), dim_(dim), comp_dim_(comp_dim) {}

    std::size_t size() const { return vecs_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const std::vector<Scalar>& vec(std::size_t k) const { return vecs_[k]; }
    const std::vector<Scalar>& comp(std::size_t k) const { return comps_[k]; }

    /// Reduce v (and companion) against the basis; true iff v becomes 0.
    bool reduce(std::vector<Scalar>& v, std::vector<Scalar>* comp) const {
        for (std::size_t k = 0; k < vecs_.size(); ++k) {
            const Scalar c = v[pivots_[k]];
            if (c.is_zero()) continue;
            axpy(v, c, vecs_[k]);
            if (comp) axpy(*comp, c, comps_[k]);
        }
        for (const Scalar& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Insert v; returns true if it enlarged the span.
    bool insert(std::vector<Scalar> v, std::vector<Scalar> comp = {}) {
        bool zero = reduce(v, comp.empty() ? nullptr : &comp);
        if (zero) return false;
        std::size_t p = 0;
        while (v[p].is_zero()) ++p;
        Scalar inv = v[p].inverse();
        for (auto& x : v) x = x * inv;
        for (auto& x : comp) x = x * inv;
        // back-substitute into existing vectors to keep the basis reduced
        for (std::size_t k = 0; k < vecs_.size(); ++k) {
            const Scalar c = vecs_[k][p];
            if (c.is_zero()) continue;
            axpy(vecs_[k], c, v);
            if (!comps_.empty() && !comp.empty()) axpy(comps_[k], c, comp);
        }
        // keep insertion deterministic: store in pivot order
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        vecs_.insert(vecs_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        if (!comp.empty()) comps_.insert(comps_.begin() + pos, std::move(comp));
        else if (comp_dim_) comps_.insert(comps_.begin() + pos, std::vector<Scalar>{});
        return true;
    }

    ExactMatrix basis_matrix() const {
        ExactMatrix out(ring_, dim_, vecs_.size());
        for (std::size_t k = 0; k < vecs_.size(); ++k)
            for (std::size_t i = 0; i < dim_; ++i)
                if (!vecs_[k][i].is_zero()) out.set(i, k, vecs_[k][i]);
        return out;
    }

  private:
    static void axpy(std::vector<Scalar>& x, const Scalar& c,
                     const std::vector<Scalar>& y) {
        for (std::size_t i = 0; i < y.size(); ++i)
            if (!y[i].is_zero()) x[i] = x[i] - c * y[i];
    }

    Ring ring_;
    std::size_t dim_, comp_dim_;
    std::vector<std::vector<Scalar>> vecs_;
    std::vector<std::vector<Scalar>> comps_;
    std::vector<std::size_t> pivots_;
};

inline std::vector<Scalar> column_of(const ExactMatrix& A, std::size_t j) {
    std::vector<Scalar> v(A.rows(), Scalar::zero(A.ring()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        if (!A.entry_zero(i, j)) v[i] = A.at(i, j);
    return v;
}

inline std::vector<Scalar> unit_vec(Ring r, std::size_t n, std::size_t j) {
    std::vector<Scalar> v(n, Scalar::zero(r));
    v[j] = Scalar::one(r);
    return v;
}

// ---- integer column echelon with companion (unimodular column ops) ----
//
// Brings the columns of A to a staircase form using unimodular integer
// column operations; companion tracks the ops applied to the identity.

struct IntColEchelon {
    std::vector<std::vector<Int>> cols;   // working columns of A
    std::vector<std::vector<Int>> comp;   // companion columns
    std::vector<std::size_t> order;       // echelon column order (by pivot row)
    std::vector<std::size_t> zeros;       // indices of columns reduced to zero

    IntColEchelon(const ExactMatrix& A, bool with_comp) {
        const std::size_t nr = A.rows(), nc = A.cols();
        cols.assign(nc, std::vector<Int>(nr));
        for (std::size_t j = 0; j < nc; ++j)
            for (std::size_t i = 0; i < nr; ++i)
                cols[j][i] = A.ring().kind() == RingKind::Integers
                                 ? A.z()[i * nc + j]
                                 : Int(A.at(i, j).as_int());
        if (with_comp) {
            ExactMatrix::check_size(nc, nc);
            comp.assign(nc, std::vector<Int>(nc));
            for (std::size_t j = 0; j < nc; ++j) comp[j][j] = 1;
        }
        run(nr, nc, with_comp);
    }

    void run(std::size_t nr, std::size_t nc, bool with_comp) {
        std::vector<std::size_t> active(nc);
        std::iota(active.begin(), active.end(), 0);
        for (std::size_t row = 0; row < nr && !active.empty(); ++row) {
            // gcd-eliminate this row across active columns
            for (;;) {
                std::size_t best = nc, nnz = 0;
                for (std::size_t j : active)
                    if (cols[j][row] != 0) {
                        ++nnz;
                        if (best == nc ||
                            abs(cols[j][row]) < abs(cols[best][row]))
                            best = j;
                    }
                if (nnz <= 1) {
                    if (nnz == 1) {
                        order.push_back(best);
                        active.erase(std::find(active.begin(), active.end(), best));
                    }
                    break;
                }
                for (std::size_t j : active) {
                    if (j == best || cols[j][row] == 0) continue;
                    Int q = cols[j][row] / cols[best][row];
                    if (q != 0) {
                        axpy(cols[j], -q, cols[best]);
                        if (with_comp) axpy(comp[j], -q, comp[best]);
                    }
                }
            }
        }
        zeros = active;
        std::sort(zeros.begin(), zeros.end());
    }

    static void axpy(std::vector<Int>& x, const Int& c, const std::vector<Int>& y) {
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] != 0) x[i] += c * y[i];
    }
};

}  // namespace detail

/// Basis of ker(A) as matrix columns; over Z this is a lattice basis of the
/// (automatically saturated) integer kernel.
inline ExactMatrix kernel_basis(const ExactMatrix& A) {
    const Ring ring = A.ring();
    const std::size_t nc = A.cols();
    if (A.rows() == 0 || nc == 0) return ExactMatrix::identity(ring, nc);
    if (ring.kind() == RingKind::Integers) {
        detail::IntColEchelon ech(A, /*with_comp=*/true);
        ExactMatrix out(ring, nc, ech.zeros.size());
        for (std::size_t k = 0; k < ech.zeros.size(); ++k)
            for (std::size_t i = 0; i < nc; ++i)
                if (ech.comp[ech.zeros[k]][i] != 0)
                    out.set(i, k, Scalar(ring, Rat(ech.comp[ech.zeros[k]][i])));
        return out;
    }
    detail::FieldEchelon ech(ring, A.rows(), nc);
    std::vector<std::vector<Scalar>> kernels;
    for (std::size_t j = 0; j < nc; ++j) {
        std::vector<Scalar> v = detail::column_of(A, j);
        std::vector<Scalar> c = detail::unit_vec(ring, nc, j);
        bool zero = ech.reduce(v, &c);
        if (zero) kernels.push_back(std::move(c));
        else ech.insert(std::move(v), std::move(c));
    }
    ExactMatrix out(ring, nc, kernels.size());
    for (std::size_t k = 0; k < kernels.size(); ++k)
        for (std::size_t i = 0; i < nc; ++i)
            if (!kernels[k][i].is_zero()) out.set(i, k, kernels[k][i]);
    return out;
}

/// Solve A·X = B columnwise; nullopt if some column of B is not in the span
/// of A's columns.  Over Z, A's columns should be independent (the use case:
/// coordinates with respect to a basis); non-integral coordinates throw.
inline std::optional<ExactMatrix> solve_columns(const ExactMatrix& A,
                                                const ExactMatrix& B) {
    require_same_ring(A.ring(), B.ring());
    if (A.rows() != B.rows()) throw Error("solve_columns shape mismatch");
    const bool over_z = A.ring().kind() == RingKind::Integers;
    const Ring work = over_z ? Ring::Q() : A.ring();
    auto lift = [&](const ExactMatrix& M) {
        if (!over_z) return M;
        ExactMatrix out(work, M.rows(), M.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j)
                if (!M.entry_zero(i, j))
                    out.set(i, j, Scalar(work, M.at(i, j).value()));
        return out;
    };
    ExactMatrix Aw = lift(A), Bw = lift(B);
    detail::FieldEchelon ech(work, Aw.rows(), Aw.cols());
    for (std::size_t j = 0; j < Aw.cols(); ++j)
        ech.insert(detail::column_of(Aw, j),
                   detail::unit_vec(work, Aw.cols(), j));
    ExactMatrix X(A.ring(), A.cols(), B.cols());
    for (std::size_t j = 0; j < Bw.cols(); ++j) {
        std::vector<Scalar> v = detail::column_of(Bw, j);
        std::vector<Scalar> c(Aw.cols(), Scalar::zero(work));
        if (!ech.reduce(v, &c)) return std::nullopt;
        for (std::size_t i = 0; i < Aw.cols(); ++i) {
            if (c[i].is_zero()) continue;
            Scalar coord = -c[i];
            if (over_z) {
                if (!coord.is_integer())
                    throw Error("solve_columns: non-integral coordinate over Z");
                X.set(i, j, Scalar(Ring::Z(), coord.value()));
            } else {
                X.set(i, j, coord);
            }
        }
    }
    return X;
}

/// Canonical basis of the column span (field) / honest image lattice (Z).
inline ExactMatrix image_basis(const ExactMatrix& A) {
    const Ring ring = A.ring();
    if (ring.kind() == RingKind::Integers) {
        detail::IntColEchelon ech(A, /*with_comp=*/false);
        ExactMatrix out(ring, A.rows(), ech.order.size());
        std::size_t k = 0;
        for (std::size_t j : ech.order) {
            for (std::size_t i = 0; i < A.rows(); ++i)
                if (ech.cols[j][i] != 0)
                    out.set(i, k, Scalar(ring, Rat(ech.cols[j][i])));
            ++k;
        }
        return out;
    }
    detail::FieldEchelon ech(ring, A.rows());
    for (std::size_t j = 0; j < A.cols(); ++j)
        ech.insert(detail::column_of(A, j));
    return ech.basis_matrix();
}

/// Q-span equality by the rank-of-concatenation rule.
inline bool same_span(const ExactMatrix& A, const ExactMatrix& B) {
    std::size_t ra = rank(A), rb = rank(B);
    if (ra != rb) return false;
    return rank(A.hstack(B)) == ra;
}

inline bool span_contains(const ExactMatrix& A, const ExactMatrix& B) {
    return rank(A.hstack(B)) == rank(A);
}

/// Basis of span(A) ∩ span(B).  Over Z both inputs should be lattice bases.
inline ExactMatrix intersect_spans(const ExactMatrix& A, const ExactMatrix& B) {
    require_same_ring(A.ring(), B.ring());
    ExactMatrix K = kernel_basis(A.hstack(-B));
    std::vector<std::size_t> top(A.cols());
    std::iota(top.begin(), top.end(), 0);
    return A * K.select_rows(top);
}

}  // namespace parhom
