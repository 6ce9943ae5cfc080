// Smith normal form over Z with deterministic pivoting.
#pragma once

#include <algorithm>
#include <vector>

#include "matrix.hpp"

namespace parhom {
namespace detail {

// Working state: row-major cpp_int grid plus optional transform accumulators.
struct SnfWork {
    std::size_t nr, nc;
    std::vector<std::vector<Int>> m;
    bool want_u = false, want_uinv = false, want_v = false;
    std::vector<std::vector<Int>> u, uinv, v;

    explicit SnfWork(const ExactMatrix& A) : nr(A.rows()), nc(A.cols()) {
        m.assign(nr, std::vector<Int>(nc));
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                m[i][j] = A.z()[i * nc + j];
    }

    void init_transforms(bool wu, bool wuinv, bool wv) {
        want_u = wu; want_uinv = wuinv; want_v = wv;
        if (want_u) u = eye(nr);
        if (want_uinv) uinv = eye(nr);
        if (want_v) v = eye(nc);
    }

    static std::vector<std::vector<Int>> eye(std::size_t n) {
        std::vector<std::vector<Int>> e(n, std::vector<Int>(n));
        for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
        return e;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(m[a], m[b]);
        if (want_u) std::swap(u[a], u[b]);
        if (want_uinv)
            for (auto& row : uinv) std::swap(row[a], row[b]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : m) std::swap(row[a], row[b]);
        if (want_v)
            for (auto& row : v) std::swap(row[a], row[b]);
    }
    // row_i += c * row_t
    void row_axpy(std::size_t i, const Int& c, std::size_t t) {
        for (std::size_t j = 0; j < nc; ++j)
            if (m[t][j] != 0) m[i][j] += c * m[t][j];
        if (want_u)
            for (std::size_t j = 0; j < nr; ++j)
                if (u[t][j] != 0) u[i][j] += c * u[t][j];
        if (want_uinv)
            for (std::size_t j = 0; j < nr; ++j)
                if (uinv[j][i] != 0) uinv[j][t] -= c * uinv[j][i];
    }
    // col_j += c * col_t
    void col_axpy(std::size_t j, const Int& c, std::size_t t) {
        for (std::size_t i = 0; i < nr; ++i)
            if (m[i][t] != 0) m[i][j] += c * m[i][t];
        if (want_v)
            for (std::size_t i = 0; i < nc; ++i)
                if (v[i][t] != 0) v[i][j] += c * v[i][t];
    }
    void negate_row(std::size_t i) {
        for (auto& x : m[i]) x = -x;
        if (want_u)
            for (auto& x : u[i]) x = -x;
        if (want_uinv)
            for (std::size_t j = 0; j < nr; ++j) uinv[j][i] = -uinv[j][i];
    }

    void reduce() {
        const std::size_t steps = std::min(nr, nc);
        for (std::size_t t = 0; t < steps; ++t) {
            for (;;) {
                // pivot: smallest |value|, ties by (row, col) lexicographic
                std::size_t pi = nr, pj = nc;
                for (std::size_t i = t; i < nr; ++i)
                    for (std::size_t j = t; j < nc; ++j) {
                        if (m[i][j] == 0) continue;
                        if (pi == nr || abs(m[i][j]) < abs(m[pi][pj])) {
                            pi = i; pj = j;
                        }
                    }
                if (pi == nr) return;  // all remaining entries zero
                swap_rows(t, pi);
                swap_cols(t, pj);
                bool clean = true;
                for (std::size_t i = t + 1; i < nr; ++i) {
                    if (m[i][t] == 0) continue;
                    Int q = m[i][t] / m[t][t];
                    if (q != 0) row_axpy(i, -q, t);
                    if (m[i][t] != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < nc; ++j) {
                    if (m[t][j] == 0) continue;
                    Int q = m[t][j] / m[t][t];
                    if (q != 0) col_axpy(j, -q, t);
                    if (m[t][j] != 0) clean = false;
                }
                if (!clean) continue;
                // enforce divisibility of the remaining block by the pivot
                bool divisible = true;
                for (std::size_t i = t + 1; i < nr && divisible; ++i)
                    for (std::size_t j = t + 1; j < nc; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            col_axpy(t, 1, j);
                            divisible = false;
                            break;
                        }
                if (divisible) break;
            }
            if (m[t][t] < 0) negate_row(t);
        }
    }

    ExactMatrix grid_to_matrix(const std::vector<std::vector<Int>>& g) const {
        std::size_t r = g.size(), c = r ? g[0].size() : 0;
        ExactMatrix out(Ring::Z(), r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (g[i][j] != 0) out.set(i, j, Scalar(Ring::Z(), Rat(g[i][j])));
        return out;
    }
};

}  // namespace detail

struct SnfResult {
    ExactMatrix U, D, V;
    std::vector<Int> invariant_factors() const {
        std::vector<Int> out;
        std::size_t n = std::min(D.rows(), D.cols());
        for (std::size_t i = 0; i < n; ++i) {
            Int d = D.at(i, i).as_int();
            if (d != 0) out.push_back(d);
        }
        return out;
    }
};

/// U·A·V = D with U, V unimodular, D diagonal with d_1 | d_2 | ...
inline SnfResult snf(const ExactMatrix& A) {
    if (A.ring().kind() != RingKind::Integers)
        throw Error("snf requires integer matrix");
    detail::SnfWork w(A);
    w.init_transforms(true, false, true);
    w.reduce();
    return SnfResult{w.grid_to_matrix(w.u), w.grid_to_matrix(w.m),
                     w.grid_to_matrix(w.v)};
}

/// Nonzero invariant factors only (no transform accumulation).
inline std::vector<Int> snf_invariants(const ExactMatrix& A) {
    if (A.ring().kind() != RingKind::Integers)
        throw Error("snf requires integer matrix");
    detail::SnfWork w(A);
    w.reduce();
    std::vector<Int> out;
    std::size_t n = std::min(w.nr, w.nc);
    for (std::size_t i = 0; i < n; ++i)
        if (w.m[i][i] != 0) out.push_back(w.m[i][i]);
    return out;
}

namespace detail {
/// SNF with U and U^{-1} accumulated (for quotient presentations).
struct SnfUUinv {
    ExactMatrix U, Uinv, D;
};
inline SnfUUinv snf_u_uinv(const ExactMatrix& A) {
    SnfWork w(A);
    w.init_transforms(true, true, false);
    w.reduce();
    return SnfUUinv{w.grid_to_matrix(w.u), w.grid_to_matrix(w.uinv),
                    w.grid_to_matrix(w.m)};
}
}  // namespace detail

/// True iff the image lattice of A is a direct summand of Z^rows.
inline bool image_saturated_z(const ExactMatrix& A) {
    for (const Int& d : snf_invariants(A))
        if (d != 1) return false;
    return true;
}

}  // namespace parhom
