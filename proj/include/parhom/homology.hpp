// Bar complexes (global and partial), cochain complexes, (co)homology, and
// the theorem-comparison drivers.
#pragma once

#include "glob.hpp"

namespace parhom {

/// Differentials diff[k]: C_{k+1} -> C_k, k = 0..n_max-1.
struct ChainComplex {
    Ring ring = Ring::Q();
    std::vector<std::size_t> dims;  // degrees 0..n_max
    std::vector<ExactMatrix> diff;
};

/// Differentials delta[k]: C^k -> C^{k+1}, k = 0..n_max-1.
struct CochainComplex {
    Ring ring = Ring::Q();
    std::vector<std::size_t> dims;
    std::vector<ExactMatrix> delta;
};

namespace detail {

inline void check_dd(const std::vector<ExactMatrix>& d, bool ascending) {
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        const ExactMatrix& first = ascending ? d[k] : d[k + 1];
        const ExactMatrix& second = ascending ? d[k + 1] : d[k];
        if (!(second * first).is_zero())
            throw ComplexNotExactlyComposable(
                "d∘d != 0 between degrees " + std::to_string(k) + " and " +
                std::to_string(k + 2));
    }
}

// Enumerate words of G^n lexicographically, first letter most significant.
inline std::size_t word_count(int order, int n) {
    std::size_t c = 1;
    for (int i = 0; i < n; ++i) c *= order;
    return c;
}
inline std::vector<int> word_of(int order, int n, std::size_t idx) {
    std::vector<int> w(n);
    for (int i = n - 1; i >= 0; --i) {
        w[i] = static_cast<int>(idx % order);
        idx /= order;
    }
    return w;
}
inline std::size_t index_of(int order, const std::vector<int>& w) {
    std::size_t idx = 0;
    for (int gi : w) idx = idx * order + gi;
    return idx;
}

}  // namespace detail

/// One face of the standard-resolution differential applied to the basis
/// chain [g_1]⊗_B…⊗_B[g_n]⊗_B 1: sign · (word w') · coeff, coeff ∈ S(G)
/// acting on the module slot.
struct Face {
    int sign;
    std::vector<int> word;
    SElem coeff;
};

/// All n+1 faces of the word w, computed symbolically: merge, then rewrite
/// every slot as [h]·u and transport u rightward across ⊗_B into the module
/// coefficient.
inline std::vector<Face> chain_faces(const FiniteGroup& g,
                                     const std::vector<int>& w) {
    const int n = static_cast<int>(w.size());
    auto normalize = [&](std::vector<SElem> slots, SElem c0, int sign) {
        Face f;
        f.sign = sign;
        SElem carry = sg_one();
        for (SElem z : slots) {
            z = sg_mul(g, carry, z);
            f.word.push_back(z.grp);
            carry = sg_canonical(0, shift_set(g, g.inv(z.grp), z.idem));
        }
        f.coeff = sg_mul(g, carry, c0);
        return f;
    };
    std::vector<Face> out;
    for (int i = 0; i <= n; ++i) {
        int sign = i % 2 == 0 ? 1 : -1;
        std::vector<SElem> slots;
        SElem c0 = sg_one();
        if (i == 0) {
            if (n == 1) {
                c0 = sg_e(g.inv(w[0]));
            } else {
                slots.push_back(
                    sg_mul(g, sg_e(g.inv(w[0])), sg_gen(w[1])));
                for (int k = 2; k < n; ++k) slots.push_back(sg_gen(w[k]));
            }
        } else if (i == n) {
            for (int k = 0; k + 1 < n; ++k) slots.push_back(sg_gen(w[k]));
            c0 = sg_gen(w[n - 1]);
        } else {
            for (int k = 0; k < i - 1; ++k) slots.push_back(sg_gen(w[k]));
            slots.push_back(sg_mul(g, sg_gen(w[i - 1]), sg_gen(w[i])));
            for (int k = i + 1; k < n; ++k) slots.push_back(sg_gen(w[k]));
        }
        out.push_back(normalize(std::move(slots), c0, sign));
    }
    return out;
}

/// The idempotent u(w) = e_{(h_1..h_n)^-1} e_{(h_2..h_n)^-1} ... e_{h_n^-1}
/// attached to the word w: the chain [h_1]⊗_B…⊗_B[h_n]⊗ m satisfies
/// [w]⊗m = [w]⊗u(w)m (because [h]e_{h^-1} = [h]), so the degree-n chain
/// space decomposes as ⊕_w u(w)·M rather than a free module on G^n.
inline SElem word_idempotent(const FiniteGroup& g, const std::vector<int>& w) {
    std::uint32_t mask = 0;
    int suffix = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        suffix = g.mul(*it, suffix);
        mask |= 1u << g.inv(suffix);
    }
    return sg_canonical(0, mask);
}

namespace detail {

/// Per-word component data of the degree-n chain/cochain space.
struct WordLayout {
    std::vector<std::size_t> offset;  // per word index
    std::vector<ExactMatrix> basis;   // image basis of act(u(w))
    std::size_t total = 0;
};

inline WordLayout word_layout(const ParRepModule& M, int n) {
    const FiniteGroup& g = M.group();
    WordLayout lay;
    std::size_t nw = word_count(g.order(), n);
    std::map<SElem, ExactMatrix> cache;
    for (std::size_t wi = 0; wi < nw; ++wi) {
        SElem u = word_idempotent(g, word_of(g.order(), n, wi));
        auto it = cache.find(u);
        if (it == cache.end())
            it = cache.emplace(u, image_basis(M.act_monomial(u))).first;
        lay.offset.push_back(lay.total);
        lay.basis.push_back(it->second);
        lay.total += it->second.cols();
    }
    return lay;
}

inline void add_block(ExactMatrix& d, std::size_t roff, std::size_t coff,
                      const ExactMatrix& b, int sign) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!b.entry_zero(i, j)) {
                Scalar v = b.at(i, j);
                if (sign < 0) v = -v;
                d.set(roff + i, coff + j, d.at(roff + i, coff + j) + v);
            }
}

}  // namespace detail

/// C_n^par = ⊕_{w ∈ G^n} u(w)·M for a left K_par G-module M.
inline ChainComplex partial_bar_complex(const ParRepModule& M, int n_max) {
    if (M.side() != Side::Left) throw Error("expected a left module");
    const FiniteGroup& g = M.group();
    const int order = g.order();
    ChainComplex c;
    c.ring = M.ring();
    std::vector<detail::WordLayout> lay;
    for (int n = 0; n <= n_max; ++n) {
        lay.push_back(detail::word_layout(M, n));
        c.dims.push_back(lay.back().total);
    }
    for (int n = 1; n <= n_max; ++n) {
        ExactMatrix d(c.ring, c.dims[n - 1], c.dims[n]);
        std::size_t nw = detail::word_count(order, n);
        for (std::size_t wi = 0; wi < nw; ++wi) {
            auto w = detail::word_of(order, n, wi);
            for (const Face& f : chain_faces(g, w)) {
                std::size_t ti = detail::index_of(order, f.word);
                // component of [w']⊗(c·m) is u(w')·c·m
                SElem z = sg_mul(g, word_idempotent(g, f.word), f.coeff);
                auto blk = solve_columns(
                    lay[n - 1].basis[ti],
                    M.act_monomial(z) * lay[n].basis[wi]);
                if (!blk) throw Error("face image escapes its component");
                detail::add_block(d, lay[n - 1].offset[ti],
                                  lay[n].offset[wi], *blk, f.sign);
            }
        }
        c.diff.push_back(std::move(d));
    }
    detail::check_dd(c.diff, false);
    return c;
}

/// Classical bar complex of a (left) G-module.
inline ChainComplex global_bar_complex(const GlobalModule& N, int n_max) {
    if (N.side != Side::Left) throw Error("expected a left module");
    const FiniteGroup& g = *N.G;
    const int order = g.order();
    const std::size_t r = N.rank;
    ChainComplex c;
    c.ring = N.ring;
    for (int n = 0; n <= n_max; ++n)
        c.dims.push_back(detail::word_count(order, n) * r);
    ExactMatrix id = ExactMatrix::identity(N.ring, r);
    for (int n = 1; n <= n_max; ++n) {
        ExactMatrix d(c.ring, c.dims[n - 1], c.dims[n]);
        std::size_t nw = detail::word_count(order, n);
        for (std::size_t wi = 0; wi < nw; ++wi) {
            auto w = detail::word_of(order, n, wi);
            for (int i = 0; i <= n; ++i) {
                std::vector<int> w2;
                const ExactMatrix* a = &id;
                if (i == 0) {
                    w2.assign(w.begin() + 1, w.end());
                } else if (i == n) {
                    w2.assign(w.begin(), w.end() - 1);
                    a = &N.act(w[n - 1]);
                } else {
                    w2.assign(w.begin(), w.end());
                    w2[i - 1] = g.mul(w[i - 1], w[i]);
                    w2.erase(w2.begin() + i);
                }
                std::size_t ti = detail::index_of(order, w2);
                for (std::size_t ri = 0; ri < r; ++ri)
                    for (std::size_t cj = 0; cj < r; ++cj)
                        if (!a->entry_zero(ri, cj)) {
                            Scalar v = a->at(ri, cj);
                            if (i % 2) v = -v;
                            d.set(ti * r + ri, wi * r + cj,
                                  d.at(ti * r + ri, wi * r + cj) + v);
                        }
            }
        }
        c.diff.push_back(std::move(d));
    }
    detail::check_dd(c.diff, false);
    return c;
}

/// C^n_par = ⊕_{w ∈ G^n} M·u(w) for a right K_par G-module M; delta is the
/// dual of the degree-(n+1) face structure:
/// (δf)(w) = Σ sign · f(w')·(coeff·u(w)).
inline CochainComplex partial_cochain_complex(const ParRepModule& M,
                                              int n_max) {
    if (M.side() != Side::Right) throw Error("expected a right module");
    const FiniteGroup& g = M.group();
    const int order = g.order();
    CochainComplex c;
    c.ring = M.ring();
    std::vector<detail::WordLayout> lay;
    for (int n = 0; n <= n_max; ++n) {
        lay.push_back(detail::word_layout(M, n));
        c.dims.push_back(lay.back().total);
    }
    for (int n = 0; n < n_max; ++n) {
        ExactMatrix d(c.ring, c.dims[n + 1], c.dims[n]);
        std::size_t nw = detail::word_count(order, n + 1);
        for (std::size_t wi = 0; wi < nw; ++wi) {
            auto w = detail::word_of(order, n + 1, wi);
            SElem uw = word_idempotent(g, w);
            for (const Face& f : chain_faces(g, w)) {
                std::size_t ti = detail::index_of(order, f.word);
                SElem z = sg_mul(g, f.coeff, uw);
                auto blk = solve_columns(
                    lay[n + 1].basis[wi],
                    M.act_monomial(z) * lay[n].basis[ti]);
                if (!blk) throw Error("coface image escapes its component");
                detail::add_block(d, lay[n + 1].offset[wi],
                                  lay[n].offset[ti], *blk, f.sign);
            }
        }
        c.delta.push_back(std::move(d));
    }
    detail::check_dd(c.delta, true);
    return c;
}

/// Classical cochain complex of a right G-module:
/// (δf)(g_1..g_{n+1}) = f(g_2..g_{n+1}) + Σ (−1)^i f(..g_i g_{i+1}..)
///                      + (−1)^{n+1} f(g_1..g_n)·g_{n+1}.
inline CochainComplex global_cochain_complex(const GlobalModule& N,
                                             int n_max) {
    if (N.side != Side::Right) throw Error("expected a right module");
    const FiniteGroup& g = *N.G;
    const int order = g.order();
    const std::size_t r = N.rank;
    CochainComplex c;
    c.ring = N.ring;
    for (int n = 0; n <= n_max; ++n)
        c.dims.push_back(detail::word_count(order, n) * r);
    ExactMatrix id = ExactMatrix::identity(N.ring, r);
    for (int n = 0; n < n_max; ++n) {
        ExactMatrix d(c.ring, c.dims[n + 1], c.dims[n]);
        std::size_t nw = detail::word_count(order, n + 1);
        for (std::size_t wi = 0; wi < nw; ++wi) {
            auto w = detail::word_of(order, n + 1, wi);
            for (int i = 0; i <= n + 1; ++i) {
                std::vector<int> w2;
                const ExactMatrix* a = &id;
                if (i == 0) {
                    w2.assign(w.begin() + 1, w.end());
                } else if (i == n + 1) {
                    w2.assign(w.begin(), w.end() - 1);
                    a = &N.act(w[n]);
                } else {
                    w2.assign(w.begin(), w.end());
                    w2[i - 1] = g.mul(w[i - 1], w[i]);
                    w2.erase(w2.begin() + i);
                }
                std::size_t ti = detail::index_of(order, w2);
                for (std::size_t ri = 0; ri < r; ++ri)
                    for (std::size_t cj = 0; cj < r; ++cj)
                        if (!a->entry_zero(ri, cj)) {
                            Scalar v = a->at(ri, cj);
                            if (i % 2) v = -v;
                            d.set(wi * r + ri, ti * r + cj,
                                  d.at(wi * r + ri, ti * r + cj) + v);
                        }
            }
        }
        c.delta.push_back(std::move(d));
    }
    detail::check_dd(c.delta, true);
    return c;
}

/// Homology in degrees 0..up_to; requires differentials up to up_to+1.
inline std::vector<HomologySummary> homology(const ChainComplex& c,
                                             int up_to) {
    if (static_cast<int>(c.diff.size()) < up_to + 1)
        throw Error("complex too short for requested degree");
    std::vector<HomologySummary> out;
    for (int n = 0; n <= up_to; ++n) {
        ExactMatrix d_out =
            n == 0 ? ExactMatrix(c.ring, 0, c.dims[0]) : c.diff[n - 1];
        out.push_back(homology_of_pair(c.diff[n], d_out));
    }
    return out;
}

/// Cohomology in degrees 0..up_to; requires deltas up to index up_to.
inline std::vector<HomologySummary> cohomology(const CochainComplex& c,
                                               int up_to) {
    if (static_cast<int>(c.delta.size()) < up_to + 1)
        throw Error("complex too short for requested degree");
    std::vector<HomologySummary> out;
    for (int n = 0; n <= up_to; ++n) {
        ExactMatrix d_in =
            n == 0 ? ExactMatrix(c.ring, c.dims[0], 0) : c.delta[n - 1];
        out.push_back(homology_of_pair(d_in, c.delta[n]));
    }
    return out;
}

/// Largest degree n <= n_max whose (co)homology is computable within the
/// matrix guardrail for a bar complex over a module of the given rank.
inline int cap_degree(int order, std::size_t r, Ring ring, int n_max) {
    int n = n_max;
    for (; n >= 0; --n) {
        // needs d_{n+1}: |G|^{2n+1} r^2 entries, and over Z the kernel
        // companion on C_n: (|G|^n r)^2 entries
        long double big = 1;
        for (int i = 0; i < 2 * n + 1; ++i) big *= order;
        big *= static_cast<long double>(r) * r;
        if (big > kMaxMatrixEntries) continue;
        if (!ring.is_field()) {
            long double cn = static_cast<long double>(r);
            for (int i = 0; i < n; ++i) cn *= order;
            if (cn * cn > kMaxMatrixEntries) continue;
        }
        break;
    }
    return n;
}

struct CompareRow {
    int degree;
    HomologySummary lhs, rhs;

    bool equal() const { return lhs == rhs; }
};

struct CompareReport {
    std::vector<CompareRow> rows;
    int max_degree = -1;
    bool capped = false;
    std::string note;

    bool pass() const {
        for (const CompareRow& r : rows)
            if (!r.equal()) return false;
        return max_degree >= 0;
    }
};

namespace detail {

inline CompareReport compare_summaries(std::vector<HomologySummary> a,
                                       std::vector<HomologySummary> b,
                                       int degree, bool capped,
                                       const std::string& note) {
    CompareReport rep;
    rep.max_degree = degree;
    rep.capped = capped;
    rep.note = note;
    for (int n = 0; n <= degree; ++n)
        rep.rows.push_back(CompareRow{n, a[n], b[n]});
    return rep;
}

}  // namespace detail

/// H_n^par(G, M) vs H_n(G, Λ(M)), degrees 0..n_max (capped by guardrail).
inline CompareReport compare_homology(const ParRepModule& M, int n_max) {
    Globalization gl = globalize(M);
    int order = M.group().order();
    int cap = std::min(cap_degree(order, M.rank(), M.ring(), n_max),
                       cap_degree(order, gl.Lambda.rank, M.ring(), n_max));
    if (cap < 0)
        throw MatrixTooLarge("no degree fits within the matrix guardrail");
    ChainComplex cp = partial_bar_complex(M, cap + 1);
    ChainComplex cg = global_bar_complex(gl.Lambda, cap + 1);
    return detail::compare_summaries(
        homology(cp, cap), homology(cg, cap), cap, cap < n_max,
        cap < n_max ? "degree capped by the matrix guardrail" : "");
}

/// H^n_par(G, M) vs H^n(G, Hom_{K_par G}(Λ(K_par G), M)), degrees 0..n_max.
inline CompareReport compare_cohomology(const ParRepModule& M, int n_max) {
    Intertwiner hom = hom_intertwiners(M);
    int order = M.group().order();
    int cap = std::min(cap_degree(order, M.rank(), M.ring(), n_max),
                       cap_degree(order, hom.module.rank, M.ring(), n_max));
    if (cap < 0)
        throw MatrixTooLarge("no degree fits within the matrix guardrail");
    CochainComplex cp = partial_cochain_complex(M, cap + 1);
    CochainComplex cg = global_cochain_complex(hom.module, cap + 1);
    return detail::compare_summaries(
        cohomology(cp, cap), cohomology(cg, cap), cap, cap < n_max,
        cap < n_max ? "degree capped by the matrix guardrail" : "");
}

/// H_n^par(S, M) vs H_n(G, KG ⊗_{S_par} M), degrees 0..n_max.
inline CompareReport shapiro_check(GroupPtr G, const Subgroup& S,
                                   const ParRepModule& M, int n_max) {
    GlobalModule ind = induce_from_subgroup(G, S, M);
    int cap = std::min(
        cap_degree(M.group().order(), M.rank(), M.ring(), n_max),
        cap_degree(G->order(), ind.rank, M.ring(), n_max));
    if (cap < 0)
        throw MatrixTooLarge("no degree fits within the matrix guardrail");
    ChainComplex cp = partial_bar_complex(M, cap + 1);
    ChainComplex cg = global_bar_complex(ind, cap + 1);
    return detail::compare_summaries(
        homology(cp, cap), homology(cg, cap), cap, cap < n_max,
        cap < n_max ? "degree capped by the matrix guardrail" : "");
}

}  // namespace parhom
