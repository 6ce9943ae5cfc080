// Partial tensor product, the globalization functor Lambda with iota/tau,
// subgroup induction, the N/delta/phi projectivity machinery, and the
// intertwiner solver Hom_{K_par G}(Lambda(K_par G), M).
#pragma once

#include <optional>
#include <utility>

#include "parmod.hpp"

namespace parhom {

struct NonFreeGlobalization : Error {
    explicit NonFreeGlobalization(const std::string& m) : Error(m) {}
};
struct ConstructionFailed : Error {
    explicit ConstructionFailed(const std::string& m) : Error(m) {}
};

/// An honest G-representation.  Left: action(g)·action(h) = action(gh);
/// right (matrices of m -> m·g): action(h)·action(g) = action(gh).
struct GlobalModule {
    GroupPtr G;
    Ring ring = Ring::Q();
    Side side = Side::Left;
    std::size_t rank = 0;
    std::vector<ExactMatrix> action;

    const ExactMatrix& act(int g) const { return action[g]; }
};

inline GlobalModule make_global_module(GroupPtr G, Ring ring, Side side,
                                       std::vector<ExactMatrix> action) {
    const FiniteGroup& g = *G;
    if (static_cast<int>(action.size()) != g.order())
        throw Error("one action matrix per group element required");
    std::size_t rank = action[0].rows();
    if (action[0] != ExactMatrix::identity(ring, rank))
        throw Error("action(1) != id");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            ExactMatrix expect = side == Side::Left ? action[a] * action[b]
                                                    : action[b] * action[a];
            if (expect != action[g.mul(a, b)])
                throw Error("action matrices do not satisfy the group law at (" +
                            g.name(a) + "," + g.name(b) + ")");
        }
    return GlobalModule{std::move(G), ring, side, rank, std::move(action)};
}

inline bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return false;
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j)
            if (a.mul(i, j) != b.mul(i, j)) return false;
    return true;
}

namespace detail {

/// Per group element g: a basis of the domain X_{g^{-1}} (ambient columns)
/// and the action applied to those columns.  Left modules: X_{g^{-1}} =
/// e_{g^{-1}}X; right modules: X_{g^{-1}} = X·e_g.  Either way the action of
/// g is the matrix pi(g).
struct FactorData {
    std::size_t rank = 0;
    std::vector<ExactMatrix> dom, img;
};

inline FactorData factor_of(const ParRepModule& X, Side expected) {
    if (X.side() != expected)
        throw Error("tensor factor has the wrong side");
    const FiniteGroup& g = X.group();
    FactorData f;
    f.rank = X.rank();
    for (int a = 0; a < g.order(); ++a) {
        ExactMatrix d = image_basis(
            X.E(expected == Side::Left ? g.inv(a) : a));
        if (X.ring().kind() == RingKind::Integers && !image_saturated_z(d))
            throw NonSaturatedDomain("domain of " + g.name(a) +
                                     " is not a direct summand over Z");
        f.img.push_back(X.pi(a) * d);
        f.dom.push_back(std::move(d));
    }
    return f;
}

inline FactorData factor_of(const PartialActionModule& X) {
    const FiniteGroup& g = *X.G;
    FactorData f;
    f.rank = X.rank;
    for (int a = 0; a < g.order(); ++a) {
        f.dom.push_back(X.domains[g.inv(a)]);
        f.img.push_back(X.domains[a] * X.maps[a]);
    }
    return f;
}

inline void add_relator(ExactMatrix& rel, std::size_t col, std::size_t ry,
                        const ExactMatrix& xa, std::size_t xcol,
                        const ExactMatrix& ya, std::size_t ycol,
                        const ExactMatrix& xb, std::size_t xcol2,
                        const ExactMatrix& yb, std::size_t ycol2) {
    // column = vec(xa ⊗ ya) − vec(xb ⊗ yb), vec index = i*ry + j
    for (std::size_t i = 0; i < xa.rows(); ++i) {
        if (xa.entry_zero(i, xcol)) continue;
        Scalar xi = xa.at(i, xcol);
        for (std::size_t j = 0; j < ya.rows(); ++j)
            if (!ya.entry_zero(j, ycol))
                rel.set(i * ry + j, col,
                        rel.at(i * ry + j, col) + xi * ya.at(j, ycol));
    }
    for (std::size_t i = 0; i < xb.rows(); ++i) {
        if (xb.entry_zero(i, xcol2)) continue;
        Scalar xi = xb.at(i, xcol2);
        for (std::size_t j = 0; j < yb.rows(); ++j)
            if (!yb.entry_zero(j, ycol2))
                rel.set(i * ry + j, col,
                        rel.at(i * ry + j, col) - xi * yb.at(j, ycol2));
    }
}

}  // namespace detail

/// Presentation of X ⊗_{G_par} Y.
struct TensorPresentation {
    std::size_t ambient_rank = 0;
    ExactMatrix relators;
    QuotientPresentation result;
};

namespace detail {

// General family: (x)beta_g ⊗ y − x ⊗ alpha_g(y), x over a basis of
// X_{g^{-1}}, y over a basis of Y_{g^{-1}}.
inline TensorPresentation tensor_general(Ring ring, int order,
                                         const FactorData& fx,
                                         const FactorData& fy) {
    std::size_t amb = fx.rank * fy.rank;
    std::size_t ncols = 0;
    for (int a = 0; a < order; ++a)
        ncols += fx.dom[a].cols() * fy.dom[a].cols();
    ExactMatrix rel(ring, amb, ncols);
    std::size_t col = 0;
    for (int a = 0; a < order; ++a)
        for (std::size_t mi = 0; mi < fx.dom[a].cols(); ++mi)
            for (std::size_t yi = 0; yi < fy.dom[a].cols(); ++yi, ++col)
                add_relator(rel, col, fy.rank, fx.img[a], mi, fy.dom[a], yi,
                            fx.dom[a], mi, fy.img[a], yi);
    TensorPresentation t;
    t.ambient_rank = amb;
    t.result = quotient_presentation(rel);
    t.relators = std::move(rel);
    return t;
}

// K_par G-module family: (m)beta_g ⊗ e_{g^{-1}}x − m ⊗ [g]x, m over a basis
// of X_{g^{-1}}, x over ALL of Y's basis.
inline TensorPresentation tensor_rep_right_leg(Ring ring, const FactorData& fx,
                                               const ParRepModule& Y) {
    const FiniteGroup& g = Y.group();
    if (Y.side() != Side::Left) throw Error("Y must be a left module");
    std::size_t ry = Y.rank(), amb = fx.rank * ry;
    std::size_t ncols = 0;
    for (int a = 0; a < g.order(); ++a) ncols += fx.dom[a].cols() * ry;
    ExactMatrix rel(ring, amb, ncols);
    std::size_t col = 0;
    for (int a = 0; a < g.order(); ++a) {
        const ExactMatrix& e = Y.E(g.inv(a));
        const ExactMatrix& p = Y.pi(a);
        for (std::size_t mi = 0; mi < fx.dom[a].cols(); ++mi)
            for (std::size_t j = 0; j < ry; ++j, ++col)
                add_relator(rel, col, ry, fx.img[a], mi, e, j, fx.dom[a], mi,
                            p, j);
    }
    TensorPresentation t;
    t.ambient_rank = amb;
    t.result = quotient_presentation(rel);
    t.relators = std::move(rel);
    return t;
}

}  // namespace detail

inline TensorPresentation partial_tensor(const ParRepModule& X,
                                         const ParRepModule& Y) {
    require_same_ring(X.ring(), Y.ring());
    if (!same_group(X.group(), Y.group())) throw Error("group mismatch");
    return detail::tensor_rep_right_leg(X.ring(),
                                        detail::factor_of(X, Side::Right), Y);
}
inline TensorPresentation partial_tensor(const PartialActionModule& X,
                                         const ParRepModule& Y) {
    require_same_ring(X.ring, Y.ring());
    if (!same_group(*X.G, Y.group())) throw Error("group mismatch");
    return detail::tensor_rep_right_leg(X.ring, detail::factor_of(X), Y);
}
inline TensorPresentation partial_tensor(const ParRepModule& X,
                                         const PartialActionModule& Y) {
    require_same_ring(X.ring(), Y.ring);
    if (!same_group(X.group(), *Y.G)) throw Error("group mismatch");
    return detail::tensor_general(X.ring(), X.group().order(),
                                  detail::factor_of(X, Side::Right),
                                  detail::factor_of(Y));
}
inline TensorPresentation partial_tensor(const PartialActionModule& X,
                                         const PartialActionModule& Y) {
    require_same_ring(X.ring, Y.ring);
    if (!same_group(*X.G, *Y.G)) throw Error("group mismatch");
    return detail::tensor_general(X.ring, X.G->order(), detail::factor_of(X),
                                  detail::factor_of(Y));
}

/// Lambda(M) = KG ⊗_{G_par} M with the left-translation G-action, iota, and
/// (for K_par G-modules) tau with tau∘iota = id.
struct Globalization {
    GlobalModule Lambda;
    ExactMatrix iota;               // Lambda.rank x rank(M)
    std::optional<ExactMatrix> tau; // rank(M) x Lambda.rank
    QuotientPresentation pres;      // ambient KG ⊗ M, basis (g, i)
};

namespace detail {

inline Globalization globalize_core(GroupPtr G, Ring ring, std::size_t rankM,
                                    const ExactMatrix& relators,
                                    const ExactMatrix* tau0) {
    const FiniteGroup& g = *G;
    if (tau0 && !(*tau0 * relators).is_zero())
        throw Error("tau is not well defined on the quotient");
    QuotientPresentation qp = quotient_presentation(relators);
    if (ring.kind() == RingKind::Integers && !qp.is_free()) {
        std::string t;
        for (const Int& d : qp.torsion) t += " Z/" + d.str();
        throw NonFreeGlobalization(
            "globalization cokernel has torsion" + t +
            " over Z; retry over Q or GF(p)");
    }
    // action of k = projection ∘ (left translation on the first leg) ∘ section
    std::vector<ExactMatrix> action;
    for (int k = 0; k < g.order(); ++k) {
        ExactMatrix shifted(ring, qp.ambient_rank, qp.free_rank);
        for (int a = 0; a < g.order(); ++a) {
            std::size_t src = a * rankM, dst = g.mul(k, a) * rankM;
            for (std::size_t i = 0; i < rankM; ++i)
                for (std::size_t j = 0; j < qp.free_rank; ++j)
                    if (!qp.section.entry_zero(src + i, j))
                        shifted.set(dst + i, j, qp.section.at(src + i, j));
        }
        action.push_back(qp.projection * shifted);
    }
    Globalization out{
        make_global_module(G, ring, Side::Left, std::move(action)),
        ExactMatrix(ring, 0, 0), std::nullopt, qp};
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < rankM; ++i) first.push_back(i);
    out.iota = qp.projection.select_cols(first);
    if (tau0) {
        ExactMatrix tau = *tau0 * qp.section;
        if (tau * out.iota != ExactMatrix::identity(ring, rankM))
            throw TheoremViolation("tau ∘ iota != id");
        out.tau = std::move(tau);
    }
    return out;
}

}  // namespace detail

inline Globalization globalize(const ParRepModule& M) {
    const FiniteGroup& g = M.group();
    const int n = g.order();
    const std::size_t r = M.rank();
    ExactMatrix rel(M.ring(), n * r, std::size_t(n) * n * r);
    std::size_t col = 0;
    for (int h = 0; h < n; ++h) {
        const ExactMatrix& e = M.E(g.inv(h));
        const ExactMatrix& p = M.pi(h);
        for (int a = 0; a < n; ++a) {
            std::size_t dst = std::size_t(g.mul(a, h)) * r, src = a * r;
            for (std::size_t j = 0; j < r; ++j, ++col) {
                // gh ⊗ e_{h^-1}x_j − g ⊗ [h]x_j
                for (std::size_t i = 0; i < r; ++i) {
                    if (!e.entry_zero(i, j))
                        rel.set(dst + i, col,
                                rel.at(dst + i, col) + e.at(i, j));
                    if (!p.entry_zero(i, j))
                        rel.set(src + i, col,
                                rel.at(src + i, col) - p.at(i, j));
                }
            }
        }
    }
    // tau(g ⊗ x) = [g]·x
    ExactMatrix tau0(M.ring(), r, n * r);
    for (int a = 0; a < n; ++a)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (!M.pi(a).entry_zero(i, j))
                    tau0.set(i, a * r + j, M.pi(a).at(i, j));
    return detail::globalize_core(M.group_ptr(), M.ring(), r, rel, &tau0);
}

inline Globalization globalize(const PartialActionModule& M) {
    const FiniteGroup& g = *M.G;
    const int n = g.order();
    const std::size_t r = M.rank;
    std::size_t ncols = 0;
    for (int h = 0; h < n; ++h) ncols += n * M.domains[g.inv(h)].cols();
    ExactMatrix rel(M.ring, n * r, ncols);
    std::size_t col = 0;
    for (int h = 0; h < n; ++h) {
        const ExactMatrix& dom = M.domains[g.inv(h)];
        ExactMatrix img = M.domains[h] * M.maps[h];
        for (int a = 0; a < n; ++a) {
            std::size_t dst = std::size_t(g.mul(a, h)) * r, src = a * r;
            for (std::size_t j = 0; j < dom.cols(); ++j, ++col)
                for (std::size_t i = 0; i < r; ++i) {
                    if (!dom.entry_zero(i, j))
                        rel.set(dst + i, col,
                                rel.at(dst + i, col) + dom.at(i, j));
                    if (!img.entry_zero(i, j))
                        rel.set(src + i, col,
                                rel.at(src + i, col) - img.at(i, j));
                }
        }
    }
    return detail::globalize_core(M.G, M.ring, r, rel, nullptr);
}

struct GlobalizationReport {
    bool injective = false, domains_match = false, spans = false;
    std::vector<std::string> failures;

    bool pass() const { return injective && domains_match && spans; }
};

/// Checks (1) iota injective, (2) iota(M_g) = iota(M) ∩ Theta_g(iota(M)),
/// (3) Σ_g Theta_g(iota(M)) spans W.  Mg[g] = ambient basis of M_g in M.
inline GlobalizationReport verify_globalization(
    const std::vector<ExactMatrix>& Mg, const GlobalModule& L,
    const ExactMatrix& iota) {
    const FiniteGroup& g = *L.G;
    GlobalizationReport rep;
    rep.injective = rank(iota) == iota.cols();
    if (!rep.injective) rep.failures.push_back("iota is not injective");
    rep.domains_match = true;
    ExactMatrix all(L.ring, L.rank, 0);
    for (int a = 0; a < g.order(); ++a) {
        ExactMatrix moved = L.act(a) * iota;
        ExactMatrix lhs = iota * Mg[a];
        ExactMatrix rhs = intersect_spans(iota, moved);
        if (!same_span(lhs, rhs)) {
            rep.domains_match = false;
            rep.failures.push_back("iota(M_" + g.name(a) +
                                   ") != iota(M) ∩ Theta_" + g.name(a) +
                                   "(iota(M))");
        }
        all = all.hstack(moved);
    }
    rep.spans = rank(all) == L.rank;
    if (!rep.spans)
        rep.failures.push_back("Σ Theta_g(iota(M)) does not span");
    return rep;
}

inline GlobalizationReport verify_globalization(const ParRepModule& M,
                                                const GlobalModule& L,
                                                const ExactMatrix& iota) {
    std::vector<ExactMatrix> Mg;
    for (int a = 0; a < M.group().order(); ++a)
        Mg.push_back(image_basis(M.E(a)));
    return verify_globalization(Mg, L, iota);
}

inline GlobalizationReport verify_globalization(const PartialActionModule& M,
                                                const GlobalModule& L,
                                                const ExactMatrix& iota) {
    return verify_globalization(M.domains, L, iota);
}

struct ExactnessReport {
    bool input_exact = false, lambda_exact = false;
    std::string detail;

    bool pass() const { return input_exact && lambda_exact; }
};

/// 0 → A --f--> B --g--> C → 0 of K_par G-modules; checks exactness before
/// and after applying the globalization functor.
inline ExactnessReport check_exactness(const ParRepModule& A,
                                       const ParRepModule& B,
                                       const ParRepModule& C,
                                       const ExactMatrix& f,
                                       const ExactMatrix& g) {
    const FiniteGroup& grp = A.group();
    for (int a = 0; a < grp.order(); ++a) {
        if (f * A.pi(a) != B.pi(a) * f || g * B.pi(a) != C.pi(a) * g)
            throw Error("maps are not K_par G-morphisms at " + grp.name(a));
    }
    ExactnessReport rep;
    std::size_t rf = rank(f), rg = rank(g);
    rep.input_exact = rf == A.rank() && rg == C.rank() &&
                      rf + rg == B.rank() && (g * f).is_zero();
    if (!rep.input_exact) {
        rep.detail = "input sequence is not exact";
        return rep;
    }
    Globalization GA = globalize(A), GB = globalize(B), GC = globalize(C);
    auto induced = [&](const Globalization& src, const Globalization& dst,
                      const ExactMatrix& map) {
        // block-diagonal KG ⊗ map, pushed through the presentations
        std::size_t rs = map.cols(), rd = map.rows();
        ExactMatrix big(map.ring(), grp.order() * rd, grp.order() * rs);
        for (int a = 0; a < grp.order(); ++a)
            for (std::size_t i = 0; i < rd; ++i)
                for (std::size_t j = 0; j < rs; ++j)
                    if (!map.entry_zero(i, j))
                        big.set(a * rd + i, a * rs + j, map.at(i, j));
        return dst.pres.projection * (big * src.pres.section);
    };
    ExactMatrix lf = induced(GA, GB, f), lg = induced(GB, GC, g);
    std::size_t rlf = rank(lf), rlg = rank(lg);
    rep.lambda_exact = (lg * lf).is_zero() && rlf == GA.Lambda.rank &&
                       rlg == GC.Lambda.rank &&
                       rlf + rlg == GB.Lambda.rank;
    if (!rep.lambda_exact) rep.detail = "globalized sequence is not exact";
    return rep;
}

/// The subgroup as a group in its own right (ids = positions in member_ids).
inline FiniteGroup subgroup_group(const FiniteGroup& G, const Subgroup& S) {
    const auto& ids = S.member_ids;
    int n = static_cast<int>(ids.size());
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    auto pos = [&](int gid) {
        for (int i = 0; i < n; ++i)
            if (ids[i] == gid) return i;
        throw NotASubgroup("subgroup is not closed");
    };
    for (int i = 0; i < n; ++i) names.push_back(G.name(ids[i]));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[i][j] = pos(G.mul(ids[i], ids[j]));
    return FiniteGroup::from_table(names, table);
}

/// KG ⊗_{S_par} M as a G-module (M a K_par S-module).
inline GlobalModule induce_from_subgroup(GroupPtr G, const Subgroup& S,
                                         const ParRepModule& M) {
    const FiniteGroup& g = *G;
    if (!same_group(M.group(), subgroup_group(g, S)))
        throw Error("module group does not match the subgroup");
    if (M.side() != Side::Left) throw Error("expected a left module");
    const FiniteGroup& s = M.group();
    const int n = g.order(), ns = s.order();
    const std::size_t r = M.rank();
    ExactMatrix rel(M.ring(), n * r, std::size_t(n) * ns * r);
    std::size_t col = 0;
    for (int t = 0; t < ns; ++t) {
        const ExactMatrix& e = M.E(s.inv(t));
        const ExactMatrix& p = M.pi(t);
        int h = S.member_ids[t];
        for (int a = 0; a < n; ++a) {
            std::size_t dst = std::size_t(g.mul(a, h)) * r, src = a * r;
            for (std::size_t j = 0; j < r; ++j, ++col)
                for (std::size_t i = 0; i < r; ++i) {
                    if (!e.entry_zero(i, j))
                        rel.set(dst + i, col,
                                rel.at(dst + i, col) + e.at(i, j));
                    if (!p.entry_zero(i, j))
                        rel.set(src + i, col,
                                rel.at(src + i, col) - p.at(i, j));
                }
        }
    }
    return detail::globalize_core(G, M.ring(), r, rel, nullptr).Lambda;
}

/// KG ⊗ B with its right K_par G-action, the decomposition
/// KG⊗B ≅ K_par G ⊕ N, and delta: KG ⊗ K_par G → N.
struct NDelta {
    GroupPtr G;
    Ring ring = Ring::Q();
    std::vector<SElem> idem;    // basis of B
    std::vector<SElem> sbasis;  // basis of K_par G
    std::size_t dimB = 0, dim = 0;  // dim = |G|·dimB
    std::vector<std::pair<int, SElem>> nlabels;  // N basis: (g, u), g != 1
    ExactMatrix nbasis;  // dim x |nlabels|, columns g ⊗ nu_{g^-1}u
    ExactMatrix psi0;    // |S| x dim,  psi0(g⊗u) = [g]u
    ExactMatrix phi0;    // dim x |S|,  phi0(e_E[h]) = h ⊗ e_{h^-1 E}e_{h^-1}

    std::size_t bidx(const SElem& u) const {
        auto it = bindex_.find(u);
        if (it == bindex_.end()) throw NotInB();
        return it->second;
    }
    std::size_t idx(int g, const SElem& u) const { return g * dimB + bidx(u); }

    /// (g ⊗ u)·z = (g·h_z) ⊗ (u ◁ z) applied to a coordinate vector.
    ExactMatrix act_monomial(const SElem& z, const ExactMatrix& v) const {
        const FiniteGroup& gr = *G;
        ExactMatrix out(ring, dim, v.cols());
        SElem zs = sg_star(gr, z);
        for (std::size_t p = 0; p < dim; ++p) {
            bool nz = false;
            for (std::size_t c = 0; c < v.cols(); ++c)
                if (!v.entry_zero(p, c)) { nz = true; break; }
            if (!nz) continue;
            int g = static_cast<int>(p / dimB);
            const SElem& u = idem[p % dimB];
            std::size_t q = idx(gr.mul(g, z.grp),
                                sg_mul(gr, sg_mul(gr, zs, u), z));
            for (std::size_t c = 0; c < v.cols(); ++c)
                if (!v.entry_zero(p, c))
                    out.set(q, c, out.at(q, c) + v.at(p, c));
        }
        return out;
    }

    ExactMatrix act_alg(const ParAlgElt& z, const ExactMatrix& v) const {
        ExactMatrix out(ring, dim, v.cols());
        for (const auto& [m, c] : z.support())
            out = out + act_monomial(m, v).scale(c);
        return out;
    }

    /// Coordinate vector of g ⊗ nu_{g^-1}u (zero when g = 1 or g^-1 ∈ u).
    ExactMatrix nu_vec(int g, const SElem& u) const {
        ExactMatrix v(ring, dim, 1);
        if (g == 0) return v;
        SElem eu = sg_mul(*G, sg_e(G->inv(g)), u);
        v.set(idx(g, u), 0, Scalar::one(ring));
        v.set(idx(g, eu), 0, v.at(idx(g, eu), 0) - Scalar::one(ring));
        return v;
    }

    /// delta(Σ_g g ⊗ z_g) = Σ_g (g ⊗ nu_{g^-1}) ◁ z_g, an element of N
    /// inside KG⊗B.  x is indexed by group element.
    ExactMatrix delta(const std::vector<ParAlgElt>& x) const {
        ExactMatrix out(ring, dim, 1);
        for (int g = 0; g < G->order(); ++g) {
            if (x[g].is_zero()) continue;
            out = out + act_alg(x[g], nu_vec(g, sg_one()));
        }
        return out;
    }

    std::map<SElem, std::size_t> bindex_;  // filled by build_N_delta
};

inline NDelta build_N_delta(GroupPtr G, Ring ring) {
    const FiniteGroup& g = *G;
    NDelta nd;
    nd.G = G;
    nd.ring = ring;
    nd.idem = enumerate_idempotents(g);
    nd.sbasis = enumerate_S(g);
    nd.dimB = nd.idem.size();
    nd.dim = g.order() * nd.dimB;
    for (std::size_t i = 0; i < nd.idem.size(); ++i)
        nd.bindex_[nd.idem[i]] = i;
    // N basis: g ⊗ nu_{g^-1}u with g != 1 and g^-1 not in the mask of u
    for (int a = 1; a < g.order(); ++a)
        for (const SElem& u : nd.idem)
            if (!(u.idem & (1u << g.inv(a)))) nd.nlabels.emplace_back(a, u);
    nd.nbasis = ExactMatrix(ring, nd.dim, nd.nlabels.size());
    for (std::size_t c = 0; c < nd.nlabels.size(); ++c) {
        ExactMatrix v = nd.nu_vec(nd.nlabels[c].first, nd.nlabels[c].second);
        for (std::size_t i = 0; i < nd.dim; ++i)
            if (!v.entry_zero(i, 0)) nd.nbasis.set(i, c, v.at(i, 0));
    }
    std::map<SElem, std::size_t> sindex;
    for (std::size_t i = 0; i < nd.sbasis.size(); ++i)
        sindex[nd.sbasis[i]] = i;
    nd.psi0 = ExactMatrix(ring, nd.sbasis.size(), nd.dim);
    for (int a = 0; a < g.order(); ++a)
        for (std::size_t ui = 0; ui < nd.dimB; ++ui)
            nd.psi0.set(sindex.at(sg_mul(g, sg_gen(a), nd.idem[ui])),
                        a * nd.dimB + ui, 1);
    nd.phi0 = ExactMatrix(ring, nd.dim, nd.sbasis.size());
    for (std::size_t zi = 0; zi < nd.sbasis.size(); ++zi) {
        const SElem& z = nd.sbasis[zi];
        int h = z.grp, hi = g.inv(h);
        SElem u = sg_canonical(
            0, shift_set(g, hi, z.idem) | (h == 0 ? 0u : (1u << hi)));
        nd.phi0.set(nd.idx(h, u), zi, 1);
    }
    if (nd.psi0 * nd.phi0 != ExactMatrix::identity(ring, nd.sbasis.size()))
        throw Error("psi0 ∘ phi0 != id");
    // KG⊗B = im phi0 ⊕ N
    if (nd.sbasis.size() + nd.nlabels.size() != nd.dim ||
        rank(nd.phi0.hstack(nd.nbasis)) != nd.dim)
        throw Error("KG⊗B does not split as K_par G ⊕ N");
    return nd;
}

/// An element of KG ⊗ K_par G: one K_par G coefficient per group slot.
using TensorElt = std::vector<ParAlgElt>;

inline TensorElt tensor_zero(const FiniteGroup& g, Ring ring) {
    return TensorElt(g.order(), ParAlgElt::zero(ring));
}
inline TensorElt tensor_rmul(const FiniteGroup& g, const TensorElt& x,
                             const ParAlgElt& w) {
    TensorElt out = x;
    for (auto& z : out) z = alg_mul(g, z, w);
    return out;
}
inline TensorElt tensor_add(const TensorElt& x, const TensorElt& y) {
    TensorElt out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + y[i];
    return out;
}
inline bool tensor_eq(const TensorElt& x, const TensorElt& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] == y[i])) return false;
    return true;
}

/// phi: N → KG ⊗ K_par G with delta ∘ phi = 1_N, built by recursion over
/// the canonical enumeration g_0 = 1, g_1, ...
struct PhiResult {
    NDelta nd;
    std::vector<TensorElt> x;          // x[n] for n = 1..|G|-1
    std::vector<TensorElt> phi_basis;  // one per N basis column
};

inline PhiResult construct_phi(GroupPtr G, Ring ring) {
    const FiniteGroup& g = *G;
    PhiResult res;
    res.nd = build_N_delta(G, ring);
    NDelta& nd = res.nd;
    const int n = g.order();
    auto nu_elt = [&](int a) { return nu(g, ring, a); };
    auto slot = [&](int a, const ParAlgElt& z) {
        TensorElt t = tensor_zero(g, ring);
        t[a] = z;
        return t;
    };
    auto gen = [&](int a) { return ParAlgElt::monomial(ring, sg_gen(a)); };
    auto e_elt = [&](int a) { return ParAlgElt::monomial(ring, sg_e(a)); };
    res.x.assign(n, tensor_zero(g, ring));  // res.x[0] unused
    for (int m = 1; m < n; ++m) {
        if (m == 1) {
            res.x[1] = slot(1, nu_elt(g.inv(1)));
        } else {
            // x_{m,1} = g_m⊗nu_{g_m^-1} + x_1[g_1^-1 g_m]
            //           − g_m⊗nu_{g_m^-1}e_{g_m^-1 g_1}
            int gm = m, gmi = g.inv(m);
            TensorElt cur = tensor_add(
                slot(gm, nu_elt(gmi)),
                tensor_rmul(g, res.x[1], gen(g.mul(g.inv(1), gm))));
            cur = tensor_add(
                cur, slot(gm, -alg_mul(g, nu_elt(gmi),
                                       e_elt(g.mul(gmi, 1)))));
            // x_{m,r} = x_r[g_r^-1 g_m] + x_{m,r-1} nu_{g_m^-1 g_r}
            for (int r = 2; r < m; ++r)
                cur = tensor_add(
                    tensor_rmul(g, res.x[r], gen(g.mul(g.inv(r), gm))),
                    tensor_rmul(g, cur, nu_elt(g.mul(gmi, r))));
            res.x[m] = cur;
        }
        // (i) delta(x_m) = g_m ⊗ nu_{g_m^-1}
        if (nd.delta(res.x[m]) != nd.nu_vec(m, sg_one()))
            throw ConstructionFailed("condition (i) fails at n = " +
                                     g.name(m));
        // (ii) x_m[g_m^-1 g_r] = x_r e_{g_r^-1 g_m} for r <= m
        for (int r = 1; r <= m; ++r)
            if (!tensor_eq(
                    tensor_rmul(g, res.x[m], gen(g.mul(g.inv(m), r))),
                    tensor_rmul(g, res.x[r], e_elt(g.mul(g.inv(r), m)))))
                throw ConstructionFailed("condition (ii) fails at n = " +
                                         g.name(m) + ", r = " + g.name(r));
    }
    // phi(g_m ⊗ nu_{g_m^-1}u) := x_m · nu_{g_m^-1}u and the certificates
    for (std::size_t c = 0; c < nd.nlabels.size(); ++c) {
        auto [a, u] = nd.nlabels[c];
        ParAlgElt w = alg_mul(g, nu_elt(g.inv(a)),
                              ParAlgElt::monomial(ring, u));
        res.phi_basis.push_back(tensor_rmul(g, res.x[a], w));
        if (nd.delta(res.phi_basis.back()) != nd.nbasis.col(c))
            throw ConstructionFailed("delta ∘ phi != id at basis " +
                                     std::to_string(c));
    }
    // right-linearity: phi(b ◁ [t]) = phi(b)·[t] for every basis b, t
    for (int t = 0; t < n; ++t) {
        ExactMatrix moved = nd.act_monomial(sg_gen(t), nd.nbasis);
        auto coords = solve_columns(nd.nbasis, moved);
        if (!coords)
            throw ConstructionFailed("N is not closed under the action of [" +
                                     g.name(t) + "]");
        for (std::size_t c = 0; c < nd.nlabels.size(); ++c) {
            TensorElt lhs = tensor_zero(g, ring);
            for (std::size_t k = 0; k < nd.nlabels.size(); ++k)
                if (!coords->entry_zero(k, c))
                    lhs = tensor_add(
                        lhs, tensor_rmul(g, res.phi_basis[k],
                                         ParAlgElt::monomial(
                                             ring, sg_one(),
                                             coords->at(k, c))));
            TensorElt rhs = tensor_rmul(g, res.phi_basis[c], gen(t));
            if (!tensor_eq(lhs, rhs))
                throw ConstructionFailed(
                    "phi is not right K_par G-linear at basis " +
                    std::to_string(c) + ", t = " + g.name(t));
        }
    }
    return res;
}

/// Basis of Hom_{K_par G}(Lambda(K_par G), M) for a right module M, with the
/// right G-action (f·k)(x) = f(k·x); Lambda(K_par G) is modeled as KG⊗B.
struct Intertwiner {
    GroupPtr G;
    Ring ring = Ring::Q();
    std::size_t source_dim = 0;
    std::vector<ExactMatrix> basis;  // each rank(M) x source_dim
    GlobalModule module;             // the Hom space as a right G-module
};

inline Intertwiner hom_intertwiners(const ParRepModule& M) {
    if (M.side() != Side::Right) throw Error("target must be a right module");
    GroupPtr G = M.group_ptr();
    const FiniteGroup& g = *G;
    Ring ring = M.ring();
    std::vector<SElem> idem = enumerate_idempotents(g);
    std::map<SElem, std::size_t> bindex;
    for (std::size_t i = 0; i < idem.size(); ++i) bindex[idem[i]] = i;
    const std::size_t dimB = idem.size(), D = g.order() * dimB;
    const std::size_t rM = M.rank();
    // permutation of the KG⊗B basis under ·[h]: (a,u) -> (ah, u ◁ [h])
    auto rperm = [&](int h) {
        std::vector<std::size_t> p(D);
        for (int a = 0; a < g.order(); ++a)
            for (std::size_t ui = 0; ui < dimB; ++ui) {
                SElem u2 = sg_mul(g, sg_mul(g, sg_gen(g.inv(h)), idem[ui]),
                                  sg_gen(h));
                p[a * dimB + ui] = g.mul(a, h) * dimB + bindex.at(u2);
            }
        return p;
    };
    // unknowns F (rM x D), var(s, j) = j*rM + s; constraints per h != 1, j:
    // F[:, perm_h(j)] = R(h)·F[:, j]
    ExactMatrix sys(ring, (g.order() - 1) * D * rM, D * rM);
    std::size_t row = 0;
    for (int h = 1; h < g.order(); ++h) {
        auto p = rperm(h);
        const ExactMatrix& R = M.pi(h);
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t r = 0; r < rM; ++r, ++row) {
                sys.set(row, p[j] * rM + r, 1);
                for (std::size_t s = 0; s < rM; ++s)
                    if (!R.entry_zero(r, s))
                        sys.set(row, j * rM + s,
                                sys.at(row, j * rM + s) - R.at(r, s));
            }
    }
    ExactMatrix K = kernel_basis(sys);
    Intertwiner out{G, ring, D, {}, GlobalModule{}};
    for (std::size_t c = 0; c < K.cols(); ++c) {
        ExactMatrix F(ring, rM, D);
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t s = 0; s < rM; ++s)
                if (!K.entry_zero(j * rM + s, c))
                    F.set(s, j, K.at(j * rM + s, c));
        out.basis.push_back(std::move(F));
    }
    // right G-action (f·k)(x) = f(k·x) with k·(a⊗u) = ka⊗u
    std::vector<ExactMatrix> action;
    for (int k = 0; k < g.order(); ++k) {
        ExactMatrix moved(ring, K.rows(), K.cols());
        for (int a = 0; a < g.order(); ++a)
            for (std::size_t ui = 0; ui < dimB; ++ui) {
                std::size_t j = a * dimB + ui;
                std::size_t kj = g.mul(k, a) * dimB + ui;
                for (std::size_t s = 0; s < rM; ++s)
                    for (std::size_t c = 0; c < K.cols(); ++c)
                        if (!K.entry_zero(kj * rM + s, c))
                            moved.set(j * rM + s, c, K.at(kj * rM + s, c));
            }
        auto coords = solve_columns(K, moved);
        if (!coords) throw Error("Hom space is not G-invariant");
        action.push_back(*coords);
    }
    out.module = make_global_module(G, ring, Side::Right, std::move(action));
    return out;
}

}  // namespace parhom
