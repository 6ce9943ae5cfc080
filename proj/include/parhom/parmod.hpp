// Partial representations (K_par G-modules), general partial actions on
// free modules, validation, standard constructors, coinvariants.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "parsemigroup.hpp"
#include "quotient.hpp"

namespace parhom {

struct PartialRepAxiomViolation : Error {
    std::vector<std::string> violations;
    explicit PartialRepAxiomViolation(std::vector<std::string> v)
        : Error("partial representation axioms violated: " +
                (v.empty() ? std::string("?") : v.front()) +
                (v.size() > 1 ? " (+" + std::to_string(v.size() - 1) + " more)"
                              : "")),
          violations(std::move(v)) {}
};
struct NonSaturatedDomain : Error {
    explicit NonSaturatedDomain(const std::string& m) : Error(m) {}
};
struct InvalidSetAction : Error {
    explicit InvalidSetAction(const std::string& m) : Error(m) {}
};

enum class Side { Left, Right };

/// A K_par G-module of finite rank: one matrix per group element satisfying
/// the partial-representation axioms.  For right modules pi[g] is the matrix
/// of m -> m*[g] on coordinates.
class ParRepModule {
  public:
    ParRepModule(GroupPtr G, Ring ring, Side side, std::vector<ExactMatrix> pi)
        : G_(std::move(G)), ring_(ring), side_(side), pi_(std::move(pi)) {
        rank_ = pi_.empty() ? 0 : pi_[0].rows();
        const FiniteGroup& g = *G_;
        for (int a = 0; a < g.order(); ++a) {
            ExactMatrix ea = side_ == Side::Left
                                 ? pi_[a] * pi_[g.inv(a)]
                                 : pi_[g.inv(a)] * pi_[a];
            E_.push_back(std::move(ea));
        }
    }

    const FiniteGroup& group() const { return *G_; }
    GroupPtr group_ptr() const { return G_; }
    const Ring& ring() const { return ring_; }
    Side side() const { return side_; }
    std::size_t rank() const { return rank_; }
    const ExactMatrix& pi(int g) const { return pi_[g]; }
    const ExactMatrix& E(int g) const { return E_[g]; }

    /// Matrix of a monomial of S(G) acting on this module.
    const ExactMatrix& act_monomial(const SElem& z) const {
        auto it = cache_.find(z);
        if (it != cache_.end()) return it->second;
        ExactMatrix m = ExactMatrix::identity(ring_, rank_);
        for (int a = 0; a < G_->order(); ++a)
            if (z.idem & (1u << a)) m = m * E_[a];
        m = side_ == Side::Left ? m * pi_[z.grp] : pi_[z.grp] * m;
        return cache_.emplace(z, std::move(m)).first->second;
    }

    ExactMatrix act_alg(const ParAlgElt& x) const {
        require_same_ring(ring_, x.ring());
        ExactMatrix out(ring_, rank_, rank_);
        for (const auto& [z, c] : x.support())
            out = out + act_monomial(z).scale(c);
        return out;
    }

  private:
    GroupPtr G_;
    Ring ring_;
    Side side_;
    std::size_t rank_;
    std::vector<ExactMatrix> pi_;
    std::vector<ExactMatrix> E_;
    mutable std::map<SElem, ExactMatrix> cache_;
};

/// Validate the axioms and build the module; reports every violation.
inline ParRepModule validate_partial_rep(GroupPtr G, Ring ring, Side side,
                                         std::vector<ExactMatrix> pi) {
    const FiniteGroup& g = *G;
    const int n = g.order();
    if (static_cast<int>(pi.size()) != n)
        throw PartialRepAxiomViolation({"pi must be given for every group element"});
    std::size_t rank = pi[0].rows();
    std::vector<std::string> bad;
    for (int a = 0; a < n; ++a)
        if (pi[a].rows() != rank || pi[a].cols() != rank ||
            pi[a].ring() != ring)
            bad.push_back("pi(" + g.name(a) + ") has wrong shape or ring");
    if (!bad.empty()) throw PartialRepAxiomViolation(std::move(bad));
    // For right modules the axioms hold for the transposed family.
    std::vector<ExactMatrix> A;
    for (int a = 0; a < n; ++a)
        A.push_back(side == Side::Left ? pi[a] : pi[a].transpose());
    if (A[0] != ExactMatrix::identity(ring, rank))
        bad.push_back("axiom (c): pi(1) != id");
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            int ti = g.inv(t), si = g.inv(s), st = g.mul(s, t);
            if (A[s] * A[t] * A[ti] != A[st] * A[ti])
                bad.push_back("axiom (a) fails at s=" + g.name(s) +
                              ", t=" + g.name(t));
            if (A[si] * A[s] * A[t] != A[si] * A[st])
                bad.push_back("axiom (b) fails at s=" + g.name(s) +
                              ", t=" + g.name(t));
        }
    if (!bad.empty()) throw PartialRepAxiomViolation(std::move(bad));
    return ParRepModule(std::move(G), ring, side, std::move(pi));
}

/// A partial action of G on a free module: per-g domain basis and the matrix
/// of theta_g : M_{g^{-1}} -> M_g in those bases.
struct PartialActionModule {
    GroupPtr G;
    Ring ring = Ring::Q();
    std::size_t rank = 0;
    std::vector<ExactMatrix> domains;  // rank x k_g column bases
    std::vector<ExactMatrix> maps;     // k_g x k_{g^{-1}}

    /// theta_g applied to ambient vectors lying in span(domains[inv g]).
    ExactMatrix apply(int g, const ExactMatrix& ambient_vecs) const {
        auto coords = solve_columns(domains[G->inv(g)], ambient_vecs);
        if (!coords) throw Error("vector outside the domain of theta_g");
        return domains[g] * maps[g] * *coords;
    }
};

inline std::vector<std::string> validate_partial_action(
    const PartialActionModule& M) {
    const FiniteGroup& g = *M.G;
    const int n = g.order();
    std::vector<std::string> bad;
    if (static_cast<int>(M.domains.size()) != n ||
        static_cast<int>(M.maps.size()) != n) {
        bad.push_back("domains/maps must be given for every group element");
        return bad;
    }
    if (rank(M.domains[0]) != M.rank)
        bad.push_back("axiom (i): M_1 != M");
    for (int a = 0; a < n; ++a) {
        std::size_t kg = M.domains[a].cols(), kgi = M.domains[g.inv(a)].cols();
        if (M.maps[a].rows() != kg || M.maps[a].cols() != kgi) {
            bad.push_back("theta_" + g.name(a) + " has wrong shape");
            return bad;
        }
        if (kg != kgi || rank(M.maps[a]) != kg)
            bad.push_back("theta_" + g.name(a) + " is not an isomorphism");
        if (M.ring.kind() == RingKind::Integers &&
            !image_saturated_z(M.domains[a]))
            bad.push_back("domain M_" + g.name(a) +
                          " is not a direct summand over Z");
    }
    if (!bad.empty()) return bad;
    // theta_1 = id on M
    ExactMatrix full = ExactMatrix::identity(M.ring, M.rank);
    if (!(M.domains[0] * M.maps[0] *
              *solve_columns(M.domains[0], full) == full))
        bad.push_back("axiom (i): theta_1 != id");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ai = g.inv(a), bi = g.inv(b);
            // (ii) theta_a(M_{a^-1} ∩ M_{a^-1 b}) ⊆ M_a ∩ M_b
            ExactMatrix dom =
                intersect_spans(M.domains[ai], M.domains[g.mul(ai, b)]);
            ExactMatrix img = M.apply(a, dom);
            ExactMatrix target = intersect_spans(M.domains[a], M.domains[b]);
            if (!span_contains(target, img))
                bad.push_back("axiom (ii) fails at g=" + g.name(a) +
                              ", h=" + g.name(b));
            // (iii) theta_a theta_b = theta_ab on M_{b^-1} ∩ M_{b^-1 a^-1}
            ExactMatrix dom3 =
                intersect_spans(M.domains[bi], M.domains[g.mul(bi, ai)]);
            try {
                ExactMatrix lhs = M.apply(a, M.apply(b, dom3));
                ExactMatrix rhs = M.apply(g.mul(a, b), dom3);
                if (!(lhs == rhs))
                    bad.push_back("axiom (iii) fails at g=" + g.name(a) +
                                  ", h=" + g.name(b));
            } catch (const Error&) {
                bad.push_back("axiom (iii) fails at g=" + g.name(a) +
                              ", h=" + g.name(b));
            }
        }
    return bad;
}

/// Domains e_g·M with theta_g = pi(g) restricted (left modules).
inline PartialActionModule induced_partial_action(const ParRepModule& M) {
    if (M.side() != Side::Left)
        throw Error("induced_partial_action expects a left module");
    PartialActionModule out;
    out.G = M.group_ptr();
    out.ring = M.ring();
    out.rank = M.rank();
    const FiniteGroup& g = M.group();
    for (int a = 0; a < g.order(); ++a) {
        ExactMatrix d = image_basis(M.E(a));
        if (out.ring.kind() == RingKind::Integers && !image_saturated_z(d))
            throw NonSaturatedDomain("im E_" + g.name(a) +
                                     " is not a direct summand over Z");
        out.domains.push_back(std::move(d));
    }
    for (int a = 0; a < g.order(); ++a) {
        ExactMatrix img = M.pi(a) * out.domains[g.inv(a)];
        auto coords = solve_columns(out.domains[a], img);
        if (!coords)
            throw Error("pi(g) does not map M_{g^-1} into M_g");
        out.maps.push_back(*coords);
    }
    return out;
}

/// Set-theoretic partial action: theta[g][x] = image point or -1 (undefined);
/// dom theta_g = X_{g^{-1}}.
struct SetPartialAction {
    int npoints = 0;
    std::vector<std::vector<int>> theta;
};

inline void validate_set_action(const FiniteGroup& g,
                                const SetPartialAction& a) {
    const int n = g.order(), m = a.npoints;
    if (static_cast<int>(a.theta.size()) != n)
        throw InvalidSetAction("theta must be given for every group element");
    for (int k = 0; k < n; ++k)
        if (static_cast<int>(a.theta[k].size()) != m)
            throw InvalidSetAction("theta_" + g.name(k) + " has wrong length");
    auto defined = [&](int k, int x) { return a.theta[k][x] >= 0; };
    for (int x = 0; x < m; ++x)
        if (a.theta[0][x] != x)
            throw InvalidSetAction("theta_1 is not the identity");
    for (int k = 0; k < n; ++k)
        for (int x = 0; x < m; ++x) {
            if (!defined(k, x)) continue;
            int y = a.theta[k][x];
            if (y >= m) throw InvalidSetAction("image point out of range");
            if (!defined(g.inv(k), y) || a.theta[g.inv(k)][y] != x)
                throw InvalidSetAction("theta_" + g.name(k) +
                                       " is not a bijection onto its image");
        }
    auto member = [&](int j, int x) { return defined(g.inv(j), x); };
    for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h)
            for (int x = 0; x < m; ++x) {
                // (ii) theta_k(X_{k^-1} ∩ X_{k^-1 h}) ⊆ X_k ∩ X_h
                if (member(g.inv(k), x) && member(g.mul(g.inv(k), h), x)) {
                    int y = a.theta[k][x];
                    if (y < 0 || !member(h, y))
                        throw InvalidSetAction("axiom (ii) fails at g=" +
                                               g.name(k) + ", h=" + g.name(h));
                }
                // (iii) theta_k theta_h = theta_kh on X_{h^-1} ∩ X_{h^-1 k^-1}
                if (member(g.inv(h), x) &&
                    member(g.mul(g.inv(h), g.inv(k)), x)) {
                    int y = a.theta[h][x];
                    if (y < 0 || !defined(k, y) ||
                        a.theta[k][y] != a.theta[g.mul(k, h)][x])
                        throw InvalidSetAction("axiom (iii) fails at g=" +
                                               g.name(k) + ", h=" + g.name(h));
                }
            }
}

/// 0/1 matrices of the linearized set action: pi_g(x) = theta_g(x) or 0.
inline ParRepModule linearize_set_action(GroupPtr G, const SetPartialAction& a,
                                         Ring ring) {
    validate_set_action(*G, a);
    std::vector<ExactMatrix> pi;
    for (int k = 0; k < G->order(); ++k) {
        ExactMatrix p(ring, a.npoints, a.npoints);
        for (int x = 0; x < a.npoints; ++x)
            if (a.theta[k][x] >= 0) p.set(a.theta[k][x], x, 1);
        pi.push_back(std::move(p));
    }
    return validate_partial_rep(std::move(G), ring, Side::Left, std::move(pi));
}

/// M_G = M / span{ [g]m - e_{g^-1}m } for left K_par G-modules.
inline QuotientPresentation coinvariants(const ParRepModule& M) {
    if (M.side() != Side::Left) throw Error("coinvariants expects a left module");
    const FiniteGroup& g = M.group();
    ExactMatrix rel(M.ring(), M.rank(), 0);
    for (int a = 0; a < g.order(); ++a)
        rel = rel.hstack(M.pi(a) - M.E(g.inv(a)));
    return quotient_presentation(rel);
}

/// M_G = M / span{ theta_g(m) - m : m in M_{g^-1} } for partial actions.
inline QuotientPresentation coinvariants(const PartialActionModule& M) {
    const FiniteGroup& g = *M.G;
    ExactMatrix rel(M.ring, M.rank, 0);
    for (int a = 0; a < g.order(); ++a)
        rel = rel.hstack(M.domains[a] * M.maps[a] - M.domains[g.inv(a)]);
    return quotient_presentation(rel);
}

// ---- standard modules ----

inline ParRepModule trivial_module(GroupPtr G, Ring ring,
                                   Side side = Side::Left) {
    std::vector<ExactMatrix> pi(G->order(), ExactMatrix::identity(ring, 1));
    return validate_partial_rep(std::move(G), ring, side, std::move(pi));
}

/// K_par G on the basis enumerate_S(G), acting by multiplication.
inline ParRepModule regular_module(GroupPtr G, Ring ring,
                                   Side side = Side::Left) {
    const FiniteGroup& g = *G;
    std::vector<SElem> basis = enumerate_S(g);
    std::map<SElem, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<ExactMatrix> pi;
    for (int a = 0; a < g.order(); ++a) {
        ExactMatrix p(ring, basis.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            SElem out = side == Side::Left ? sg_mul(g, sg_gen(a), basis[j])
                                           : sg_mul(g, basis[j], sg_gen(a));
            p.set(index.at(out), j, 1);
        }
        pi.push_back(std::move(p));
    }
    return validate_partial_rep(std::move(G), ring, side, std::move(pi));
}

/// B on the idempotent basis: left side acts by [g] |> u, right by u <| [g].
inline ParRepModule b_module(GroupPtr G, Ring ring, Side side = Side::Left) {
    const FiniteGroup& g = *G;
    std::vector<SElem> basis = enumerate_idempotents(g);
    std::map<SElem, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<ExactMatrix> pi;
    for (int a = 0; a < g.order(); ++a) {
        ExactMatrix p(ring, basis.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            SElem u = basis[j];
            SElem out = side == Side::Left
                            ? sg_mul(g, sg_mul(g, sg_gen(a), u),
                                     sg_gen(g.inv(a)))
                            : sg_mul(g, sg_mul(g, sg_gen(g.inv(a)), u),
                                     sg_gen(a));
            p.set(index.at(out), j, 1);
        }
        pi.push_back(std::move(p));
    }
    return validate_partial_rep(std::move(G), ring, side, std::move(pi));
}

inline std::vector<SElem> regular_basis(const FiniteGroup& g) {
    return enumerate_S(g);
}
inline std::vector<SElem> b_basis(const FiniteGroup& g) {
    return enumerate_idempotents(g);
}

}  // namespace parhom
