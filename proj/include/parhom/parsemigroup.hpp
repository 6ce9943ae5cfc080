// Exel's inverse semigroup S(G) in normal form, the partial group algebra
// K_par G, the idempotent subalgebra B, epsilon, and the |> / <| actions.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "group.hpp"
#include "matrix.hpp"

namespace parhom {

struct NotInB : Error {
    explicit NotInB(const std::string& m = "element is not in B") : Error(m) {}
};

/// Normal form e_{a1}...e_{ak}[h] of an element of S(G).  idem is a bitmask
/// over element ids; canonically it contains neither the identity nor grp.
struct SElem {
    int grp = 0;
    std::uint32_t idem = 0;

    auto operator<=>(const SElem&) const = default;
};

inline SElem sg_canonical(int grp, std::uint32_t idem) {
    idem &= ~(1u << 0);
    idem &= ~(1u << grp);
    return SElem{grp, idem};
}

inline SElem sg_one() { return SElem{0, 0}; }

/// [g]
inline SElem sg_gen(int g) { return sg_canonical(g, 0); }

/// e_g = [g][g^{-1}]
inline SElem sg_e(int g) { return sg_canonical(0, 1u << g); }

inline bool sg_is_idempotent(const SElem& z) { return z.grp == 0; }

inline std::uint32_t shift_set(const FiniteGroup& G, int g, std::uint32_t set) {
    std::uint32_t out = 0;
    for (int a = 0; a < G.order(); ++a)
        if (set & (1u << a)) out |= 1u << G.mul(g, a);
    return out;
}

/// (E,g)(F,h) = canonicalize(E ∪ gF ∪ {g}, gh)
inline SElem sg_mul(const FiniteGroup& G, const SElem& x, const SElem& y) {
    std::uint32_t set = x.idem | shift_set(G, x.grp, y.idem) | (1u << x.grp);
    return sg_canonical(G.mul(x.grp, y.grp), set);
}

/// (E,h)* = canonicalize(h^{-1}E ∪ {h^{-1}}, h^{-1})
inline SElem sg_star(const FiniteGroup& G, const SElem& z) {
    int hi = G.inv(z.grp);
    std::uint32_t set = shift_set(G, hi, z.idem) | (1u << hi);
    return sg_canonical(hi, set);
}

inline SElem sg_normalize(const FiniteGroup& G, const std::vector<int>& word) {
    SElem z = sg_one();
    for (int g : word) z = sg_mul(G, z, sg_gen(g));
    return z;
}

/// All of S(G), ordered by (grp, idem mask ascending).
inline std::vector<SElem> enumerate_S(const FiniteGroup& G) {
    const int n = G.order();
    if (n > kMaxGroupOrder) throw GroupTooLarge("group too large for S(G)");
    const std::uint64_t count =
        (std::uint64_t{1} << (n - 1)) +
        (n > 1 ? std::uint64_t(n - 1) << (n - 2) : 0);
    if (count > 2'000'000)
        throw GroupTooLarge("|S(G)| = " + std::to_string(count) +
                            " exceeds enumeration guardrail");
    std::vector<SElem> out;
    out.reserve(count);
    for (int h = 0; h < n; ++h) {
        std::uint32_t excluded = (1u << 0) | (1u << h);
        std::uint32_t full = (n >= 32 ? ~0u : (1u << n) - 1) & ~excluded;
        // enumerate subsets of `full` in ascending mask order
        std::uint32_t s = 0;
        for (;;) {
            out.push_back(SElem{h, s});
            if (s == full) break;
            s = (s - full) & full;
        }
    }
    return out;
}

inline std::vector<SElem> enumerate_idempotents(const FiniteGroup& G) {
    std::vector<SElem> out;
    for (const SElem& z : enumerate_S(G))
        if (z.grp == 0) out.push_back(z);
    return out;
}

/// Element of K_par G: finitely supported SElem -> Scalar map.
class ParAlgElt {
  public:
    explicit ParAlgElt(Ring ring) : ring_(ring) {}

    static ParAlgElt zero(Ring ring) { return ParAlgElt(ring); }
    static ParAlgElt one(Ring ring) { return monomial(ring, sg_one()); }
    static ParAlgElt monomial(Ring ring, const SElem& z) {
        return monomial(ring, z, Scalar::one(ring));
    }
    static ParAlgElt monomial(Ring ring, const SElem& z, const Scalar& c) {
        require_same_ring(ring, c.ring());
        ParAlgElt e(ring);
        if (!c.is_zero()) e.c_[z] = c;
        return e;
    }

    const Ring& ring() const { return ring_; }
    const std::map<SElem, Scalar>& support() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    bool in_B() const {
        for (const auto& [z, c] : c_)
            if (z.grp != 0) return false;
        return true;
    }

    Scalar coeff(const SElem& z) const {
        auto it = c_.find(z);
        return it == c_.end() ? Scalar::zero(ring_) : it->second;
    }

    void add_term(const SElem& z, const Scalar& c) {
        require_same_ring(ring_, c.ring());
        if (c.is_zero()) return;
        auto it = c_.find(z);
        if (it == c_.end()) {
            c_[z] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    ParAlgElt operator+(const ParAlgElt& o) const {
        require_same_ring(ring_, o.ring_);
        ParAlgElt out = *this;
        for (const auto& [z, c] : o.c_) out.add_term(z, c);
        return out;
    }
    ParAlgElt operator-(const ParAlgElt& o) const {
        require_same_ring(ring_, o.ring_);
        ParAlgElt out = *this;
        for (const auto& [z, c] : o.c_) out.add_term(z, -c);
        return out;
    }
    ParAlgElt scale(const Scalar& s) const {
        ParAlgElt out(ring_);
        if (s.is_zero()) return out;
        for (const auto& [z, c] : c_) out.add_term(z, c * s);
        return out;
    }
    ParAlgElt operator-() const { return scale(Scalar::of(ring_, -1)); }

    bool operator==(const ParAlgElt& o) const {
        return ring_ == o.ring_ && c_ == o.c_;
    }
    bool operator!=(const ParAlgElt& o) const { return !(*this == o); }

  private:
    Ring ring_;
    std::map<SElem, Scalar> c_;
};

inline ParAlgElt alg_mul(const FiniteGroup& G, const ParAlgElt& x,
                         const ParAlgElt& y) {
    require_same_ring(x.ring(), y.ring());
    ParAlgElt out(x.ring());
    for (const auto& [zx, cx] : x.support())
        for (const auto& [zy, cy] : y.support())
            out.add_term(sg_mul(G, zx, zy), cx * cy);
    return out;
}

/// epsilon: linear extension of z -> z* z; lands in B.
inline ParAlgElt epsilon(const FiniteGroup& G, const ParAlgElt& x) {
    ParAlgElt out(x.ring());
    for (const auto& [z, c] : x.support())
        out.add_term(sg_mul(G, sg_star(G, z), z), c);
    return out;
}

/// [g] |> u = [g]u[g^{-1}] for u in B.
inline ParAlgElt dom_act(const FiniteGroup& G, int g, const ParAlgElt& u) {
    if (!u.in_B()) throw NotInB();
    ParAlgElt out(u.ring());
    SElem gz = sg_gen(g), gzi = sg_gen(G.inv(g));
    for (const auto& [z, c] : u.support())
        out.add_term(sg_mul(G, sg_mul(G, gz, z), gzi), c);
    return out;
}

/// u <| z = z* u z for u in B, extended linearly in z.
inline ParAlgElt cod_act(const FiniteGroup& G, const ParAlgElt& u,
                         const ParAlgElt& zz) {
    if (!u.in_B()) throw NotInB();
    require_same_ring(u.ring(), zz.ring());
    ParAlgElt out(u.ring());
    for (const auto& [z, cz] : zz.support()) {
        SElem zs = sg_star(G, z);
        for (const auto& [w, cw] : u.support())
            out.add_term(sg_mul(G, sg_mul(G, zs, w), z), cw * cz);
    }
    return out;
}

inline ParAlgElt cod_act(const FiniteGroup& G, const ParAlgElt& u, int g) {
    return cod_act(G, u, ParAlgElt::monomial(u.ring(), sg_gen(g)));
}

/// nu_g = 1 - e_g
inline ParAlgElt nu(const FiniteGroup& G, Ring ring, int g) {
    (void)G;
    ParAlgElt out = ParAlgElt::one(ring);
    out.add_term(sg_e(g), Scalar::of(ring, -1));
    return out;
}

}  // namespace parhom
