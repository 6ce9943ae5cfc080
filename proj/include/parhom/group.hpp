// Finite groups with canonical element enumerations.
#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "ring.hpp"

namespace parhom {

struct InvalidCayleyTable : Error {
    explicit InvalidCayleyTable(const std::string& m) : Error(m) {}
};
struct NotASubgroup : Error {
    explicit NotASubgroup(const std::string& m) : Error(m) {}
};

inline constexpr int kMaxGroupOrder = 24;

/// Finite group on ids 0..order-1 with id 0 the identity.
class FiniteGroup {
  public:
    static FiniteGroup cyclic(int n) {
        check_order(n);
        FiniteGroup g;
        g.n_ = n;
        g.desc_ = "C" + std::to_string(n);
        g.mul_.resize(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) g.mul_[a * n + b] = (a + b) % n;
        for (int a = 0; a < n; ++a)
            g.names_.push_back(a == 0 ? "1" : (a == 1 ? "g" : "g^" + std::to_string(a)));
        g.finish();
        return g;
    }

    /// Dihedral group of order 2n: ids 0..n-1 are r^i, ids n..2n-1 are r^i*s.
    static FiniteGroup dihedral(int n) {
        check_order(2 * n);
        FiniteGroup g;
        g.n_ = 2 * n;
        g.desc_ = "D" + std::to_string(n);
        auto id = [n](int i, int s) { return s ? n + i : i; };
        g.mul_.resize(4 * n * n);
        for (int i = 0; i < n; ++i)
            for (int si = 0; si < 2; ++si)
                for (int j = 0; j < n; ++j)
                    for (int sj = 0; sj < 2; ++sj) {
                        // (r^i s^si)(r^j s^sj) = r^(i + j or i - j) s^(si xor sj)
                        int k = si ? ((i - j) % n + n) % n : (i + j) % n;
                        g.mul_[id(i, si) * 2 * n + id(j, sj)] = id(k, si ^ sj);
                    }
        for (int i = 0; i < n; ++i)
            g.names_.push_back(i == 0 ? "1" : "r^" + std::to_string(i));
        for (int i = 0; i < n; ++i)
            g.names_.push_back(i == 0 ? "s" : "r^" + std::to_string(i) + "*s");
        g.finish();
        return g;
    }

    /// Symmetric group on n <= 4 letters, lexicographic one-line notation.
    static FiniteGroup symmetric(int n) {
        if (n > 4) throw GroupTooLarge("symmetric(n) supports n <= 4");
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        int order = static_cast<int>(perms.size());
        check_order(order);
        FiniteGroup g;
        g.n_ = order;
        g.desc_ = "S" + std::to_string(n);
        g.mul_.resize(order * order);
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b) {
                std::vector<int> c(n);
                for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
                g.mul_[a * order + b] =
                    static_cast<int>(std::find(perms.begin(), perms.end(), c) -
                                     perms.begin());
            }
        for (auto& q : perms) {
            std::string s;
            for (int v : q) s += std::to_string(v + 1);
            g.names_.push_back(s);
        }
        g.finish();
        return g;
    }

    /// Direct product in lexicographic tuple order (first factor slowest).
    static FiniteGroup product(const std::vector<FiniteGroup>& factors) {
        int order = 1;
        for (const auto& f : factors) order *= f.order();
        check_order(order);
        FiniteGroup g;
        g.n_ = order;
        g.desc_ = "product";
        auto split = [&](int id) {
            std::vector<int> t(factors.size());
            for (std::size_t k = factors.size(); k-- > 0;) {
                t[k] = id % factors[k].order();
                id /= factors[k].order();
            }
            return t;
        };
        auto join = [&](const std::vector<int>& t) {
            int id = 0;
            for (std::size_t k = 0; k < factors.size(); ++k)
                id = id * factors[k].order() + t[k];
            return id;
        };
        g.mul_.resize(order * order);
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b) {
                auto ta = split(a), tb = split(b);
                std::vector<int> tc(factors.size());
                for (std::size_t k = 0; k < factors.size(); ++k)
                    tc[k] = factors[k].mul(ta[k], tb[k]);
                g.mul_[a * order + b] = join(tc);
            }
        for (int a = 0; a < order; ++a) {
            auto t = split(a);
            std::string s = "(";
            for (std::size_t k = 0; k < factors.size(); ++k) {
                if (k) s += ",";
                s += factors[k].name(t[k]);
            }
            g.names_.push_back(s + ")");
        }
        g.finish();
        return g;
    }

    static FiniteGroup from_table(const std::vector<std::string>& names,
                                  const std::vector<std::vector<int>>& table) {
        int n = static_cast<int>(table.size());
        check_order(n);
        FiniteGroup g;
        g.n_ = n;
        g.desc_ = "table";
        g.names_ = names;
        if (static_cast<int>(names.size()) != n)
            throw InvalidCayleyTable("names/table size mismatch");
        g.mul_.resize(n * n);
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(table[a].size()) != n)
                throw InvalidCayleyTable("ragged table row " + std::to_string(a));
            for (int b = 0; b < n; ++b) {
                int v = table[a][b];
                if (v < 0 || v >= n)
                    throw InvalidCayleyTable("entry out of range at (" +
                                             std::to_string(a) + "," +
                                             std::to_string(b) + ")");
                g.mul_[a * n + b] = v;
            }
        }
        g.validate();
        g.finish();
        return g;
    }

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::string& name(int a) const { return names_[a]; }
    const std::string& description() const { return desc_; }

    int id_of_name(const std::string& nm) const {
        for (int i = 0; i < n_; ++i)
            if (names_[i] == nm) return i;
        throw Error("no group element named '" + nm + "'");
    }

    bool is_abelian() const {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

  private:
    static void check_order(int n) {
        if (n < 1) throw Error("group order must be positive");
        if (n > kMaxGroupOrder)
            throw GroupTooLarge("group order " + std::to_string(n) +
                                " exceeds cap " + std::to_string(kMaxGroupOrder));
    }

    void validate() const {
        for (int a = 0; a < n_; ++a) {
            if (mul(0, a) != a || mul(a, 0) != a)
                throw InvalidCayleyTable("id 0 is not an identity at " +
                                         std::to_string(a));
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw InvalidCayleyTable(
                            "associativity fails at (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
        for (int a = 0; a < n_; ++a) {
            bool found = false;
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == 0 && mul(b, a) == 0) found = true;
            if (!found)
                throw InvalidCayleyTable("no inverse for " + std::to_string(a));
        }
    }

    void finish() {
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == 0 && mul(b, a) == 0) inv_[a] = b;
        for (int a = 0; a < n_; ++a)
            if (inv_[a] < 0) throw InvalidCayleyTable("no inverse for " + std::to_string(a));
    }

    int n_ = 1;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
    std::string desc_;
};

struct Subgroup {
    std::vector<int> member_ids;  // sorted, contains 0
    std::vector<int> coset_reps;  // minimal id per left coset, sorted

    std::size_t index() const { return coset_reps.size(); }
};

inline Subgroup check_subgroup(const FiniteGroup& G, std::vector<int> ids) {
    if (ids.empty()) throw NotASubgroup("empty id set");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto member = [&](int x) {
        return std::binary_search(ids.begin(), ids.end(), x);
    };
    if (!member(0)) throw NotASubgroup("identity missing");
    for (int a : ids)
        for (int b : ids)
            if (!member(G.mul(a, b)))
                throw NotASubgroup("not closed: " + std::to_string(a) + "*" +
                                   std::to_string(b) + " = " +
                                   std::to_string(G.mul(a, b)));
    for (int a : ids)
        if (!member(G.inv(a)))
            throw NotASubgroup("inverse missing for " + std::to_string(a));
    Subgroup s;
    s.member_ids = ids;
    std::vector<bool> seen(G.order(), false);
    for (int g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        s.coset_reps.push_back(g);  // minimal id: ids scanned in order
        for (int h : ids) seen[G.mul(g, h)] = true;
    }
    return s;
}

using GroupPtr = std::shared_ptr<const FiniteGroup>;

}  // namespace parhom
