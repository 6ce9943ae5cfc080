// Cokernel presentations and homology of a composable pair of matrices.
#pragma once

#include <string>
#include <vector>

#include "linalg.hpp"
#include "snf.hpp"

namespace parhom {

struct ComplexNotExactlyComposable : Error {
    explicit ComplexNotExactlyComposable(const std::string& m) : Error(m) {}
};
struct TheoremViolation : Error {
    explicit TheoremViolation(const std::string& m) : Error(m) {}
};

/// Betti rank plus torsion invariant factors (empty over fields).
struct HomologySummary {
    std::size_t betti = 0;
    std::vector<Int> torsion;

    bool operator==(const HomologySummary& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
    bool operator!=(const HomologySummary& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = std::to_string(betti);
        for (const Int& t : torsion) s += "+Z/" + t.str();
        return s;
    }
};

/// coker(relators) with a section/projection pair identifying the free part.
/// When torsion is empty: projection*section = id, projection kills every
/// relator, and section*projection = id modulo the relator span, so maps on
/// the ambient descend to the quotient as projection * map * section.
struct QuotientPresentation {
    Ring ring = Ring::Q();
    std::size_t ambient_rank = 0;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    ExactMatrix section;     // ambient_rank x free_rank
    ExactMatrix projection;  // free_rank x ambient_rank

    bool is_free() const { return torsion.empty(); }
};

inline QuotientPresentation quotient_presentation(const ExactMatrix& relators) {
    QuotientPresentation out;
    out.ring = relators.ring();
    const std::size_t n = relators.rows();
    out.ambient_rank = n;
    if (relators.ring().kind() == RingKind::Integers) {
        auto s = detail::snf_u_uinv(relators);
        std::size_t r = 0;
        std::size_t steps = std::min(s.D.rows(), s.D.cols());
        for (std::size_t i = 0; i < steps; ++i) {
            Int d = s.D.at(i, i).as_int();
            if (d == 0) break;
            if (d >= 2) out.torsion.push_back(d);
            ++r;
        }
        out.free_rank = n - r;
        std::vector<std::size_t> tail;
        for (std::size_t i = r; i < n; ++i) tail.push_back(i);
        out.section = s.Uinv.select_cols(tail);
        out.projection = s.U.select_rows(tail);
        return out;
    }
    // field: reduced column echelon of the relator span
    detail::FieldEchelon ech(out.ring, n);
    for (std::size_t j = 0; j < relators.cols(); ++j)
        ech.insert(detail::column_of(relators, j));
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : ech.pivots()) is_pivot[p] = true;
    std::vector<std::size_t> free_rows;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) free_rows.push_back(i);
    out.free_rank = free_rows.size();
    out.section = ExactMatrix(out.ring, n, out.free_rank);
    for (std::size_t k = 0; k < free_rows.size(); ++k)
        out.section.set(free_rows[k], k, 1);
    // projection column j: e_j reduced modulo the echelon, restricted to the
    // free rows; one reduction step suffices because the echelon is reduced.
    out.projection = ExactMatrix(out.ring, out.free_rank, n);
    std::vector<std::size_t> pivot_pos(n, n);
    for (std::size_t k = 0; k < ech.pivots().size(); ++k)
        pivot_pos[ech.pivots()[k]] = k;
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_pivot[j]) {
            std::size_t k = 0;
            while (free_rows[k] != j) ++k;
            out.projection.set(k, j, 1);
        } else {
            const auto& w = ech.vec(pivot_pos[j]);
            for (std::size_t k = 0; k < free_rows.size(); ++k)
                if (!w[free_rows[k]].is_zero())
                    out.projection.set(k, j, -w[free_rows[k]]);
        }
    }
    return out;
}

/// Homology at the middle of  A --d_in--> B --d_out--> C.
inline HomologySummary homology_of_pair(const ExactMatrix& d_in,
                                        const ExactMatrix& d_out) {
    require_same_ring(d_in.ring(), d_out.ring());
    if (d_out.cols() != d_in.rows())
        throw ComplexNotExactlyComposable(
            "shape mismatch: d_out cols " + std::to_string(d_out.cols()) +
            " vs d_in rows " + std::to_string(d_in.rows()));
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw ComplexNotExactlyComposable("d_out * d_in != 0");
    HomologySummary h;
    if (d_in.ring().is_field()) {
        std::size_t dim = d_in.rows();
        h.betti = dim - rank(d_out) - rank(d_in);
        return h;
    }
    ExactMatrix K = kernel_basis(d_out);
    auto X = solve_columns(K, d_in);
    if (!X) throw ComplexNotExactlyComposable("im d_in not inside ker d_out");
    std::vector<Int> inv = snf_invariants(*X);
    h.betti = K.cols() - inv.size();
    for (const Int& d : inv)
        if (d >= 2) h.torsion.push_back(d);
    return h;
}

}  // namespace parhom
