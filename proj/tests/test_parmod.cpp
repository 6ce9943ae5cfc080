// Partial representation validation, set actions, partial action modules and
// coinvariants.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parhom/parmod.hpp"

using namespace parhom;

namespace {

GroupPtr mk(FiniteGroup g) {
    return std::make_shared<FiniteGroup>(std::move(g));
}

ParRepModule diag_c2(Ring ring, Side side = Side::Left) {
    GroupPtr c2 = mk(FiniteGroup::cyclic(2));
    ExactMatrix d(ring, 2, 2);
    d.set(0, 0, 1);
    return validate_partial_rep(c2, ring, side,
                                {ExactMatrix::identity(ring, 2), d});
}

}  // namespace

TEST_CASE("standard modules satisfy the axioms on both sides") {
    std::vector<GroupPtr> groups = {
        mk(FiniteGroup::cyclic(2)), mk(FiniteGroup::cyclic(3)),
        mk(FiniteGroup::product({FiniteGroup::cyclic(2),
                                 FiniteGroup::cyclic(2)})),
        mk(FiniteGroup::symmetric(3))};
    for (const GroupPtr& g : groups)
        for (Side side : {Side::Left, Side::Right}) {
            CHECK_NOTHROW(trivial_module(g, Ring::Z(), side));
            CHECK_NOTHROW(regular_module(g, Ring::Q(), side));
            CHECK_NOTHROW(b_module(g, Ring::GF(2), side));
        }
}

TEST_CASE("axiom violations are diagnosed") {
    GroupPtr c2 = mk(FiniteGroup::cyclic(2));
    Ring q = Ring::Q();
    // pi(g) nilpotent instead of a partial symmetry
    ExactMatrix bad(q, 2, 2);
    bad.set(0, 1, 1);
    try {
        validate_partial_rep(c2, q, Side::Left,
                             {ExactMatrix::identity(q, 2), bad});
        FAIL("expected a violation");
    } catch (const PartialRepAxiomViolation& e) {
        CHECK(!e.violations.empty());
        CHECK(e.violations.front().find("axiom") != std::string::npos);
    }
    CHECK_THROWS_AS(
        validate_partial_rep(c2, q, Side::Left,
                             {ExactMatrix::identity(q, 2)}),
        PartialRepAxiomViolation);
}

TEST_CASE("diag module and its set-action origin") {
    ParRepModule m = diag_c2(Ring::Z());
    CHECK(m.rank() == 2);
    CHECK(m.E(1) == m.pi(1));

    GroupPtr c2 = mk(FiniteGroup::cyclic(2));
    SetPartialAction a;
    a.npoints = 2;
    a.theta = {{0, 1}, {0, -1}};
    ParRepModule lin = linearize_set_action(c2, a, Ring::Z());
    CHECK(lin.pi(1) == m.pi(1));

    SetPartialAction broken = a;
    broken.theta[1] = {1, -1};  // not a restriction of a bijection
    CHECK_THROWS_AS(linearize_set_action(c2, broken, Ring::Z()),
                    InvalidSetAction);
    SetPartialAction notid = a;
    notid.theta[0] = {1, 0};
    CHECK_THROWS_AS(linearize_set_action(c2, notid, Ring::Z()),
                    InvalidSetAction);
}

TEST_CASE("act_monomial multiplies like S(G)") {
    GroupPtr c3 = mk(FiniteGroup::cyclic(3));
    ParRepModule m = regular_module(c3, Ring::Q());
    const FiniteGroup& g = *c3;
    std::vector<SElem> S = enumerate_S(g);
    for (const SElem& x : {sg_gen(1), sg_e(2), sg_mul(g, sg_gen(2), sg_e(1))})
        for (const SElem& y : {sg_gen(2), sg_e(1)}) {
            // left action: act(xy) = act(x) act(y)
            CHECK(m.act_monomial(sg_mul(g, x, y)) ==
                  m.act_monomial(x) * m.act_monomial(y));
        }
    ParRepModule r = regular_module(c3, Ring::Q(), Side::Right);
    for (const SElem& x : {sg_gen(1), sg_e(2)})
        for (const SElem& y : {sg_gen(2), sg_e(1)})
            CHECK(r.act_monomial(sg_mul(g, x, y)) ==
                  r.act_monomial(y) * r.act_monomial(x));
}

TEST_CASE("induced partial action of a module validates") {
    ParRepModule m = diag_c2(Ring::Q());
    PartialActionModule pa = induced_partial_action(m);
    CHECK(validate_partial_action(pa).empty());
    CHECK(pa.domains[1].cols() == 1);
    ParRepModule reg = regular_module(mk(FiniteGroup::cyclic(3)), Ring::Q());
    CHECK(validate_partial_action(induced_partial_action(reg)).empty());
}

TEST_CASE("partial action axioms reject a non-functorial family") {
    GroupPtr c4 = mk(FiniteGroup::cyclic(4));
    Ring q = Ring::Q();
    PartialActionModule m;
    m.G = c4;
    m.ring = q;
    m.rank = 2;
    m.domains.assign(4, ExactMatrix::identity(q, 2));
    m.maps.assign(4, ExactMatrix::identity(q, 2));
    ExactMatrix s(q, 2, 2);
    s.set(0, 1, 1);
    s.set(1, 0, 1);
    m.maps[1] = s;  // theta_g global swap but theta_{g^2} = id: not a morphism
    std::vector<std::string> bad = validate_partial_action(m);
    CHECK(!bad.empty());
}

TEST_CASE("coinvariants") {
    // trivial module: relators vanish, H_0 = R
    GroupPtr c3 = mk(FiniteGroup::cyclic(3));
    QuotientPresentation q0 = coinvariants(trivial_module(c3, Ring::Z()));
    CHECK(q0.free_rank == 1);
    CHECK(q0.torsion.empty());
    // diag module over Z: coinvariants are Z^2 (relators e_g m - [g] m = 0)
    QuotientPresentation q1 = coinvariants(diag_c2(Ring::Z()));
    CHECK(q1.free_rank == 2);
    CHECK(q1.torsion.empty());
    // regular module: coinvariants have dim = dim B
    for (const GroupPtr& g :
         {mk(FiniteGroup::cyclic(2)), mk(FiniteGroup::cyclic(3))}) {
        QuotientPresentation qr = coinvariants(regular_module(g, Ring::Q()));
        CHECK(qr.free_rank == std::size_t{1} << (g->order() - 1));
    }
    // partial action coinvariants agree with the induced module's
    ParRepModule m = diag_c2(Ring::Z());
    QuotientPresentation qa = coinvariants(induced_partial_action(m));
    CHECK(qa.free_rank == q1.free_rank);
    CHECK(qa.torsion == q1.torsion);
}
