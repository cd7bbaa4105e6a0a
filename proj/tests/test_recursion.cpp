#include "doctest.h"
#include "helpers.hpp"
#include "superjet/recursion.hpp"

using namespace sjt;

namespace {

const Symbol* f = make_field("f", Parity::odd, 1);
const Symbol* b = make_field("b", Parity::even, 1);
const Symbol* w = make_field("w", Parity::even, 1);
const Symbol* v = make_field("v", Parity::even, 1);

SuperPoly Df() { return J(f, 0, 1); }
SuperPoly Db() { return J(b, 0, 1); }

// f_t = Db, b_t = b^2 + Df with Dw = -f, w_t = -b.
PhantomSystem quadratic_phantoms() {
    EvolutionSystem s;
    s.fields = {f, b};
    s.rhs[f] = Db();
    s.rhs[b] = J(b) * J(b) + Df();
    Nonlocality nl{w, Rational(0), {}};
    nl.defs[Direction::D1] = -J(f);
    nl.defs[Direction::Dt] = -J(b);
    return linearize(Covering(s, {nl}));
}

WeightSystem half_weights() {
    WeightSystem ws;
    ws.set(f, frac(1, 2));
    ws.set(b, frac(1, 2));
    ws.set(w, 0);
    return ws;
}

Shadow burgers_recursion(const PhantomSystem& ps, int sign = 1) {
    const Symbol* F = ps.phantom_for(f);
    const Symbol* B = ps.phantom_for(b);
    const Symbol* W = ps.phantom_for(w);
    Shadow r;
    r.components[f] = J(F, 1) - Df() * J(F) + Rational(sign) * J(f, 1) * J(W);
    r.components[b] = J(B, 1) - Df() * J(B) + J(b, 1) * J(W);
    return r;
}

Flow flow(const SuperPoly& pf, const SuperPoly& pb, Parity par = Parity::even) {
    Flow phi;
    phi.parity = par;
    phi.components[f] = pf;
    phi.components[b] = pb;
    return phi;
}

// f_t = b Db, b_t = Df_x with Dw = f, w_t = b^2/2 and v_x = b, v_t = Df.
PhantomSystem dispersionless_phantoms() {
    EvolutionSystem s;
    s.fields = {f, b};
    s.rhs[f] = J(b) * Db();
    s.rhs[b] = J(f, 1, 1);
    Nonlocality nw{w, Rational(1), {}};
    nw.defs[Direction::D1] = J(f);
    nw.defs[Direction::Dt] = C(1, 2) * J(b) * J(b);
    Nonlocality nv{v, Rational(1), {}};
    nv.defs[Direction::Dx] = J(b);
    nv.defs[Direction::Dt] = Df();
    return linearize(Covering(s, {nw, nv}));
}

Shadow order_one_recursion(const PhantomSystem& ps) {
    const Symbol* F = ps.phantom_for(f);
    const Symbol* B = ps.phantom_for(b);
    const Symbol* W = ps.phantom_for(w);
    const Symbol* V = ps.phantom_for(v);
    Shadow r;
    r.components[f] = Db() * J(b) * J(V) + C(1, 2) * J(b) * J(b) * J(V, 0, 1) + C(3, 4) * Df() * J(F) +
                      C(3, 4) * J(f, 1) * J(W);
    r.components[b] = J(f, 1, 1) * J(V) + C(1, 2) * J(b) * J(F, 0, 1) + C(3, 4) * Df() * J(B) + C(3, 4) * J(b, 1) * J(W);
    return r;
}

WeightSystem unit_weights() {
    WeightSystem ws;
    ws.set(f, 1);
    ws.set(b, 1);
    ws.set(w, frac(1, 2));
    ws.set(v, 0);
    return ws;
}

}  // namespace

TEST_CASE("Burgers recursion is a shadow") {
    auto ps = quadratic_phantoms();
    CHECK(verify_shadow(ps, burgers_recursion(ps)).is_zero());
    CHECK_FALSE(verify_shadow(ps, burgers_recursion(ps, -1)).is_zero());
    CHECK(verify_shadow(ps, identity_shadow(ps)).is_zero());
}

TEST_CASE("Burgers recursion generates the printed sequences") {
    auto ps = quadratic_phantoms();
    auto ws = half_weights();
    auto r = burgers_recursion(ps);
    auto x = apply_shadow(ps, r, flow(J(f, 1), J(b, 1)), ws);
    REQUIRE(x.local);
    CHECK(x.flow == flow(J(f, 2) - C(2) * Df() * J(f, 1), J(b, 2) - C(2) * Df() * J(b, 1)));
    auto t = apply_shadow(ps, r, flow(Db(), J(b) * J(b) + Df()), ws);
    REQUIRE(t.local);
    CHECK(t.flow == flow(J(b, 1, 1) - Df() * Db() - J(f, 1) * J(b),
                         J(f, 1, 1) - Df() * Df() - J(b) * J(b) * Df() + J(b) * J(b, 1)));
    auto odd = apply_shadow(ps, r, flow(Df(), Db(), Parity::odd), ws);
    REQUIRE(odd.local);
    CHECK(odd.flow == flow(J(f, 1, 1) - Df() * Df() - J(f, 1) * J(f), J(b, 1, 1) - Df() * Db() - J(b, 1) * J(f),
                           Parity::odd));
    for (const auto* app : {&x, &t, &odd}) CHECK(check_symmetry(ps.base, app->flow).is_zero());
    // The second odd sequence as printed.
    Flow s2 = flow(J(f) * Db() - J(b) * Df() + J(b, 1), J(b) * Db() - J(f) * Df() + J(f, 1) - J(f) * J(b) * J(b),
                   Parity::odd);
    CHECK(check_symmetry(ps.base, s2).is_zero());
}

TEST_CASE("sequences from iterate") {
    auto ps = quadratic_phantoms();
    auto seq = iterate(ps, burgers_recursion(ps), flow(Df(), Db(), Parity::odd), 3, half_weights());
    CHECK(seq.complete);
    REQUIRE(seq.terms.size() == 4);
    for (const auto& t : seq.terms) CHECK(t.symmetry);
    auto zero = iterate(ps, burgers_recursion(ps), flow(J(f, 1), J(b, 1)), 0, half_weights());
    REQUIRE(zero.terms.size() == 1);
    CHECK(zero.terms[0].flow == flow(J(f, 1), J(b, 1)));
}

TEST_CASE("order one recursion of the dispersionless system") {
    auto ps = dispersionless_phantoms();
    auto ws = unit_weights();
    auto r = order_one_recursion(ps);
    CHECK(verify_shadow(ps, r).is_zero());
    auto app = apply_shadow(ps, r, flow(J(f, 1), J(b, 1)), ws);
    REQUIRE(app.local);
    // 3/2 times the second member of the x-sequence.
    CHECK(app.flow == flow(C(3, 2) * (Db() * J(b) * J(b) + Df() * J(f, 1)),
                           C(3, 2) * (J(f, 1, 1) * J(b) + Df() * J(b, 1))));
    for (const Flow& seed : {flow(J(f, 1), J(b, 1)), flow(J(b) * Db(), J(f, 1, 1))}) {
        auto seq = iterate(ps, r, seed, 4, ws);
        CHECK(seq.complete);
        REQUIRE(seq.terms.size() == 5);
        for (size_t i = 1; i < seq.terms.size(); ++i) {
            CHECK(seq.terms[i].symmetry);
            CHECK(seq.terms[i].order == 2);
        }
    }
}

TEST_CASE("integration with D") {
    WeightSystem ws;
    ws.set(f, 1);
    ws.set(b, 1);
    auto r = d_integrate(Db(), Direction::D1, ws);
    REQUIRE(r.exact);
    CHECK(r.primitive == J(b));
    auto r2 = d_integrate(C(2) * Df() * J(f, 1, 1), Direction::D1, ws);
    REQUIRE(r2.exact);
    CHECK(r2.primitive == C(2) * J(f, 1) * Df());
    CHECK_FALSE(d_integrate(J(b), Direction::D1, ws).exact);
}

TEST_CASE("integration round trip") {
    WeightSystem ws;
    ws.set(f, frac(1, 2));
    ws.set(b, 1);
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> cf(-3, 3), wpick(1, 8), coin(0, 1);
    int cases = 0;
    for (int it = 0; it < 220; ++it) {
        Rational wt = frac(wpick(rng), 2);
        Parity par = parity_from(coin(rng));
        SuperPoly rho;
        for (const auto& m : enumerate_monomials(ws, wt, par, std::vector<const Symbol*>{f, b}))
            if (coin(rng)) rho += SuperPoly::from_term(m, cf(rng));
        Direction d = coin(rng) ? Direction::D1 : Direction::Dx;
        SuperPoly e = super_derive(rho, d);
        auto r = d_integrate(e, d, ws);
        CHECK(r.exact);
        CHECK(super_derive(r.primitive, d) == e);
        ++cases;
    }
    CHECK(cases >= 200);
}

TEST_CASE("shadow of an equation with a two-layer covering") {
    // f_t = f_xxx + f_x Df, Dv = f, Dw = (Df)^2.
    const Symbol* wf = make_field("w", Parity::odd, 1);
    EvolutionSystem s;
    s.fields = {f};
    s.rhs[f] = J(f, 3) + J(f, 1) * Df();
    Nonlocality nv{v, Rational(1), {}};
    nv.defs[Direction::D1] = J(f);
    Nonlocality nw{wf, frac(7, 2), {}};
    nw.defs[Direction::D1] = Df() * Df();
    WeightSystem ws;
    ws.set(f, frac(3, 2));
    Covering c = derive_time_definitions(Covering(s, {nv, nw}), ws);
    CHECK(check_covering(c).consistent);
    auto ps = linearize(c);
    const Symbol* F = ps.phantom_for(f);
    Shadow r;
    r.components[f] = Df() * J(F) + C(3) * J(F, 2) + J(f, 1) * J(ps.phantom_for(v)) + C(1, 2) * J(ps.phantom_for(wf));
    CHECK(verify_shadow(ps, r).is_zero());
    ws.set(v, 1);
    ws.set(wf, frac(7, 2));
    Flow x;
    x.components[f] = J(f, 1);
    auto app = apply_shadow(ps, r, x, ws);
    REQUIRE(app.local);
    CHECK(app.flow.components.at(f) == C(3) * s.rhs.at(f));
}

namespace {

// f_t = b Db + f Df, b_t = f Db and its zero-order recursions. `sign` multiplies the
// terms depending on odd jets of f; the printed operators correspond to sign = 1.
struct ZeroOrder {
    PhantomSystem ps;
    Shadow r1, r2, r3;

    explicit ZeroOrder(int sign) {
        EvolutionSystem s;
        s.fields = {f, b};
        s.rhs[f] = J(b) * Db() + J(f) * Df();
        s.rhs[b] = J(f) * Db();
        ps = linearize(Covering(s));
        const Symbol* F = ps.phantom_for(f);
        const Symbol* B = ps.phantom_for(b);
        Rational k(sign);
        r1.components[f] = Db() * J(b) * J(B) + k * (Db() * J(f) * J(F) - Df() * J(f) * J(B));
        r1.components[b] = k * Db() * J(f) * J(B);
        r2.components[f] = J(b, 1) * J(b) * J(F) + J(f, 1) * J(b) * J(B);
        r2.components[b] = J(b, 1) * J(b) * J(B);
        r3.components[f] = Db() * J(b, 1) * J(b) * J(B) +
                           k * (Db() * J(b, 1) * J(f) * J(F) - Db() * J(f, 1) * J(f) * J(B) -
                                Df() * J(b, 1) * J(f) * J(B));
        r3.components[b] = k * Db() * J(b, 1) * J(f) * J(B);
    }
};

}  // namespace

TEST_CASE("zero-order recursions") {
    ZeroOrder printed(1), fixed(-1);
    CHECK(verify_shadow(printed.ps, printed.r2).is_zero());
    CHECK_FALSE(verify_shadow(printed.ps, printed.r1).is_zero());
    CHECK_FALSE(verify_shadow(printed.ps, printed.r3).is_zero());
    WeightSystem ws;
    ws.set(f, frac(1, 2));
    ws.set(b, frac(1, 2));
    const auto& base = fixed.ps.base;
    Flow x = flow(J(f, 1), J(b, 1));
    Flow t = flow(base.system().rhs.at(f), base.system().rhs.at(b));
    // Independent of the shadow test: a recursion must send symmetries to symmetries.
    CHECK_FALSE(check_symmetry(base, apply_shadow(printed.ps, printed.r1, x, ws).flow).is_zero());
    for (const Shadow* r : {&fixed.r1, &fixed.r2, &fixed.r3}) {
        CHECK(verify_shadow(fixed.ps, *r).is_zero());
        for (const Flow* phi : {&x, &t}) CHECK(check_symmetry(base, apply_shadow(fixed.ps, *r, *phi, ws).flow).is_zero());
    }
}

TEST_CASE("composition and nilpotency") {
    ZeroOrder z(-1);
    const auto& ps = z.ps;
    // Both operators are triangular with diagonal entries proportional to Db*f, and
    // Db*Db = f*f = 0, so the square already vanishes.
    for (const Shadow* r : {&z.r1, &z.r3}) {
        Shadow sq = compose(ps, *r, *r);
        CHECK(sq.is_zero());
        CHECK(compose(ps, sq, sq).is_zero());
        CHECK(nilpotency_order(ps, *r, 6) == 2);
    }
    CHECK_FALSE(compose(ps, z.r2, z.r2).is_zero());
    CHECK_FALSE(nilpotency_order(ps, z.r2, 5).has_value());
    auto id = identity_shadow(ps);
    CHECK(compose(ps, id, id) == id);
    CHECK(compose(ps, z.r1, id) == z.r1);
    CHECK(compose(ps, id, z.r1) == z.r1);
    CHECK_FALSE(nilpotency_order(ps, id, 5).has_value());
    auto qp = quadratic_phantoms();
    CHECK_THROWS_AS(compose(qp, identity_shadow(qp), burgers_recursion(qp)), Error);
}
