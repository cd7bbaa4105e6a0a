#include "doctest.h"
#include "helpers.hpp"

using namespace sjt;

namespace {
const Symbol* f = make_field("f", Parity::odd, 1);
const Symbol* b = make_field("b", Parity::even, 1);
const Symbol* w = make_field("w", Parity::even, 1);
const Symbol* B2 = make_field("b", Parity::even, 2);
const Symbol* Q = make_function("Q");
const Symbol* alpha = make_param("alpha");

// f_t = Db, b_t = b^2 + Df
EvolutionSystem quadratic() {
    EvolutionSystem s;
    s.fields = {f, b};
    s.rhs[f] = J(b, 0, 1);
    s.rhs[b] = J(b) * J(b) + J(f, 0, 1);
    return s;
}

std::vector<Atom> n1_pool() {
    return {Atom::jet(f), Atom::jet(f, 0, 1), Atom::jet(f, 1), Atom::jet(f, 1, 1), Atom::jet(b),
            Atom::jet(b, 0, 1), Atom::jet(b, 1),  Atom::jet(b, 2)};
}
}  // namespace

TEST_CASE("super derivative on jets") {
    CHECK(super_derive(super_derive(J(b), Direction::D1), Direction::D1) == J(b, 1));
    CHECK(super_derive(J(f) * J(f, 0, 1), Direction::D1) == J(f, 0, 1) * J(f, 0, 1) - J(f) * J(f, 1));
    SuperPoly q = SuperPoly::from_atom(Atom::function(Q, b));
    CHECK(super_derive(q, Direction::Dx) == SuperPoly::from_atom(Atom::function(Q, b, 1)) * J(b, 1));
    CHECK_THROWS_AS(super_derive(J(b), Direction::D2), DirectionError);
    CHECK(super_derive(super_derive(J(B2), Direction::D2), Direction::D1) ==
          -super_derive(super_derive(J(B2), Direction::D1), Direction::D2));
}

TEST_CASE("time derivative follows the evolution equations") {
    EvolutionSystem s = quadratic();
    CHECK(dt_apply(s, J(b)) == J(b) * J(b) + J(f, 0, 1));
    CHECK(dt_apply(s, J(f, 0, 1)) == J(b, 1));
    Nonlocality nl{w, std::nullopt, {{Direction::D1, -J(f)}}};
    Covering c(s, {nl});
    CHECK(c.derive(J(w), Direction::D1) == -J(f));
    CHECK(c.derive(J(w), Direction::Dx) == -J(f, 0, 1));
    CHECK_THROWS_AS(c.dt(J(w)), MissingDefinition);
    Covering full(s, {Nonlocality{w, std::nullopt, {{Direction::D1, -J(f)}, {Direction::Dt, -J(b)}}}});
    CHECK(full.dt(J(w)) == -J(b));
    // consistency of the covering: Dt(Dw) computed both ways
    CHECK(full.dt(J(w, 0, 1)) == full.derive(full.dt(J(w)), Direction::D1));
}

TEST_CASE("translations are symmetries and commute") {
    EvolutionSystem s = quadratic();
    Flow x{{{f, J(f, 1)}, {b, J(b, 1)}}, Parity::even};
    Flow t = flow_from(s);
    CHECK(check_symmetry(s, x).is_zero());
    CHECK(check_symmetry(s, t).is_zero());
    CHECK(commutator(x, t).is_zero());
    Flow susy{{{f, J(f, 0, 1)}, {b, J(b, 0, 1)}}, Parity::odd};
    CHECK(check_symmetry(s, susy).is_zero());
    // [D, D] = 2 Dx for the supertranslation
    CHECK(commutator(susy, susy) == Rational(2) * x);
    Flow not_sym{{{f, J(f)}, {b, J(b)}}, Parity::even};
    CHECK(!check_symmetry(s, not_sym).is_zero());
}

TEST_CASE("derivation identities on random polynomials") {
    std::mt19937_64 rng(3);
    auto pool = n1_pool();
    EvolutionSystem s = quadratic();
    Flow odd_flow{{{f, J(f, 0, 1) * J(b)}, {b, J(f) * J(b) + J(b, 0, 1)}}, Parity::odd};
    for (int i = 0; i < 220; ++i) {
        SuperPoly p = random_poly(rng, pool, 4, 3), q = random_poly(rng, pool, 3, 2);
        SuperPoly dp = super_derive(p, Direction::D1);
        CHECK(super_derive(dp, Direction::D1) == super_derive(p, Direction::Dx));
        SuperPoly qe, qo;
        for (const auto& [m, c] : q.terms()) (is_odd(m.parity()) ? qo : qe).add_term(m, c);
        // graded Leibniz rule
        CHECK(super_derive(qe * p, Direction::D1) == super_derive(qe, Direction::D1) * p + qe * dp);
        CHECK(super_derive(qo * p, Direction::D1) == super_derive(qo, Direction::D1) * p - qo * dp);
        CHECK(dt_apply(s, dp) == super_derive(dt_apply(s, p), Direction::D1));
        CHECK(evolutionary_apply(odd_flow, dp) == super_derive(evolutionary_apply(odd_flow, p), Direction::D1));
    }
}

TEST_CASE("N=2 supersymmetry relations on random polynomials") {
    std::mt19937_64 rng(5);
    std::vector<Atom> pool = {Atom::jet(B2), Atom::jet(B2, 0, 1), Atom::jet(B2, 0, 0, 1), Atom::jet(B2, 0, 1, 1),
                              Atom::jet(B2, 1)};
    for (int i = 0; i < 200; ++i) {
        SuperPoly p = random_poly(rng, pool, 4, 3);
        SuperPoly d1 = super_derive(p, Direction::D1), d2 = super_derive(p, Direction::D2);
        CHECK(super_derive(d2, Direction::D2) == super_derive(p, Direction::Dx));
        CHECK(super_derive(d1, Direction::D2) == -super_derive(d2, Direction::D1));
    }
}

TEST_CASE("component expansion of the N=2 Burgers equation") {
    EvolutionSystem s;
    s.fields = {B2};
    s.rhs[B2] = J(B2, 1, 1, 1) + J(B2) * J(B2, 1);
    ComponentNames names;
    names.names[B2] = {"beta", "xi", "eta", "gamma"};
    EvolutionSystem c = component_expand(s, names);
    const Symbol* be = make_field("beta", Parity::even, 0);
    const Symbol* xi = make_field("xi", Parity::odd, 0);
    const Symbol* et = make_field("eta", Parity::odd, 0);
    const Symbol* ga = make_field("gamma", Parity::even, 0);
    auto dx = [](const SuperPoly& p) { return super_derive(p, Direction::Dx); };
    CHECK(c.rhs.at(be) == -J(ga, 1) + J(be) * J(be, 1));
    CHECK(c.rhs.at(xi) == J(et, 2) + dx(J(be) * J(xi)));
    CHECK(c.rhs.at(et) == -J(xi, 2) + dx(J(be) * J(et)));
    CHECK(c.rhs.at(ga) == J(be, 3) + dx(J(be) * J(ga)) - dx(J(xi) * J(et)));
}

TEST_CASE("clifford splitting of Burgers") {
    const Symbol* u = make_field("u", Parity::even, 0);
    const Symbol* b0 = make_field("b", Parity::even, 0);
    const Symbol* f0 = make_field("f", Parity::odd, 0);
    const Symbol* vt = make_clifford("vt", ParamMonomial::power(alpha, 1));
    EvolutionSystem s;
    s.fields = {u};
    s.rhs[u] = J(u, 2) + J(u) * J(u, 1);
    EvolutionSystem e = clifford_expand(s, u, vt, b0, f0);
    auto dx = [](const SuperPoly& p) { return super_derive(p, Direction::Dx); };
    CHECK(e.rhs.at(f0) == J(f0, 2) + dx(J(b0) * J(f0)));
    CHECK(e.rhs.at(b0) == J(b0, 2) + J(b0) * J(b0, 1) + P(alpha) * J(f0, 1) * J(f0));
}
