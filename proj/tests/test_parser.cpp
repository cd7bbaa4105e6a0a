#include "doctest.h"
#include "helpers.hpp"
#include "superjet/parser.hpp"

using namespace sjt;

namespace {

const char* quadratic = R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
time weight -1/2;
f_t = D(b);
b_t = b^2 + D(f);
nonlocal w even weight 0: D(w) = -f, w_t = -b;
)";

SuperPoly expr(const SourceDocument& d, const char* text) { return parse_expression(text, d); }

}  // namespace

TEST_CASE("system with a potential") {
    auto d = parse_document(quadratic);
    const Symbol* f = make_field("f", Parity::odd, 1);
    const Symbol* b = make_field("b", Parity::even, 1);
    REQUIRE(d.system.fields == std::vector<const Symbol*>{f, b});
    CHECK(d.system.rhs.at(b) == J(b) * J(b) + J(f, 0, 1));
    CHECK(d.system.rhs.at(f) == J(b, 0, 1));
    REQUIRE(d.nonlocal.size() == 1);
    CHECK(*d.nonlocal[0].def(Direction::D1) == -J(f));
    CHECK(*d.nonlocal[0].def(Direction::Dt) == -J(b));
    CHECK(d.weights.time == frac(-1, 2));
    CHECK(d.weights.of(f) == frac(1, 2));
    CHECK(d.weights.of(d.nonlocal[0].symbol) == 0);
}

TEST_CASE("canonicalization") {
    auto d = parse_document(quadratic);
    const Symbol* f = make_field("f", Parity::odd, 1);
    const Symbol* b = make_field("b", Parity::even, 1);
    CHECK(to_string(expr(d, "D(D(b))")) == "b_x");
    CHECK(expr(d, "f*f").is_zero());
    CHECK(expr(d, "D(f*D(f))") == J(f, 0, 1) * J(f, 0, 1) - J(f) * J(f, 1));
    CHECK(expr(d, "Df_x") == J(f, 1, 1));
    CHECK(expr(d, "D(f_x)") == J(f, 1, 1));
    CHECK(expr(d, "Dx(Df)") == J(f, 1, 1));
    CHECK(expr(d, "DDb") == J(b, 1));
    CHECK(expr(d, "b^3/6 - (b - b)") == C(1, 6) * J(b) * J(b) * J(b));
    CHECK(expr(d, "3/2*b*2/3") == J(b));
    CHECK(expr(d, "-b + b").is_zero());
    CHECK(expr(d, "D(w)") == J(d.nonlocal[0].symbol, 0, 1));
}

TEST_CASE("phantoms, functions, parameters and Clifford generators") {
    auto d = parse_document(R"(
        field b even susy 1;
        field f odd susy 1;
        param alpha weight 0;
        fn Q of b;
        aux th clifford alpha;
        nonlocal w even: D(w) = f;
    )");
    const Symbol* b = make_field("b", Parity::even, 1);
    const Symbol* f = make_field("f", Parity::odd, 1);
    const Symbol* alpha = make_param("alpha");
    const Symbol* Q = make_function("Q");
    CHECK(expr(d, "B_x*W") == J(phantom_of(b), 1) * J(phantom_of(d.nonlocal[0].symbol)));
    CHECK(expr(d, "DF") == J(phantom_of(f), 0, 1));
    CHECK(expr(d, "Dx(Q(b))") == SuperPoly::from_atom(Atom::function(Q, b, 1)) * J(b, 1));
    CHECK(expr(d, "Q''(b)") == SuperPoly::from_atom(Atom::function(Q, b, 2)));
    CHECK(expr(d, "th*th") == P(alpha));
    CHECK(expr(d, "th*f*th") == -P(alpha) * J(f));
    CHECK(expr(d, "alpha^-2*alpha") == P(alpha, -1));
    CHECK(expr(d, "(2*alpha)^-1") == C(1, 2) * P(alpha, -1));
    CHECK(to_string(expr(d, "alpha^-1*b")) == "alpha^-1*b");
}

TEST_CASE("N=2 derivative prefixes") {
    auto d = parse_document("field b even susy 2;");
    const Symbol* b = make_field("b", Parity::even, 2);
    CHECK(expr(d, "D1D2b_x") == J(b, 1, 1, 1));
    CHECK(expr(d, "D2D1b_x") == -J(b, 1, 1, 1));
    CHECK(expr(d, "D2(D1(b))") == -J(b, 0, 1, 1));
    CHECK(expr(d, "D1D1b") == J(b, 1));
    CHECK(to_string(J(b, 2, 1, 1)) == "D1D2b_xx");
}

TEST_CASE("errors carry positions") {
    auto d = parse_document(quadratic);
    auto position = [&](const char* text) -> std::pair<int, int> {
        try {
            parse_document(text);
        } catch (const SyntaxError& e) {
            return {e.line, e.column};
        }
        return {0, 0};
    };
    CHECK(position("field f odd susy 1;\nf_t = g;") == std::pair{2, 7});
    CHECK(position("field f odd susy 1;\nf_t = D(f);") == std::pair{2, 7});
    CHECK(position("field f odd;\nf_t = f_xx +;") == std::pair{2, 13});
    CHECK(position("field f odd;\nfield f even;") == std::pair{2, 7});
    CHECK(position("field b even susy 0;\nb_t = D(b);") == std::pair{2, 7});
    CHECK(position("field b even;\nb_t = b $ b;") == std::pair{2, 9});
    CHECK_THROWS_AS(expr(d, "b + f"), SyntaxError);
    CHECK_THROWS_AS(expr(d, "b / b"), SyntaxError);
    CHECK_THROWS_AS(expr(d, "b^-1"), SyntaxError);
    CHECK_THROWS_AS(parse_document("field f odd susy 1; flow x: f = f_x, f = f;"), SyntaxError);
    CHECK_THROWS_AS(parse_document("field f odd susy 1; flow x odd: f = f_x;"), SyntaxError);
    CHECK_THROWS_AS(parse_document("field D even;"), SyntaxError);
    CHECK_THROWS_AS(parse_document("field f odd susy 1; f_t = f; maps R: a -> b;"), SyntaxError);
}

TEST_CASE("flows, shadows and claims") {
    auto d = parse_document(std::string(quadratic) + R"(
        flow x: f = f_x, b = b_x;
        flow odd_x odd: f = Df, b = Db;
        shadow R: f = F_x - Df*F + f_x*W, b = B_x - Df*B + b_x*W;
        refuted shadow bad: f = F, b = 2*B;
        density rho image D: b;
        claim potential: w_x = -b_x + b_x - Df;
        maps R: x -> x;
        nilpotent R order 3;
        commute x odd_x;
    )");
    const Symbol* f = make_field("f", Parity::odd, 1);
    REQUIRE(d.flow("odd_x"));
    CHECK(d.flow("odd_x")->flow.parity == Parity::odd);
    REQUIRE(d.shadow("bad"));
    CHECK(d.shadow("bad")->expect_failure);
    CHECK(d.shadow("R")->shadow.components.at(f).size() == 3);
    CHECK(d.density("rho")->image == Direction::D1);
    CHECK(d.claims.at(0).claim.dir == Direction::Dx);
    CHECK(d.maps.size() == 1);
    CHECK(d.nilpotency.at(0).order == 3);
    CHECK(d.commutes.size() == 1);
    auto phi = parse_flow("f = Df_x, b = b*Db", d, Parity::odd);
    CHECK(phi.parity == Parity::odd);
}

TEST_CASE("operators, Miura maps and pins") {
    auto d = parse_document(R"(
        field b even weight 2;
        field c even weight 3;
        field w1 even;
        field w2 even;
        param eps weight -3;
        b_t = c_x;
        c_t = b*b_x;
        operator (0, Dx; Dx, 0);
        density H: 1/6*b^3 + 1/2*c^2;
        miura eps: b = w1 + eps*w1*w2, c = w2;
        pin 1 b: w1*w2 = 1;
        pin 2 hamiltonian: w2^3 = 0;
        expansion b: b, -b*c;
    )");
    REQUIRE(d.hamiltonian_operator);
    CHECK(print_operator(d.hamiltonian_operator->entries[0][1]) == "Dx");
    CHECK(d.hamiltonian_operator->entries[0][0].empty());
    REQUIRE(d.miura);
    CHECK(d.miura->source == std::vector<const Symbol*>{make_field("w1", Parity::even, 0), make_field("w2", Parity::even, 0)});
    CHECK(d.pins.at(1).component == -1);
    CHECK(d.expansions.at(0).terms.size() == 2);
    auto e = parse_document("field f odd susy 1; field g odd susy 1; f_t = f; operator (-2*D*Dx^2 + 1/3*Dx, D; 1, -D);");
    CHECK(print_operator(e.hamiltonian_operator->entries[0][0]) == "-2*D1*Dx^2 + 1/3*Dx");
    CHECK_THROWS_AS(parse_document("field b even; param eps; b_t = b; miura eps: b = 2*b;"), SyntaxError);
    CHECK_THROWS_AS(parse_document("field b even; b_t = b; operator (Dx*D);"), SyntaxError);
}

TEST_CASE("printed documents parse back to themselves") {
    auto d = parse_document(std::string(quadratic) + R"(
        param alpha weight 0;
        flow x: f = f_x, b = alpha^-1*b_x;
        refuted shadow R: f = F_x, b = 1/2*B_x;
        density rho image D: b;
    )");
    std::string once = print_document(d);
    auto again = parse_document(once);
    CHECK(print_document(again) == once);
    CHECK(again.expressions() == d.expressions());
}

TEST_CASE("print then parse is the identity on random polynomials") {
    auto d = parse_document(R"(
        field f odd susy 1;
        field b even susy 1;
        field u even susy 2;
        field g odd susy 0;
        param alpha;
        param beta;
        fn Q of b;
        aux th clifford alpha;
        nonlocal w odd: D(w) = b;
    )");
    const Symbol* f = make_field("f", Parity::odd, 1);
    const Symbol* b = make_field("b", Parity::even, 1);
    const Symbol* u = make_field("u", Parity::even, 2);
    const Symbol* g = make_field("g", Parity::odd, 0);
    const Symbol* w = d.nonlocal.at(0).symbol;
    const Symbol* th = d.lookup("th");
    std::vector<Atom> pool{Atom::jet(f), Atom::jet(f, 2, 1), Atom::jet(b, 1), Atom::jet(b, 0, 1), Atom::jet(u, 1, 1, 1),
                           Atom::jet(u, 0, 0, 1), Atom::jet(g, 3), Atom::jet(w, 0, 1), Atom::jet(phantom_of(f), 1, 1),
                           Atom::jet(phantom_of(w)), Atom::function(make_function("Q"), b, 2), Atom::of(th)};
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> ex(-2, 2), coin(0, 1);
    int cases = 0;
    while (cases < 300) {
        SuperPoly p = random_poly(rng, pool, 5, 4);
        if (!parity_of(p).parity) continue;  // expressions must have a parity
        if (coin(rng)) p = p * (P(make_param("alpha"), ex(rng)) + P(make_param("beta"), ex(rng)) * C(ex(rng), 3));
        CHECK(parse_expression(to_string(p), d) == p);
        ++cases;
    }
    CHECK(cases >= 200);
}
