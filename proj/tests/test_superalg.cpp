#include "doctest.h"
#include "helpers.hpp"

using namespace sjt;

namespace {
const Symbol* f = make_field("f", Parity::odd, 1);
const Symbol* b = make_field("b", Parity::even, 1);
const Symbol* chi = make_field("chi", Parity::odd, 1);
const Symbol* alpha = make_param("alpha");
const Symbol* eps = make_param("eps");
const Symbol* th = make_clifford("vt", ParamMonomial::power(alpha, 1));

Atom jf(unsigned m = 0, int d = 0) { return Atom::jet(f, m, d); }
Atom jb(unsigned m = 0, int d = 0) { return Atom::jet(b, m, d); }

SuperPoly word(std::vector<Atom> atoms, long c = 1) { return normalize({RawTerm{c, std::move(atoms), {}}}); }

// Sign of sorting a word of atoms by adjacent transpositions, counted independently of multiply().
int bubble_sign(std::vector<Atom> w) {
    int sign = 1;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = 0; j + 1 < w.size() - i; ++j)
            if (w[j + 1] < w[j]) {
                if (is_odd(w[j].parity()) && is_odd(w[j + 1].parity())) sign = -sign;
                std::swap(w[j], w[j + 1]);
            }
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1] && w[i].is_nilpotent()) return 0;
    return sign;
}
}  // namespace

TEST_CASE("odd atoms square to zero and anticommute") {
    CHECK(word({jf(), jf()}).is_zero());
    CHECK(word({jf(1), jf()}) == -word({jf(), jf(1)}));
    CHECK(to_string(word({jf(1), jf()})) == "-f*f_x");
    // Df is even for odd f, so it commutes with f
    CHECK(word({jf(0, 1), jf()}) == word({jf(), jf(0, 1)}));
    CHECK(parity_of(word({jf(), jf(0, 1)})).parity == Parity::odd);
    // D(chi) is even, its square survives
    SuperPoly dchi = J(chi, 0, 1);
    CHECK(!(dchi * dchi).is_zero());
    CHECK(to_string(dchi * dchi) == "Dchi^2");
}

TEST_CASE("clifford generator squares to its parameter") {
    SuperPoly t = SuperPoly::from_atom(Atom::of(th));
    CHECK(t * t == P(alpha));
    CHECK(t * J(f) * t == -(P(alpha) * J(f)));
    SuperPoly u = J(b) + t * J(f);
    SuperPoly ux = J(b, 1) + t * J(f, 1);
    CHECK(u * ux - ux * u == C(2) * P(alpha) * J(f, 1) * J(f));
    CHECK(!(u * ux == ux * u));
}

TEST_CASE("parameters carry Laurent exponents") {
    CHECK(P(eps, -1) * P(eps) == C(1));
    CHECK(to_string(P(eps, -2) * J(b)) == "eps^-2*b");
}

TEST_CASE("parity reports") {
    CHECK(parity_of(J(b) * J(b)).parity == Parity::even);
    CHECK(parity_of(J(f) * J(b)).parity == Parity::odd);
    CHECK(parity_of(SuperPoly{}).parity == Parity::even);
    auto rep = parity_of(J(b) + J(f));
    CHECK(!rep.parity);
    CHECK(rep.even_terms.size() == 1);
    CHECK(rep.odd_terms.size() == 1);
    CHECK_THROWS_AS(homogeneous_parity(J(b) + J(f)), ParityMismatch);
}

TEST_CASE("substitution follows jets") {
    FieldMap m;
    m[f] = J(b, 0, 1);
    CHECK(substitute(J(b) * J(b) + J(f, 0, 1), m) == J(b) * J(b) + J(b, 1));
    FieldMap bad;
    bad[f] = J(b);
    CHECK_THROWS_AS(substitute(J(f), bad), ParityMismatch);
}

TEST_CASE("normalize agrees with transposition counting on random words") {
    std::mt19937_64 rng(11);
    std::vector<Atom> pool = {jf(), jf(0, 1), jf(1), jf(1, 1), jb(), jb(0, 1), jb(1), Atom::jet(chi), Atom::jet(chi, 2)};
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1), len(0, 6);
    for (int i = 0; i < 300; ++i) {
        std::vector<Atom> w(len(rng));
        for (auto& a : w) a = pool[pick(rng)];
        int s = bubble_sign(w);
        std::vector<Atom> sorted = w;
        std::stable_sort(sorted.begin(), sorted.end());
        SuperPoly expect = s == 0 ? SuperPoly{} : word(sorted, s);
        CHECK(word(w) == expect);
    }
}

TEST_CASE("graded commutativity, associativity and distributivity") {
    std::mt19937_64 rng(7);
    std::vector<Atom> pool = {jf(), jf(0, 1), jf(2), jb(), jb(0, 1), jb(1), Atom::jet(chi, 0, 1)};
    std::vector<Atom> cpool = pool;
    cpool.push_back(Atom::of(th));
    auto parts = [](const SuperPoly& p) {
        SuperPoly e, o;
        for (const auto& [m, c] : p.terms()) (is_odd(m.parity()) ? o : e).add_term(m, c);
        return std::pair{e, o};
    };
    for (int i = 0; i < 250; ++i) {
        SuperPoly a = random_poly(rng, pool, 4, 3), b2 = random_poly(rng, pool, 4, 3);
        auto [ae, ao] = parts(a);
        auto [be, bo] = parts(b2);
        CHECK(ae * be == be * ae);
        CHECK(ae * bo == bo * ae);
        CHECK(ao * bo == -(bo * ao));
        SuperPoly x = random_poly(rng, cpool, 3, 3), y = random_poly(rng, cpool, 3, 3), z = random_poly(rng, cpool, 3, 2);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

