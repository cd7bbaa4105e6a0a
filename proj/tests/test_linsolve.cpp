#include "doctest.h"
#include "helpers.hpp"
#include "superjet/linsolve.hpp"

using namespace sjt;

namespace {
const Symbol* alpha = make_param("alpha");
const Symbol* beta = make_param("beta");

constexpr long long kPrime = 1000000007LL;

long long modpow(long long a, long long e) {
    long long r = 1;
    a %= kPrime;
    if (a < 0) a += kPrime;
    while (e) {
        if (e & 1) r = r * a % kPrime;
        a = a * a % kPrime;
        e >>= 1;
    }
    return r;
}

// Rank over Z/p, an independent check of the rational elimination.
int rank_mod_p(std::vector<std::vector<long long>> a) {
    int rank = 0;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
        size_t piv = static_cast<size_t>(rank);
        while (piv < rows && a[piv][c] % kPrime == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[static_cast<size_t>(rank)]);
        long long inv = modpow(a[static_cast<size_t>(rank)][c], kPrime - 2);
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank)) continue;
            long long f = a[r][c] % kPrime * inv % kPrime;
            for (size_t k = 0; k < cols; ++k)
                a[r][k] = ((a[r][k] - f * a[static_cast<size_t>(rank)][k]) % kPrime + kPrime) % kPrime;
        }
        ++rank;
    }
    return rank;
}
}  // namespace

TEST_CASE("parameter case split on alpha*c = 0") {
    LinearSystem ls;
    ls.num_unknowns = 1;
    ls.equations.push_back({{{0, P(alpha)}}, {}});
    auto branches = solve_linear(ls);
    REQUIRE(branches.size() == 2);
    CHECK(to_string(branches[0].conditions.at(0)) == "alpha = 0");
    CHECK(branches[0].basis.size() == 1);
    CHECK(to_string(branches[1].conditions.at(0)) == "alpha != 0");
    CHECK(branches[1].basis.empty());
    auto generic = solve_linear(ls, SolveOptions{{}, true, 4});
    REQUIRE(generic.size() == 1);
    CHECK(generic[0].basis.empty());
}

TEST_CASE("split depth cap is reported") {
    LinearSystem ls;
    ls.num_unknowns = 1;
    ls.equations.push_back({{{0, P(alpha) * P(beta)}}, {}});
    auto branches = solve_linear(ls, SolveOptions{{}, false, 1});
    bool limited = false;
    for (auto& b : branches) limited = limited || b.split_limit_reached;
    CHECK(limited);
    CHECK(branches.size() == 2);
}

TEST_CASE("inconsistent systems and parameter-dependent right-hand sides") {
    LinearSystem ls;
    ls.num_unknowns = 1;
    ls.equations.push_back({{{0, C(1)}}, C(1)});
    ls.equations.push_back({{{0, C(2)}}, C(3)});
    auto br = solve_linear(ls);
    REQUIRE(br.size() == 1);
    CHECK(!br[0].consistent);
    // alpha x = alpha, beta x = 1 + beta: generic solution x = 1 needs 1 = 0
    LinearSystem ps;
    ps.num_unknowns = 2;
    ps.equations.push_back({{{0, P(alpha)}, {1, P(beta)}}, P(alpha) + P(beta)});
    auto g = solve_linear(ps, SolveOptions{{}, true, 0});
    REQUIRE(g.size() == 1);
    CHECK(g[0].consistent);
    CHECK(g[0].basis.size() == 1);
}

TEST_CASE("non-monomial pivots are fraction free") {
    // (1 + alpha) x = 1
    LinearSystem ls;
    ls.num_unknowns = 2;
    ls.equations.push_back({{{0, C(1) + P(alpha)}, {1, C(1)}}, C(1)});
    ls.equations.push_back({{{0, C(1) + P(alpha)}, {1, C(2)}}, C(1)});
    auto br = solve_linear(ls, SolveOptions{{}, true, 0});
    REQUIRE(br.size() == 1);
    REQUIRE(br[0].consistent);
    // x0 = particular / denominator = 1 / (1 + alpha)
    CHECK(br[0].particular[0] * (C(1) + P(alpha)) == br[0].denominator);
    CHECK(br[0].particular[1].is_zero());
}

TEST_CASE("random rational systems: solutions satisfy the equations and the rank matches") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> dim(1, 7), val(-3, 3), sparse(0, 2);
    for (int trial = 0; trial < 250; ++trial) {
        int n = dim(rng), m = dim(rng);
        std::vector<std::vector<long long>> a(static_cast<size_t>(m), std::vector<long long>(static_cast<size_t>(n)));
        std::vector<long long> xs(static_cast<size_t>(n));
        for (auto& x : xs) x = val(rng);
        LinearSystem ls;
        ls.num_unknowns = n;
        for (int i = 0; i < m; ++i) {
            LinearEquation eq;
            long long rhs = 0;
            for (int j = 0; j < n; ++j) {
                long long v = sparse(rng) == 0 ? 0 : val(rng);
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                if (v) eq.coeffs[j] = C(v);
                rhs += v * xs[static_cast<size_t>(j)];
            }
            eq.rhs = C(rhs);
            ls.equations.push_back(eq);
        }
        auto br = solve_linear(ls);
        REQUIRE(br.size() == 1);
        REQUIRE(br[0].consistent);
        CHECK(static_cast<int>(br[0].basis.size()) == n - rank_mod_p(a));
        Rational den = *br[0].denominator.as_constant();
        for (int i = 0; i < m; ++i) {
            Rational lhs = 0, hom = 0;
            for (int j = 0; j < n; ++j) lhs += Rational(static_cast<long>(a[static_cast<size_t>(i)][static_cast<size_t>(j)])) *
                                                 *br[0].particular[static_cast<size_t>(j)].as_constant() / den;
            CHECK(lhs == *ls.equations[static_cast<size_t>(i)].rhs.as_constant());
            for (const auto& v : br[0].basis) {
                hom = 0;
                for (int j = 0; j < n; ++j)
                    hom += Rational(static_cast<long>(a[static_cast<size_t>(i)][static_cast<size_t>(j)])) * *v[static_cast<size_t>(j)].as_constant();
                CHECK(hom == 0);
            }
        }
    }
}

TEST_CASE("coefficient extraction") {
    const Symbol* b = make_field("b", Parity::even, 1);
    SuperPoly r = unknown_atom(0) * J(b) + unknown_atom(1) * P(alpha) * J(b) - J(b, 1) + unknown_atom(1) * J(b, 1);
    LinearSystem ls = extract_linear_system(r, 2);
    CHECK(ls.equations.size() == 2);
    CHECK_THROWS_AS(extract_linear_system(unknown_atom(0) * unknown_atom(1), 2), NonlinearSystem);
}
