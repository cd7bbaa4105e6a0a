#pragma once

#include "superjet/printer.hpp"

#include <random>

namespace sjt {

using namespace superjet;

inline SuperPoly J(const Symbol* u, unsigned m = 0, int d1 = 0, int d2 = 0) {
    return SuperPoly::from_atom(Atom::jet(u, m, d1, d2));
}
inline SuperPoly C(long n, long d = 1) { return SuperPoly(frac(n, d)); }
inline SuperPoly P(const Symbol* p, int e = 1) { return SuperPoly::from_param(p, e); }

// Random homogeneous-in-nothing polynomial from a pool of atoms: sum of products.
inline SuperPoly random_poly(std::mt19937_64& rng, const std::vector<Atom>& pool, int max_terms, int max_degree) {
    std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_degree), coef(-5, 5);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::vector<RawTerm> raw;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        RawTerm t;
        t.coeff = coef(rng);
        if (t.coeff == 0) t.coeff = 1;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) t.atoms.push_back(pool[pick(rng)]);
        raw.push_back(t);
    }
    return normalize(raw);
}

}  // namespace sjt
