#include "superjet/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <mutex>

namespace superjet {

Rational frac(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) throw Error("bad rational: " + std::string(text));
    q.canonicalize();
    if (q.get_den() == 0) throw Error("zero denominator: " + std::string(text));
    return q;
}

std::string_view to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

ParamMonomial ParamMonomial::power(const Symbol* p, int exponent) {
    ParamMonomial m;
    if (exponent != 0) m.powers_.push_back({p, exponent});
    return m;
}

int ParamMonomial::exponent_of(const Symbol* p) const {
    for (const auto& pw : powers_)
        if (pw.param == p) return pw.exponent;
    return 0;
}

ParamMonomial ParamMonomial::operator*(const ParamMonomial& o) const {
    ParamMonomial r;
    auto a = powers_.begin(), b = o.powers_.begin();
    while (a != powers_.end() || b != o.powers_.end()) {
        int c = a == powers_.end() ? 1 : b == o.powers_.end() ? -1 : compare(a->param, b->param);
        if (c < 0) {
            r.powers_.push_back(*a++);
        } else if (c > 0) {
            r.powers_.push_back(*b++);
        } else {
            int e = a->exponent + b->exponent;
            if (e != 0) r.powers_.push_back({a->param, e});
            ++a, ++b;
        }
    }
    return r;
}

ParamMonomial ParamMonomial::inverse() const {
    ParamMonomial r = *this;
    for (auto& p : r.powers_) p.exponent = -p.exponent;
    return r;
}

int compare(const ParamMonomial& a, const ParamMonomial& b) {
    size_t n = std::min(a.powers_.size(), b.powers_.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = compare(a.powers_[i].param, b.powers_[i].param)) return c;
        if (a.powers_[i].exponent != b.powers_[i].exponent)
            return a.powers_[i].exponent < b.powers_[i].exponent ? -1 : 1;
    }
    if (a.powers_.size() != b.powers_.size()) return a.powers_.size() < b.powers_.size() ? -1 : 1;
    return 0;
}

int compare(const Symbol* a, const Symbol* b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
    if (a->parity != b->parity) return a->parity < b->parity ? -1 : 1;
    if (a->n_susy != b->n_susy) return a->n_susy < b->n_susy ? -1 : 1;
    if (a->square_zero != b->square_zero) return a->square_zero ? 1 : -1;
    return compare(a->square, b->square);
}

namespace {
std::mutex registry_mutex;
struct ValueLess {
    bool operator()(const Symbol& a, const Symbol& b) const { return compare(&a, &b) < 0; }
};
std::set<Symbol, ValueLess>& registry() {
    static std::set<Symbol, ValueLess> r;
    return r;
}
}  // namespace

const Symbol* intern(const Symbol& proto) {
    std::lock_guard lock(registry_mutex);
    return &*registry().insert(proto).first;
}

const Symbol* make_field(std::string name, Parity parity, int n_susy) {
    if (n_susy < 0 || n_susy > 2) throw Error("susy must be 0, 1 or 2 for " + name);
    return intern(Symbol{std::move(name), SymbolKind::field, parity, n_susy, {}, false});
}

const Symbol* make_param(std::string name) { return intern(Symbol{std::move(name), SymbolKind::param, Parity::even, 0, {}, false}); }

const Symbol* make_function(std::string name) { return intern(Symbol{std::move(name), SymbolKind::function, Parity::even, 0, {}, false}); }

const Symbol* make_theta(int index) {
    return intern(Symbol{"th" + std::to_string(index), SymbolKind::theta, Parity::odd, 0, {}, false});
}

const Symbol* make_clifford(std::string name, ParamMonomial square, bool square_zero) {
    return intern(Symbol{std::move(name), SymbolKind::clifford, Parity::odd, 0, std::move(square), square_zero});
}

const Symbol* make_unknown(int index) {
    return intern(Symbol{"_c" + std::to_string(index), SymbolKind::unknown, Parity::even, 0, {}, false});
}

const Symbol* phantom_of(const Symbol* field) {
    std::string n = field->name;
    for (char& c : n) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return make_field(n, field->parity, field->n_susy);
}

int unknown_index(const Symbol* s) {
    if (s->kind != SymbolKind::unknown) throw Error("not an unknown constant: " + s->name);
    return std::stoi(s->name.substr(2));
}

}  // namespace superjet
