#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superjet {

using Rational = mpq_class;

// Canonical n/d; the two-argument mpq_class constructor does not reduce.
Rational frac(long n, long d);
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParityMismatch : Error {
    using Error::Error;
};
struct UndeclaredSymbol : Error {
    using Error::Error;
};
struct DirectionError : Error {
    using Error::Error;
};
struct MissingDefinition : Error {
    using Error::Error;
};
struct UnweightedSymbol : Error {
    using Error::Error;
};
struct NonlinearSystem : Error {
    using Error::Error;
};

enum class Parity : unsigned char { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
    return Parity(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}
constexpr Parity parity_from(int n) { return (n & 1) ? Parity::odd : Parity::even; }
constexpr bool is_odd(Parity p) { return p == Parity::odd; }
std::string_view to_string(Parity p);

// Rank order doubles as the canonical order of atoms: odd theta variables come
// first, then Clifford generators, then jets.
enum class SymbolKind : unsigned char { theta, clifford, field, function, unknown, param };

struct Symbol;

struct ParamPower {
    const Symbol* param;
    int exponent;
};

// Laurent monomial in parameters, kept sorted by parameter name.
class ParamMonomial {
public:
    ParamMonomial() = default;
    static ParamMonomial power(const Symbol* p, int exponent);

    const std::vector<ParamPower>& powers() const { return powers_; }
    bool empty() const { return powers_.empty(); }
    int exponent_of(const Symbol* p) const;

    ParamMonomial operator*(const ParamMonomial& o) const;
    ParamMonomial inverse() const;

    friend int compare(const ParamMonomial& a, const ParamMonomial& b);
    friend bool operator==(const ParamMonomial& a, const ParamMonomial& b) { return compare(a, b) == 0; }
    friend bool operator<(const ParamMonomial& a, const ParamMonomial& b) { return compare(a, b) < 0; }

private:
    std::vector<ParamPower> powers_;
};

struct Symbol {
    std::string name;
    SymbolKind kind = SymbolKind::field;
    Parity parity = Parity::even;
    int n_susy = 0;
    // Clifford generators only: square is `square` unless square_zero.
    ParamMonomial square;
    bool square_zero = false;
};

int compare(const Symbol* a, const Symbol* b);

struct SymbolLess {
    bool operator()(const Symbol* a, const Symbol* b) const { return compare(a, b) < 0; }
};

// Symbols are interned for the lifetime of the process; equal records share a pointer.
const Symbol* intern(const Symbol& proto);

const Symbol* make_field(std::string name, Parity parity, int n_susy);
const Symbol* make_param(std::string name);
const Symbol* make_function(std::string name);
const Symbol* make_theta(int index);
const Symbol* make_clifford(std::string name, ParamMonomial square, bool square_zero = false);
const Symbol* make_unknown(int index);
// Phantom (linearization) partner of a field: same parity and susy, upper-case name.
const Symbol* phantom_of(const Symbol* field);
int unknown_index(const Symbol* s);

}  // namespace superjet
