#ifndef RES2D_WEIERSTRASS_HPP
#define RES2D_WEIERSTRASS_HPP

#include <optional>
#include <string>
#include <vector>

#include "res2d/field.hpp"
#include "res2d/poly.hpp"
#include "res2d/series.hpp"

namespace res2d
{

using KSeries = Laurent<LocalFieldElement>;

enum class Irreducibility { Linear, Eisenstein, NewtonSegment, Unknown };

std::string irreducibility_name(Irreducibility c);

// t^l + a_1 t^(l-1) + ... + a_l with every a_i in the maximal ideal of O_K.
struct DistinguishedPolynomial {
    KPoly coeffs; // ascending, monic
    // Integer coefficients when the polynomial is known exactly.
    std::optional<std::vector<mpz_class>> exact;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const FieldPtr &field() const { return coeffs.front().ring(); }
    // Throws InvalidInput unless monic with all lower coefficients in m_K.
    void validate() const;
    Irreducibility irreducibility() const;
    std::string to_string() const;
};

DistinguishedPolynomial distinguished_from_ints(const FieldPtr &k, const std::vector<mpz_class> &c);
DistinguishedPolynomial distinguished_from_ints(const FieldPtr &k, const std::vector<long> &c);

struct DivisionResult {
    KSeries quotient;
    KPoly remainder; // degree < l
};

// g = q P + r with deg r < l. Untruncated g is divided exactly; for g known
// modulo t^T the quotient is known modulo t^(T - l) and digits that the unknown
// tail could still move are dropped.
DivisionResult weierstrass_divide(const KSeries &g, const DistinguishedPolynomial &p);

struct PreparationResult {
    long pi_power = 0;
    KSeries unit;
    DistinguishedPolynomial distinguished;
};

// g = pi_K^m * u * P with u a unit power series and P distinguished.
PreparationResult weierstrass_prepare(const KSeries &g);

// One squarefree piece of a denominator: a distinguished factor of the
// multiplicity-k Yun factor of b, or the exact factor t.
struct SplitFactor {
    DistinguishedPolynomial prime;
    int multiplicity = 1;
    QPoly yun_factor; // primitive integer polynomial containing prime
    KPoly cofactor;   // yun_factor / prime
};

struct SquarefreeSplit {
    std::vector<SplitFactor> factors;
    long pi_power = 0;
    KPoly unit;                   // b = pi^m * unit * prod P_i^(e_i)
    mpz_class content;            // integer content of b (with sign)
    std::vector<QPoly> yun;       // primitive Yun factors, index k-1 has multiplicity k
};

SquarefreeSplit squarefree_split(const FieldPtr &k, const std::vector<mpz_class> &b);

// Valuation of an element, treating zero-at-precision as +infinity.
long valuation_or_inf(const LocalFieldElement &a);

// Drop digits so that the coefficient is claimed only modulo pi_K^vk.
LocalFieldElement cap_precision_vk(const LocalFieldElement &a, long vk);

} // namespace res2d

#endif
