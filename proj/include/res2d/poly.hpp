#ifndef RES2D_POLY_HPP
#define RES2D_POLY_HPP

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "res2d/field.hpp"

namespace res2d
{

// Exact polynomials over Q, ascending coefficients, no trailing zeros.
using QPoly = std::vector<mpq_class>;
// Polynomials over K, ascending.
using KPoly = std::vector<LocalFieldElement>;

namespace qpoly
{

QPoly from_ints(const std::vector<mpz_class> &c);
QPoly from_ints(const std::vector<long> &c);
void trim(QPoly &a);
long degree(const QPoly &a);
QPoly add(const QPoly &a, const QPoly &b);
QPoly sub(const QPoly &a, const QPoly &b);
QPoly mul(const QPoly &a, const QPoly &b);
QPoly pow(const QPoly &a, unsigned n);
std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b);
// Monic gcd.
QPoly gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly &a);
QPoly monic(const QPoly &a);
bool is_integral(const QPoly &a);
std::vector<mpz_class> to_ints(const QPoly &a);

// Yun's algorithm: a = lead * prod_i s_i^(i+1) with s_i monic, squarefree and
// pairwise coprime. Entries for multiplicities that do not occur are {1}.
std::vector<QPoly> squarefree_factors(const QPoly &a);

} // namespace qpoly

namespace kpoly
{

KPoly from_q(const FieldPtr &k, const QPoly &a);
KPoly from_ints(const FieldPtr &k, const std::vector<mpz_class> &a);
KPoly mul(const KPoly &a, const KPoly &b);
// Division by a monic polynomial; no inverses are taken.
std::pair<KPoly, KPoly> divmod_monic(const KPoly &a, const KPoly &monic);
bool is_zero(const KPoly &a);

} // namespace kpoly

} // namespace res2d

#endif
