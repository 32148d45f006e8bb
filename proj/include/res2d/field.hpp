#ifndef RES2D_FIELD_HPP
#define RES2D_FIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "res2d/algebra.hpp"
#include "res2d/padic.hpp"

namespace res2d
{

enum class Certificate { Trivial, Eisenstein, Unramified, NewtonSegment, Trusted };

std::string certificate_name(Certificate c);

class CoefficientField;
using LocalFieldElement = AlgebraElement<CoefficientField>;
using FieldPtr = std::shared_ptr<const CoefficientField>;

// A finite extension K = Q_p[x]/(f) given by one monic integral polynomial,
// plus the invariants e, f0 and a uniformizer in the power basis.
class CoefficientField : public QuotientRing<PAdic>, public std::enable_shared_from_this<CoefficientField>
{
public:
    struct Tag {
    };
    CoefficientField(Tag, long p, long precision, std::vector<mpz_class> poly, Certificate cert, long e,
                     long f0, std::vector<mpz_class> uniformizer_exponents);

    long p() const noexcept { return p_; }
    long precision() const noexcept { return precision_; }
    // Full monic defining polynomial, ascending.
    const std::vector<mpz_class> &polynomial() const noexcept { return poly_; }
    long ramification() const noexcept { return e_; }
    long inertia() const noexcept { return f0_; }
    Certificate certificate() const noexcept { return cert_; }

    LocalFieldElement element(const std::vector<mpz_class> &coords) const;
    LocalFieldElement element(const std::vector<PAdic> &coords) const;
    LocalFieldElement from_int(const mpz_class &n) const;
    LocalFieldElement from_int(long n) const { return from_int(mpz_class(n)); }
    LocalFieldElement zero() const { return from_int(0); }
    LocalFieldElement one() const { return from_int(1); }
    // Class of x.
    LocalFieldElement generator() const;
    LocalFieldElement uniformizer() const;
    // pi_K^m, m of either sign.
    LocalFieldElement uniformizer_power(long m) const;

    // Weight used for pivoting: v_K for nonzero elements.
    long weight(const LocalFieldElement &a) const;

    bool same_as(const CoefficientField &o) const;

    // Lower bound on the p-adic valuation of every power-basis coordinate of an
    // element with v_K >= vk.
    long coordinate_floor(long vk) const;
    long dual_offset() const noexcept { return dual_offset_; }

private:
    friend FieldPtr field_make(long, const std::vector<mpz_class> &, long, bool);

    long p_;
    long precision_;
    std::vector<mpz_class> poly_;
    Certificate cert_;
    long e_;
    long f0_;
    // pi_K = x^k * p^r, stored as {k, r}.
    std::vector<mpz_class> pi_exps_;
    // min v_K over the trace-dual of the power basis
    long dual_offset_ = 0;
};

// Builds K; throws InvalidPrime, InvalidInput, or NotIrreducibleCertified unless
// trust_irreducible is set.
FieldPtr field_make(long p, const std::vector<mpz_class> &poly, long precision, bool trust_irreducible = false);
FieldPtr field_make(long p, const std::vector<long> &poly, long precision, bool trust_irreducible = false);

// The same field at another working precision (cached).
FieldPtr field_with_precision(const FieldPtr &k, long precision);
// Moves an element between precisions of the same field; relative precision is
// capped at the target's working precision.
LocalFieldElement rebase(const LocalFieldElement &a, const FieldPtr &target);
// Q_p itself.
FieldPtr base_field(long p, long precision);

// Normalized valuation v_K (v_K(pi_K) = 1), computed from the norm. Returns
// kExact for an exact zero and throws PrecisionLoss when the norm is zero at
// working precision.
long valuation(const LocalFieldElement &a);
// Lower bound on v_p over coordinates, useful for precision bookkeeping.
long min_coordinate_valuation(const LocalFieldElement &a);
// Smallest absolute precision over the coordinates.
long precision_of(const LocalFieldElement &a);

PAdic trace_to_base(const LocalFieldElement &a);

struct GramResult {
    Matrix<PAdic> gram;
    PAdic determinant;
    bool nondegenerate = false;
};

GramResult trace_gram_base(const std::vector<LocalFieldElement> &basis);

// Certificate helpers, exposed for tests.
bool is_eisenstein(long p, const std::vector<mpz_class> &poly);
bool irreducible_mod_p(long p, const std::vector<mpz_class> &poly);
// Returns the slope numerator s when the Newton polygon is a single segment
// from (0, s) to (d, 0) with gcd(s, d) == 1, or 0 otherwise.
long single_segment_slope(long p, const std::vector<mpz_class> &poly);

std::string to_string(const LocalFieldElement &a);

} // namespace res2d

#endif
