#ifndef RES2D_PADIC_HPP
#define RES2D_PADIC_HPP

#include <climits>
#include <string>

#include <gmpxx.h>

namespace res2d
{

// Absolute precision marker for values that are known exactly.
inline constexpr long kExact = LONG_MAX / 4;

bool is_prime(long p);

// p^k for small p, cached per thread.
const mpz_class &prime_power(long p, long k);

// v_p(n) for n != 0.
long valuation_of(const mpz_class &n, long p);

// An element of Q_p stored as p^val * unit.
//
// Inexact values are known modulo p^prec (absolute precision); the unit is then
// reduced into [0, p^(prec - val)). Exact values carry prec == kExact and an
// arbitrary integer unit coprime to p. An inexact value whose residue vanishes
// is "zero at precision" and is stored with val == prec; it is not the same
// thing as an exact zero.
//
// cap is the relative precision handed to values that stop being exact, for
// instance when an exact non-unit is inverted.
class PAdic
{
public:
    PAdic() = default;

    static PAdic exact(long p, long cap, const mpz_class &n, long val = 0);
    static PAdic exact_zero(long p, long cap);
    // n * p^val + O(p^prec).
    static PAdic approx(long p, long cap, const mpz_class &n, long val, long prec);
    static PAdic zero_at(long p, long cap, long prec);

    long p() const noexcept { return p_; }
    long cap() const noexcept { return cap_; }
    bool is_exact() const noexcept { return prec_ == kExact; }
    bool is_zero() const noexcept { return unit_ == 0; }
    bool is_exact_zero() const noexcept { return is_zero() && is_exact(); }

    // Lower bound on the valuation; exact for nonzero values. Exact zero
    // reports kExact.
    long valuation() const noexcept { return val_; }
    long precision() const noexcept { return prec_; }
    long relative_precision() const noexcept { return is_exact() ? kExact : prec_ - val_; }
    const mpz_class &unit() const noexcept { return unit_; }

    PAdic zero() const { return exact_zero(p_, cap_); }
    PAdic one() const { return exact(p_, cap_, 1); }
    PAdic make(const mpz_class &n) const { return exact(p_, cap_, n); }
    PAdic make(long n) const { return exact(p_, cap_, mpz_class(n)); }

    PAdic operator-() const;
    PAdic &operator+=(const PAdic &o) { return *this = *this + o; }
    PAdic &operator-=(const PAdic &o) { return *this = *this - o; }
    PAdic &operator*=(const PAdic &o) { return *this = *this * o; }
    friend PAdic operator+(const PAdic &a, const PAdic &b);
    friend PAdic operator-(const PAdic &a, const PAdic &b) { return a + (-b); }
    friend PAdic operator*(const PAdic &a, const PAdic &b);

    PAdic inverse() const;
    // Multiply by p^k exactly.
    PAdic shifted(long k) const;
    // Forget digits at and above absolute position prec.
    PAdic truncated(long prec) const;

    // Pivot weight for elimination: the valuation, or kExact for zero.
    long weight() const noexcept { return is_zero() ? kExact : val_; }

    // Exact rational value of the stored representative.
    mpq_class rational() const;
    // Representative modulo p^k, requires val >= 0.
    mpz_class residue(long k) const;

    std::string to_string() const;

private:
    static PAdic normalized(long p, long cap, mpz_class x, long val, long prec);

    long p_ = 2;
    long cap_ = 20;
    mpz_class unit_ = 0;
    long val_ = kExact;
    long prec_ = kExact;
};

// Digits of agreement: the valuation lower bound of a - b, capped by the
// smaller precision.
long agreement(const PAdic &a, const PAdic &b);

} // namespace res2d

#endif
