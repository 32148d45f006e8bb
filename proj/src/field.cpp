#include "res2d/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <numeric>

#include "res2d/error.hpp"

namespace res2d
{

namespace
{

std::vector<PAdic> exact_low(long p, long cap, const std::vector<mpz_class> &poly)
{
    std::vector<PAdic> low;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        low.push_back(PAdic::exact(p, cap, poly[i]));
    }
    return low;
}

// Dense polynomial arithmetic over F_p, ascending coefficients.
using Fp = std::vector<long>;

long mulmod(long a, long b, long p) { return static_cast<long>((static_cast<__int128>(a) * b) % p); }

void trim(Fp &a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

long inv_mod(long a, long p)
{
    long r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
        if (e & 1) {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

Fp rem(Fp a, const Fp &m, long p)
{
    trim(a);
    const long lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const long c = mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[shift + i] = ((a[shift + i] - mulmod(c, m[i], p)) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Fp mul_mod(const Fp &a, const Fp &b, const Fp &m, long p)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    return rem(std::move(r), m, p);
}

Fp pow_mod(Fp base, mpz_class e, const Fp &m, long p)
{
    Fp r{1};
    base = rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            r = mul_mod(r, base, m, p);
        }
        base = mul_mod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Fp gcd(Fp a, Fp b, long p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Fp r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<long> prime_factors(long n)
{
    std::vector<long> out;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) {
                n /= q;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

} // namespace

std::string certificate_name(Certificate c)
{
    switch (c) {
        case Certificate::Trivial: return "trivial";
        case Certificate::Eisenstein: return "eisenstein";
        case Certificate::Unramified: return "unramified";
        case Certificate::NewtonSegment: return "newton_segment";
        case Certificate::Trusted: return "trusted";
    }
    return "unknown";
}

bool is_eisenstein(long p, const std::vector<mpz_class> &poly)
{
    const std::size_t d = poly.size() - 1;
    if (d < 1 || poly[d] != 1) {
        return false;
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (valuation_of(poly[i], p) < 1) {
            return false;
        }
    }
    return valuation_of(poly[0], p) == 1;
}

bool irreducible_mod_p(long p, const std::vector<mpz_class> &poly)
{
    Fp f;
    for (const auto &c : poly) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        f.push_back(r.get_si());
    }
    trim(f);
    const long d = static_cast<long>(f.size()) - 1;
    if (d != static_cast<long>(poly.size()) - 1 || d < 1) {
        return false;
    }
    if (d == 1) {
        return true;
    }
    // Rabin: x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1 for primes q | d.
    const Fp x{0, 1};
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    Fp xp = pow_mod(x, pd, f, p);
    xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
    xp[1] = (xp[1] - 1 + p) % p;
    trim(xp);
    if (!xp.empty()) {
        return false;
    }
    for (long q : prime_factors(d)) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d / q));
        Fp h = pow_mod(x, e, f, p);
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] - 1 + p) % p;
        trim(h);
        if (h.empty()) {
            return false;
        }
        if (gcd(h, f, p).size() != 1) {
            return false;
        }
    }
    return true;
}

long single_segment_slope(long p, const std::vector<mpz_class> &poly)
{
    const long d = static_cast<long>(poly.size()) - 1;
    if (d < 1 || poly[0] == 0) {
        return 0;
    }
    const long s = valuation_of(poly[0], p);
    if (s < 1 || std::gcd(s, d) != 1) {
        return 0;
    }
    for (long i = 1; i < d; ++i) {
        if (poly[i] == 0) {
            continue;
        }
        if (valuation_of(poly[i], p) * d < s * (d - i)) {
            return 0;
        }
    }
    return s;
}

CoefficientField::CoefficientField(Tag, long p, long precision, std::vector<mpz_class> poly, Certificate cert,
                                   long e, long f0, std::vector<mpz_class> uniformizer_exponents)
    : QuotientRing<PAdic>(exact_low(p, precision, poly)), p_(p), precision_(precision), poly_(std::move(poly)),
      cert_(cert), e_(e), f0_(f0), pi_exps_(std::move(uniformizer_exponents))
{
}

FieldPtr field_make(long p, const std::vector<mpz_class> &poly, long precision, bool trust_irreducible)
{
    if (!is_prime(p)) {
        raise(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
    }
    if (precision < 1) {
        raise(ErrorKind::InvalidInput, "precision must be >= 1");
    }
    if (poly.size() < 2 || poly.back() != 1) {
        raise(ErrorKind::InvalidInput, "defining polynomial must be monic of degree >= 1");
    }
    const long d = static_cast<long>(poly.size()) - 1;
    Certificate cert;
    long e = 1, f0 = d;
    std::vector<mpz_class> pi{0, 1};
    if (d == 1) {
        cert = Certificate::Trivial;
        f0 = 1;
    } else if (is_eisenstein(p, poly)) {
        cert = Certificate::Eisenstein;
        e = d;
        f0 = 1;
        pi = {1, 0};
    } else if (irreducible_mod_p(p, poly)) {
        cert = Certificate::Unramified;
    } else if (long s = single_segment_slope(p, poly); s != 0) {
        cert = Certificate::NewtonSegment;
        e = d;
        f0 = 1;
        // k*s + r*d = 1 with k >= 0: v_K(x) = s and v_K(p) = d.
        long k = 0;
        while ((k * s - 1) % d != 0) {
            ++k;
        }
        pi = {k, (1 - k * s) / d};
    } else if (trust_irreducible) {
        cert = Certificate::Trusted;
    } else {
        raise(ErrorKind::NotIrreducibleCertified, "no irreducibility certificate applies");
    }
    auto k = std::make_shared<CoefficientField>(CoefficientField::Tag{}, p, precision, poly, cert, e, f0, std::move(pi));
    if (d > 1) {
        std::vector<LocalFieldElement> basis{k->one()};
        for (long i = 1; i < d; ++i) {
            basis.push_back(basis.back() * k->generator());
        }
        const auto gram = trace_gram(basis);
        long off = kExact;
        for (long i = 0; i < d; ++i) {
            std::vector<PAdic> rhs(static_cast<std::size_t>(d), PAdic::exact_zero(p, precision));
            rhs[static_cast<std::size_t>(i)] = PAdic::exact(p, precision, 1);
            off = std::min(off, valuation(k->element(solve(gram, rhs))));
        }
        k->dual_offset_ = off;
    }
    return k;
}

long CoefficientField::coordinate_floor(long vk) const
{
    const long a = vk + dual_offset_;
    return a >= 0 ? a / e_ : -((-a + e_ - 1) / e_);
}

FieldPtr field_make(long p, const std::vector<long> &poly, long precision, bool trust_irreducible)
{
    std::vector<mpz_class> z(poly.begin(), poly.end());
    return field_make(p, z, precision, trust_irreducible);
}

FieldPtr base_field(long p, long precision) { return field_make(p, std::vector<long>{0, 1}, precision); }

LocalFieldElement CoefficientField::element(const std::vector<mpz_class> &coords) const
{
    std::vector<PAdic> v;
    for (const auto &c : coords) {
        v.push_back(PAdic::exact(p_, precision_, c));
    }
    return element(v);
}

LocalFieldElement CoefficientField::element(const std::vector<PAdic> &coords) const
{
    std::vector<PAdic> v = coords;
    v.resize(std::max(v.size(), degree()), PAdic::exact_zero(p_, precision_));
    return LocalFieldElement(shared_from_this(), std::move(v));
}

LocalFieldElement CoefficientField::from_int(const mpz_class &n) const
{
    return LocalFieldElement::scalar(shared_from_this(), PAdic::exact(p_, precision_, n));
}

LocalFieldElement CoefficientField::generator() const { return LocalFieldElement::generator(shared_from_this()); }

LocalFieldElement CoefficientField::uniformizer() const
{
    const long k = pi_exps_[0].get_si();
    const long r = pi_exps_[1].get_si();
    LocalFieldElement x = one();
    const LocalFieldElement g = generator();
    for (long i = 0; i < k; ++i) {
        x *= g;
    }
    return x.scaled(PAdic::exact(p_, precision_, 1, r));
}

LocalFieldElement CoefficientField::uniformizer_power(long m) const
{
    if (degree() == 1 || cert_ == Certificate::Unramified) {
        return LocalFieldElement::scalar(shared_from_this(), PAdic::exact(p_, precision_, 1, m));
    }
    LocalFieldElement base = m >= 0 ? uniformizer() : uniformizer().inverse();
    LocalFieldElement acc = one();
    for (long i = 0; i < std::abs(m); ++i) {
        acc *= base;
    }
    return acc;
}

long CoefficientField::weight(const LocalFieldElement &a) const
{
    if (a.is_zero()) {
        return kExact;
    }
    if (degree() == 1) {
        return a.coords()[0].valuation();
    }
    const PAdic n = a.norm();
    if (n.is_zero()) {
        return e_ * min_coordinate_valuation(a);
    }
    return e_ * n.valuation() / static_cast<long>(degree());
}

bool CoefficientField::same_as(const CoefficientField &o) const
{
    return p_ == o.p_ && poly_ == o.poly_;
}

long valuation(const LocalFieldElement &a)
{
    const auto &k = *a.ring();
    if (a.is_zero()) {
        if (a.is_exact()) {
            return kExact;
        }
        raise(ErrorKind::PrecisionLoss, "element is zero at working precision");
    }
    const PAdic n = a.norm();
    if (n.is_zero()) {
        raise(ErrorKind::PrecisionLoss, "norm is zero at working precision");
    }
    const long d = static_cast<long>(k.degree());
    const long num = k.ramification() * n.valuation();
    if (num % d != 0) {
        raise(ErrorKind::PrecisionLoss, "norm valuation inconsistent with the ramification index");
    }
    return num / d;
}

FieldPtr field_with_precision(const FieldPtr &k, long precision)
{
    if (precision == k->precision()) {
        return k;
    }
    static std::mutex mu;
    static std::map<std::tuple<long, std::vector<mpz_class>, long>, FieldPtr> cache;
    const auto key = std::make_tuple(k->p(), k->polynomial(), precision);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, field_make(k->p(), k->polynomial(), precision, true)).first;
    }
    return it->second;
}

LocalFieldElement rebase(const LocalFieldElement &a, const FieldPtr &target)
{
    const auto &src = a.ring();
    if (src->p() != target->p() || src->polynomial() != target->polynomial()) {
        raise(ErrorKind::FieldMismatch, "rebase between different fields");
    }
    const long p = target->p(), n = target->precision();
    std::vector<PAdic> v;
    for (const auto &c : a.coords()) {
        if (c.is_exact()) {
            v.push_back(c.is_zero() ? PAdic::exact_zero(p, n) : PAdic::exact(p, n, c.unit(), c.valuation()));
        } else if (c.is_zero()) {
            v.push_back(PAdic::zero_at(p, n, std::min(c.precision(), n)));
        } else {
            v.push_back(PAdic::approx(p, n, c.unit(), c.valuation(), std::min(c.precision(), c.valuation() + n)));
        }
    }
    return target->element(v);
}

long min_coordinate_valuation(const LocalFieldElement &a)
{
    long v = kExact;
    for (const auto &c : a.coords()) {
        v = std::min(v, c.is_zero() ? c.precision() : c.valuation());
    }
    return v;
}

long precision_of(const LocalFieldElement &a)
{
    long v = kExact;
    for (const auto &c : a.coords()) {
        v = std::min(v, c.precision());
    }
    return v;
}

PAdic trace_to_base(const LocalFieldElement &a) { return a.trace(); }

GramResult trace_gram_base(const std::vector<LocalFieldElement> &basis)
{
    GramResult r;
    r.gram = trace_gram(basis);
    r.determinant = determinant(r.gram);
    r.nondegenerate = !r.determinant.is_zero();
    return r;
}

std::string to_string(const LocalFieldElement &a)
{
    std::string s = "[";
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += a.coords()[i].to_string();
    }
    return s + "]";
}

} // namespace res2d
