#include "res2d/weierstrass.hpp"

#include <algorithm>
#include <numeric>

#include "res2d/error.hpp"

namespace res2d
{

namespace
{

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
long ceil_div(long a, long b) { return -floor_div(-a, b); }

LocalFieldElement truncate_digits(const LocalFieldElement &a, long digits)
{
    std::vector<PAdic> v;
    for (const auto &c : a.coords()) {
        v.push_back(c.truncated(digits));
    }
    return a.ring()->element(v);
}

KSeries truncate_series_digits(const KSeries &s, long digits)
{
    return s.map([digits](const LocalFieldElement &x) { return truncate_digits(x, digits); });
}

// Coefficients of s at exponents >= l, shifted down by l.
KSeries high_part(const KSeries &s, int l)
{
    std::vector<LocalFieldElement> v;
    for (int n = std::max(l, s.lower()); n < s.upper(); ++n) {
        v.push_back(s.coeff(n));
    }
    const int start = std::max(l, s.lower()) - l;
    return KSeries(s.zero(), start, std::move(v), s.truncated() ? s.n_max() - l : kUntruncated);
}

bool is_one(const LocalFieldElement &a)
{
    const auto &c = a.coords();
    if (!c[0].is_exact() || c[0].rational() != 1) {
        return false;
    }
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (!c[i].is_exact_zero()) {
            return false;
        }
    }
    return true;
}

// Distinguished factor of an untruncated integral power series g with
// Weierstrass degree l. Solves t^l = q g + r by the contracting iteration
// w <- high(t^l) - high(w * g_low / g_high), w = q * g_high; every step gains one
// pi_K-adic digit, so N*e + 2 steps reach the working precision.
KPoly distinguished_factor(const KSeries &g, int l)
{
    const FieldPtr &k = g.zero().ring();
    const long digits = k->precision();
    const long steps = digits * k->ramification() + 2;
    if (l == 0) {
        return {k->one()};
    }
    std::vector<LocalFieldElement> low;
    for (int j = 0; j < l; ++j) {
        low.push_back(g.coeff(j));
    }
    const KSeries g_low = KSeries::polynomial(low, k->zero());
    const KSeries g_high = high_part(g, l);
    const int h_len = static_cast<int>(l * (steps + 2));
    const KSeries h = truncate_series_digits((g_low * g_high.inverse(h_len)).truncated_to(h_len), digits);

    const KSeries one = KSeries::monomial(k->one(), 0);
    KSeries w = one;
    for (long it = 1; it <= steps; ++it) {
        const int len = static_cast<int>(l + l * (steps - it) + l);
        w = truncate_series_digits((one - high_part((w.truncated_to(len + l) * h).truncated_to(len + l), l)), digits)
                .truncated_to(len);
    }
    const KSeries q = (w * g_high.inverse(l)).truncated_to(l);
    const KSeries corr = (q * g_low).truncated_to(l);
    KPoly d;
    for (int j = 0; j < l; ++j) {
        d.push_back(truncate_digits(corr.coeff(j), digits));
    }
    d.push_back(k->one());
    return d;
}

} // namespace

std::string irreducibility_name(Irreducibility c)
{
    switch (c) {
        case Irreducibility::Linear: return "linear";
        case Irreducibility::Eisenstein: return "eisenstein";
        case Irreducibility::NewtonSegment: return "newton_segment";
        case Irreducibility::Unknown: return "unknown";
    }
    return "unknown";
}

long valuation_or_inf(const LocalFieldElement &a)
{
    if (a.is_zero()) {
        return kExact;
    }
    try {
        return valuation(a);
    } catch (const Error &) {
        return kExact;
    }
}

LocalFieldElement cap_precision_vk(const LocalFieldElement &a, long vk)
{
    return truncate_digits(a, a.ring()->coordinate_floor(vk));
}

void DistinguishedPolynomial::validate() const
{
    if (coeffs.empty() || !is_one(coeffs.back())) {
        raise(ErrorKind::InvalidInput, "distinguished polynomial must be monic");
    }
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        if (valuation_or_inf(coeffs[i]) < 1) {
            raise(ErrorKind::InvalidInput, "distinguished polynomial has a lower coefficient outside the maximal ideal");
        }
    }
}

Irreducibility DistinguishedPolynomial::irreducibility() const
{
    const long l = degree();
    if (l == 1) {
        return Irreducibility::Linear;
    }
    if (exact && is_eisenstein(field()->p(), *exact) && field()->degree() == 1) {
        return Irreducibility::Eisenstein;
    }
    const long s = valuation_or_inf(coeffs[0]);
    if (s >= kExact || std::gcd(s, l) != 1) {
        return Irreducibility::Unknown;
    }
    for (long i = 1; i < l; ++i) {
        const long v = valuation_or_inf(coeffs[static_cast<std::size_t>(i)]);
        if (v < kExact && v * l < s * (l - i)) {
            return Irreducibility::Unknown;
        }
    }
    return s == 1 ? Irreducibility::Eisenstein : Irreducibility::NewtonSegment;
}

std::string DistinguishedPolynomial::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) {
            s += " + ";
        }
        s += res2d::to_string(coeffs[i]) + "*t^" + std::to_string(i);
    }
    return s;
}

DistinguishedPolynomial distinguished_from_ints(const FieldPtr &k, const std::vector<mpz_class> &c)
{
    DistinguishedPolynomial d{kpoly::from_ints(k, c), c};
    d.validate();
    return d;
}

DistinguishedPolynomial distinguished_from_ints(const FieldPtr &k, const std::vector<long> &c)
{
    return distinguished_from_ints(k, std::vector<mpz_class>(c.begin(), c.end()));
}

DivisionResult weierstrass_divide(const KSeries &g, const DistinguishedPolynomial &p)
{
    const int l = static_cast<int>(p.degree());
    const FieldPtr &k = p.field();
    if (!g.empty() && g.lower() < 0) {
        raise(ErrorKind::InvalidInput, "weierstrass_divide needs a power series");
    }
    if (g.truncated() && g.n_max() <= l) {
        raise(ErrorKind::TruncationExhausted, "series truncation must exceed the divisor degree");
    }
    if (l == 0) {
        return {g, {}};
    }
    KPoly a;
    const int top = g.truncated() ? g.n_max() : g.upper();
    for (int n = 0; n < top; ++n) {
        a.push_back(g.coeff(n));
    }
    if (a.empty()) {
        a.push_back(k->zero());
    }
    auto [q, r] = kpoly::divmod_monic(a, p.coeffs);
    r.resize(static_cast<std::size_t>(l), k->zero());
    if (!g.truncated()) {
        return {KSeries::polynomial(q, k->zero()), r};
    }
    const long t = g.n_max();
    for (std::size_t j = 0; j < q.size(); ++j) {
        q[j] = cap_precision_vk(q[j], ceil_div(t - l - static_cast<long>(j), l));
    }
    const long r_cap = ceil_div(t - 2 * l + 1, l) + 1;
    for (auto &c : r) {
        c = cap_precision_vk(c, r_cap);
    }
    return {KSeries(k->zero(), 0, q, static_cast<int>(t - l)), r};
}

PreparationResult weierstrass_prepare(const KSeries &g)
{
    if (!g.empty() && g.lower() < 0) {
        raise(ErrorKind::InvalidInput, "weierstrass_prepare needs a power series");
    }
    const FieldPtr &k = g.zero().ring();
    long m = kExact;
    for (const auto &c : g.stored()) {
        m = std::min(m, valuation_or_inf(c));
    }
    if (m >= kExact) {
        raise(ErrorKind::ZeroAtPrecision, "series is zero at working precision");
    }
    const KSeries gp = g.scaled(k->uniformizer_power(-m));
    int l = -1;
    for (int n = 0; n < gp.upper(); ++n) {
        if (valuation_or_inf(gp.coeff(n)) == 0) {
            l = n;
            break;
        }
    }
    if (l < 0) {
        raise(ErrorKind::TruncationExhausted, "no unit coefficient within the known window");
    }
    const KSeries as_poly(k->zero(), gp.lower(), gp.stored(), kUntruncated);
    DistinguishedPolynomial d{distinguished_factor(as_poly, l), std::nullopt};
    auto div = weierstrass_divide(gp, d);
    return {m, div.quotient, d};
}

SquarefreeSplit squarefree_split(const FieldPtr &k, const std::vector<mpz_class> &b)
{
    QPoly bq = qpoly::from_ints(b);
    if (bq.empty()) {
        raise(ErrorKind::InvalidInput, "squarefree_split of the zero polynomial");
    }
    SquarefreeSplit out;
    auto monic_factors = qpoly::squarefree_factors(bq);
    // Primitive integer versions of the Yun factors.
    QPoly prod{1};
    for (std::size_t i = 0; i < monic_factors.size(); ++i) {
        QPoly f = monic_factors[i];
        mpz_class den = 1;
        for (const auto &c : f) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        }
        for (auto &c : f) {
            c *= den;
        }
        mpz_class g = 0;
        for (const auto &c : f) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        }
        for (auto &c : f) {
            c /= g;
        }
        out.yun.push_back(f);
        prod = qpoly::mul(prod, qpoly::pow(f, static_cast<unsigned>(i + 1)));
    }
    const mpq_class content = bq.back() / prod.back();
    if (content.get_den() != 1) {
        raise(ErrorKind::InvalidInput, "internal: non-integral content");
    }
    out.content = content.get_num();
    out.pi_power = k->ramification() * valuation_of(out.content, k->p());
    LocalFieldElement c = k->from_int(out.content) * k->uniformizer_power(-out.pi_power);
    KPoly unit{c};

    for (std::size_t i = 0; i < out.yun.size(); ++i) {
        const int mult = static_cast<int>(i + 1);
        QPoly s = out.yun[i];
        if (qpoly::degree(s) < 1) {
            continue;
        }
        if (s[0] == 0) {
            SplitFactor f;
            f.prime = distinguished_from_ints(k, std::vector<long>{0, 1});
            f.multiplicity = mult;
            f.yun_factor = out.yun[i];
            f.cofactor = kpoly::from_q(k, qpoly::divmod(s, QPoly{0, 1}).first);
            out.factors.push_back(std::move(f));
            s = qpoly::divmod(s, QPoly{0, 1}).first;
        }
        const KSeries sk = KSeries::polynomial(kpoly::from_q(k, s), k->zero());
        auto prep = weierstrass_prepare(sk);
        KPoly u;
        for (int n = 0; n < prep.unit.upper(); ++n) {
            u.push_back(prep.unit.coeff(n));
        }
        for (int r = 0; r < mult; ++r) {
            unit = kpoly::mul(unit, u);
        }
        if (prep.distinguished.degree() >= 1) {
            SplitFactor f;
            f.prime = prep.distinguished;
            if (std::all_of(f.prime.coeffs.begin(), f.prime.coeffs.end(),
                            [](const LocalFieldElement &x) { return x.is_exact(); })) {
                std::vector<mpz_class> ex;
                for (const auto &x : f.prime.coeffs) {
                    ex.push_back(x.coords()[0].rational().get_num());
                }
                f.prime.exact = ex;
            }
            f.multiplicity = mult;
            f.yun_factor = out.yun[i];
            f.cofactor = kpoly::divmod_monic(kpoly::from_q(k, out.yun[i]), f.prime.coeffs).first;
            out.factors.push_back(std::move(f));
        }
    }
    out.unit = std::move(unit);
    return out;
}

} // namespace res2d
