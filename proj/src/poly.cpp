#include "res2d/poly.hpp"

#include <algorithm>

#include "res2d/error.hpp"

namespace res2d
{

namespace qpoly
{

QPoly from_ints(const std::vector<mpz_class> &c)
{
    QPoly a(c.begin(), c.end());
    trim(a);
    return a;
}

QPoly from_ints(const std::vector<long> &c)
{
    QPoly a;
    for (long x : c) {
        a.emplace_back(x);
    }
    trim(a);
    return a;
}

void trim(QPoly &a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

long degree(const QPoly &a) { return static_cast<long>(a.size()) - 1; }

QPoly add(const QPoly &a, const QPoly &b)
{
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] += b[i];
    }
    trim(r);
    return r;
}

QPoly sub(const QPoly &a, const QPoly &b)
{
    QPoly nb = b;
    for (auto &x : nb) {
        x = -x;
    }
    return add(a, nb);
}

QPoly mul(const QPoly &a, const QPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

QPoly pow(const QPoly &a, unsigned n)
{
    QPoly r{1};
    for (unsigned i = 0; i < n; ++i) {
        r = mul(r, a);
    }
    return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b)
{
    if (b.empty()) {
        raise(ErrorKind::DivisionByZero, "polynomial division by zero");
    }
    QPoly r = a;
    trim(r);
    if (r.size() < b.size()) {
        return {{}, r};
    }
    QPoly q(r.size() - b.size() + 1, 0);
    while (r.size() >= b.size() && !r.empty()) {
        const std::size_t shift = r.size() - b.size();
        const mpq_class c = r.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[shift + i] -= c * b[i];
        }
        r.pop_back();
        trim(r);
    }
    trim(q);
    return {q, r};
}

QPoly monic(const QPoly &a)
{
    if (a.empty()) {
        return a;
    }
    QPoly r = a;
    const mpq_class lead = a.back();
    for (auto &x : r) {
        x /= lead;
    }
    return r;
}

QPoly gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

QPoly derivative(const QPoly &a)
{
    QPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) {
        r.push_back(a[i] * static_cast<long>(i));
    }
    trim(r);
    return r;
}

bool is_integral(const QPoly &a)
{
    return std::all_of(a.begin(), a.end(), [](const mpq_class &x) { return x.get_den() == 1; });
}

std::vector<mpz_class> to_ints(const QPoly &a)
{
    std::vector<mpz_class> r;
    for (const auto &x : a) {
        if (x.get_den() != 1) {
            raise(ErrorKind::InvalidInput, "polynomial has non-integral coefficients");
        }
        r.push_back(x.get_num());
    }
    return r;
}

std::vector<QPoly> squarefree_factors(const QPoly &a)
{
    std::vector<QPoly> out;
    if (degree(a) < 1) {
        return out;
    }
    QPoly b = gcd(a, derivative(a));
    QPoly c = divmod(a, b).first;
    QPoly d = sub(divmod(derivative(a), b).first, derivative(c));
    while (degree(c) >= 1) {
        QPoly s = gcd(c, d);
        out.push_back(s);
        c = divmod(c, s).first;
        d = sub(divmod(d, s).first, derivative(c));
    }
    while (!out.empty() && degree(out.back()) < 1) {
        out.pop_back();
    }
    return out;
}

} // namespace qpoly

namespace kpoly
{

KPoly from_q(const FieldPtr &k, const QPoly &a)
{
    KPoly r;
    for (const auto &x : a) {
        if (x.get_den() == 1) {
            r.push_back(k->from_int(x.get_num()));
        } else {
            r.push_back(k->from_int(x.get_num()) * k->from_int(x.get_den()).inverse());
        }
    }
    return r;
}

KPoly from_ints(const FieldPtr &k, const std::vector<mpz_class> &a)
{
    KPoly r;
    for (const auto &x : a) {
        r.push_back(k->from_int(x));
    }
    return r;
}

KPoly mul(const KPoly &a, const KPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    KPoly r(a.size() + b.size() - 1, a[0].zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

std::pair<KPoly, KPoly> divmod_monic(const KPoly &a, const KPoly &monic)
{
    const std::size_t l = monic.size() - 1;
    if (a.size() <= l) {
        return {{}, a};
    }
    KPoly r = a;
    KPoly q(a.size() - l, a[0].zero());
    for (std::size_t k = r.size(); k-- > l;) {
        const LocalFieldElement c = r[k];
        q[k - l] = c;
        for (std::size_t i = 0; i <= l; ++i) {
            r[k - l + i] -= c * monic[i];
        }
    }
    r.resize(l, a[0].zero());
    return {q, r};
}

bool is_zero(const KPoly &a)
{
    return std::all_of(a.begin(), a.end(), [](const LocalFieldElement &x) { return x.is_zero(); });
}

} // namespace kpoly

} // namespace res2d
