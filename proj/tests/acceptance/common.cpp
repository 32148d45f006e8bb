#include "common.hpp"

namespace acceptance
{

std::vector<PAdic> flatten(const LocalFieldElement &a) { return a.coords(); }

std::vector<PAdic> flatten(const EtaleElement &a)
{
    std::vector<PAdic> out;
    for (const auto &c : a.coords()) {
        const auto &d = c.coords();
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

long agree(const LocalFieldElement &a, const LocalFieldElement &b)
{
    long m = kExact;
    for (const auto &c : (a - b).coords()) {
        m = std::min(m, c.is_zero() ? c.precision() : c.valuation());
    }
    return m;
}

long agree(const EtaleElement &a, const EtaleElement &b)
{
    long m = kExact;
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        m = std::min(m, agree(a.coords()[i], b.coords()[i]));
    }
    return m;
}

bool consistent(const LocalFieldElement &a, const LocalFieldElement &b)
{
    return agree(a, b) >= std::min(precision_of(a), precision_of(b));
}

bool consistent(const EtaleElement &a, const EtaleElement &b)
{
    return agree(a, b) >= std::min(precision_of(a), precision_of(b));
}

std::vector<mpz_class> random_distinguished(long p, int l, std::mt19937_64 &rng, bool eisenstein)
{
    std::uniform_int_distribution<long> dist(-3, 3);
    for (;;) {
        std::vector<mpz_class> c;
        for (int i = 0; i < l; ++i) {
            c.emplace_back(p * dist(rng));
        }
        if (eisenstein) {
            long u = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(p - 1));
            c[0] = p * (rng() % 2 ? u : -u);
        }
        c.emplace_back(1);
        const QPoly q = qpoly::from_ints(c);
        if (qpoly::degree(qpoly::gcd(q, qpoly::derivative(q))) == 0) {
            return c;
        }
    }
}

RationalForm integral_at_clusters(long p, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> dist(-p * p, p * p);
    RationalForm w;
    for (int i = 0; i < 4; ++i) {
        w.num.emplace_back(dist(rng));
    }
    w.den = {1 + p * dist(rng)};
    for (int i = 0; i < 2; ++i) {
        w.den.emplace_back(dist(rng));
    }
    if (w.den.back() == 0) {
        w.den.back() = 1;
    }
    w.pi_exp = static_cast<long>(rng() % 3) - 1;
    return w;
}

} // namespace acceptance
