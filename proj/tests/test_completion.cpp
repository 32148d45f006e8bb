#include <gtest/gtest.h>

#include <random>

#include "res2d/completion.hpp"

using namespace res2d;

namespace
{

long agree(const LocalFieldElement &a, const LocalFieldElement &b)
{
    long m = kExact;
    const auto d = a - b;
    for (const auto &c : d.coords()) {
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

// Equal at the smaller of the two tracked precisions.
bool consistent(const EtaleElement &a, const EtaleElement &b)
{
    return agree(a, b) >= std::min(precision_of(a), precision_of(b));
}

FieldPtr q5() { return field_make(5, std::vector<long>{0, 1}, 20); }

// Random squarefree distinguished integer polynomial of degree l.
std::vector<mpz_class> random_distinguished(long p, int l, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> dist(-3, 3);
    for (;;) {
        std::vector<mpz_class> c;
        for (int i = 0; i < l; ++i) {
            c.emplace_back(p * dist(rng));
        }
        c.emplace_back(1);
        const QPoly q = qpoly::from_ints(c);
        if (qpoly::degree(qpoly::gcd(q, qpoly::derivative(q))) == 0) {
            return c;
        }
    }
}

std::vector<mpz_class> random_poly(int deg, long bound, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<mpz_class> c;
    for (int i = 0; i <= deg; ++i) {
        c.emplace_back(dist(rng));
    }
    if (c.back() == 0) {
        c.back() = 1;
    }
    return c;
}

RationalFunction rf(std::vector<long> num, std::vector<long> den, long m = 0) { return rational_from_ints(num, den, m); }

} // namespace

TEST(Hensel, LinearIsExact)
{
    const auto k = q5();
    const auto h = hensel_t_expansion(k, distinguished_from_ints(k, std::vector<long>{-5, 1}), 4);
    EXPECT_GE(agree(h.coeff(0), h.algebra->from_int(5)), 20);
    EXPECT_GE(agree(h.coeff(1), h.algebra->one()), 20);
    for (int i = 2; i <= 4; ++i) {
        EXPECT_TRUE(h.coeff(i).is_zero());
    }
}

TEST(Hensel, SqrtFive)
{
    const auto k = q5();
    const auto h = hensel_t_expansion(k, distinguished_from_ints(k, std::vector<long>{-5, 0, 1}), 3);
    const auto y = h.algebra->generator();
    EXPECT_GE(agree(h.coeff(0), y), 19);
    // c1 = 1/(2 sqrt5), c2 = -1/(40 sqrt5)
    EXPECT_GE(agree(h.coeff(1) * y * h.algebra->from_int(2), h.algebra->one()), 17);
    EXPECT_GE(agree(h.coeff(2) * y * h.algebra->from_int(40), h.algebra->from_int(-1)), 15);
}

TEST(Hensel, SplitCluster)
{
    const auto k = q5();
    const auto h = hensel_t_expansion(k, distinguished_from_ints(k, std::vector<long>{0, -5, 1}), 3);
    const auto y = h.algebra->generator();
    // components at y = 0 and y = 5: c1 = 1/P'(c0) = 1/(2y - 5)
    const auto dp = y * h.algebra->from_int(2) - h.algebra->from_int(5);
    EXPECT_GE(agree(h.coeff(1) * dp, h.algebra->one()), 17);
    // check the component values through (y - 5) and y
    const auto e0 = h.coeff(1) * (y - h.algebra->from_int(5));
    const auto e5 = h.coeff(1) * y;
    EXPECT_GE(agree(e0 * h.algebra->from_int(-5), y - h.algebra->from_int(5)), 16);
    EXPECT_GE(agree(e5 * h.algebra->from_int(5), y), 16);
}

TEST(Hensel, NotSquarefree)
{
    const auto k = q5();
    try {
        hensel_t_expansion(k, distinguished_from_ints(k, std::vector<long>{25, -10, 1}), 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSquarefree);
    }
    EXPECT_THROW(HeightOnePrime::cluster(k, std::vector<long>{25, -10, 1}), Error);
}

TEST(Hensel, Congruence)
{
    std::mt19937_64 rng(11);
    const std::vector<std::pair<long, std::vector<long>>> fields{{2, {0, 1}}, {3, {0, 1}}, {5, {-5, 0, 1}}, {7, {-3, 0, 1}}};
    long worst = kExact;
    int cases = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto &[p, f] = fields[static_cast<std::size_t>(trial) % fields.size()];
        const auto k = field_make(p, f, 20);
        const int l = 1 + static_cast<int>(rng() % 4);
        const int depth = static_cast<int>(rng() % 9);
        const auto pc = random_distinguished(p, l, rng);
        const auto dp = distinguished_from_ints(k, pc);
        const auto h = hensel_t_expansion(k, dp, depth);
        const auto &alg = h.algebra;
        const ClusterSeries val = compose(dp.coeffs, h.tau, [&alg](const LocalFieldElement &c) {
            return alg->from_base(c);
        });
        for (int j = 0; j <= depth; ++j) {
            const auto target = j == 1 ? alg->one() : alg->zero();
            const long a = agree(val.coeff(j), target);
            EXPECT_GE(a, 20 - h.loss) << "p=" << p << " l=" << l << " depth=" << depth << " j=" << j;
            worst = std::min(worst, a - (20 - h.loss));
        }
        ++cases;
    }
    EXPECT_GE(cases, 100);
    RecordProperty("worst_margin", std::to_string(worst));
}

TEST(Embed, Examples)
{
    const auto k = q5();
    const auto p1 = distinguished_from_ints(k, std::vector<long>{-5, 1});
    const ClusterChart c1(k, p1, 4);
    const auto x = c1.embed(rf({0, 1}, {1}));
    EXPECT_GE(agree(x.coeff(0), c1.algebra()->from_int(5)), 20);
    EXPECT_GE(agree(x.coeff(1), c1.algebra()->one()), 20);
    EXPECT_TRUE(x.coeff(2).is_zero());

    const auto inv = c1.embed(rf({1}, {-5, 1}));
    EXPECT_EQ(inv.lower(), -1);
    EXPECT_GE(agree(inv.coeff(-1), c1.algebra()->one()), 20);
    EXPECT_TRUE(inv.coeff(0).is_zero());

    const auto p2 = distinguished_from_ints(k, std::vector<long>{-5, 0, 1});
    const ClusterChart c2(k, p2, 4);
    const auto y = c2.embed(rf({0, 1}, {-5, 0, 1}));
    EXPECT_EQ(y.lower(), -1);
    EXPECT_GE(agree(y.coeff(-1), c2.algebra()->generator()), 19);
    // multiply back by the image of t^2 - 5, which is t_P
    const auto back = y * c2.embed(rf({-5, 0, 1}, {1}));
    const auto t = c2.embed(rf({0, 1}, {1}));
    for (int n = 0; n < back.n_max() && n < t.n_max(); ++n) {
        EXPECT_GE(agree(back.coeff(n), t.coeff(n)), 16) << n;
    }
}

TEST(Embed, RingMap)
{
    std::mt19937_64 rng(5);
    const auto k = q5();
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto pc = random_distinguished(5, 1 + static_cast<int>(trial % 3), rng);
        const auto dp = distinguished_from_ints(k, pc);
        const ClusterChart chart(k, dp, 8);
        RationalFunction x, y;
        x.num = random_poly(2, 9, rng);
        x.den = random_poly(1, 9, rng);
        y.num = random_poly(2, 9, rng);
        y.den = qpoly::to_ints(qpoly::mul(qpoly::from_ints(pc), qpoly::from_ints(random_poly(1, 9, rng))));
        if (qpoly::from_ints(x.den).empty() || qpoly::from_ints(y.den).empty()) {
            continue;
        }
        try {
            const auto ex = chart.embed(x), ey = chart.embed(y);
            const auto prod = chart.embed(x * y), sum = chart.embed(x + y);
            const auto eprod = ex * ey, esum = ex + ey;
            for (int n = prod.lower(); n < std::min(prod.n_max(), eprod.n_max()); ++n) {
                EXPECT_TRUE(consistent(prod.coeff(n), eprod.coeff(n))) << trial << " n=" << n;
            }
            for (int n = std::min(sum.lower(), esum.lower()); n < std::min(sum.n_max(), esum.n_max()); ++n) {
                EXPECT_TRUE(consistent(sum.coeff(n), esum.coeff(n))) << trial << " n=" << n;
            }
            ++checked;
        } catch (const Error &e) {
            // x's denominator can share the cluster; only the non-invertible case is allowed to throw
            EXPECT_EQ(e.kind(), ErrorKind::DivisionByZeroAtPrecision) << e.what();
        }
    }
    EXPECT_GE(checked, 30);
}

TEST(MixedExpand, Examples)
{
    const auto k = q5();
    const auto g = mixed_expand_rational(k, rf({1}, {-5, 1}), -4, 0);
    const long expect[] = {125, 25, 5, 1};
    for (int n = -4; n < 0; ++n) {
        EXPECT_GE(agree(g.coeff(n), k->from_int(expect[n + 4])), 20) << n;
    }
    const auto t = mixed_expand_rational(k, rf({1}, {0, 1}), -3, 2);
    EXPECT_GE(agree(t.coeff(-1), k->one()), 20);
    for (int n : {-3, -2, 0, 1}) {
        EXPECT_TRUE(t.coeff(n).is_zero());
        EXPECT_GE(precision_of(t.coeff(n)), 20);
    }
    const auto s = mixed_expand_rational(k, rf({0, 1}, {-5, 0, 1}), -5, 0);
    EXPECT_GE(agree(s.coeff(-1), k->one()), 20);
    EXPECT_TRUE(s.coeff(-2).is_zero());
    EXPECT_GE(agree(s.coeff(-3), k->from_int(5)), 20);
    EXPECT_GE(agree(s.coeff(-5), k->from_int(25)), 20);
}

TEST(MixedExpand, MultiplyBack)
{
    std::mt19937_64 rng(17);
    const std::vector<std::pair<long, std::vector<long>>> fields{{2, {0, 1}}, {3, {0, 1}}, {5, {-5, 0, 1}}, {7, {-3, 0, 1}}};
    for (int trial = 0; trial < 40; ++trial) {
        const auto &[p, f] = fields[static_cast<std::size_t>(trial) % fields.size()];
        const auto k = field_make(p, f, 20);
        RationalFunction x;
        x.num = {1};
        x.den = random_poly(1 + static_cast<int>(rng() % 3), 4 * p, rng);
        const auto e = mixed_expand_rational(k, x, -12, 6);
        std::vector<LocalFieldElement> bc;
        for (const auto &c : x.den) {
            bc.push_back(k->from_int(c));
        }
        const auto b = MixedStandardElement::laurent(k, 0, bc);
        const long vmin = [&] {
            long m = kExact;
            for (int n = -12; n < 6; ++n) {
                if (!e.coeff(n).is_zero()) {
                    m = std::min(m, valuation(e.coeff(n)));
                }
            }
            return m;
        }();
        const int deg = static_cast<int>(x.den.size()) - 1;
        for (int n = -12 + deg; n < 6; ++n) {
            const auto c = mixed_product_coeff(e, b, n);
            const auto want = n == 0 ? k->one() : k->zero();
            EXPECT_GE(agree(c, want), std::min(20L, 20 + std::min(0L, vmin))) << "trial " << trial << " n=" << n;
        }
    }
}

TEST(MixedExpand, RepeatedFactors)
{
    const auto k = q5();
    const std::vector<std::vector<long>> dens{{-125, 75, -15, 1}, {-250, 25, 1000, -100, -15, 1}, {0, 0, -5, 0, 1}};
    for (const auto &den : dens) {
        RationalFunction x = rf({1}, den);
        const auto sh = mixed_shape(k, x);
        const auto e = mixed_expand_rational(k, x, -sh.extent(), 4);
        std::vector<LocalFieldElement> bc;
        for (long c : den) {
            bc.push_back(k->from_int(c));
        }
        const auto b = MixedStandardElement::laurent(k, 0, bc);
        for (int n = -sh.extent() + static_cast<int>(den.size()); n < 4; ++n) {
            const auto c = mixed_product_coeff(e, b, n);
            EXPECT_GE(agree(c, n == 0 ? k->one() : k->zero()), 20 - sh.l) << n;
        }
        // the tail below the window is honest: the next coefficient is within its bound
        const auto wide = mixed_expand_rational(k, x, -sh.extent() - 20, 4);
        for (int n = -sh.extent() - 20; n < -sh.extent(); ++n) {
            const auto c = wide.coeff(n);
            if (!c.is_zero()) {
                EXPECT_GE(valuation(c), e.tail().at(n)) << n;
            }
        }
    }
}

TEST(Residue, Examples)
{
    const auto k = q5();
    const auto w1 = rf({1}, {-5, 1});
    EXPECT_GE(agree(residue_at_prime(k, w1, HeightOnePrime::cluster(k, std::vector<long>{-5, 1})), k->one()), 20);
    EXPECT_GE(agree(residue_at_prime(k, w1, HeightOnePrime::special()), k->from_int(-1)), 20);

    const auto w2 = rf({0, 1}, {-5, 0, 1});
    EXPECT_GE(agree(residue_at_prime(k, w2, HeightOnePrime::cluster(k, std::vector<long>{-5, 0, 1})), k->one()), 18);
    EXPECT_GE(agree(residue_at_prime(k, w2, HeightOnePrime::special()), k->from_int(-1)), 20);

    const auto w3 = rf({1}, {1});
    EXPECT_TRUE(residue_at_prime(k, w3, HeightOnePrime::special()).is_zero());
    EXPECT_TRUE(residue_at_prime(k, w3, HeightOnePrime::cluster(k, std::vector<long>{-5, 1})).is_zero());
}

TEST(Residue, ZeroWhenIntegral)
{
    std::mt19937_64 rng(23);
    const auto k = q5();
    for (int trial = 0; trial < 40; ++trial) {
        const auto pc = random_distinguished(5, 1 + trial % 3, rng);
        RationalFunction w;
        w.num = random_poly(3, 30, rng);
        // unit constant term keeps the denominator prime to every cluster
        w.den = random_poly(2, 10, rng);
        w.den[0] = 1 + 5 * (w.den[0] % 3);
        const auto r = residue_at_prime(k, w, HeightOnePrime::cluster(k, pc));
        EXPECT_TRUE(r.is_zero()) << trial;
    }
}

TEST(Residue, ClusterAdditivity)
{
    const auto k = q5();
    for (long a : {5L, 10L, 15L}) {
        // dt/(t^2 - a^2) and t dt/(t^2 - a^2) at the cluster against the two linear factors
        for (const auto &num : {std::vector<long>{1}, std::vector<long>{0, 1}, std::vector<long>{3, -2}}) {
            const auto w = rf(num, {-a * a, 0, 1});
            const auto whole = residue_at_prime(k, w, HeightOnePrime::cluster(k, std::vector<long>{-a * a, 0, 1}));
            const auto plus = residue_at_prime(k, w, HeightOnePrime::cluster(k, std::vector<long>{-a, 1}));
            const auto minus = residue_at_prime(k, w, HeightOnePrime::cluster(k, std::vector<long>{a, 1}));
            EXPECT_GE(agree(whole, plus + minus), 15) << a;
            const auto special = residue_at_prime(k, w, HeightOnePrime::special());
            EXPECT_GE(agree(whole + special, k->zero()), 15) << a;
        }
    }
}

TEST(Support, Examples)
{
    const auto k = q5();
    const auto s1 = support(k, rf({1}, {-5, 1}));
    ASSERT_EQ(s1.size(), 2u);
    EXPECT_TRUE(s1[0].is_special());
    EXPECT_TRUE(same_prime(s1[1], HeightOnePrime::cluster(k, std::vector<long>{-5, 1})));

    const auto s2 = support(k, rf({1}, {1}));
    ASSERT_EQ(s2.size(), 1u);
    EXPECT_TRUE(s2[0].is_special());

    const auto s3 = support(k, rf({1}, {0, -5, 0, 1}));
    ASSERT_EQ(s3.size(), 3u);
    int found = 0;
    for (std::size_t i = 1; i < s3.size(); ++i) {
        found += same_prime(s3[i], HeightOnePrime::cluster(k, std::vector<long>{0, 1}));
        found += same_prime(s3[i], HeightOnePrime::cluster(k, std::vector<long>{-5, 0, 1}));
    }
    EXPECT_EQ(found, 2);
}
