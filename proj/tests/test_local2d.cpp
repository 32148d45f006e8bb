#include <gtest/gtest.h>

#include <random>

#include "res2d/local2d.hpp"

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

EtaleElement etale_int(const EtalePtr &a, long n) { return a->from_int(n); }

ClusterSeries cseries(const EtalePtr &a, int n0, const std::vector<EtaleElement> &c, int n_max = kUntruncated)
{
    return ClusterSeries(a->zero(), n0, c, n_max);
}

EtaleElement random_etale(const EtalePtr &a, std::mt19937_64 &rng, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    const auto &k = a->base();
    std::vector<LocalFieldElement> c;
    for (long i = 0; i < a->degree(); ++i) {
        std::vector<mpz_class> kc;
        for (long j = 0; j < k->degree(); ++j) {
            kc.emplace_back(dist(rng));
        }
        c.push_back(k->element(kc));
    }
    return a->element(c);
}

ClusterSeries random_cluster_series(const EtalePtr &a, std::mt19937_64 &rng, int n0, int len, int n_max)
{
    std::vector<EtaleElement> c;
    for (int i = 0; i < len; ++i) {
        c.push_back(random_etale(a, rng, 50));
    }
    return cseries(a, n0, c, n_max);
}

// Evaluates the coordinate polynomial of x at the generator of b: the map
// K[y]/(P) -> K[y]/(Q) for Q | P.
EtaleElement reduce_to(const EtaleElement &x, const EtalePtr &b)
{
    EtaleElement acc = b->zero();
    const auto &c = x.coords();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * b->generator() + b->from_base(c[i]);
    }
    return acc;
}

MixedStandardElement geometric(const FieldPtr &k, long c, int terms)
{
    // 1/(t - c) = sum_{i>=0} c^i t^(-i-1) for v(c) > 0.
    std::vector<LocalFieldElement> w(static_cast<std::size_t>(terms), k->zero());
    LocalFieldElement pw = k->one();
    for (int i = 0; i < terms; ++i) {
        w[static_cast<std::size_t>(terms - 1 - i)] = pw;
        pw = pw * k->from_int(c);
    }
    const long vc = valuation(k->from_int(c));
    return MixedStandardElement(k, -terms, w, TailBound{-terms - 1, vc * terms, vc, 1, true}, kExact);
}

} // namespace

TEST(EqualChar, ResidueIsTraceOfMinusOne)
{
    auto k = base_field(5, 20);
    auto a = etale_make(k, std::vector<long>{0, 1});
    auto w = cseries(a, -1, {etale_int(a, 3), etale_int(a, 5), etale_int(a, 1)});
    EXPECT_GE(agree(res_equal_char(w), k->from_int(3)), 20);
    auto dt = cseries(a, 0, {etale_int(a, 1)});
    EXPECT_TRUE(res_equal_char(dt).is_zero());
}

TEST(EqualChar, QuadraticTrace)
{
    // Multiplication by 1 + y on {1, y} with y^2 = 2 has matrix [[1, 2], [1, 1]].
    auto k = base_field(5, 20);
    auto a = etale_make(k, std::vector<long>{-2, 0, 1});
    auto w = cseries(a, -1, {a->one() + a->generator()});
    EXPECT_GE(agree(res_equal_char(w), k->from_int(2)), 20);
}

TEST(EqualChar, TruncationExhausted)
{
    auto k = base_field(5, 20);
    auto a = etale_make(k, std::vector<long>{0, 1});
    auto w = cseries(a, -3, {etale_int(a, 1)}, -1);
    EXPECT_THROW(res_equal_char(w), Error);
}

TEST(Mixed, SignConvention)
{
    auto k = base_field(5, 20);
    auto w = MixedStandardElement::laurent(k, -1, {k->one()});
    EXPECT_GE(agree(res_mixed_standard(w), k->from_int(-1)), 20);
    auto dt = MixedStandardElement::laurent(k, 0, {k->one()});
    EXPECT_TRUE(res_mixed_standard(dt).is_zero());
    for (auto poly : std::vector<std::vector<long>>{{0, 1}, {-2, 0, 1}, {-5, 0, 1}, {-3, 0, 0, 1}}) {
        auto a = etale_make(k, poly);
        auto pole = cseries(a, -1, {a->one()});
        const long deg = static_cast<long>(poly.size()) - 1;
        EXPECT_GE(agree(res_equal_char(pole), k->from_int(deg)), 20);
    }
}

TEST(Mixed, GeometricExpansionResidue)
{
    auto k = base_field(5, 20);
    auto g = geometric(k, 5, 30);
    EXPECT_GE(agree(res_mixed_standard(g), k->from_int(-1)), 20);
    EXPECT_GE(agree(g.coeff(-3), k->from_int(25)), 20);
    // Below the window the tail bound forces zero at precision.
    EXPECT_TRUE(g.coeff(-40).is_zero());
    EXPECT_THROW(geometric(k, 5, 5).coeff(-8), Error);
}

TEST(Mixed, ProductCapsAreHonest)
{
    // 1/((t-5)(t-25)) has t^(-k-1) coefficient (25^k - 5^k)/20.
    auto k = base_field(5, 20);
    for (int terms : {8, 15, 30}) {
        auto a = geometric(k, 5, terms);
        auto b = geometric(k, 25, terms);
        for (int n = -2; n >= -12; --n) {
            const auto c = mixed_product_coeff(a, b, n);
            const long kk = -n - 1;
            mpz_class p25, p5;
            mpz_ui_pow_ui(p25.get_mpz_t(), 25, static_cast<unsigned long>(kk));
            mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(kk));
            const mpz_class num = p25 - p5;
            EXPECT_GE(agree(c * k->from_int(20), k->from_int(num)), precision_of(c)) << "terms=" << terms << " n=" << n;
            if (terms == 30) {
                EXPECT_GE(precision_of(c), 19) << n;
            }
        }
        EXPECT_TRUE(mixed_product_coeff(a, b, -1).is_zero());
    }
}

TEST(Mixed, SumMergesWindows)
{
    auto k = base_field(5, 20);
    auto a = geometric(k, 5, 10);
    auto b = MixedStandardElement::laurent(k, 0, {k->one(), k->one()});
    auto s = a + b;
    EXPECT_EQ(s.n_min(), -10);
    EXPECT_EQ(s.n_max(), 2);
    EXPECT_GE(agree(s.coeff(1), k->one()), 20);
    EXPECT_GE(agree(s.coeff(-2), k->from_int(5)), 20);
    auto c = geometric(k, 25, 4);
    auto s2 = a + c;
    EXPECT_EQ(s2.n_min(), -4);
    for (int n = -30; n < -4; ++n) {
        EXPECT_LE(s2.lower_bound(n), std::min(a.lower_bound(n), c.lower_bound(n))) << n;
    }
}

TEST(FormScale, Examples)
{
    auto k = base_field(5, 20);
    auto a = etale_make(k, std::vector<long>{0, 1});
    auto t = cseries(a, 1, {a->one()});
    auto tinv = cseries(a, -1, {a->one()});
    auto dt = cseries(a, 0, {a->one()});
    auto r1 = form_scale(t, tinv);
    EXPECT_EQ(r1.lower(), 0);
    EXPECT_EQ(r1.upper(), 1);
    auto r2 = form_scale(tinv, dt);
    EXPECT_EQ(r2.lower(), -1);
    auto geo = cseries(a, 0, {a->one(), -a->one()}, 3).inverse();
    auto r3 = form_scale(geo, dt);
    EXPECT_EQ(r3.n_max(), 3);
    for (int n = 0; n < 3; ++n) {
        EXPECT_GE(agree(trace_to_field(r3.coeff(n)), k->one()), 20);
    }
    auto other = etale_make(k, std::vector<long>{-5, 1});
    EXPECT_THROW(form_scale(t, cseries(other, 0, {other->one()})), Error);
}

TEST(ExteriorD, Examples)
{
    auto k = base_field(7, 20);
    auto a = etale_make(k, std::vector<long>{0, 1});
    auto d1 = exterior_d(cseries(a, 2, {a->one()}));
    EXPECT_EQ(d1.lower(), 1);
    EXPECT_GE(agree(trace_to_field(d1.coeff(1)), k->from_int(2)), 20);
    auto d2 = exterior_d(cseries(a, -1, {a->one()}));
    EXPECT_EQ(d2.lower(), -2);
    EXPECT_GE(agree(trace_to_field(d2.coeff(-2)), k->from_int(-1)), 20);
}

TEST(ExteriorD, ExactFormsHaveZeroResidue)
{
    std::mt19937_64 rng(11);
    int cases = 0;
    for (auto poly : std::vector<std::vector<long>>{{0, 1}, {-5, 0, 1}, {2, 1, 1}, {-10, 0, 0, 1}}) {
        auto k = base_field(5, 20);
        auto a = etale_make(k, poly);
        for (int trial = 0; trial < 30; ++trial) {
            const int n0 = -1 - static_cast<int>(rng() % 6);
            auto f = random_cluster_series(a, rng, n0, 10, n0 + 10);
            auto r = res_equal_char(exterior_d(f));
            EXPECT_GE(agree(r, k->zero()), 20);
            ++cases;
        }
    }
    for (long p : {2, 3, 5, 7}) {
        auto k = base_field(p, 20);
        std::uniform_int_distribution<long> dist(-p * p * p, p * p * p);
        for (int trial = 0; trial < 25; ++trial) {
            const int n0 = -1 - static_cast<int>(rng() % 6);
            std::vector<LocalFieldElement> w;
            for (int i = 0; i < 12; ++i) {
                w.push_back(k->from_int(dist(rng)));
            }
            auto f = MixedStandardElement::laurent(k, n0, w);
            EXPECT_GE(agree(res_mixed_standard(exterior_d(f)), k->zero()), 20);
            auto g = geometric(k, p, 25).scaled(k->from_int(dist(rng)));
            EXPECT_GE(agree(res_mixed_standard(exterior_d(g)), k->zero()), 20);
            cases += 2;
        }
    }
    EXPECT_GE(cases, 200);
}

TEST(EqualChar, UniformizerIndependence)
{
    std::mt19937_64 rng(12);
    int cases = 0;
    for (auto poly : std::vector<std::vector<long>>{{0, 1}, {-5, 0, 1}, {6, -5, 1}}) {
        auto k = base_field(5, 20);
        auto a = etale_make(k, poly);
        for (int trial = 0; trial < 20; ++trial) {
            const int n0 = -1 - static_cast<int>(rng() % 4);
            auto f = random_cluster_series(a, rng, n0, 12, n0 + 12);
            auto s = random_cluster_series(a, rng, 0, 10, 10);
            // Force a unit constant term.
            auto c = s.stored();
            c[0] = a->one() + a->from_int(5) * c[0];
            s = cseries(a, 0, c, 10);
            auto g = reparametrize(f, s);
            EXPECT_GE(agree(res_equal_char(g), res_equal_char(f)), 20) << "trial " << trial;
            ++cases;
        }
    }
    EXPECT_GE(cases, 50);
}

TEST(EqualChar, KLinearity)
{
    auto k = field_make(5, std::vector<long>{-5, 0, 1}, 20);
    auto a = etale_make(k, std::vector<long>{-3, 1, 1});
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_cluster_series(a, rng, -3, 8, 5);
        const auto alpha = k->element({mpz_class(static_cast<long>(rng() % 50)), mpz_class(static_cast<long>(rng() % 50))});
        auto scaled = f.scaled(a->from_base(alpha));
        EXPECT_GE(agree(res_equal_char(scaled), alpha * res_equal_char(f)), 20);
    }
}

TEST(EqualChar, EtaleAdditivity)
{
    // P = (y - 1)(y^2 - 5): k_P = Q_5 x Q_5(sqrt 5).
    auto k = base_field(5, 20);
    auto a = etale_make(k, std::vector<long>{5, -5, -1, 1});
    auto a1 = etale_make(k, std::vector<long>{-1, 1});
    auto a2 = etale_make(k, std::vector<long>{-5, 0, 1});
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_cluster_series(a, rng, -2, 6, 4);
        const auto x = f.coeff(-1);
        const auto whole = res_equal_char(f);
        const auto parts = res_equal_char(cseries(a1, -1, {reduce_to(x, a1)})) +
                           res_equal_char(cseries(a2, -1, {reduce_to(x, a2)}));
        EXPECT_GE(agree(whole, parts), 20);
    }
}
