#include "res2d/completion.hpp"

#include <algorithm>

#include "res2d/error.hpp"

namespace res2d
{

namespace
{

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

KPoly kderivative(const KPoly &a)
{
    KPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) {
        r.push_back(a[i] * a[i].make(static_cast<long>(i)));
    }
    if (r.empty()) {
        r.push_back(a.front().zero());
    }
    return r;
}

ClusterSeries lift_into(const EtalePtr &alg, const KPoly &a, const ClusterSeries &x)
{
    return compose(a, x, [&alg](const LocalFieldElement &c) { return alg->from_base(c); });
}

long agree_elements(const LocalFieldElement &a, const LocalFieldElement &b)
{
    long m = kExact;
    const auto d = a - b;
    for (const auto &c : d.coords()) {
        m = std::min(m, c.is_zero() ? c.precision() : c.valuation());
    }
    return m;
}

std::string poly_string(const std::vector<mpz_class> &c)
{
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += (i ? ", " : "") + c[i].get_str();
    }
    return s + "]";
}

QPoly exact_qpoly(const DistinguishedPolynomial &p) { return qpoly::from_ints(*p.exact); }

} // namespace

HeightOnePrime HeightOnePrime::cluster(const FieldPtr &k, const std::vector<mpz_class> &p)
{
    auto d = distinguished_from_ints(k, p);
    if (d.degree() < 1) {
        raise(ErrorKind::InvalidInput, "cluster polynomial must have positive degree");
    }
    const QPoly q = qpoly::from_ints(p);
    if (qpoly::degree(qpoly::gcd(q, qpoly::derivative(q))) > 0) {
        raise(ErrorKind::NotSquarefree, "cluster polynomial " + poly_string(p) + " is not squarefree");
    }
    return cluster(std::move(d));
}

HeightOnePrime HeightOnePrime::cluster(const FieldPtr &k, const std::vector<long> &p)
{
    return cluster(k, std::vector<mpz_class>(p.begin(), p.end()));
}

HeightOnePrime HeightOnePrime::cluster(DistinguishedPolynomial p)
{
    HeightOnePrime h;
    h.kind = Kind::Cluster;
    h.poly = std::move(p);
    return h;
}

std::string HeightOnePrime::to_string() const
{
    if (is_special()) {
        return "(pi)";
    }
    if (poly->exact) {
        return "(" + poly_string(*poly->exact) + ")";
    }
    return "(" + poly->to_string() + ")";
}

bool same_prime(const HeightOnePrime &a, const HeightOnePrime &b)
{
    if (a.kind != b.kind) {
        return false;
    }
    if (a.is_special()) {
        return true;
    }
    if (a.poly->exact && b.poly->exact) {
        return *a.poly->exact == *b.poly->exact;
    }
    if (a.degree() != b.degree()) {
        return false;
    }
    const long n = a.poly->field()->precision();
    for (std::size_t i = 0; i < a.poly->coeffs.size(); ++i) {
        if (agree_elements(a.poly->coeffs[i], b.poly->coeffs[i]) < n - 2) {
            return false;
        }
    }
    return true;
}

void RationalFunction::validate() const
{
    if (qpoly::from_ints(den).empty()) {
        raise(ErrorKind::InvalidInput, "denominator is the zero polynomial");
    }
}

std::string RationalFunction::to_string() const
{
    return poly_string(num) + "/" + poly_string(den) + " * pi^" + std::to_string(pi_exp);
}

RationalFunction rational_from_ints(const std::vector<long> &num, const std::vector<long> &den, long pi_exp)
{
    RationalFunction r;
    r.num.assign(num.begin(), num.end());
    r.den.assign(den.begin(), den.end());
    r.pi_exp = pi_exp;
    r.validate();
    return r;
}

RationalFunction operator*(const RationalFunction &a, const RationalFunction &b)
{
    RationalFunction r;
    r.num = qpoly::to_ints(qpoly::mul(qpoly::from_ints(a.num), qpoly::from_ints(b.num)));
    r.den = qpoly::to_ints(qpoly::mul(qpoly::from_ints(a.den), qpoly::from_ints(b.den)));
    r.pi_exp = a.pi_exp + b.pi_exp;
    return r;
}

RationalFunction operator+(const RationalFunction &a, const RationalFunction &b)
{
    if (a.pi_exp != b.pi_exp) {
        raise(ErrorKind::InvalidInput, "sum of rational functions with different pi exponents");
    }
    const QPoly an = qpoly::from_ints(a.num), ad = qpoly::from_ints(a.den);
    const QPoly bn = qpoly::from_ints(b.num), bd = qpoly::from_ints(b.den);
    RationalFunction r;
    r.num = qpoly::to_ints(qpoly::add(qpoly::mul(an, bd), qpoly::mul(bn, ad)));
    r.den = qpoly::to_ints(qpoly::mul(ad, bd));
    r.pi_exp = a.pi_exp;
    return r;
}

long relative_loss(const LocalFieldElement &a)
{
    const long n = a.ring()->precision();
    const long prec = precision_of(a);
    if (prec >= kExact) {
        return 0;
    }
    long v = kExact;
    for (const auto &c : a.coords()) {
        if (!c.is_zero()) {
            v = std::min(v, c.valuation());
        }
    }
    if (v >= kExact) {
        return std::max(0L, n - prec);
    }
    return std::max(0L, n - (prec - v));
}

long relative_loss(const EtaleElement &a)
{
    long m = 0;
    for (const auto &c : a.coords()) {
        m = std::max(m, relative_loss(c));
    }
    return m;
}

HenselExpansion hensel_t_expansion(const FieldPtr &k, const DistinguishedPolynomial &p, int depth)
{
    if (depth < 0) {
        raise(ErrorKind::InvalidInput, "negative Hensel depth");
    }
    p.validate();
    const EtalePtr alg = etale_make(k, p.coeffs);
    const int len = depth + 1;
    const KPoly dp = kderivative(p.coeffs);
    EtaleElement dinv;
    try {
        dinv = lift_into(alg, dp, ClusterSeries::monomial(alg->generator(), 0, 1)).coeff(0).inverse();
    } catch (const Error &e) {
        raise(ErrorKind::NotSquarefree, std::string("P'(c0) is not invertible: ") + e.what());
    }
    // P'(c0) c_k = [k == 1] - [t_P^k] P(c_0 + ... + c_(k-1) t_P^(k-1)).
    std::vector<EtaleElement> c{alg->generator()};
    for (int kk = 1; kk < len; ++kk) {
        const ClusterSeries partial(alg->zero(), 0, c, kk + 1);
        const EtaleElement sk = lift_into(alg, p.coeffs, partial).coeff(kk);
        c.push_back(((kk == 1 ? alg->one() : alg->zero()) - sk) * dinv);
    }
    const ClusterSeries tau(alg->zero(), 0, c, len);
    const ClusterSeries tp = ClusterSeries::monomial(alg->one(), 1, len);
    HenselExpansion h{alg, tau.truncated_to(len), depth, 0};
    // Digits of the congruence P(tau) = t_P that survive the divisions by P'(c0).
    const ClusterSeries residual = lift_into(alg, p.coeffs, h.tau) - tp;
    const long n = k->precision();
    for (int i = 0; i <= depth; ++i) {
        h.loss = std::max({h.loss, relative_loss(h.coeff(i)), n - std::min(n, precision_of(residual.coeff(i)))});
    }
    return h;
}

PoleData pole_data(const FieldPtr &k, const std::vector<mpz_class> &den, const DistinguishedPolynomial &p)
{
    const QPoly b = qpoly::from_ints(den);
    if (b.empty()) {
        raise(ErrorKind::InvalidInput, "zero denominator");
    }
    PoleData out;
    if (p.exact) {
        const QPoly pq = exact_qpoly(p);
        const auto yun = qpoly::squarefree_factors(b);
        QPoly g_tot{1};
        for (std::size_t i = 0; i < yun.size(); ++i) {
            const QPoly g = qpoly::gcd(pq, yun[i]);
            if (qpoly::degree(g) >= 1) {
                g_tot = qpoly::mul(g_tot, qpoly::pow(g, static_cast<unsigned>(i + 1)));
                out.order = static_cast<int>(i + 1);
            }
        }
        out.q = kpoly::from_q(k, qpoly::divmod(qpoly::pow(pq, static_cast<unsigned>(out.order)), g_tot).first);
        out.w = kpoly::from_q(k, qpoly::divmod(b, g_tot).first);
        return out;
    }
    const auto split = squarefree_split(k, den);
    const HeightOnePrime target = HeightOnePrime::cluster(p);
    for (const auto &f : split.factors) {
        if (!same_prime(HeightOnePrime::cluster(f.prime), target)) {
            continue;
        }
        out.order = f.multiplicity;
        out.q = {k->one()};
        KPoly w{k->from_int(split.content)};
        for (int r = 0; r < f.multiplicity; ++r) {
            w = kpoly::mul(w, f.cofactor);
        }
        for (std::size_t i = 0; i < split.yun.size(); ++i) {
            if (static_cast<int>(i + 1) == f.multiplicity) {
                continue;
            }
            const KPoly s = kpoly::from_q(k, split.yun[i]);
            for (std::size_t r = 0; r <= i; ++r) {
                w = kpoly::mul(w, s);
            }
        }
        out.w = std::move(w);
        return out;
    }
    out.q = {k->one()};
    out.w = kpoly::from_q(k, b);
    return out;
}

ClusterChart::ClusterChart(const FieldPtr &k, const DistinguishedPolynomial &p, int depth)
    : k_(k), p_(p), h_(hensel_t_expansion(k, p, depth)), dtau_(h_.tau.derivative())
{
}

ClusterSeries ClusterChart::lift_poly(const KPoly &a) const { return lift_into(h_.algebra, a, h_.tau); }

ClusterSeries ClusterChart::embed(const RationalFunction &x) const
{
    x.validate();
    const PoleData pd = pole_data(k_, x.den, p_);
    const int len = depth() + 1;
    ClusterSeries w = lift_poly(pd.w);
    ClusterSeries winv;
    try {
        winv = w.inverse(len);
    } catch (const Error &e) {
        raise(ErrorKind::DivisionByZeroAtPrecision, std::string("denominator cofactor not invertible at the cluster: ") +
                                                        e.what());
    }
    const ClusterSeries num = lift_poly(kpoly::from_ints(k_, x.num.empty() ? std::vector<mpz_class>{0} : x.num));
    ClusterSeries body = num * lift_poly(pd.q) * winv;
    body = body.truncated_to(len);
    const auto pre = h_.algebra->from_base(k_->uniformizer_power(x.pi_exp));
    return body.scaled(pre).shifted(-pd.order);
}

ClusterSeries ClusterChart::embed_form(const RationalForm &omega) const { return embed(omega) * dtau_; }

int pole_order(const FieldPtr &k, const RationalForm &omega, const DistinguishedPolynomial &p)
{
    return pole_data(k, omega.den, p).order;
}

MixedShape mixed_shape(const FieldPtr &k, const RationalFunction &x)
{
    x.validate();
    const auto split = squarefree_split(k, x.den);
    MixedShape sh;
    for (const auto &f : split.factors) {
        sh.l += f.multiplicity * f.prime.degree();
        sh.dmax = std::max(sh.dmax, f.prime.degree());
    }
    long a_low = kExact;
    for (const auto &c : kpoly::from_ints(k, x.num.empty() ? std::vector<mpz_class>{0} : x.num)) {
        a_low = std::min(a_low, vk_lower(c));
    }
    sh.zero = a_low >= kExact;
    sh.scale = sh.zero ? 0 : x.pi_exp - split.pi_power + a_low;
    sh.reach = k->ramification() * (k->precision() + 1) - k->dual_offset();
    return sh;
}

int MixedShape::extent() const { return static_cast<int>(l + dmax * (reach + std::max(0L, -scale)) + 2); }

namespace
{

// pi^s_pi * a / (unit * d_all) on [n_min, n_max); dm is the largest degree of a
// distinguished factor of d_all and scale bounds v_K of every coefficient.
MixedStandardElement mixed_expand_core(const FieldPtr &k, const KPoly &a, const KPoly &unit, long s_pi,
                                       const KPoly &d_all, long dm, long scale, long reach, int n_min, int n_max)
{
    const int l = static_cast<int>(d_all.size()) - 1;
    const int t_len = std::max(1, static_cast<int>(dm * reach + n_max + l + 1));
    const int s_len = static_cast<int>(dm * reach + 1 + std::max(0, -n_min - l));

    // A = pi^s * a / U, a power series in t.
    const KSeries uinv = KSeries::polynomial(unit, k->zero()).inverse(t_len);
    const KSeries as = (KSeries::polynomial(a, k->zero()) * uinv).truncated_to(t_len).scaled(k->uniformizer_power(s_pi));
    std::vector<LocalFieldElement> aw;
    for (int n = 0; n < t_len; ++n) {
        aw.push_back(as.coeff(n));
    }
    const MixedStandardElement am(k, 0, std::move(aw), TailBound::infinite(), scale);

    if (l == 0) {
        std::vector<LocalFieldElement> w;
        for (int n = n_min; n < n_max; ++n) {
            w.push_back(am.coeff(n));
        }
        return MixedStandardElement(k, n_min, std::move(w), TailBound::infinite(), scale);
    }

    // B = 1/D = sum_k E_k t^(-l-k) with E = 1/D~(s), D~ the reversed polynomial;
    // v_K(E_k) >= ceil(k / dm).
    KPoly rev(d_all.rbegin(), d_all.rend());
    const KSeries e = KSeries::polynomial(rev, k->zero()).inverse(s_len);
    std::vector<LocalFieldElement> bw;
    for (int idx = 0; idx < s_len; ++idx) {
        bw.push_back(e.coeff(s_len - 1 - idx));
    }
    const TailBound btail{-l - s_len, ceil_div(s_len, dm), 1, dm, true};
    const MixedStandardElement bm(k, -l - s_len + 1, std::move(bw), btail, kExact);

    auto prod = mixed_product(am, bm, n_min, n_max);
    const TailBound tail{n_min - 1, scale + ceil_div(-(n_min - 1) - l, dm), 1, dm, true};
    return MixedStandardElement(k, n_min, prod.window(), tail, scale);
}

} // namespace

MixedStandardElement mixed_expand_rational(const FieldPtr &k, const RationalFunction &x, int n_min, int n_max)
{
    x.validate();
    if (n_max <= n_min) {
        raise(ErrorKind::InvalidInput, "empty expansion window");
    }
    const MixedShape sh = mixed_shape(k, x);
    if (sh.zero) {
        return MixedStandardElement::laurent(k, n_min, std::vector<LocalFieldElement>(
                                                           static_cast<std::size_t>(n_max - n_min), k->zero()));
    }
    const auto split = squarefree_split(k, x.den);
    KPoly d_all{k->one()};
    for (const auto &f : split.factors) {
        for (int r = 0; r < f.multiplicity; ++r) {
            d_all = kpoly::mul(d_all, f.prime.coeffs);
        }
    }
    return mixed_expand_core(k, kpoly::from_ints(k, x.num), split.unit, x.pi_exp - split.pi_power, d_all, sh.dmax,
                             sh.scale, sh.reach, n_min, n_max);
}

MixedStandardElement mixed_expand_inverse_power(const DistinguishedPolynomial &p, int power, int n_min, int n_max)
{
    if (power < 0 || n_max <= n_min) {
        raise(ErrorKind::InvalidInput, "bad inverse power or window");
    }
    const FieldPtr &k = p.field();
    KPoly d_all{k->one()};
    for (int r = 0; r < power; ++r) {
        d_all = kpoly::mul(d_all, p.coeffs);
    }
    const long reach = k->ramification() * (k->precision() + 1) - k->dual_offset();
    return mixed_expand_core(k, {k->one()}, {k->one()}, 0, d_all, std::max(1L, p.degree()), 0, reach, n_min, n_max);
}

namespace
{

LocalFieldElement cluster_residue(const FieldPtr &k, const RationalForm &omega, const DistinguishedPolynomial &p)
{
    const int order = pole_order(k, omega, p);
    if (order == 0) {
        return k->zero();
    }
    const ClusterChart chart(k, p, order + 2);
    return res_equal_char(chart.embed_form(omega));
}

// Digits lost against working precision, measured from the leading coordinate.
long residue_loss(const LocalFieldElement &r)
{
    const long prec = precision_of(r);
    if (prec >= kExact) {
        return 0;
    }
    const long scale = r.is_zero() ? 0 : std::min(0L, min_coordinate_valuation(r));
    return std::max(0L, r.ring()->precision() - (prec - scale));
}

} // namespace

std::optional<DistinguishedPolynomial> lift_cluster(const DistinguishedPolynomial &p, const FieldPtr &fine,
                                                    const std::vector<mpz_class> &den)
{
    if (p.exact) {
        return distinguished_from_ints(fine, *p.exact);
    }
    const auto &k = p.field();
    for (const auto &f : squarefree_split(fine, den).factors) {
        KPoly back;
        for (const auto &c : f.prime.coeffs) {
            back.push_back(rebase(c, k));
        }
        DistinguishedPolynomial coarse{back, std::nullopt};
        if (same_prime(HeightOnePrime::cluster(coarse), HeightOnePrime::cluster(p))) {
            return f.prime;
        }
    }
    return std::nullopt;
}

LocalFieldElement residue_at_prime(const FieldPtr &k, const RationalForm &omega, const HeightOnePrime &p)
{
    omega.validate();
    if (p.is_special()) {
        return res_mixed_standard(mixed_expand_rational(k, omega, -1, 0));
    }
    const LocalFieldElement r = cluster_residue(k, omega, *p.poly);
    const long loss = residue_loss(r);
    if (loss <= 2) {
        return r;
    }
    // The form is exact, so the residue can be recomputed with guard digits.
    const FieldPtr fine = field_with_precision(k, k->precision() + 2 * loss + 4);
    const auto q = lift_cluster(*p.poly, fine, omega.den);
    if (!q) {
        return r;
    }
    return rebase(cluster_residue(fine, omega, *q), k);
}

std::vector<HeightOnePrime> support(const FieldPtr &k, const RationalForm &omega)
{
    omega.validate();
    std::vector<HeightOnePrime> out{HeightOnePrime::special()};
    for (const auto &f : squarefree_split(k, omega.den).factors) {
        out.push_back(HeightOnePrime::cluster(f.prime));
    }
    return out;
}

} // namespace res2d
