#include "res2d/adelic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <tuple>

#include "res2d/error.hpp"

namespace res2d
{

namespace
{

long coord_valuation(const LocalFieldElement &a)
{
    return a.is_zero() ? precision_of(a) : min_coordinate_valuation(a);
}

ClusterSeries tau_power(const ClusterChart &chart, int n)
{
    const auto &tau = chart.hensel().tau;
    ClusterSeries acc = ClusterSeries::monomial(chart.algebra()->one(), 0, tau.n_max());
    for (int r = 0; r < n; ++r) {
        acc = acc * tau;
    }
    return acc;
}

// Multiplier (or form coefficient) t^n P^(-i) pi^m placed at every listed prime.
struct MonomialFactory {
    const AdelicFamily &like;
    int slack;
    bool as_form;
    std::map<std::pair<std::size_t, int>, AdelicFamily> base; // (cluster index, i) -> P^(-i)
    std::map<std::pair<std::size_t, int>, ClusterSeries> taus; // (component, n) -> tau^n

    const AdelicFamily &inverse_power(std::size_t cluster, int i)
    {
        const auto key = std::make_pair(i == 0 ? 0 : cluster, i);
        auto it = base.find(key);
        if (it != base.end()) {
            return it->second;
        }
        AdelicFamily out{like.field, {}};
        const auto &k = like.field;
        for (const auto &c : like.components) {
            LocalComponent lc{c.prime, c.chart, {}, {}};
            if (c.prime.is_special()) {
                const int lo = -c.mixed.n_max() - slack, hi = -c.mixed.n_min();
                lc.mixed = i == 0 ? MixedStandardElement::laurent(k, 0, {k->one()})
                                  : mixed_expand_inverse_power(*like.components[cluster].prime.poly, i, lo, hi);
            } else {
                const auto &alg = c.chart->algebra();
                const int len = c.chart->depth() + 1;
                if (i == 0) {
                    lc.cluster = ClusterSeries::monomial(alg->one(), 0, len);
                } else if (same_prime(c.prime, like.components[cluster].prime)) {
                    lc.cluster = ClusterSeries::monomial(alg->one(), -i, len - i);
                } else {
                    const ClusterSeries pv = c.chart->lift_poly(like.components[cluster].prime.poly->coeffs);
                    ClusterSeries inv;
                    try {
                        inv = pv.inverse(len);
                    } catch (const Error &e) {
                        raise(ErrorKind::DivisionByZeroAtPrecision,
                              "distinct clusters meet at working precision: " + std::string(e.what()));
                    }
                    lc.cluster = ClusterSeries::monomial(alg->one(), 0, len);
                    for (int r = 0; r < i; ++r) {
                        lc.cluster = lc.cluster * inv;
                    }
                }
                if (as_form) {
                    lc.cluster = lc.cluster * c.chart->dtau();
                }
            }
            out.components.push_back(std::move(lc));
        }
        return base.emplace(key, std::move(out)).first->second;
    }

    const ClusterSeries &tau_n(std::size_t comp, int n)
    {
        const auto key = std::make_pair(comp, n);
        auto it = taus.find(key);
        if (it == taus.end()) {
            it = taus.emplace(key, tau_power(*like.components[comp].chart, n)).first;
        }
        return it->second;
    }

    AdelicFamily make(std::size_t cluster, int n, int i, int m)
    {
        AdelicFamily out = inverse_power(cluster, i);
        const auto pim = like.field->uniformizer_power(m);
        for (std::size_t c = 0; c < out.components.size(); ++c) {
            auto &lc = out.components[c];
            if (lc.prime.is_special()) {
                lc.mixed = lc.mixed.shifted(n).scaled(pim);
            } else {
                lc.cluster = (lc.cluster * tau_n(c, n)).scaled(lc.chart->algebra()->from_base(pim));
            }
        }
        return out;
    }
};

template <typename Pair>
Witness search(const AdelicFamily &fixed, const WitnessGrid &grid, bool fixed_is_form, Pair &&pair)
{
    if (grid.n_bar < 0 || grid.i_bar < 0 || grid.m_bar < 0) {
        raise(ErrorKind::InvalidInput, "negative witness grid bound");
    }
    fixed.validate();
    std::vector<std::size_t> clusters;
    for (std::size_t c = 0; c < fixed.components.size(); ++c) {
        if (!fixed.components[c].prime.is_special()) {
            clusters.push_back(c);
        }
    }
    struct Cand {
        int n, i, m;
        std::size_t ci;
    };
    std::vector<Cand> cands;
    for (int n = 0; n <= grid.n_bar; ++n) {
        for (int i = 0; i <= grid.i_bar; ++i) {
            for (int m = -grid.m_bar; m <= grid.m_bar; ++m) {
                if (i == 0) {
                    cands.push_back({n, i, m, 0});
                    continue;
                }
                for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
                    cands.push_back({n, i, m, ci});
                }
            }
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand &a, const Cand &b) {
        return std::make_tuple(a.n + a.i + std::abs(a.m), a.n, a.i, a.m, a.ci) <
               std::make_tuple(b.n + b.i + std::abs(b.m), b.n, b.i, b.m, b.ci);
    });
    MonomialFactory factory{fixed, grid.n_bar, !fixed_is_form, {}, {}};
    Witness w;
    w.grid = grid;
    w.value = fixed.field->zero();
    for (const auto &c : cands) {
        const std::size_t comp = clusters.empty() ? 0 : clusters[c.ci];
        const AdelicFamily mono = factory.make(comp, c.n, c.i, c.m);
        ++w.searched;
        const LocalFieldElement v = pair(mono);
        if (!v.is_zero()) {
            w.found = true;
            w.n = c.n;
            w.i = c.i;
            w.m = c.m;
            if (c.i > 0) {
                w.prime = fixed.components[comp].prime;
            }
            w.value = v;
            return w;
        }
    }
    return w;
}

} // namespace

const LocalComponent *AdelicFamily::find(const HeightOnePrime &p) const
{
    for (const auto &c : components) {
        if (same_prime(c.prime, p)) {
            return &c;
        }
    }
    return nullptr;
}

void AdelicFamily::validate() const
{
    if (!field) {
        raise(ErrorKind::InvalidInput, "adelic family without a field");
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto &c = components[i];
        if (!c.prime.is_special() && !c.chart) {
            raise(ErrorKind::CarrierMismatch, "cluster component without a chart");
        }
        if (c.prime.is_special() && c.mixed.field() && c.mixed.field() != field) {
            raise(ErrorKind::FieldMismatch, "component over a different coefficient field");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (same_prime(components[j].prime, c.prime)) {
                raise(ErrorKind::InvalidInput, "prime listed twice: " + c.prime.to_string());
            }
        }
    }
}

namespace
{

AdelicForm build_diagonal(const FieldPtr &k, const RationalForm &omega, int depth, int n_bar,
                          const std::vector<HeightOnePrime> &primes)
{
    long dmax = 1;
    for (const auto &q : primes) {
        dmax = std::max(dmax, q.degree());
    }
    AdelicForm out;
    out.field = k;
    const MixedShape sh = mixed_shape(k, omega);
    const int hi = static_cast<int>(dmax * (depth + 1) + dmax * sh.reach + 2) + n_bar + 1;
    for (const auto &q : primes) {
        LocalComponent c{q, nullptr, {}, {}};
        if (q.is_special()) {
            c.mixed = mixed_expand_rational(k, omega, -sh.extent() - n_bar, hi);
        } else {
            const int j = pole_order(k, omega, *q.poly);
            c.chart = std::make_shared<const ClusterChart>(k, *q.poly, j + depth + 3);
            c.cluster = c.chart->embed_form(omega);
        }
        out.components.push_back(std::move(c));
    }
    return out;
}

std::vector<HeightOnePrime> with_extra(const FieldPtr &k, const RationalForm &omega,
                                       const std::vector<HeightOnePrime> &extra)
{
    auto primes = support(k, omega);
    for (const auto &e : extra) {
        if (std::none_of(primes.begin(), primes.end(), [&e](const HeightOnePrime &q) { return same_prime(q, e); })) {
            primes.push_back(e);
        }
    }
    return primes;
}

} // namespace

AdelicForm diagonal_form(const FieldPtr &k, const RationalForm &omega, int depth, int n_bar,
                         const std::vector<HeightOnePrime> &extra, bool guard)
{
    if (depth < 0 || n_bar < 0) {
        raise(ErrorKind::InvalidInput, "negative depth or multiplier degree");
    }
    omega.validate();
    AdelicForm out = build_diagonal(k, omega, depth, n_bar, with_extra(k, omega, extra));
    long loss = 0;
    for (const auto &c : out.components) {
        if (c.chart) {
            loss = std::max(loss, c.chart->hensel().loss);
        }
    }
    if (!guard || loss <= 2) {
        return out;
    }
    // omega is exact: rebuild over a finer copy of K, clusters included.
    const FieldPtr fine = field_with_precision(k, k->precision() + 2 * loss + 4);
    std::vector<HeightOnePrime> lifted;
    for (const auto &e : extra) {
        if (e.is_special()) {
            continue;
        }
        const auto q = lift_cluster(*e.poly, fine, omega.den);
        if (!q) {
            return out;
        }
        lifted.push_back(HeightOnePrime::cluster(*q));
    }
    return build_diagonal(fine, omega, depth, n_bar, with_extra(fine, omega, lifted));
}

namespace
{

AdelicFamily embed_like(const RationalFunction &x, const AdelicFamily &like, int slack, bool as_form)
{
    like.validate();
    AdelicFamily out{like.field, {}};
    for (const auto &c : like.components) {
        LocalComponent lc{c.prime, c.chart, {}, {}};
        if (c.prime.is_special()) {
            lc.mixed = mixed_expand_rational(like.field, x, -c.mixed.n_max() - slack, -c.mixed.n_min());
        } else {
            lc.cluster = as_form ? c.chart->embed_form(x) : c.chart->embed(x);
        }
        out.components.push_back(std::move(lc));
    }
    return out;
}

} // namespace

AdeleElement embed_element_like(const RationalFunction &x, const AdelicFamily &like, int slack)
{
    AdeleElement e;
    static_cast<AdelicFamily &>(e) = embed_like(x, like, slack, false);
    return e;
}

AdelicForm embed_form_like(const RationalForm &omega, const AdelicFamily &like, int slack)
{
    AdelicForm f;
    static_cast<AdelicFamily &>(f) = embed_like(omega, like, slack, true);
    return f;
}

LocalFieldElement local_pairing(const LocalComponent &f, const LocalComponent &omega)
{
    if (!same_prime(f.prime, omega.prime)) {
        raise(ErrorKind::CarrierMismatch, "pairing components at different primes");
    }
    if (f.prime.is_special()) {
        return -mixed_product_coeff(f.mixed, omega.mixed, -1);
    }
    if (f.chart != omega.chart && f.chart->algebra() != omega.chart->algebra()) {
        raise(ErrorKind::CarrierMismatch, "cluster components built on different charts");
    }
    return res_equal_char(form_scale(f.cluster, omega.cluster));
}

LocalFieldElement pairing(const AdeleElement &f, const AdelicForm &omega)
{
    f.validate();
    omega.validate();
    if (f.field != omega.field) {
        raise(ErrorKind::FieldMismatch, "adele and form over different fields");
    }
    LocalFieldElement acc = omega.field->zero();
    for (const auto &w : omega.components) {
        if (const auto *fc = f.find(w.prime)) {
            acc += local_pairing(*fc, w);
        }
    }
    return acc;
}

LocalFieldElement pairing(const RationalFunction &f, const AdelicForm &omega)
{
    for (const auto &q : support(omega.field, f)) {
        if (!q.is_special() && !omega.find(q)) {
            raise(ErrorKind::InvalidInput, "multiplier has a pole at an unlisted prime " + q.to_string());
        }
    }
    return pairing(embed_element_like(f, omega), omega);
}

ReciprocityReport summarize_residues(const FieldPtr &k, std::vector<PrimeResidue> residues)
{
    ReciprocityReport r;
    r.total = k->zero();
    long scale = 0;
    for (const auto &pr : residues) {
        r.total += pr.residue;
        if (!pr.residue.is_zero()) {
            scale = std::min(scale, min_coordinate_valuation(pr.residue));
        }
    }
    r.residues = std::move(residues);
    const long prec = precision_of(r.total);
    r.loss = prec >= kExact ? 0 : std::max(0L, k->precision() - (prec - scale));
    r.zero = r.total.is_zero();
    r.defect_valuation = coord_valuation(r.total);
    return r;
}

ReciprocityReport reciprocity_check(const FieldPtr &k, const RationalForm &omega)
{
    std::vector<PrimeResidue> res;
    for (const auto &q : support(k, omega)) {
        const auto v = residue_at_prime(k, omega, q);
        res.push_back({q, v, relative_loss(v)});
    }
    return summarize_residues(k, std::move(res));
}

EtaleElement tau_power_coeff(const HenselExpansion &h, int n, int k)
{
    const auto &alg = h.algebra;
    if (n < 0 || k < 0) {
        raise(ErrorKind::InvalidInput, "negative exponent in tau power");
    }
    if (k > h.depth) {
        raise(ErrorKind::TruncationExhausted, "Hensel depth below the requested coefficient");
    }
    if (n == 0) {
        return k == 0 ? alg->one() : alg->zero();
    }
    std::vector<EtaleElement> c0pow{alg->one()};
    for (int r = 1; r <= n; ++r) {
        c0pow.push_back(c0pow.back() * h.coeff(0));
    }
    // Partitions of k into parts 1..k with multiplicities m_j; the term is
    // n! / ((n - s)! prod m_j!) c_0^(n - s) prod c_j^(m_j), s = sum m_j.
    EtaleElement acc = alg->zero();
    std::vector<int> mult(static_cast<std::size_t>(k + 1), 0);
    std::function<void(int, int, int)> rec = [&](int part, int left, int s) {
        if (left == 0) {
            if (s > n) {
                return;
            }
            mpz_class coef;
            mpz_fac_ui(coef.get_mpz_t(), static_cast<unsigned long>(n));
            mpz_class den;
            mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(n - s));
            EtaleElement term = c0pow[static_cast<std::size_t>(n - s)];
            for (int j = 1; j <= k; ++j) {
                mpz_class f;
                mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(mult[static_cast<std::size_t>(j)]));
                den *= f;
                for (int r = 0; r < mult[static_cast<std::size_t>(j)]; ++r) {
                    term = term * h.coeff(j);
                }
            }
            coef /= den;
            acc += term * alg->from_base(alg->base()->from_int(coef));
            return;
        }
        if (part > left || s > n) {
            return;
        }
        for (int m = 0; m * part <= left; ++m) {
            mult[static_cast<std::size_t>(part)] = m;
            rec(part + 1, left - m * part, s + m);
        }
        mult[static_cast<std::size_t>(part)] = 0;
    };
    rec(1, k, 0);
    return acc;
}

ResidueFormula residue_formula_at_depth(const ClusterChart &chart, const ClusterSeries &omega_p, int n, int i)
{
    if (!omega_p.empty() && omega_p.lower() < 0) {
        raise(ErrorKind::InvalidInput, "residue formula needs an integral cluster form");
    }
    if (n < 0 || i < 0) {
        raise(ErrorKind::InvalidInput, "negative multiplier exponent");
    }
    const auto &alg = chart.algebra();
    const ClusterSeries mult = tau_power(chart, n).shifted(-i - 1);
    ResidueFormula r;
    r.direct = res_equal_char(form_scale(mult, omega_p));
    EtaleElement acc = alg->zero();
    for (int q = 0; q <= i; ++q) {
        acc += tau_power_coeff(chart.hensel(), n, i - q) * omega_p.coeff(q);
    }
    r.closed = trace_to_field(acc);
    const long n_work = chart.field()->precision();
    r.loss = std::max(0L, n_work - std::min(precision_of(r.direct), precision_of(r.closed)));
    return r;
}

std::vector<EtaleElement> reconstruct_at_prime(const MixedStandardElement &omega_p0, const ClusterChart &chart,
                                               int depth)
{
    if (depth < 0) {
        raise(ErrorKind::InvalidInput, "negative reconstruction depth");
    }
    if (depth > chart.depth()) {
        raise(ErrorKind::TruncationExhausted, "chart depth below the reconstruction depth");
    }
    const auto &alg = chart.algebra();
    const auto &p = chart.prime();
    const int l = static_cast<int>(p.degree());
    const auto y = alg->generator();
    std::vector<EtaleElement> ypow{alg->one()};
    for (int r = 1; r < 2 * l; ++r) {
        ypow.push_back(ypow.back() * y);
    }
    Matrix<LocalFieldElement> gram(static_cast<std::size_t>(l));
    for (int a = 0; a < l; ++a) {
        for (int b = 0; b < l; ++b) {
            gram[static_cast<std::size_t>(a)].push_back(trace_to_field(ypow[static_cast<std::size_t>(a + b)]));
        }
    }
    std::vector<EtaleElement> out;
    for (int i = 0; i <= depth; ++i) {
        const auto inv = mixed_expand_inverse_power(p, i + 1, -omega_p0.n_max() - l, -omega_p0.n_min());
        std::vector<LocalFieldElement> rhs;
        for (int n = 0; n < l; ++n) {
            LocalFieldElement v = mixed_product_coeff(inv.shifted(n), omega_p0, -1);
            for (int r = 0; r < i; ++r) {
                v -= trace_to_field(tau_power_coeff(chart.hensel(), n, i - r) * out[static_cast<std::size_t>(r)]);
            }
            rhs.push_back(v);
        }
        out.push_back(alg->element(solve(gram, rhs)));
    }
    return out;
}

std::vector<LocalFieldElement> p0_tail_from_t(const ClusterChart &chart_t, const ClusterSeries &omega_t, int count)
{
    const auto &p = chart_t.prime();
    if (p.degree() != 1 || !p.exact || (*p.exact)[0] != 0) {
        raise(ErrorKind::InvalidInput, "tail identity needs the cluster (t)");
    }
    std::vector<LocalFieldElement> out;
    for (int i = 1; i <= count; ++i) {
        out.push_back(res_equal_char(form_scale(tau_power(chart_t, i - 1), omega_t)));
    }
    return out;
}

Witness annihilator_witness(const AdelicForm &omega, const WitnessGrid &grid)
{
    return search(omega, grid, true, [&omega](const AdelicFamily &mono) {
        AdeleElement f;
        static_cast<AdelicFamily &>(f) = mono;
        return pairing(f, omega);
    });
}

Witness annihilator_witness(const AdeleElement &f, const WitnessGrid &grid)
{
    return search(f, grid, false, [&f](const AdelicFamily &mono) {
        AdelicForm w;
        static_cast<AdelicFamily &>(w) = mono;
        return pairing(f, w);
    });
}

RationalForm random_rational_form(const FieldPtr &k, std::uint64_t seed, int degree_bound, long pi_lo, long pi_hi)
{
    if (degree_bound < 1 || pi_hi < pi_lo) {
        raise(ErrorKind::InvalidInput, "bad corpus parameters");
    }
    std::mt19937_64 rng(seed);
    const auto draw = [&rng](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const long bound = k->p() * k->p() * k->p();
    const auto poly = [&](int deg) {
        std::vector<mpz_class> c;
        for (int i = 0; i <= deg; ++i) {
            c.emplace_back(draw(-bound, bound));
        }
        while (c.back() == 0) {
            c.back() = draw(-bound, bound);
        }
        return c;
    };
    for (;;) {
        RationalForm w;
        w.num = poly(static_cast<int>(draw(0, degree_bound)));
        w.den = poly(static_cast<int>(draw(0, degree_bound)));
        w.pi_exp = draw(pi_lo, pi_hi);
        try {
            (void)squarefree_split(k, w.den);
            return w;
        } catch (const Error &) {
            continue;
        }
    }
}

} // namespace res2d
