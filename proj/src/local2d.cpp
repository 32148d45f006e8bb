#include "res2d/local2d.hpp"

#include <algorithm>

#include "res2d/error.hpp"

namespace res2d
{

namespace
{

constexpr long kMinusInf = -kExact;

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
long ceil_div(long a, long b) { return -floor_div(-a, b); }

long sat_add(long a, long b)
{
    if (a <= kMinusInf || b <= kMinusInf) {
        return kMinusInf;
    }
    if (a >= kExact || b >= kExact) {
        return kExact;
    }
    return a + b;
}

LocalFieldElement zero_at_vk(const FieldPtr &k, long vk)
{
    if (vk >= kExact) {
        return k->zero();
    }
    const long digits = k->coordinate_floor(vk);
    std::vector<PAdic> c(static_cast<std::size_t>(k->degree()), PAdic::zero_at(k->p(), k->precision(), digits));
    return k->element(c);
}

LocalFieldElement cap(const LocalFieldElement &a, long vk)
{
    if (vk >= kExact) {
        return a;
    }
    if (vk <= kMinusInf) {
        raise(ErrorKind::TruncationExhausted, "coefficient depends on an unbounded tail");
    }
    return cap_precision_vk(a, vk);
}

// Smallest lower bound over all exponents.
long global_lower(const MixedStandardElement &a)
{
    long m = a.head();
    if (!a.tail().known) {
        return kMinusInf;
    }
    m = std::min(m, a.tail().at(a.n_min() - 1));
    for (const auto &c : a.window()) {
        m = std::min(m, vk_lower(c));
    }
    return m;
}

void check_same_field(const FieldPtr &a, const FieldPtr &b)
{
    if (a.get() != b.get() && !a->same_as(*b)) {
        raise(ErrorKind::CarrierMismatch, "mixed elements over different coefficient fields");
    }
}

} // namespace

std::string carrier_name(Carrier c) { return c == Carrier::Cluster ? "cluster" : "mixed"; }

long TailBound::at(long n) const
{
    if (!known) {
        return kMinusInf;
    }
    if (base >= kExact) {
        return kExact;
    }
    if (n >= anchor) {
        return base;
    }
    return base + floor_div(num * (anchor - n), den);
}

long vk_lower(const LocalFieldElement &a)
{
    const long e = a.ring()->ramification();
    if (a.is_zero()) {
        const long prec = precision_of(a);
        return prec >= kExact ? kExact : e * prec;
    }
    try {
        return valuation(a);
    } catch (const Error &) {
        long m = kExact;
        for (const auto &c : a.coords()) {
            m = std::min(m, c.is_zero() ? c.precision() : c.valuation());
        }
        return e * m;
    }
}

MixedStandardElement::MixedStandardElement(FieldPtr k, int n_min, std::vector<LocalFieldElement> window, TailBound tail,
                                           long head)
    : k_(std::move(k)), n_min_(n_min), c_(std::move(window)), tail_(tail), head_(head)
{
    if (tail_.known && tail_.base < kExact && (tail_.num < 0 || tail_.den <= 0)) {
        raise(ErrorKind::InvalidInput, "tail bound must be non-decreasing towards negative exponents");
    }
}

MixedStandardElement MixedStandardElement::laurent(const FieldPtr &k, int n0, std::vector<LocalFieldElement> c)
{
    return MixedStandardElement(k, n0, std::move(c), TailBound::infinite(), kExact);
}

long MixedStandardElement::lower_bound(int n) const
{
    if (n < n_min_) {
        return tail_.at(n);
    }
    if (n >= n_max()) {
        return head_;
    }
    return vk_lower(c_[static_cast<std::size_t>(n - n_min_)]);
}

LocalFieldElement MixedStandardElement::coeff(int n) const
{
    if (n >= n_min_ && n < n_max()) {
        return c_[static_cast<std::size_t>(n - n_min_)];
    }
    const long b = lower_bound(n);
    if (b >= kExact) {
        return k_->zero();
    }
    if (b > kMinusInf && k_->coordinate_floor(b) >= k_->precision()) {
        return zero_at_vk(k_, b);
    }
    raise(ErrorKind::TruncationExhausted,
          "coefficient t^" + std::to_string(n) + " outside the window [" + std::to_string(n_min_) + ", " +
              std::to_string(n_max()) + ")");
}

MixedStandardElement MixedStandardElement::with_coeff(int n, const LocalFieldElement &c) const
{
    if (n < n_min_ || n >= n_max()) {
        raise(ErrorKind::InvalidInput, "with_coeff outside the window");
    }
    auto r = *this;
    r.c_[static_cast<std::size_t>(n - n_min_)] = c;
    return r;
}

MixedStandardElement MixedStandardElement::scaled(const LocalFieldElement &a) const
{
    auto r = *this;
    for (auto &c : r.c_) {
        c = c * a;
    }
    const long v = vk_lower(a);
    if (r.tail_.known) {
        r.tail_.base = sat_add(r.tail_.base, v);
    }
    r.head_ = sat_add(r.head_, v);
    return r;
}

MixedStandardElement MixedStandardElement::shifted(int k) const
{
    auto r = *this;
    r.n_min_ += k;
    r.tail_.anchor += k;
    return r;
}

MixedStandardElement MixedStandardElement::operator-() const
{
    auto r = *this;
    for (auto &c : r.c_) {
        c = -c;
    }
    return r;
}

MixedStandardElement operator+(const MixedStandardElement &a, const MixedStandardElement &b)
{
    check_same_field(a.field(), b.field());
    const FieldPtr &k = a.field();
    const bool a_tail_inf = a.tail().known && a.tail().base >= kExact;
    const bool b_tail_inf = b.tail().known && b.tail().base >= kExact;
    int lo = std::min(a.n_min(), b.n_min());
    if (a.n_min() > lo && !a_tail_inf) {
        lo = a.n_min();
    }
    if (b.n_min() > lo && !b_tail_inf) {
        lo = b.n_min();
    }
    int hi = std::max(a.n_max(), b.n_max());
    if (a.n_max() < hi && a.head() < kExact) {
        hi = a.n_max();
    }
    if (b.n_max() < hi && b.head() < kExact) {
        hi = b.n_max();
    }
    std::vector<LocalFieldElement> w;
    for (int n = lo; n < hi; ++n) {
        const auto x = (n >= a.n_min() && n < a.n_max()) ? a.coeff(n) : k->zero();
        const auto y = (n >= b.n_min() && n < b.n_max()) ? b.coeff(n) : k->zero();
        w.push_back(x + y);
    }

    // Head: the weaker head plus anything known above hi that was dropped.
    long head = std::min(a.head(), b.head());
    for (int n = hi; n < std::max(a.n_max(), b.n_max()); ++n) {
        head = std::min(head, std::min(a.lower_bound(n), b.lower_bound(n)));
    }

    // Tail: affine with the smaller slope, anchored at lo - 1, lying below
    // both operands' bounds.
    TailBound tail;
    if (!a.tail().known || !b.tail().known) {
        tail = TailBound::unknown();
    } else if (a_tail_inf && b_tail_inf && lo <= std::min(a.n_min(), b.n_min())) {
        tail = TailBound::infinite();
    } else {
        long num = 0;
        long den = 1;
        bool have = false;
        for (const auto *t : {&a.tail(), &b.tail()}) {
            if (t->base >= kExact) {
                continue;
            }
            if (!have || t->num * den < num * t->den) {
                num = t->num;
                den = t->den;
                have = true;
            }
        }
        const int ns = std::min(a.n_min(), b.n_min()) - 1;
        long base = kExact;
        for (int n = ns + 1; n <= lo - 1; ++n) {
            const long v = std::min(a.lower_bound(n), b.lower_bound(n));
            base = std::min(base, v < kExact ? v - floor_div(num * (lo - 1 - n), den) : kExact);
        }
        const long shift = ceil_div(num * (lo - 1 - ns), den);
        for (const auto *t : {&a.tail(), &b.tail()}) {
            const long v = t->at(ns);
            if (v < kExact) {
                base = std::min(base, v - 1 - shift);
            }
        }
        tail = TailBound{lo - 1, base, num, den, true};
    }
    return MixedStandardElement(k, lo, std::move(w), tail, head);
}

LocalFieldElement mixed_product_coeff(const MixedStandardElement &a, const MixedStandardElement &b, int n)
{
    check_same_field(a.field(), b.field());
    const FieldPtr &k = a.field();
    LocalFieldElement known = k->zero();
    long err = kExact;
    // Every k with a_k or b_(n-k) possibly nonzero and at least one side
    // outside its window lies in [kmin, kmax] or in the monotone regions
    // beyond, whose extreme terms sit next to the range.
    const int kmin = std::min(a.n_min(), n - b.n_max() + 1);
    const int kmax = std::max(a.n_max() - 1, n - b.n_min());
    for (int i = kmin; i <= kmax; ++i) {
        const bool in_a = i >= a.n_min() && i < a.n_max();
        const bool in_b = n - i >= b.n_min() && n - i < b.n_max();
        if (in_a && in_b) {
            known += a.coeff(i) * b.coeff(n - i);
        } else {
            err = std::min(err, sat_add(a.lower_bound(i), b.lower_bound(n - i)));
        }
    }
    err = std::min(err, sat_add(a.lower_bound(kmin - 1), b.lower_bound(n - kmin + 1)));
    err = std::min(err, sat_add(a.lower_bound(kmax + 1), b.lower_bound(n - kmax - 1)));
    return cap(known, err);
}

MixedStandardElement mixed_product(const MixedStandardElement &a, const MixedStandardElement &b, int lo, int hi)
{
    std::vector<LocalFieldElement> w;
    for (int n = lo; n < hi; ++n) {
        w.push_back(mixed_product_coeff(a, b, n));
    }
    const long head = sat_add(global_lower(a), global_lower(b));
    return MixedStandardElement(a.field(), lo, std::move(w), TailBound::unknown(), head);
}

LocalFieldElement res_equal_char(const ClusterSeries &f) { return trace_to_field(f.coeff(-1)); }

LocalFieldElement res_mixed_standard(const MixedStandardElement &f) { return -f.coeff(-1); }

ClusterSeries form_scale(const ClusterSeries &f, const ClusterSeries &omega)
{
    if (f.zero().ring().get() != omega.zero().ring().get()) {
        raise(ErrorKind::CarrierMismatch, "cluster forms over different algebras");
    }
    return f * omega;
}

MixedStandardElement form_scale(const MixedStandardElement &f, const MixedStandardElement &omega)
{
    check_same_field(f.field(), omega.field());
    const int lo = f.n_min() + omega.n_min();
    const int hi = std::min(f.n_max() + omega.n_min(), omega.n_max() + f.n_min());
    return mixed_product(f, omega, lo, std::max(lo, hi));
}

ClusterSeries exterior_d(const ClusterSeries &f) { return f.derivative(); }

MixedStandardElement exterior_d(const MixedStandardElement &f)
{
    std::vector<LocalFieldElement> w;
    for (int n = f.n_min(); n < f.n_max(); ++n) {
        w.push_back(f.coeff(n) * f.field()->from_int(n));
    }
    TailBound t = f.tail();
    t.anchor -= 1;
    return MixedStandardElement(f.field(), f.n_min() - 1, std::move(w), t, f.head());
}

ClusterSeries reparametrize(const ClusterSeries &f, const ClusterSeries &s)
{
    if (s.empty() || s.lower() != 0) {
        raise(ErrorKind::InvalidInput, "reparametrization needs a unit power series");
    }
    const EtaleElement zero = s.zero();
    const int len = s.truncated() ? s.n_max() : (f.truncated() ? f.n_max() - f.lower() + 2 : 16);
    const auto ident = [](const EtaleElement &x) { return x; };
    // t = u h(u) with h = 1 / s(u h): a contraction gaining one order per step.
    ClusterSeries h = ClusterSeries::monomial(s.coeff(0).inverse(), 0, len);
    for (int it = 0; it < len; ++it) {
        const ClusterSeries uh = h.shifted(1);
        h = compose(s.stored(), uh, ident).truncated_to(len).inverse(len);
    }
    const ClusterSeries g = h.shifted(1);
    const int n0 = f.empty() ? 0 : f.lower();
    const ClusterSeries ftilde = f.shifted(-n0);
    ClusterSeries body = compose(ftilde.stored(), g, ident);
    if (ftilde.truncated()) {
        body = body.truncated_to(ftilde.n_max());
    }
    ClusterSeries pre = ClusterSeries::monomial(zero.one(), 0);
    const ClusterSeries base = n0 >= 0 ? g : g.inverse(len);
    for (int i = 0; i < std::abs(n0); ++i) {
        pre = pre * base;
    }
    return pre * body * g.derivative();
}

} // namespace res2d
