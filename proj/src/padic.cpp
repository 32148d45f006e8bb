#include "res2d/padic.hpp"

#include <algorithm>
#include <vector>

#include "res2d/error.hpp"

namespace res2d
{

bool is_prime(long p)
{
    if (p < 2) {
        return false;
    }
    for (long d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

const mpz_class &prime_power(long p, long k)
{
    struct Row {
        long p;
        std::vector<mpz_class> pw;
    };
    thread_local std::vector<Row> cache;
    auto it = std::find_if(cache.begin(), cache.end(), [p](const Row &r) { return r.p == p; });
    if (it == cache.end()) {
        cache.push_back(Row{p, {mpz_class(1)}});
        it = cache.end() - 1;
    }
    auto &pw = it->pw;
    while (static_cast<long>(pw.size()) <= k) {
        pw.push_back(pw.back() * p);
    }
    return pw[static_cast<std::size_t>(k)];
}

long valuation_of(const mpz_class &n, long p)
{
    if (n == 0) {
        return kExact;
    }
    mpz_class tmp;
    mpz_class pp(p);
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

PAdic PAdic::normalized(long p, long cap, mpz_class x, long val, long prec)
{
    PAdic r;
    r.p_ = p;
    r.cap_ = cap;
    r.prec_ = prec;
    if (x != 0) {
        mpz_class pp(p);
        val += static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
    }
    if (prec != kExact) {
        if (x == 0 || val >= prec) {
            r.unit_ = 0;
            r.val_ = prec;
            return r;
        }
        const mpz_class &m = prime_power(p, prec - val);
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    } else if (x == 0) {
        r.unit_ = 0;
        r.val_ = kExact;
        return r;
    }
    r.unit_ = std::move(x);
    r.val_ = val;
    return r;
}

PAdic PAdic::exact(long p, long cap, const mpz_class &n, long val)
{
    return normalized(p, cap, n, val, kExact);
}

PAdic PAdic::exact_zero(long p, long cap) { return normalized(p, cap, 0, 0, kExact); }

PAdic PAdic::approx(long p, long cap, const mpz_class &n, long val, long prec)
{
    return normalized(p, cap, n, val, prec);
}

PAdic PAdic::zero_at(long p, long cap, long prec) { return normalized(p, cap, 0, prec, prec); }

PAdic PAdic::operator-() const
{
    if (is_zero()) {
        return *this;
    }
    return normalized(p_, cap_, -unit_, val_, prec_);
}

PAdic operator+(const PAdic &a, const PAdic &b)
{
    const long prec = std::min(a.prec_, b.prec_);
    const bool use_a = !a.is_zero() && a.val_ < prec;
    const bool use_b = !b.is_zero() && b.val_ < prec;
    if (!use_a && !use_b) {
        return PAdic::normalized(a.p_, a.cap_, 0, prec, prec);
    }
    if (!use_b) {
        return PAdic::normalized(a.p_, a.cap_, a.unit_, a.val_, prec);
    }
    if (!use_a) {
        return PAdic::normalized(a.p_, a.cap_, b.unit_, b.val_, prec);
    }
    const long m = std::min(a.val_, b.val_);
    mpz_class x = a.unit_ * prime_power(a.p_, a.val_ - m) + b.unit_ * prime_power(a.p_, b.val_ - m);
    return PAdic::normalized(a.p_, a.cap_, std::move(x), m, prec);
}

PAdic operator*(const PAdic &a, const PAdic &b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) {
        return PAdic::exact_zero(a.p_, a.cap_);
    }
    long prec = kExact;
    if (!a.is_exact()) {
        prec = std::min(prec, a.prec_ + b.val_);
    }
    if (!b.is_exact()) {
        prec = std::min(prec, b.prec_ + a.val_);
    }
    if (a.is_zero() || b.is_zero()) {
        return PAdic::normalized(a.p_, a.cap_, 0, prec, prec);
    }
    return PAdic::normalized(a.p_, a.cap_, a.unit_ * b.unit_, a.val_ + b.val_, prec);
}

PAdic PAdic::inverse() const
{
    if (is_exact_zero()) {
        raise(ErrorKind::DivisionByZero, "inverse of exact zero");
    }
    if (is_zero()) {
        raise(ErrorKind::DivisionByZeroAtPrecision,
              "inverse of a value indistinguishable from zero modulo p^" + std::to_string(prec_));
    }
    if (is_exact() && (unit_ == 1 || unit_ == -1)) {
        return normalized(p_, cap_, unit_, -val_, kExact);
    }
    const long rel = is_exact() ? cap_ : prec_ - val_;
    const mpz_class &m = prime_power(p_, rel);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t());
    return normalized(p_, cap_, std::move(inv), -val_, rel - val_);
}

PAdic PAdic::shifted(long k) const
{
    if (is_exact_zero()) {
        return *this;
    }
    const long prec = is_exact() ? kExact : prec_ + k;
    if (is_zero()) {
        return normalized(p_, cap_, 0, prec, prec);
    }
    return normalized(p_, cap_, unit_, val_ + k, prec);
}

PAdic PAdic::truncated(long prec) const
{
    if (prec >= prec_) {
        return *this;
    }
    return normalized(p_, cap_, unit_, is_zero() ? prec : val_, prec);
}

mpq_class PAdic::rational() const
{
    if (is_zero()) {
        return 0;
    }
    mpq_class r(unit_);
    if (val_ >= 0) {
        r *= prime_power(p_, val_);
    } else {
        r /= prime_power(p_, -val_);
    }
    r.canonicalize();
    return r;
}

mpz_class PAdic::residue(long k) const
{
    if (is_zero() || val_ >= k) {
        return 0;
    }
    if (val_ < 0) {
        raise(ErrorKind::InvalidInput, "residue of a non-integral p-adic value");
    }
    mpz_class x = unit_ * prime_power(p_, val_);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), prime_power(p_, k).get_mpz_t());
    return x;
}

std::string PAdic::to_string() const
{
    std::string s;
    if (is_zero()) {
        s = "0";
    } else {
        s = unit_.get_str();
        if (val_ != 0) {
            s += "*" + std::to_string(p_) + "^" + std::to_string(val_);
        }
    }
    if (!is_exact()) {
        s += " + O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    }
    return s;
}

long agreement(const PAdic &a, const PAdic &b)
{
    const PAdic d = a - b;
    return d.is_zero() ? d.precision() : d.valuation();
}

} // namespace res2d
