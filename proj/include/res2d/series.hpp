#ifndef RES2D_SERIES_HPP
#define RES2D_SERIES_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "res2d/error.hpp"

namespace res2d
{

// Truncation marker for series that are exact Laurent polynomials.
inline constexpr int kUntruncated = 1 << 28;

inline int add_trunc(int a, int b)
{
    if (a >= kUntruncated || b >= kUntruncated) {
        return kUntruncated;
    }
    return a + b;
}

// A Laurent series sum_n a_n t^n known modulo O(t^n_max). Coefficients are
// stored densely from the lowest stored exponent; exact zeros at either end are
// stripped, so lower() is the order whenever the series is nonzero. Inexact
// zeros are kept: a coefficient that is only zero at precision still occupies
// its slot.
template <typename C>
class Laurent
{
public:
    Laurent() = default;
    Laurent(C zero, int n0, std::vector<C> coeffs, int n_max)
        : zero_(std::move(zero)), n0_(n0), c_(std::move(coeffs)), n_max_(n_max)
    {
        normalize();
    }

    static Laurent zero_series(C zero, int n_max = kUntruncated) { return Laurent(std::move(zero), 0, {}, n_max); }
    static Laurent monomial(const C &coeff, int n, int n_max = kUntruncated)
    {
        return Laurent(coeff.zero(), n, {coeff}, n_max);
    }
    // Ascending polynomial sum_i p[i] t^i.
    static Laurent polynomial(const std::vector<C> &p, const C &zero, int n_max = kUntruncated)
    {
        return Laurent(zero, 0, p, n_max);
    }

    const C &zero() const noexcept { return zero_; }
    int n_max() const noexcept { return n_max_; }
    bool truncated() const noexcept { return n_max_ < kUntruncated; }
    bool empty() const noexcept { return c_.empty(); }
    // Lowest stored exponent (the order unless the series is empty).
    int lower() const noexcept { return c_.empty() ? n_max_ : n0_; }
    // One past the highest stored exponent.
    int upper() const noexcept { return c_.empty() ? lower() : n0_ + static_cast<int>(c_.size()); }
    const std::vector<C> &stored() const noexcept { return c_; }

    // Throws TruncationExhausted at or beyond the truncation order.
    C coeff(int n) const
    {
        if (n >= n_max_) {
            raise(ErrorKind::TruncationExhausted,
                  "coefficient t^" + std::to_string(n) + " requested, series known modulo t^" + std::to_string(n_max_));
        }
        if (c_.empty() || n < n0_ || n >= upper()) {
            return zero_;
        }
        return c_[static_cast<std::size_t>(n - n0_)];
    }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const C &x) { return x.is_zero(); });
    }

    Laurent truncated_to(int n_max) const
    {
        if (n_max >= n_max_) {
            return *this;
        }
        std::vector<C> v;
        for (int n = n0_; !c_.empty() && n < std::min(upper(), n_max); ++n) {
            v.push_back(c_[static_cast<std::size_t>(n - n0_)]);
        }
        return Laurent(zero_, n0_, std::move(v), n_max);
    }

    // Multiply by t^k.
    Laurent shifted(int k) const { return Laurent(zero_, n0_ + k, c_, add_trunc(n_max_, k)); }

    Laurent scaled(const C &s) const
    {
        auto v = c_;
        for (auto &x : v) {
            x = x * s;
        }
        return Laurent(zero_, n0_, std::move(v), n_max_);
    }

    template <typename F>
    auto map(F &&f) const
    {
        using D = decltype(f(zero_));
        std::vector<D> v;
        v.reserve(c_.size());
        for (const auto &x : c_) {
            v.push_back(f(x));
        }
        return Laurent<D>(f(zero_), n0_, std::move(v), n_max_);
    }

    Laurent operator-() const
    {
        auto v = c_;
        for (auto &x : v) {
            x = -x;
        }
        return Laurent(zero_, n0_, std::move(v), n_max_);
    }

    friend Laurent operator+(const Laurent &a, const Laurent &b)
    {
        const int nm = std::min(a.n_max_, b.n_max_);
        if (a.c_.empty() && b.c_.empty()) {
            return Laurent(a.zero_, 0, {}, nm);
        }
        const int lo = std::min(a.c_.empty() ? b.n0_ : a.n0_, b.c_.empty() ? a.n0_ : b.n0_);
        const int hi = std::min(nm, std::max(a.c_.empty() ? lo : a.upper(), b.c_.empty() ? lo : b.upper()));
        std::vector<C> v;
        for (int n = lo; n < hi; ++n) {
            v.push_back(a.raw(n) + b.raw(n));
        }
        return Laurent(a.zero_, lo, std::move(v), nm);
    }
    friend Laurent operator-(const Laurent &a, const Laurent &b) { return a + (-b); }

    friend Laurent operator*(const Laurent &a, const Laurent &b)
    {
        const int nm = std::min(add_trunc(a.n_max_, b.lower()), add_trunc(b.n_max_, a.lower()));
        if (a.c_.empty() || b.c_.empty()) {
            return Laurent(a.zero_, 0, {}, nm);
        }
        const int lo = a.n0_ + b.n0_;
        const int hi = std::min(nm, a.upper() + b.upper() - 1);
        if (hi <= lo) {
            return Laurent(a.zero_, 0, {}, nm);
        }
        std::vector<C> v(static_cast<std::size_t>(hi - lo), a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero() && a.c_[i].is_exact()) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < hi - lo; ++j) {
                v[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Laurent(a.zero_, lo, std::move(v), nm);
    }

    Laurent &operator+=(const Laurent &o) { return *this = *this + o; }
    Laurent &operator-=(const Laurent &o) { return *this = *this - o; }
    Laurent &operator*=(const Laurent &o) { return *this = *this * o; }

    // Inverse with the leading coefficient inverted in the coefficient ring.
    // The relative truncation (n_max - order) is preserved; untruncated inputs
    // need an explicit relative length.
    Laurent inverse(int relative_length = -1) const
    {
        if (c_.empty()) {
            raise(ErrorKind::NonUnitLeadingCoefficient, "inverse of a series with no known terms");
        }
        int rel = n_max_ - n0_;
        if (!truncated() || (relative_length >= 0 && relative_length < rel)) {
            if (relative_length < 0) {
                raise(ErrorKind::InvalidInput, "inverse of an untruncated series needs a target length");
            }
            rel = relative_length;
        }
        C lead_inv;
        try {
            lead_inv = c_[0].inverse();
        } catch (const Error &e) {
            raise(ErrorKind::NonUnitLeadingCoefficient, std::string("leading coefficient: ") + e.what());
        }
        std::vector<C> v;
        v.reserve(static_cast<std::size_t>(rel));
        for (int k = 0; k < rel; ++k) {
            if (k == 0) {
                v.push_back(lead_inv);
                continue;
            }
            C acc = zero_;
            for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) {
                acc += c_[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(k - j)];
            }
            v.push_back(-(acc * lead_inv));
        }
        return Laurent(zero_, -n0_, std::move(v), -n0_ + rel);
    }

    // d/dt: sum n a_n t^(n-1).
    Laurent derivative() const
    {
        std::vector<C> v;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const long n = n0_ + static_cast<long>(i);
            v.push_back(c_[i] * c_[i].make(n));
        }
        return Laurent(zero_, n0_ - 1, std::move(v), n_max_ >= kUntruncated ? kUntruncated : n_max_ - 1);
    }

private:
    C raw(int n) const
    {
        if (c_.empty() || n < n0_ || n >= upper()) {
            return zero_;
        }
        return c_[static_cast<std::size_t>(n - n0_)];
    }

    void normalize()
    {
        // Drop stored terms at or beyond the truncation.
        if (!c_.empty() && n0_ + static_cast<long>(c_.size()) > n_max_) {
            const long keep = std::max<long>(0, static_cast<long>(n_max_) - n0_);
            c_.resize(static_cast<std::size_t>(keep), zero_);
        }
        while (!c_.empty() && c_.back().is_zero() && c_.back().is_exact()) {
            c_.pop_back();
        }
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero() && c_[lead].is_exact()) {
            ++lead;
        }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            n0_ += static_cast<int>(lead);
        }
        if (c_.empty()) {
            n0_ = 0;
        }
    }

    C zero_{};
    int n0_ = 0;
    std::vector<C> c_;
    int n_max_ = kUntruncated;
};

// Evaluate the polynomial sum_i poly[i] x^i at a series x, lifting
// coefficients into the series coefficient ring with lift.
template <typename C, typename Poly, typename Lift>
Laurent<C> compose(const Poly &poly, const Laurent<C> &x, Lift &&lift)
{
    Laurent<C> acc = Laurent<C>::zero_series(x.zero());
    for (std::size_t i = poly.size(); i-- > 0;) {
        acc = acc * x + Laurent<C>::monomial(lift(poly[i]), 0);
    }
    return acc;
}

} // namespace res2d

#endif
