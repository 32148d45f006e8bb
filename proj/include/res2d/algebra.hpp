#ifndef RES2D_ALGEBRA_HPP
#define RES2D_ALGEBRA_HPP

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "res2d/error.hpp"

namespace res2d
{

template <typename C>
using Matrix = std::vector<std::vector<C>>;

namespace detail
{

template <typename C>
std::size_t pick_pivot(const Matrix<C> &a, std::size_t col)
{
    std::size_t best = col;
    for (std::size_t r = col + 1; r < a.size(); ++r) {
        if (a[r][col].weight() < a[best][col].weight()) {
            best = r;
        }
    }
    return best;
}

} // namespace detail

// Gaussian elimination with minimal-valuation pivots, the stable choice over a
// valued field. Throws DegenerateAtPrecision when a pivot column vanishes.
template <typename C>
std::vector<C> solve(Matrix<C> a, std::vector<C> b)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t piv = detail::pick_pivot(a, col);
        if (a[piv][col].is_zero()) {
            raise(ErrorKind::DegenerateAtPrecision, "singular linear system at working precision");
        }
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const C inv = a[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) {
                continue;
            }
            const C f = a[r][col] * inv;
            for (std::size_t k = col; k < n; ++k) {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<C> x(n, b.empty() ? C{} : b[0].zero());
    for (std::size_t i = n; i-- > 0;) {
        C acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            acc -= a[i][k] * x[k];
        }
        x[i] = acc * a[i][i].inverse();
    }
    return x;
}

// Determinant by the same elimination. A vanishing pivot column yields a value
// that is zero at whatever precision that column carried.
template <typename C>
C determinant(Matrix<C> a)
{
    const std::size_t n = a.size();
    C det = a[0][0].one();
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t piv = detail::pick_pivot(a, col);
        if (a[piv][col].is_zero()) {
            return det * a[piv][col];
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const C inv = a[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) {
                continue;
            }
            const C f = a[r][col] * inv;
            for (std::size_t k = col; k < n; ++k) {
                a[r][k] -= f * a[col][k];
            }
        }
    }
    return det;
}

// C[y]/(M(y)) for a monic M of degree l, in the power basis 1, y, ..., y^(l-1).
// The power sums s_k = Tr(y^k) are precomputed through Newton's identities.
template <typename C>
class QuotientRing
{
public:
    using coeff_type = C;

    // modulus: ascending coefficients m_0..m_{l-1} of y^l + m_{l-1} y^(l-1) + ...
    explicit QuotientRing(std::vector<C> low_coeffs) : low_(std::move(low_coeffs))
    {
        if (low_.empty()) {
            raise(ErrorKind::InvalidInput, "quotient ring needs a modulus of degree >= 1");
        }
        const std::size_t l = low_.size();
        const C zero = low_[0].zero();
        zero_ = zero;
        // Newton: s_k + e1 s_{k-1} + ... + k e_k = 0 where the monic polynomial is
        // y^l + m_{l-1} y^{l-1} + ... + m_0, i.e. coefficient of y^{l-j} is m_{l-j}.
        power_sums_.assign(2 * l, zero);
        power_sums_[0] = zero.make(static_cast<long>(l));
        for (std::size_t k = 1; k < 2 * l; ++k) {
            C acc = zero;
            for (std::size_t j = 1; j <= std::min(k, l); ++j) {
                const C &mj = low_[l - j];
                if (j < k) {
                    acc += mj * power_sums_[k - j];
                } else {
                    acc += mj * zero.make(static_cast<long>(k));
                }
            }
            power_sums_[k] = -acc;
        }
    }

    virtual ~QuotientRing() = default;

    std::size_t degree() const noexcept { return low_.size(); }
    const std::vector<C> &modulus_low() const noexcept { return low_; }
    const C &base_zero() const noexcept { return zero_; }
    // Tr(y^k) for 0 <= k < 2 * degree.
    const C &power_sum(std::size_t k) const { return power_sums_.at(k); }

    // Reduce a coefficient vector of any length modulo the modulus.
    std::vector<C> reduce(std::vector<C> v) const
    {
        const std::size_t l = low_.size();
        const C zero = low_[0].zero();
        for (std::size_t k = v.size(); k-- > l;) {
            if (v[k].is_zero() && v[k].is_exact()) {
                continue;
            }
            const C c = v[k];
            for (std::size_t j = 0; j < l; ++j) {
                v[k - l + j] -= c * low_[j];
            }
        }
        v.resize(l, zero);
        return v;
    }

private:
    std::vector<C> low_;
    std::vector<C> power_sums_;
    C zero_;
};

// Element of a quotient ring; Ring derives from QuotientRing<C>.
template <typename Ring>
class AlgebraElement
{
public:
    using coeff_type = typename Ring::coeff_type;
    using ring_ptr = std::shared_ptr<const Ring>;

    AlgebraElement() = default;
    AlgebraElement(ring_ptr ring, std::vector<coeff_type> coords)
        : ring_(std::move(ring)), coords_(std::move(coords))
    {
        if (coords_.size() != ring_->degree()) {
            coords_ = ring_->reduce(std::move(coords_));
        }
    }

    static AlgebraElement scalar(ring_ptr ring, const coeff_type &c)
    {
        std::vector<coeff_type> v(ring->degree(), ring->base_zero().zero());
        v[0] = c;
        return AlgebraElement(std::move(ring), std::move(v));
    }
    // The class of y.
    static AlgebraElement generator(ring_ptr ring)
    {
        std::vector<coeff_type> v(ring->degree() + 1, ring->base_zero().zero());
        v[1] = ring->base_zero().one();
        return AlgebraElement(ring, ring->reduce(std::move(v)));
    }

    const ring_ptr &ring() const noexcept { return ring_; }
    const std::vector<coeff_type> &coords() const noexcept { return coords_; }
    std::size_t degree() const noexcept { return coords_.size(); }

    AlgebraElement zero() const { return scalar(ring_, ring_->base_zero().zero()); }
    AlgebraElement one() const { return scalar(ring_, ring_->base_zero().one()); }
    AlgebraElement make(const mpz_class &n) const { return scalar(ring_, ring_->base_zero().make(n)); }
    AlgebraElement make(long n) const { return scalar(ring_, ring_->base_zero().make(n)); }
    AlgebraElement lift(const coeff_type &c) const { return scalar(ring_, c); }

    bool is_zero() const
    {
        for (const auto &c : coords_) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }
    bool is_exact() const
    {
        for (const auto &c : coords_) {
            if (!c.is_exact()) {
                return false;
            }
        }
        return true;
    }

    AlgebraElement operator-() const
    {
        auto v = coords_;
        for (auto &c : v) {
            c = -c;
        }
        return AlgebraElement(ring_, std::move(v));
    }
    friend AlgebraElement operator+(const AlgebraElement &a, const AlgebraElement &b)
    {
        check_same(a, b);
        auto v = a.coords_;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += b.coords_[i];
        }
        return AlgebraElement(a.ring_, std::move(v));
    }
    friend AlgebraElement operator-(const AlgebraElement &a, const AlgebraElement &b) { return a + (-b); }
    friend AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b)
    {
        check_same(a, b);
        const std::size_t l = a.coords_.size();
        std::vector<coeff_type> v(2 * l - 1, a.ring_->base_zero().zero());
        for (std::size_t i = 0; i < l; ++i) {
            if (a.coords_[i].is_zero() && a.coords_[i].is_exact()) {
                continue;
            }
            for (std::size_t j = 0; j < l; ++j) {
                v[i + j] += a.coords_[i] * b.coords_[j];
            }
        }
        return AlgebraElement(a.ring_, a.ring_->reduce(std::move(v)));
    }
    AlgebraElement &operator+=(const AlgebraElement &o) { return *this = *this + o; }
    AlgebraElement &operator-=(const AlgebraElement &o) { return *this = *this - o; }
    AlgebraElement &operator*=(const AlgebraElement &o) { return *this = *this * o; }

    AlgebraElement scaled(const coeff_type &c) const
    {
        auto v = coords_;
        for (auto &x : v) {
            x = x * c;
        }
        return AlgebraElement(ring_, std::move(v));
    }

    // Columns are the coordinates of this * y^j.
    Matrix<coeff_type> multiplication_matrix() const
    {
        const std::size_t l = coords_.size();
        Matrix<coeff_type> m(l, std::vector<coeff_type>(l, ring_->base_zero().zero()));
        std::vector<coeff_type> col = coords_;
        for (std::size_t j = 0; j < l; ++j) {
            for (std::size_t i = 0; i < l; ++i) {
                m[i][j] = col[i];
            }
            col.insert(col.begin(), ring_->base_zero().zero());
            col = ring_->reduce(std::move(col));
        }
        return m;
    }

    coeff_type trace() const
    {
        coeff_type acc = ring_->base_zero().zero();
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            acc += coords_[j] * ring_->power_sum(j);
        }
        return acc;
    }

    coeff_type norm() const { return determinant(multiplication_matrix()); }

    // Pivot weight, delegated to the ring (a valuation where one exists).
    long weight() const { return ring_->weight(*this); }

    AlgebraElement inverse() const
    {
        if (is_zero()) {
            raise(is_exact() ? ErrorKind::DivisionByZero : ErrorKind::DivisionByZeroAtPrecision,
                  "inverse of an element indistinguishable from zero");
        }
        std::vector<coeff_type> e(coords_.size(), ring_->base_zero().zero());
        e[0] = ring_->base_zero().one();
        try {
            return AlgebraElement(ring_, solve(multiplication_matrix(), std::move(e)));
        } catch (const Error &err) {
            if (err.kind() == ErrorKind::DegenerateAtPrecision) {
                raise(ErrorKind::DivisionByZeroAtPrecision, "element is not a unit at working precision");
            }
            throw;
        }
    }

    // Evaluate an ascending coefficient list (over coeff_type) at this element.
    static AlgebraElement horner(const std::vector<coeff_type> &poly, const AlgebraElement &x)
    {
        AlgebraElement acc = x.zero();
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = acc * x + x.lift(poly[i]);
        }
        return acc;
    }

private:
    static void check_same(const AlgebraElement &a, const AlgebraElement &b)
    {
        if (a.ring_ != b.ring_) {
            raise(ErrorKind::FieldMismatch, "operands live in different algebras");
        }
    }

    ring_ptr ring_;
    std::vector<coeff_type> coords_;
};

// Gram matrix of the trace pairing (a, b) -> Tr(ab).
template <typename Elem>
Matrix<typename Elem::coeff_type> trace_gram(const std::vector<Elem> &basis)
{
    const std::size_t n = basis.size();
    Matrix<typename Elem::coeff_type> g;
    g.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<typename Elem::coeff_type> row;
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back((basis[i] * basis[j]).trace());
        }
        g.push_back(std::move(row));
    }
    return g;
}

} // namespace res2d

#endif
