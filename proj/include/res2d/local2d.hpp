#ifndef RES2D_LOCAL2D_HPP
#define RES2D_LOCAL2D_HPP

#include <string>
#include <vector>

#include "res2d/etale.hpp"
#include "res2d/weierstrass.hpp"

namespace res2d
{

// Elements of k_P((t_P)); a differential form f dt_P is stored as f.
using ClusterSeries = Laurent<EtaleElement>;

enum class Carrier { Cluster, Mixed };

std::string carrier_name(Carrier c);

// v_K(a_n) >= base + floor(num * (anchor - n) / den) for n <= anchor.
struct TailBound {
    long anchor = 0;
    long base = 0;
    long num = 0;
    long den = 1;
    bool known = true;

    long at(long n) const;
    static TailBound infinite() { return {0, kExact, 0, 1, true}; }
    static TailBound unknown() { return {0, 0, 0, 1, false}; }
};

// An element of K{{t}}: coefficients known on [n_min, n_max), a tail bound
// below the window, and a uniform lower bound (head) above it.
class MixedStandardElement
{
public:
    MixedStandardElement() = default;
    MixedStandardElement(FieldPtr k, int n_min, std::vector<LocalFieldElement> window, TailBound tail, long head);

    // Exact Laurent polynomial sum_i c[i] t^(n0 + i).
    static MixedStandardElement laurent(const FieldPtr &k, int n0, std::vector<LocalFieldElement> c);

    const FieldPtr &field() const noexcept { return k_; }
    int n_min() const noexcept { return n_min_; }
    int n_max() const noexcept { return n_min_ + static_cast<int>(c_.size()); }
    const std::vector<LocalFieldElement> &window() const noexcept { return c_; }
    const TailBound &tail() const noexcept { return tail_; }
    long head() const noexcept { return head_; }

    // Throws TruncationExhausted outside the window, unless the bounds force
    // the coefficient to vanish at working precision.
    LocalFieldElement coeff(int n) const;
    // Lower bound for v_K(a_n) valid for every n.
    long lower_bound(int n) const;

    MixedStandardElement with_coeff(int n, const LocalFieldElement &c) const;
    MixedStandardElement scaled(const LocalFieldElement &a) const;
    MixedStandardElement shifted(int k) const;
    MixedStandardElement operator-() const;
    friend MixedStandardElement operator+(const MixedStandardElement &a, const MixedStandardElement &b);
    friend MixedStandardElement operator-(const MixedStandardElement &a, const MixedStandardElement &b)
    {
        return a + (-b);
    }

private:
    FieldPtr k_;
    int n_min_ = 0;
    std::vector<LocalFieldElement> c_;
    TailBound tail_ = TailBound::infinite();
    long head_ = kExact;
};

// Coefficients [lo, hi) of a*b. Each coefficient is capped by the bound on the
// terms that fall outside the two windows.
MixedStandardElement mixed_product(const MixedStandardElement &a, const MixedStandardElement &b, int lo, int hi);
// Coefficient of t^n in a*b with its honest precision.
LocalFieldElement mixed_product_coeff(const MixedStandardElement &a, const MixedStandardElement &b, int n);

// Tr_{k_P/K}(a_{-1}).
LocalFieldElement res_equal_char(const ClusterSeries &f);
// -a_{-1}.
LocalFieldElement res_mixed_standard(const MixedStandardElement &f);

ClusterSeries form_scale(const ClusterSeries &f, const ClusterSeries &omega);
MixedStandardElement form_scale(const MixedStandardElement &f, const MixedStandardElement &omega);

ClusterSeries exterior_d(const ClusterSeries &f);
MixedStandardElement exterior_d(const MixedStandardElement &f);

// Rewrites f dt_P in the parameter u = s * t_P for a unit series s; returns g
// with f dt_P = g du.
ClusterSeries reparametrize(const ClusterSeries &f, const ClusterSeries &s);

// v_K lower bound usable for zero-at-precision coefficients as well.
long vk_lower(const LocalFieldElement &a);

} // namespace res2d

#endif
