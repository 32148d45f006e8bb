#ifndef RES2D_COMPLETION_HPP
#define RES2D_COMPLETION_HPP

#include <optional>
#include <string>
#include <vector>

#include "res2d/local2d.hpp"

namespace res2d
{

// (pi_K) or the ideal of a squarefree distinguished polynomial.
struct HeightOnePrime {
    enum class Kind { Special, Cluster };
    Kind kind = Kind::Special;
    std::optional<DistinguishedPolynomial> poly;

    static HeightOnePrime special() { return {}; }
    // Validates distinguishedness and squarefreeness over Q.
    static HeightOnePrime cluster(const FieldPtr &k, const std::vector<mpz_class> &p);
    static HeightOnePrime cluster(const FieldPtr &k, const std::vector<long> &p);
    static HeightOnePrime cluster(DistinguishedPolynomial p);

    bool is_special() const noexcept { return kind == Kind::Special; }
    long degree() const { return is_special() ? 0 : poly->degree(); }
    std::string to_string() const;
};

// Same kind and, for clusters, coefficients agreeing at working precision.
bool same_prime(const HeightOnePrime &a, const HeightOnePrime &b);

// x = (num / den) * pi_K^pi_exp with exact integer polynomials. A differential
// form stands for x dt.
struct RationalFunction {
    std::vector<mpz_class> num;
    std::vector<mpz_class> den{1};
    long pi_exp = 0;

    void validate() const;
    std::string to_string() const;
};
using RationalForm = RationalFunction;

RationalFunction rational_from_ints(const std::vector<long> &num, const std::vector<long> &den, long pi_exp = 0);
RationalFunction operator*(const RationalFunction &a, const RationalFunction &b);
RationalFunction operator+(const RationalFunction &a, const RationalFunction &b);

struct HenselExpansion {
    EtalePtr algebra;
    ClusterSeries tau; // t = tau(t_P), known modulo t_P^(depth + 1)
    int depth = 0;
    long loss = 0;

    EtaleElement coeff(int i) const { return tau.coeff(i); }
};

HenselExpansion hensel_t_expansion(const FieldPtr &k, const DistinguishedPolynomial &p, int depth);

// Structure of a denominator b at a cluster P: b = G * W with W prime to P and
// P^j = G * Q, so x = t_P^(-j) * a Q / W after substituting t = tau.
struct PoleData {
    int order = 0; // j
    KPoly q;
    KPoly w;
};

PoleData pole_data(const FieldPtr &k, const std::vector<mpz_class> &den, const DistinguishedPolynomial &p);

// The completion k_P((t_P)) at a cluster, with the Hensel expansion of t.
class ClusterChart
{
public:
    ClusterChart(const FieldPtr &k, const DistinguishedPolynomial &p, int depth);

    const FieldPtr &field() const noexcept { return k_; }
    const DistinguishedPolynomial &prime() const noexcept { return p_; }
    const HenselExpansion &hensel() const noexcept { return h_; }
    const EtalePtr &algebra() const noexcept { return h_.algebra; }
    int depth() const noexcept { return h_.depth; }
    // dt/dt_P.
    const ClusterSeries &dtau() const noexcept { return dtau_; }

    ClusterSeries lift_poly(const KPoly &a) const;
    // Image of x in k_P((t_P)), known modulo t_P^(depth + 1 - order).
    ClusterSeries embed(const RationalFunction &x) const;
    // Numerator of x dt in dt_P, chain rule included.
    ClusterSeries embed_form(const RationalForm &omega) const;

private:
    FieldPtr k_;
    DistinguishedPolynomial p_;
    HenselExpansion h_;
    ClusterSeries dtau_;
};

// Degrees and valuations that size K{{t}} windows for x.
struct MixedShape {
    long l = 0;    // degree of the distinguished part of the denominator
    long dmax = 1; // largest degree of a distinguished factor
    long scale = 0; // lower bound for v_K of every coefficient
    long reach = 0; // v_K needed to fall below working precision
    bool zero = false;

    // A window [-extent, ...) leaves a tail below working precision.
    int extent() const;
};

MixedShape mixed_shape(const FieldPtr &k, const RationalFunction &x);

// Image of x in K{{t}} on the window [n_min, n_max) with the tail bound of the
// construction attached.
MixedStandardElement mixed_expand_rational(const FieldPtr &k, const RationalFunction &x, int n_min, int n_max);

// P^(-power) in K{{t}} on [n_min, n_max).
MixedStandardElement mixed_expand_inverse_power(const DistinguishedPolynomial &p, int power, int n_min, int n_max);

// Pole order of the form at a cluster.
int pole_order(const FieldPtr &k, const RationalForm &omega, const DistinguishedPolynomial &p);

// The same cluster over a finer copy of K. Inexact factors are found again in
// the split of den; empty when nothing matches.
std::optional<DistinguishedPolynomial> lift_cluster(const DistinguishedPolynomial &p, const FieldPtr &fine,
                                                    const std::vector<mpz_class> &den);

// Cluster residues that lose more than two digits are recomputed with guard
// digits and returned at working precision.
LocalFieldElement residue_at_prime(const FieldPtr &k, const RationalForm &omega, const HeightOnePrime &p);

// (pi_K) followed by the clusters of the squarefree split of the denominator.
std::vector<HeightOnePrime> support(const FieldPtr &k, const RationalForm &omega);

// Digits of relative precision lost against the working precision.
long relative_loss(const LocalFieldElement &a);
long relative_loss(const EtaleElement &a);

} // namespace res2d

#endif
