#ifndef RES2D_ADELIC_HPP
#define RES2D_ADELIC_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "res2d/completion.hpp"

namespace res2d
{

// One listed component of an adele or adelic form. Clusters carry their chart
// so that elements and forms at the same prime share one algebra; forms store
// the coefficient of dt_P (clusters) or dt (the special prime).
struct LocalComponent {
    HeightOnePrime prime;
    std::shared_ptr<const ClusterChart> chart;
    ClusterSeries cluster;
    MixedStandardElement mixed;

    Carrier carrier() const { return prime.is_special() ? Carrier::Mixed : Carrier::Cluster; }
};

// Finite family of components; unlisted primes count as zero. field is the
// working field of every component, possibly with guard digits.
struct AdelicFamily {
    FieldPtr field;
    std::vector<LocalComponent> components;

    const LocalComponent *find(const HeightOnePrime &p) const;
    void validate() const;
};

struct AdeleElement : AdelicFamily {
};
struct AdelicForm : AdelicFamily {
};

// Diagonal image of a rational form: (pi) and every cluster of its support.
// Charts reach multipliers P^(-i) t^n with i <= depth + 1, n <= n_bar. Extra
// clusters are listed even where omega is integral. When a Hensel expansion
// loses more than two digits and guard is set, the form is built over a finer
// copy of K (see the field member of the result).
AdelicForm diagonal_form(const FieldPtr &k, const RationalForm &omega, int depth, int n_bar = 3,
                         const std::vector<HeightOnePrime> &extra = {}, bool guard = true);

// Image of x at every prime listed in like, reusing like's charts. Special
// windows mirror like's window so that coefficient -1 of products is covered;
// slack widens the upper end for later shifts by t^n.
AdeleElement embed_element_like(const RationalFunction &x, const AdelicFamily &like, int slack = 0);
AdelicForm embed_form_like(const RationalForm &omega, const AdelicFamily &like, int slack = 0);

LocalFieldElement local_pairing(const LocalComponent &f, const LocalComponent &omega);
LocalFieldElement pairing(const AdeleElement &f, const AdelicForm &omega);
// A rational multiplier whose poles must lie among the listed primes of omega.
LocalFieldElement pairing(const RationalFunction &f, const AdelicForm &omega);

struct PrimeResidue {
    HeightOnePrime prime;
    LocalFieldElement residue;
    long loss = 0;
};

struct ReciprocityReport {
    std::vector<PrimeResidue> residues;
    LocalFieldElement total;
    long loss = 0;            // digits of the total below working precision, relative to the largest residue
    long defect_valuation = 0; // coordinate valuation of the total, or its precision when it vanishes
    bool zero = false;
};

ReciprocityReport reciprocity_check(const FieldPtr &k, const RationalForm &omega);
// Same verdict rule for an arbitrary finite list of residues.
ReciprocityReport summarize_residues(const FieldPtr &k, std::vector<PrimeResidue> residues);

struct ResidueFormula {
    LocalFieldElement direct;
    LocalFieldElement closed;
    long loss = 0;
};

// Res_P(P^(-i-1) t^n omega_P) for an integral cluster form, once from the
// series product and once from the coefficients of tau^n written out in
// c_0..c_i.
ResidueFormula residue_formula_at_depth(const ClusterChart &chart, const ClusterSeries &omega_p, int n, int i);
// Coefficient of t_P^k in tau^n from the multinomial expansion.
EtaleElement tau_power_coeff(const HenselExpansion &h, int n, int k);

// Recovers a_0..a_depth of omega_P = sum a_i t_P^i dt_P from the (pi)
// component of a form that annihilates rational functions and is integral at
// every cluster.
std::vector<EtaleElement> reconstruct_at_prime(const MixedStandardElement &omega_p0, const ClusterChart &chart,
                                               int depth);

// a_{-i} = Res_(t)(t^(i-1) omega_(t)) for i = 1..count.
std::vector<LocalFieldElement> p0_tail_from_t(const ClusterChart &chart_t, const ClusterSeries &omega_t, int count);

struct WitnessGrid {
    int n_bar = 0;
    int i_bar = 1;
    int m_bar = 0;
};

struct Witness {
    bool found = false;
    int n = 0;
    int i = 0;
    int m = 0;
    std::optional<HeightOnePrime> prime; // cluster of P^(-i), absent when i = 0
    LocalFieldElement value;
    long searched = 0;
    WitnessGrid grid;
};

// Multipliers t^n P^(-i) pi^m over the listed clusters, in the order
// (n + i + |m|, n, i, m, cluster). The first pairing that is nonzero at its
// precision is returned.
Witness annihilator_witness(const AdelicForm &omega, const WitnessGrid &grid);
// Dual search: f against the forms t^n P^(-i) pi^m dt.
Witness annihilator_witness(const AdeleElement &f, const WitnessGrid &grid);

// Deterministic corpus generator: coefficients in [-p^3, p^3], degrees up to
// degree_bound, pi exponent in [pi_lo, pi_hi].
RationalForm random_rational_form(const FieldPtr &k, std::uint64_t seed, int degree_bound, long pi_lo = 0,
                                  long pi_hi = 0);

} // namespace res2d

#endif
