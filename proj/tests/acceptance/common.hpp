#ifndef RES2D_ACCEPTANCE_COMMON_HPP
#define RES2D_ACCEPTANCE_COMMON_HPP

#include <random>
#include <string>
#include <vector>

#include "res2d/adelic.hpp"

namespace acceptance
{

using namespace res2d;

// One asserted quantity, kept so that runs at two precisions can be compared.
struct Entry {
    std::string key;
    std::vector<PAdic> digits;
    bool flag = true;
};

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<Entry> entries;

    void fail(const std::string &why)
    {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

std::vector<PAdic> flatten(const LocalFieldElement &a);
std::vector<PAdic> flatten(const EtaleElement &a);

// Valuation of a - b over coordinates, or the precision where it vanishes.
long agree(const LocalFieldElement &a, const LocalFieldElement &b);
long agree(const EtaleElement &a, const EtaleElement &b);
bool consistent(const LocalFieldElement &a, const LocalFieldElement &b);
bool consistent(const EtaleElement &a, const EtaleElement &b);

// Squarefree distinguished polynomial of degree l with p-divisible lower
// coefficients. With eisenstein set the constant term is p times a unit.
std::vector<mpz_class> random_distinguished(long p, int l, std::mt19937_64 &rng, bool eisenstein = false);
// Forms whose denominators are p^m b with b(0) a unit: no poles at clusters.
RationalForm integral_at_clusters(long p, std::mt19937_64 &rng);

inline const std::vector<long> &primes()
{
    static const std::vector<long> ps{2, 3, 5, 7};
    return ps;
}

// The suites; each is deterministic given n.
Outcome reciprocity_suite(long n);
Outcome fixtures_suite(long n);
Outcome sign_suite(long n);
Outcome formula_suite(long n);
Outcome reconstruction_suite(long n);
Outcome witness_suite(long n);
Outcome structural_suite(long n);

} // namespace acceptance

#endif
