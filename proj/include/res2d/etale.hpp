#ifndef RES2D_ETALE_HPP
#define RES2D_ETALE_HPP

#include <memory>
#include <vector>

#include "res2d/field.hpp"

namespace res2d
{

class EtaleAlgebra;
using EtaleElement = AlgebraElement<EtaleAlgebra>;
using EtalePtr = std::shared_ptr<const EtaleAlgebra>;

// K[y]/(P(y)) for a monic P over K. When P is squarefree this is a product of
// finite extensions of K, one per irreducible factor, and the trace below is
// the sum of the factor traces. Nothing here needs the factors themselves.
class EtaleAlgebra : public QuotientRing<LocalFieldElement>, public std::enable_shared_from_this<EtaleAlgebra>
{
public:
    struct Tag {
    };
    EtaleAlgebra(Tag, FieldPtr base, std::vector<LocalFieldElement> monic);

    const FieldPtr &base() const noexcept { return base_; }
    // Full monic modulus, ascending.
    const std::vector<LocalFieldElement> &modulus() const noexcept { return monic_; }

    EtaleElement element(std::vector<LocalFieldElement> coords) const;
    EtaleElement from_base(const LocalFieldElement &c) const;
    EtaleElement from_int(long n) const { return from_base(base_->from_int(n)); }
    EtaleElement zero() const { return from_int(0); }
    EtaleElement one() const { return from_int(1); }
    EtaleElement generator() const;

    long weight(const EtaleElement &a) const;

private:
    FieldPtr base_;
    std::vector<LocalFieldElement> monic_;
};

EtalePtr etale_make(const FieldPtr &base, std::vector<LocalFieldElement> monic);
EtalePtr etale_make(const FieldPtr &base, const std::vector<long> &monic);

// Tr_{k_P/K}.
LocalFieldElement trace_to_field(const EtaleElement &a);
long precision_of(const EtaleElement &a);

std::string to_string(const EtaleElement &a);

} // namespace res2d

#endif
