#include "res2d/etale.hpp"

#include <algorithm>

#include "res2d/error.hpp"

namespace res2d
{

namespace
{

std::vector<LocalFieldElement> low_part(const std::vector<LocalFieldElement> &monic)
{
    if (monic.size() < 2) {
        raise(ErrorKind::InvalidInput, "etale modulus must have degree >= 1");
    }
    return {monic.begin(), monic.end() - 1};
}

} // namespace

EtaleAlgebra::EtaleAlgebra(Tag, FieldPtr base, std::vector<LocalFieldElement> monic)
    : QuotientRing<LocalFieldElement>(low_part(monic)), base_(std::move(base)), monic_(std::move(monic))
{
}

EtalePtr etale_make(const FieldPtr &base, std::vector<LocalFieldElement> monic)
{
    if (monic.size() < 2) {
        raise(ErrorKind::InvalidInput, "etale modulus must have degree >= 1");
    }
    const auto &lead = monic.back().coords();
    bool is_one = lead[0].is_exact() && lead[0].rational() == 1;
    for (std::size_t i = 1; i < lead.size(); ++i) {
        is_one = is_one && lead[i].is_exact_zero();
    }
    if (!is_one) {
        raise(ErrorKind::InvalidInput, "etale modulus must be monic");
    }
    return std::make_shared<const EtaleAlgebra>(EtaleAlgebra::Tag{}, base, std::move(monic));
}

EtalePtr etale_make(const FieldPtr &base, const std::vector<long> &monic)
{
    std::vector<LocalFieldElement> m;
    for (long c : monic) {
        m.push_back(base->from_int(c));
    }
    return etale_make(base, std::move(m));
}

EtaleElement EtaleAlgebra::element(std::vector<LocalFieldElement> coords) const
{
    coords.resize(std::max(coords.size(), degree()), base_->zero());
    return EtaleElement(shared_from_this(), std::move(coords));
}

EtaleElement EtaleAlgebra::from_base(const LocalFieldElement &c) const
{
    return EtaleElement::scalar(shared_from_this(), c);
}

EtaleElement EtaleAlgebra::generator() const { return EtaleElement::generator(shared_from_this()); }

long EtaleAlgebra::weight(const EtaleElement &a) const
{
    long w = kExact;
    for (const auto &c : a.coords()) {
        w = std::min(w, c.weight());
    }
    return w;
}

LocalFieldElement trace_to_field(const EtaleElement &a) { return a.trace(); }

long precision_of(const EtaleElement &a)
{
    long v = kExact;
    for (const auto &c : a.coords()) {
        v = std::min(v, precision_of(c));
    }
    return v;
}

std::string to_string(const EtaleElement &a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += to_string(a.coords()[i]);
    }
    return s + ")";
}

} // namespace res2d
