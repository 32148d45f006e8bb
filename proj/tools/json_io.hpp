#ifndef RES2D_TOOLS_JSON_IO_HPP
#define RES2D_TOOLS_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "res2d/adelic.hpp"

namespace res2d::cli
{

using json = nlohmann::json;

// Schema violations in scenario files; mapped to exit code 2.
class SchemaError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Typed field access with a path in the message.
const json &require(const json &obj, const std::string &key, const std::string &where);
long get_long(const json &obj, const std::string &key, const std::string &where);
long get_long_or(const json &obj, const std::string &key, long fallback, const std::string &where);
std::vector<mpz_class> get_ints(const json &obj, const std::string &key, const std::string &where);

// Integers are accepted as JSON numbers or decimal strings and always written
// back as decimal strings.
mpz_class parse_int(const json &v, const std::string &where);
json ints_json(const std::vector<mpz_class> &c);

RationalFunction parse_rational(const json &v, const std::string &where);
json rational_json(const RationalFunction &f);

HeightOnePrime parse_prime(const FieldPtr &k, const json &v, const std::string &where);
json prime_json(const HeightOnePrime &p);

json padic_json(const PAdic &a);
json element_json(const LocalFieldElement &a);
json etale_json(const EtaleElement &a);
json cluster_series_json(const ClusterSeries &f);
json kseries_json(const KSeries &f);
json mixed_json(const MixedStandardElement &f);

// Valuation of a coefficient as a JSON value, "inf" when it vanishes.
json valuation_json(long v);

} // namespace res2d::cli

#endif
