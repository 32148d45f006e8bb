#include "json_io.hpp"

namespace res2d::cli
{

const json &require(const json &obj, const std::string &key, const std::string &where)
{
    if (!obj.is_object()) {
        throw SchemaError(where + ": expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(where + ": missing \"" + key + "\"");
    }
    return *it;
}

long get_long(const json &obj, const std::string &key, const std::string &where)
{
    const json &v = require(obj, key, where);
    if (!v.is_number_integer()) {
        throw SchemaError(where + "." + key + ": expected an integer");
    }
    return v.get<long>();
}

long get_long_or(const json &obj, const std::string &key, long fallback, const std::string &where)
{
    if (!obj.is_object() || !obj.contains(key)) {
        return fallback;
    }
    return get_long(obj, key, where);
}

mpz_class parse_int(const json &v, const std::string &where)
{
    if (v.is_number_integer()) {
        return mpz_class(std::to_string(v.get<long long>()));
    }
    if (v.is_string()) {
        const auto &s = v.get_ref<const std::string &>();
        const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
            throw SchemaError(where + ": \"" + s + "\" is not a decimal integer");
        }
        return mpz_class(s[0] == '+' ? s.substr(1) : s);
    }
    throw SchemaError(where + ": expected an integer or a decimal string");
}

std::vector<mpz_class> get_ints(const json &obj, const std::string &key, const std::string &where)
{
    const json &v = require(obj, key, where);
    if (!v.is_array()) {
        throw SchemaError(where + "." + key + ": expected an array of integers");
    }
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(parse_int(v[i], where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json ints_json(const std::vector<mpz_class> &c)
{
    json a = json::array();
    for (const auto &x : c) {
        a.push_back(x.get_str());
    }
    return a;
}

RationalFunction parse_rational(const json &v, const std::string &where)
{
    RationalFunction f;
    f.num = get_ints(v, "num", where);
    f.den = v.contains("den") ? get_ints(v, "den", where) : std::vector<mpz_class>{1};
    f.pi_exp = get_long_or(v, "pi_exp", 0, where);
    f.validate();
    return f;
}

json rational_json(const RationalFunction &f)
{
    return {{"num", ints_json(f.num)}, {"den", ints_json(f.den)}, {"pi_exp", f.pi_exp}};
}

HeightOnePrime parse_prime(const FieldPtr &k, const json &v, const std::string &where)
{
    const json &kind = require(v, "kind", where);
    if (kind == "special") {
        return HeightOnePrime::special();
    }
    if (kind == "cluster") {
        return HeightOnePrime::cluster(k, get_ints(v, "poly", where));
    }
    throw SchemaError(where + ".kind: expected \"special\" or \"cluster\"");
}

json prime_json(const HeightOnePrime &p)
{
    if (p.is_special()) {
        return {{"kind", "special"}};
    }
    json out{{"kind", "cluster"}, {"text", p.poly->to_string()}};
    if (p.poly->exact) {
        out["poly"] = ints_json(*p.poly->exact);
    }
    return out;
}

json valuation_json(long v)
{
    if (v >= kExact) {
        return "inf";
    }
    return v;
}

namespace
{

json precision_json(long prec)
{
    if (prec >= kExact) {
        return "exact";
    }
    return prec;
}

// Representative with digits in the symmetric range, so -1 + O(p^N) reads -1.
std::string balanced(const PAdic &a)
{
    if (a.is_zero()) {
        return "0";
    }
    mpz_class u = a.unit();
    if (!a.is_exact()) {
        const mpz_class &m = prime_power(a.p(), a.precision() - a.valuation());
        if (2 * u > m) {
            u -= m;
        }
    }
    if (a.valuation() >= 0) {
        return mpz_class(u * prime_power(a.p(), a.valuation())).get_str();
    }
    mpq_class q(u, prime_power(a.p(), -a.valuation()));
    q.canonicalize();
    return q.get_str();
}

} // namespace

json padic_json(const PAdic &a)
{
    json out{{"digits", a.unit().get_str()}, {"prec", precision_json(a.precision())}, {"value", balanced(a)}};
    out["val"] = a.is_zero() ? json("inf") : json(a.valuation());
    return out;
}

json element_json(const LocalFieldElement &a)
{
    json coords = json::array();
    for (const auto &c : a.coords()) {
        coords.push_back(padic_json(c));
    }
    return {{"coords", coords}, {"valuation", valuation_json(valuation_or_inf(a))}};
}

json etale_json(const EtaleElement &a)
{
    json coords = json::array();
    for (const auto &c : a.coords()) {
        coords.push_back(element_json(c));
    }
    return {{"coords", coords}};
}

json cluster_series_json(const ClusterSeries &f)
{
    json terms = json::array();
    for (int n = f.lower(); n < f.upper(); ++n) {
        terms.push_back({{"exp", n}, {"coeff", etale_json(f.coeff(n))}});
    }
    json out{{"terms", terms}};
    out["n_max"] = f.truncated() ? json(f.n_max()) : json("none");
    return out;
}

json kseries_json(const KSeries &f)
{
    json terms = json::array();
    for (int n = f.lower(); n < f.upper(); ++n) {
        terms.push_back({{"exp", n}, {"coeff", element_json(f.coeff(n))}});
    }
    json out{{"terms", terms}};
    out["n_max"] = f.truncated() ? json(f.n_max()) : json("none");
    return out;
}

json mixed_json(const MixedStandardElement &f)
{
    json terms = json::array();
    for (int n = f.n_min(); n < f.n_max(); ++n) {
        terms.push_back({{"exp", n}, {"coeff", element_json(f.coeff(n))}});
    }
    const auto &t = f.tail();
    json tail;
    if (!t.known) {
        tail = "unknown";
    } else if (t.base >= kExact) {
        tail = "zero";
    } else {
        tail = {{"anchor", t.anchor}, {"base", t.base}, {"num", t.num}, {"den", t.den}};
    }
    return {{"n_min", f.n_min()}, {"n_max", f.n_max()}, {"terms", terms}, {"tail", tail},
            {"head", valuation_json(f.head())}};
}

} // namespace res2d::cli
