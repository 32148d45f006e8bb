#include "commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "res2d/version.hpp"

namespace res2d::cli
{

namespace
{

struct Context {
    FieldPtr k;
    long tmax = 32;
    std::uint64_t seed = 0;
    const json *payload = nullptr;
};

struct Result {
    json body;
    int exit_code = kOk;
};

long agree(const LocalFieldElement &a, const LocalFieldElement &b)
{
    long m = kExact;
    for (const auto &c : (a - b).coords()) {
        m = std::min(m, c.is_zero() ? c.precision() : c.valuation());
    }
    return m;
}

long agree(const EtaleElement &a, const EtaleElement &b)
{
    long m = kExact;
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        m = std::min(m, agree(a.coords()[i], b.coords()[i]));
    }
    return m;
}

int get_int(const json &obj, const std::string &key, long fallback, const std::string &where, long lo, long hi)
{
    const long v = get_long_or(obj, key, fallback, where);
    if (v < lo || v > hi) {
        throw SchemaError(where + "." + key + ": " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
}

json residues_json(const ReciprocityReport &r)
{
    json res = json::array();
    for (const auto &pr : r.residues) {
        res.push_back({{"prime", prime_json(pr.prime)}, {"residue", element_json(pr.residue)}, {"loss", pr.loss}});
    }
    return {{"residues", res},
            {"total", element_json(r.total)},
            {"loss", r.loss},
            {"defect_valuation", valuation_json(r.defect_valuation)},
            {"verdict", r.zero ? "zero" : "nonzero"}};
}

Result cmd_residue(const Context &c)
{
    const json &pl = *c.payload;
    const auto omega = parse_rational(require(pl, "form", "payload"), "payload.form");
    const auto prime = parse_prime(c.k, require(pl, "prime", "payload"), "payload.prime");
    const auto v = residue_at_prime(c.k, omega, prime);
    return {{{"prime", prime_json(prime)},
             {"residue", element_json(v)},
             {"valuation", valuation_json(valuation_or_inf(v))},
             {"loss", relative_loss(v)}}};
}

Result cmd_reconstruct(const Context &c)
{
    const json &pl = *c.payload;
    const auto omega = parse_rational(require(pl, "form", "payload"), "payload.form");
    const auto prime = parse_prime(c.k, require(pl, "prime", "payload"), "payload.prime");
    const int depth = get_int(pl, "depth", 0, "payload", 0, 64);
    if (prime.is_special()) {
        throw SchemaError("payload.prime: reconstruction needs a cluster");
    }
    if (support(c.k, omega).size() != 1) {
        raise(ErrorKind::InvalidInput, "reconstruction needs a form integral at every cluster");
    }
    const auto form = diagonal_form(c.k, omega, depth, static_cast<int>(prime.degree()), {prime});
    const auto *cp = form.find(prime);
    const auto a = reconstruct_at_prime(form.find(HeightOnePrime::special())->mixed, *cp->chart, depth);
    json rec = json::array();
    json emb = json::array();
    json defects = json::array();
    bool match = true;
    for (int i = 0; i <= depth; ++i) {
        const auto &x = a[static_cast<std::size_t>(i)];
        const auto want = cp->cluster.coeff(i);
        const long d = agree(x, want);
        match = match && d >= std::min(precision_of(x), precision_of(want));
        rec.push_back(etale_json(x));
        emb.push_back(etale_json(want));
        defects.push_back(valuation_json(d));
    }
    return {{{"prime", prime_json(prime)},
             {"depth", depth},
             {"reconstructed", rec},
             {"embedded", emb},
             {"defect_valuations", defects},
             {"match", match}},
            match ? kOk : kViolation};
}

void perturb(AdelicForm &w, const json &spec, const std::string &where)
{
    // parsed over the form's working field, which may carry guard digits
    const auto prime = parse_prime(w.field, require(spec, "prime", where), where + ".prime");
    const int index = get_int(spec, "index", 0, where, -1000, 1000);
    const long delta = get_long_or(spec, "delta", 1, where);
    for (auto &comp : w.components) {
        if (!same_prime(comp.prime, prime)) {
            continue;
        }
        if (comp.prime.is_special()) {
            comp.mixed = comp.mixed.with_coeff(index, comp.mixed.coeff(index) + w.field->from_int(delta));
        } else {
            comp.cluster = comp.cluster +
                           ClusterSeries::monomial(comp.chart->algebra()->from_int(delta), index, comp.cluster.n_max());
        }
        return;
    }
    throw SchemaError(where + ".prime: not a listed component");
}

// A diagonal form ({"form"}) or explicit components ({"adele"}), followed by
// optional single-coefficient perturbations.
AdelicForm build_form(const Context &c, const json &pl, int depth, int n_bar)
{
    AdelicForm w;
    w.field = c.k;
    if (pl.contains("form")) {
        std::vector<HeightOnePrime> extra;
        if (pl.contains("extra")) {
            for (std::size_t i = 0; i < pl["extra"].size(); ++i) {
                extra.push_back(parse_prime(c.k, pl["extra"][i], "payload.extra[" + std::to_string(i) + "]"));
            }
        }
        w = diagonal_form(c.k, parse_rational(pl["form"], "payload.form"), depth, n_bar, extra);
    } else {
        const json &comps = require(require(pl, "adele", "payload"), "components", "payload.adele");
        if (!comps.is_array()) {
            throw SchemaError("payload.adele.components: expected an array");
        }
        std::vector<std::pair<HeightOnePrime, RationalForm>> parsed;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const std::string where = "payload.adele.components[" + std::to_string(i) + "]";
            parsed.emplace_back(parse_prime(c.k, require(comps[i], "prime", where), where + ".prime"),
                                parse_rational(require(comps[i], "form", where), where + ".form"));
        }
        // every component must share one working field
        long precision = c.k->precision();
        for (const auto &[prime, form] : parsed) {
            precision = std::max(precision, diagonal_form(c.k, form, depth, n_bar, {prime}).field->precision());
        }
        const FieldPtr kw = field_with_precision(c.k, precision);
        w.field = kw;
        for (const auto &[prime, form] : parsed) {
            const auto q = prime.is_special() ? prime : HeightOnePrime::cluster(kw, *prime.poly->exact);
            const auto d = diagonal_form(kw, form, depth, n_bar, {q}, false);
            w.components.push_back(*d.find(q));
        }
        w.validate();
    }
    if (pl.contains("perturb")) {
        const json &ps = pl["perturb"];
        if (!ps.is_array()) {
            throw SchemaError("payload.perturb: expected an array");
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            perturb(w, ps[i], "payload.perturb[" + std::to_string(i) + "]");
        }
    }
    return w;
}

Result cmd_reciprocity(const Context &c)
{
    const json &pl = *c.payload;
    if (pl.contains("adele") || pl.contains("perturb")) {
        const AdelicForm w = build_form(c, pl, get_int(pl, "depth", 2, "payload", 0, 64), 0);
        std::vector<PrimeResidue> res;
        for (const auto &comp : w.components) {
            const auto v = comp.prime.is_special() ? res_mixed_standard(comp.mixed) : res_equal_char(comp.cluster);
            res.push_back({comp.prime, v, relative_loss(v)});
        }
        const auto r = summarize_residues(w.field, std::move(res));
        return {residues_json(r), r.zero ? kOk : kViolation};
    }
    if (!pl.contains("corpus")) {
        const auto omega = parse_rational(require(pl, "form", "payload"), "payload.form");
        const auto r = reciprocity_check(c.k, omega);
        return {residues_json(r), r.zero ? kOk : kViolation};
    }
    const json &cp = pl["corpus"];
    const int count = get_int(cp, "count", 100, "payload.corpus", 0, 100000);
    const int degree = get_int(cp, "degree", 4, "payload.corpus", 0, 64);
    const long pi_lo = get_long_or(cp, "pi_lo", 0, "payload.corpus");
    const long pi_hi = get_long_or(cp, "pi_hi", 0, "payload.corpus");
    if (pi_lo > pi_hi) {
        throw SchemaError("payload.corpus: pi_lo > pi_hi");
    }
    json cases = json::array();
    long passed = 0;
    long failed = 0;
    long errors = 0;
    long max_loss = 0;
    long min_defect = kExact;
    long max_defect = 0;
    for (int j = 0; j < count; ++j) {
        const std::uint64_t s = c.seed + static_cast<std::uint64_t>(j);
        const auto omega = random_rational_form(c.k, s, degree, pi_lo, pi_hi);
        json entry{{"seed", s}, {"form", rational_json(omega)}};
        try {
            const auto r = reciprocity_check(c.k, omega);
            entry.update(residues_json(r));
            (r.zero ? passed : failed) += 1;
            max_loss = std::max(max_loss, r.loss);
            min_defect = std::min(min_defect, r.defect_valuation);
            max_defect = std::max(max_defect, r.defect_valuation);
        } catch (const Error &e) {
            ++errors;
            entry["error"] = {{"kind", error_name(e.kind())}, {"message", e.what()}};
        }
        cases.push_back(std::move(entry));
    }
    json body{{"cases", cases},     {"count", count},         {"passed", passed},
              {"failed", failed},   {"errors", errors},       {"max_loss", max_loss},
              {"min_defect_valuation", valuation_json(min_defect)},
              {"max_defect_valuation", valuation_json(count ? max_defect : kExact)}};
    const int code = errors ? kArithmeticError : (failed ? kViolation : kOk);
    return {body, code};
}

Result cmd_witness(const Context &c)
{
    const json &pl = *c.payload;
    const json grid_in = pl.contains("grid") ? pl["grid"] : json::object();
    WitnessGrid grid;
    grid.n_bar = get_int(grid_in, "n_bar", 1, "payload.grid", 0, 64);
    grid.i_bar = get_int(grid_in, "i_bar", 1, "payload.grid", 0, 64);
    grid.m_bar = get_int(grid_in, "m_bar", 0, "payload.grid", 0, 64);
    const int depth = get_int(pl, "depth", grid.i_bar, "payload", 0, 64);
    const AdelicForm w = build_form(c, pl, depth, grid.n_bar);
    const auto r = annihilator_witness(w, grid);
    json body{{"found", r.found},
              {"searched", r.searched},
              {"grid", {{"n_bar", grid.n_bar}, {"i_bar", grid.i_bar}, {"m_bar", grid.m_bar}}}};
    if (r.found) {
        body["witness"] = {{"n", r.n},
                           {"i", r.i},
                           {"m", r.m},
                           {"prime", r.prime ? prime_json(*r.prime) : json(nullptr)},
                           {"value", element_json(r.value)}};
    } else {
        body["witness"] = nullptr;
        body["status"] = "NoneFound";
    }
    return {body};
}

KSeries series_from(const FieldPtr &k, const std::vector<mpz_class> &c, int n_max)
{
    return KSeries::polynomial(kpoly::from_ints(k, c), k->zero(), n_max);
}

json roundtrip_json(const KSeries &diff, int hi)
{
    long defect = kExact;
    bool ok = true;
    for (int n = diff.lower(); n < std::min(hi, diff.upper()); ++n) {
        const auto x = diff.coeff(n);
        ok = ok && x.is_zero();
        for (const auto &co : x.coords()) {
            defect = std::min(defect, co.is_zero() ? co.precision() : co.valuation());
        }
    }
    return {{"ok", ok}, {"defect_valuation", valuation_json(defect)}, {"checked_below", hi}};
}

Result cmd_weierstrass(const Context &c)
{
    const json &pl = *c.payload;
    const auto coeffs = get_ints(pl, "series", "payload");
    const json &ex = pl.contains("exact") ? pl["exact"] : json(false);
    if (!ex.is_boolean()) {
        throw SchemaError("payload.exact: expected a boolean");
    }
    const int n_max = ex.get<bool>() ? kUntruncated : static_cast<int>(c.tmax);
    const auto g = series_from(c.k, coeffs, n_max);
    const int hi = g.truncated() ? g.n_max() : std::max(1, g.upper());
    json body;
    KSeries back;
    if (pl.contains("divisor")) {
        const auto p = distinguished_from_ints(c.k, get_ints(pl, "divisor", "payload"));
        const auto d = weierstrass_divide(g, p);
        const auto ps = KSeries::polynomial(p.coeffs, c.k->zero());
        back = d.quotient * ps + KSeries::polynomial(d.remainder, c.k->zero());
        json rem = json::array();
        for (const auto &x : d.remainder) {
            rem.push_back(element_json(x));
        }
        body = {{"mode", "divide"}, {"quotient", kseries_json(d.quotient)}, {"remainder", rem}};
    } else {
        const auto r = weierstrass_prepare(g);
        json dist = json::array();
        for (const auto &x : r.distinguished.coeffs) {
            dist.push_back(element_json(x));
        }
        back = (r.unit * KSeries::polynomial(r.distinguished.coeffs, c.k->zero()))
                   .scaled(c.k->uniformizer_power(r.pi_power));
        body = {{"mode", "prepare"},
                {"pi_power", r.pi_power},
                {"unit", kseries_json(r.unit)},
                {"distinguished", dist},
                {"irreducibility", irreducibility_name(r.distinguished.irreducibility())}};
    }
    const int check = std::min(hi, back.n_max());
    body["roundtrip"] = roundtrip_json(back - g, check);
    return {body, body["roundtrip"]["ok"].get<bool>() ? kOk : kViolation};
}

Result cmd_expand(const Context &c)
{
    const json &pl = *c.payload;
    const auto x = parse_rational(require(pl, "function", "payload"), "payload.function");
    const auto prime = parse_prime(c.k, require(pl, "prime", "payload"), "payload.prime");
    const json &fm = pl.contains("form") ? pl["form"] : json(false);
    if (!fm.is_boolean()) {
        throw SchemaError("payload.form: expected a boolean");
    }
    if (prime.is_special()) {
        const int n_min = get_int(pl, "n_min", -mixed_shape(c.k, x).extent(), "payload", -100000, 100000);
        const int n_max = get_int(pl, "n_max", c.tmax, "payload", -100000, 100000);
        if (n_min > n_max) {
            throw SchemaError("payload: n_min > n_max");
        }
        return {{{"prime", prime_json(prime)}, {"expansion", mixed_json(mixed_expand_rational(c.k, x, n_min, n_max))}}};
    }
    const int depth = get_int(pl, "depth", 4, "payload", 0, 256);
    const ClusterChart chart(c.k, *prime.poly, depth);
    const auto s = fm.get<bool>() ? chart.embed_form(x) : chart.embed(x);
    json modulus = json::array();
    for (const auto &m : chart.algebra()->modulus()) {
        modulus.push_back(element_json(m));
    }
    return {{{"prime", prime_json(prime)},
             {"depth", depth},
             {"algebra_modulus", modulus},
             {"hensel_loss", chart.hensel().loss},
             {"expansion", cluster_series_json(s)}}};
}

const std::map<std::string, std::function<Result(const Context &)>> &commands()
{
    static const std::map<std::string, std::function<Result(const Context &)>> table{
        {"residue", cmd_residue},         {"reciprocity", cmd_reciprocity}, {"reconstruct", cmd_reconstruct},
        {"witness", cmd_witness},         {"weierstrass", cmd_weierstrass}, {"expand", cmd_expand}};
    return table;
}

bool is_input_error(ErrorKind k)
{
    return k == ErrorKind::InvalidInput || k == ErrorKind::InvalidPrime || k == ErrorKind::NotIrreducibleCertified ||
           k == ErrorKind::NotSquarefree;
}

// Fills defaults and applies command-line overrides, so that the echo alone
// reproduces the run.
json normalize(json s, const std::string &command, const Overrides &o)
{
    if (!s.is_object()) {
        throw SchemaError("scenario: expected an object");
    }
    if (s.contains("command") && s["command"] != command) {
        throw SchemaError("scenario: command \"" + s["command"].dump() + "\" does not match \"" + command + "\"");
    }
    s["command"] = command;
    json &f = s["field"];
    if (!f.is_object()) {
        throw SchemaError("scenario.field: expected an object");
    }
    if (!f.contains("poly")) {
        f["poly"] = json::array({0, 1});
    }
    if (o.precision) {
        f["precision"] = *o.precision;
    }
    if (o.tmax) {
        f["tmax"] = *o.tmax;
    }
    if (!f.contains("precision")) {
        f["precision"] = 20;
    }
    if (!f.contains("tmax")) {
        f["tmax"] = 32;
    }
    if (o.seed) {
        s["seed"] = *o.seed;
    }
    if (!s.contains("seed")) {
        s["seed"] = std::uint64_t{0};
    }
    if (!s["seed"].is_number_integer() || (!s["seed"].is_number_unsigned() && s["seed"].get<long long>() < 0)) {
        throw SchemaError("scenario.seed: expected a non-negative integer");
    }
    if (!s.contains("payload")) {
        s["payload"] = json::object();
    }
    if (o.count) {
        if (!s["payload"].contains("corpus")) {
            throw SchemaError("--count applies only to corpus scenarios");
        }
        s["payload"]["corpus"]["count"] = *o.count;
    }
    return s;
}

} // namespace

std::string render(const json &report) { return report.dump(2) + "\n"; }

Outcome run_scenario(const std::string &command, const std::string &text, const Overrides &overrides)
{
    json report{{"command", command}, {"version", kVersion}};
    auto fail = [&report](int code, const std::string &kind, const std::string &msg) {
        report["error"] = {{"kind", kind}, {"message", msg}};
        report["exit_code"] = code;
        return Outcome{report, code};
    };
    const auto it = commands().find(command);
    if (it == commands().end()) {
        return fail(kInputError, "UnknownCommand", "unknown command \"" + command + "\"");
    }
    try {
        const json scenario = normalize(json::parse(text), command, overrides);
        report["scenario"] = scenario;
        const json &f = scenario["field"];
        Context c;
        const long precision = get_long(f, "precision", "scenario.field");
        if (precision < 1 || precision > 100000) {
            throw SchemaError("scenario.field.precision: must lie in [1, 100000]");
        }
        c.tmax = get_long(f, "tmax", "scenario.field");
        if (c.tmax < 1 || c.tmax > 100000) {
            throw SchemaError("scenario.field.tmax: must lie in [1, 100000]");
        }
        c.k = field_make(get_long(f, "p", "scenario.field"), get_ints(f, "poly", "scenario.field"), precision);
        c.seed = scenario["seed"].get<std::uint64_t>();
        c.payload = &scenario["payload"];
        Result r = it->second(c);
        report["result"] = std::move(r.body);
        report["exit_code"] = r.exit_code;
        return {report, r.exit_code};
    } catch (const json::exception &e) {
        return fail(kInputError, "SchemaError", e.what());
    } catch (const SchemaError &e) {
        return fail(kInputError, "SchemaError", e.what());
    } catch (const Error &e) {
        return fail(is_input_error(e.kind()) ? kInputError : kArithmeticError, std::string(error_name(e.kind())),
                    e.what());
    }
}

} // namespace res2d::cli
