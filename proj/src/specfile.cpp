#include "transcend/specfile.hpp"

#include <fstream>

#include "json.hpp"

#include "transcend/errors.hpp"

namespace transcend {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad_spec(const std::string& what) {
    throw usage_error("spec-file", what);
}

Rational json_rational(const ojson& v, const char* where) {
    if (!v.is_string()) bad_spec(std::string(where) + " must be an exact rational string");
    return parse_rational(v.get<std::string>());
}

FieldElement json_element(const ojson& v, const SpecFile& spec, const char* where) {
    std::vector<Rational> coords;
    if (v.is_string()) {
        coords.push_back(json_rational(v, where));
    } else if (v.is_array()) {
        for (const auto& c : v) coords.push_back(json_rational(c, where));
    } else {
        bad_spec(std::string(where) + " must be a rational string or coordinate array");
    }
    if (!spec.field) {
        if (coords.size() != 1)
            bad_spec(std::string(where) + " has field coordinates but no field is declared");
        return FieldElement(coords[0]);
    }
    coords.resize(spec.field->degree(), Rational(0));
    return FieldElement(spec.field, coords);
}

Poly<FieldElement> json_poly(const ojson& v, const SpecFile& spec, const char* where) {
    if (!v.is_array()) bad_spec(std::string(where) + " must be a coefficient array");
    std::vector<FieldElement> cs;
    for (const auto& c : v) cs.push_back(json_element(c, spec, where));
    return Poly<FieldElement>(cs);
}

Exponents json_exponents(const ojson& v, size_t m, const char* where) {
    if (!v.is_array() || v.size() != m)
        bad_spec(std::string(where) + " exponent tuples must list one entry per function");
    Exponents e;
    for (const auto& x : v) {
        if (!x.is_number_integer() || x.get<int>() < 0)
            bad_spec(std::string(where) + " exponents must be nonnegative integers");
        e.push_back(x.get<int>());
    }
    return e;
}

MultiPoly<FieldElement> json_relation(const ojson& v, const SpecFile& spec, size_t m) {
    if (!v.is_array()) bad_spec("value_relations entries must be arrays of terms");
    MultiPoly<FieldElement> p(static_cast<int>(m));
    for (const auto& term : v) {
        if (!term.is_object() || !term.contains("exps") || !term.contains("coeff"))
            bad_spec("relation terms need \"exps\" and \"coeff\"");
        p.add_term(json_exponents(term["exps"], m, "value_relations"),
                   json_element(term["coeff"], spec, "value_relations"));
    }
    return p;
}

MultiPoly<Integer> json_probe(const ojson& v, size_t m) {
    if (!v.is_array()) bad_spec("probe must be an array of terms");
    MultiPoly<Integer> p(static_cast<int>(m));
    for (const auto& term : v) {
        if (!term.is_object() || !term.contains("exps") || !term.contains("coeff"))
            bad_spec("probe terms need \"exps\" and \"coeff\"");
        Rational c = json_rational(term["coeff"], "probe");
        if (c.get_den() != 1) bad_spec("probe coefficients must be integers");
        p.add_term(json_exponents(term["exps"], m, "probe"), Integer(c.get_num()));
    }
    return p;
}

FunctionSpec json_function(const ojson& v, const SpecFile& spec, size_t index) {
    if (!v.is_object()) bad_spec("functions entries must be objects");
    FunctionSpec f;
    f.name = v.value("name", "f" + std::to_string(index + 1));
    std::string kind = v.value("kind", "differential");
    if (kind == "differential") {
        f.kind = SystemKind::differential;
    } else if (kind == "mahler") {
        f.kind = SystemKind::mahler;
        if (!v.contains("q") || !v["q"].is_number_integer())
            bad_spec("mahler function " + f.name + " needs an integer radix q");
        f.q = v["q"].get<long>();
    } else {
        bad_spec("unknown kind \"" + kind + "\" for function " + f.name);
    }
    if (!v.contains("coeffs") || !v["coeffs"].is_array() || v["coeffs"].empty())
        bad_spec("function " + f.name + " needs a nonempty coeffs array");
    for (const auto& c : v["coeffs"]) f.coeffs.push_back(json_poly(c, spec, "coeffs"));
    if (!v.contains("initial") || !v["initial"].is_array())
        bad_spec("function " + f.name + " needs an initial coefficient array");
    for (const auto& c : v["initial"]) f.initial.push_back(json_element(c, spec, "initial"));
    if (v.contains("growth_C")) f.growth_C = json_rational(v["growth_C"], "growth_C");
    if (v.contains("growth_B")) f.growth_B = json_rational(v["growth_B"], "growth_B");
    if (v.contains("growth_G")) f.growth_G = json_rational(v["growth_G"], "growth_G");
    f.validate();
    return f;
}

} // namespace

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("spec-file", "cannot open " + path);
    ojson doc;
    try {
        doc = ojson::parse(in);
    } catch (const std::exception& e) {
        throw usage_error("parse", std::string("invalid JSON in ") + path + ": " + e.what());
    }
    if (!doc.is_object()) bad_spec("top level must be an object");

    SpecFile spec;
    spec.path = path;
    if (doc.contains("field")) {
        const ojson& fd = doc["field"];
        if (!fd.is_object() || !fd.contains("minpoly") || !fd["minpoly"].is_array())
            bad_spec("field needs a minpoly coefficient array");
        // minpoly is written leading-coefficient first (monic), per the
        // published format; internal storage is ascending.
        std::vector<Rational> desc;
        for (const auto& c : fd["minpoly"]) desc.push_back(json_rational(c, "minpoly"));
        std::vector<Rational> asc(desc.rbegin(), desc.rend());
        spec.field = NumberField::create(asc);
    }
    if (!doc.contains("functions") || !doc["functions"].is_array() || doc["functions"].empty())
        bad_spec("spec needs a nonempty functions array");
    for (size_t i = 0; i < doc["functions"].size(); ++i)
        spec.functions.push_back(json_function(doc["functions"][i], spec, i));
    for (size_t i = 1; i < spec.functions.size(); ++i) {
        if (spec.functions[i].kind != spec.functions[0].kind)
            bad_spec("all functions must share one kind");
        if (spec.functions[i].kind == SystemKind::mahler &&
            spec.functions[i].q != spec.functions[0].q)
            bad_spec("all mahler functions must share the radix q");
    }
    spec.alpha = doc.contains("alpha") ? json_element(doc["alpha"], spec, "alpha")
                                       : FieldElement(Rational(0));
    if (doc.contains("declared_t")) {
        if (!doc["declared_t"].is_number_integer() || doc["declared_t"].get<int>() < 1)
            bad_spec("declared_t must be a positive integer");
        spec.declared_t = doc["declared_t"].get<int>();
    }
    if (doc.contains("embedding")) {
        if (!doc["embedding"].is_number_integer() || doc["embedding"].get<int>() < 0)
            bad_spec("embedding must be a nonnegative integer");
        spec.embedding = doc["embedding"].get<int>();
    }
    if (doc.contains("value_relations")) {
        if (!doc["value_relations"].is_array()) bad_spec("value_relations must be an array");
        for (const auto& r : doc["value_relations"])
            spec.value_relations.push_back(json_relation(r, spec, spec.functions.size()));
    }
    if (doc.contains("probe")) spec.probe = json_probe(doc["probe"], spec.functions.size());
    if (doc.contains("defaults")) {
        const ojson& d = doc["defaults"];
        if (!d.is_object()) bad_spec("defaults must be an object");
        if (d.contains("precision")) {
            if (!d["precision"].is_number_integer() || d["precision"].get<long>() < 8)
                bad_spec("defaults.precision must be an integer >= 8");
            spec.precision = d["precision"].get<long>();
        }
        if (d.contains("epsilon")) spec.epsilon = json_rational(d["epsilon"], "epsilon");
        if (d.contains("margin")) {
            if (!d["margin"].is_number_integer() || d["margin"].get<long>() < 1)
                bad_spec("defaults.margin must be a positive integer");
            spec.margin = d["margin"].get<long>();
        }
    }
    return spec;
}

} // namespace transcend
