#include "finabel/json_io.hpp"

#include <utility>

#include "finabel/error.hpp"

namespace finabel {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    fail(Errc::parse_error, path + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path, "missing field \"" + std::string(key) + "\"");
    return *it;
}

std::int64_t need_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<std::int64_t>();
}

const Json& need_array(const Json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    return j;
}

std::string at(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const char* method_name(IndepMethod m) {
    return m == IndepMethod::pmf ? "pmf" : "charfn";
}

}  // namespace

Json to_json(const Group& g) {
    Json j = Json::object();
    j["moduli"] = g.moduli();
    return j;
}

Json to_json(const Element& e) { return Json(e.c); }

Json to_json(const Rat& r) { return Json(r.str()); }

Json to_json(const Cyclo& c) {
    if (c.is_rational()) return to_json(c.rational_value());
    Json j = Json::object();
    j["zeta"] = c.modulus();
    Json coeffs = Json::array();
    for (const Rat& r : c.coords()) coeffs.push_back(to_json(r));
    j["coeffs"] = std::move(coeffs);
    return j;
}

Json to_json(const Subgroup& s) {
    // A greedy minimal generating list: every member not yet spanned extends
    // the list, so parsing the generators back reproduces the subgroup.
    const Group& g = s.parent();
    std::vector<Element> generators;
    Subgroup span = trivial_subgroup(g);
    for (const Element& x : s.members())
        if (!span.contains(x)) {
            generators.push_back(x);
            span = subgroup_generate(g, generators);
        }
    Json j = Json::object();
    Json gens = Json::array();
    for (const Element& x : generators) gens.push_back(to_json(x));
    j["generators"] = std::move(gens);
    Json members = Json::array();
    for (const Element& x : s.members()) members.push_back(to_json(x));
    j["members"] = std::move(members);
    j["order"] = s.order();
    return j;
}

Json to_json(const Homomorphism& h) {
    Json j = Json::object();
    j["matrix"] = h.matrix();
    return j;
}

Json to_json(const FormSystem& fs) {
    Json j = Json::object();
    j["n"] = fs.n;
    j["k"] = fs.k;
    Json rows = Json::array();
    for (const auto& row : fs.coeffs) {
        Json cols = Json::array();
        for (const Homomorphism& h : row) cols.push_back(Json(h.matrix()));
        rows.push_back(std::move(cols));
    }
    j["coeffs"] = std::move(rows);
    return j;
}

Json to_json(const Distribution& d) {
    Json j = Json::object();
    j["group"] = to_json(d.group());
    Json pmf = Json::array();
    for (const Cyclo& m : d.pmf()) pmf.push_back(to_json(m));
    j["pmf"] = std::move(pmf);
    return j;
}

Json to_json(const CharFnTable& t) {
    Json j = Json::object();
    j["group"] = to_json(t.group());
    Json values = Json::array();
    for (const Cyclo& v : t.values()) values.push_back(to_json(v));
    j["values"] = std::move(values);
    return j;
}

Json to_json(const IdempotentClassification& c) {
    Json j = Json::object();
    j["idempotent"] = c.is_idempotent;
    if (c.subgroup) j["subgroup"] = to_json(*c.subgroup);
    if (c.shift) j["shift"] = to_json(*c.shift);
    return j;
}

Json to_json(const IndependenceReport& r) {
    Json j = Json::object();
    j["independent"] = r.independent;
    j["method"] = method_name(r.method);
    if (r.witness) {
        Json w = Json::object();
        Json tuple = Json::array();
        for (const Element& e : r.witness->tuple) tuple.push_back(to_json(e));
        w["tuple"] = std::move(tuple);
        w["lhs"] = to_json(r.witness->lhs);
        w["rhs"] = to_json(r.witness->rhs);
        j["witness"] = std::move(w);
    }
    return j;
}

Json to_json(const Thm1Violation& v) {
    Json j = Json::object();
    Json dists = Json::array();
    for (const Distribution& d : v.dists) dists.push_back(to_json(d));
    j["dists"] = std::move(dists);
    j["forms"] = to_json(v.forms);
    j["pmf_independent"] = v.pmf_independent;
    j["charfn_independent"] = v.charfn_independent;
    Json cls = Json::array();
    for (const IdempotentClassification& c : v.classifications)
        cls.push_back(to_json(c));
    j["classifications"] = std::move(cls);
    return j;
}

Json to_json(const VerificationReport& r) {
    Json j = Json::object();
    j["group"] = to_json(r.group);
    j["n"] = r.n;
    j["mode"] = r.mode == Thm1Mode::exhaustive ? "exhaustive" : "sampled";
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["coefficient_tuples"] = r.coefficient_tuples;
    j["instances_checked"] = r.instances_checked;
    j["independent_instances"] = r.independent_instances;
    j["idempotent_confirmations"] = r.idempotent_confirmations;
    j["remark1_checked"] = r.remark1_checked;
    j["remark1_failures"] = r.remark1_failures;
    Json violations = Json::array();
    for (const Thm1Violation& v : r.violations) violations.push_back(to_json(v));
    j["violations"] = std::move(violations);
    return j;
}

Json to_json(const Corollary1Report& r) {
    Json j = Json::object();
    Json fs = Json::array();
    for (const Subgroup& s : r.f_subgroups) fs.push_back(to_json(s));
    j["f_subgroups"] = std::move(fs);
    j["all_trivial"] = r.all_trivial;
    if (r.common_invariant) j["common_invariant"] = to_json(*r.common_invariant);
    return j;
}

Json to_json(const CounterexampleBundle& b) {
    Json j = Json::object();
    j["group"] = to_json(b.group);
    Json dists = Json::array();
    for (const Distribution& d : b.dists) dists.push_back(to_json(d));
    j["dists"] = std::move(dists);
    j["forms"] = to_json(b.forms);
    j["forms_independent"] = b.forms_independent;
    j["pmf_checked"] = b.pmf_checked;
    if (b.pmf_checked) j["pmf_independent"] = b.pmf_independent;
    j["all_nonidempotent"] = b.all_nonidempotent;
    j["full_support"] = b.full_support;
    return j;
}

Group group_from_json(const Json& j, const std::string& path) {
    const Json& moduli = need_array(need(j, "moduli", path), path + ".moduli");
    std::vector<std::int64_t> m;
    m.reserve(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
        m.push_back(need_int(moduli[i], at(path + ".moduli", i)));
    return make_group(m);
}

Element element_from_json(const Group& g, const Json& j, const std::string& path) {
    need_array(j, path);
    Element e;
    e.c.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        e.c.push_back(need_int(j[i], at(path, i)));
    g.require_valid(e);
    return e;
}

Rat rat_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (!j.is_string()) bad(path, "expected a rational string");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const std::exception&) {
        bad(path, "not a valid rational: \"" + j.get<std::string>() + "\"");
    }
}

Cyclo cyclo_from_json(const Json& j, const std::string& path) {
    if (j.is_string() || j.is_number_integer())
        return Cyclo(rat_from_json(j, path));
    if (!j.is_object()) bad(path, "expected a rational string or a zeta object");
    const std::int64_t m = need_int(need(j, "zeta", path), path + ".zeta");
    if (m < 1) bad(path + ".zeta", "modulus must be positive");
    const Json& coeffs = need_array(need(j, "coeffs", path), path + ".coeffs");
    if (static_cast<std::int64_t>(coeffs.size()) != euler_phi(m))
        bad(path + ".coeffs", "expected " + std::to_string(euler_phi(m)) +
                                  " coordinates for zeta_" + std::to_string(m));
    Cyclo acc(Rat(0), m);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        acc += Cyclo(rat_from_json(coeffs[i], at(path + ".coeffs", i)), m) *
               Cyclo::root_power(m, static_cast<std::int64_t>(i));
    return acc;
}

Subgroup subgroup_from_json(const Group& g, const Json& j, const std::string& path) {
    const Json& gens = need_array(need(j, "generators", path), path + ".generators");
    std::vector<Element> elements;
    elements.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        elements.push_back(element_from_json(g, gens[i], at(path + ".generators", i)));
    return subgroup_generate(g, elements);
}

Homomorphism homomorphism_from_json(const Group& g, const Json& j,
                                    const std::string& path) {
    const Json& rows = j.is_object() ? need(j, "matrix", path) : j;
    const std::string rows_path = j.is_object() ? path + ".matrix" : path;
    need_array(rows, rows_path);
    std::vector<std::vector<std::int64_t>> m;
    m.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Json& row = need_array(rows[r], at(rows_path, r));
        std::vector<std::int64_t> out;
        out.reserve(row.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            out.push_back(need_int(row[c], at(at(rows_path, r), c)));
        m.push_back(std::move(out));
    }
    return make_homomorphism(g, std::move(m));
}

FormSystem form_system_from_json(const Group& g, const Json& j,
                                 const std::string& path) {
    const std::int64_t n = need_int(need(j, "n", path), path + ".n");
    const std::int64_t k = need_int(need(j, "k", path), path + ".k");
    const Json& rows = need_array(need(j, "coeffs", path), path + ".coeffs");
    if (static_cast<std::int64_t>(rows.size()) != k)
        bad(path + ".coeffs",
            "expected " + std::to_string(k) + " rows, got " + std::to_string(rows.size()));
    std::vector<std::vector<Homomorphism>> grid;
    grid.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string row_path = at(path + ".coeffs", r);
        const Json& row = need_array(rows[r], row_path);
        if (static_cast<std::int64_t>(row.size()) != n)
            bad(row_path, "expected " + std::to_string(n) + " coefficients, got " +
                              std::to_string(row.size()));
        std::vector<Homomorphism> out;
        out.reserve(row.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            out.push_back(homomorphism_from_json(g, row[c], at(row_path, c)));
        grid.push_back(std::move(out));
    }
    return make_form_system(g, std::move(grid));
}

Distribution distribution_from_json(const Json& j, const std::string& path) {
    Group g = group_from_json(need(j, "group", path), path + ".group");
    return distribution_from_json(g, j, path);
}

Distribution distribution_from_json(const Group& g, const Json& j,
                                    const std::string& path) {
    const Json* pmf = &j;
    std::string pmf_path = path;
    if (j.is_object()) {
        if (j.contains("group")) {
            Group embedded = group_from_json(j["group"], path + ".group");
            if (!(embedded == g))
                bad(path + ".group", "embedded group " + embedded.str() +
                                         " does not match the expected " + g.str());
        }
        pmf = &need(j, "pmf", path);
        pmf_path = path + ".pmf";
    }
    need_array(*pmf, pmf_path);
    std::vector<Cyclo> masses;
    masses.reserve(pmf->size());
    for (std::size_t i = 0; i < pmf->size(); ++i)
        masses.push_back(cyclo_from_json((*pmf)[i], at(pmf_path, i)));
    return make_distribution(g, std::move(masses));
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace finabel
