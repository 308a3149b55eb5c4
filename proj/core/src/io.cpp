#include "k3forms/io.hpp"
#include "k3forms/errors.hpp"

#include <cstdio>

namespace k3 {

using nlohmann::json;

namespace {

const json& require_key(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::vector<Rational> parse_rational_array(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw InputError(std::string(what) + " must be a non-empty array");
    std::vector<Rational> out;
    for (const json& e : j) out.push_back(parse_rational_json(e));
    return out;
}

struct FieldDescriptor {
    std::optional<FieldPtr> tr;
    std::optional<CMFieldPtr> cm;
};

FieldDescriptor parse_field(const json& j) {
    std::string type = require_key(j, "type").get<std::string>();
    FieldDescriptor out;
    if (type == "totally_real") {
        Poly minpoly(parse_rational_array(require_key(j, "minpoly"), "minpoly"));
        FieldPtr f = NumberField::make(std::move(minpoly));
        if (!f->is_totally_real())
            throw InputError("minpoly does not define a totally real field");
        out.tr = std::move(f);
    } else if (type == "cm") {
        Poly minpoly(parse_rational_array(require_key(j, "base_minpoly"), "base_minpoly"));
        FieldPtr base = NumberField::make(std::move(minpoly));
        if (!base->is_totally_real())
            throw InputError("base_minpoly does not define a totally real field");
        std::vector<Rational> t = parse_rational_array(require_key(j, "theta_squared"), "theta_squared");
        if (static_cast<int>(t.size()) != base->degree())
            throw InputError("theta_squared must have one coefficient per base-field basis element");
        out.cm = CMField::make(base, base->element(std::move(t)));
    } else {
        throw InputError("field type must be \"totally_real\" or \"cm\"");
    }
    return out;
}

template <class Elem, class MakeElem>
std::vector<std::vector<Elem>> parse_form(const json& form, int elem_len, MakeElem make_elem) {
    std::vector<std::vector<Elem>> g;
    auto elem_of = [&](const json& e) {
        std::vector<Rational> c = parse_rational_array(e, "element");
        if (static_cast<int>(c.size()) != elem_len)
            throw InputError("element coefficient vector does not match the field degree");
        return make_elem(std::move(c));
    };
    if (form.contains("diagonal")) {
        const json& d = require_key(form, "diagonal");
        if (!d.is_array() || d.empty()) throw InputError("diagonal must be a non-empty array");
        size_t m = d.size();
        for (size_t i = 0; i < m; ++i) {
            std::vector<Elem> row;
            for (size_t k = 0; k < m; ++k)
                row.push_back(i == k ? elem_of(d[i]) : make_elem(std::vector<Rational>(
                                                           static_cast<size_t>(elem_len), Rational(0))));
            g.push_back(std::move(row));
        }
    } else if (form.contains("gram")) {
        const json& rows = require_key(form, "gram");
        if (!rows.is_array() || rows.empty()) throw InputError("gram must be a non-empty array");
        for (const json& r : rows) {
            if (!r.is_array() || r.size() != rows.size())
                throw InputError("gram must be square");
            std::vector<Elem> row;
            for (const json& e : r) row.push_back(elem_of(e));
            g.push_back(std::move(row));
        }
    } else {
        throw InputError("form needs a \"diagonal\" or \"gram\" key");
    }
    return g;
}

} // namespace

Rational parse_rational_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    throw InputError("rationals must be \"p/q\" strings or integers");
}

ParsedProblem parse_problem_json(const json& j) {
    if (!j.is_object()) throw InputError("problem must be a JSON object");
    ParsedProblem out;
    if (j.contains("options")) {
        const json& o = j.at("options");
        if (!o.is_object()) throw InputError("options must be an object");
        if (o.contains("seed")) out.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("tolerance")) out.tolerance = o.at("tolerance").get<double>();
    }
    if (j.contains("field")) {
        FieldDescriptor fd = parse_field(j.at("field"));
        const json& form = require_key(j, "form");
        if (fd.tr) {
            const FieldPtr& f = *fd.tr;
            TRGram g = parse_form<FieldElement>(form, f->degree(), [&](std::vector<Rational> c) {
                return f->element(std::move(c));
            });
            out.hermitian = HermitianSpace::make(f, std::move(g));
        } else {
            const CMFieldPtr& f = *fd.cm;
            CMGram g = parse_form<CMElement>(form, f->degree(), [&](std::vector<Rational> c) {
                return f->from_coeffs(c);
            });
            out.hermitian = HermitianSpace::make(f, std::move(g));
        }
        return out;
    }
    if (j.contains("gram")) {
        const json& rows = j.at("gram");
        if (!rows.is_array() || rows.empty()) throw InputError("gram must be a non-empty array");
        QMatrix g;
        for (const json& r : rows) {
            if (!r.is_array() || r.size() != rows.size()) throw InputError("gram must be square");
            std::vector<Rational> row;
            for (const json& e : r) row.push_back(parse_rational_json(e));
            g.push_back(std::move(row));
        }
        out.quadratic = QuadraticSpace(std::move(g));
        return out;
    }
    throw InputError("problem needs a \"field\" + \"form\" pair or a raw \"gram\"");
}

json rational_json(const Rational& q) { return json(format_rational(q)); }

json gram_json(const QuadraticSpace& s) {
    json rows = json::array();
    for (const auto& r : s.gram()) {
        json row = json::array();
        for (const Rational& e : r) row.push_back(rational_json(e));
        rows.push_back(std::move(row));
    }
    return json{{"gram", std::move(rows)}};
}

json invariants_json(const QuadraticSpace& s) {
    json hasse = json::object();
    for (const auto& [p, v] : s.hasse().support()) hasse[p.get_str()] = v;
    const Integer& d = s.disc().representative();
    json disc;
    if (d.fits_slong_p())
        disc = static_cast<std::int64_t>(d.get_si());
    else
        disc = d.get_str();
    return json{{"rank", s.rank()},
                {"signature", json::array({s.signature().plus, s.signature().minus})},
                {"disc", std::move(disc)},
                {"hasse", std::move(hasse)}};
}

json verdict_json(const K3Verdict& v) {
    json conds = json::array();
    for (const ConditionRecord& c : v.conditions)
        conds.push_back(json{{"name", c.name}, {"passed", c.passed}, {"details", c.details}});
    return json{{"is_k3_type", v.is_k3_type},
                {"route", v.route},
                {"conditions", std::move(conds)},
                {"warnings", v.warnings}};
}

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json witness_json(const PeriodWitness& w) {
    auto float_array = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(format_float(x));
        return a;
    };
    json out{{"sigma0", w.sigma0},
             {"case", w.case_label},
             {"f_real", float_array(w.f_real)},
             {"f_imag", float_array(w.f_imag)},
             {"bff_residual", format_float(w.bff_residual)},
             {"bfbar", format_float(w.bfbar)},
             {"tolerance", format_float(w.tolerance)}};
    if (w.x3) out["x3"] = format_float(*w.x3);
    return out;
}

json admissible_json(const AdmissiblePairs& p) {
    auto pairs = [](const std::set<std::pair<int, int>>& s) {
        json a = json::array();
        for (const auto& [m, r] : s) a.push_back(json::array({m, r}));
        return a;
    };
    return json{{"necessary", pairs(p.necessary)}, {"sufficient", pairs(p.sufficient)}};
}

json obstruction_json(const Case3Obstruction& o) {
    json alpha = json::array();
    for (const auto& row : o.alpha) {
        json r = json::array();
        for (const FieldElement& e : row) {
            json coeffs = json::array();
            for (const Rational& c : e.coeffs()) coeffs.push_back(rational_json(c));
            r.push_back(std::move(coeffs));
        }
        alpha.push_back(std::move(r));
    }
    return json{{"alpha", std::move(alpha)},
                {"eigenvalue", format_float(o.eigenvalue)},
                {"residual", format_float(o.residual)}};
}

} // namespace k3
