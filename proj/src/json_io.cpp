#include "telsig/json_io.hpp"

namespace telsig {

json poly_to_json(const GradedPoly& p) {
    json terms = json::array();
    for (const auto& [exp, coeff] : p.terms()) {
        json t;
        t["e"] = exp;
        t["c"] = coeff.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

GradedPoly poly_from_json(const json& j, const VarTablePtr& vars) {
    GradedPoly p(vars);
    for (const auto& t : j) {
        Exp e = t.at("e").get<std::vector<uint32_t>>();
        p += GradedPoly::monomial(vars, std::move(e), Rational(t.at("c").get<std::string>()));
    }
    return p;
}

json vartable_to_json(const VarTable& t) {
    json vars = json::array();
    for (size_t i = 0; i < t.size(); ++i)
        vars.push_back(json{{"name", t.name(i)}, {"weight", t.weight(i)}});
    return vars;
}

VarTablePtr vartable_from_json(const json& j) {
    std::vector<VarTable::Var> vars;
    for (const auto& v : j)
        vars.push_back({v.at("name").get<std::string>(), v.at("weight").get<long>()});
    return make_vartable(std::move(vars));
}

json series_to_json(const Series& s) {
    json out;
    out["val"] = s.valuation();
    out["exact"] = s.is_exact();
    if (!s.is_exact()) out["trunc"] = s.truncation();
    json coeffs = json::array();
    for (int k = s.valuation(); k < s.window_end(); ++k) coeffs.push_back(poly_to_json(s.coeff(k)));
    out["coeffs"] = std::move(coeffs);
    return out;
}

Series series_from_json(const json& j, const VarTablePtr& vars) {
    int val = j.at("val").get<int>();
    bool exact = j.at("exact").get<bool>();
    std::vector<GradedPoly> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(poly_from_json(c, vars));
    int trunc = exact ? Series::kExactOrder : j.at("trunc").get<int>();
    if (exact) {
        Series s = Series::exact_zero(vars);
        for (size_t i = 0; i < coeffs.size(); ++i)
            s += Series::monomial(vars, val + static_cast<int>(i), coeffs[i]);
        return s;
    }
    return Series::from_coeffs(vars, val, std::move(coeffs), trunc);
}

json semigroup_report(const std::vector<long>& a) {
    json out;
    out["a"] = a;
    FrobeniusInfo fi = frobenius_info(a);
    out["frobenius"] = fi.frobenius;
    out["brauer_bound"] = fi.brauer_bound;
    bool tel = is_telescopic(a);
    out["telescopic"] = tel;
    if (tel) {
        SemigroupData sg = SemigroupData::analyze(a);
        out["d"] = sg.gcd_chain();
        out["gaps"] = sg.gaps();
        out["genus"] = sg.genus();
        out["partition"] = sg.partition().parts;
    }
    return out;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

} // namespace telsig
