#include "sympcalc/chart_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sympcalc/expr.hpp"

namespace sympcalc {

using nlohmann::json;

ChartBundle load_chart_json(const std::string& json_text) {
    json j = json::parse(json_text);
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("chart: n must be positive");
    std::vector<std::string> coords =
        j.at("coords").get<std::vector<std::string>>();
    if (static_cast<int>(coords.size()) != 2 * n)
        throw std::invalid_argument("chart: expected 2n coordinates");
    VarsPtr vars = make_vars(coords);
    const int d = 2 * n;

    auto jm = j.at("J");
    if (!jm.is_array() || static_cast<int>(jm.size()) != d)
        throw std::invalid_argument("chart: J must be a 2n x 2n matrix");
    Tensor J(vars, {d, d});
    for (int a = 0; a < d; ++a) {
        if (static_cast<int>(jm[a].size()) != d)
            throw std::invalid_argument("chart: J must be a 2n x 2n matrix");
        for (int b = 0; b < d; ++b)
            J.at({a, b}) = parse_expr(jm[a][b].get<std::string>(), vars);
    }

    std::vector<Rational> base(d, Rational(0));
    if (j.contains("base_point")) {
        auto bp = j.at("base_point");
        if (static_cast<int>(bp.size()) != d)
            throw std::invalid_argument("chart: base point arity");
        for (int i = 0; i < d; ++i)
            base[i] = Rational::from_string(bp[i].get<std::string>());
    }

    const auto& conn = j.at("connection");
    if (conn.contains("metric")) {
        auto gm = conn.at("metric");
        Tensor g(vars, {d, d});
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                g.at({a, b}) = parse_expr(gm[a][b].get<std::string>(), vars);
        Chart chart(n, vars, std::move(J), std::move(base),
                    j.value("name", std::string("chart")));
        KahlerStructure ks(std::move(chart), std::move(g));
        return ChartBundle{ks.fed, std::move(ks)};
    }
    if (conn.contains("christoffel")) {
        Tensor gamma(vars, {d, d, d});
        for (const auto& entry : conn.at("christoffel")) {
            int c = entry.at("upper").get<int>();
            int a = entry.at("lower1").get<int>();
            int b = entry.at("lower2").get<int>();
            if (c < 0 || c >= d || a < 0 || a >= d || b < 0 || b >= d)
                throw std::invalid_argument("chart: christoffel index range");
            RatFunc v = parse_expr(entry.at("expr").get<std::string>(), vars);
            gamma.at({c, a, b}) = v;
        }
        Chart chart(n, vars, std::move(J), std::move(base),
                    j.value("name", std::string("chart")));
        FedosovStructure fed(std::move(chart), std::move(gamma));
        return ChartBundle{std::move(fed), std::nullopt};
    }
    throw std::invalid_argument(
        "chart: connection must carry 'christoffel' or 'metric'");
}

ChartBundle load_chart_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("chart: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_chart_json(ss.str());
}

std::string chart_to_json(const ChartBundle& cb) {
    const FedosovStructure& f = cb.fed;
    const int d = f.dim();
    json j;
    j["name"] = f.chart.name;
    j["n"] = f.n();
    j["coords"] = f.vars()->names;
    json jm = json::array();
    for (int a = 0; a < d; ++a) {
        json row = json::array();
        for (int b = 0; b < d; ++b)
            row.push_back(f.chart.space.J_lower.at({a, b}).to_string());
        jm.push_back(row);
    }
    j["J"] = jm;
    json bp = json::array();
    for (const auto& r : f.chart.base_point) bp.push_back(r.to_string());
    j["base_point"] = bp;
    if (cb.kahler) {
        json gm = json::array();
        for (int a = 0; a < d; ++a) {
            json row = json::array();
            for (int b = 0; b < d; ++b)
                row.push_back(cb.kahler->g.at({a, b}).to_string());
            gm.push_back(row);
        }
        j["connection"] = json{{"metric", gm}};
    } else {
        json list = json::array();
        for (int c = 0; c < d; ++c)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    const RatFunc& v = f.gamma.at({c, a, b});
                    if (v.is_zero()) continue;
                    list.push_back(json{{"upper", c},
                                        {"lower1", a},
                                        {"lower2", b},
                                        {"expr", v.to_string()}});
                }
        j["connection"] = json{{"christoffel", list}};
    }
    return j.dump(2);
}

ChartBundle resolve_chart(const std::string& spec, int n) {
    if (spec.rfind("builtin:", 0) == 0)
        return builtin_chart(spec.substr(8), n);
    return load_chart_file(spec);
}

}  // namespace sympcalc
