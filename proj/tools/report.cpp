#include "report.hpp"

#include <charconv>
#include <fstream>

#include "strichartz/errors.hpp"

namespace strichartz::cli {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw InvalidArgument("complex value must be a number or [re, im]");
}

json to_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

json to_json(const Grid& g) {
    json pts = json::array(), ext = json::array();
    for (int a = 0; a < g.dim; ++a) {
        pts.push_back(g.points[static_cast<std::size_t>(a)]);
        ext.push_back(g.extent[static_cast<std::size_t>(a)]);
    }
    return {{"dim", g.dim}, {"points_per_axis", pts}, {"extent", ext}};
}

json to_json(const TimeSamples& t) { return {{"count", t.count}, {"half_width", t.half_width}}; }

json to_json(const QuotientReport& r) {
    json j = {{"method", r.method},
              {"p", r.p},
              {"lp_norm", r.lp_norm},
              {"data_norm", r.data_norm},
              {"quotient", r.quotient},
              {"spatial_boundary_fraction", r.spatial_boundary_fraction},
              {"temporal_boundary_fraction", r.temporal_boundary_fraction},
              {"alias_fraction", r.alias_fraction},
              {"error_estimate", r.error_estimate}};
    if (r.has_grid) {
        j["grid"] = to_json(r.grid);
        j["times"] = to_json(r.times);
    }
    return j;
}

json to_json(const ExpQuadraticParams& p) {
    return {{"A", to_json(p.A)},
            {"b", to_json(p.b)},
            {"C", to_json(p.C)},
            {"space", p.space == Space::physical ? "physical" : "frequency"}};
}

json to_json(const ConeExpParams& p) {
    return {{"A", to_json(p.A)}, {"b", to_json(p.b)}, {"C", to_json(p.C)}, {"D", to_json(p.D)}};
}

namespace {

std::vector<cplx> vec_from_json(const json& j) {
    if (!j.is_array()) throw InvalidArgument("b must be an array");
    std::vector<cplx> v;
    for (const auto& e : j) v.push_back(complex_from_json(e));
    return v;
}

}  // namespace

ExpQuadraticParams gaussian_from_json(const json& j) {
    ExpQuadraticParams p;
    p.A = complex_from_json(j.at("A"));
    p.b = vec_from_json(j.at("b"));
    p.C = j.contains("C") ? complex_from_json(j.at("C")) : cplx{0.0, 0.0};
    const std::string sp = j.value("space", "physical");
    if (sp != "physical" && sp != "frequency") throw InvalidArgument("space must be physical or frequency");
    p.space = sp == "physical" ? Space::physical : Space::frequency;
    p.validate();
    return p;
}

ConeExpParams cone_from_json(const json& j) {
    ConeExpParams p;
    p.A = complex_from_json(j.at("A"));
    p.b = vec_from_json(j.at("b"));
    p.dim = static_cast<int>(p.b.size());
    p.C = j.contains("C") ? complex_from_json(j.at("C")) : cplx{0.0, 0.0};
    p.D = j.contains("D") ? complex_from_json(j.at("D")) : cplx{0.0, 0.0};
    p.validate();
    return p;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void emit(const json& j, const std::string& path, std::ostream& os) {
    if (path.empty()) {
        os << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + path);
    f << j.dump(2) << '\n';
}

}  // namespace strichartz::cli
