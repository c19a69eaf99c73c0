#include "kn/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kn {

MarkedConfig config_from_json(const Json& j) {
    std::vector<Rat> in_points;
    std::vector<RiemannPoint> out_points;
    for (const auto& s : j.at("in_points")) {
        const RiemannPoint p = RiemannPoint::parse(s.get<std::string>());
        if (p.is_infinity())
            throw std::invalid_argument("config: in-points must be finite");
        in_points.push_back(p.value());
    }
    for (const auto& s : j.at("out_points"))
        out_points.push_back(RiemannPoint::parse(s.get<std::string>()));
    MarkedConfig cfg(std::move(in_points), std::move(out_points));
    cfg.require_valid();
    return cfg;
}

Json config_to_json(const MarkedConfig& cfg) {
    Json j;
    for (const auto& a : cfg.in_points()) j["in_points"].push_back(a.str());
    for (const auto& q : cfg.out_points()) j["out_points"].push_back(q.str());
    return j;
}

MarkedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    Json j;
    in >> j;
    return config_from_json(j);
}

namespace {

Poly poly_from_json(const Json& j) {
    std::vector<Rat> coeffs;
    for (const auto& s : j) coeffs.push_back(Rat::parse(s.get<std::string>()));
    return Poly::from_coeffs(coeffs);
}

Json poly_to_json(const Poly& p) {
    Json j = Json::array();
    for (int k = 0; k <= std::max(p.degree(), 0); ++k) j.push_back(p.coeff(k).str());
    return j;
}

}  // namespace

Form form_from_json(const Json& j) {
    const int weight = j.at("weight").get<int>();
    Poly num = poly_from_json(j.at("num"));
    Poly den = j.contains("den") ? poly_from_json(j.at("den")) : Poly(Rat(1));
    return Form{weight, RatFunc(num, den)};
}

Json form_to_json(const Form& f) {
    Json j;
    j["weight"] = f.weight;
    j["num"] = poly_to_json(f.func.num());
    j["den"] = poly_to_json(f.func.den());
    return j;
}

FinDimLie lie_from_json(const Json& j) {
    const int dim = j.at("dim").get<int>();
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> br(
        static_cast<size_t>(dim), std::vector<std::vector<std::pair<int, Rat>>>(static_cast<size_t>(dim)));
    for (const auto& row : j.at("brackets")) {
        const int i = row.at(0).get<int>();
        const int jj = row.at(1).get<int>();
        const int k = row.at(2).get<int>();
        br.at(static_cast<size_t>(i)).at(static_cast<size_t>(jj)).push_back(
            {k, Rat::parse(row.at(3).get<std::string>())});
    }
    std::vector<std::vector<Rat>> form;
    for (const auto& row : j.at("form")) {
        std::vector<Rat> r;
        for (const auto& s : row) r.push_back(Rat::parse(s.get<std::string>()));
        form.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& s : j.at("labels")) labels.push_back(s.get<std::string>());
    return FinDimLie(dim, std::move(br), std::move(form), std::move(labels));
}

Json expansion_to_json(const Expansion& ex) {
    Json j;
    j["weight"] = ex.weight;
    Json terms = Json::array();
    for (const auto& [key, c] : ex.coeff)
        terms.push_back({{"degree", key.first}, {"point", key.second}, {"coeff", c.str()}});
    j["terms"] = terms;
    return j;
}

Json structure_table_to_json(const StructureTable& table) {
    Json j;
    j["op"] = op_kind_name(table.op_kind);
    if (table.op_kind == OpKind::lie_derivative) j["lambda"] = table.lambda;
    j["window"] = {table.window.lo, table.window.hi};
    j["lower_shift"] = table.lower_shift;
    j["upper_shift"] = table.upper_shift;
    Json rows = Json::array();
    for (const auto& [pair_key, cell] : table.entries)
        for (const auto& [hk, c] : cell) {
            const auto& [lk, rk] = pair_key;
            rows.push_back({{"lpart", lk.part},
                            {"n", lk.degree},
                            {"p", lk.point},
                            {"rpart", rk.part},
                            {"m", rk.degree},
                            {"r", rk.point},
                            {"hpart", hk.part},
                            {"h", hk.degree},
                            {"t", hk.point},
                            {"coeff", c.str()}});
        }
    j["entries"] = rows;
    return j;
}

std::string structure_table_to_csv(const StructureTable& table) {
    std::ostringstream os;
    os << "lpart,n,p,rpart,m,r,hpart,h,t,coeff\n";
    for (const auto& [pair_key, cell] : table.entries)
        for (const auto& [hk, c] : cell) {
            const auto& [lk, rk] = pair_key;
            os << lk.part << "," << lk.degree << "," << lk.point << "," << rk.part << ","
               << rk.degree << "," << rk.point << "," << hk.part << "," << hk.degree << ","
               << hk.point << "," << c.str() << "\n";
        }
    return os.str();
}

Json locality_report_to_json(const LocalityReport& report) {
    Json j;
    j["level_window"] = {report.window.level_lo, report.window.level_hi};
    j["degree_window"] = {report.window.deg_lo, report.window.deg_hi};
    j["nonzero_levels"] = report.nonzero_levels;
    if (report.upper_bound)
        j["upper_bound"] = *report.upper_bound;
    else
        j["upper_bound"] = nullptr;
    if (report.lower_bound)
        j["lower_bound"] = *report.lower_bound;
    else
        j["lower_bound"] = nullptr;
    j["verdict"] = verdict_name(report.verdict);
    Json w = Json::object();
    for (const auto& [l, label] : report.witnesses) w[std::to_string(l)] = label;
    j["witnesses"] = w;
    return j;
}

Json matrix_to_json(const BandedWindowMatrix& m) {
    Json j;
    j["window"] = {m.window().lo, m.window().hi};
    j["band"] = m.band();
    Json triplets = Json::array();
    for (const auto& [key, v] : m.entries())
        triplets.push_back({key.first, key.second, v.str()});
    j["triplets"] = triplets;
    return j;
}

Json decomposition_to_json(const Decomposition& dec) {
    Json j;
    Json alphas = Json::array();
    for (const auto& a : dec.alpha) alphas.push_back(a.str());
    j["alpha"] = alphas;
    j["coboundary_kind"] = dec.cob.kind == CoboundaryData::Kind::V ? "V" : "W";
    Json terms = Json::array();
    for (const auto& [key, c] : dec.cob.terms)
        if (!c.is_zero())
            terms.push_back({{"degree", key.first}, {"point", key.second}, {"coeff", c.str()}});
    j["coboundary"] = terms;
    return j;
}

Json level_zero_to_json(const LevelZeroParams& params) {
    Json j;
    Json alphas = Json::array();
    for (const auto& a : params.alpha) alphas.push_back(a.str());
    j["alpha"] = alphas;
    Json bs = Json::array();
    for (const auto& b : params.b) bs.push_back(b.str());
    j["b"] = bs;
    return j;
}

void RunReport::add(const std::string& id, bool passed, const std::string& witness) {
    checks.push_back({id, passed, witness});
}

bool RunReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

Json run_report_to_json(const RunReport& report) {
    Json j;
    j["suite"] = report.suite;
    Json checks = Json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"id", c.id}, {"status", c.passed ? "pass" : "fail"},
                          {"witness", c.witness}});
    j["checks"] = checks;
    j["all_passed"] = report.all_passed();
    return j;
}

std::string run_report_to_csv(const RunReport& report) {
    std::ostringstream os;
    os << "id,status,witness\n";
    for (const auto& c : report.checks) {
        std::string w = c.witness;
        for (auto& ch : w)
            if (ch == ',') ch = ';';
        os << c.id << "," << (c.passed ? "pass" : "fail") << "," << w << "\n";
    }
    return os.str();
}

std::string run_report_to_markdown(const RunReport& report) {
    std::ostringstream os;
    os << "# " << report.suite << "\n\n| check | status | witness |\n|---|---|---|\n";
    for (const auto& c : report.checks)
        os << "| " << c.id << " | " << (c.passed ? "pass" : "fail") << " | " << c.witness
           << " |\n";
    os << "\n" << (report.all_passed() ? "all checks passed" : "FAILURES PRESENT") << "\n";
    return os.str();
}

ReportFormat parse_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "md") return ReportFormat::md;
    throw std::invalid_argument("unknown format: " + name);
}

std::string emit_report(const RunReport& report, ReportFormat format, const std::string& path) {
    std::string text;
    switch (format) {
        case ReportFormat::json: text = run_report_to_json(report).dump(2) + "\n"; break;
        case ReportFormat::csv: text = run_report_to_csv(report); break;
        case ReportFormat::md: text = run_report_to_markdown(report); break;
    }
    if (!path.empty()) write_text_file(path, text);
    return text;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace kn
