// knc - exact computations with multi-point Krichever-Novikov algebras on
// the Riemann sphere: graded bases, pairings, structure tables, geometric
// cocycles, locality scans, decompositions, the matrix-algebra pullback and
// affine extensions.
//
// Exit codes: 0 all checks passed, 1 verification failure, 2 usage error.

#include "kn/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace kn;

MarkedConfig resolve_config(const std::string& config_arg) {
    for (const auto& name : verify::stock_config_names())
        if (config_arg == name) return verify::stock_config(name);
    return load_config(config_arg);
}

void emit(const RunReport& report, const std::string& format, const std::string& out_path) {
    const std::string text = emit_report(report, parse_format(format), out_path);
    if (out_path.empty())
        std::cout << text;
    else
        std::cout << "wrote " << out_path << "\n";
}

int thread_cap() {
    if (const char* env = std::getenv("KNC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Krichever-Novikov algebra calculator"};
    app.require_subcommand(1);
    (void)thread_cap();  // reserved: evaluation is pure, the cap is advisory

    std::string config_arg = "classical";
    std::string format = "json";
    std::string out_path;
    int window = 8;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_arg,
                        "stock name (classical|two_one|two_two|three_one) or JSON path");
        cmd->add_option("--format", format, "json|csv|md");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--window", window, "degree half-width");
    };

    // basis
    auto* basis_cmd = app.add_subcommand("basis", "print a graded basis form");
    int lambda = 0, deg_n = 0, point_p = 1, deg_m = 0, point_r = 1;
    add_common(basis_cmd);
    basis_cmd->add_option("--lambda", lambda, "weight")->required();
    basis_cmd->add_option("--n", deg_n, "degree")->required();
    basis_cmd->add_option("--p", point_p, "in-point index (1-based)");
    basis_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        const Form f = basis_element(cfg, lambda, deg_n, point_p);
        std::cout << f.str() << "\n";
    });

    // pair
    auto* pair_cmd = app.add_subcommand("pair", "Krichever-Novikov pairing of two basis forms");
    add_common(pair_cmd);
    pair_cmd->add_option("--lambda", lambda, "weight of the first form")->required();
    pair_cmd->add_option("--n", deg_n, "first degree")->required();
    pair_cmd->add_option("--p", point_p, "first point index");
    pair_cmd->add_option("--m", deg_m, "second degree (weight 1-lambda)")->required();
    pair_cmd->add_option("--r", point_r, "second point index");
    pair_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        const Rat v = kn_pairing(cfg, basis_element(cfg, lambda, deg_n, point_p),
                                 basis_element(cfg, 1 - lambda, deg_m, point_r));
        std::cout << v.str() << "\n";
    });

    // table
    auto* table_cmd = app.add_subcommand("table", "structure-constant table over a window");
    std::string op_name = "fun_mul";
    add_common(table_cmd);
    table_cmd->add_option("--op", op_name, "fun_mul|vf_bracket|lie_derivative|d1_bracket");
    table_cmd->add_option("--lambda", lambda, "module weight for lie_derivative");
    table_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        OpKind op;
        if (op_name == "fun_mul")
            op = OpKind::fun_mul;
        else if (op_name == "vf_bracket")
            op = OpKind::vf_bracket;
        else if (op_name == "lie_derivative")
            op = OpKind::lie_derivative;
        else if (op_name == "d1_bracket")
            op = OpKind::d1_bracket;
        else
            throw CLI::ValidationError("--op", "unknown operation " + op_name);
        const StructureTable table =
            structure_table(cfg, op, lambda, DegreeWindow{-window, window});
        std::string text = format == "csv" ? structure_table_to_csv(table)
                                           : structure_table_to_json(table).dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text_file(out_path, text);
    });

    // cocycle
    auto* cocycle_cmd = app.add_subcommand(
        "cocycle", "evaluate a geometric cocycle on a basis pair, or dump the value table "
                   "over the window when --n/--m are omitted");
    std::string kind_name = "function";
    std::string cycle_text = "sep";
    add_common(cocycle_cmd);
    cocycle_cmd->add_option("--kind", kind_name, "function|vector|mixing");
    cocycle_cmd->add_option("--cycle", cycle_text, "sep | P:i | Q:j | combinations like 2*P:1-1*Q:1");
    auto* opt_n = cocycle_cmd->add_option("--n", deg_n, "first degree");
    cocycle_cmd->add_option("--p", point_p, "first point index");
    auto* opt_m = cocycle_cmd->add_option("--m", deg_m, "second degree");
    cocycle_cmd->add_option("--r", point_r, "second point index");
    cocycle_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        const CycleSpec cycle = CycleSpec::parse(cycle_text, cfg);
        auto value = [&](int n, int p, int m, int r) {
            if (kind_name == "function")
                return gamma_function(cfg, cycle, basis_element(cfg, 0, n, p),
                                      basis_element(cfg, 0, m, r));
            if (kind_name == "vector")
                return gamma_vector(cfg, cycle, ProjConn{}, basis_element(cfg, -1, n, p),
                                    basis_element(cfg, -1, m, r));
            if (kind_name == "mixing")
                return gamma_mixing(cfg, cycle, AffConn{}, basis_element(cfg, -1, n, p),
                                    basis_element(cfg, 0, m, r));
            throw CLI::ValidationError("--kind", "unknown kind " + kind_name);
        };
        if (opt_n->count() > 0 && opt_m->count() > 0) {
            std::cout << value(deg_n, point_p, deg_m, point_r).str() << "\n";
            return;
        }
        if (opt_n->count() != opt_m->count())
            throw CLI::ValidationError("--n/--m", "give both degrees or neither");
        // full value table over the window, nonzero entries only
        const int K = cfg.num_in();
        Json rows = Json::array();
        std::ostringstream csv, md;
        csv << "n,p,m,r,value\n";
        md << "# " << kind_name << " cocycle over " << cycle.str() << "\n\n"
           << "| n | p | m | r | value |\n|---|---|---|---|---|\n";
        for (int n = -window; n <= window; ++n)
            for (int p = 1; p <= K; ++p)
                for (int m = -window; m <= window; ++m)
                    for (int r = 1; r <= K; ++r) {
                        const Rat v = value(n, p, m, r);
                        if (v.is_zero()) continue;
                        rows.push_back({{"n", n}, {"p", p}, {"m", m}, {"r", r},
                                        {"value", v.str()}});
                        csv << n << "," << p << "," << m << "," << r << "," << v.str() << "\n";
                        md << "| " << n << " | " << p << " | " << m << " | " << r << " | "
                           << v.str() << " |\n";
                    }
        Json j;
        j["kind"] = kind_name;
        j["cycle"] = cycle.str();
        j["window"] = {-window, window};
        j["values"] = rows;
        const std::string text = format == "csv"  ? csv.str()
                                 : format == "md" ? md.str()
                                                  : j.dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text_file(out_path, text);
    });

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "locality scan of a geometric cocycle");
    add_common(scan_cmd);
    scan_cmd->add_option("--kind", kind_name, "function|vector|mixing");
    scan_cmd->add_option("--cycle", cycle_text, "cycle specification");
    scan_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        const CycleSpec cycle = CycleSpec::parse(cycle_text, cfg);
        Cocycle gamma;
        if (kind_name == "function")
            gamma = Cocycle::geometric_function(cfg, cycle);
        else if (kind_name == "vector")
            gamma = Cocycle::geometric_vector(cfg, cycle, ProjConn{});
        else if (kind_name == "mixing")
            gamma = Cocycle::geometric_mixing(cfg, cycle, AffConn{});
        else
            throw CLI::ValidationError("--kind", "unknown kind " + kind_name);
        const LocalityReport r =
            locality_scan(cfg, gamma, ScanWindow{-window, window, -window, window});
        const std::string text = locality_report_to_json(r).dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text_file(out_path, text);
    });

    // decompose
    auto* dec_cmd = app.add_subcommand(
        "decompose", "decompose a synthetic bounded cocycle given as JSON "
                     "{kind, alpha:[...], coboundary:[{degree,point,coeff}...]}");
    std::string input_path;
    add_common(dec_cmd);
    dec_cmd->add_option("--input", input_path, "JSON description of the combination")->required();
    dec_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        std::ifstream in(input_path);
        if (!in) throw CLI::ValidationError("--input", "cannot open " + input_path);
        Json j;
        in >> j;
        const std::string kind_text = j.at("kind").get<std::string>();
        const CocycleKind kind = kind_text == "mixing" ? CocycleKind::mixing
                                : kind_text == "vector" ? CocycleKind::vector
                                                        : CocycleKind::function;
        Decomposition input;
        for (const auto& a : j.at("alpha")) input.alpha.push_back(Rat::parse(a.get<std::string>()));
        input.cob.kind =
            kind == CocycleKind::mixing ? CoboundaryData::Kind::V : CoboundaryData::Kind::W;
        if (j.contains("coboundary"))
            for (const auto& t : j.at("coboundary"))
                input.cob.terms[{t.at("degree").get<int>(), t.at("point").get<int>()}] =
                    Rat::parse(t.at("coeff").get<std::string>());
        const Cocycle gamma = cocycle_from_decomposition(cfg, kind, input);
        const Decomposition dec = decompose_bounded(
            cfg, gamma, ScanWindow{-window, window, -window - 2, window + 2});
        const std::string text = decomposition_to_json(dec).dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text_file(out_path, text);
    });

    // pullcyc
    auto* pull_cmd = app.add_subcommand("pullcyc", "verify the matrix-algebra pullback cocycle");
    add_common(pull_cmd);
    pull_cmd->add_option("--lambda", lambda, "weight of the module")->required();
    pull_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        RunReport report = verify::pullcyc(cfg, config_arg, lambda, window);
        emit(report, format, out_path);
        if (!report.all_passed()) throw std::runtime_error("pullcyc verification failed");
    });

    // affine
    auto* affine_cmd = app.add_subcommand(
        "affine", "affine extension checks; default runs the sl2 and gl2 suites, --lie "
                  "checks Jacobi for a custom structure-constant table");
    std::string lie_arg;
    add_common(affine_cmd);
    affine_cmd->add_option("--lie", lie_arg, "sl2 | gl2 | gl3 | JSON file with {dim,brackets,form}");
    affine_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        RunReport report;
        if (lie_arg.empty()) {
            report = verify::affine(cfg, config_arg, std::min(window, 4));
        } else {
            FinDimLie lie = [&] {
                if (lie_arg == "sl2") return FinDimLie::sl2();
                if (lie_arg == "gl2") return FinDimLie::gl(2);
                if (lie_arg == "gl3") return FinDimLie::gl(3);
                std::ifstream in(lie_arg);
                if (!in) throw CLI::ValidationError("--lie", "cannot open " + lie_arg);
                Json j;
                in >> j;
                return lie_from_json(j);
            }();
            const Cocycle gamma = Cocycle::geometric_function(cfg, CycleSpec::separating(cfg));
            const JacobiReport jr =
                jacobi_check(cfg, lie, gamma, DegreeWindow{-std::min(window, 3), std::min(window, 3)});
            report.suite = "affine";
            report.add("Jacobi for " + lie_arg + " (x) A with gamma_S, " +
                           std::to_string(jr.checked) + " triples",
                       jr.ok(), jr.ok() ? "" : jr.failures.front().triple);
        }
        emit(report, format, out_path);
        if (!report.all_passed()) throw std::runtime_error("affine verification failed");
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
    std::string suite = "all";
    add_common(verify_cmd);
    verify_cmd->add_option("--suite", suite,
                           "virasoro|duality|almgrad|locality|levelzero|pullcyc|properties|"
                           "decompose|affine|appendix|all");
    verify_cmd->add_option("--lambda", lambda, "weight for pullcyc");
    verify_cmd->callback([&] {
        const MarkedConfig cfg = resolve_config(config_arg);
        RunReport report;
        if (suite == "virasoro") {
            report = verify::virasoro(window);
        } else if (suite == "duality") {
            report = verify::duality(cfg, config_arg, {-1, 0, 1, 2}, window);
        } else if (suite == "almgrad") {
            report = verify::almost_grading(cfg, config_arg, {-1, 0, 1, 2}, std::min(window, 5));
        } else if (suite == "locality") {
            report = verify::locality(cfg, config_arg, window);
        } else if (suite == "levelzero") {
            report = verify::level_zero(cfg, config_arg, window);
        } else if (suite == "pullcyc") {
            report = verify::pullcyc(cfg, config_arg, lambda, window);
        } else if (suite == "properties") {
            report = verify::properties(cfg, config_arg, 200, 50, 0xc0c7c1e5ULL);
        } else if (suite == "decompose") {
            report = verify::decompose_roundtrip(cfg, config_arg, 20, 0xdec0de5eULL);
        } else if (suite == "affine") {
            report = verify::affine(cfg, config_arg, std::min(window, 4));
        } else if (suite == "appendix") {
            report = verify::appendix_fixture(window);
        } else if (suite == "all") {
            report.suite = "all";
            for (const auto& r : verify::acceptance(true))
                report.checks.insert(report.checks.end(), r.checks.begin(), r.checks.end());
        } else {
            throw CLI::ValidationError("--suite", "unknown suite " + suite);
        }
        emit(report, format, out_path);
        if (!report.all_passed()) throw std::runtime_error("verification failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
