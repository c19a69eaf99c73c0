#pragma once

/// JSON/CSV/markdown serialization: configurations, forms, structure tables,
/// cocycle value tables, locality reports and run reports.  All numbers are
/// emitted as exact rational strings; JSON keys come out sorted, so reruns
/// are byte-identical.

#include "kn/algebra.hpp"
#include "kn/cocycle.hpp"
#include "kn/current.hpp"
#include "kn/glinf.hpp"

#include <json.hpp>

#include <string>

namespace kn {

using Json = nlohmann::json;

MarkedConfig config_from_json(const Json& j);
Json config_to_json(const MarkedConfig& cfg);
MarkedConfig load_config(const std::string& path);

Form form_from_json(const Json& j);
Json form_to_json(const Form& f);

FinDimLie lie_from_json(const Json& j);

Json expansion_to_json(const Expansion& ex);
Json structure_table_to_json(const StructureTable& table);
std::string structure_table_to_csv(const StructureTable& table);
Json locality_report_to_json(const LocalityReport& report);
Json matrix_to_json(const BandedWindowMatrix& m);
Json decomposition_to_json(const Decomposition& dec);
Json level_zero_to_json(const LevelZeroParams& params);

/// Per-check record of a verification suite.
struct RunReport {
    std::string suite;
    struct Check {
        std::string id;
        bool passed = false;
        std::string witness;  // exact rational strings / labels
    };
    std::vector<Check> checks;

    void add(const std::string& id, bool passed, const std::string& witness = "");
    bool all_passed() const;
    int exit_code() const { return all_passed() ? 0 : 1; }
};

Json run_report_to_json(const RunReport& report);
std::string run_report_to_csv(const RunReport& report);
std::string run_report_to_markdown(const RunReport& report);

enum class ReportFormat { json, csv, md };

ReportFormat parse_format(const std::string& name);

/// Serializes the report in the requested format; writes to the path or, for
/// an empty path, returns the text only.
std::string emit_report(const RunReport& report, ReportFormat format, const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace kn
