#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dct/corpus.hpp"
#include "dct/isomorphism.hpp"
#include "dct/parser.hpp"

namespace dct {

// A model's output for one function: the predicted text and the UDT
// definitions it declares, as parsed.
struct Prediction {
    std::string id;
    std::string text;                        // raw predicted output
    std::optional<ParsedFunction> function;  // canonicalized; empty on parse failure
    std::vector<TypePtr> udts;               // definitions in order of appearance
    std::optional<std::string> parse_error;
    int degenerate_udts_stripped = 0;

    static Prediction from_text(const std::string& id, const std::string& text,
                                const ParseOptions& opts = {});
};

// Remove UDT definitions not reachable from any variable's type or the
// return type. Reachable definitions are untouched.
Prediction strip_degenerate_udts(Prediction p);

struct MetricReport {
    std::string id;
    bool dependency_equivalent = false;
    bool typechecks = false;  // dependency-equivalent and every paired variable type matches
    int name_matches = 0;
    int type_matches = 0;
    int pair_total = 0;
    int udt_name_comp_matches = 0;
    int udt_comp_matches = 0;
    int udt_pair_total = 0;  // pairs whose gold-side type contains a UDT
    bool parse_failure = false;
    bool timeout = false;
    int degenerate_udts_stripped = 0;
};

struct ScoreOptions {
    IsoOptions iso;
};

MetricReport score_prediction(const Prediction& p, const FunctionRecord& gold,
                              const ScoreOptions& opts = {});

struct CorpusSummary {
    std::size_t functions = 0;
    std::size_t parse_failures = 0;
    std::size_t timeouts = 0;
    // All values are percentages rounded to 2 decimals.
    double dependency_based_equivalence = 0;
    double dependency_based_equivalence_typechecks = 0;
    double variable_name_accuracy = 0;
    double variable_type_accuracy = 0;
    double variable_udt_names_composition_accuracy = 0;
    double variable_udt_composition_accuracy = 0;
};

// Equivalence rows are fractions of functions; variable rows micro-average
// over all variable pairs corpus-wide; UDT rows over UDT-typed pairs.
CorpusSummary aggregate(const std::vector<MetricReport>& reports);  // throws on empty

std::string format_summary_table(const CorpusSummary& s);
nlohmann::json summary_to_json(const CorpusSummary& s);
nlohmann::json report_to_json(const MetricReport& r);
MetricReport report_from_json(const nlohmann::json& j);

}  // namespace dct
