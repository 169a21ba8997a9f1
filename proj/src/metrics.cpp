#include "dct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dct/canonicalize.hpp"
#include "dct/pdg.hpp"
#include "dct/type_ops.hpp"

namespace dct {

namespace {

std::string base_name(const std::string& key) { return key.substr(0, key.find('#')); }

const TypePtr* lookup_var(const std::vector<std::pair<std::string, TypePtr>>& vars,
                          const std::string& key) {
    for (const auto& [k, t] : vars)
        if (k == key) return &t;
    return nullptr;
}

}  // namespace

Prediction Prediction::from_text(const std::string& id, const std::string& text,
                                 const ParseOptions& opts) {
    Prediction p;
    p.id = id;
    p.text = text;
    try {
        TranslationUnit unit = parse_translation_unit(text, opts);
        canonicalize_unit(unit);
        const ParsedFunction* fn = nullptr;
        for (const auto& f : unit.functions) {
            if (!f.error) {
                fn = &f;
                break;
            }
        }
        if (!fn) {
            p.parse_error = unit.functions.empty()
                                ? "no function in prediction"
                                : *unit.functions.front().error;
            return p;
        }
        p.function = clone_function(*fn);
        for (const auto& tag : unit.udt_order) {
            auto it = unit.udts.find(tag);
            if (it != unit.udts.end() && it->second->is_udt()) p.udts.push_back(it->second);
        }
    } catch (const Error& e) {
        p.parse_error = e.what();
    }
    return p;
}

Prediction strip_degenerate_udts(Prediction p) {
    if (!p.function) return p;
    std::vector<TypePtr> roots;
    for (const auto& [key, type] : p.function->variables) roots.push_back(type);
    if (p.function->return_type) roots.push_back(p.function->return_type);
    std::set<std::string> reachable;
    for (const auto& udt : udt_closure(roots))
        if (!udt->tag.empty()) reachable.insert(udt->tag);

    std::vector<TypePtr> kept;
    for (const auto& udt : p.udts) {
        if (!udt->tag.empty() && reachable.count(udt->tag)) kept.push_back(udt);
        else p.degenerate_udts_stripped += 1;
    }
    p.udts = std::move(kept);
    return p;
}

namespace {

// The gold record carries canonical text; re-parse it for PDG construction.
ParsedFunction parse_gold(const FunctionRecord& gold) {
    TranslationUnit unit = parse_translation_unit(gold.canonical_original_text);
    canonicalize_unit(unit);
    for (auto& f : unit.functions)
        if (!f.error) return clone_function(f);
    throw Error("gold record does not parse: " + gold.id);
}

}  // namespace

MetricReport score_prediction(const Prediction& p, const FunctionRecord& gold,
                              const ScoreOptions& opts) {
    MetricReport r;
    r.id = p.id.empty() ? gold.id : p.id;
    r.degenerate_udts_stripped = p.degenerate_udts_stripped;
    if (!p.function || p.parse_error) {
        r.parse_failure = true;
        return r;
    }

    ParsedFunction gold_fn = parse_gold(gold);
    DependencyGraph gp = build_pdg(*p.function);
    DependencyGraph gg = build_pdg(gold_fn);

    IsoResult iso = isomorphic(gp, gg, opts.iso);
    if (iso.status == IsoStatus::Timeout) {
        r.timeout = true;
        return r;
    }
    if (!iso.found()) return r;

    r.dependency_equivalent = true;
    bool all_types_match = true;
    auto pairs = variable_correspondence(*iso.mapping, gp, gg);
    for (const auto& [pk, gk] : pairs) {
        const TypePtr* pt = lookup_var(p.function->variables, pk);
        const TypePtr* gt = lookup_var(gold.variables, gk);
        if (!pt || !gt) continue;  // externals and globals are not scored
        r.pair_total += 1;
        if (base_name(pk) == base_name(gk)) r.name_matches += 1;
        const bool comp = composition_equal(*pt, *gt);
        if (comp) r.type_matches += 1;
        else all_types_match = false;
        if (has_udt(*gt)) {
            r.udt_pair_total += 1;
            if (comp) r.udt_comp_matches += 1;
            if (comp && composition_and_tags_equal(*pt, *gt)) r.udt_name_comp_matches += 1;
        }
    }
    r.typechecks = r.dependency_equivalent && all_types_match;
    return r;
}

namespace {

double pct(std::int64_t num, std::int64_t den) {
    if (den == 0) return 0.0;
    double v = 100.0 * static_cast<double>(num) / static_cast<double>(den);
    return std::round(v * 100.0) / 100.0;
}

}  // namespace

CorpusSummary aggregate(const std::vector<MetricReport>& reports) {
    if (reports.empty()) throw Error("aggregate: empty report list");
    CorpusSummary s;
    s.functions = reports.size();
    std::int64_t equiv = 0, typechecks = 0;
    std::int64_t names = 0, types = 0, pairs = 0;
    std::int64_t udt_names = 0, udt_comps = 0, udt_pairs = 0;
    for (const auto& r : reports) {
        if (r.parse_failure) s.parse_failures += 1;
        if (r.timeout) s.timeouts += 1;
        equiv += r.dependency_equivalent ? 1 : 0;
        typechecks += r.typechecks ? 1 : 0;
        names += r.name_matches;
        types += r.type_matches;
        pairs += r.pair_total;
        udt_names += r.udt_name_comp_matches;
        udt_comps += r.udt_comp_matches;
        udt_pairs += r.udt_pair_total;
    }
    s.dependency_based_equivalence = pct(equiv, static_cast<std::int64_t>(reports.size()));
    s.dependency_based_equivalence_typechecks =
        pct(typechecks, static_cast<std::int64_t>(reports.size()));
    s.variable_name_accuracy = pct(names, pairs);
    s.variable_type_accuracy = pct(types, pairs);
    s.variable_udt_names_composition_accuracy = pct(udt_names, udt_pairs);
    s.variable_udt_composition_accuracy = pct(udt_comps, udt_pairs);
    return s;
}

std::string format_summary_table(const CorpusSummary& s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    auto row = [&](const char* name, double v) {
        os << "  " << name;
        int pad = 42 - static_cast<int>(std::string(name).size());
        for (int i = 0; i < pad; ++i) os << ' ';
        os << v << "\n";
    };
    os << "functions scored: " << s.functions << " (parse failures: " << s.parse_failures
       << ", timeouts: " << s.timeouts << ")\n";
    row("dependency-based equivalence", s.dependency_based_equivalence);
    row("dependency-based equivalence + typechecks", s.dependency_based_equivalence_typechecks);
    row("variable name accuracy", s.variable_name_accuracy);
    row("variable type accuracy", s.variable_type_accuracy);
    row("variable UDT names + composition acc", s.variable_udt_names_composition_accuracy);
    row("variable UDT composition accuracy", s.variable_udt_composition_accuracy);
    return os.str();
}

nlohmann::json summary_to_json(const CorpusSummary& s) {
    return nlohmann::json{
        {"functions", s.functions},
        {"parse_failures", s.parse_failures},
        {"timeouts", s.timeouts},
        {"dependency_based_equivalence", s.dependency_based_equivalence},
        {"dependency_based_equivalence_typechecks", s.dependency_based_equivalence_typechecks},
        {"variable_name_accuracy", s.variable_name_accuracy},
        {"variable_type_accuracy", s.variable_type_accuracy},
        {"variable_udt_names_composition_accuracy", s.variable_udt_names_composition_accuracy},
        {"variable_udt_composition_accuracy", s.variable_udt_composition_accuracy},
    };
}

nlohmann::json report_to_json(const MetricReport& r) {
    return nlohmann::json{
        {"id", r.id},
        {"dependency_equivalent", r.dependency_equivalent},
        {"typechecks", r.typechecks},
        {"name_matches", r.name_matches},
        {"type_matches", r.type_matches},
        {"pair_total", r.pair_total},
        {"udt_name_comp_matches", r.udt_name_comp_matches},
        {"udt_comp_matches", r.udt_comp_matches},
        {"udt_pair_total", r.udt_pair_total},
        {"parse_failure", r.parse_failure},
        {"timeout", r.timeout},
        {"degenerate_udts_stripped", r.degenerate_udts_stripped},
    };
}

MetricReport report_from_json(const nlohmann::json& j) {
    MetricReport r;
    r.id = j.value("id", std::string());
    r.dependency_equivalent = j.value("dependency_equivalent", false);
    r.typechecks = j.value("typechecks", false);
    r.name_matches = j.value("name_matches", 0);
    r.type_matches = j.value("type_matches", 0);
    r.pair_total = j.value("pair_total", 0);
    r.udt_name_comp_matches = j.value("udt_name_comp_matches", 0);
    r.udt_comp_matches = j.value("udt_comp_matches", 0);
    r.udt_pair_total = j.value("udt_pair_total", 0);
    r.parse_failure = j.value("parse_failure", false);
    r.timeout = j.value("timeout", false);
    r.degenerate_udts_stripped = j.value("degenerate_udts_stripped", 0);
    return r;
}

}  // namespace dct
