#include "dct/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dct/type_json.hpp"
#include "dct/type_ops.hpp"

namespace dct {

MatchResult match_functions(const TranslationUnit& decompiled, const NameMap& names,
                            const std::vector<TranslationUnit>& sources,
                            const std::string& repo_id, const std::string& binary_id) {
    MatchResult out;

    // index original names across all source units
    std::map<std::string, std::vector<const ParsedFunction*>> by_name;
    for (const auto& unit : sources) {
        for (const auto& f : unit.functions) {
            if (f.error) continue;
            by_name[f.name].push_back(&f);
        }
    }

    std::set<std::pair<std::string, std::string>> seen;  // (original name, canonical text)
    for (const auto& fn : decompiled.functions) {
        auto orig_it = names.reverse.find(fn.name);
        if (orig_it == names.reverse.end()) {
            out.skipped.push_back({fn.name, "no-name-map"});
            continue;
        }
        const std::string& original_name = orig_it->second;
        if (fn.error) {
            out.skipped.push_back({original_name, "decompiled-parse-error"});
            continue;
        }
        auto src_it = by_name.find(original_name);
        if (src_it == by_name.end() || src_it->second.empty()) {
            out.skipped.push_back({original_name, "no-source-match"});
            continue;
        }
        if (src_it->second.size() > 1) {
            out.skipped.push_back({original_name, "ambiguous"});
            continue;
        }
        const ParsedFunction& src = *src_it->second.front();
        if (!seen.insert({original_name, src.canonical_text}).second) {
            out.skipped.push_back({original_name, "duplicate"});
            continue;
        }

        FunctionRecord r;
        r.id = repo_id + "/" + binary_id + "/" + fn.name;
        r.repo_id = repo_id;
        r.binary_id = binary_id;
        r.decompiled_name = fn.name;
        r.decompiled_text = fn.canonical_text.empty() ? render_function(fn) : fn.canonical_text;
        r.original_name = original_name;
        r.canonical_original_text = src.canonical_text;
        r.variables = src.variables;
        r.return_type = src.return_type;
        std::vector<TypePtr> roots;
        for (const auto& [key, type] : r.variables) roots.push_back(type);
        if (r.return_type) roots.push_back(r.return_type);
        r.udt_closure = udt_closure(roots);
        r.call_graph = binary_id;
        out.records.push_back(std::move(r));
    }
    return out;
}

namespace {

std::size_t nonblank_lines(const std::string& text) {
    std::size_t count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) ++count;
    }
    return count;
}

}  // namespace

DatasetStats stats(const std::vector<FunctionRecord>& records) {
    if (records.empty()) throw Error("stats: empty record list");
    DatasetStats s;
    s.functions = records.size();

    std::int64_t loc_total = 0;
    std::int64_t vars_total = 0, vars_with_udt = 0, fns_with_udt = 0;
    std::int64_t complexity_total = 0;
    std::int64_t udt_count = 0, udt_fields_total = 0, udt_complexity_total = 0;

    for (const auto& r : records) {
        loc_total += static_cast<std::int64_t>(nonblank_lines(r.canonical_original_text));
        bool fn_udt = r.return_type && has_udt(r.return_type);
        std::vector<TypePtr> udt_var_roots;
        for (const auto& [key, type] : r.variables) {
            vars_total += 1;
            complexity_total += complexity(type);
            if (has_udt(type)) {
                vars_with_udt += 1;
                fn_udt = true;
                udt_var_roots.push_back(type);
            }
        }
        if (fn_udt) fns_with_udt += 1;
        for (const auto& udt : udt_closure(udt_var_roots)) {
            udt_count += 1;
            udt_fields_total += recursive_field_count(udt);
            udt_complexity_total += complexity(udt);
        }
    }

    auto ratio = [](std::int64_t num, std::int64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    s.loc_mean = ratio(loc_total, static_cast<std::int64_t>(records.size()));
    s.pct_variables_with_udt = 100.0 * ratio(vars_with_udt, vars_total);
    s.pct_functions_with_udt =
        100.0 * ratio(fns_with_udt, static_cast<std::int64_t>(records.size()));
    s.recursive_udt_field_count_mean = ratio(udt_fields_total, udt_count);
    s.type_tree_complexity_mean = ratio(complexity_total, vars_total);
    s.udt_type_tree_complexity_mean = ratio(udt_complexity_total, udt_count);
    return s;
}

std::string format_stats(const DatasetStats& s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "functions: " << s.functions << "\n"
       << "lines of code (mean): " << s.loc_mean << "\n"
       << "variables with a UDT (%): " << s.pct_variables_with_udt << "\n"
       << "functions with a UDT (%): " << s.pct_functions_with_udt << "\n"
       << "recursive UDT field count (mean): " << s.recursive_udt_field_count_mean << "\n"
       << "type-tree complexity (mean): " << s.type_tree_complexity_mean << "\n"
       << "UDT type-tree complexity (mean): " << s.udt_type_tree_complexity_mean << "\n";
    return os.str();
}

nlohmann::json stats_to_json(const DatasetStats& s) {
    return nlohmann::json{
        {"functions", s.functions},
        {"loc_mean", s.loc_mean},
        {"pct_variables_with_udt", s.pct_variables_with_udt},
        {"pct_functions_with_udt", s.pct_functions_with_udt},
        {"recursive_udt_field_count_mean", s.recursive_udt_field_count_mean},
        {"type_tree_complexity_mean", s.type_tree_complexity_mean},
        {"udt_type_tree_complexity_mean", s.udt_type_tree_complexity_mean},
    };
}

nlohmann::json record_to_json(const FunctionRecord& r) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& [name, type] : r.variables)
        vars.push_back({{"name", name}, {"type", type_to_json(type)}});
    nlohmann::json closure = nlohmann::json::array();
    for (const auto& t : r.udt_closure) closure.push_back(type_to_json(t));
    nlohmann::json j{
        {"id", r.id},
        {"repo_id", r.repo_id},
        {"binary_id", r.binary_id},
        {"decompiled_name", r.decompiled_name},
        {"decompiled_text", r.decompiled_text},
        {"original_name", r.original_name},
        {"canonical_original_text", r.canonical_original_text},
        {"variables", std::move(vars)},
        {"udt_closure", std::move(closure)},
        {"call_graph", r.call_graph},
    };
    if (r.return_type) j["return_type"] = type_to_json(r.return_type);
    return j;
}

FunctionRecord record_from_json(const nlohmann::json& j) {
    FunctionRecord r;
    r.id = j.at("id").get<std::string>();
    r.repo_id = j.value("repo_id", std::string());
    r.binary_id = j.value("binary_id", std::string());
    r.decompiled_name = j.value("decompiled_name", std::string());
    r.decompiled_text = j.value("decompiled_text", std::string());
    r.original_name = j.value("original_name", std::string());
    r.canonical_original_text = j.value("canonical_original_text", std::string());
    if (j.contains("variables"))
        for (const auto& v : j.at("variables"))
            r.variables.emplace_back(v.at("name").get<std::string>(),
                                     type_from_json(v.at("type")));
    if (j.contains("return_type")) r.return_type = type_from_json(j.at("return_type"));
    if (j.contains("udt_closure"))
        for (const auto& t : j.at("udt_closure")) r.udt_closure.push_back(type_from_json(t));
    r.call_graph = j.value("call_graph", std::string());
    return r;
}

void write_jsonl(const std::vector<FunctionRecord>& records, std::ostream& out) {
    for (const auto& r : records) out << record_to_json(r).dump() << "\n";
}

void write_jsonl(const std::vector<FunctionRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    write_jsonl(records, out);
}

JsonlReadResult read_jsonl(std::istream& in) {
    JsonlReadResult out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            out.malformed.emplace_back(line_no, e.what());
        }
    }
    return out;
}

JsonlReadResult read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    return read_jsonl(in);
}

bool records_equal(const FunctionRecord& a, const FunctionRecord& b) {
    if (a.id != b.id || a.repo_id != b.repo_id || a.binary_id != b.binary_id) return false;
    if (a.decompiled_name != b.decompiled_name || a.decompiled_text != b.decompiled_text)
        return false;
    if (a.original_name != b.original_name ||
        a.canonical_original_text != b.canonical_original_text)
        return false;
    if (a.call_graph != b.call_graph) return false;
    if ((a.return_type != nullptr) != (b.return_type != nullptr)) return false;
    if (a.return_type && !types_identical(a.return_type, b.return_type)) return false;
    if (a.variables.size() != b.variables.size()) return false;
    for (size_t i = 0; i < a.variables.size(); ++i) {
        if (a.variables[i].first != b.variables[i].first) return false;
        if (!types_identical(a.variables[i].second, b.variables[i].second)) return false;
    }
    if (a.udt_closure.size() != b.udt_closure.size()) return false;
    for (size_t i = 0; i < a.udt_closure.size(); ++i)
        if (!types_identical(a.udt_closure[i], b.udt_closure[i])) return false;
    return true;
}

}  // namespace dct
