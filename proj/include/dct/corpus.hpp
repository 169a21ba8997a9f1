#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dct/c_ast.hpp"
#include "dct/canonicalize.hpp"
#include "dct/type_node.hpp"

namespace dct {

// One matched decompiled/original function pair.
struct FunctionRecord {
    std::string id;
    std::string repo_id;
    std::string binary_id;
    std::string decompiled_name;  // funcX
    std::string decompiled_text;
    std::string original_name;
    std::string canonical_original_text;
    std::vector<std::pair<std::string, TypePtr>> variables;  // declaration order
    TypePtr return_type;
    std::vector<TypePtr> udt_closure;  // over variables + return type
    std::string call_graph;            // handle: binary id
};

struct MatchSkip {
    std::string name;
    std::string reason;  // "no-source-match" | "ambiguous" | ...
};

struct MatchResult {
    std::vector<FunctionRecord> records;
    std::vector<MatchSkip> skipped;
};

// Pair decompiled functions with originals via the canonicalize_names map.
// A record is produced for every function whose original name appears
// exactly once across the source units; everything else is skipped with a
// reason. Records whose (original-name, canonical-text) duplicates another
// record in the same repo are dropped (object-file redundancy).
MatchResult match_functions(const TranslationUnit& decompiled, const NameMap& names,
                            const std::vector<TranslationUnit>& sources,
                            const std::string& repo_id, const std::string& binary_id);

struct DatasetStats {
    std::size_t functions = 0;
    double loc_mean = 0;
    double pct_variables_with_udt = 0;
    double pct_functions_with_udt = 0;
    double recursive_udt_field_count_mean = 0;  // over UDT-typed variables' distinct UDTs
    double type_tree_complexity_mean = 0;       // over all variables
    double udt_type_tree_complexity_mean = 0;   // over UDT-typed variables' distinct UDTs
};

DatasetStats stats(const std::vector<FunctionRecord>& records);  // throws on empty
std::string format_stats(const DatasetStats& s);
nlohmann::json stats_to_json(const DatasetStats& s);

nlohmann::json record_to_json(const FunctionRecord& r);
FunctionRecord record_from_json(const nlohmann::json& j);

struct JsonlReadResult {
    std::vector<FunctionRecord> records;
    std::vector<std::pair<int, std::string>> malformed;  // line number, error
};

void write_jsonl(const std::vector<FunctionRecord>& records, std::ostream& out);
void write_jsonl(const std::vector<FunctionRecord>& records, const std::string& path);
JsonlReadResult read_jsonl(std::istream& in);
JsonlReadResult read_jsonl(const std::string& path);

bool records_equal(const FunctionRecord& a, const FunctionRecord& b);

}  // namespace dct
