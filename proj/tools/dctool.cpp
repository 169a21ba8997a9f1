#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "dct/call_graph.hpp"
#include "dct/canonicalize.hpp"
#include "dct/corpus.hpp"
#include "dct/metrics.hpp"
#include "dct/minhash.hpp"
#include "dct/pack.hpp"
#include "dct/parser.hpp"
#include "dct/split.hpp"
#include "dct/tu_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dct::Error("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dct::Error("cannot open for writing: " + path);
    out << content;
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

// Machine-readable run manifest written next to each primary output.
void write_manifest(const std::string& output_path, const std::string& command,
                    const std::vector<std::string>& inputs, const json& config,
                    const json& counts) {
    json m{{"command", command},
           {"inputs", inputs},
           {"config", config},
           {"config_hash", fnv_hex(config.dump())},
           {"counts", counts}};
    write_file(output_path + ".manifest.json", m.dump(2) + "\n");
}

struct GlobalConfig {
    json raw = json::object();

    void load(const std::string& path) {
        if (!path.empty()) raw = load_json(path);
    }

    template <typename T>
    T get(const std::string& section, const std::string& key, T fallback) const {
        if (raw.contains(section) && raw.at(section).contains(key))
            return raw.at(section).at(key).get<T>();
        return fallback;
    }

    dct::ParseOptions parse_options(const std::string& dialect_name) const {
        dct::ParseOptions opts;
        opts.dialect = dialect_name == "none" ? dct::Dialect::none() : dct::Dialect::hexrays();
        if (raw.contains("dialect")) {
            const json& d = raw.at("dialect");
            if (d.contains("replacements"))
                for (const auto& [k, v] : d.at("replacements").items())
                    opts.dialect.replacements[k] = v.get<std::string>();
            if (d.contains("dropped"))
                for (const auto& v : d.at("dropped"))
                    opts.dialect.dropped.insert(v.get<std::string>());
            if (d.contains("dropped_with_parens"))
                for (const auto& v : d.at("dropped_with_parens"))
                    opts.dialect.dropped_with_parens.insert(v.get<std::string>());
        }
        if (raw.contains("primitives"))
            for (const auto& [k, v] : raw.at("primitives").items())
                opts.primitive_spellings[k] = v.get<std::string>();
        return opts;
    }

    dct::IsoOptions iso_options() const {
        dct::IsoOptions iso;
        iso.max_steps = get<long long>("iso", "max_steps", iso.max_steps);
        iso.improvement_steps = get<long long>("iso", "improvement_steps", iso.improvement_steps);
        iso.timeout = std::chrono::milliseconds(
            get<long long>("iso", "timeout_ms", iso.timeout.count()));
        return iso;
    }
};

int cmd_parse(const std::string& input, const std::string& output, const std::string& dialect,
              bool rename, const GlobalConfig& cfg, const std::string& config_path) {
    dct::ParseOptions opts = cfg.parse_options(dialect);
    dct::TranslationUnit unit = dct::parse_translation_unit(read_file(input), opts);
    dct::canonicalize_unit(unit);
    dct::NameMap names;
    if (rename) names = dct::canonicalize_names(unit);
    write_file(output, dct::unit_to_json(unit, rename ? &names : nullptr).dump() + "\n");
    json config{{"dialect", dialect}, {"rename_functions", rename}};
    if (!config_path.empty()) config["config"] = config_path;
    write_manifest(output, "parse", {input}, config,
                   json{{"functions", unit.functions.size()}, {"skipped", unit.skipped.size()}});
    std::cerr << "parsed " << unit.functions.size() << " functions (" << unit.skipped.size()
              << " skipped)\n";
    return 0;
}

int cmd_canonicalize(const std::string& input, const std::string& output, bool rename) {
    dct::NameMap names;
    dct::TranslationUnit unit = dct::unit_from_json(load_json(input), &names);
    dct::canonicalize_unit(unit);
    if (rename) names = dct::canonicalize_names(unit);
    write_file(output, dct::unit_to_json(unit, &names).dump() + "\n");
    write_manifest(output, "canonicalize", {input}, json{{"rename_functions", rename}},
                   json{{"functions", unit.functions.size()}});
    return 0;
}

int cmd_match(const std::string& decompiled_path, const std::vector<std::string>& source_paths,
              const std::string& repo, const std::string& binary, const std::string& output,
              const std::string& callgraphs_path) {
    dct::NameMap names;
    dct::TranslationUnit decompiled = dct::unit_from_json(load_json(decompiled_path), &names);
    std::vector<dct::TranslationUnit> sources;
    for (const auto& p : source_paths) sources.push_back(dct::unit_from_json(load_json(p)));

    dct::MatchResult result = dct::match_functions(decompiled, names, sources, repo, binary);
    dct::write_jsonl(result.records, output);

    if (!callgraphs_path.empty()) {
        json graphs = json::object();
        if (fs::exists(callgraphs_path)) graphs = load_json(callgraphs_path);
        graphs[binary] = dct::call_graph_to_json(dct::build_call_graph(decompiled));
        write_file(callgraphs_path, graphs.dump() + "\n");
    }

    json skipped = json::array();
    for (const auto& s : result.skipped)
        skipped.push_back({{"name", s.name}, {"reason", s.reason}});
    std::vector<std::string> inputs{decompiled_path};
    inputs.insert(inputs.end(), source_paths.begin(), source_paths.end());
    write_manifest(output, "match", inputs, json{{"repo", repo}, {"binary", binary}},
                   json{{"records", result.records.size()},
                        {"skipped", result.skipped.size()},
                        {"skip_reasons", skipped}});
    std::cerr << "matched " << result.records.size() << " functions (" << result.skipped.size()
              << " skipped)\n";
    return 0;
}

// Documents come from a JSON listing {"repos": {id: {"files": [...] or
// "texts": [...], "yield": n}}} or from a directory tree (one subdirectory
// per repository).
std::vector<dct::RepoDocument> load_documents(const std::string& docs_path,
                                              const std::string& root, int shingle_k) {
    std::vector<dct::RepoDocument> docs;
    if (!docs_path.empty()) {
        json listing = load_json(docs_path);
        for (const auto& [repo, spec] : listing.at("repos").items()) {
            std::vector<std::string> texts;
            if (spec.contains("texts"))
                for (const auto& t : spec.at("texts")) texts.push_back(t.get<std::string>());
            if (spec.contains("files"))
                for (const auto& f : spec.at("files")) texts.push_back(read_file(f.get<std::string>()));
            docs.push_back(dct::make_document(repo, texts, shingle_k,
                                              spec.value("yield", std::int64_t{1})));
        }
        return docs;
    }
    for (const auto& repo_dir : fs::directory_iterator(root)) {
        if (!repo_dir.is_directory()) continue;
        std::vector<std::string> texts;
        for (const auto& entry : fs::recursive_directory_iterator(repo_dir.path())) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".c" || ext == ".h") texts.push_back(read_file(entry.path().string()));
        }
        docs.push_back(dct::make_document(repo_dir.path().filename().string(), texts, shingle_k, 1));
    }
    return docs;
}

int cmd_dedup(const std::string& docs_path, const std::string& root, int shingle_k, int perms,
              int bands, int rows, double threshold, std::uint64_t seed,
              const std::string& output) {
    std::vector<dct::RepoDocument> docs = load_documents(docs_path, root, shingle_k);
    std::map<std::string, std::vector<std::uint64_t>> sigs;
    std::map<std::string, std::int64_t> yields;
    std::size_t empty_docs = 0;
    for (const auto& d : docs) {
        yields[d.repo_id] = d.yield;
        if (d.shingles.empty()) {
            ++empty_docs;
            continue;
        }
        sigs[d.repo_id] = dct::signature(d, perms, seed);
    }
    auto clusters = dct::cluster(sigs, bands, rows, threshold, yields);

    json out;
    out["params"] = json{{"shingle_k", shingle_k}, {"permutations", perms},  {"bands", bands},
                         {"rows", rows},           {"threshold", threshold}, {"seed", seed}};
    json carr = json::array();
    for (const auto& c : clusters)
        carr.push_back(
            {{"id", c.id}, {"repos", c.repos}, {"representative", c.representative}});
    out["clusters"] = std::move(carr);
    json yj = json::object();
    for (const auto& [r, y] : yields) yj[r] = y;
    out["yields"] = std::move(yj);
    write_file(output, out.dump(2) + "\n");

    write_manifest(output, "dedup", {docs_path.empty() ? root : docs_path}, out["params"],
                   json{{"repos", docs.size()},
                        {"empty_documents", empty_docs},
                        {"clusters", clusters.size()}});
    std::cerr << "clustered " << docs.size() << " repos into " << clusters.size() << " clusters\n";
    return 0;
}

int cmd_split(const std::string& clusters_path, const std::string& repos_path,
              const std::string& fractions_text, std::uint64_t seed, const std::string& output) {
    std::vector<std::string> repos;
    std::map<std::string, std::int64_t> yields;
    if (!clusters_path.empty()) {
        json cj = load_json(clusters_path);
        for (const auto& c : cj.at("clusters")) {
            std::string rep = c.at("representative").get<std::string>();
            repos.push_back(rep);
            if (cj.contains("yields") && cj.at("yields").contains(rep))
                yields[rep] = cj.at("yields").at(rep).get<std::int64_t>();
        }
    } else {
        json rj = load_json(repos_path);
        for (const auto& [repo, y] : rj.at("repos").items()) {
            repos.push_back(repo);
            yields[repo] = y.get<std::int64_t>();
        }
    }

    std::array<double, 3> fractions{0.9, 0.05, 0.05};
    {
        std::stringstream ss(fractions_text);
        std::string part;
        int i = 0;
        while (std::getline(ss, part, ',') && i < 3) fractions[static_cast<size_t>(i++)] = std::stod(part);
        if (i != 3) throw dct::InvalidFractionsError("expected three comma-separated fractions");
    }

    dct::CorpusSplit split = dct::split_by_project(repos, yields, fractions, seed);
    if (!dct::split_is_sound(split, repos)) throw dct::Error("split soundness check failed");

    json out{{"train", split.train}, {"validation", split.validation}, {"test", split.test}};
    write_file(output, out.dump(2) + "\n");
    write_manifest(output, "split",
                   {clusters_path.empty() ? repos_path : clusters_path},
                   json{{"fractions", fractions}, {"seed", seed}},
                   json{{"train", split.train.size()},
                        {"validation", split.validation.size()},
                        {"test", split.test.size()}});
    return 0;
}

int cmd_pack(const std::string& corpus_path, const std::string& callgraphs_path,
             const std::string& mode, int input_budget, int output_budget,
             const std::string& sep, const std::string& name_token, const std::string& output) {
    dct::JsonlReadResult corpus = dct::read_jsonl(corpus_path);
    json graphs = callgraphs_path.empty() ? json::object() : load_json(callgraphs_path);

    std::map<std::string, std::map<std::string, std::string>> texts_by_binary;
    for (const auto& r : corpus.records)
        texts_by_binary[r.binary_id][r.decompiled_name] = r.decompiled_text;

    dct::PackOptions opts;
    opts.input_budget = input_budget;
    opts.output_budget = output_budget;
    opts.separator = sep;
    opts.name_indicator = name_token;

    std::ofstream out(output);
    if (!out) throw dct::Error("cannot open for writing: " + output);
    std::size_t packed = 0, skipped_large = 0, skipped_other = 0;
    for (const auto& r : corpus.records) {
        try {
            std::vector<std::string> order;
            if (mode == "functions") {
                order = {r.decompiled_name};
            } else if (!graphs.contains(r.call_graph)) {
                order = {r.decompiled_name};
            } else {
                dct::CallGraph g = dct::call_graph_from_json(graphs.at(r.call_graph));
                order = g.has_node(r.decompiled_name)
                            ? dct::neighbor_order(g, r.decompiled_name)
                            : std::vector<std::string>{r.decompiled_name};
            }
            dct::PackedSequence seq = dct::pack_sequence(order, texts_by_binary[r.binary_id],
                                                         opts, dct::default_tokenizer);
            dct::TrainingExample ex =
                dct::assemble_training_example(seq, r, opts, dct::default_tokenizer);
            json included = json::array();
            for (const auto& span : ex.input.included)
                included.push_back({{"name", span.name},
                                    {"tokens", span.tokens},
                                    {"truncated", span.truncated}});
            json line{{"target_id", r.id},
                      {"included", std::move(included)},
                      {"input_text", ex.input_text},
                      {"output_text", ex.output_text},
                      {"token_counts",
                       json{{"input", ex.input.token_count}, {"output", ex.output_token_count}}}};
            out << line.dump() << "\n";
            ++packed;
        } catch (const dct::TargetTooLargeError&) {
            ++skipped_large;
        } catch (const dct::OutputTooLargeError&) {
            ++skipped_large;
        } catch (const dct::Error& e) {
            std::cerr << "pack: skipping " << r.id << ": " << e.what() << "\n";
            ++skipped_other;
        }
    }
    write_manifest(output, "pack", {corpus_path, callgraphs_path},
                   json{{"mode", mode},
                        {"input_budget", input_budget},
                        {"output_budget", output_budget},
                        {"separator", sep},
                        {"name_indicator", name_token}},
                   json{{"examples", packed},
                        {"skipped_budget", skipped_large},
                        {"skipped_other", skipped_other},
                        {"malformed_corpus_lines", corpus.malformed.size()}});
    std::cerr << "packed " << packed << " examples (" << skipped_large + skipped_other
              << " skipped)\n";
    return 0;
}

int cmd_stats(const std::string& corpus_path, const std::string& json_path) {
    dct::JsonlReadResult corpus = dct::read_jsonl(corpus_path);
    for (const auto& [line, err] : corpus.malformed)
        std::cerr << "stats: malformed line " << line << ": " << err << "\n";
    dct::DatasetStats s = dct::stats(corpus.records);
    std::cout << dct::format_stats(s);
    if (!json_path.empty()) write_file(json_path, dct::stats_to_json(s).dump(2) + "\n");
    write_manifest(json_path.empty() ? corpus_path + ".stats" : json_path, "stats",
                   {corpus_path}, json::object(),
                   json{{"functions", s.functions},
                        {"malformed_lines", corpus.malformed.size()}});
    return 0;
}

int cmd_score(const std::string& predictions_path, const std::string& gold_path,
              const std::string& report_path, const std::string& summary_path, int jobs,
              bool no_strip, const GlobalConfig& cfg) {
    dct::JsonlReadResult gold = dct::read_jsonl(gold_path);
    std::map<std::string, const dct::FunctionRecord*> gold_by_id;
    for (const auto& r : gold.records) gold_by_id[r.id] = &r;

    struct Task {
        std::string id;
        std::string text;
        const dct::FunctionRecord* gold = nullptr;
    };
    std::vector<Task> tasks;
    {
        std::ifstream in(predictions_path);
        if (!in) throw dct::Error("cannot open: " + predictions_path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                json j = json::parse(line);
                Task t;
                t.id = j.at("id").get<std::string>();
                t.text = j.at("predicted_text").get<std::string>();
                auto it = gold_by_id.find(t.id);
                if (it == gold_by_id.end()) {
                    std::cerr << "score: no gold record for " << t.id << "\n";
                    continue;
                }
                t.gold = it->second;
                tasks.push_back(std::move(t));
            } catch (const std::exception& e) {
                std::cerr << "score: malformed prediction line " << line_no << ": " << e.what()
                          << "\n";
            }
        }
    }

    dct::ScoreOptions sopts;
    sopts.iso = cfg.iso_options();
    std::vector<dct::MetricReport> reports(tasks.size());
    auto worker = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            dct::Prediction p = dct::Prediction::from_text(tasks[i].id, tasks[i].text);
            if (!no_strip) p = dct::strip_degenerate_udts(std::move(p));
            reports[i] = dct::score_prediction(p, *tasks[i].gold, sopts);
        }
    };
    int n_jobs = std::max(1, jobs);
    if (n_jobs == 1 || tasks.size() < 2) {
        worker(0, tasks.size());
    } else {
        std::vector<std::thread> threads;
        size_t chunk = (tasks.size() + static_cast<size_t>(n_jobs) - 1) / static_cast<size_t>(n_jobs);
        for (size_t begin = 0; begin < tasks.size(); begin += chunk)
            threads.emplace_back(worker, begin, std::min(tasks.size(), begin + chunk));
        for (auto& t : threads) t.join();
    }

    {
        std::ofstream out(report_path);
        if (!out) throw dct::Error("cannot open for writing: " + report_path);
        for (const auto& r : reports) out << dct::report_to_json(r).dump() << "\n";
    }
    dct::CorpusSummary summary = dct::aggregate(reports);
    std::cout << dct::format_summary_table(summary);
    if (!summary_path.empty()) write_file(summary_path, dct::summary_to_json(summary).dump(2) + "\n");

    write_manifest(report_path, "score", {predictions_path, gold_path},
                   json{{"jobs", n_jobs}, {"strip_degenerate", !no_strip}},
                   json{{"functions", reports.size()},
                        {"parse_failures", summary.parse_failures},
                        {"timeouts", summary.timeouts}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural-decompilation corpus and evaluation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t global_seed = 0;
    int global_jobs = 1;
    app.add_option("--config", config_path, "JSON config file overriding defaults");
    app.add_option("--seed", global_seed, "default RNG seed");
    app.add_option("--jobs", global_jobs, "default worker count");

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "parse preprocessed C into a unit JSON");
    std::string p_input, p_output, p_dialect = "hexrays";
    bool p_rename = false;
    parse_cmd->add_option("--input", p_input, "C source file")->required();
    parse_cmd->add_option("--output", p_output, "unit JSON path")->required();
    parse_cmd->add_option("--dialect", p_dialect, "hexrays|none")
        ->check(CLI::IsMember({"hexrays", "none"}));
    parse_cmd->add_flag("--rename-functions", p_rename, "canonicalize names to funcN");

    // canonicalize
    auto* canon_cmd = app.add_subcommand("canonicalize", "re-canonicalize a unit JSON");
    std::string c_input, c_output;
    bool c_rename = false;
    canon_cmd->add_option("--input", c_input)->required();
    canon_cmd->add_option("--output", c_output)->required();
    canon_cmd->add_flag("--rename-functions", c_rename);

    // match
    auto* match_cmd = app.add_subcommand("match", "pair decompiled and original functions");
    std::string m_decompiled, m_repo, m_binary, m_output, m_callgraphs;
    std::vector<std::string> m_sources;
    match_cmd->add_option("--decompiled", m_decompiled)->required();
    match_cmd->add_option("--sources", m_sources)->required()->expected(-1);
    match_cmd->add_option("--repo", m_repo)->required();
    match_cmd->add_option("--binary", m_binary)->required();
    match_cmd->add_option("--output", m_output)->required();
    match_cmd->add_option("--callgraphs", m_callgraphs, "call-graph JSON to create/extend");

    // dedup
    auto* dedup_cmd = app.add_subcommand("dedup", "minhash near-duplicate clustering");
    std::string d_docs, d_root, d_output;
    int d_k = -1, d_perms = -1, d_bands = -1, d_rows = -1;
    double d_threshold = -1;
    std::int64_t d_seed = -1;
    dedup_cmd->add_option("--docs", d_docs, "JSON listing of repo documents");
    dedup_cmd->add_option("--root", d_root, "directory of repositories");
    dedup_cmd->add_option("--shingle-k", d_k);
    dedup_cmd->add_option("--perms", d_perms);
    dedup_cmd->add_option("--bands", d_bands);
    dedup_cmd->add_option("--rows", d_rows);
    dedup_cmd->add_option("--threshold", d_threshold);
    dedup_cmd->add_option("--seed", d_seed);
    dedup_cmd->add_option("--output", d_output)->required();

    // split
    auto* split_cmd = app.add_subcommand("split", "leak-free by-project corpus split");
    std::string s_clusters, s_repos, s_fractions, s_output;
    std::int64_t s_seed = -1;
    split_cmd->add_option("--clusters", s_clusters, "dedup output (representatives are split)");
    split_cmd->add_option("--repos", s_repos, "plain repo listing JSON");
    split_cmd->add_option("--fractions", s_fractions, "train,validation,test");
    split_cmd->add_option("--seed", s_seed);
    split_cmd->add_option("--output", s_output)->required();

    // pack
    auto* pack_cmd = app.add_subcommand("pack", "assemble context-packed training sequences");
    std::string k_corpus, k_callgraphs, k_mode = "neighbors", k_sep, k_name, k_output;
    int k_input_budget = -1, k_output_budget = -1;
    pack_cmd->add_option("--corpus", k_corpus)->required();
    pack_cmd->add_option("--callgraphs", k_callgraphs);
    pack_cmd->add_option("--mode", k_mode)->check(CLI::IsMember({"neighbors", "functions"}));
    pack_cmd->add_option("--input-budget", k_input_budget);
    pack_cmd->add_option("--output-budget", k_output_budget);
    pack_cmd->add_option("--sep", k_sep);
    pack_cmd->add_option("--name-token", k_name);
    pack_cmd->add_option("--output", k_output)->required();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "corpus statistics");
    std::string t_corpus, t_json;
    stats_cmd->add_option("--corpus", t_corpus)->required();
    stats_cmd->add_option("--json", t_json, "also write JSON stats");

    // score
    auto* score_cmd = app.add_subcommand("score", "score predictions against gold records");
    std::string v_preds, v_gold, v_report, v_summary;
    int v_jobs = 0;
    bool v_no_strip = false;
    score_cmd->add_option("--predictions", v_preds)->required();
    score_cmd->add_option("--gold", v_gold)->required();
    score_cmd->add_option("--report", v_report)->required();
    score_cmd->add_option("--summary", v_summary);
    score_cmd->add_option("--jobs", v_jobs);
    score_cmd->add_flag("--no-strip", v_no_strip, "skip degenerate-UDT stripping");

    CLI11_PARSE(app, argc, argv);

    try {
        GlobalConfig cfg;
        cfg.load(config_path);

        if (*parse_cmd)
            return cmd_parse(p_input, p_output, p_dialect, p_rename, cfg, config_path);
        if (*canon_cmd) return cmd_canonicalize(c_input, c_output, c_rename);
        if (*match_cmd)
            return cmd_match(m_decompiled, m_sources, m_repo, m_binary, m_output, m_callgraphs);
        if (*dedup_cmd) {
            if (d_docs.empty() && d_root.empty())
                throw dct::Error("dedup: provide --docs or --root");
            int k = d_k > 0 ? d_k : cfg.get<int>("dedup", "shingle_k", 5);
            int perms = d_perms > 0 ? d_perms : cfg.get<int>("dedup", "permutations", 128);
            int bands = d_bands > 0 ? d_bands : cfg.get<int>("dedup", "bands", 16);
            int rows = d_rows > 0 ? d_rows : cfg.get<int>("dedup", "rows", 8);
            double thr = d_threshold >= 0 ? d_threshold : cfg.get<double>("dedup", "threshold", 0.7);
            std::uint64_t seed = d_seed >= 0 ? static_cast<std::uint64_t>(d_seed) : global_seed;
            return cmd_dedup(d_docs, d_root, k, perms, bands, rows, thr, seed, d_output);
        }
        if (*split_cmd) {
            if (s_clusters.empty() && s_repos.empty())
                throw dct::Error("split: provide --clusters or --repos");
            std::string fractions = !s_fractions.empty()
                                        ? s_fractions
                                        : cfg.get<std::string>("split", "fractions", "0.9,0.05,0.05");
            std::uint64_t seed = s_seed >= 0 ? static_cast<std::uint64_t>(s_seed) : global_seed;
            return cmd_split(s_clusters, s_repos, fractions, seed, s_output);
        }
        if (*pack_cmd) {
            const bool functions_mode = k_mode == "functions";
            int in_budget = k_input_budget > 0
                                ? k_input_budget
                                : cfg.get<int>("pack", functions_mode ? "functions_input_budget"
                                                                      : "input_budget",
                                               functions_mode ? 1024 : 3072);
            int out_budget = k_output_budget > 0 ? k_output_budget
                                                 : cfg.get<int>("pack", "output_budget", 1024);
            std::string sep = !k_sep.empty() ? k_sep
                                             : cfg.get<std::string>("pack", "separator", "<SEP>");
            std::string name_tok = !k_name.empty()
                                       ? k_name
                                       : cfg.get<std::string>("pack", "name_indicator", "<NAME>");
            return cmd_pack(k_corpus, k_callgraphs, k_mode, in_budget, out_budget, sep, name_tok,
                            k_output);
        }
        if (*stats_cmd) return cmd_stats(t_corpus, t_json);
        if (*score_cmd)
            return cmd_score(v_preds, v_gold, v_report, v_summary,
                             v_jobs > 0 ? v_jobs : global_jobs, v_no_strip, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
