#include "dct/tu_json.hpp"

#include "dct/parser.hpp"
#include "dct/type_json.hpp"

namespace dct {

using nlohmann::json;

json unit_to_json(const TranslationUnit& unit, const NameMap* names) {
    json j;
    json fns = json::array();
    for (const auto& f : unit.functions) {
        json fj;
        fj["name"] = f.name;
        fj["line"] = f.line;
        if (f.error) {
            fj["error"] = *f.error;
        } else {
            fj["text"] = f.canonical_text.empty() ? render_function(f) : f.canonical_text;
        }
        if (f.return_type) fj["return_type"] = type_to_json(f.return_type);
        json params = json::array();
        for (size_t i = 0; i < f.param_names.size(); ++i) {
            params.push_back({{"name", f.param_names[i]}, {"type", type_to_json(f.param_types[i])}});
        }
        fj["params"] = std::move(params);
        if (f.variadic) fj["variadic"] = true;
        json vars = json::array();
        for (const auto& [name, type] : f.variables)
            vars.push_back({{"name", name}, {"type", type_to_json(type)}});
        fj["variables"] = std::move(vars);
        fns.push_back(std::move(fj));
    }
    j["functions"] = std::move(fns);

    json typedefs = json::object();
    for (const auto& [name, target] : unit.typedefs.entries())
        typedefs[name] = type_to_json(target);
    j["typedefs"] = std::move(typedefs);

    json udts = json::object();
    udts["order"] = unit.udt_order;
    json defs = json::object();
    for (const auto& [tag, def] : unit.udts) defs[tag] = type_to_json(def);
    udts["defs"] = std::move(defs);
    j["udts"] = std::move(udts);

    json skipped = json::array();
    for (const auto& s : unit.skipped)
        skipped.push_back({{"name", s.name}, {"reason", s.reason}, {"line", s.line}});
    j["skipped"] = std::move(skipped);

    if (names) {
        json nm = json::object();
        for (const auto& [orig, canon] : names->forward) nm[orig] = canon;
        j["name_map"] = std::move(nm);
    }
    return j;
}

TranslationUnit unit_from_json(const json& j, NameMap* names) {
    TranslationUnit unit;
    if (j.contains("typedefs"))
        for (const auto& [name, t] : j.at("typedefs").items())
            unit.typedefs.define(name, type_from_json(t));
    if (j.contains("udts")) {
        const json& udts = j.at("udts");
        if (udts.contains("order"))
            unit.udt_order = udts.at("order").get<std::vector<std::string>>();
        if (udts.contains("defs"))
            for (const auto& [tag, t] : udts.at("defs").items())
                unit.udts[tag] = type_from_json(t);
    }
    for (const auto& fj : j.at("functions")) {
        ParsedFunction fn;
        fn.name = fj.at("name").get<std::string>();
        fn.line = fj.value("line", 0);
        if (fj.contains("return_type")) fn.return_type = type_from_json(fj.at("return_type"));
        if (fj.contains("params")) {
            for (const auto& p : fj.at("params")) {
                fn.param_names.push_back(p.at("name").get<std::string>());
                fn.param_types.push_back(type_from_json(p.at("type")));
            }
        }
        fn.variadic = fj.value("variadic", false);
        if (fj.contains("variables"))
            for (const auto& v : fj.at("variables"))
                fn.variables.emplace_back(v.at("name").get<std::string>(),
                                          type_from_json(v.at("type")));
        if (fj.contains("error")) {
            fn.error = fj.at("error").get<std::string>();
        } else {
            fn.canonical_text = fj.at("text").get<std::string>();
            // canonical text re-parses to the stored function's AST
            TranslationUnit sub = parse_translation_unit(fn.canonical_text);
            if (sub.functions.size() == 1 && !sub.functions[0].error) {
                fn.body = std::move(sub.functions[0].body);
            } else {
                fn.error = "stored text failed to re-parse";
            }
        }
        unit.functions.push_back(std::move(fn));
    }
    if (j.contains("skipped"))
        for (const auto& s : j.at("skipped"))
            unit.skipped.push_back({s.value("name", std::string()),
                                    s.value("reason", std::string()), s.value("line", 0)});
    if (names && j.contains("name_map")) {
        for (const auto& [orig, canon] : j.at("name_map").items()) {
            names->forward[orig] = canon.get<std::string>();
            names->reverse[canon.get<std::string>()] = orig;
        }
    }
    return unit;
}

}  // namespace dct
