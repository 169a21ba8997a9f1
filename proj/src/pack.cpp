#include "dct/pack.hpp"

#include <cctype>
#include <sstream>

#include "dct/type_render.hpp"

namespace dct {

std::vector<std::string> default_tokenizer(const std::string& text) {
    std::vector<std::string> out;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) {
            out.push_back(word);
            word.clear();
        }
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            word += c;
        } else {
            flush();
            out.push_back(std::string(1, c));
        }
    }
    flush();
    return out;
}

PackedSequence pack_sequence(const std::vector<std::string>& order,
                             const std::map<std::string, std::string>& texts,
                             const PackOptions& opts, const Tokenizer& tok) {
    if (order.empty()) throw Error("pack_sequence: empty order");
    PackedSequence seq;
    seq.target = order.front();
    seq.separator = opts.separator;
    seq.name_indicator = opts.name_indicator;

    std::vector<std::string> name_tokens = tok(seq.target);
    const int overhead = 1 + static_cast<int>(name_tokens.size()) + 1;  // <NAME> name <SEP>
    const int available = opts.input_budget - overhead;

    std::vector<std::string> target_tokens = tok(texts.at(seq.target));
    if (static_cast<int>(target_tokens.size()) > available)
        throw TargetTooLargeError("target does not fit the input budget: " + seq.target);

    int remaining = available;
    for (const auto& name : order) {
        if (remaining <= 0) break;
        auto it = texts.find(name);
        if (it == texts.end()) continue;
        std::vector<std::string> toks = tok(it->second);
        int take = std::min<int>(remaining, static_cast<int>(toks.size()));
        if (take == 0) break;
        seq.included.push_back(
            PackedSpan{name, take, take < static_cast<int>(toks.size())});
        seq.tokens.insert(seq.tokens.end(), toks.begin(), toks.begin() + take);
        remaining -= take;
        if (seq.included.back().truncated) break;  // the cut function is the last
    }
    seq.tokens.push_back(opts.name_indicator);
    seq.tokens.insert(seq.tokens.end(), name_tokens.begin(), name_tokens.end());
    seq.tokens.push_back(opts.separator);
    seq.token_count = static_cast<int>(seq.tokens.size());
    return seq;
}

TrainingExample assemble_training_example(const PackedSequence& packed,
                                          const FunctionRecord& gold,
                                          const PackOptions& opts, const Tokenizer& tok) {
    TrainingExample ex;
    ex.input = packed;

    std::ostringstream out_text;
    out_text << gold.canonical_original_text;
    for (const auto& udt : gold.udt_closure) out_text << "\n" << render_udt_definition(udt) << "\n";
    ex.output_tokens = tok(out_text.str());
    ex.output_token_count = static_cast<int>(ex.output_tokens.size());
    if (ex.output_token_count > opts.output_budget)
        throw OutputTooLargeError("gold output exceeds the output budget: " + gold.id);

    auto join = [](const std::vector<std::string>& toks) {
        std::string s;
        for (size_t i = 0; i < toks.size(); ++i) {
            if (i) s += ' ';
            s += toks[i];
        }
        return s;
    };
    ex.input_text = join(packed.tokens);
    ex.output_text = join(ex.output_tokens);
    return ex;
}

}  // namespace dct
