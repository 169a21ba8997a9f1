#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dct/corpus.hpp"

namespace dct {

using Tokenizer = std::function<std::vector<std::string>(const std::string&)>;

// Deterministic default: whitespace-separated words, punctuation characters
// as single tokens. The separator/name-indicator literals contain
// punctuation and therefore can never collide with tokenizer output.
std::vector<std::string> default_tokenizer(const std::string& text);

struct PackOptions {
    int input_budget = 3072;
    int output_budget = 1024;
    std::string separator = "<SEP>";
    std::string name_indicator = "<NAME>";
};

struct PackedSpan {
    std::string name;
    int tokens = 0;
    bool truncated = false;
};

// Input-side token sequence per the training layout: target first, then
// neighbors until the budget cuts the stream, then the name-indicator token,
// the target's decompiled name, and the separator. The separator counts
// against the input budget.
struct PackedSequence {
    std::string target;
    std::vector<PackedSpan> included;  // target first, distinct functions
    std::vector<std::string> tokens;   // full input side, ending in the separator
    int token_count = 0;
    std::string separator;
    std::string name_indicator;
};

struct TargetTooLargeError : Error {
    using Error::Error;
};
struct OutputTooLargeError : Error {
    using Error::Error;
};

// order: neighbor_order output (target first); texts: function name -> text.
PackedSequence pack_sequence(const std::vector<std::string>& order,
                             const std::map<std::string, std::string>& texts,
                             const PackOptions& opts, const Tokenizer& tok);

struct TrainingExample {
    PackedSequence input;
    std::vector<std::string> output_tokens;  // gold function text, then UDT definitions
    int output_token_count = 0;
    std::string input_text;
    std::string output_text;
};

// Output side: gold canonical text followed by the UDT definitions in
// closure order. Inference mode is the input side alone (ends with the
// separator). Throws OutputTooLargeError past the output budget.
TrainingExample assemble_training_example(const PackedSequence& packed,
                                          const FunctionRecord& gold,
                                          const PackOptions& opts, const Tokenizer& tok);

}  // namespace dct
