#pragma once

#include <string>

#include "dct/c_ast.hpp"
#include "dct/lexer.hpp"

namespace dct {

struct ParseOptions {
    Dialect dialect = Dialect::hexrays();
    // Optional remap of the canonical primitive vocabulary (default: C
    // keywords), e.g. {"int", "i32"} to swap in another convention.
    std::map<std::string, std::string> primitive_spellings;
};

// Parse preprocessed C (original or decompiler-style). Functions with
// unsupported constructs or body-level syntax errors are kept with `error`
// set (or listed in `skipped` when no name could be recovered); only
// globally malformed input throws ParseError.
TranslationUnit parse_translation_unit(const std::string& text, const ParseOptions& opts = {});

}  // namespace dct
