#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dct/errors.hpp"

namespace dct {

enum class Tok {
    End,
    Ident,
    IntLit,
    FloatLit,
    CharLit,
    StringLit,
    Punct,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;

    bool is(const char* s) const { return text == s; }
    bool is_punct(const char* s) const { return kind == Tok::Punct && text == s; }
};

// Pre-lex normalization for decompiler output: maps dialect tokens
// (_DWORD, __fastcall, ...) into canonical primitives or drops them.
struct Dialect {
    std::map<std::string, std::string> replacements;  // ident -> token text to splice in
    std::set<std::string> dropped;                    // idents skipped entirely
    std::set<std::string> dropped_with_parens;        // idents skipped with a balanced (...) group

    static Dialect hexrays();
    static Dialect none() { return Dialect{}; }
};

// Tokenize preprocessed C. Comments (including trailing "// rax" register
// notes) are trivia. Throws ParseError on malformed input.
std::vector<Token> lex(const std::string& source, const Dialect& dialect = Dialect::hexrays());

}  // namespace dct
