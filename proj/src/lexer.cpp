#include "dct/lexer.hpp"

#include <cctype>

namespace dct {

Dialect Dialect::hexrays() {
    Dialect d;
    d.replacements = {
        {"_BYTE", "unsigned char"},   {"_WORD", "unsigned short"},
        {"_DWORD", "unsigned int"},   {"_QWORD", "unsigned long long"},
        {"_OWORD", "unsigned long long"},
        {"_BOOL1", "unsigned char"},  {"_BOOL2", "unsigned short"},
        {"_BOOL4", "unsigned int"},   {"_BOOL8", "unsigned long long"},
        {"__int8", "char"},           {"__int16", "short"},
        {"__int32", "int"},           {"__int64", "long long"},
        {"_UNKNOWN", "void"},
        {"__restrict", ""},           {"__restrict__", ""},
        {"__inline", ""},             {"__inline__", ""},
        {"__forceinline", ""},        {"__extension__", ""},
        {"__signed__", "signed"},     {"__volatile__", "volatile"},
        {"__const", "const"},
    };
    d.dropped = {"__fastcall", "__cdecl", "__stdcall", "__thiscall", "__usercall",
                 "__userpurge", "__noreturn", "__hidden", "__unaligned", "__golang",
                 "__spoils", "__high"};
    d.dropped_with_parens = {"__attribute__", "__declspec", "__asm__attr"};
    return d;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Multi-character punctuators, longest first.
const char* const kPuncts[] = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=",
};

struct Cursor {
    const std::string& src;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(size_t off = 0) const { return pos + off < src.size() ? src[pos + off] : '\0'; }
    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
};

void skip_trivia(Cursor& c) {
    while (!c.done()) {
        char ch = c.peek();
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v') {
            c.advance();
        } else if (ch == '/' && c.peek(1) == '/') {
            while (!c.done() && c.peek() != '\n') c.advance();
        } else if (ch == '/' && c.peek(1) == '*') {
            int line = c.line, col = c.col;
            c.advance();
            c.advance();
            while (!c.done() && !(c.peek() == '*' && c.peek(1) == '/')) c.advance();
            if (c.done()) throw ParseError("unterminated block comment", line, col);
            c.advance();
            c.advance();
        } else if (ch == '\\' && c.peek(1) == '\n') {
            c.advance();
            c.advance();
        } else {
            break;
        }
    }
}

std::string lex_quoted(Cursor& c, char quote) {
    int line = c.line, col = c.col;
    std::string text;
    text += c.advance();  // opening quote
    while (!c.done()) {
        char ch = c.advance();
        text += ch;
        if (ch == '\\') {
            if (c.done()) break;
            text += c.advance();
        } else if (ch == quote) {
            return text;
        } else if (ch == '\n') {
            break;
        }
    }
    throw ParseError(std::string("unterminated ") + (quote == '"' ? "string" : "character") +
                         " literal",
                     line, col);
}

Token lex_number(Cursor& c) {
    Token t;
    t.line = c.line;
    t.column = c.col;
    std::string text;
    bool is_float = false;
    bool hex = false;
    if (c.peek() == '0' && (c.peek(1) == 'x' || c.peek(1) == 'X')) {
        hex = true;
        text += c.advance();
        text += c.advance();
    }
    while (!c.done()) {
        char ch = c.peek();
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (hex && std::isxdigit(static_cast<unsigned char>(ch)))) {
            text += c.advance();
        } else if (ch == '.') {
            is_float = true;
            text += c.advance();
        } else if (!hex && (ch == 'e' || ch == 'E')) {
            is_float = true;
            text += c.advance();
            if (c.peek() == '+' || c.peek() == '-') text += c.advance();
        } else if (hex && (ch == 'p' || ch == 'P')) {
            is_float = true;
            text += c.advance();
            if (c.peek() == '+' || c.peek() == '-') text += c.advance();
        } else if (ident_char(ch)) {
            // suffixes (u, l, f, ...) and hex digits handled above
            if (!hex && (ch == 'f' || ch == 'F')) is_float = true;
            text += c.advance();
        } else {
            break;
        }
    }
    t.kind = is_float ? Tok::FloatLit : Tok::IntLit;
    t.text = std::move(text);
    return t;
}

}  // namespace

std::vector<Token> lex(const std::string& source, const Dialect& dialect) {
    std::vector<Token> out;
    Cursor c{source};
    while (true) {
        skip_trivia(c);
        if (c.done()) break;
        char ch = c.peek();
        int line = c.line, col = c.col;

        if (ident_start(ch)) {
            std::string word;
            while (!c.done() && ident_char(c.peek())) word += c.advance();
            if (dialect.dropped.count(word)) continue;
            if (dialect.dropped_with_parens.count(word)) {
                skip_trivia(c);
                if (c.peek() == '(') {
                    int depth = 0;
                    do {
                        char p = c.advance();
                        if (p == '(') ++depth;
                        else if (p == ')') --depth;
                    } while (!c.done() && depth > 0);
                }
                continue;
            }
            auto rep = dialect.replacements.find(word);
            if (rep != dialect.replacements.end()) {
                // Splice the replacement tokens (possibly none).
                std::vector<Token> spliced = lex(rep->second, Dialect::none());
                spliced.pop_back();  // drop the End marker
                for (auto& s : spliced) {
                    s.line = line;
                    s.column = col;
                    out.push_back(std::move(s));
                }
                continue;
            }
            out.push_back(Token{Tok::Ident, std::move(word), line, col});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && std::isdigit(static_cast<unsigned char>(c.peek(1))))) {
            out.push_back(lex_number(c));
            continue;
        }
        if (ch == '"') {
            out.push_back(Token{Tok::StringLit, lex_quoted(c, '"'), line, col});
            continue;
        }
        if (ch == '\'') {
            out.push_back(Token{Tok::CharLit, lex_quoted(c, '\''), line, col});
            continue;
        }
        if (ch == '#') {
            // Stray preprocessor residue; skip the rest of the line.
            while (!c.done() && c.peek() != '\n') c.advance();
            continue;
        }

        bool matched = false;
        for (const char* p : kPuncts) {
            size_t len = std::char_traits<char>::length(p);
            if (source.compare(c.pos, len, p) == 0) {
                for (size_t i = 0; i < len; ++i) c.advance();
                out.push_back(Token{Tok::Punct, p, line, col});
                matched = true;
                break;
            }
        }
        if (matched) continue;

        static const std::string singles = "+-*/%<>=!&|^~?:;,.(){}[]";
        if (singles.find(ch) != std::string::npos) {
            c.advance();
            out.push_back(Token{Tok::Punct, std::string(1, ch), line, col});
            continue;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    out.push_back(Token{Tok::End, "", c.line, c.col});
    return out;
}

}  // namespace dct
