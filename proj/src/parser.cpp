#include "dct/parser.hpp"

#include <cstdlib>
#include <set>

#include "dct/literals.hpp"

namespace dct {

namespace {

const std::set<std::string> kPrimitiveKeywords = {
    "void", "char", "short", "int", "long", "signed", "unsigned",
    "float", "double", "_Bool"};
const std::set<std::string> kQualifiers = {"const", "volatile", "restrict", "_Atomic"};
const std::set<std::string> kStorage = {"static", "extern", "register", "auto", "inline",
                                        "_Noreturn", "_Thread_local"};
const std::set<std::string> kKeywords = {
    "void", "char", "short", "int", "long", "signed", "unsigned", "float", "double",
    "_Bool", "struct", "union", "enum", "typedef", "const", "volatile", "restrict",
    "static", "extern", "register", "auto", "inline", "if", "else", "while", "do",
    "for", "return", "break", "continue", "switch", "case", "default", "goto",
    "sizeof", "_Atomic", "_Noreturn", "_Thread_local"};

struct SpecResult {
    TypePtr type;           // null when no type specifier was seen
    bool is_typedef = false;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const ParseOptions& opts)
        : toks_(std::move(toks)), opts_(opts) {}

    TranslationUnit run() {
        while (!at(Tok::End)) {
            if (accept(";")) continue;
            size_t before = pos_;
            try {
                parse_external_declaration();
            } catch (const ParseError& e) {
                // Recover at the top level: skip to the next plausible
                // declaration boundary and log the stretch.
                unit_.skipped.push_back({pending_name_, e.what(), e.line});
                pos_ = before;
                skip_to_toplevel_boundary();
                if (pos_ == before) ++pos_;  // guarantee progress
            }
            pending_name_.clear();
        }
        return std::move(unit_);
    }

private:
    std::vector<Token> toks_;
    const ParseOptions& opts_;
    size_t pos_ = 0;
    TranslationUnit unit_;
    std::set<std::string> typedef_names_;
    std::map<std::string, long long> enum_constants_;
    long long anon_counter_ = 0;
    std::string pending_name_;  // best-effort name for top-level skip records

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(size_t off = 0) const {
        size_t i = pos_ + off;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return cur().kind == k; }
    bool at(const char* text) const { return cur().text == text; }
    bool at_punct(const char* text) const { return cur().kind == Tok::Punct && cur().text == text; }

    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(const char* text) {
        if (cur().text == text && cur().kind != Tok::End) {
            advance();
            return true;
        }
        return false;
    }

    void expect(const char* text) {
        if (!accept(text))
            throw ParseError(std::string("expected '") + text + "', found '" + cur().text + "'",
                             cur().line, cur().column);
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, cur().line, cur().column);
    }

    [[noreturn]] void unsupported(const std::string& what) {
        throw UnsupportedConstructError("unsupported construct: " + what, cur().line, cur().column);
    }

    bool is_type_start(const Token& t) const {
        if (t.kind != Tok::Ident) return false;
        if (kPrimitiveKeywords.count(t.text) || kQualifiers.count(t.text)) return true;
        if (t.text == "struct" || t.text == "union" || t.text == "enum") return true;
        return typedef_names_.count(t.text) != 0;
    }

    bool is_decl_start(const Token& t) const {
        if (t.kind != Tok::Ident) return false;
        return is_type_start(t) || kStorage.count(t.text) || t.text == "typedef";
    }

    void skip_to_toplevel_boundary() {
        int depth = 0;
        while (!at(Tok::End)) {
            if (at_punct("{")) ++depth;
            else if (at_punct("}")) {
                --depth;
                if (depth <= 0) {
                    advance();
                    return;
                }
            } else if (at_punct(";") && depth == 0) {
                advance();
                return;
            }
            advance();
        }
    }

    void skip_balanced_braces() {
        expect("{");
        int depth = 1;
        while (!at(Tok::End) && depth > 0) {
            if (at_punct("{")) ++depth;
            if (at_punct("}")) --depth;
            advance();
        }
    }

    // ---- specifiers -------------------------------------------------------

    std::string canonical_primitive(const std::vector<std::string>& prims) {
        int longs = 0;
        bool v = false, c = false, s = false, i = false, sign = false, uns = false;
        bool f = false, d = false, b = false;
        for (const auto& p : prims) {
            if (p == "long") ++longs;
            else if (p == "void") v = true;
            else if (p == "char") c = true;
            else if (p == "short") s = true;
            else if (p == "int") i = true;
            else if (p == "signed") sign = true;
            else if (p == "unsigned") uns = true;
            else if (p == "float") f = true;
            else if (p == "double") d = true;
            else if (p == "_Bool") b = true;
        }
        if (v) return "void";
        if (b) return "_Bool";
        if (f) return "float";
        if (d) return longs ? "long double" : "double";
        if (c) return uns ? "unsigned char" : sign ? "signed char" : "char";
        if (s) return uns ? "unsigned short" : "short";
        if (longs >= 2) return uns ? "unsigned long long" : "long long";
        if (longs == 1) return uns ? "unsigned long" : "long";
        if (i || sign || uns) return uns ? "unsigned int" : "int";
        fail("invalid type specifier combination");
    }

    std::string respell(std::string canonical) {
        auto it = opts_.primitive_spellings.find(canonical);
        return it == opts_.primitive_spellings.end() ? canonical : it->second;
    }

    SpecResult parse_specifiers() {
        SpecResult out;
        std::vector<std::string> prims;
        TypePtr tagged;
        while (true) {
            const Token& t = cur();
            if (t.kind != Tok::Ident) break;
            if (t.text == "typedef") {
                out.is_typedef = true;
                advance();
            } else if (kStorage.count(t.text) || kQualifiers.count(t.text)) {
                advance();  // qualifiers stripped during canonicalization
            } else if (kPrimitiveKeywords.count(t.text)) {
                prims.push_back(t.text);
                advance();
            } else if (t.text == "struct" || t.text == "union") {
                tagged = parse_struct_union();
            } else if (t.text == "enum") {
                tagged = parse_enum();
            } else if (prims.empty() && !tagged && typedef_names_.count(t.text)) {
                tagged = TypeNode::alias(t.text);
                advance();
            } else {
                break;
            }
        }
        if (tagged && !prims.empty()) fail("conflicting type specifiers");
        if (tagged) out.type = tagged;
        else if (!prims.empty())
            out.type = TypeNode::primitive(respell(canonical_primitive(prims)));
        return out;
    }

    TypePtr parse_struct_union() {
        const bool is_union = cur().text == "union";
        advance();
        std::string tag;
        if (at(Tok::Ident) && !at_punct("{") && cur().text != "{") {
            if (cur().kind == Tok::Ident && !kKeywords.count(cur().text)) tag = advance().text;
        }
        if (!at_punct("{")) {
            if (tag.empty()) fail("struct/union requires a tag or a body");
            return is_union ? TypeNode::union_ref(tag) : TypeNode::struct_ref(tag);
        }
        advance();  // {
        std::vector<Field> fields;
        while (!at_punct("}")) {
            if (at(Tok::End)) fail("unterminated struct body");
            if (accept(";")) continue;
            SpecResult spec = parse_specifiers();
            if (!spec.type) fail("expected field type");
            if (at_punct(";")) {
                // anonymous struct/union member
                fields.push_back(Field{"", spec.type, std::nullopt});
                advance();
                continue;
            }
            while (true) {
                Field f;
                f.type = spec.type;
                if (at_punct(":")) {
                    advance();
                    f.bit_width = static_cast<int>(parse_const_expr());
                } else {
                    DeclInfo d = parse_declarator(spec.type, false);
                    f.name = d.name;
                    f.type = d.type;
                    if (accept(":")) f.bit_width = static_cast<int>(parse_const_expr());
                }
                fields.push_back(std::move(f));
                if (!accept(",")) break;
            }
            expect(";");
        }
        advance();  // }
        TypePtr node = is_union ? TypeNode::union_type(tag, std::move(fields))
                                : TypeNode::struct_type(tag, std::move(fields));
        if (!tag.empty()) {
            if (!unit_.udts.count(tag)) unit_.udt_order.push_back(tag);
            unit_.udts[tag] = node;
        }
        return node;
    }

    TypePtr parse_enum() {
        advance();  // enum
        std::string tag;
        if (at(Tok::Ident) && !kKeywords.count(cur().text)) tag = advance().text;
        if (!at_punct("{")) {
            if (tag.empty()) fail("enum requires a tag or a body");
            return TypeNode::enum_ref(tag);
        }
        advance();
        std::vector<Enumerator> es;
        long long next = 0;
        while (!at_punct("}")) {
            if (at(Tok::End)) fail("unterminated enum body");
            if (cur().kind != Tok::Ident) fail("expected enumerator name");
            Enumerator e;
            e.name = advance().text;
            if (accept("=")) {
                long long v = parse_const_expr();
                e.value = v;
                next = v + 1;
            } else {
                next += 1;
            }
            long long effective = e.value ? *e.value : next - 1;
            enum_constants_[e.name] = effective;
            es.push_back(std::move(e));
            if (!accept(",")) break;
        }
        expect("}");
        TypePtr node = TypeNode::enum_type(tag, std::move(es));
        if (!tag.empty()) {
            if (!unit_.udts.count(tag)) unit_.udt_order.push_back(tag);
            unit_.udts[tag] = node;
        }
        return node;
    }

    // ---- declarators ------------------------------------------------------

    struct DeclInfo {
        std::string name;
        TypePtr type;
        std::vector<std::string> param_names;  // of the outermost function suffix
        bool simple_function = false;          // declarator was `ident(params)`
    };

    struct Suffix {
        bool is_fn = false;
        std::optional<std::uint64_t> array_len;
        std::vector<TypePtr> param_types;
        std::vector<std::string> param_names;
        bool variadic = false;
    };

    DeclInfo parse_declarator(TypePtr base, bool abstract_ok) {
        while (at_punct("*")) {
            advance();
            while (cur().kind == Tok::Ident && kQualifiers.count(cur().text)) advance();
            base = TypeNode::pointer(base);
        }
        return parse_direct_declarator(std::move(base), abstract_ok);
    }

    bool paren_opens_declarator() const {
        // called with cur() == '(' : decide paren-declarator vs function suffix
        const Token& n = peek(1);
        if (n.kind == Tok::Punct) return n.text == "*" || n.text == "(";
        if (n.kind != Tok::Ident) return false;
        if (is_type_start(n) || n.text == "...") return false;
        if (n.text == "void") return false;
        return !kKeywords.count(n.text);
    }

    DeclInfo parse_direct_declarator(TypePtr base, bool abstract_ok) {
        size_t paren_start = SIZE_MAX;
        std::string name;
        if (at_punct("(") && paren_opens_declarator()) {
            paren_start = pos_;
            int depth = 0;
            do {
                if (at_punct("(")) ++depth;
                else if (at_punct(")")) --depth;
                advance();
                if (at(Tok::End)) fail("unbalanced parentheses in declarator");
            } while (depth > 0);
        } else if (at(Tok::Ident) && !kKeywords.count(cur().text)) {
            name = advance().text;
        } else if (!abstract_ok) {
            fail("expected declarator name");
        }

        std::vector<Suffix> sufs;
        while (true) {
            if (at_punct("[")) {
                advance();
                Suffix s;
                if (!at_punct("]")) s.array_len = static_cast<std::uint64_t>(parse_const_expr());
                expect("]");
                sufs.push_back(std::move(s));
            } else if (at_punct("(")) {
                Suffix s;
                s.is_fn = true;
                parse_parameter_list(s);
                sufs.push_back(std::move(s));
            } else {
                break;
            }
        }

        // Suffixes apply left-to-right from the outside in.
        TypePtr t = std::move(base);
        for (auto it = sufs.rbegin(); it != sufs.rend(); ++it) {
            if (it->is_fn) t = TypeNode::function(t, it->param_types, it->variadic);
            else t = TypeNode::array_of(t, it->array_len);
        }

        DeclInfo out;
        if (paren_start != SIZE_MAX) {
            size_t after = pos_;
            pos_ = paren_start;
            expect("(");
            DeclInfo inner = parse_declarator(std::move(t), abstract_ok);
            expect(")");
            pos_ = after;
            out = std::move(inner);
        } else {
            out.name = std::move(name);
            out.type = std::move(t);
            if (!sufs.empty() && sufs.front().is_fn) {
                out.param_names = sufs.front().param_names;
                out.simple_function = true;
            }
        }
        return out;
    }

    void parse_parameter_list(Suffix& s) {
        expect("(");
        if (accept(")")) return;  // () treated as (void)
        if (at("void") && peek(1).is_punct(")")) {
            advance();
            advance();
            return;
        }
        while (true) {
            if (accept("...")) {
                s.variadic = true;
                break;
            }
            SpecResult spec = parse_specifiers();
            if (!spec.type) fail("expected parameter type");
            DeclInfo d = parse_declarator(spec.type, true);
            TypePtr pt = d.type;
            // standard parameter adjustments
            if (pt->kind == TypeKind::Array) pt = TypeNode::pointer(pt->element);
            else if (pt->kind == TypeKind::Function) pt = TypeNode::pointer(pt);
            s.param_types.push_back(pt);
            s.param_names.push_back(d.name);
            if (!accept(",")) break;
        }
        expect(")");
    }

    TypePtr parse_type_name() {
        SpecResult spec = parse_specifiers();
        if (!spec.type) fail("expected type name");
        DeclInfo d = parse_declarator(spec.type, true);
        if (!d.name.empty()) fail("unexpected identifier in type name");
        return d.type;
    }

    // ---- constant expressions --------------------------------------------

    long long parse_const_expr() {
        ExprPtr e = parse_conditional();
        return eval_const(*e);
    }

    long long eval_const(const Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLit:
                return int_literal_value(e.text);
            case ExprKind::CharLit:
                return char_literal_value(e.text);
            case ExprKind::Ident: {
                auto it = enum_constants_.find(e.text);
                if (it != enum_constants_.end()) return it->second;
                throw ParseError("not a constant: " + e.text, e.line, 0);
            }
            case ExprKind::Unary:
                switch (e.un_op) {
                    case UnOp::Neg: return -eval_const(*e.a);
                    case UnOp::Plus: return eval_const(*e.a);
                    case UnOp::BitNot: return ~eval_const(*e.a);
                    case UnOp::LogNot: return !eval_const(*e.a);
                    default: break;
                }
                break;
            case ExprKind::Binary: {
                long long l = eval_const(*e.a);
                long long r = eval_const(*e.b);
                switch (e.bin_op) {
                    case BinOp::Mul: return l * r;
                    case BinOp::Div: return r ? l / r : 0;
                    case BinOp::Mod: return r ? l % r : 0;
                    case BinOp::Add: return l + r;
                    case BinOp::Sub: return l - r;
                    case BinOp::Shl: return l << r;
                    case BinOp::Shr: return l >> r;
                    case BinOp::Lt: return l < r;
                    case BinOp::Gt: return l > r;
                    case BinOp::Le: return l <= r;
                    case BinOp::Ge: return l >= r;
                    case BinOp::Eq: return l == r;
                    case BinOp::Ne: return l != r;
                    case BinOp::BitAnd: return l & r;
                    case BinOp::BitXor: return l ^ r;
                    case BinOp::BitOr: return l | r;
                    case BinOp::LogAnd: return l && r;
                    case BinOp::LogOr: return l || r;
                }
                break;
            }
            case ExprKind::Conditional:
                return eval_const(*e.a) ? eval_const(*e.b) : eval_const(*e.c);
            case ExprKind::Cast:
                return eval_const(*e.a);
            default:
                break;
        }
        throw ParseError("expression is not an integer constant", e.line, 0);
    }

    // ---- expressions ------------------------------------------------------

    ExprPtr make_expr(ExprKind k) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->line = cur().line;
        return e;
    }

    ExprPtr parse_expression() {
        ExprPtr e = parse_assignment();
        while (at_punct(",")) {
            advance();
            auto node = make_expr(ExprKind::Comma);
            node->a = std::move(e);
            node->b = parse_assignment();
            e = std::move(node);
        }
        return e;
    }

    bool assign_op(BinOp* op, bool* compound) {
        const std::string& t = cur().text;
        if (cur().kind != Tok::Punct) return false;
        *compound = true;
        if (t == "=") { *compound = false; return true; }
        if (t == "+=") { *op = BinOp::Add; return true; }
        if (t == "-=") { *op = BinOp::Sub; return true; }
        if (t == "*=") { *op = BinOp::Mul; return true; }
        if (t == "/=") { *op = BinOp::Div; return true; }
        if (t == "%=") { *op = BinOp::Mod; return true; }
        if (t == "<<=") { *op = BinOp::Shl; return true; }
        if (t == ">>=") { *op = BinOp::Shr; return true; }
        if (t == "&=") { *op = BinOp::BitAnd; return true; }
        if (t == "^=") { *op = BinOp::BitXor; return true; }
        if (t == "|=") { *op = BinOp::BitOr; return true; }
        return false;
    }

    ExprPtr parse_assignment() {
        ExprPtr lhs = parse_conditional();
        BinOp op{};
        bool compound = false;
        if (assign_op(&op, &compound)) {
            auto node = make_expr(ExprKind::Assign);
            advance();
            node->a = std::move(lhs);
            node->bin_op = op;
            node->compound = compound;
            node->b = parse_assignment();
            return node;
        }
        return lhs;
    }

    ExprPtr parse_conditional() {
        ExprPtr cond = parse_binary(4);
        if (at_punct("?")) {
            advance();
            auto node = make_expr(ExprKind::Conditional);
            node->a = std::move(cond);
            node->b = parse_expression();
            expect(":");
            node->c = parse_conditional();
            return node;
        }
        return cond;
    }

    int binary_prec(const Token& t, BinOp* op) const {
        if (t.kind != Tok::Punct) return 0;
        const std::string& s = t.text;
        if (s == "*") { *op = BinOp::Mul; return 13; }
        if (s == "/") { *op = BinOp::Div; return 13; }
        if (s == "%") { *op = BinOp::Mod; return 13; }
        if (s == "+") { *op = BinOp::Add; return 12; }
        if (s == "-") { *op = BinOp::Sub; return 12; }
        if (s == "<<") { *op = BinOp::Shl; return 11; }
        if (s == ">>") { *op = BinOp::Shr; return 11; }
        if (s == "<") { *op = BinOp::Lt; return 10; }
        if (s == ">") { *op = BinOp::Gt; return 10; }
        if (s == "<=") { *op = BinOp::Le; return 10; }
        if (s == ">=") { *op = BinOp::Ge; return 10; }
        if (s == "==") { *op = BinOp::Eq; return 9; }
        if (s == "!=") { *op = BinOp::Ne; return 9; }
        if (s == "&") { *op = BinOp::BitAnd; return 8; }
        if (s == "^") { *op = BinOp::BitXor; return 7; }
        if (s == "|") { *op = BinOp::BitOr; return 6; }
        if (s == "&&") { *op = BinOp::LogAnd; return 5; }
        if (s == "||") { *op = BinOp::LogOr; return 4; }
        return 0;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_cast_expr();
        while (true) {
            BinOp op{};
            int prec = binary_prec(cur(), &op);
            if (prec == 0 || prec < min_prec) return lhs;
            advance();
            ExprPtr rhs = parse_binary(prec + 1);
            auto node = std::make_unique<Expr>();
            node->kind = ExprKind::Binary;
            node->bin_op = op;
            node->line = lhs->line;
            node->a = std::move(lhs);
            node->b = std::move(rhs);
            lhs = std::move(node);
        }
    }

    ExprPtr parse_cast_expr() {
        if (at_punct("(") && is_type_start(peek(1))) {
            auto node = make_expr(ExprKind::Cast);
            advance();
            node->type = parse_type_name();
            expect(")");
            if (at_punct("{")) {
                // compound literal
                node->a = parse_init_list();
            } else {
                node->a = parse_cast_expr();
            }
            return node;
        }
        return parse_unary();
    }

    ExprPtr parse_unary() {
        if (cur().kind == Tok::Punct) {
            const std::string& t = cur().text;
            UnOp op{};
            bool matched = true;
            if (t == "++") op = UnOp::PreInc;
            else if (t == "--") op = UnOp::PreDec;
            else if (t == "&") op = UnOp::AddrOf;
            else if (t == "*") op = UnOp::Deref;
            else if (t == "+") op = UnOp::Plus;
            else if (t == "-") op = UnOp::Neg;
            else if (t == "~") op = UnOp::BitNot;
            else if (t == "!") op = UnOp::LogNot;
            else matched = false;
            if (matched) {
                auto node = make_expr(ExprKind::Unary);
                node->un_op = op;
                advance();
                node->a = (op == UnOp::PreInc || op == UnOp::PreDec) ? parse_unary()
                                                                     : parse_cast_expr();
                return node;
            }
        }
        if (at("sizeof")) {
            advance();
            if (at_punct("(") && is_type_start(peek(1))) {
                auto node = make_expr(ExprKind::SizeofType);
                advance();
                node->type = parse_type_name();
                expect(")");
                return node;
            }
            auto node = make_expr(ExprKind::Unary);
            node->un_op = UnOp::Sizeof;
            node->a = parse_unary();
            return node;
        }
        return parse_postfix();
    }

    ExprPtr parse_init_list() {
        auto node = make_expr(ExprKind::InitList);
        expect("{");
        while (!at_punct("}")) {
            if (at(Tok::End)) fail("unterminated initializer list");
            if (at_punct(".") || at_punct("["))
                unsupported("designated initializer");
            if (at_punct("{")) node->args.push_back(parse_init_list());
            else node->args.push_back(parse_assignment());
            if (!accept(",")) break;
        }
        expect("}");
        return node;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (at_punct("(")) {
                auto node = make_expr(ExprKind::Call);
                advance();
                node->callee = std::move(e);
                while (!at_punct(")")) {
                    if (at(Tok::End)) fail("unterminated argument list");
                    node->args.push_back(parse_assignment());
                    if (!accept(",")) break;
                }
                expect(")");
                e = std::move(node);
            } else if (at_punct("[")) {
                auto node = make_expr(ExprKind::Index);
                advance();
                node->a = std::move(e);
                node->b = parse_expression();
                expect("]");
                e = std::move(node);
            } else if (at_punct(".") || at_punct("->")) {
                auto node = make_expr(ExprKind::Member);
                node->arrow = cur().text == "->";
                advance();
                if (cur().kind != Tok::Ident) fail("expected member name");
                node->text = advance().text;
                node->a = std::move(e);
                e = std::move(node);
            } else if (at_punct("++") || at_punct("--")) {
                auto node = make_expr(ExprKind::Unary);
                node->un_op = cur().text == "++" ? UnOp::PostInc : UnOp::PostDec;
                advance();
                node->a = std::move(e);
                e = std::move(node);
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::IntLit: {
                auto node = make_expr(ExprKind::IntLit);
                node->text = advance().text;
                return node;
            }
            case Tok::FloatLit: {
                auto node = make_expr(ExprKind::FloatLit);
                node->text = advance().text;
                return node;
            }
            case Tok::CharLit: {
                auto node = make_expr(ExprKind::CharLit);
                node->text = advance().text;
                return node;
            }
            case Tok::StringLit: {
                auto node = make_expr(ExprKind::StringLit);
                std::string text = advance().text;
                while (at(Tok::StringLit)) {
                    // adjacent literal concatenation
                    text.pop_back();
                    text += advance().text.substr(1);
                }
                node->text = std::move(text);
                return node;
            }
            case Tok::Ident: {
                if (kKeywords.count(t.text)) fail("unexpected keyword '" + t.text + "'");
                auto node = make_expr(ExprKind::Ident);
                node->text = advance().text;
                return node;
            }
            case Tok::Punct:
                if (t.text == "(") {
                    advance();
                    ExprPtr e = parse_expression();
                    expect(")");
                    return e;
                }
                if (t.text == "{") return parse_init_list();
                break;
            default:
                break;
        }
        fail("expected expression, found '" + t.text + "'");
    }

    // ---- statements -------------------------------------------------------

    StmtPtr make_stmt(StmtKind k) {
        auto s = std::make_unique<Stmt>();
        s->kind = k;
        s->line = cur().line;
        return s;
    }

    StmtPtr parse_compound() {
        auto s = make_stmt(StmtKind::Compound);
        expect("{");
        while (!at_punct("}")) {
            if (at(Tok::End)) fail("unterminated block");
            parse_block_item(s->items);
        }
        expect("}");
        return s;
    }

    // Appends one or more statements (declarations split per declarator).
    void parse_block_item(std::vector<StmtPtr>& out) {
        if (is_decl_start(cur()) && cur().text != "default") {
            parse_declaration_stmts(out);
            return;
        }
        out.push_back(parse_statement());
    }

    void parse_declaration_stmts(std::vector<StmtPtr>& out) {
        SpecResult spec = parse_specifiers();
        if (!spec.type) fail("expected declaration");
        if (spec.is_typedef) unsupported("block-scope typedef");
        if (accept(";")) return;  // pure type declaration; side effects recorded
        while (true) {
            auto s = make_stmt(StmtKind::Decl);
            DeclInfo d = parse_declarator(spec.type, false);
            s->decl.name = d.name;
            s->decl.type = d.type;
            if (accept("=")) {
                s->decl.init = at_punct("{") ? parse_init_list() : parse_assignment();
            }
            out.push_back(std::move(s));
            if (!accept(",")) break;
        }
        expect(";");
    }

    StmtPtr parse_statement() {
        const Token& t = cur();
        if (t.kind == Tok::Punct) {
            if (t.text == "{") return parse_compound();
            if (t.text == ";") {
                auto s = make_stmt(StmtKind::Empty);
                advance();
                return s;
            }
        }
        if (t.kind == Tok::Ident) {
            const std::string& kw = t.text;
            if (kw == "goto") unsupported("goto");
            if (kw == "asm" || kw == "__asm" || kw == "__asm__") unsupported("inline assembly");
            if (kw == "if") return parse_if();
            if (kw == "while") return parse_while();
            if (kw == "do") return parse_do_while();
            if (kw == "for") return parse_for();
            if (kw == "switch") return parse_switch();
            if (kw == "return") {
                auto s = make_stmt(StmtKind::Return);
                advance();
                if (!at_punct(";")) s->expr = parse_expression();
                expect(";");
                return s;
            }
            if (kw == "break") {
                auto s = make_stmt(StmtKind::Break);
                advance();
                expect(";");
                return s;
            }
            if (kw == "continue") {
                auto s = make_stmt(StmtKind::Continue);
                advance();
                expect(";");
                return s;
            }
            if (kw == "case") {
                auto s = make_stmt(StmtKind::Case);
                advance();
                s->expr = parse_conditional();
                expect(":");
                return s;
            }
            if (kw == "default") {
                auto s = make_stmt(StmtKind::Default);
                advance();
                expect(":");
                return s;
            }
            if (!kKeywords.count(kw) && peek(1).is_punct(":")) unsupported("statement label");
        }
        auto s = make_stmt(StmtKind::ExprStmt);
        s->expr = parse_expression();
        expect(";");
        return s;
    }

    StmtPtr parse_if() {
        auto s = make_stmt(StmtKind::If);
        advance();
        expect("(");
        s->expr = parse_expression();
        expect(")");
        s->body = parse_statement();
        if (at("else")) {
            advance();
            s->else_body = parse_statement();
        }
        return s;
    }

    StmtPtr parse_while() {
        auto s = make_stmt(StmtKind::While);
        advance();
        expect("(");
        s->expr = parse_expression();
        expect(")");
        s->body = parse_statement();
        return s;
    }

    StmtPtr parse_do_while() {
        auto s = make_stmt(StmtKind::DoWhile);
        advance();
        s->body = parse_statement();
        expect("while");
        expect("(");
        s->expr = parse_expression();
        expect(")");
        expect(";");
        return s;
    }

    StmtPtr parse_for() {
        auto s = make_stmt(StmtKind::For);
        advance();
        expect("(");
        if (!accept(";")) {
            if (is_decl_start(cur())) {
                std::vector<StmtPtr> decls;
                parse_declaration_stmts(decls);  // consumes the ';'
                if (decls.size() != 1) unsupported("multiple declarators in for initializer");
                s->for_init_decl = std::move(decls[0]);
            } else {
                s->for_init_expr = parse_expression();
                expect(";");
            }
        }
        if (!accept(";")) {
            s->for_cond = parse_expression();
            expect(";");
        }
        if (!at_punct(")")) s->for_step = parse_expression();
        expect(")");
        s->body = parse_statement();
        return s;
    }

    StmtPtr parse_switch() {
        auto s = make_stmt(StmtKind::Switch);
        advance();
        expect("(");
        s->expr = parse_expression();
        expect(")");
        s->body = parse_statement();
        return s;
    }

    // ---- external declarations --------------------------------------------

    void parse_external_declaration() {
        SpecResult spec = parse_specifiers();
        if (!spec.type) fail("expected declaration, found '" + cur().text + "'");
        if (accept(";")) return;  // struct/enum definition or stray specifier

        bool first = true;
        while (true) {
            DeclInfo d = parse_declarator(spec.type, false);
            pending_name_ = d.name;
            if (first && at_punct("{")) {
                if (!d.type || d.type->kind != TypeKind::Function)
                    fail("unexpected block after non-function declarator");
                parse_function_definition(d);
                return;
            }
            first = false;
            if (spec.is_typedef) {
                unit_.typedefs.define(d.name, d.type);
                typedef_names_.insert(d.name);
            } else if (accept("=")) {
                // global initializer: parsed, not retained
                if (at_punct("{")) parse_init_list();
                else parse_assignment();
            }
            if (!accept(",")) break;
        }
        expect(";");
    }

    void parse_function_definition(DeclInfo& d) {
        ParsedFunction fn;
        fn.name = d.name;
        fn.line = cur().line;
        fn.return_type = d.type->return_type;
        fn.param_types = d.type->params;
        fn.variadic = d.type->variadic;
        fn.param_names = d.param_names;
        fn.param_names.resize(fn.param_types.size());

        size_t body_start = pos_;
        try {
            fn.body = parse_compound();
        } catch (const ParseError& e) {
            fn.error = e.what();
            fn.body = nullptr;
            pos_ = body_start;
            skip_balanced_braces();
        }
        unit_.functions.push_back(std::move(fn));
    }
};

}  // namespace

TranslationUnit parse_translation_unit(const std::string& text, const ParseOptions& opts) {
    Parser p(lex(text, opts.dialect), opts);
    return p.run();
}

}  // namespace dct
