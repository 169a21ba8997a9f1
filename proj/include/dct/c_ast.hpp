#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dct/type_node.hpp"

namespace dct {

enum class UnOp {
    Plus, Neg, LogNot, BitNot, Deref, AddrOf, PreInc, PreDec, PostInc, PostDec, Sizeof
};

enum class BinOp {
    Mul, Div, Mod, Add, Sub, Shl, Shr, Lt, Gt, Le, Ge, Eq, Ne, BitAnd, BitXor, BitOr,
    LogAnd, LogOr
};

enum class ExprKind {
    IntLit, FloatLit, CharLit, StringLit, Ident, Unary, Binary, Assign, Conditional,
    Call, Index, Member, Cast, SizeofType, InitList, Comma
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    ExprKind kind{};
    std::string text;      // literal spelling, identifier, or member name
    UnOp un_op{};          // Unary
    BinOp bin_op{};        // Binary; compound-assignment operator when compound
    bool compound = false; // Assign: `a op= b`
    bool arrow = false;    // Member: `a->f` vs `a.f`
    ExprPtr a, b, c;       // Unary a; Binary/Assign/Comma a,b; Conditional a,b,c;
                           // Index a[b]; Member a; Cast a
    ExprPtr callee;        // Call
    std::vector<ExprPtr> args;  // Call arguments / InitList items
    TypePtr type;          // Cast target / SizeofType operand
    int line = 0;
};

enum class StmtKind {
    Compound, ExprStmt, Decl, If, While, DoWhile, For, Return, Break, Continue,
    Switch, Case, Default, Empty
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

// Multi-declarator declarations are split at parse time; a Decl statement
// holds exactly one declarator.
struct Declarator {
    std::string name;
    TypePtr type;
    ExprPtr init;  // may be null
};

struct Stmt {
    StmtKind kind{};
    std::vector<StmtPtr> items;  // Compound
    ExprPtr expr;                // ExprStmt; Return value; If/While/DoWhile/Switch condition; Case value
    StmtPtr body;                // If then-branch; While/DoWhile/For/Switch body
    StmtPtr else_body;           // If
    ExprPtr for_init_expr;       // For: expression initializer
    StmtPtr for_init_decl;       // For: declaration initializer (Decl statement)
    ExprPtr for_cond;
    ExprPtr for_step;
    Declarator decl;             // Decl
    int line = 0;
};

struct ParsedFunction {
    std::string name;
    TypePtr return_type;
    std::vector<std::string> param_names;
    std::vector<TypePtr> param_types;
    bool variadic = false;
    StmtPtr body;  // Compound; null when the function failed to parse

    // Filled by canonicalize_function: params + locals in declaration order,
    // keys scope-qualified (`name#scope`) only where shadowing occurs, types
    // de-aliased and expanded (self-contained).
    std::vector<std::pair<std::string, TypePtr>> variables;
    std::string canonical_text;

    std::optional<std::string> error;  // unsupported-construct / syntax error
    int line = 0;

    const TypePtr* variable_type(const std::string& key) const {
        for (const auto& [k, t] : variables)
            if (k == key) return &t;
        return nullptr;
    }
};

struct SkippedFunction {
    std::string name;  // may be empty when unknown
    std::string reason;
    int line = 0;
};

struct TranslationUnit {
    std::vector<ParsedFunction> functions;
    AliasTable typedefs;
    std::map<std::string, TypePtr> udts;  // tag -> defined struct/union/enum
    std::vector<std::string> udt_order;   // definition order
    std::vector<SkippedFunction> skipped;

    const ParsedFunction* find_function(const std::string& name) const {
        for (const auto& f : functions)
            if (f.name == name) return &f;
        return nullptr;
    }
};

ExprPtr clone_expr(const Expr& e);
StmtPtr clone_stmt(const Stmt& s);
ParsedFunction clone_function(const ParsedFunction& f);

// Structural equality; embedded types compare by canonical rendering so a
// tag reference equals the expanded definition it stands for.
bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const Stmt& a, const Stmt& b);
bool ast_equal(const ParsedFunction& a, const ParsedFunction& b);

// Deterministic pretty-printer; output re-parses to an identical AST.
std::string render_expr(const Expr& e);
std::string render_stmt(const Stmt& s, int indent = 0);
std::string render_function(const ParsedFunction& f);

const char* bin_op_text(BinOp op);
bool bin_op_commutative(BinOp op);

}  // namespace dct
