#include "dct/c_ast.hpp"

#include <sstream>

#include "dct/type_render.hpp"

namespace dct {

namespace {

ExprPtr clone_opt(const ExprPtr& e) { return e ? clone_expr(*e) : nullptr; }
StmtPtr clone_opt(const StmtPtr& s) { return s ? clone_stmt(*s) : nullptr; }

}  // namespace

ExprPtr clone_expr(const Expr& e) {
    auto out = std::make_unique<Expr>();
    out->kind = e.kind;
    out->text = e.text;
    out->un_op = e.un_op;
    out->bin_op = e.bin_op;
    out->compound = e.compound;
    out->arrow = e.arrow;
    out->a = clone_opt(e.a);
    out->b = clone_opt(e.b);
    out->c = clone_opt(e.c);
    out->callee = clone_opt(e.callee);
    for (const auto& arg : e.args) out->args.push_back(clone_expr(*arg));
    out->type = e.type;
    out->line = e.line;
    return out;
}

StmtPtr clone_stmt(const Stmt& s) {
    auto out = std::make_unique<Stmt>();
    out->kind = s.kind;
    for (const auto& item : s.items) out->items.push_back(clone_stmt(*item));
    out->expr = clone_opt(s.expr);
    out->body = clone_opt(s.body);
    out->else_body = clone_opt(s.else_body);
    out->for_init_expr = clone_opt(s.for_init_expr);
    out->for_init_decl = clone_opt(s.for_init_decl);
    out->for_cond = clone_opt(s.for_cond);
    out->for_step = clone_opt(s.for_step);
    out->decl.name = s.decl.name;
    out->decl.type = s.decl.type;
    out->decl.init = clone_opt(s.decl.init);
    out->line = s.line;
    return out;
}

ParsedFunction clone_function(const ParsedFunction& f) {
    ParsedFunction out;
    out.name = f.name;
    out.return_type = f.return_type;
    out.param_names = f.param_names;
    out.param_types = f.param_types;
    out.variadic = f.variadic;
    out.body = f.body ? clone_stmt(*f.body) : nullptr;
    out.variables = f.variables;
    out.canonical_text = f.canonical_text;
    out.error = f.error;
    out.line = f.line;
    return out;
}

namespace {

bool type_equal_canonical(const TypePtr& a, const TypePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return render_type(a) == render_type(b);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return ast_equal(*a, *b);
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return ast_equal(*a, *b);
}

}  // namespace

bool ast_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    if (a.text != b.text) return false;
    if (a.un_op != b.un_op || a.bin_op != b.bin_op) return false;
    if (a.compound != b.compound || a.arrow != b.arrow) return false;
    if (!expr_equal(a.a, b.a) || !expr_equal(a.b, b.b) || !expr_equal(a.c, b.c)) return false;
    if (!expr_equal(a.callee, b.callee)) return false;
    if (a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!ast_equal(*a.args[i], *b.args[i])) return false;
    if ((a.type != nullptr) != (b.type != nullptr)) return false;
    if (a.type && !type_equal_canonical(a.type, b.type)) return false;
    return true;
}

bool ast_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind) return false;
    if (a.items.size() != b.items.size()) return false;
    for (size_t i = 0; i < a.items.size(); ++i)
        if (!ast_equal(*a.items[i], *b.items[i])) return false;
    if (!expr_equal(a.expr, b.expr)) return false;
    if (!stmt_equal(a.body, b.body) || !stmt_equal(a.else_body, b.else_body)) return false;
    if (!expr_equal(a.for_init_expr, b.for_init_expr)) return false;
    if (!stmt_equal(a.for_init_decl, b.for_init_decl)) return false;
    if (!expr_equal(a.for_cond, b.for_cond) || !expr_equal(a.for_step, b.for_step)) return false;
    if (a.decl.name != b.decl.name) return false;
    if ((a.decl.type != nullptr) != (b.decl.type != nullptr)) return false;
    if (a.decl.type && !type_equal_canonical(a.decl.type, b.decl.type)) return false;
    if (!expr_equal(a.decl.init, b.decl.init)) return false;
    return true;
}

bool ast_equal(const ParsedFunction& a, const ParsedFunction& b) {
    if (a.name != b.name) return false;
    if (!type_equal_canonical(a.return_type, b.return_type)) return false;
    if (a.param_names != b.param_names || a.variadic != b.variadic) return false;
    if (a.param_types.size() != b.param_types.size()) return false;
    for (size_t i = 0; i < a.param_types.size(); ++i)
        if (!type_equal_canonical(a.param_types[i], b.param_types[i])) return false;
    if ((a.body != nullptr) != (b.body != nullptr)) return false;
    if (a.body && !ast_equal(*a.body, *b.body)) return false;
    return true;
}

const char* bin_op_text(BinOp op) {
    switch (op) {
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Shl: return "<<";
        case BinOp::Shr: return ">>";
        case BinOp::Lt: return "<";
        case BinOp::Gt: return ">";
        case BinOp::Le: return "<=";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::BitAnd: return "&";
        case BinOp::BitXor: return "^";
        case BinOp::BitOr: return "|";
        case BinOp::LogAnd: return "&&";
        case BinOp::LogOr: return "||";
    }
    return "?";
}

bool bin_op_commutative(BinOp op) {
    switch (op) {
        case BinOp::Add:
        case BinOp::Mul:
        case BinOp::BitAnd:
        case BinOp::BitOr:
        case BinOp::BitXor:
        case BinOp::Eq:
        case BinOp::Ne:
            return true;
        default:
            return false;
    }
}

namespace {

// C operator precedence for rendering with minimal parentheses.
int bin_prec(BinOp op) {
    switch (op) {
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return 13;
        case BinOp::Add:
        case BinOp::Sub: return 12;
        case BinOp::Shl:
        case BinOp::Shr: return 11;
        case BinOp::Lt:
        case BinOp::Gt:
        case BinOp::Le:
        case BinOp::Ge: return 10;
        case BinOp::Eq:
        case BinOp::Ne: return 9;
        case BinOp::BitAnd: return 8;
        case BinOp::BitXor: return 7;
        case BinOp::BitOr: return 6;
        case BinOp::LogAnd: return 5;
        case BinOp::LogOr: return 4;
    }
    return 0;
}

constexpr int kPrecComma = 1;
constexpr int kPrecAssign = 2;
constexpr int kPrecConditional = 3;
constexpr int kPrecCast = 14;
constexpr int kPrecUnary = 15;
constexpr int kPrecPostfix = 16;
constexpr int kPrecPrimary = 17;

int expr_prec(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Comma: return kPrecComma;
        case ExprKind::Assign: return kPrecAssign;
        case ExprKind::Conditional: return kPrecConditional;
        case ExprKind::Binary: return bin_prec(e.bin_op);
        case ExprKind::Cast: return kPrecCast;
        case ExprKind::Unary:
            switch (e.un_op) {
                case UnOp::PostInc:
                case UnOp::PostDec: return kPrecPostfix;
                default: return kPrecUnary;
            }
        case ExprKind::Call:
        case ExprKind::Index:
        case ExprKind::Member: return kPrecPostfix;
        default: return kPrecPrimary;
    }
}

void render_expr_prec(const Expr& e, int min_prec, std::ostringstream& os) {
    int prec = expr_prec(e);
    bool parens = prec < min_prec;
    if (parens) os << "(";
    switch (e.kind) {
        case ExprKind::IntLit:
        case ExprKind::FloatLit:
        case ExprKind::CharLit:
        case ExprKind::StringLit:
        case ExprKind::Ident:
            os << e.text;
            break;
        case ExprKind::Unary:
            switch (e.un_op) {
                case UnOp::Plus: os << "+"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::Neg: os << "-"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::LogNot: os << "!"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::BitNot: os << "~"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::Deref: os << "*"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::AddrOf: os << "&"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::PreInc: os << "++"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::PreDec: os << "--"; render_expr_prec(*e.a, kPrecUnary, os); break;
                case UnOp::PostInc: render_expr_prec(*e.a, kPrecPostfix, os); os << "++"; break;
                case UnOp::PostDec: render_expr_prec(*e.a, kPrecPostfix, os); os << "--"; break;
                case UnOp::Sizeof:
                    os << "sizeof ";
                    render_expr_prec(*e.a, kPrecUnary, os);
                    break;
            }
            break;
        case ExprKind::Binary:
            render_expr_prec(*e.a, prec, os);
            os << " " << bin_op_text(e.bin_op) << " ";
            render_expr_prec(*e.b, prec + 1, os);
            break;
        case ExprKind::Assign:
            render_expr_prec(*e.a, kPrecUnary, os);
            os << " " << (e.compound ? bin_op_text(e.bin_op) : "") << "= ";
            render_expr_prec(*e.b, kPrecAssign, os);
            break;
        case ExprKind::Conditional:
            render_expr_prec(*e.a, kPrecConditional + 1, os);
            os << " ? ";
            render_expr_prec(*e.b, kPrecComma, os);
            os << " : ";
            render_expr_prec(*e.c, kPrecConditional, os);
            break;
        case ExprKind::Comma:
            render_expr_prec(*e.a, kPrecComma, os);
            os << ", ";
            render_expr_prec(*e.b, kPrecComma + 1, os);
            break;
        case ExprKind::Call: {
            render_expr_prec(*e.callee, kPrecPostfix, os);
            os << "(";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) os << ", ";
                render_expr_prec(*e.args[i], kPrecAssign, os);
            }
            os << ")";
            break;
        }
        case ExprKind::Index:
            render_expr_prec(*e.a, kPrecPostfix, os);
            os << "[";
            render_expr_prec(*e.b, kPrecComma, os);
            os << "]";
            break;
        case ExprKind::Member:
            render_expr_prec(*e.a, kPrecPostfix, os);
            os << (e.arrow ? "->" : ".") << e.text;
            break;
        case ExprKind::Cast:
            os << "(" << render_type(e.type) << ")";
            render_expr_prec(*e.a, kPrecCast, os);
            break;
        case ExprKind::SizeofType:
            os << "sizeof(" << render_type(e.type) << ")";
            break;
        case ExprKind::InitList:
            os << "{";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) os << ", ";
                render_expr_prec(*e.args[i], kPrecAssign, os);
            }
            os << "}";
            break;
    }
    if (parens) os << ")";
}

std::string ind(int level) { return std::string(static_cast<size_t>(level) * 4, ' '); }

void render_stmt_impl(const Stmt& s, int indent, std::ostringstream& os);

// Renders a statement that is the body of a control construct.
void render_body(const StmtPtr& body, int indent, std::ostringstream& os) {
    if (body && body->kind == StmtKind::Compound) {
        os << " {\n";
        for (const auto& item : body->items) render_stmt_impl(*item, indent + 1, os);
        os << ind(indent) << "}";
    } else {
        std::ostringstream tmp;
        if (body) render_stmt_impl(*body, indent + 1, tmp);
        else tmp << ind(indent + 1) << ";\n";
        std::string text = tmp.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        os << "\n" << text;
    }
}

void render_stmt_impl(const Stmt& s, int indent, std::ostringstream& os) {
    switch (s.kind) {
        case StmtKind::Compound:
            os << ind(indent) << "{\n";
            for (const auto& item : s.items) render_stmt_impl(*item, indent + 1, os);
            os << ind(indent) << "}\n";
            break;
        case StmtKind::ExprStmt:
            os << ind(indent);
            render_expr_prec(*s.expr, 0, os);
            os << ";\n";
            break;
        case StmtKind::Decl:
            os << ind(indent) << render_declaration(s.decl.type, s.decl.name);
            if (s.decl.init) {
                os << " = ";
                render_expr_prec(*s.decl.init, kPrecAssign, os);
            }
            os << ";\n";
            break;
        case StmtKind::If: {
            os << ind(indent) << "if (";
            render_expr_prec(*s.expr, 0, os);
            os << ")";
            render_body(s.body, indent, os);
            if (s.else_body) {
                if (s.body && s.body->kind == StmtKind::Compound) os << " else";
                else os << "\n" << ind(indent) << "else";
                if (s.else_body->kind == StmtKind::If) {
                    // collapse "else if" onto one line
                    os << " ";
                    std::ostringstream tmp;
                    render_stmt_impl(*s.else_body, indent, tmp);
                    std::string text = tmp.str();
                    // drop leading indentation of the nested if
                    size_t start = text.find_first_not_of(' ');
                    os << text.substr(start);
                    return;
                }
                render_body(s.else_body, indent, os);
            }
            os << "\n";
            break;
        }
        case StmtKind::While:
            os << ind(indent) << "while (";
            render_expr_prec(*s.expr, 0, os);
            os << ")";
            render_body(s.body, indent, os);
            os << "\n";
            break;
        case StmtKind::DoWhile:
            os << ind(indent) << "do";
            render_body(s.body, indent, os);
            os << " while (";
            render_expr_prec(*s.expr, 0, os);
            os << ");\n";
            break;
        case StmtKind::For: {
            os << ind(indent) << "for (";
            if (s.for_init_decl) {
                os << render_declaration(s.for_init_decl->decl.type, s.for_init_decl->decl.name);
                if (s.for_init_decl->decl.init) {
                    os << " = ";
                    render_expr_prec(*s.for_init_decl->decl.init, kPrecAssign, os);
                }
            } else if (s.for_init_expr) {
                render_expr_prec(*s.for_init_expr, 0, os);
            }
            os << ";";
            if (s.for_cond) {
                os << " ";
                render_expr_prec(*s.for_cond, 0, os);
            }
            os << ";";
            if (s.for_step) {
                os << " ";
                render_expr_prec(*s.for_step, 0, os);
            }
            os << ")";
            render_body(s.body, indent, os);
            os << "\n";
            break;
        }
        case StmtKind::Return:
            os << ind(indent) << "return";
            if (s.expr) {
                os << " ";
                render_expr_prec(*s.expr, 0, os);
            }
            os << ";\n";
            break;
        case StmtKind::Break:
            os << ind(indent) << "break;\n";
            break;
        case StmtKind::Continue:
            os << ind(indent) << "continue;\n";
            break;
        case StmtKind::Switch:
            os << ind(indent) << "switch (";
            render_expr_prec(*s.expr, 0, os);
            os << ")";
            render_body(s.body, indent, os);
            os << "\n";
            break;
        case StmtKind::Case:
            os << ind(indent) << "case ";
            render_expr_prec(*s.expr, 0, os);
            os << ":\n";
            break;
        case StmtKind::Default:
            os << ind(indent) << "default:\n";
            break;
        case StmtKind::Empty:
            os << ind(indent) << ";\n";
            break;
    }
}

}  // namespace

std::string render_expr(const Expr& e) {
    std::ostringstream os;
    render_expr_prec(e, 0, os);
    return os.str();
}

std::string render_stmt(const Stmt& s, int indent) {
    std::ostringstream os;
    render_stmt_impl(s, indent, os);
    return os.str();
}

std::string render_function(const ParsedFunction& f) {
    std::ostringstream os;
    std::string sig = f.name + "(";
    if (f.param_names.empty() && !f.variadic) {
        sig += "void";
    } else {
        for (size_t i = 0; i < f.param_names.size(); ++i) {
            if (i) sig += ", ";
            sig += render_declaration(f.param_types[i], f.param_names[i]);
        }
        if (f.variadic) sig += ", ...";
    }
    sig += ")";
    os << render_declaration(f.return_type, sig) << " {\n";
    if (f.body) {
        for (const auto& item : f.body->items) render_stmt_impl(*item, 1, os);
    }
    os << "}\n";
    return os.str();
}

}  // namespace dct
