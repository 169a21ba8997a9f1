#include "dct/canonicalize.hpp"

#include <functional>

#include "dct/type_ops.hpp"

namespace dct {

namespace {

// Textual-order declaration walk; the scope numbering contract shared with
// ScopeResolver and the PDG builder.
struct DeclWalk {
    int next_scope = 0;
    std::function<void(int, const std::string&, const TypePtr&)> on_decl;

    void run(const ParsedFunction& f) {
        int param_scope = next_scope++;
        for (size_t i = 0; i < f.param_names.size(); ++i) {
            if (!f.param_names[i].empty()) on_decl(param_scope, f.param_names[i], f.param_types[i]);
        }
        if (f.body) stmt(*f.body, param_scope);
    }

    void stmt(const Stmt& s, int scope) {
        switch (s.kind) {
            case StmtKind::Compound: {
                int id = next_scope++;
                for (const auto& item : s.items) stmt(*item, id);
                break;
            }
            case StmtKind::Decl:
                on_decl(scope, s.decl.name, s.decl.type);
                break;
            case StmtKind::If:
                if (s.body) stmt(*s.body, scope);
                if (s.else_body) stmt(*s.else_body, scope);
                break;
            case StmtKind::While:
            case StmtKind::DoWhile:
            case StmtKind::Switch:
                if (s.body) stmt(*s.body, scope);
                break;
            case StmtKind::For: {
                int id = next_scope++;
                if (s.for_init_decl) on_decl(id, s.for_init_decl->decl.name, s.for_init_decl->decl.type);
                if (s.body) stmt(*s.body, id);
                break;
            }
            default:
                break;
        }
    }
};

}  // namespace

ScopeResolver::ScopeResolver(const ParsedFunction& f) : fn_(f) {
    std::map<std::string, int> counts;
    DeclWalk walk;
    walk.on_decl = [&](int, const std::string& name, const TypePtr&) {
        counts[name] += 1;
        all_declared_.insert(name);
    };
    walk.run(f);
    for (const auto& [name, count] : counts)
        if (count > 1) shadowed_.insert(name);
    reset();
}

void ScopeResolver::reset() {
    stack_.clear();
    next_scope_ = 0;
    stack_.push_back(Scope{next_scope_++, {}});
    for (const auto& p : fn_.param_names)
        if (!p.empty()) declare(p);
}

void ScopeResolver::enter_scope() { stack_.push_back(Scope{next_scope_++, {}}); }

void ScopeResolver::exit_scope() { stack_.pop_back(); }

void ScopeResolver::declare(const std::string& name) {
    std::string key = shadowed_.count(name)
                          ? name + "#" + std::to_string(stack_.back().id)
                          : name;
    stack_.back().names[name] = std::move(key);
}

std::string ScopeResolver::resolve(const std::string& name) const {
    const std::string* key = lookup(name);
    return key ? *key : name;
}

const std::string* ScopeResolver::lookup(const std::string& name) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
        auto found = it->names.find(name);
        if (found != it->names.end()) return &found->second;
    }
    return nullptr;
}

bool ScopeResolver::is_param(const std::string& name) const {
    return param_index(name) >= 0;
}

int ScopeResolver::param_index(const std::string& name) const {
    for (size_t i = 0; i < fn_.param_names.size(); ++i)
        if (fn_.param_names[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::map<std::string, TypePtr> canonical_udts(const TranslationUnit& unit) {
    std::map<std::string, TypePtr> out;
    for (const auto& [tag, def] : unit.udts) out[tag] = dealias(def, unit.typedefs);
    return out;
}

TypePtr canon_type(const TypePtr& t, const TranslationUnit& unit,
                   const std::map<std::string, TypePtr>& udts) {
    return expand_refs(dealias(t, unit.typedefs), udts);
}

void canon_expr_types(Expr& e, const TranslationUnit& unit,
                      const std::map<std::string, TypePtr>& udts) {
    if (e.type) e.type = canon_type(e.type, unit, udts);
    if (e.a) canon_expr_types(*e.a, unit, udts);
    if (e.b) canon_expr_types(*e.b, unit, udts);
    if (e.c) canon_expr_types(*e.c, unit, udts);
    if (e.callee) canon_expr_types(*e.callee, unit, udts);
    for (auto& arg : e.args) canon_expr_types(*arg, unit, udts);
}

void canon_stmt_types(Stmt& s, const TranslationUnit& unit,
                      const std::map<std::string, TypePtr>& udts) {
    for (auto& item : s.items) canon_stmt_types(*item, unit, udts);
    if (s.expr) canon_expr_types(*s.expr, unit, udts);
    if (s.body) canon_stmt_types(*s.body, unit, udts);
    if (s.else_body) canon_stmt_types(*s.else_body, unit, udts);
    if (s.for_init_expr) canon_expr_types(*s.for_init_expr, unit, udts);
    if (s.for_init_decl) canon_stmt_types(*s.for_init_decl, unit, udts);
    if (s.for_cond) canon_expr_types(*s.for_cond, unit, udts);
    if (s.for_step) canon_expr_types(*s.for_step, unit, udts);
    if (s.decl.type) s.decl.type = canon_type(s.decl.type, unit, udts);
    if (s.decl.init) canon_expr_types(*s.decl.init, unit, udts);
}

}  // namespace

std::vector<std::pair<std::string, TypePtr>> extract_variables(const ParsedFunction& f,
                                                               const TranslationUnit& unit) {
    auto udts = canonical_udts(unit);
    std::map<std::string, int> counts;
    {
        DeclWalk pass1;
        pass1.on_decl = [&](int, const std::string& name, const TypePtr&) { counts[name] += 1; };
        pass1.run(f);
    }
    std::vector<std::pair<std::string, TypePtr>> out;
    std::set<std::string> seen;
    DeclWalk pass2;
    pass2.on_decl = [&](int scope, const std::string& name, const TypePtr& type) {
        std::string key = counts[name] > 1 ? name + "#" + std::to_string(scope) : name;
        if (seen.insert(key).second) out.emplace_back(key, canon_type(type, unit, udts));
    };
    pass2.run(f);
    return out;
}

ParsedFunction canonicalize_function(const ParsedFunction& f, const TranslationUnit& unit) {
    ParsedFunction out = clone_function(f);
    if (out.error || !out.body) return out;
    auto udts = canonical_udts(unit);
    out.return_type = canon_type(out.return_type, unit, udts);
    for (auto& pt : out.param_types) pt = canon_type(pt, unit, udts);
    canon_stmt_types(*out.body, unit, udts);
    out.variables = extract_variables(out, unit);
    out.canonical_text = render_function(out);
    return out;
}

void canonicalize_unit(TranslationUnit& unit) {
    auto udts = canonical_udts(unit);
    for (auto& [tag, def] : unit.udts) def = expand_refs(udts.at(tag), udts);
    for (auto& fn : unit.functions) fn = canonicalize_function(fn, unit);
}

namespace {

void rewrite_idents(Expr& e, const std::map<std::string, std::string>& map,
                    const std::set<std::string>& locals) {
    if (e.kind == ExprKind::Ident && !locals.count(e.text)) {
        auto it = map.find(e.text);
        if (it != map.end()) e.text = it->second;
    }
    if (e.a) rewrite_idents(*e.a, map, locals);
    if (e.b) rewrite_idents(*e.b, map, locals);
    if (e.c) rewrite_idents(*e.c, map, locals);
    if (e.callee) rewrite_idents(*e.callee, map, locals);
    for (auto& arg : e.args) rewrite_idents(*arg, map, locals);
}

void rewrite_idents(Stmt& s, const std::map<std::string, std::string>& map,
                    const std::set<std::string>& locals) {
    for (auto& item : s.items) rewrite_idents(*item, map, locals);
    if (s.expr) rewrite_idents(*s.expr, map, locals);
    if (s.body) rewrite_idents(*s.body, map, locals);
    if (s.else_body) rewrite_idents(*s.else_body, map, locals);
    if (s.for_init_expr) rewrite_idents(*s.for_init_expr, map, locals);
    if (s.for_init_decl) rewrite_idents(*s.for_init_decl, map, locals);
    if (s.for_cond) rewrite_idents(*s.for_cond, map, locals);
    if (s.for_step) rewrite_idents(*s.for_step, map, locals);
    if (s.decl.init) rewrite_idents(*s.decl.init, map, locals);
}

// A decompiled function whose body is a single tail-call to a symbol not
// defined in the unit is treated as a PLT stub.
bool is_plt_stub(const ParsedFunction& fn, const std::set<std::string>& defined) {
    if (!fn.body || fn.body->items.size() != 1) return false;
    const Stmt& s = *fn.body->items[0];
    const Expr* call = nullptr;
    if (s.kind == StmtKind::Return && s.expr && s.expr->kind == ExprKind::Call)
        call = s.expr.get();
    else if (s.kind == StmtKind::ExprStmt && s.expr && s.expr->kind == ExprKind::Call)
        call = s.expr.get();
    if (!call || !call->callee || call->callee->kind != ExprKind::Ident) return false;
    return defined.count(call->callee->text) == 0;
}

}  // namespace

NameMap canonicalize_names(TranslationUnit& unit) {
    std::set<std::string> defined;
    for (const auto& fn : unit.functions) defined.insert(fn.name);

    std::vector<ParsedFunction> kept;
    for (auto& fn : unit.functions) {
        if (is_plt_stub(fn, defined)) {
            unit.skipped.push_back({fn.name, "plt-stub", fn.line});
        } else {
            kept.push_back(std::move(fn));
        }
    }
    unit.functions = std::move(kept);

    NameMap map;
    for (size_t i = 0; i < unit.functions.size(); ++i) {
        std::string canon = "func" + std::to_string(i);
        map.forward[unit.functions[i].name] = canon;
        map.reverse[canon] = unit.functions[i].name;
    }
    for (auto& fn : unit.functions) {
        fn.name = map.forward.at(fn.name);
        if (fn.body) {
            // any declared name shadows a function symbol for our purposes
            ScopeResolver resolver(fn);
            rewrite_idents(*fn.body, map.forward, resolver.declared());
        }
        if (!fn.canonical_text.empty()) fn.canonical_text = render_function(fn);
    }
    return map;
}

}  // namespace dct
