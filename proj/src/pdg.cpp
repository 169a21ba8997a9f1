#include "dct/pdg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dct/canonicalize.hpp"
#include "dct/literals.hpp"

namespace dct {

namespace {

std::string literal_label(const Expr& e) {
    switch (e.kind) {
        case ExprKind::IntLit:
            return "const:" + std::to_string(int_literal_value(e.text));
        case ExprKind::CharLit:
            return "const:" + std::to_string(char_literal_value(e.text));
        case ExprKind::FloatLit: {
            double v = std::strtod(e.text.c_str(), nullptr);
            return "const:" + std::to_string(v);
        }
        case ExprKind::StringLit:
            return "const:" + e.text;
        default:
            return "const:?";
    }
}

struct Value {
    std::vector<int> defs;                  // producing node ids
    std::optional<std::string> direct_var;  // set for bare identifier reads
};

using Env = std::map<std::string, std::vector<int>>;

void merge_into(Env& dst, const Env& src) {
    for (const auto& [k, defs] : src) {
        auto& d = dst[k];
        d.insert(d.end(), defs.begin(), defs.end());
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }
}

Env merged(const Env& a, const Env& b) {
    Env out = a;
    merge_into(out, b);
    return out;
}

class PdgBuilder {
public:
    explicit PdgBuilder(const ParsedFunction& f) : fn_(f), resolver_(f) {}

    DependencyGraph build() {
        // Loop bodies see definitions flowing around the back edge; iterate
        // whole-function passes until the per-loop entry snapshots stabilize.
        // Operation nodes are assigned ids in AST order, so they agree across
        // passes; variable sources (param/undef/ext reads) use negative
        // sentinel ids that persist across passes and are materialized into
        // real nodes at the end.
        for (int pass = 0; pass < 24; ++pass) {
            g_ = DependencyGraph{};
            env_.clear();
            ctrl_.clear();
            resolver_.reset();
            for (size_t i = 0; i < fn_.param_names.size(); ++i) {
                const auto& name = fn_.param_names[i];
                if (name.empty()) continue;
                std::string key = resolver_.resolve(name);
                env_[key] = {source_sentinel("var:" + key, "param:" + std::to_string(i), key)};
            }
            snapshots_changed_ = false;
            if (fn_.body) gen_stmt(*fn_.body);
            if (!snapshots_changed_) break;
        }
        materialize_sources();
        std::sort(g_.edges.begin(), g_.edges.end());
        g_.edges.erase(std::unique(g_.edges.begin(), g_.edges.end()), g_.edges.end());
        return std::move(g_);
    }

private:
    const ParsedFunction& fn_;
    ScopeResolver resolver_;
    DependencyGraph g_;
    Env env_;
    std::vector<std::pair<int, int>> ctrl_;            // nearest predicate producers + polarity
    std::map<const Stmt*, Env> loop_snapshots_;
    bool snapshots_changed_ = false;

    // Variable-source sentinels: stable negative ids across passes.
    struct Source {
        int sentinel;
        std::string label;
        std::string slot_var;
    };
    std::map<std::string, Source> sources_;  // cache key -> source
    int next_sentinel_ = -2;

    int source_sentinel(const std::string& cache_key, const std::string& label,
                        const std::string& slot_var) {
        auto it = sources_.find(cache_key);
        if (it != sources_.end()) return it->second.sentinel;
        int id = next_sentinel_--;
        sources_[cache_key] = Source{id, label, slot_var};
        return id;
    }

    void materialize_sources() {
        std::set<int> used;
        for (const auto& e : g_.edges) {
            if (e.src < 0) used.insert(e.src);
            if (e.dst < 0) used.insert(e.dst);
        }
        for (const auto& [node, slots] : g_.var_slots)
            for (const auto& s : slots)
                for (int d : s.defs)
                    if (d < 0) used.insert(d);
        // Allocation order (-2, -3, ...) maps to ascending real ids.
        std::map<int, int> real;
        for (auto it = used.rbegin(); it != used.rend(); ++it)
            real[*it] = static_cast<int>(g_.nodes.size()) + static_cast<int>(real.size());
        std::vector<std::pair<int, const Source*>> ordered;
        for (const auto& [key, src] : sources_) {
            auto it = real.find(src.sentinel);
            if (it != real.end()) ordered.emplace_back(it->second, &src);
        }
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [id, src] : ordered) {
            g_.nodes.push_back(PdgNode{id, src->label});
            g_.var_slots[id].push_back(SlotUse{0, src->slot_var, {}});
        }
        for (auto& e : g_.edges) {
            if (e.src < 0) e.src = real.at(e.src);
            if (e.dst < 0) e.dst = real.at(e.dst);
        }
        for (auto& [node, slots] : g_.var_slots)
            for (auto& s : slots)
                for (auto& d : s.defs)
                    if (d < 0) d = real.at(d);
    }

    int new_node(const std::string& label, bool is_operation) {
        int id = static_cast<int>(g_.nodes.size());
        g_.nodes.push_back(PdgNode{id, label});
        if (is_operation)
            for (auto [src, slot] : ctrl_) g_.edges.push_back(PdgEdge{src, id, EdgeKind::Control, slot});
        return id;
    }

    void add_operand(int node, int position, const Value& v) {
        for (int d : v.defs) g_.edges.push_back(PdgEdge{d, node, EdgeKind::Data, position});
        if (v.direct_var)
            g_.var_slots[node].push_back(SlotUse{position, *v.direct_var, v.defs});
    }

    void add_def_slot(int node, int position, const std::string& key) {
        g_.var_slots[node].push_back(SlotUse{position, key, {}});
    }

    std::vector<std::pair<int, int>> to_ctrl(const Value& v, int polarity) {
        std::vector<std::pair<int, int>> out;
        for (int d : v.defs) out.emplace_back(d, polarity);
        return out;
    }

    // ---- variable access ---------------------------------------------------

    Value read_var(const std::string& name) {
        const std::string* key = resolver_.lookup(name);
        if (!key) {
            // external symbol read
            int id = source_sentinel("ext:" + name, "ext:" + name, name);
            return Value{{id}, name};
        }
        auto& defs = env_[*key];
        if (defs.empty()) {
            int idx = resolver_.param_index(name);
            bool is_param_read = idx >= 0 && (*key == name || *key == name + "#0");
            std::string label = is_param_read ? "param:" + std::to_string(idx) : "undef";
            defs.push_back(source_sentinel("var:" + *key, label, *key));
        }
        return Value{defs, *key};
    }

    // ---- expressions ---------------------------------------------------------

    Value gen_expr(const Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLit:
            case ExprKind::FloatLit:
            case ExprKind::CharLit:
            case ExprKind::StringLit:
                return Value{{new_node(literal_label(e), false)}, std::nullopt};
            case ExprKind::Ident:
                return read_var(e.text);
            case ExprKind::Unary:
                return gen_unary(e);
            case ExprKind::Binary:
                return gen_binary(e);
            case ExprKind::Assign:
                return gen_assign(e);
            case ExprKind::Conditional: {
                Value c = gen_expr(*e.a);
                auto saved = ctrl_;
                ctrl_ = to_ctrl(c, 0);
                Value t = gen_expr(*e.b);
                ctrl_ = to_ctrl(c, 1);
                Value f = gen_expr(*e.c);
                ctrl_ = saved;
                int id = new_node("select", true);
                add_operand(id, 0, c);
                add_operand(id, 1, t);
                add_operand(id, 2, f);
                return Value{{id}, std::nullopt};
            }
            case ExprKind::Call:
                return gen_call(e);
            case ExprKind::Index: {
                Value base = gen_expr(*e.a);
                Value idx = gen_expr(*e.b);
                int id = new_node("index", true);
                add_operand(id, 0, base);
                add_operand(id, 1, idx);
                return Value{{id}, std::nullopt};
            }
            case ExprKind::Member:
                return gen_member(e);
            case ExprKind::Cast:
                // casts are transparent: no operation node
                return gen_expr(*e.a);
            case ExprKind::SizeofType:
                return Value{{new_node("sizeof", true)}, std::nullopt};
            case ExprKind::InitList: {
                std::vector<Value> items;
                for (const auto& it : e.args) items.push_back(gen_expr(*it));
                int id = new_node("init-list", true);
                for (size_t i = 0; i < items.size(); ++i)
                    add_operand(id, static_cast<int>(i), items[i]);
                return Value{{id}, std::nullopt};
            }
            case ExprKind::Comma: {
                gen_expr(*e.a);
                return gen_expr(*e.b);
            }
        }
        return Value{};
    }

    Value gen_member(const Expr& e) {
        Value base = gen_expr(*e.a);
        if (e.arrow) {
            int d = new_node("deref", true);
            add_operand(d, 0, base);
            base = Value{{d}, std::nullopt};
        }
        int id = new_node("field-access", true);
        add_operand(id, 0, base);
        return Value{{id}, std::nullopt};
    }

    Value gen_unary(const Expr& e) {
        switch (e.un_op) {
            case UnOp::Plus:
                return gen_expr(*e.a);  // no-op
            case UnOp::Neg:
            case UnOp::LogNot:
            case UnOp::BitNot: {
                Value v = gen_expr(*e.a);
                const char* label = e.un_op == UnOp::Neg ? "neg"
                                  : e.un_op == UnOp::LogNot ? "!" : "~";
                int id = new_node(label, true);
                add_operand(id, 0, v);
                return Value{{id}, std::nullopt};
            }
            case UnOp::Deref: {
                Value v = gen_expr(*e.a);
                int id = new_node("deref", true);
                add_operand(id, 0, v);
                return Value{{id}, std::nullopt};
            }
            case UnOp::AddrOf: {
                int id = new_node("addr", true);
                if (e.a->kind == ExprKind::Ident) {
                    // address of a variable reads no value
                    const std::string* key = resolver_.lookup(e.a->text);
                    add_def_slot(id, 0, key ? *key : e.a->text);
                } else {
                    Value v = gen_expr(*e.a);
                    add_operand(id, 0, v);
                }
                return Value{{id}, std::nullopt};
            }
            case UnOp::Sizeof:
                // operand is unevaluated
                return Value{{new_node("sizeof", true)}, std::nullopt};
            case UnOp::PreInc:
            case UnOp::PreDec:
            case UnOp::PostInc:
            case UnOp::PostDec:
                return gen_incdec(e);
        }
        return Value{};
    }

    Value gen_incdec(const Expr& e) {
        const bool is_inc = e.un_op == UnOp::PreInc || e.un_op == UnOp::PostInc;
        const bool is_post = e.un_op == UnOp::PostInc || e.un_op == UnOp::PostDec;
        Lv lv = gen_lvalue(*e.a);
        Value old = lv_read(lv);
        int one = new_node("const:1", false);
        int op = new_node(is_inc ? "+" : "-", true);
        if (is_inc) {
            // commutative: unordered operands
            add_operand(op, -1, old);
            add_operand(op, -1, Value{{one}, std::nullopt});
        } else {
            add_operand(op, 0, old);
            add_operand(op, 1, Value{{one}, std::nullopt});
        }
        int assign = emit_store(lv, Value{{op}, std::nullopt});
        if (is_post) return old;
        return Value{{assign}, std::nullopt};
    }

    Value gen_binary(const Expr& e) {
        if (e.bin_op == BinOp::LogAnd || e.bin_op == BinOp::LogOr) {
            Value l = gen_expr(*e.a);
            auto saved = ctrl_;
            ctrl_ = to_ctrl(l, e.bin_op == BinOp::LogAnd ? 0 : 1);
            Value r = gen_expr(*e.b);
            ctrl_ = saved;
            int id = new_node(bin_op_text(e.bin_op), true);
            add_operand(id, 0, l);
            add_operand(id, 1, r);
            return Value{{id}, std::nullopt};
        }
        Value l = gen_expr(*e.a);
        Value r = gen_expr(*e.b);
        int id = new_node(bin_op_text(e.bin_op), true);
        if (bin_op_commutative(e.bin_op)) {
            add_operand(id, -1, l);
            add_operand(id, -1, r);
        } else {
            add_operand(id, 0, l);
            add_operand(id, 1, r);
        }
        return Value{{id}, std::nullopt};
    }

    Value gen_call(const Expr& e) {
        std::string label;
        Value callee_val;
        bool indirect = false;
        if (e.callee->kind == ExprKind::Ident) {
            const std::string& name = e.callee->text;
            if (resolver_.lookup(name)) {
                // function-pointer variable
                indirect = true;
                callee_val = read_var(name);
                label = "call@" + std::to_string(e.args.size());
            } else if (name == fn_.name) {
                // recursion is name-agnostic
                label = "call@" + std::to_string(e.args.size());
            } else {
                label = "call:" + name;
            }
        } else {
            indirect = true;
            callee_val = gen_expr(*e.callee);
            label = "call@" + std::to_string(e.args.size());
        }
        std::vector<Value> args;
        for (const auto& a : e.args) args.push_back(gen_expr(*a));
        int id = new_node(label, true);
        if (indirect) add_operand(id, 0, callee_val);
        for (size_t i = 0; i < args.size(); ++i)
            add_operand(id, static_cast<int>(i) + 1, args[i]);
        return Value{{id}, std::nullopt};
    }

    // ---- lvalues and stores ----------------------------------------------

    struct Lv {
        bool is_var = false;
        std::string key;                 // variable key when is_var
        Value access;                    // access-chain node for memory lvalues
        std::optional<std::string> weak_base;  // value-typed base var for weak update
        bool var_read_done = false;
        Value var_value;                 // cached read for compound ops
    };

    bool base_is_value_typed(const std::string& key) const {
        const TypePtr* t = fn_.variable_type(key);
        if (!t) return false;
        return (*t)->kind == TypeKind::Array || (*t)->kind == TypeKind::Struct ||
               (*t)->kind == TypeKind::Union;
    }

    Lv gen_lvalue(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Ident: {
                const std::string* key = resolver_.lookup(e.text);
                Lv lv;
                lv.is_var = true;
                lv.key = key ? *key : e.text;
                return lv;
            }
            case ExprKind::Member: {
                Lv lv;
                if (e.arrow) {
                    Value base = gen_expr(*e.a);
                    int d = new_node("deref", true);
                    add_operand(d, 0, base);
                    int fa = new_node("field-access", true);
                    add_operand(fa, 0, Value{{d}, std::nullopt});
                    lv.access = Value{{fa}, std::nullopt};
                } else {
                    // dot access: remember the value-typed base for weak update
                    Lv inner = gen_lvalue(*e.a);
                    Value base = lv_read(inner);
                    int fa = new_node("field-access", true);
                    add_operand(fa, 0, base);
                    lv.access = Value{{fa}, std::nullopt};
                    if (inner.is_var && base_is_value_typed(inner.key)) lv.weak_base = inner.key;
                    else lv.weak_base = inner.weak_base;
                }
                return lv;
            }
            case ExprKind::Index: {
                Lv inner;
                std::optional<std::string> weak;
                Value base;
                if (e.a->kind == ExprKind::Ident) {
                    inner = gen_lvalue(*e.a);
                    base = lv_read(inner);
                    if (inner.is_var && base_is_value_typed(inner.key)) weak = inner.key;
                } else {
                    inner = gen_lvalue(*e.a);
                    base = lv_read(inner);
                    weak = inner.weak_base;
                }
                Value idx = gen_expr(*e.b);
                int id = new_node("index", true);
                add_operand(id, 0, base);
                add_operand(id, 1, idx);
                Lv lv;
                lv.access = Value{{id}, std::nullopt};
                lv.weak_base = weak;
                return lv;
            }
            case ExprKind::Unary:
                if (e.un_op == UnOp::Deref) {
                    Value p = gen_expr(*e.a);
                    int id = new_node("deref", true);
                    add_operand(id, 0, p);
                    Lv lv;
                    lv.access = Value{{id}, std::nullopt};
                    return lv;
                }
                break;
            case ExprKind::Cast: {
                // (T)x = ... appears in decompiled code; the cast is transparent
                return gen_lvalue(*e.a);
            }
            default:
                break;
        }
        // Fall back: treat as an rvalue chain (e.g. call returning pointer).
        Lv lv;
        lv.access = gen_expr(e);
        return lv;
    }

    Value lv_read(Lv& lv) {
        if (lv.is_var) {
            if (!lv.var_read_done) {
                lv.var_value = read_var_by_key(lv.key);
                lv.var_read_done = true;
            }
            return lv.var_value;
        }
        return lv.access;
    }

    // read a variable whose key we already resolved (or an external name)
    Value read_var_by_key(const std::string& key) {
        std::string base = key.substr(0, key.find('#'));
        return read_var(base);
    }

    int emit_store(Lv& lv, const Value& value) {
        int id = new_node("assign", true);
        if (lv.is_var) {
            add_def_slot(id, 0, lv.key);
        } else {
            add_operand(id, 0, lv.access);
        }
        add_operand(id, 1, value);
        if (lv.is_var) {
            env_[lv.key] = {id};  // strong update
        } else if (lv.weak_base) {
            auto& defs = env_[*lv.weak_base];
            defs.push_back(id);
            std::sort(defs.begin(), defs.end());
            defs.erase(std::unique(defs.begin(), defs.end()), defs.end());
        }
        return id;
    }

    Value gen_assign(const Expr& e) {
        Lv lv = gen_lvalue(*e.a);
        Value rhs;
        if (e.compound) {
            Value old = lv_read(lv);
            Value r = gen_expr(*e.b);
            int op = new_node(bin_op_text(e.bin_op), true);
            if (bin_op_commutative(e.bin_op)) {
                add_operand(op, -1, old);
                add_operand(op, -1, r);
            } else {
                add_operand(op, 0, old);
                add_operand(op, 1, r);
            }
            rhs = Value{{op}, std::nullopt};
        } else {
            rhs = gen_expr(*e.b);
        }
        int id = emit_store(lv, rhs);
        return Value{{id}, std::nullopt};
    }

    // ---- statements -----------------------------------------------------

    void gen_stmt(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::Compound: {
                resolver_.enter_scope();
                for (const auto& item : s.items) gen_stmt(*item);
                resolver_.exit_scope();
                break;
            }
            case StmtKind::ExprStmt:
                gen_expr(*s.expr);
                break;
            case StmtKind::Decl: {
                resolver_.declare(s.decl.name);
                if (!s.decl.init) {
                    std::string key = *resolver_.lookup(s.decl.name);
                    env_[key] = {source_sentinel("var:" + key, "undef", key)};
                } else {
                    std::string key = *resolver_.lookup(s.decl.name);
                    if (s.decl.init->kind == ExprKind::InitList) {
                        std::vector<Value> items;
                        for (const auto& it : s.decl.init->args) items.push_back(gen_expr(*it));
                        int id = new_node("assign", true);
                        add_def_slot(id, 0, key);
                        for (size_t i = 0; i < items.size(); ++i)
                            add_operand(id, static_cast<int>(i) + 1, items[i]);
                        env_[key] = {id};
                    } else {
                        Value v = gen_expr(*s.decl.init);
                        int id = new_node("assign", true);
                        add_def_slot(id, 0, key);
                        add_operand(id, 1, v);
                        env_[key] = {id};
                    }
                }
                break;
            }
            case StmtKind::If: {
                Value c = gen_expr(*s.expr);
                Env before = env_;
                auto saved = ctrl_;
                ctrl_ = to_ctrl(c, 0);
                if (s.body) gen_stmt(*s.body);
                Env after_then = std::move(env_);
                env_ = before;
                Env after_else = before;
                if (s.else_body) {
                    ctrl_ = to_ctrl(c, 1);
                    gen_stmt(*s.else_body);
                    after_else = std::move(env_);
                }
                ctrl_ = saved;
                env_ = merged(after_then, after_else);
                break;
            }
            case StmtKind::While: {
                Env before = env_;
                Env& snap = loop_snapshots_[&s];
                env_ = merged(before, snap);
                Value c = gen_expr(*s.expr);
                Env exit_env = env_;
                auto saved = ctrl_;
                ctrl_ = to_ctrl(c, 0);
                if (s.body) gen_stmt(*s.body);
                ctrl_ = saved;
                Env new_snap = merged(before, env_);
                if (new_snap != snap) {
                    snap = std::move(new_snap);
                    snapshots_changed_ = true;
                }
                env_ = std::move(exit_env);
                break;
            }
            case StmtKind::DoWhile: {
                // The body runs unconditionally once; iterations 2+ are an
                // approximation shared by both sides of any comparison.
                Env before = env_;
                Env& snap = loop_snapshots_[&s];
                env_ = merged(before, snap);
                if (s.body) gen_stmt(*s.body);
                gen_expr(*s.expr);
                Env new_snap = merged(before, env_);
                if (new_snap != snap) {
                    snap = std::move(new_snap);
                    snapshots_changed_ = true;
                }
                break;
            }
            case StmtKind::For: {
                resolver_.enter_scope();
                if (s.for_init_decl) gen_stmt(*s.for_init_decl);
                else if (s.for_init_expr) gen_expr(*s.for_init_expr);
                Env before = env_;
                Env& snap = loop_snapshots_[&s];
                env_ = merged(before, snap);
                Value c;
                if (s.for_cond) c = gen_expr(*s.for_cond);
                Env exit_env = env_;
                auto saved = ctrl_;
                if (s.for_cond) ctrl_ = to_ctrl(c, 0);
                if (s.body) gen_stmt(*s.body);
                if (s.for_step) gen_expr(*s.for_step);
                ctrl_ = saved;
                Env new_snap = merged(before, env_);
                if (new_snap != snap) {
                    snap = std::move(new_snap);
                    snapshots_changed_ = true;
                }
                env_ = std::move(exit_env);
                resolver_.exit_scope();
                break;
            }
            case StmtKind::Return: {
                int id;
                if (s.expr) {
                    Value v = gen_expr(*s.expr);
                    id = new_node("return", true);
                    add_operand(id, 0, v);
                } else {
                    id = new_node("return", true);
                }
                (void)id;
                break;
            }
            case StmtKind::Switch: {
                Value subject = gen_expr(*s.expr);
                auto saved = ctrl_;
                if (s.body && s.body->kind == StmtKind::Compound) {
                    resolver_.enter_scope();
                    for (const auto& item : s.body->items) {
                        if (item->kind == StmtKind::Case) {
                            ctrl_ = to_ctrl(subject, case_slot(*item->expr));
                        } else if (item->kind == StmtKind::Default) {
                            ctrl_ = to_ctrl(subject, -2);
                        } else {
                            gen_stmt(*item);
                        }
                    }
                    resolver_.exit_scope();
                } else if (s.body) {
                    ctrl_ = to_ctrl(subject, -2);
                    gen_stmt(*s.body);
                }
                ctrl_ = saved;
                break;
            }
            case StmtKind::Break:
            case StmtKind::Continue:
            case StmtKind::Case:
            case StmtKind::Default:
            case StmtKind::Empty:
                break;
        }
    }

    // Case labels become control-edge slots; non-literal constants hash to a
    // deterministic slot value.
    int case_slot(const Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLit:
                return static_cast<int>(int_literal_value(e.text));
            case ExprKind::CharLit:
                return static_cast<int>(char_literal_value(e.text));
            case ExprKind::Unary:
                if (e.un_op == UnOp::Neg && e.a->kind == ExprKind::IntLit)
                    return -static_cast<int>(int_literal_value(e.a->text));
                break;
            default:
                break;
        }
        const std::string text = render_expr(e);
        unsigned int h = 2166136261u;
        for (char ch : text) h = (h ^ static_cast<unsigned char>(ch)) * 16777619u;
        return static_cast<int>(h % 1000003u) + 1000;
    }
};

}  // namespace

DependencyGraph build_pdg(const ParsedFunction& f) {
    if (f.error)
        throw UnsupportedConstructError("cannot build PDG: " + *f.error, f.line, 0);
    PdgBuilder builder(f);
    return builder.build();
}

std::string dump_graph(const DependencyGraph& g) {
    std::ostringstream os;
    for (const auto& n : g.nodes) os << n.id << " " << n.label << "\n";
    os << "--\n";
    for (const auto& e : g.edges) {
        os << e.src << " -> " << e.dst << " "
           << (e.kind == EdgeKind::Data ? "data" : "ctrl") << " " << e.slot << "\n";
    }
    return os.str();
}

}  // namespace dct
