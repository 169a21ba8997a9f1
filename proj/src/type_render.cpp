#include "dct/type_render.hpp"

#include <sstream>

namespace dct {

namespace {

std::string indent_of(int level) { return std::string(static_cast<size_t>(level) * 4, ' '); }

std::string render_decl_impl(const TypePtr& t, const std::string& name, int indent);

// Base specifier text for the innermost type.
std::string base_specifier(const TypeNode& n, int indent) {
    switch (n.kind) {
        case TypeKind::Primitive:
            return n.primitive_name;
        case TypeKind::Struct:
        case TypeKind::Union: {
            const char* kw = n.kind == TypeKind::Struct ? "struct" : "union";
            if (!n.tag.empty()) return std::string(kw) + " " + n.tag;
            if (!n.defined) return std::string(kw);  // anonymous ref: degenerate
            std::ostringstream os;
            os << kw << " {";
            for (const auto& f : n.fields) {
                os << " " << render_decl_impl(f.type, f.name, indent);
                if (f.bit_width) os << " : " << *f.bit_width;
                os << ";";
            }
            os << " }";
            return os.str();
        }
        case TypeKind::Enum: {
            if (!n.tag.empty()) return "enum " + n.tag;
            if (!n.defined) return "enum";
            std::ostringstream os;
            os << "enum {";
            bool first = true;
            for (const auto& e : n.enumerators) {
                os << (first ? " " : ", ") << e.name;
                if (e.value) os << " = " << *e.value;
                first = false;
            }
            os << " }";
            return os.str();
        }
        case TypeKind::Alias:
            return n.alias_name;
        default:
            return "?";
    }
}

std::string render_decl_impl(const TypePtr& t, const std::string& name, int indent) {
    std::string decl = name;
    const TypeNode* n = t.get();
    bool prev_prefix = false;  // did we last emit a pointer star?
    while (true) {
        switch (n->kind) {
            case TypeKind::Pointer:
                decl = "*" + decl;
                prev_prefix = true;
                n = n->element.get();
                continue;
            case TypeKind::Array: {
                if (prev_prefix) decl = "(" + decl + ")";
                decl += "[";
                if (n->length) decl += std::to_string(*n->length);
                decl += "]";
                prev_prefix = false;
                n = n->element.get();
                continue;
            }
            case TypeKind::Function: {
                if (prev_prefix) decl = "(" + decl + ")";
                decl += "(";
                if (n->params.empty() && !n->variadic) {
                    decl += "void";
                } else {
                    for (size_t i = 0; i < n->params.size(); ++i) {
                        if (i) decl += ", ";
                        decl += render_decl_impl(n->params[i], "", indent);
                    }
                    if (n->variadic) decl += ", ...";
                }
                decl += ")";
                prev_prefix = false;
                n = n->return_type.get();
                continue;
            }
            default: {
                std::string base = base_specifier(*n, indent);
                if (decl.empty()) return base;
                return base + " " + decl;
            }
        }
    }
}

}  // namespace

std::string render_type(const TypePtr& t) {
    return render_decl_impl(t, "", 0);
}

std::string render_declaration(const TypePtr& t, const std::string& name) {
    return render_decl_impl(t, name, 0);
}

std::string render_udt_definition(const TypePtr& t) {
    const TypeNode& n = *t;
    const char* kw = n.kind == TypeKind::Struct ? "struct" : n.kind == TypeKind::Union ? "union" : "enum";
    std::ostringstream os;
    os << kw;
    if (!n.tag.empty()) os << " " << n.tag;
    os << " {\n";
    if (n.kind == TypeKind::Enum) {
        for (size_t i = 0; i < n.enumerators.size(); ++i) {
            os << indent_of(1) << n.enumerators[i].name;
            if (n.enumerators[i].value) os << " = " << *n.enumerators[i].value;
            os << (i + 1 == n.enumerators.size() ? "\n" : ",\n");
        }
    } else {
        for (const auto& f : n.fields) {
            os << indent_of(1) << render_declaration(f.type, f.name);
            if (f.bit_width) os << " : " << *f.bit_width;
            os << ";\n";
        }
    }
    os << "};";
    return os.str();
}

}  // namespace dct
