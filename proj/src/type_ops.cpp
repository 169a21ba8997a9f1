#include "dct/type_ops.hpp"

#include <set>

namespace dct {

namespace {

void require_dealiased(const TypeNode& t) {
    if (t.kind == TypeKind::Alias) throw UnresolvedAliasError(t.alias_name);
}

}  // namespace

std::int64_t complexity(const TypePtr& t) {
    const TypeNode& n = *t;
    require_dealiased(n);
    switch (n.kind) {
        case TypeKind::Primitive:
        case TypeKind::Enum:
            return 1;
        case TypeKind::Pointer:
        case TypeKind::Array:
            return 1 + complexity(n.element);
        case TypeKind::Function: {
            std::int64_t total = 1 + complexity(n.return_type);
            for (const auto& p : n.params) total += complexity(p);
            return total;
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (!n.defined) return 1;  // back-reference or opaque tag
            std::int64_t total = 1;
            for (const auto& f : n.fields) total += complexity(f.type);
            return total;
        }
        case TypeKind::Alias:
            break;
    }
    throw UnresolvedAliasError(n.alias_name);
}

std::int64_t recursive_field_count(const TypePtr& t) {
    const TypeNode& n = *t;
    require_dealiased(n);
    switch (n.kind) {
        case TypeKind::Primitive:
        case TypeKind::Enum:
            return 0;
        case TypeKind::Pointer:
        case TypeKind::Array:
            return recursive_field_count(n.element);
        case TypeKind::Function: {
            std::int64_t total = recursive_field_count(n.return_type);
            for (const auto& p : n.params) total += recursive_field_count(p);
            return total;
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (!n.defined) return 0;
            std::int64_t total = static_cast<std::int64_t>(n.fields.size());
            for (const auto& f : n.fields) total += recursive_field_count(f.type);
            return total;
        }
        case TypeKind::Alias:
            break;
    }
    throw UnresolvedAliasError(n.alias_name);
}

namespace {

// Scoped binder environment for recursive-type comparison. Entering a tagged
// struct/union definition binds its tag to a fresh serial on each side; a
// bare reference is equal to another bare reference iff both tags are bound
// to the same serial (back-references into corresponding definitions) or
// neither is bound at all (opaque types).
struct CompareState {
    bool with_tags = false;
    std::map<std::string, int> bind_a;
    std::map<std::string, int> bind_b;
    int next_serial = 0;
};

bool comp_equal(const TypePtr& pa, const TypePtr& pb, CompareState& st) {
    const TypeNode& a = *pa;
    const TypeNode& b = *pb;

    // Enums compare by underlying representation.
    const bool a_int_like =
        a.kind == TypeKind::Enum ||
        (a.kind == TypeKind::Primitive && a.primitive_name == "int");
    const bool b_int_like =
        b.kind == TypeKind::Enum ||
        (b.kind == TypeKind::Primitive && b.primitive_name == "int");
    if (a_int_like || b_int_like) return a_int_like && b_int_like;

    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case TypeKind::Primitive:
            return a.primitive_name == b.primitive_name;
        case TypeKind::Pointer:
            return comp_equal(a.element, b.element, st);
        case TypeKind::Array:
            if (a.length != b.length) return false;  // flexible == flexible only
            return comp_equal(a.element, b.element, st);
        case TypeKind::Function: {
            if (a.params.size() != b.params.size() || a.variadic != b.variadic) return false;
            if (!comp_equal(a.return_type, b.return_type, st)) return false;
            for (size_t i = 0; i < a.params.size(); ++i)
                if (!comp_equal(a.params[i], b.params[i], st)) return false;
            return true;
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (st.with_tags && a.tag != b.tag) return false;
            if (a.defined != b.defined) return false;
            if (!a.defined) {
                auto ia = st.bind_a.find(a.tag);
                auto ib = st.bind_b.find(b.tag);
                const bool bound_a = ia != st.bind_a.end();
                const bool bound_b = ib != st.bind_b.end();
                if (bound_a != bound_b) return false;
                return !bound_a || ia->second == ib->second;
            }
            if (a.fields.size() != b.fields.size()) return false;
            // Bind the tags for the duration of the field walk.
            const int serial = st.next_serial++;
            std::optional<int> saved_a, saved_b;
            if (!a.tag.empty()) {
                auto it = st.bind_a.find(a.tag);
                if (it != st.bind_a.end()) saved_a = it->second;
                st.bind_a[a.tag] = serial;
            }
            if (!b.tag.empty()) {
                auto it = st.bind_b.find(b.tag);
                if (it != st.bind_b.end()) saved_b = it->second;
                st.bind_b[b.tag] = serial;
            }
            bool ok = true;
            for (size_t i = 0; ok && i < a.fields.size(); ++i) {
                const Field& fa = a.fields[i];
                const Field& fb = b.fields[i];
                if (fa.bit_width != fb.bit_width) ok = false;
                else ok = comp_equal(fa.type, fb.type, st);
            }
            if (!a.tag.empty()) {
                if (saved_a) st.bind_a[a.tag] = *saved_a;
                else st.bind_a.erase(a.tag);
            }
            if (!b.tag.empty()) {
                if (saved_b) st.bind_b[b.tag] = *saved_b;
                else st.bind_b.erase(b.tag);
            }
            return ok;
        }
        case TypeKind::Enum:
        case TypeKind::Alias:
            break;
    }
    // Aliases are compared nominally; callers are expected to dealias first.
    return a.alias_name == b.alias_name;
}

}  // namespace

bool composition_equal(const TypePtr& a, const TypePtr& b) {
    CompareState st;
    return comp_equal(a, b, st);
}

bool composition_and_tags_equal(const TypePtr& a, const TypePtr& b) {
    CompareState st;
    st.with_tags = true;
    return comp_equal(a, b, st);
}

bool types_identical(const TypePtr& a, const TypePtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    const TypeNode& x = *a;
    const TypeNode& y = *b;
    switch (x.kind) {
        case TypeKind::Primitive:
            return x.primitive_name == y.primitive_name;
        case TypeKind::Pointer:
            return types_identical(x.element, y.element);
        case TypeKind::Array:
            return x.length == y.length && types_identical(x.element, y.element);
        case TypeKind::Function: {
            if (x.params.size() != y.params.size() || x.variadic != y.variadic) return false;
            if (!types_identical(x.return_type, y.return_type)) return false;
            for (size_t i = 0; i < x.params.size(); ++i)
                if (!types_identical(x.params[i], y.params[i])) return false;
            return true;
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (x.tag != y.tag || x.defined != y.defined) return false;
            if (x.fields.size() != y.fields.size()) return false;
            for (size_t i = 0; i < x.fields.size(); ++i) {
                if (x.fields[i].name != y.fields[i].name) return false;
                if (x.fields[i].bit_width != y.fields[i].bit_width) return false;
                if (!types_identical(x.fields[i].type, y.fields[i].type)) return false;
            }
            return true;
        }
        case TypeKind::Enum: {
            if (x.tag != y.tag || x.defined != y.defined) return false;
            if (x.enumerators.size() != y.enumerators.size()) return false;
            for (size_t i = 0; i < x.enumerators.size(); ++i) {
                if (x.enumerators[i].name != y.enumerators[i].name) return false;
                if (x.enumerators[i].value != y.enumerators[i].value) return false;
            }
            return true;
        }
        case TypeKind::Alias:
            return x.alias_name == y.alias_name;
    }
    return false;
}

namespace {

TypePtr dealias_impl(const TypePtr& t, const AliasTable& aliases,
                     std::set<std::string>& in_progress) {
    const TypeNode& n = *t;
    switch (n.kind) {
        case TypeKind::Alias: {
            if (in_progress.count(n.alias_name)) throw AliasCycleError(n.alias_name);
            in_progress.insert(n.alias_name);
            TypePtr resolved = dealias_impl(aliases.target(n.alias_name), aliases, in_progress);
            in_progress.erase(n.alias_name);
            return resolved;
        }
        case TypeKind::Primitive:
        case TypeKind::Enum:
            return t;
        case TypeKind::Pointer: {
            TypePtr e = dealias_impl(n.element, aliases, in_progress);
            return e == n.element ? t : TypeNode::pointer(e);
        }
        case TypeKind::Array: {
            TypePtr e = dealias_impl(n.element, aliases, in_progress);
            return e == n.element ? t : TypeNode::array_of(e, n.length);
        }
        case TypeKind::Function: {
            TypePtr r = dealias_impl(n.return_type, aliases, in_progress);
            std::vector<TypePtr> ps;
            ps.reserve(n.params.size());
            bool changed = r != n.return_type;
            for (const auto& p : n.params) {
                ps.push_back(dealias_impl(p, aliases, in_progress));
                changed |= ps.back() != p;
            }
            if (!changed) return t;
            return TypeNode::function(r, std::move(ps), n.variadic);
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (!n.defined) return t;
            std::vector<Field> fs;
            fs.reserve(n.fields.size());
            bool changed = false;
            for (const auto& f : n.fields) {
                TypePtr ft = dealias_impl(f.type, aliases, in_progress);
                changed |= ft != f.type;
                fs.push_back(Field{f.name, ft, f.bit_width});
            }
            if (!changed) return t;
            return n.kind == TypeKind::Struct ? TypeNode::struct_type(n.tag, std::move(fs))
                                              : TypeNode::union_type(n.tag, std::move(fs));
        }
    }
    return t;
}

}  // namespace

TypePtr dealias(const TypePtr& t, const AliasTable& aliases) {
    std::set<std::string> in_progress;
    return dealias_impl(t, aliases, in_progress);
}

TypePtr dealias(const std::string& name, const AliasTable& aliases) {
    return dealias(TypeNode::alias(name), aliases);
}

namespace {

TypePtr expand_impl(const TypePtr& t, const std::map<std::string, TypePtr>& udts,
                    std::set<std::string>& path) {
    const TypeNode& n = *t;
    switch (n.kind) {
        case TypeKind::Primitive:
        case TypeKind::Alias:
            return t;
        case TypeKind::Enum: {
            if (n.defined || n.tag.empty()) return t;
            auto it = udts.find(n.tag);
            if (it == udts.end() || it->second->kind != TypeKind::Enum) return t;
            return it->second;
        }
        case TypeKind::Pointer: {
            TypePtr e = expand_impl(n.element, udts, path);
            return e == n.element ? t : TypeNode::pointer(e);
        }
        case TypeKind::Array: {
            TypePtr e = expand_impl(n.element, udts, path);
            return e == n.element ? t : TypeNode::array_of(e, n.length);
        }
        case TypeKind::Function: {
            TypePtr r = expand_impl(n.return_type, udts, path);
            std::vector<TypePtr> ps;
            bool changed = r != n.return_type;
            for (const auto& p : n.params) {
                ps.push_back(expand_impl(p, udts, path));
                changed |= ps.back() != p;
            }
            if (!changed) return t;
            return TypeNode::function(r, std::move(ps), n.variadic);
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (!n.defined) {
                if (n.tag.empty() || path.count(n.tag)) return t;  // back-reference
                auto it = udts.find(n.tag);
                if (it == udts.end() || it->second->kind != n.kind) return t;  // opaque
                return expand_impl(it->second, udts, path);
            }
            if (!n.tag.empty() && path.count(n.tag)) {
                // A definition of a tag already on the path; keep the
                // back-reference form to avoid infinite expansion.
                return n.kind == TypeKind::Struct ? TypeNode::struct_ref(n.tag)
                                                  : TypeNode::union_ref(n.tag);
            }
            if (!n.tag.empty()) path.insert(n.tag);
            std::vector<Field> fs;
            fs.reserve(n.fields.size());
            bool changed = false;
            for (const auto& f : n.fields) {
                TypePtr ft = expand_impl(f.type, udts, path);
                changed |= ft != f.type;
                fs.push_back(Field{f.name, ft, f.bit_width});
            }
            if (!n.tag.empty()) path.erase(n.tag);
            if (!changed) return t;
            return n.kind == TypeKind::Struct ? TypeNode::struct_type(n.tag, std::move(fs))
                                              : TypeNode::union_type(n.tag, std::move(fs));
        }
    }
    return t;
}

void closure_walk(const TypePtr& t, std::set<std::string>& seen_tags,
                  std::set<const TypeNode*>& seen_anon, std::vector<TypePtr>& out) {
    const TypeNode& n = *t;
    switch (n.kind) {
        case TypeKind::Primitive:
        case TypeKind::Enum:
        case TypeKind::Alias:
            return;
        case TypeKind::Pointer:
        case TypeKind::Array:
            closure_walk(n.element, seen_tags, seen_anon, out);
            return;
        case TypeKind::Function:
            closure_walk(n.return_type, seen_tags, seen_anon, out);
            for (const auto& p : n.params) closure_walk(p, seen_tags, seen_anon, out);
            return;
        case TypeKind::Struct:
        case TypeKind::Union: {
            if (!n.defined) return;
            if (!n.tag.empty()) {
                if (!seen_tags.insert(n.tag).second) return;
            } else {
                if (!seen_anon.insert(&n).second) return;
            }
            out.push_back(t);
            for (const auto& f : n.fields) closure_walk(f.type, seen_tags, seen_anon, out);
            return;
        }
    }
}

}  // namespace

TypePtr expand_refs(const TypePtr& t, const std::map<std::string, TypePtr>& udts) {
    std::set<std::string> path;
    return expand_impl(t, udts, path);
}

std::vector<TypePtr> udt_closure(const TypePtr& t) {
    return udt_closure(std::vector<TypePtr>{t});
}

std::vector<TypePtr> udt_closure(const std::vector<TypePtr>& roots) {
    std::set<std::string> seen_tags;
    std::set<const TypeNode*> seen_anon;
    std::vector<TypePtr> out;
    for (const auto& r : roots) closure_walk(r, seen_tags, seen_anon, out);
    return out;
}

bool has_udt(const TypePtr& t) {
    const TypeNode& n = *t;
    switch (n.kind) {
        case TypeKind::Struct:
        case TypeKind::Union:
            return true;
        case TypeKind::Pointer:
        case TypeKind::Array:
            return has_udt(n.element);
        case TypeKind::Function: {
            if (has_udt(n.return_type)) return true;
            for (const auto& p : n.params)
                if (has_udt(p)) return true;
            return false;
        }
        default:
            return false;
    }
}

}  // namespace dct
