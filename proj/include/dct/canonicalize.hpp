#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dct/c_ast.hpp"

namespace dct {

struct NameMap {
    std::map<std::string, std::string> forward;  // original name -> funcN
    std::map<std::string, std::string> reverse;  // funcN -> original name
};

// Scope-aware identifier resolution. extract_variables and the PDG builder
// walk the AST in textual order and must agree on scope numbering: scope 0
// is the parameter list, each Compound or For statement gets the next
// ordinal as it is entered. A name declared more than once anywhere in the
// function gets scope-qualified keys (`name#scope`) for every occurrence.
class ScopeResolver {
public:
    explicit ScopeResolver(const ParsedFunction& f);

    void reset();
    void enter_scope();
    void exit_scope();
    void declare(const std::string& name);
    // Key for an identifier occurrence; returns the name unchanged when it
    // does not resolve to a parameter or local.
    std::string resolve(const std::string& name) const;
    // Key pointer, or nullptr when the name is not in any enclosing scope.
    const std::string* lookup(const std::string& name) const;
    bool is_declared_anywhere(const std::string& name) const {
        return all_declared_.count(name) != 0;
    }
    const std::set<std::string>& declared() const { return all_declared_; }
    bool is_param(const std::string& name) const;
    int param_index(const std::string& name) const;  // -1 when not a parameter

private:
    const ParsedFunction& fn_;
    std::set<std::string> shadowed_;
    std::set<std::string> all_declared_;
    int next_scope_ = 0;
    struct Scope {
        int id;
        std::map<std::string, std::string> names;
    };
    std::vector<Scope> stack_;
};

// Params and locals with de-aliased, expanded types, in declaration order.
std::vector<std::pair<std::string, TypePtr>> extract_variables(const ParsedFunction& f,
                                                               const TranslationUnit& unit);

// Rewrite every type reference (declarations, casts, sizeof, return type) to
// de-aliased canonical form, fill the variable map, and render the canonical
// text. Idempotent. Throws UnknownTypeNameError on unresolvable names.
ParsedFunction canonicalize_function(const ParsedFunction& f, const TranslationUnit& unit);

// Canonicalize the UDT table and every function in place.
void canonicalize_unit(TranslationUnit& unit);

// For decompiled units: drop PLT stubs, rename remaining functions to funcN
// in order of appearance, rewrite call sites, re-render canonical text.
NameMap canonicalize_names(TranslationUnit& unit);

}  // namespace dct
