#pragma once

// Seeded random C function generator for property tests. The same seed with
// a different name pool yields a structurally identical, renamed function.

#include <random>
#include <sstream>
#include <string>
#include <vector>

class CFunctionGen {
public:
    CFunctionGen(unsigned seed, std::vector<std::string> pool)
        : rng_(seed), pool_(std::move(pool)) {}

    std::string generate(const std::string& fn_name) {
        n_params_ = 1 + pick(3);
        n_locals_ = 1 + pick(3);
        std::ostringstream os;
        os << "int " << fn_name << "(";
        for (int i = 0; i < n_params_; ++i) {
            if (i) os << ", ";
            os << "int " << var(i);
        }
        os << ") {\n";
        for (int i = 0; i < n_locals_; ++i)
            os << "    int " << var(n_params_ + i) << " = " << pick(100) << ";\n";
        int n_stmts = 2 + pick(5);
        for (int i = 0; i < n_stmts; ++i) os << stmt(1);
        os << "    return " << expr(2) << ";\n}\n";
        return os.str();
    }

private:
    std::mt19937_64 rng_;
    std::vector<std::string> pool_;
    int n_params_ = 0;
    int n_locals_ = 0;

    int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }

    std::string var(int i) { return pool_[static_cast<size_t>(i) % pool_.size()]; }
    std::string any_var() { return var(pick(n_params_ + n_locals_)); }

    std::string expr(int depth) {
        if (depth <= 0 || pick(3) == 0) {
            return pick(2) ? any_var() : std::to_string(pick(500));
        }
        static const char* ops[] = {"+", "-", "*", "/", "&", "|", "^", "<<", ">>", "=="};
        std::string op = ops[pick(10)];
        return "(" + expr(depth - 1) + " " + op + " " + expr(depth - 1) + ")";
    }

    std::string indent(int level) { return std::string(static_cast<size_t>(level) * 4, ' '); }

    std::string stmt(int level) {
        std::ostringstream os;
        switch (pick(6)) {
            case 0:
            case 1:
            case 2:
                os << indent(level) << any_var() << " = " << expr(2) << ";\n";
                break;
            case 3:
                os << indent(level) << "if (" << expr(1) << " < " << expr(1) << ") {\n"
                   << indent(level + 1) << any_var() << " = " << expr(1) << ";\n"
                   << indent(level) << "} else {\n"
                   << indent(level + 1) << any_var() << " = " << expr(1) << ";\n"
                   << indent(level) << "}\n";
                break;
            case 4:
                os << indent(level) << "while (" << any_var() << " > " << pick(50) << ") {\n"
                   << indent(level + 1) << any_var() << " = " << any_var() << " - 1;\n"
                   << indent(level) << "}\n";
                break;
            case 5:
                os << indent(level) << any_var() << " += " << expr(1) << ";\n";
                break;
        }
        return os.str();
    }
};

inline std::vector<std::string> name_pool_a() {
    return {"alpha", "beta", "gamma", "delta", "count", "total", "value", "index"};
}

inline std::vector<std::string> name_pool_b() {
    return {"x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"};
}
