#include "dct/isomorphism.hpp"

#include <algorithm>
#include <set>

namespace dct {

namespace {

std::uint64_t fnv(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (i * 8)) & 0xFF;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv_str(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

struct EdgeRec {
    int other;
    bool out;
    EdgeKind kind;
    int slot;

    auto key() const { return std::tuple(out, kind, slot, other); }
};

struct GraphView {
    const DependencyGraph* g;
    std::vector<std::vector<EdgeRec>> adj;

    explicit GraphView(const DependencyGraph& graph) : g(&graph) {
        adj.resize(graph.nodes.size());
        for (const auto& e : graph.edges) {
            adj[static_cast<size_t>(e.src)].push_back(EdgeRec{e.dst, true, e.kind, e.slot});
            adj[static_cast<size_t>(e.dst)].push_back(EdgeRec{e.src, false, e.kind, e.slot});
        }
        for (auto& v : adj)
            std::sort(v.begin(), v.end(),
                      [](const EdgeRec& a, const EdgeRec& b) { return a.key() < b.key(); });
    }
};

// Iterated neighborhood refinement (label + incident edge colors).
std::vector<std::uint64_t> refine_colors(const GraphView& v) {
    const size_t n = v.g->nodes.size();
    std::vector<std::uint64_t> colors(n);
    for (size_t i = 0; i < n; ++i) colors[i] = fnv_str(v.g->nodes[i].label);
    for (size_t round = 0; round < n; ++round) {
        std::vector<std::uint64_t> next(n);
        for (size_t i = 0; i < n; ++i) {
            std::vector<std::uint64_t> sig;
            sig.reserve(v.adj[i].size());
            for (const auto& e : v.adj[i]) {
                std::uint64_t h = fnv(0x9e3779b97f4a7c15ULL, colors[static_cast<size_t>(e.other)]);
                h = fnv(h, static_cast<std::uint64_t>(e.out));
                h = fnv(h, static_cast<std::uint64_t>(e.kind));
                h = fnv(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(e.slot)));
                sig.push_back(h);
            }
            std::sort(sig.begin(), sig.end());
            std::uint64_t h = colors[i];
            for (auto s : sig) h = fnv(h, s);
            next[i] = h;
        }
        if (next == colors) break;
        colors = std::move(next);
    }
    return colors;
}

std::string base_name(const std::string& key) { return key.substr(0, key.find('#')); }

int slot_name_score(const DependencyGraph& a, const DependencyGraph& b, int x, int y) {
    auto ita = a.var_slots.find(x);
    auto itb = b.var_slots.find(y);
    if (ita == a.var_slots.end() || itb == b.var_slots.end()) return 0;
    int score = 0;
    for (const auto& sa : ita->second)
        for (const auto& sb : itb->second)
            if (sa.position == sb.position && base_name(sa.var) == base_name(sb.var)) ++score;
    return score;
}

class Matcher {
public:
    Matcher(const DependencyGraph& a, const DependencyGraph& b, const IsoOptions& opts)
        : a_(a), b_(b), va_(a), vb_(b), opts_(opts) {}

    IsoResult run() {
        const size_t n = a_.nodes.size();
        if (n != b_.nodes.size() || a_.edges.size() != b_.edges.size())
            return IsoResult{IsoStatus::NotIsomorphic, std::nullopt};

        col_a_ = refine_colors(va_);
        col_b_ = refine_colors(vb_);
        {
            auto sa = col_a_;
            auto sb = col_b_;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb) return IsoResult{IsoStatus::NotIsomorphic, std::nullopt};
        }

        std::map<std::uint64_t, int> class_size;
        for (auto c : col_a_) class_size[c] += 1;
        order_.resize(n);
        for (size_t i = 0; i < n; ++i) order_[i] = static_cast<int>(i);
        std::sort(order_.begin(), order_.end(), [&](int x, int y) {
            int cx = class_size[col_a_[static_cast<size_t>(x)]];
            int cy = class_size[col_a_[static_cast<size_t>(y)]];
            if (cx != cy) return cx < cy;
            return x < y;
        });

        map_ab_.assign(n, -1);
        map_ba_.assign(n, -1);
        deadline_ = std::chrono::steady_clock::now() + opts_.timeout;
        max_name_score_ = possible_name_matches();

        search(0);

        if (!best_map_.empty()) {
            NodeMapping m;
            for (size_t i = 0; i < n; ++i) {
                m.forward[static_cast<int>(i)] = best_map_[i];
                m.backward[best_map_[i]] = static_cast<int>(i);
            }
            return IsoResult{IsoStatus::Found, std::move(m)};
        }
        if (out_of_budget_) return IsoResult{IsoStatus::Timeout, std::nullopt};
        return IsoResult{IsoStatus::NotIsomorphic, std::nullopt};
    }

private:
    const DependencyGraph& a_;
    const DependencyGraph& b_;
    GraphView va_, vb_;
    IsoOptions opts_;
    std::vector<std::uint64_t> col_a_, col_b_;
    std::vector<int> order_;
    std::vector<int> map_ab_, map_ba_;
    long long steps_ = 0;
    long long steps_at_first_witness_ = -1;
    bool out_of_budget_ = false;
    bool done_ = false;
    int best_score_ = -1;
    int max_name_score_ = 0;
    std::vector<int> best_map_;
    std::chrono::steady_clock::time_point deadline_;

    // Upper bound on name-equal pairs: distinct base names on both sides.
    int possible_name_matches() {
        std::set<std::string> na, nb;
        for (const auto& [node, slots] : a_.var_slots)
            for (const auto& s : slots) na.insert(base_name(s.var));
        for (const auto& [node, slots] : b_.var_slots)
            for (const auto& s : slots) nb.insert(base_name(s.var));
        std::vector<std::string> common;
        std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                              std::back_inserter(common));
        return static_cast<int>(common.size());
    }

    bool budget_exceeded() {
        ++steps_;
        if (steps_ > opts_.max_steps) {
            out_of_budget_ = true;
            return true;
        }
        if (steps_at_first_witness_ >= 0 &&
            steps_ - steps_at_first_witness_ > opts_.improvement_steps)
            return true;  // stop improving, keep the best witness
        if ((steps_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) {
            out_of_budget_ = true;
            return true;
        }
        return false;
    }

    // Edges between {x} and already-mapped nodes must correspond exactly.
    // Both sides are normalized to a-side neighbor ids before comparing.
    bool consistent(int x, int y) const {
        std::vector<std::tuple<bool, EdgeKind, int, int>> ex, ey;
        for (const auto& e : va_.adj[static_cast<size_t>(x)]) {
            if (map_ab_[static_cast<size_t>(e.other)] >= 0)
                ex.emplace_back(e.out, e.kind, e.slot, e.other);
        }
        for (const auto& e : vb_.adj[static_cast<size_t>(y)]) {
            int back = map_ba_[static_cast<size_t>(e.other)];
            if (back >= 0) ey.emplace_back(e.out, e.kind, e.slot, back);
        }
        if (ex.size() != ey.size()) return false;
        std::sort(ex.begin(), ex.end());
        std::sort(ey.begin(), ey.end());
        return ex == ey;
    }

    void record_witness() {
        int score = current_name_score();
        if (score > best_score_) {
            best_score_ = score;
            best_map_ = map_ab_;
        }
        if (steps_at_first_witness_ < 0) steps_at_first_witness_ = steps_;
        if (best_score_ >= max_name_score_) done_ = true;
    }

    int current_name_score() const {
        NodeMapping m;
        for (size_t i = 0; i < map_ab_.size(); ++i) {
            m.forward[static_cast<int>(i)] = map_ab_[i];
            m.backward[map_ab_[i]] = static_cast<int>(i);
        }
        return count_name_matches(m, a_, b_);
    }

    void search(size_t idx) {
        if (done_ || budget_exceeded()) return;
        if (idx == order_.size()) {
            record_witness();
            return;
        }
        int x = order_[idx];
        std::vector<std::pair<int, int>> candidates;  // (-score, y)
        for (size_t y = 0; y < map_ba_.size(); ++y) {
            if (map_ba_[y] >= 0) continue;
            if (col_b_[y] != col_a_[static_cast<size_t>(x)]) continue;
            if (a_.nodes[static_cast<size_t>(x)].label != b_.nodes[y].label) continue;
            if (!consistent(x, static_cast<int>(y))) continue;
            candidates.emplace_back(-slot_name_score(a_, b_, x, static_cast<int>(y)),
                                    static_cast<int>(y));
        }
        std::sort(candidates.begin(), candidates.end());
        for (auto [neg_score, y] : candidates) {
            map_ab_[static_cast<size_t>(x)] = y;
            map_ba_[static_cast<size_t>(y)] = x;
            search(idx + 1);
            map_ab_[static_cast<size_t>(x)] = -1;
            map_ba_[static_cast<size_t>(y)] = -1;
            if (done_ || out_of_budget_) return;
            if (steps_at_first_witness_ >= 0 &&
                steps_ - steps_at_first_witness_ > opts_.improvement_steps)
                return;
        }
    }
};

}  // namespace

IsoResult isomorphic(const DependencyGraph& a, const DependencyGraph& b, const IsoOptions& opts) {
    Matcher m(a, b, opts);
    return m.run();
}

std::vector<std::pair<std::string, std::string>> variable_correspondence(
    const NodeMapping& m, const DependencyGraph& a, const DependencyGraph& b) {
    // votes[va] -> set of vb it was paired with anywhere, and vice versa
    std::map<std::string, std::set<std::string>> votes_ab, votes_ba;

    auto vote = [&](const std::string& va, const std::string& vb) {
        votes_ab[va].insert(vb);
        votes_ba[vb].insert(va);
    };

    for (const auto& [x, y] : m.forward) {
        auto ita = a.var_slots.find(x);
        auto itb = b.var_slots.find(y);
        if (ita == a.var_slots.end() || itb == b.var_slots.end()) continue;
        const auto& sa = ita->second;
        const auto& sb = itb->second;
        // ordered positions match directly
        for (const auto& ua : sa) {
            if (ua.position < 0) continue;
            for (const auto& ub : sb) {
                if (ub.position == ua.position) vote(ua.var, ub.var);
            }
        }
        // unordered operands match through mapped def sets
        for (const auto& ua : sa) {
            if (ua.position >= 0) continue;
            std::set<int> mapped;
            for (int d : ua.defs) {
                auto it = m.forward.find(d);
                if (it != m.forward.end()) mapped.insert(it->second);
            }
            for (const auto& ub : sb) {
                if (ub.position >= 0) continue;
                std::set<int> bdefs(ub.defs.begin(), ub.defs.end());
                if (bdefs == mapped) vote(ua.var, ub.var);
            }
        }
    }

    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [va, vbs] : votes_ab) {
        if (vbs.size() != 1) continue;
        const std::string& vb = *vbs.begin();
        if (votes_ba[vb].size() != 1) continue;
        out.emplace_back(va, vb);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int count_name_matches(const NodeMapping& m, const DependencyGraph& a,
                       const DependencyGraph& b) {
    int count = 0;
    for (const auto& [va, vb] : variable_correspondence(m, a, b)) {
        if (base_name(va) == base_name(vb)) ++count;
    }
    return count;
}

}  // namespace dct
