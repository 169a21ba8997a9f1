#include "dct/minhash.hpp"

#include <algorithm>
#include <random>

#include "dct/lexer.hpp"
#include "dct/pack.hpp"

namespace dct {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<std::string> token_stream(const std::string& text) {
    try {
        std::vector<std::string> out;
        for (const auto& t : lex(text, Dialect::none()))
            if (t.kind != Tok::End) out.push_back(t.text);
        return out;
    } catch (const ParseError&) {
        // not lexable as C; fall back to the generic tokenizer
        return default_tokenizer(text);
    }
}

}  // namespace

RepoDocument make_document(const std::string& repo_id,
                           const std::vector<std::string>& file_texts, int shingle_k,
                           std::int64_t yield) {
    RepoDocument doc;
    doc.repo_id = repo_id;
    doc.yield = yield;
    std::vector<std::string> tokens;
    for (const auto& text : file_texts) {
        auto toks = token_stream(text);
        tokens.insert(tokens.end(), toks.begin(), toks.end());
    }
    if (static_cast<int>(tokens.size()) >= shingle_k) {
        for (size_t i = 0; i + static_cast<size_t>(shingle_k) <= tokens.size(); ++i) {
            std::uint64_t h = 14695981039346656037ULL;
            for (int j = 0; j < shingle_k; ++j) {
                h = fnv1a(tokens[i + static_cast<size_t>(j)], h);
                h = fnv1a("\x1f", h);
            }
            doc.shingles.insert(h);
        }
    } else if (!tokens.empty()) {
        std::uint64_t h = 14695981039346656037ULL;
        for (const auto& t : tokens) h = fnv1a(t, h);
        doc.shingles.insert(h);
    }
    return doc;
}

std::vector<std::uint64_t> signature(const RepoDocument& d, int permutations,
                                     std::uint64_t seed) {
    if (d.shingles.empty()) throw EmptyDocumentError("empty document: " + d.repo_id);
    constexpr std::uint64_t kPrime = (1ULL << 61) - 1;  // Mersenne prime
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> sig(static_cast<size_t>(permutations));
    for (int i = 0; i < permutations; ++i) {
        std::uint64_t a = rng() % (kPrime - 1) + 1;
        std::uint64_t b = rng() % kPrime;
        std::uint64_t best = ~0ULL;
        for (std::uint64_t x : d.shingles) {
            // multiply mod 2^61-1 via 128-bit arithmetic
            unsigned __int128 prod = static_cast<unsigned __int128>(a) * (x % kPrime) + b;
            std::uint64_t v = static_cast<std::uint64_t>(prod % kPrime);
            best = std::min(best, v);
        }
        sig[static_cast<size_t>(i)] = best;
    }
    return sig;
}

double signature_agreement(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b) {
    if (a.empty() || a.size() != b.size()) return 0.0;
    size_t same = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i]) ++same;
    return static_cast<double>(same) / static_cast<double>(a.size());
}

double exact_jaccard(const RepoDocument& a, const RepoDocument& b) {
    if (a.shingles.empty() && b.shingles.empty()) return 1.0;
    size_t inter = 0;
    for (std::uint64_t x : a.shingles)
        if (b.shingles.count(x)) ++inter;
    size_t uni = a.shingles.size() + b.shingles.size() - inter;
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

struct UnionFind {
    std::map<std::string, std::string> parent;

    const std::string& find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return parent.find(x)->first;
        }
        if (it->second == x) return it->second;
        std::string root = find(it->second);
        parent[x] = root;
        return parent.find(x)->second;
    }

    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
};

}  // namespace

std::vector<Cluster> cluster(const std::map<std::string, std::vector<std::uint64_t>>& signatures,
                             int bands, int rows, double threshold,
                             const std::map<std::string, std::int64_t>& yields) {
    if (bands <= 0 || rows <= 0) throw InvalidBandingError("bands and rows must be positive");
    for (const auto& [repo, sig] : signatures) {
        if (static_cast<int>(sig.size()) != bands * rows)
            throw InvalidBandingError("bands * rows must equal the signature length");
    }

    // LSH buckets propose candidates
    std::map<std::pair<int, std::uint64_t>, std::vector<std::string>> buckets;
    for (const auto& [repo, sig] : signatures) {
        for (int band = 0; band < bands; ++band) {
            std::uint64_t h = 14695981039346656037ULL;
            for (int r = 0; r < rows; ++r) {
                std::uint64_t v = sig[static_cast<size_t>(band * rows + r)];
                for (int byte = 0; byte < 8; ++byte) {
                    h ^= (v >> (byte * 8)) & 0xFF;
                    h *= 1099511628211ULL;
                }
            }
            buckets[{band, h}].push_back(repo);
        }
    }

    UnionFind uf;
    for (const auto& [repo, sig] : signatures) uf.find(repo);
    for (const auto& [key, members] : buckets) {
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                if (signature_agreement(signatures.at(members[i]), signatures.at(members[j])) >=
                    threshold)
                    uf.unite(members[i], members[j]);
            }
        }
    }

    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [repo, sig] : signatures) groups[uf.find(repo)].push_back(repo);

    std::vector<Cluster> out;
    int id = 0;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        Cluster c;
        c.id = id++;
        c.representative = select_representative(members, yields);
        c.repos = std::move(members);
        out.push_back(std::move(c));
    }
    return out;
}

std::string select_representative(const std::vector<std::string>& repos,
                                  const std::map<std::string, std::int64_t>& yields) {
    if (repos.empty()) throw Error("select_representative: empty cluster");
    std::string best;
    std::int64_t best_yield = -1;
    std::vector<std::string> sorted = repos;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& r : sorted) {
        auto it = yields.find(r);
        std::int64_t y = it == yields.end() ? 0 : it->second;
        if (y > best_yield) {
            best = r;
            best_yield = y;
        }
    }
    return best;
}

}  // namespace dct
