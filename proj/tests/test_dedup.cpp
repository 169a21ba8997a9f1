#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dct/minhash.hpp"
#include "dct/split.hpp"

using namespace dct;

namespace {

RepoDocument doc_with_shingles(const std::string& id, std::uint64_t lo, std::uint64_t hi,
                               std::int64_t yield = 1) {
    RepoDocument d;
    d.repo_id = id;
    d.yield = yield;
    for (std::uint64_t x = lo; x < hi; ++x) d.shingles.insert(x * 0x9e3779b97f4a7c15ULL);
    return d;
}

std::string random_c_text(std::mt19937_64& rng, int tokens) {
    static const char* words[] = {"int", "x", "y", "=", "+", ";", "if", "(", ")", "{",
                                  "}", "return", "while", "a", "b", "c", "0", "1", "42", "*"};
    std::string out;
    for (int i = 0; i < tokens; ++i) {
        out += words[rng() % 20];
        out += ' ';
    }
    return out;
}

}  // namespace

TEST_CASE("identical documents produce identical signatures") {
    RepoDocument a = doc_with_shingles("a", 0, 200);
    RepoDocument b = doc_with_shingles("b", 0, 200);
    CHECK(signature(a, 128, 7) == signature(b, 128, 7));
}

TEST_CASE("disjoint documents agree almost nowhere") {
    RepoDocument a = doc_with_shingles("a", 0, 200);
    RepoDocument b = doc_with_shingles("b", 1000, 1200);
    double agree = signature_agreement(signature(a, 128, 7), signature(b, 128, 7));
    CHECK(agree < 0.05);
    CHECK(exact_jaccard(a, b) == 0.0);
}

TEST_CASE("signature agreement estimates an engineered Jaccard of one half") {
    // |A| = |B| = 90 with 60 shared: J = 60 / 120 = 0.5 (set-arithmetic oracle)
    RepoDocument a = doc_with_shingles("a", 0, 90);
    RepoDocument b = doc_with_shingles("b", 30, 120);
    CHECK(exact_jaccard(a, b) == doctest::Approx(0.5));

    // one trial within 3 sigma (binomial, n = 128)
    double agree = signature_agreement(signature(a, 128, 42), signature(b, 128, 42));
    CHECK(agree > 0.5 - 3 * 0.0442);
    CHECK(agree < 0.5 + 3 * 0.0442);

    // the estimator is unbiased: mean over independent seeds converges
    double mean = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t)
        mean += signature_agreement(signature(a, 128, 1000 + t), signature(b, 128, 1000 + t));
    mean /= trials;
    CHECK(mean > 0.45);
    CHECK(mean < 0.55);
}

TEST_CASE("empty documents are rejected") {
    RepoDocument d;
    d.repo_id = "empty";
    CHECK_THROWS_AS(signature(d, 128, 1), EmptyDocumentError);
}

TEST_CASE("make_document shingles a token stream") {
    RepoDocument a = make_document("a", {"int main ( void ) { return 0 ; }"}, 5, 1);
    RepoDocument b = make_document("b", {"int main(void){return 0;}"}, 5, 1);
    // token-level shingling is whitespace-insensitive
    CHECK(exact_jaccard(a, b) == doctest::Approx(1.0));
    RepoDocument c = make_document("c", {"long main(void){return 1;}"}, 5, 1);
    CHECK(exact_jaccard(a, c) < 1.0);
}

TEST_CASE("exact duplicates cluster together; distinct repos stay apart") {
    std::map<std::string, std::vector<std::uint64_t>> sigs;
    std::map<std::string, std::int64_t> yields;
    RepoDocument a = doc_with_shingles("a", 0, 300, 10);
    RepoDocument a2 = doc_with_shingles("a2", 0, 300, 7);
    RepoDocument z = doc_with_shingles("z", 5000, 5300, 3);
    for (const auto* d : {&a, &a2, &z}) {
        sigs[d->repo_id] = signature(*d, 128, 9);
        yields[d->repo_id] = d->yield;
    }
    auto clusters = cluster(sigs, 16, 8, 0.7, yields);
    REQUIRE(clusters.size() == 2);
    const Cluster* dup = nullptr;
    for (const auto& c : clusters)
        if (c.repos.size() == 2) dup = &c;
    REQUIRE(dup != nullptr);
    CHECK(dup->representative == "a");  // highest yield
}

TEST_CASE("invalid banding is rejected") {
    std::map<std::string, std::vector<std::uint64_t>> sigs;
    sigs["a"] = std::vector<std::uint64_t>(100, 1);
    CHECK_THROWS_AS(cluster(sigs, 16, 8, 0.7, {}), InvalidBandingError);
}

TEST_CASE("clustering a 20-repo synthetic corpus matches the exact-Jaccard oracle") {
    std::mt19937_64 rng(20250811);
    std::vector<RepoDocument> docs;
    // five groups of near-duplicates, five singletons
    int id = 0;
    for (int g = 0; g < 5; ++g) {
        std::string base = random_c_text(rng, 600);
        int members = 2 + static_cast<int>(rng() % 3);  // 2..4
        for (int m = 0; m < members && id < 15; ++m, ++id) {
            std::string text = base + random_c_text(rng, 12);  // small mutation
            docs.push_back(make_document("repo" + std::to_string(id), {text}, 5,
                                         static_cast<std::int64_t>(rng() % 100)));
        }
    }
    while (id < 20) {
        docs.push_back(make_document("repo" + std::to_string(id),
                                     {random_c_text(rng, 600)}, 5,
                                     static_cast<std::int64_t>(rng() % 100)));
        ++id;
    }

    std::map<std::string, std::vector<std::uint64_t>> sigs;
    std::map<std::string, std::int64_t> yields;
    for (const auto& d : docs) {
        sigs[d.repo_id] = signature(d, 128, 3);
        yields[d.repo_id] = d.yield;
    }
    auto clusters = cluster(sigs, 16, 8, 0.7, yields);

    // O(n^2) oracle: connected components over exact Jaccard >= threshold
    std::map<std::string, std::string> parent;
    for (const auto& d : docs) parent[d.repo_id] = d.repo_id;
    std::function<std::string(std::string)> find = [&](std::string x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < docs.size(); ++i)
        for (size_t j = i + 1; j < docs.size(); ++j)
            if (exact_jaccard(docs[i], docs[j]) >= 0.7) {
                auto ri = find(docs[i].repo_id), rj = find(docs[j].repo_id);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
    std::map<std::string, std::set<std::string>> oracle_groups;
    for (const auto& d : docs) oracle_groups[find(d.repo_id)].insert(d.repo_id);

    std::set<std::set<std::string>> got, expected;
    for (const auto& c : clusters) got.insert(std::set<std::string>(c.repos.begin(), c.repos.end()));
    for (const auto& [root, members] : oracle_groups) expected.insert(members);
    CHECK(got == expected);
}

TEST_CASE("representative selection") {
    std::map<std::string, std::int64_t> yields{{"A", 10}, {"B", 7}, {"C", 5}};
    CHECK(select_representative({"A", "B"}, yields) == "A");
    CHECK(select_representative({"C"}, yields) == "C");
    std::map<std::string, std::int64_t> tie{{"A", 5}, {"B", 5}};
    CHECK(select_representative({"B", "A"}, tie) == "A");  // lexicographic tie-break
}

TEST_CASE("split: trivial and deterministic") {
    std::map<std::string, std::int64_t> yields{{"only", 12}};
    CorpusSplit s = split_by_project({"only"}, yields, {1.0, 0.0, 0.0}, 5);
    CHECK(s.train == std::vector<std::string>{"only"});
    CHECK(s.validation.empty());
    CHECK(s.test.empty());

    std::vector<std::string> repos;
    std::map<std::string, std::int64_t> ys;
    for (int i = 0; i < 100; ++i) {
        repos.push_back("r" + std::to_string(i));
        ys[repos.back()] = 10;
    }
    CorpusSplit s1 = split_by_project(repos, ys, {0.8, 0.1, 0.1}, 99);
    CorpusSplit s2 = split_by_project(repos, ys, {0.8, 0.1, 0.1}, 99);
    CHECK(s1.train == s2.train);
    CHECK(s1.validation == s2.validation);
    CHECK(s1.test == s2.test);
    CHECK(split_is_sound(s1, repos));

    // equal yields: shares land within +-2% of the targets
    auto share = [&](const std::vector<std::string>& part) {
        return static_cast<double>(part.size()) / 100.0;
    };
    CHECK(share(s1.train) > 0.78);
    CHECK(share(s1.train) < 0.82);
    CHECK(share(s1.validation) > 0.08);
    CHECK(share(s1.validation) < 0.12);

    CHECK_THROWS_AS(split_by_project(repos, ys, {0.5, 0.2, 0.2}, 1), InvalidFractionsError);
}

TEST_CASE("split ignores input order") {
    std::vector<std::string> fwd, rev;
    std::map<std::string, std::int64_t> ys;
    for (int i = 0; i < 50; ++i) {
        fwd.push_back("r" + std::to_string(i));
        ys[fwd.back()] = 1 + i % 7;
    }
    rev.assign(fwd.rbegin(), fwd.rend());
    CorpusSplit a = split_by_project(fwd, ys, {0.9, 0.05, 0.05}, 11);
    CorpusSplit b = split_by_project(rev, ys, {0.9, 0.05, 0.05}, 11);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
}
