#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dct/errors.hpp"

namespace dct {

// A repository treated as one document: the shingle set over the
// concatenation of all its C files.
struct RepoDocument {
    std::string repo_id;
    std::set<std::uint64_t> shingles;
    std::int64_t yield = 0;  // matched functions produced
};

// k-token shingles over a lexer-level token stream.
RepoDocument make_document(const std::string& repo_id,
                           const std::vector<std::string>& file_texts, int shingle_k,
                           std::int64_t yield);

struct EmptyDocumentError : Error {
    using Error::Error;
};
struct InvalidBandingError : Error {
    using Error::Error;
};

// Vector of per-permutation minima; deterministic for a fixed seed.
std::vector<std::uint64_t> signature(const RepoDocument& d, int permutations,
                                     std::uint64_t seed);

// Fraction of agreeing positions: an unbiased Jaccard estimator.
double signature_agreement(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b);

double exact_jaccard(const RepoDocument& a, const RepoDocument& b);

struct Cluster {
    int id = 0;
    std::vector<std::string> repos;  // sorted
    std::string representative;
};

// LSH banding proposes candidate pairs; pairs verified at >= threshold
// signature agreement form clusters as connected components. Output is
// invariant to input order.
std::vector<Cluster> cluster(const std::map<std::string, std::vector<std::uint64_t>>& signatures,
                             int bands, int rows, double threshold,
                             const std::map<std::string, std::int64_t>& yields);

// Max yield wins; ties break to the lexicographically smallest repo id.
std::string select_representative(const std::vector<std::string>& repos,
                                  const std::map<std::string, std::int64_t>& yields);

}  // namespace dct
