#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dct/errors.hpp"

namespace dct {

struct CorpusSplit {
    std::vector<std::string> train;
    std::vector<std::string> validation;
    std::vector<std::string> test;
};

struct InvalidFractionsError : Error {
    using Error::Error;
};

// Whole repositories assigned greedily in seeded-random order, targeting the
// configured function-count fractions. Disjoint by construction and
// deterministic for a fixed seed.
CorpusSplit split_by_project(const std::vector<std::string>& repos,
                             const std::map<std::string, std::int64_t>& yields,
                             const std::array<double, 3>& fractions, std::uint64_t seed);

// Disjointness + coverage check, performed on every pipeline run.
bool split_is_sound(const CorpusSplit& split, const std::vector<std::string>& repos);

}  // namespace dct
