#include "dct/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace dct {

CorpusSplit split_by_project(const std::vector<std::string>& repos,
                             const std::map<std::string, std::int64_t>& yields,
                             const std::array<double, 3>& fractions, std::uint64_t seed) {
    double sum = fractions[0] + fractions[1] + fractions[2];
    if (std::abs(sum - 1.0) > 1e-9 || fractions[0] < 0 || fractions[1] < 0 || fractions[2] < 0)
        throw InvalidFractionsError("split fractions must be non-negative and sum to 1");

    std::vector<std::string> shuffled = repos;
    std::sort(shuffled.begin(), shuffled.end());  // input-order independence
    std::mt19937_64 rng(seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    std::int64_t total = 0;
    auto yield_of = [&](const std::string& r) {
        auto it = yields.find(r);
        return it == yields.end() ? std::int64_t{1} : it->second;
    };
    for (const auto& r : shuffled) total += yield_of(r);

    std::array<double, 3> target{};
    std::array<std::int64_t, 3> current{};
    for (int i = 0; i < 3; ++i) target[static_cast<size_t>(i)] =
        fractions[static_cast<size_t>(i)] * static_cast<double>(total);

    CorpusSplit split;
    std::array<std::vector<std::string>*, 3> out{&split.train, &split.validation, &split.test};
    for (const auto& r : shuffled) {
        // largest remaining deficit wins; ties go to the earlier split
        int best = 0;
        double best_deficit = -1e300;
        for (int i = 0; i < 3; ++i) {
            double deficit = target[static_cast<size_t>(i)] -
                             static_cast<double>(current[static_cast<size_t>(i)]);
            if (deficit > best_deficit + 1e-12) {
                best = i;
                best_deficit = deficit;
            }
        }
        out[static_cast<size_t>(best)]->push_back(r);
        current[static_cast<size_t>(best)] += yield_of(r);
    }
    for (auto* v : out) std::sort(v->begin(), v->end());
    return split;
}

bool split_is_sound(const CorpusSplit& split, const std::vector<std::string>& repos) {
    std::set<std::string> seen;
    for (const auto* part : {&split.train, &split.validation, &split.test}) {
        for (const auto& r : *part)
            if (!seen.insert(r).second) return false;  // duplicate across splits
    }
    std::set<std::string> all(repos.begin(), repos.end());
    return seen == all;
}

}  // namespace dct
