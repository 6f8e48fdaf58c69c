#pragma once

#include <vector>

#include "subtile/config.hpp"
#include "subtile/substitution.hpp"

namespace subtile::testing {

// One-dimensional substitution from words over 0-based letters, all unit
// extents. Offsets are the positions in the word.
inline Substitution make_words(const std::vector<std::vector<int>>& words,
                               const std::string& name = "w") {
    Substitution sub;
    sub.name = name;
    sub.dim = 1;
    sub.expansion = 0;
    int m = static_cast<int>(words.size());
    for (int t = 0; t < m; ++t) sub.prototiles.push_back({t + 1, {1, 1}, ""});
    sub.rules.resize(m);
    for (int j = 0; j < m; ++j)
        for (size_t k = 0; k < words[j].size(); ++k)
            sub.rules[j].children.push_back({words[j][k], {static_cast<long long>(k), 0}});
    finalize_substitution(sub);
    return sub;
}

}  // namespace subtile::testing
