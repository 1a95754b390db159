// Small combinatorial helpers shared by the exterior-algebra code paths:
// sorted index subsets in lexicographic order, permutation parities, shuffle
// signs.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace sympcalc {

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// All k-element subsets of {0..n-1}, each ascending, in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

// Parity sign of the permutation sorting `idx` ascending; 0 when an index
// repeats.
int sort_sign(std::vector<int> idx);

// Lexicographic position of a sorted k-subset among k_subsets(n, k).
class SubsetIndexer {
public:
    SubsetIndexer(int n, int k);
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    int size() const { return static_cast<int>(subsets_.size()); }
    // Index of a sorted subset.
    int index_of(const std::vector<int>& s) const;
    // Sorts (a copy of) an arbitrary tuple; returns {index, sign}; sign 0 on
    // repeated entries.
    std::pair<int, int> locate(const std::vector<int>& tuple) const;

private:
    std::vector<std::vector<int>> subsets_;
    std::map<std::vector<int>, int> pos_;
};

}  // namespace sympcalc
