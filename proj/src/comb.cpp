#include "sympcalc/comb.hpp"

#include <stdexcept>

namespace sympcalc {

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (k == 0) out.assign(1, {});
    return out;
}

int sort_sign(std::vector<int> idx) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    return sign;
}

SubsetIndexer::SubsetIndexer(int n, int k) : subsets_(k_subsets(n, k)) {
    for (size_t i = 0; i < subsets_.size(); ++i)
        pos_[subsets_[i]] = static_cast<int>(i);
}

int SubsetIndexer::index_of(const std::vector<int>& s) const {
    auto it = pos_.find(s);
    if (it == pos_.end()) throw std::out_of_range("SubsetIndexer: no such subset");
    return it->second;
}

std::pair<int, int> SubsetIndexer::locate(const std::vector<int>& tuple) const {
    int sign = sort_sign(tuple);
    if (sign == 0) return {-1, 0};
    std::vector<int> s = tuple;
    std::sort(s.begin(), s.end());
    return {index_of(s), sign};
}

}  // namespace sympcalc
