#include "leibcheck/signs.hpp"

#include <algorithm>
#include <stdexcept>

namespace leibcheck {

int koszul_sign(const SignContext& ctx, const BlockPartition& partition) {
    if (ctx.size() != partition.n)
        throw std::invalid_argument("sign context length does not match partition size");
    int n = partition.n;
    std::vector<int> block_of(n + 1, -1);
    for (size_t b = 0; b < partition.blocks.size(); ++b)
        for (int v : partition.blocks[b]) {
            if (v < 1 || v > n || block_of[v] != -1)
                throw std::invalid_argument("partition blocks must be disjoint subsets of [1;n]");
            block_of[v] = static_cast<int>(b);
        }
    for (int v = 1; v <= n; ++v)
        if (block_of[v] == -1) throw std::invalid_argument("partition blocks must cover [1;n]");

    int sign = 1;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (block_of[b] < block_of[a] && (ctx.degree(a) & 1) && (ctx.degree(b) & 1))
                sign = -sign;
    return sign;
}

int epsilon_insertion(const SignContext& ctx, int operator_degree,
                      const std::vector<int>& positions) {
    if (positions.empty()) throw std::invalid_argument("empty extraction set");
    int n = ctx.size();
    std::vector<bool> extracted(n + 1, false);
    int prev = 0;
    for (int p : positions) {
        if (p <= prev || p > n) throw std::invalid_argument("extraction positions must be sorted in [1;n]");
        extracted[p] = true;
        prev = p;
    }
    int last = positions.back();
    int sign = 1;
    if (operator_degree & 1)
        for (int l = 1; l < last; ++l)
            if (!extracted[l] && (ctx.degree(l) & 1)) sign = -sign;
    for (size_t m = 0; m + 1 < positions.size(); ++m) {
        int pm = positions[m];
        if (!(ctx.degree(pm) & 1)) continue;
        for (int l = pm + 1; l < last; ++l)
            if (!extracted[l] && (ctx.degree(l) & 1)) sign = -sign;
    }
    return sign;
}

std::optional<std::pair<std::vector<int>, int>>
sort_symmetric(const std::vector<int>& letters, const std::vector<int>& degrees) {
    if (letters.size() != degrees.size())
        throw std::invalid_argument("letters/degrees length mismatch");
    std::vector<int> sorted = letters;
    std::vector<int> deg = degrees;
    int sign = 1;
    // Insertion sort; every adjacent swap of odd letters flips the sign.
    for (size_t i = 1; i < sorted.size(); ++i) {
        for (size_t k = i; k > 0; --k) {
            auto key = [&](size_t idx) { return std::make_pair(deg[idx], sorted[idx]); };
            if (key(k - 1) <= key(k)) break;
            if ((deg[k - 1] & 1) && (deg[k] & 1)) sign = -sign;
            std::swap(sorted[k - 1], sorted[k]);
            std::swap(deg[k - 1], deg[k]);
        }
    }
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] && (deg[i] & 1)) return std::nullopt;
    return std::make_pair(std::move(sorted), sign);
}

} // namespace leibcheck
