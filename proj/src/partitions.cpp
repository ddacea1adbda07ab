#include "leibcheck/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace leibcheck {

namespace {

std::recursive_mutex cache_mutex;

std::vector<std::vector<int>> subsets_lex(int n, bool proper) {
    // Recursive lexicographic generation: each subset is extended by every
    // larger element before moving to the next starting element.
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        for (int v = next; v <= n; ++v) {
            cur.push_back(v);
            if (!proper || static_cast<int>(cur.size()) < n) out.push_back(cur);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<int> complement_of(const std::vector<int>& subset, int n) {
    std::vector<int> out;
    out.reserve(n - subset.size());
    size_t k = 0;
    for (int v = 1; v <= n; ++v) {
        if (k < subset.size() && subset[k] == v) ++k;
        else out.push_back(v);
    }
    return out;
}

// All set partitions of [1;n] via restricted growth strings.
std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> rgs(n, 0);
    auto rec = [&](auto&& self, int pos, int max_label) -> void {
        if (pos == n) {
            std::vector<std::vector<int>> blocks(max_label + 1);
            for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
            out.push_back(std::move(blocks));
            return;
        }
        for (int label = 0; label <= max_label + 1; ++label) {
            rgs[pos] = label;
            self(self, pos + 1, std::max(max_label, label));
        }
    };
    if (n > 0) rec(rec, 0, -1);
    return out;
}

} // namespace

const std::vector<std::vector<int>>& nonempty_subsets(int n) {
    if (n < 1) throw std::invalid_argument("nonempty_subsets: n must be >= 1");
    static std::map<int, std::vector<std::vector<int>>> cache;
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, subsets_lex(n, false)).first;
    return it->second;
}

const std::vector<BlockPartition>& two_block_partitions(int n) {
    if (n < 1) throw std::invalid_argument("two_block_partitions: n must be >= 1");
    static std::map<int, std::vector<BlockPartition>> cache;
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<BlockPartition> list;
        for (const auto& first : subsets_lex(n, true))
            list.push_back(BlockPartition{n, {first, complement_of(first, n)}});
        it = cache.emplace(n, std::move(list)).first;
    }
    return it->second;
}

const std::vector<BlockPartition>& respectful_partitions(int n, int j) {
    if (n < 1 || j < 1) throw std::invalid_argument("respectful_partitions: need n >= 1, j >= 1");
    static std::map<std::pair<int, int>, std::vector<BlockPartition>> cache;
    std::lock_guard lock(cache_mutex);
    auto key = std::make_pair(n, j);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<BlockPartition> list;
        for (auto blocks : set_partitions(n)) {
            if (static_cast<int>(blocks.size()) != j) continue;
            // Order blocks so their maxima increase: the unique respectful
            // arrangement of this set partition.
            std::sort(blocks.begin(), blocks.end(),
                      [](const auto& a, const auto& b) { return a.back() < b.back(); });
            list.push_back(BlockPartition{n, std::move(blocks)});
        }
        std::sort(list.begin(), list.end(),
                  [](const BlockPartition& a, const BlockPartition& b) { return a.blocks < b.blocks; });
        it = cache.emplace(key, std::move(list)).first;
    }
    return it->second;
}

const std::vector<BlockPartition>& respectful_partitions_all(int n) {
    if (n < 1) throw std::invalid_argument("respectful_partitions_all: n must be >= 1");
    static std::map<int, std::vector<BlockPartition>> cache;
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<BlockPartition> list;
        for (int j = 1; j <= n; ++j) {
            const auto& part = respectful_partitions(n, j);
            list.insert(list.end(), part.begin(), part.end());
        }
        it = cache.emplace(n, std::move(list)).first;
    }
    return it->second;
}

} // namespace leibcheck
