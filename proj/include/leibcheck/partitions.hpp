#pragma once

#include <vector>

namespace leibcheck {

/// Ordered partition of the index range [1;n] into disjoint nonempty blocks,
/// each internally sorted ascending.  Indices are 1-based.
struct BlockPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    bool operator==(const BlockPartition& rhs) const {
        return n == rhs.n && blocks == rhs.blocks;
    }
};

/// All ordered pairs (I, J) of disjoint nonempty subsets covering [1;n].
/// Count is 2^n - 2; emitted in lexicographic order of block contents.
/// Throws for n < 1.
const std::vector<BlockPartition>& two_block_partitions(int n);

/// Ordered partitions of [1;n] into j nonempty blocks whose block maxima
/// strictly increase.  One such ordering exists per set partition, so the
/// count is the Stirling number S(n, j).  Lexicographic emission order;
/// empty for j > n.
const std::vector<BlockPartition>& respectful_partitions(int n, int j);

/// Respectful partitions of [1;n] of every block count, ordered by j then
/// lexicographically.
const std::vector<BlockPartition>& respectful_partitions_all(int n);

/// Nonempty subsets of [1;n] in lexicographic content order.
const std::vector<std::vector<int>>& nonempty_subsets(int n);

} // namespace leibcheck
