#pragma once

#include "leibcheck/partitions.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace leibcheck {

/// Degrees of the letters of a word, in the grading of the coalgebra that
/// hosts the word.  Entry k is the degree of the letter at (1-based)
/// position k+1.
struct SignContext {
    std::vector<int> letter_degrees;

    int size() const { return static_cast<int>(letter_degrees.size()); }
    int degree(int position) const { return letter_degrees.at(position - 1); } // 1-based
};

/// Koszul sign of the shuffle that rearranges the word into block order
/// (each block keeps its internal ascending order): the product of
/// (-1)^(deg a * deg b) over pairs a < b whose blocks appear in reversed
/// order.  Returns +1 or -1.
int koszul_sign(const SignContext& ctx, const BlockPartition& partition);

/// Sign picked up when a coderivation coefficient of the given degree is
/// carried from the front of the word to the position of the last extracted
/// letter, collecting the extracted letters behind it on the way: the
/// operator symbol crosses every surviving letter before position i_k, and
/// each extracted letter crosses the surviving letters between it and i_k.
/// `positions` is the sorted 1-based extraction set i_1 < ... < i_k.
int epsilon_insertion(const SignContext& ctx, int operator_degree,
                      const std::vector<int>& positions);

/// Stable canonical form of a symmetric word: letters sorted by
/// (degree, basis index) with the Koszul sign of the sorting permutation.
/// Returns nullopt when the word vanishes (a repeated letter of odd degree).
std::optional<std::pair<std::vector<int>, int>>
sort_symmetric(const std::vector<int>& letters, const std::vector<int>& degrees);

} // namespace leibcheck
