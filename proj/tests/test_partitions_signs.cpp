#include "doctest.h"

#include "leibcheck/partitions.hpp"
#include "leibcheck/signs.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace leibcheck;

namespace {

// Independent oracle: Koszul sign of an arbitrary rearrangement, computed by
// counting inversion pairs of odd-degree letters directly.  `target[k]` is
// the original position (0-based into degrees) placed at slot k.
int permutation_koszul_sign(const std::vector<int>& degrees, const std::vector<int>& target) {
    int sign = 1;
    for (size_t s = 0; s < target.size(); ++s)
        for (size_t t = s + 1; t < target.size(); ++t)
            if (target[s] > target[t] && (degrees[target[s]] & 1) && (degrees[target[t]] & 1))
                sign = -sign;
    return sign;
}

// Stirling numbers of the second kind via the standard recurrence.
long stirling2(int n, int j) {
    if (n == 0 && j == 0) return 1;
    if (n == 0 || j == 0 || j > n) return 0;
    static std::map<std::pair<int, int>, long> memo;
    auto key = std::make_pair(n, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long value = j * stirling2(n - 1, j) + stirling2(n - 1, j - 1);
    memo.emplace(key, value);
    return value;
}

long bell(int n) {
    long total = 0;
    for (int j = 1; j <= n; ++j) total += stirling2(n, j);
    return n == 0 ? 1 : total;
}

std::vector<int> random_degrees(std::mt19937_64& rng, int n) {
    std::vector<int> d(n);
    for (auto& x : d) x = static_cast<int>(rng() % 5) - 2;
    return d;
}

} // namespace

TEST_CASE("two-block partitions") {
    CHECK(two_block_partitions(1).empty());

    const auto& p2 = two_block_partitions(2);
    REQUIRE(p2.size() == 2);
    CHECK(p2[0].blocks == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(p2[1].blocks == std::vector<std::vector<int>>{{2}, {1}});

    CHECK(two_block_partitions(3).size() == 6);
    for (int n = 1; n <= 8; ++n)
        CHECK(two_block_partitions(n).size() == (1u << n) - 2);

    // Brute-force subset oracle for n = 3: every nonempty proper subset once.
    std::set<std::vector<int>> firsts;
    for (const auto& p : two_block_partitions(3)) {
        REQUIRE(p.blocks.size() == 2);
        firsts.insert(p.blocks[0]);
        std::set<int> all;
        for (const auto& b : p.blocks) all.insert(b.begin(), b.end());
        CHECK(all == std::set<int>{1, 2, 3});
    }
    CHECK(firsts.size() == 6);
    CHECK_THROWS_AS(two_block_partitions(0), std::invalid_argument);
}

TEST_CASE("respectful partitions") {
    const auto& p32 = respectful_partitions(3, 2);
    REQUIRE(p32.size() == 3);
    // Lexicographic order of block contents.
    CHECK(p32[0].blocks == std::vector<std::vector<int>>{{1}, {2, 3}});
    CHECK(p32[1].blocks == std::vector<std::vector<int>>{{1, 2}, {3}});
    CHECK(p32[2].blocks == std::vector<std::vector<int>>{{2}, {1, 3}});

    const auto& p41 = respectful_partitions(4, 1);
    REQUIRE(p41.size() == 1);
    CHECK(p41[0].blocks == std::vector<std::vector<int>>{{1, 2, 3, 4}});

    CHECK(respectful_partitions(4, 2).size() == 7);
    CHECK(respectful_partitions(2, 3).empty());

    // Block maxima must increase in every emitted partition.
    for (int n = 1; n <= 6; ++n) {
        for (int j = 1; j <= n; ++j) {
            for (const auto& p : respectful_partitions(n, j)) {
                for (size_t b = 1; b < p.blocks.size(); ++b)
                    CHECK(p.blocks[b - 1].back() < p.blocks[b].back());
            }
        }
    }
}

TEST_CASE("respectful counts match Stirling and Bell numbers") {
    for (int n = 1; n <= 8; ++n) {
        long total = 0;
        for (int j = 1; j <= n; ++j) {
            long count = static_cast<long>(respectful_partitions(n, j).size());
            CHECK(count == stirling2(n, j));
            total += count;
        }
        CHECK(total == bell(n));
        CHECK(static_cast<long>(respectful_partitions_all(n).size()) == bell(n));
    }
}

TEST_CASE("koszul sign basics") {
    // All-even contexts: every sign operation returns +1.
    SignContext even{{0, 2, -2}};
    for (const auto& p : two_block_partitions(3)) CHECK(koszul_sign(even, p) == 1);
    for (const auto& s : nonempty_subsets(3)) CHECK(epsilon_insertion(even, 1, s) == 1);

    // Two odd letters swapped: -1.
    SignContext odd2{{1, 1}};
    CHECK(koszul_sign(odd2, BlockPartition{2, {{2}, {1}}}) == -1);
    CHECK(koszul_sign(odd2, BlockPartition{2, {{1}, {2}}}) == 1);

    // Extracting letter 2 to the front crosses letter 1 only.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = random_degrees(rng, 3);
        SignContext ctx{d};
        int expected = (d[0] & 1) && (d[1] & 1) ? -1 : 1;
        CHECK(koszul_sign(ctx, BlockPartition{3, {{2}, {1, 3}}}) == expected);
    }
}

TEST_CASE("koszul sign against the permutation oracle") {
    std::mt19937_64 rng(17);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            auto degrees = random_degrees(rng, n);
            SignContext ctx{degrees};
            for (const auto& p : respectful_partitions_all(n)) {
                std::vector<int> target;
                for (const auto& b : p.blocks)
                    for (int v : b) target.push_back(v - 1);
                CHECK(koszul_sign(ctx, p) == permutation_koszul_sign(degrees, target));
            }
        }
    }
}

TEST_CASE("koszul sign is multiplicative under block refinement") {
    // Splitting the final block of a two-block shuffle and composing signs
    // reproduces the three-block shuffle sign.
    std::mt19937_64 rng(23);
    for (int n = 3; n <= 5; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            auto degrees = random_degrees(rng, n);
            SignContext ctx{degrees};
            for (int j = 3; j <= std::min(n, 3); ++j) {
                for (const auto& p : respectful_partitions(n, 3)) {
                    // coarse: (I1, I2 u I3)
                    std::vector<int> tail = p.blocks[1];
                    tail.insert(tail.end(), p.blocks[2].begin(), p.blocks[2].end());
                    std::sort(tail.begin(), tail.end());
                    int coarse = koszul_sign(ctx, BlockPartition{n, {p.blocks[0], tail}});

                    // refinement of the tail, with positions renumbered
                    std::vector<int> tail_degrees;
                    std::map<int, int> renumber;
                    for (size_t k = 0; k < tail.size(); ++k) {
                        renumber[tail[k]] = static_cast<int>(k) + 1;
                        tail_degrees.push_back(degrees[tail[k] - 1]);
                    }
                    auto renumbered = [&](const std::vector<int>& block) {
                        std::vector<int> out;
                        for (int v : block) out.push_back(renumber.at(v));
                        return out;
                    };
                    SignContext tail_ctx{tail_degrees};
                    int fine = koszul_sign(
                        tail_ctx, BlockPartition{static_cast<int>(tail.size()),
                                                 {renumbered(p.blocks[1]), renumbered(p.blocks[2])}});
                    CHECK(koszul_sign(ctx, p) == coarse * fine);
                }
            }
        }
    }
}

TEST_CASE("insertion signs") {
    // Extraction starting at the front crosses nothing.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = random_degrees(rng, 4);
        SignContext ctx{d};
        CHECK(epsilon_insertion(ctx, 1, {1}) == 1);
        CHECK(epsilon_insertion(ctx, 1, {1, 2}) == 1);
        CHECK(epsilon_insertion(ctx, 1, {1, 2, 3, 4}) == 1);
    }

    // Single extraction at position i: the odd operator symbol walks past the
    // first i-1 letters.
    for (int trial = 0; trial < 30; ++trial) {
        auto d = random_degrees(rng, 5);
        SignContext ctx{d};
        for (int i = 1; i <= 5; ++i) {
            int expected = 1;
            for (int l = 0; l < i - 1; ++l)
                if (d[l] & 1) expected = -expected;
            CHECK(epsilon_insertion(ctx, 1, {i}) == expected);
        }
    }

    // Even operator degree: single extractions never pick up a sign.
    for (int trial = 0; trial < 10; ++trial) {
        auto d = random_degrees(rng, 4);
        SignContext ctx{d};
        for (int i = 1; i <= 4; ++i) CHECK(epsilon_insertion(ctx, 2, {i}) == 1);
    }
}

TEST_CASE("insertion signs match the rearrangement oracle") {
    // The target configuration keeps the surviving letters in place, with the
    // operator symbol and the extracted letters gathered at the slot of the
    // last extracted one.
    std::mt19937_64 rng(37);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            auto d = random_degrees(rng, n);
            int q = 1 + static_cast<int>(rng() % 2);
            // augmented word: operator symbol at slot 0, letters at 1..n
            std::vector<int> aug_degrees;
            aug_degrees.push_back(q);
            aug_degrees.insert(aug_degrees.end(), d.begin(), d.end());
            SignContext ctx{d};
            for (const auto& subset : nonempty_subsets(n)) {
                std::vector<int> target;
                for (int p = 1; p < subset.back(); ++p)
                    if (std::find(subset.begin(), subset.end(), p) == subset.end())
                        target.push_back(p);
                target.push_back(0); // the operator symbol
                for (int p : subset) target.push_back(p);
                for (int p = subset.back() + 1; p <= n; ++p) target.push_back(p);
                CHECK(epsilon_insertion(ctx, q, subset) ==
                      permutation_koszul_sign(aug_degrees, target));
            }
        }
    }
}
