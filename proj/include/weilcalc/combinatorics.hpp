#pragma once

#include <cstdint>
#include <vector>

namespace weilcalc {

// Ranked enumeration of index tuples over 0..r-1: either strictly increasing
// tuples or sorted multisets of a fixed length.
class IndexSpace {
public:
    static const IndexSpace& increasing(int r, int len);
    static const IndexSpace& multisets(int r, int len);

    int size() const { return int(items_.size()); }
    const std::vector<int>& operator[](int i) const { return items_[i]; }
    const std::vector<std::vector<int>>& items() const { return items_; }
    // Rank of a tuple already in canonical order, or -1.
    int rank(const std::vector<int>& t) const;

private:
    IndexSpace(int r, int len, bool strict);

    int r_;
    int len_;
    std::vector<std::vector<int>> items_;
    std::vector<int> lookup_;
};

// Subsets of 0..n-1 of size q as bitmasks, in the order of increasing tuples.
class SubsetSpace {
public:
    static const SubsetSpace& get(int n, int q);

    int size() const { return int(masks_.size()); }
    uint32_t mask(int i) const { return masks_[i]; }
    const std::vector<uint32_t>& masks() const { return masks_; }
    int rank(uint32_t mask) const { return lookup_[mask]; }

private:
    SubsetSpace(int n, int q);

    std::vector<uint32_t> masks_;
    std::vector<int> lookup_;
};

// Sorts in place; returns the permutation sign, or 0 if an entry repeats.
int sort_with_sign(std::vector<int>& v);

// Number of elements of mask strictly below bit a.
inline int bits_below(uint32_t mask, int a) {
    return __builtin_popcount(mask & ((uint32_t(1) << a) - 1));
}

// Sign of the shuffle that merges disjoint sorted sets I then J.
inline int shuffle_sign(uint32_t I, uint32_t J) {
    int inv = 0;
    for (uint32_t m = J; m; m &= m - 1) inv += __builtin_popcount(I >> __builtin_ctz(m));
    return (inv & 1) ? -1 : 1;
}

// (j, p-j)-shuffles of 0..p-1 as permutations sigma (sigma[0..j) increasing,
// sigma[j..p) increasing), each with its sign.
struct Shuffle {
    std::vector<int> perm;
    int sign;
};
std::vector<Shuffle> shuffles(int j, int p);

long binomial(int n, int k);

}  // namespace weilcalc
