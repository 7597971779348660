#include "weilcalc/combinatorics.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "weilcalc/poly.hpp"

namespace weilcalc {

namespace {

template <class T>
const T& cached(std::map<std::pair<int, int>, std::unique_ptr<T>>& cache, std::mutex& mu,
                int a, int b, auto make) {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{a, b}];
    if (!slot) slot = make();
    return *slot;
}

void enumerate(int r, int len, bool strict, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    int lo = cur.empty() ? 0 : cur.back() + (strict ? 1 : 0);
    for (int i = lo; i < r; ++i) {
        cur.push_back(i);
        enumerate(r, len, strict, cur, out);
        cur.pop_back();
    }
}

}  // namespace

IndexSpace::IndexSpace(int r, int len, bool strict) : r_(r), len_(len) {
    if (r < 0 || len < 0) throw StructuralError("negative index space");
    std::vector<int> cur;
    enumerate(r, len, strict, cur, items_);
    long cells = 1;
    for (int i = 0; i < len; ++i) cells *= r;
    if (cells > (1L << 24)) throw StructuralError("index space too large");
    lookup_.assign(size_t(cells), -1);
    for (int k = 0; k < int(items_.size()); ++k) {
        long code = 0;
        for (int x : items_[k]) code = code * r + x;
        lookup_[size_t(code)] = k;
    }
}

const IndexSpace& IndexSpace::increasing(int r, int len) {
    static std::map<std::pair<int, int>, std::unique_ptr<IndexSpace>> cache;
    static std::mutex mu;
    return cached(cache, mu, r, len,
                  [&] { return std::unique_ptr<IndexSpace>(new IndexSpace(r, len, true)); });
}

const IndexSpace& IndexSpace::multisets(int r, int len) {
    static std::map<std::pair<int, int>, std::unique_ptr<IndexSpace>> cache;
    static std::mutex mu;
    return cached(cache, mu, r, len,
                  [&] { return std::unique_ptr<IndexSpace>(new IndexSpace(r, len, false)); });
}

int IndexSpace::rank(const std::vector<int>& t) const {
    if (int(t.size()) != len_) return -1;
    long code = 0;
    for (int x : t) {
        if (x < 0 || x >= r_) return -1;
        code = code * r_ + x;
    }
    return lookup_[size_t(code)];
}

SubsetSpace::SubsetSpace(int n, int q) {
    if (n < 0 || n > kMaxVars) throw StructuralError("chart dimension must be in 0..8");
    lookup_.assign(size_t(1) << n, -1);
    if (q < 0 || q > n) return;
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    enumerate(n, q, true, cur, tuples);
    for (const auto& t : tuples) {
        uint32_t m = 0;
        for (int x : t) m |= uint32_t(1) << x;
        lookup_[m] = int(masks_.size());
        masks_.push_back(m);
    }
}

const SubsetSpace& SubsetSpace::get(int n, int q) {
    static std::map<std::pair<int, int>, std::unique_ptr<SubsetSpace>> cache;
    static std::mutex mu;
    return cached(cache, mu, n, q,
                  [&] { return std::unique_ptr<SubsetSpace>(new SubsetSpace(n, q)); });
}

int sort_with_sign(std::vector<int>& v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i) {
        for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] == v[i]) return 0;
    return sign;
}

std::vector<Shuffle> shuffles(int j, int p) {
    std::vector<Shuffle> out;
    const auto& firsts = IndexSpace::increasing(p, j);
    for (const auto& head : firsts.items()) {
        std::vector<int> perm = head;
        std::vector<bool> used(size_t(p), false);
        for (int x : head) used[size_t(x)] = true;
        for (int x = 0; x < p; ++x)
            if (!used[size_t(x)]) perm.push_back(x);
        std::vector<int> tmp = perm;
        int sign = sort_with_sign(tmp);
        out.push_back({perm, sign});
    }
    return out;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace weilcalc
