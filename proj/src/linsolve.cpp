#include "weilcalc/linsolve.hpp"

namespace weilcalc {

static void axpy(SparseRow& row, const Rational& f, const SparseRow& src) {
    for (const auto& [c, v] : src) {
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, -f * v);
        } else {
            it->second -= f * v;
            if (it->second == 0) row.erase(it);
        }
    }
}

bool SparseSystem::add(SparseRow row, Rational rhs) {
    for (auto it = row.begin(); it != row.end();) {
        if (it->first < 0 || it->first >= ncols_) throw StructuralError("column out of range");
        it = it->second == 0 ? row.erase(it) : std::next(it);
    }
    // Eliminate existing pivots. Pivot rows never contain other pivot columns,
    // so one sweep over the row's pivot columns suffices.
    std::vector<int> hits;
    for (const auto& [c, v] : row)
        if (pivots_.count(c)) hits.push_back(c);
    for (int c : hits) {
        auto it = row.find(c);
        if (it == row.end()) continue;
        Rational f = it->second;
        const Pivot& p = pivots_.at(c);
        axpy(row, f, p.row);
        rhs -= f * p.rhs;
    }
    if (row.empty()) {
        if (rhs != 0) consistent_ = false;
        return rhs == 0;
    }
    int col = row.begin()->first;
    Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    rhs *= inv;
    for (auto& [pc, p] : pivots_) {
        auto it = p.row.find(col);
        if (it == p.row.end()) continue;
        Rational f = it->second;
        axpy(p.row, f, row);
        p.rhs -= f * rhs;
    }
    pivots_.emplace(col, Pivot{std::move(row), std::move(rhs)});
    return true;
}

std::optional<std::vector<Rational>> SparseSystem::solve() const {
    if (!consistent_) return std::nullopt;
    std::vector<Rational> x(size_t(ncols_), Rational(0));
    for (const auto& [c, p] : pivots_) x[size_t(c)] = p.rhs;
    return x;
}

std::vector<std::vector<Rational>> SparseSystem::nullspace() const {
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < ncols_; ++f) {
        if (pivots_.count(f)) continue;
        std::vector<Rational> v(size_t(ncols_), Rational(0));
        v[size_t(f)] = 1;
        for (const auto& [c, p] : pivots_) {
            auto it = p.row.find(f);
            if (it != p.row.end()) v[size_t(c)] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace weilcalc
