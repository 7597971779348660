#pragma once

#include <map>
#include <optional>
#include <vector>

#include "weilcalc/poly.hpp"

namespace weilcalc {

using SparseRow = std::map<int, Rational>;

// Exact Gauss-Jordan elimination over Q, fed one equation at a time. Pivot
// rows are kept fully reduced so each new row costs one pass per pivot it hits.
class SparseSystem {
public:
    explicit SparseSystem(int ncols) : ncols_(ncols) {}

    // Adds sum_j row[j] x_j = rhs; returns false if it contradicts earlier rows.
    bool add(SparseRow row, Rational rhs);

    bool consistent() const { return consistent_; }
    int rank() const { return int(pivots_.size()); }
    int ncols() const { return ncols_; }

    // Particular solution with free variables set to zero.
    std::optional<std::vector<Rational>> solve() const;
    // Basis of the homogeneous solution space.
    std::vector<std::vector<Rational>> nullspace() const;

private:
    struct Pivot {
        SparseRow row;  // coefficient 1 at the pivot column, zero at other pivots
        Rational rhs;
    };

    int ncols_;
    bool consistent_ = true;
    std::map<int, Pivot> pivots_;
};

}  // namespace weilcalc
