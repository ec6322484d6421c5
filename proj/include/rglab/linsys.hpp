#pragma once

// Exact homogeneous linear algebra over the rationals, organized as an
// incremental integer echelon: rows are reduced fraction-free against the
// stored pivots and divided by their content, so entries stay small.

#include "rglab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rglab {

class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    /// Reduce a row against the current pivots and absorb what is left.
    void insert(std::vector<BigInt> row) {
        if (row.size() != cols_) throw std::invalid_argument("IntegerEchelon: bad row width");
        for (const auto& pivot_row : rows_) {
            const std::size_t c = pivot_col(pivot_row);
            if (row[c] == 0) continue;
            const BigInt a = pivot_row[c];
            const BigInt b = row[c];
            for (std::size_t j = 0; j < cols_; ++j) row[j] = a * row[j] - b * pivot_row[j];
            divide_by_content(row);
        }
        if (first_nonzero(row) == cols_) return;
        divide_by_content(row);
        rows_.push_back(std::move(row));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return pivot_col(a) < pivot_col(b); });
    }

    /// Basis of the solution space of (rows) * x = 0.
    std::vector<std::vector<Rational>> nullspace_basis() const {
        std::vector<bool> is_pivot(cols_, false);
        for (const auto& r : rows_) is_pivot[pivot_col(r)] = true;

        std::vector<std::vector<Rational>> basis;
        for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<Rational> x(cols_, Rational(0));
            x[free_col] = 1;
            // Back-substitute pivot rows from the right.
            for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
                const auto& row = *it;
                const std::size_t c = pivot_col(row);
                Rational s = 0;
                for (std::size_t j = c + 1; j < cols_; ++j)
                    if (row[j] != 0 && x[j] != 0) s += Rational(row[j]) * x[j];
                x[c] = -s / Rational(row[c]);
            }
            basis.push_back(std::move(x));
        }
        return basis;
    }

    /// True when every solution has x[col] = 0.
    static bool forced_zero(const std::vector<std::vector<Rational>>& basis, std::size_t col) {
        for (const auto& v : basis)
            if (v[col] != 0) return false;
        return true;
    }

    /// Exact check that a candidate vector solves every stored equation.
    bool satisfied_by(const std::vector<Rational>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("satisfied_by: bad width");
        for (const auto& row : rows_) {
            Rational s = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if (row[j] != 0 && x[j] != 0) s += Rational(row[j]) * x[j];
            if (s != 0) return false;
        }
        return true;
    }

private:
    static std::size_t first_nonzero(const std::vector<BigInt>& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) return j;
        return row.size();
    }

    static std::size_t pivot_col(const std::vector<BigInt>& row) { return first_nonzero(row); }

    static void divide_by_content(std::vector<BigInt>& row) {
        BigInt g = 0;
        for (const auto& v : row) {
            if (v != 0) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
            if (g == 1) break;
        }
        if (g > 1)
            for (auto& v : row) v /= g;
    }

    std::size_t cols_;
    std::vector<std::vector<BigInt>> rows_; // sorted by pivot column
};

} // namespace rglab
