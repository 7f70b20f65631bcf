#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "hypic/cyclotomic.hpp"

namespace hypic {

struct SparseEntry {
    std::size_t row;
    std::size_t col;
    CyclotomicField::Element value;
};

/// Exact rank over Q(zeta_N) by sparse Gaussian elimination. Pivots are chosen
/// in a shortest remaining row, from its sparsest column, so that the unit
/// (monomial) entries of boundary matrices are consumed first and fill stays low.
inline std::size_t exact_rank(const CyclotomicField& field, std::size_t rows, std::size_t cols,
                              const std::vector<SparseEntry>& entries) {
    using Element = CyclotomicField::Element;
    std::vector<std::map<std::size_t, Element>> mat(rows);
    std::vector<std::set<std::size_t>> in_col(cols);
    for (const auto& e : entries) {
        auto& slot = mat[e.row][e.col];
        slot = slot.empty() ? e.value : field.add(slot, e.value);
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (auto it = mat[r].begin(); it != mat[r].end();) {
            if (CyclotomicField::is_zero(it->second)) {
                it = mat[r].erase(it);
            } else {
                in_col[it->first].insert(r);
                ++it;
            }
        }
    }
    std::vector<bool> done(rows, false);
    std::size_t rank = 0;
    for (;;) {
        std::size_t best = rows;
        for (std::size_t r = 0; r < rows; ++r)
            if (!done[r] && !mat[r].empty() && (best == rows || mat[r].size() < mat[best].size())) best = r;
        if (best == rows) break;
        std::size_t pc = mat[best].begin()->first;
        for (const auto& [c, _] : mat[best])
            if (in_col[c].size() < in_col[pc].size()) pc = c;
        const Element pivot_inv = field.inv(mat[best].at(pc));
        std::vector<std::size_t> targets;
        for (auto r : in_col[pc])
            if (r != best) targets.push_back(r);
        for (auto r : targets) {
            Element factor = field.mul(mat[r].at(pc), pivot_inv);
            for (const auto& [c, v] : mat[best]) {
                auto it = mat[r].find(c);
                Element delta = field.mul(factor, v);
                if (it == mat[r].end()) {
                    mat[r].emplace(c, field.neg(delta));
                    in_col[c].insert(r);
                } else {
                    it->second = field.sub(it->second, delta);
                    if (CyclotomicField::is_zero(it->second)) {
                        mat[r].erase(it);
                        in_col[c].erase(r);
                    }
                }
            }
        }
        for (const auto& [c, _] : mat[best]) in_col[c].erase(best);
        mat[best].clear();
        done[best] = true;
        ++rank;
    }
    return rank;
}

/// Numerical rank from column-pivoted QR: pivots below rel_tol times the largest count as zero.
inline std::size_t float_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-8) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(rel_tol);
    return static_cast<std::size_t>(qr.rank());
}

}  // namespace hypic
