#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hypic/arrangement.hpp"
#include "hypic/linalg.hpp"
#include "hypic/poset.hpp"

namespace oracle {

using hypic::IndexSet;
using hypic::RMatrix;
using hypic::WeightedArrangement;

/// Closures of all nonempty intersections, by trying every subset of hyperplanes.
inline std::map<IndexSet, std::size_t> brute_force_flats(const WeightedArrangement& a) {
    const std::size_t n = a.size();
    const std::size_t dim = a.vector_dimension();
    std::map<IndexSet, std::size_t> out;  // closure -> codim
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        RMatrix aug;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) aug.push_back(hypic::equation_row(a.hyperplanes[i]));
        RMatrix lin = aug;
        for (auto& r : lin) r.pop_back();
        const std::size_t r_lin = hypic::linalg::rank(lin, dim);
        if (hypic::linalg::rank(aug, dim + 1) != r_lin) continue;  // empty
        if (a.space == hypic::Space::Projective && r_lin == dim) continue;
        IndexSet closure;
        for (std::size_t i = 0; i < n; ++i) {
            RMatrix more = aug;
            more.push_back(hypic::equation_row(a.hyperplanes[i]));
            if (hypic::linalg::rank(more, dim + 1) == r_lin) closure.push_back(i);
        }
        out[closure] = r_lin;
    }
    return out;
}

/// Number of points of F_p^k off every hyperplane (integer coefficients).
inline long long count_complement_points(const WeightedArrangement& a, long long p) {
    const std::size_t k = a.dimension;
    std::vector<long long> x(k, 0);
    long long count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            for (const auto& h : a.hyperplanes) {
                long long v = h.offset.get_num().get_si();
                for (std::size_t j = 0; j < k; ++j) v += h.coeffs[j].get_num().get_si() * x[j];
                if (((v % p) + p) % p == 0) return;
            }
            ++count;
            return;
        }
        for (long long t = 0; t < p; ++t) {
            x[i] = t;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

/// Finest partition of a central arrangement into direct-sum blocks, by
/// exhausting all set partitions.
inline std::vector<IndexSet> brute_force_decomposition(const WeightedArrangement& a) {
    const std::size_t n = a.size();
    const std::size_t dim = a.vector_dimension();
    auto rank_of = [&](const IndexSet& s) {
        RMatrix m;
        for (auto i : s) m.push_back(a.hyperplanes[i].coeffs);
        return hypic::linalg::rank(m, dim);
    };
    IndexSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const std::size_t total = rank_of(all);
    std::vector<IndexSet> best{all};
    std::vector<std::size_t> label(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
        if (i == n) {
            std::vector<IndexSet> parts(blocks);
            for (std::size_t j = 0; j < n; ++j) parts[label[j]].push_back(j);
            std::size_t sum = 0;
            for (const auto& p : parts) sum += rank_of(p);
            if (sum == total && parts.size() > best.size()) best = parts;
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            label[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n > 0) rec(0, 0);
    std::sort(best.begin(), best.end());
    return best;
}

/// Poincare polynomial coefficients from Whitney's subset formula:
/// pi(t) = sum over subsets S with nonempty intersection of (-1)^|S| (-t)^rank(S).
inline std::vector<long long> whitney_by_subsets(const WeightedArrangement& a) {
    const std::size_t n = a.size(), dim = a.vector_dimension();
    std::vector<long long> out(dim + 1, 0);
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        RMatrix lin, aug;
        std::size_t size = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            ++size;
            lin.push_back(a.hyperplanes[i].coeffs);
            aug.push_back(hypic::equation_row(a.hyperplanes[i]));
        }
        const std::size_t r = hypic::linalg::rank(lin, dim);
        if (hypic::linalg::rank(aug, dim + 1) != r) continue;
        out[r] += ((size + r) % 2 == 0) ? 1 : -1;
    }
    return out;
}

/// Random affine arrangement with small integer coefficients and weights p/q.
inline WeightedArrangement random_affine(std::mt19937& rng, std::size_t k, std::size_t n, long q) {
    std::uniform_int_distribution<long> coef(-2, 2), num(1, q - 1);
    WeightedArrangement a;
    a.dimension = k;
    while (a.size() < n) {
        hypic::Hyperplane h;
        bool zero = true;
        for (std::size_t i = 0; i < k; ++i) {
            h.coeffs.emplace_back(coef(rng));
            zero = zero && h.coeffs.back() == 0;
        }
        h.offset = coef(rng);
        h.weight = hypic::ratio(num(rng), q);
        h.label = "H" + std::to_string(a.size() + 1);
        bool dup = zero;
        for (const auto& g : a.hyperplanes)
            dup = dup || hypic::linalg::proportional(hypic::equation_row(g), hypic::equation_row(h));
        if (!dup) a.hyperplanes.push_back(h);
    }
    return a;
}

inline bool essential(const WeightedArrangement& a) {
    RMatrix m;
    for (const auto& h : a.hyperplanes) m.push_back(h.coeffs);
    return hypic::linalg::rank(m, a.dimension) == a.dimension;
}

/// No dense edge of the projective closure (the hyperplane at infinity
/// included) has integral weight, and the total weight is not integral.
inline bool nonresonant(const WeightedArrangement& a) {
    if (hypic::is_integer(a.total_weight())) return false;
    for (const auto& f : hypic::dense_flats(hypic::projective_closure(a)))
        if (hypic::is_integer(f.weight_sum)) return false;
    return true;
}

}  // namespace oracle
