#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "hypic/linalg.hpp"
#include "hypic/poset.hpp"
#include "hypic/twisted.hpp"

namespace hypic {

namespace detail {

using Subset = std::vector<std::size_t>;  // sorted

/// Span information for subsets: whether the intersection is nonempty and its codimension.
struct SubsetGeometry {
    bool nonempty = false;
    std::size_t codim = 0;
};

inline SubsetGeometry subset_geometry(const WeightedArrangement& a, const Subset& s) {
    const std::size_t dim = a.vector_dimension();
    RMatrix lin, aug;
    for (auto i : s) {
        lin.push_back(a.hyperplanes[i].coeffs);
        aug.push_back(equation_row(a.hyperplanes[i]));
    }
    SubsetGeometry g;
    g.codim = linalg::rank(lin, dim);
    g.nonempty = linalg::rank(aug, dim + 1) == g.codim;
    return g;
}

inline std::vector<Subset> subsets_of_size(std::size_t n, std::size_t p) {
    std::vector<Subset> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(p, n)), true);
    if (p > n) return out;
    do {
        Subset s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

/// e_R ^ e_S as (sign, R u S); sign 0 when they overlap.
inline std::pair<int, Subset> wedge(const Subset& r, const Subset& s) {
    Subset u;
    std::set_union(r.begin(), r.end(), s.begin(), s.end(), std::back_inserter(u));
    if (u.size() != r.size() + s.size()) return {0, {}};
    std::size_t inversions = 0;
    for (auto x : r)
        for (auto y : s) inversions += x > y;
    return {inversions % 2 ? -1 : 1, u};
}

}  // namespace detail

/// Number of no-broken-circuit sets of each size (standard order of hyperplanes).
/// For affine arrangements only sets with nonempty intersection count.
inline std::vector<long long> nbc_counts(const WeightedArrangement& a) {
    const std::size_t n = a.size();
    std::vector<detail::Subset> broken;
    for (std::size_t p = 1; p <= n; ++p) {
        for (const auto& s : detail::subsets_of_size(n, p)) {
            auto g = detail::subset_geometry(a, s);
            if (!g.nonempty || g.codim == s.size()) continue;
            bool minimal = true;  // every proper subset independent
            for (std::size_t drop = 0; drop < s.size() && minimal; ++drop) {
                detail::Subset t = s;
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(drop));
                minimal = detail::subset_geometry(a, t).codim == t.size();
            }
            if (minimal) broken.emplace_back(s.begin() + 1, s.end());
        }
    }
    std::vector<long long> counts(a.vector_dimension() + 1, 0);
    for (std::size_t p = 0; p <= std::min(n, a.vector_dimension()); ++p) {
        for (const auto& s : detail::subsets_of_size(n, p)) {
            auto g = detail::subset_geometry(a, s);
            if (!g.nonempty || g.codim != s.size()) continue;
            bool ok = true;
            for (const auto& b : broken) ok = ok && !std::includes(s.begin(), s.end(), b.begin(), b.end());
            counts[p] += ok;
        }
    }
    return counts;
}

/// Cohomology of the Orlik-Solomon algebra with differential w ^ (.), where
/// w = sum a_H e_H (negated for the dual side). The algebra is realized as the
/// exterior algebra modulo its relation ideal, so no basis straightening is needed.
inline BettiVector aomoto_betti(const WeightedArrangement& a, Side side) {
    if (a.space != Space::Affine) throw Error(ErrorCode::NotAffine, "aomoto_betti expects an affine arrangement");
    const std::size_t n = a.size();
    const std::size_t k = a.dimension;
    const std::size_t top = std::min(n, k) + 1;

    std::vector<std::vector<detail::Subset>> basis(top + 1);
    std::vector<std::map<detail::Subset, std::size_t>> pos(top + 1);
    for (std::size_t p = 0; p <= top; ++p) {
        basis[p] = detail::subsets_of_size(n, p);
        for (std::size_t i = 0; i < basis[p].size(); ++i) pos[p][basis[p][i]] = i;
    }

    // Relation generators: e_S for empty intersections, d e_S for dependent S.
    std::vector<std::pair<std::size_t, RVector>> generators;  // (degree, vector in E^degree)
    for (std::size_t p = 1; p <= std::min(n, top + 1); ++p) {
        for (const auto& s : detail::subsets_of_size(n, p)) {
            auto g = detail::subset_geometry(a, s);
            if (!g.nonempty) {
                if (p <= top) {
                    RVector v(basis[p].size(), Rational(0));
                    v[pos[p].at(s)] = 1;
                    generators.emplace_back(p, v);
                }
            } else if (g.codim < s.size() && p - 1 <= top) {
                RVector v(basis[p - 1].size(), Rational(0));
                for (std::size_t j = 0; j < s.size(); ++j) {
                    detail::Subset t = s;
                    t.erase(t.begin() + static_cast<std::ptrdiff_t>(j));
                    v[pos[p - 1].at(t)] += (j % 2 ? -1 : 1);
                }
                generators.emplace_back(p - 1, v);
            }
        }
    }
    auto ideal = [&](std::size_t p) {
        RMatrix rows;
        for (const auto& [deg, v] : generators) {
            if (deg > p) continue;
            for (const auto& r : basis[p - deg]) {
                RVector w(basis[p].size(), Rational(0));
                bool any = false;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (v[i] == 0) continue;
                    auto [sg, u] = detail::wedge(r, basis[deg][i]);
                    if (sg == 0) continue;
                    w[pos[p].at(u)] += sg * v[i];
                    any = true;
                }
                if (any) rows.push_back(std::move(w));
            }
        }
        return rows;
    };
    std::vector<RMatrix> ideals(top + 1);
    std::vector<std::size_t> ideal_rank(top + 1);
    for (std::size_t p = 0; p <= top; ++p) {
        ideals[p] = ideal(p);
        ideal_rank[p] = linalg::rank(ideals[p], basis[p].size());
    }
    const Rational sign = side == Side::Primary ? 1 : -1;
    // rank of w ^ : A^p -> A^{p+1}
    std::vector<long long> omega_rank(top + 1, 0);
    for (std::size_t p = 0; p < top; ++p) {
        RMatrix rows = ideals[p + 1];
        for (const auto& s : basis[p]) {
            RVector w(basis[p + 1].size(), Rational(0));
            for (std::size_t h = 0; h < n; ++h) {
                auto [sg, u] = detail::wedge({h}, s);
                if (sg != 0) w[pos[p + 1].at(u)] += sign * sg * a.hyperplanes[h].weight;
            }
            rows.push_back(std::move(w));
        }
        omega_rank[p] = static_cast<long long>(linalg::rank(rows, basis[p + 1].size()) - ideal_rank[p + 1]);
    }
    BettiVector out;
    out.dims.assign(k + 1, 0);
    for (std::size_t p = 0; p <= std::min(k, top); ++p) {
        long long dim_a = static_cast<long long>(basis[p].size() - ideal_rank[p]);
        out.dims[p] = dim_a - omega_rank[p] - (p > 0 ? omega_rank[p - 1] : 0);
    }
    return out;
}

}  // namespace hypic
