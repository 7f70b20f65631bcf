#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hypic/arrangement.hpp"
#include "hypic/linalg.hpp"

namespace hypic {

using IndexSet = std::vector<std::size_t>;  // sorted hyperplane indices

/// An edge of the arrangement: a nonempty intersection of hyperplanes, stored
/// with every hyperplane that contains it. In projective mode the subspace is
/// the cone (a linear subspace of C^{k+1}, base point zero).
struct Flat {
    IndexSet closure;
    RVector point;
    RMatrix directions;
    std::size_t codim = 0;
    bool dense = false;
    Rational weight_sum = 0;
    bool exceptional_monodromy_trivial = true;

    std::size_t dim(const WeightedArrangement& a) const { return a.vector_dimension() - codim; }
    bool is_ambient() const { return closure.empty(); }
};

struct IntersectionPoset {
    std::vector<Flat> flats;                 // sorted by (codim, closure); flats[0] is the ambient space
    std::vector<std::vector<std::size_t>> contains;  // contains[i]: flats strictly containing flats[i]
    std::vector<long long> moebius;

    std::optional<std::size_t> find(const IndexSet& closure) const {
        for (std::size_t i = 0; i < flats.size(); ++i)
            if (flats[i].closure == closure) return i;
        return std::nullopt;
    }
};

namespace detail {

inline bool is_subset(const IndexSet& small, const IndexSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline bool contains_subspace(const Hyperplane& h, const RVector& point, const RMatrix& directions) {
    if (evaluate(h, point) != 0) return false;
    for (const auto& d : directions)
        if (linalg::dot(h.coeffs, d) != 0) return false;
    return true;
}

/// Point and direction basis of the solution set of the given hyperplanes, or nullopt if empty.
inline std::optional<std::pair<RVector, RMatrix>> solve_subspace(const WeightedArrangement& a, const IndexSet& idx) {
    const std::size_t n = a.vector_dimension();
    RMatrix m;
    RVector rhs;
    for (auto i : idx) {
        m.push_back(a.hyperplanes[i].coeffs);
        rhs.push_back(-a.hyperplanes[i].offset);
    }
    auto p = linalg::solve(m, rhs, n);
    if (!p) return std::nullopt;
    return std::make_pair(*p, linalg::nullspace(m, n));
}

inline Flat make_flat(const WeightedArrangement& a, const RVector& point, RMatrix directions) {
    Flat f;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (contains_subspace(a.hyperplanes[i], point, directions)) f.closure.push_back(i);
    f.point = point;
    f.codim = a.vector_dimension() - directions.size();
    f.directions = std::move(directions);
    for (auto i : f.closure) f.weight_sum += a.hyperplanes[i].weight;
    f.exceptional_monodromy_trivial = is_integer(f.weight_sum);
    return f;
}

}  // namespace detail

/// Enumerates all edges (every nonempty intersection of hyperplanes, each once),
/// with closures, codimensions, weight sums and Moebius values. In projective
/// mode the zero subspace of the cone is not an edge.
inline IntersectionPoset intersection_poset(const WeightedArrangement& a) {
    const std::size_t n = a.vector_dimension();
    std::map<IndexSet, Flat> found;
    {
        RMatrix id(n, RVector(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
        Flat top = detail::make_flat(a, RVector(n, Rational(0)), id);
        found.emplace(top.closure, top);
    }
    std::vector<IndexSet> frontier{IndexSet{}};
    while (!frontier.empty()) {
        std::vector<IndexSet> next;
        for (const auto& closure : frontier) {
            for (std::size_t h = 0; h < a.size(); ++h) {
                if (std::binary_search(closure.begin(), closure.end(), h)) continue;
                IndexSet gens = closure;
                gens.insert(std::upper_bound(gens.begin(), gens.end(), h), h);
                auto sub = detail::solve_subspace(a, gens);
                if (!sub) continue;
                if (a.space == Space::Projective && sub->second.empty()) continue;
                Flat f = detail::make_flat(a, sub->first, std::move(sub->second));
                if (found.count(f.closure)) continue;
                next.push_back(f.closure);
                found.emplace(f.closure, std::move(f));
            }
        }
        frontier = std::move(next);
    }

    IntersectionPoset poset;
    for (auto& [_, f] : found) poset.flats.push_back(std::move(f));
    std::stable_sort(poset.flats.begin(), poset.flats.end(), [](const Flat& x, const Flat& y) {
        return x.codim != y.codim ? x.codim < y.codim : x.closure < y.closure;
    });
    const std::size_t m = poset.flats.size();
    poset.contains.resize(m);
    poset.moebius.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && poset.flats[j].codim < poset.flats[i].codim &&
                detail::is_subset(poset.flats[j].closure, poset.flats[i].closure))
                poset.contains[i].push_back(j);
    for (std::size_t i = 0; i < m; ++i) {
        if (poset.flats[i].is_ambient()) {
            poset.moebius[i] = 1;
            continue;
        }
        long long s = 0;
        for (auto j : poset.contains[i]) s += poset.moebius[j];
        poset.moebius[i] = -s;
    }
    return poset;
}

/// Checks that `f` is an edge of `a` (closed closure, matching subspace).
inline void require_flat(const WeightedArrangement& a, const Flat& f) {
    if (f.point.size() != a.vector_dimension())
        throw Error(ErrorCode::FlatNotInArrangement, "flat lives in the wrong ambient dimension");
    IndexSet closure;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (detail::contains_subspace(a.hyperplanes[i], f.point, f.directions)) closure.push_back(i);
    if (closure != f.closure) throw Error(ErrorCode::FlatNotInArrangement, "closure does not match the arrangement");
    if (!closure.empty()) {
        auto sub = detail::solve_subspace(a, closure);
        if (!sub || sub->second.size() != f.directions.size())
            throw Error(ErrorCode::FlatNotInArrangement, "subspace is not an intersection of hyperplanes");
    } else if (!f.directions.empty() && f.directions.size() != a.vector_dimension()) {
        throw Error(ErrorCode::FlatNotInArrangement, "subspace is not an intersection of hyperplanes");
    }
}

/// The central subarrangement of hyperplanes containing `f`, translated to pass
/// through the origin. Weights and labels are preserved; the result is an
/// affine-mode central arrangement in the vector space of `a`.
inline WeightedArrangement localize(const WeightedArrangement& a, const Flat& f) {
    require_flat(a, f);
    WeightedArrangement loc;
    loc.dimension = a.vector_dimension();
    loc.space = Space::Affine;
    for (auto i : f.closure) {
        Hyperplane h = a.hyperplanes[i];
        h.offset = 0;
        loc.hyperplanes.push_back(std::move(h));
    }
    return loc;
}

/// Finest partition of a central arrangement into blocks whose functional spans
/// form a direct sum (the connected components of its matroid). Computed by
/// union-find over the fundamental circuits of a greedy basis.
inline std::vector<IndexSet> irreducible_decomposition(const WeightedArrangement& a) {
    if (!a.is_central()) throw Error(ErrorCode::NotCentral, "irreducible_decomposition needs a central arrangement");
    const std::size_t m = a.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) { parent[root(x)] = root(y); };

    RMatrix basis;
    std::vector<std::size_t> basis_index;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& v = a.hyperplanes[i].coeffs;
        auto coords = basis.empty() ? std::nullopt : linalg::coordinates(basis, v);
        if (!coords) {
            basis.push_back(v);
            basis_index.push_back(i);
            continue;
        }
        for (std::size_t j = 0; j < coords->size(); ++j)
            if ((*coords)[j] != 0) unite(i, basis_index[j]);
    }
    std::map<std::size_t, IndexSet> blocks;
    for (std::size_t i = 0; i < m; ++i) blocks[root(i)].push_back(i);
    std::vector<IndexSet> out;
    for (auto& [_, b] : blocks) out.push_back(std::move(b));
    std::sort(out.begin(), out.end());
    return out;
}

/// Marks density on every flat of the poset: codim >= 2 and irreducible localization.
inline void annotate_density(const WeightedArrangement& a, IntersectionPoset& poset) {
    for (auto& f : poset.flats)
        f.dense = f.codim >= 2 && irreducible_decomposition(localize(a, f)).size() == 1;
}

inline std::vector<Flat> dense_flats(const WeightedArrangement& a, const IntersectionPoset& poset) {
    IntersectionPoset copy = poset;
    annotate_density(a, copy);
    std::vector<Flat> out;
    for (auto& f : copy.flats)
        if (f.dense) out.push_back(std::move(f));
    return out;
}

inline std::vector<Flat> dense_flats(const WeightedArrangement& a) { return dense_flats(a, intersection_poset(a)); }

inline Rational weight_sum(const WeightedArrangement& a, const Flat& f) {
    Rational s = 0;
    for (auto i : f.closure) s += a.hyperplanes.at(i).weight;
    return s;
}

struct EulerData {
    std::vector<long long> poincare;  // Betti numbers of the (untwisted) complement
    long long chi = 0;
};

namespace detail {

inline std::vector<long long> poincare_from_poset(const IntersectionPoset& p, std::size_t length) {
    std::vector<long long> b(length, 0);
    for (std::size_t i = 0; i < p.flats.size(); ++i) {
        long long mu = p.moebius[i];
        b.at(p.flats[i].codim) += mu < 0 ? -mu : mu;
    }
    return b;
}

}  // namespace detail

/// Poincare polynomial coefficients of the complement from Moebius values;
/// projective complements are obtained from the cone by dividing by (1 + t).
inline EulerData euler_characteristic(const WeightedArrangement& a) {
    EulerData out;
    if (a.space == Space::Affine) {
        out.poincare = detail::poincare_from_poset(intersection_poset(a), a.dimension + 1);
    } else {
        auto cone_b = detail::poincare_from_poset(intersection_poset(cone(a)), a.dimension + 2);
        if (a.size() == 0) {
            // P^k itself: cohomology in even degrees up to 2k.
            out.poincare.assign(2 * a.dimension + 1, 0);
            for (std::size_t i = 0; i <= 2 * a.dimension; i += 2) out.poincare[i] = 1;
        } else {
            out.poincare.assign(a.dimension + 1, 0);
            long long prev = 0;
            for (std::size_t i = 0; i <= a.dimension; ++i) {
                out.poincare[i] = cone_b[i] - prev;
                prev = out.poincare[i];
            }
        }
    }
    for (std::size_t i = 0; i < out.poincare.size(); ++i) out.chi += (i % 2 == 0 ? 1 : -1) * out.poincare[i];
    return out;
}

}  // namespace hypic
