#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypic/error.hpp"
#include "hypic/linalg.hpp"
#include "hypic/rational.hpp"

namespace hypic {

enum class Space { Affine, Projective };

/// The hyperplane `coeffs . x + offset = 0`. In projective mode `coeffs` are
/// homogeneous (length dimension + 1) and `offset` is zero.
/// The local system has monodromy exp(2 pi i weight) around it.
struct Hyperplane {
    RVector coeffs;
    Rational offset = 0;
    Rational weight = 0;
    std::string label;

    bool operator==(const Hyperplane&) const = default;
};

struct WeightedArrangement {
    std::size_t dimension = 0;
    Space space = Space::Affine;
    std::vector<Hyperplane> hyperplanes;

    bool operator==(const WeightedArrangement&) const = default;

    std::size_t size() const { return hyperplanes.size(); }

    /// Dimension of the vector space the coefficients live in.
    std::size_t vector_dimension() const {
        return space == Space::Projective ? dimension + 1 : dimension;
    }

    bool is_central() const {
        for (const auto& h : hyperplanes)
            if (h.offset != 0) return false;
        return true;
    }

    RVector weights() const {
        RVector w;
        w.reserve(hyperplanes.size());
        for (const auto& h : hyperplanes) w.push_back(h.weight);
        return w;
    }

    Rational total_weight() const {
        Rational s = 0;
        for (const auto& h : hyperplanes) s += h.weight;
        return s;
    }
};

/// Augmented row [coeffs | -offset] so that points satisfy row . (x, 1)^T = 0 split as c.x = rhs.
inline RVector equation_row(const Hyperplane& h) {
    RVector row = h.coeffs;
    row.push_back(-h.offset);
    return row;
}

inline Rational evaluate(const Hyperplane& h, const RVector& x) { return linalg::dot(h.coeffs, x) + h.offset; }

/// Checks the structural invariants. `require_nontrivial` enforces non-integral
/// weights and, in projective mode, an integral total; derived arrangements
/// built internally (merged restrictions) may legitimately violate the former.
inline void validate(const WeightedArrangement& a, bool require_nontrivial = true) {
    if (a.dimension == 0) throw Error(ErrorCode::MalformedInput, "dimension must be positive");
    const std::size_t n = a.vector_dimension();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& h = a.hyperplanes[i];
        if (h.coeffs.size() != n)
            throw Error(ErrorCode::MalformedInput,
                        "hyperplane " + std::to_string(i) + " has " + std::to_string(h.coeffs.size()) +
                            " coefficients, expected " + std::to_string(n));
        bool all_zero = true;
        for (const auto& c : h.coeffs) all_zero = all_zero && c == 0;
        if (all_zero) throw Error(ErrorCode::MalformedInput, "hyperplane " + std::to_string(i) + " has zero normal");
        if (a.space == Space::Projective && h.offset != 0)
            throw Error(ErrorCode::MalformedInput, "projective hyperplanes must have zero offset");
        if (require_nontrivial && is_integer(h.weight))
            throw Error(ErrorCode::IntegerWeight, "hyperplane " + std::to_string(i) + " has integral weight " +
                                                       format_rational(h.weight));
        for (std::size_t j = 0; j < i; ++j)
            if (linalg::proportional(equation_row(h), equation_row(a.hyperplanes[j])))
                throw Error(ErrorCode::DuplicateHyperplane,
                            "hyperplanes " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    if (require_nontrivial && a.space == Space::Projective && !is_integer(a.total_weight()))
        throw Error(ErrorCode::ProjectiveTotalNonintegral,
                    "total weight " + format_rational(a.total_weight()) + " is not an integer");
}

/// Same hyperplanes, inverse monodromy.
inline WeightedArrangement dual_arrangement(WeightedArrangement a) {
    for (auto& h : a.hyperplanes) h.weight = -h.weight;
    return a;
}

/// The central arrangement in C^{k+1} over a projective arrangement in P^k.
inline WeightedArrangement cone(const WeightedArrangement& a) {
    if (a.space != Space::Projective) throw Error(ErrorCode::NotAffine, "cone expects a projective arrangement");
    WeightedArrangement c = a;
    c.space = Space::Affine;
    c.dimension = a.dimension + 1;
    return c;
}

/// Projective closure of an affine arrangement in P^k with homogenizing
/// coordinate first; the hyperplane at infinity carries minus the total weight.
inline WeightedArrangement projective_closure(const WeightedArrangement& a) {
    if (a.space != Space::Affine) throw Error(ErrorCode::NotAffine, "projective_closure expects an affine arrangement");
    WeightedArrangement p;
    p.dimension = a.dimension;
    p.space = Space::Projective;
    for (const auto& h : a.hyperplanes) {
        Hyperplane q;
        q.coeffs.push_back(h.offset);
        q.coeffs.insert(q.coeffs.end(), h.coeffs.begin(), h.coeffs.end());
        q.weight = h.weight;
        q.label = h.label;
        p.hyperplanes.push_back(std::move(q));
    }
    Hyperplane inf;
    inf.coeffs.assign(a.dimension + 1, Rational(0));
    inf.coeffs[0] = 1;
    inf.weight = -a.total_weight();
    inf.label = "inf";
    p.hyperplanes.push_back(std::move(inf));
    return p;
}

}  // namespace hypic
