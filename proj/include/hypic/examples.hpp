#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypic/arrangement.hpp"
#include "hypic/poset.hpp"

namespace hypic::examples {

namespace detail {

inline Hyperplane plane(std::vector<long> coeffs, Rational weight, std::string label, long offset = 0) {
    Hyperplane h;
    for (auto c : coeffs) h.coeffs.emplace_back(c);
    h.offset = offset;
    h.weight = std::move(weight);
    h.label = std::move(label);
    return h;
}

}  // namespace detail

/// Six planes x1 -+ x3, x2 -+ x3, x1 -+ x2 in C^3 with weights
/// a1 = a2 = a3 = a4 = 1/3, a5 = a6 = -2/3, so a1 + a3 + a5 = 0.
inline WeightedArrangement example2() {
    WeightedArrangement a;
    a.dimension = 3;
    a.space = Space::Affine;
    const Rational third = ratio(1, 3), minus_two_thirds = ratio(-2, 3);
    a.hyperplanes = {
        detail::plane({1, 0, -1}, third, "H1"), detail::plane({1, 0, 1}, third, "H2"),
        detail::plane({0, 1, -1}, third, "H3"), detail::plane({0, 1, 1}, third, "H4"),
        detail::plane({1, -1, 0}, minus_two_thirds, "H5"), detail::plane({1, 1, 0}, minus_two_thirds, "H6"),
    };
    return a;
}

/// Coordinate hyperplanes of C^k with weight 1/2 each.
inline WeightedArrangement boolean(std::size_t k) {
    WeightedArrangement a;
    a.dimension = k;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<long> c(k, 0);
        c[i] = 1;
        a.hyperplanes.push_back(detail::plane(c, ratio(1, 2), "x" + std::to_string(i + 1)));
    }
    return a;
}

/// n distinct lines through the origin of C^2: x = 0 and y = j x for j = 0..n-2.
inline WeightedArrangement concurrent_lines(std::size_t n, const std::vector<Rational>& weights) {
    WeightedArrangement a;
    a.dimension = 2;
    for (std::size_t i = 0; i < n; ++i) {
        Rational w = i < weights.size() ? weights[i] : weights.back();
        if (i == 0)
            a.hyperplanes.push_back(detail::plane({1, 0}, w, "L1"));
        else
            a.hyperplanes.push_back(detail::plane({static_cast<long>(i) - 1, -1}, w, "L" + std::to_string(i + 1)));
    }
    return a;
}

struct Example1Options {
    std::size_t dense_vertices = 1;
    bool resonant_vertex = false;  // force a(v) to be an integer at the first dense vertex
    std::size_t attempts = 2000;
};

/// Random projective arrangement in P^k with n hyperplanes: k + 1 of them pass
/// through each designated vertex, every other edge is a normal crossing.
/// Weights share one random denominator in 2..7 and have integral total.
inline WeightedArrangement example1_generic(std::size_t k, std::size_t n, std::uint64_t seed,
                                            const Example1Options& options = {}) {
    const std::size_t per_vertex = k + 1;
    if (k < 2 || n < options.dense_vertices * per_vertex || options.dense_vertices == 0)
        throw Error(ErrorCode::GenerationFailed, "not enough hyperplanes for the requested dense vertices");
    if (options.resonant_vertex && n - options.dense_vertices * per_vertex == 1)
        throw Error(ErrorCode::GenerationFailed, "a resonant vertex needs at least two hyperplanes off the vertices");
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

    for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
        WeightedArrangement a;
        a.dimension = k;
        a.space = Space::Projective;
        std::vector<IndexSet> designated;
        for (std::size_t v = 0; v < options.dense_vertices; ++v) {
            RVector point(k + 1);
            bool zero = true;
            for (auto& x : point) {
                x = uniform(-2, 2);
                zero = zero && x == 0;
            }
            if (zero) point[0] = 1;
            IndexSet members;
            for (std::size_t t = 0; t < per_vertex; ++t) {
                // Random normal projected to be orthogonal to the vertex, then cleared of denominators.
                RVector c(k + 1);
                for (auto& x : c) x = uniform(-4, 4);
                Rational ratio = linalg::dot(c, point) / linalg::dot(point, point);
                Integer den = 1;
                for (std::size_t i = 0; i <= k; ++i) {
                    c[i] -= ratio * point[i];
                    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c[i].get_den().get_mpz_t());
                }
                for (auto& x : c) x *= den;
                Hyperplane h;
                h.coeffs = c;
                members.push_back(a.hyperplanes.size());
                a.hyperplanes.push_back(std::move(h));
            }
            designated.push_back(members);
        }
        while (a.size() < n) {
            Hyperplane h;
            for (std::size_t i = 0; i <= k; ++i) h.coeffs.emplace_back(uniform(-5, 5));
            a.hyperplanes.push_back(std::move(h));
        }

        const long q = uniform(2, 7);
        auto draw = [&] {
            long num;
            do num = uniform(-(q - 1), q - 1);
            while (num % q == 0);
            return ratio(num, q);
        };
        for (auto& h : a.hyperplanes) h.weight = draw();
        if (options.resonant_vertex) {
            const auto& first = designated.front();
            Rational partial = 0;
            for (std::size_t t = 0; t + 1 < first.size(); ++t) partial += a.hyperplanes[first[t]].weight;
            a.hyperplanes[first.back()].weight = -frac_part(partial);
        }
        {
            Rational partial = 0;
            for (std::size_t i = 0; i + 1 < a.size(); ++i) partial += a.hyperplanes[i].weight;
            a.hyperplanes.back().weight -= frac_part(partial + a.hyperplanes.back().weight);
        }
        for (std::size_t i = 0; i < a.size(); ++i) a.hyperplanes[i].label = "H" + std::to_string(i + 1);

        try {
            validate(a);
        } catch (const Error&) {
            continue;
        }
        if (options.resonant_vertex) {
            Rational s = 0;
            for (auto i : designated.front()) s += a.hyperplanes[i].weight;
            if (!is_integer(s)) continue;
        }

        // Every edge that is not a vertex must be a normal crossing; vertices are
        // dense exactly when designated.
        auto poset = intersection_poset(a);
        bool ok = true;
        std::size_t dense_seen = 0;
        for (const auto& f : poset.flats) {
            if (f.is_ambient()) continue;
            if (f.codim < k) {
                ok = ok && f.closure.size() == f.codim;
            } else {
                bool is_designated = false;
                for (const auto& d : designated) is_designated = is_designated || f.closure == d;
                if (is_designated)
                    ++dense_seen;
                else
                    ok = ok && f.closure.size() == k;
            }
        }
        if (ok && dense_seen == designated.size()) return a;
    }
    throw Error(ErrorCode::GenerationFailed, "rejection budget exceeded");
}

}  // namespace hypic::examples
