#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypic/faces.hpp"

namespace hypic {

/// One entry of a boundary matrix: sign * prod_{H in exponent} t_H.
struct BoundaryEntry {
    std::size_t row = 0;  // cell in degree m - 1
    std::size_t col = 0;  // cell in degree m
    int sign = 1;
    std::vector<std::size_t> exponent;  // hyperplanes whose variable appears (each to the first power)
};

/// Finite free chain complex of the complement with entries monomial in one
/// character variable per hyperplane. Specializing the variables at the
/// monodromies of a rank-one local system computes its homology.
struct TwistedComplexPresentation {
    std::size_t num_hyperplanes = 0;
    std::vector<std::size_t> cells;                   // cells[m], m = 0..k
    std::vector<std::vector<BoundaryEntry>> boundary;  // boundary[m]: C_m -> C_{m-1}; boundary[0] empty

    long long euler_characteristic() const {
        long long chi = 0;
        for (std::size_t m = 0; m < cells.size(); ++m) chi += (m % 2 == 0 ? 1 : -1) * static_cast<long long>(cells[m]);
        return chi;
    }
};

namespace detail {

/// Incidence number [G : F] for a facet F of G, from the orientations given by
/// the direction bases of their flats and the outward vector witness(F) - witness(G).
inline int incidence(const FacePoset& fp, std::size_t g, std::size_t f) {
    const Face& G = fp.faces[g];
    const Face& F = fp.faces[f];
    const RMatrix& gb = fp.poset.flats[G.flat].directions;
    const RMatrix& fb = fp.poset.flats[F.flat].directions;
    RVector out(G.witness.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.witness[i] - G.witness[i];
    RMatrix cols;
    cols.push_back(*linalg::coordinates(gb, out));
    for (const auto& v : fb) cols.push_back(*linalg::coordinates(gb, v));
    return sgn(linalg::determinant(cols));
}

}  // namespace detail

/// Salvetti-type presentation: a cell <C, F> of degree codim F for every face F
/// and chamber C above it, with boundary
///   d<C, F> = sum_{G covers F} [G : F] tau(C, G.C) <G.C, G>,
/// where G.C is the chamber nearest to C among those above G and tau(C, C')
/// multiplies t_H over hyperplanes separating C from C' that also separate C
/// from the base chamber.
inline TwistedComplexPresentation twisted_presentation(const WeightedArrangement& a, const FacePoset& fp) {
    const std::size_t k = a.dimension;
    const std::size_t n = a.size();
    TwistedComplexPresentation p;
    p.num_hyperplanes = n;
    p.cells.assign(k + 1, 0);
    p.boundary.assign(k + 1, {});

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_index;  // (chamber, face) -> index within degree
    for (std::size_t f = 0; f < fp.faces.size(); ++f) {
        const std::size_t m = k - fp.faces[f].dim;
        for (auto c : fp.chambers)
            if (FacePoset::below(fp.faces[f].signs, fp.faces[c].signs)) cell_index[{c, f}] = p.cells[m]++;
    }
    const SignVector& base = fp.faces[fp.chambers.front()].signs;
    for (const auto& [key, col] : cell_index) {
        const auto [c, f] = key;
        const std::size_t m = k - fp.faces[f].dim;
        if (m == 0) continue;
        const SignVector& cs = fp.faces[c].signs;
        for (auto g : fp.cofacets[f]) {
            const SignVector& gs = fp.faces[g].signs;
            SignVector target(n);
            for (std::size_t h = 0; h < n; ++h) target[h] = gs[h] != 0 ? gs[h] : cs[h];
            std::size_t c2 = fp.index.at(target);
            BoundaryEntry e;
            e.row = cell_index.at({c2, g});
            e.col = col;
            e.sign = detail::incidence(fp, g, f);
            for (std::size_t h = 0; h < n; ++h)
                if (target[h] != cs[h] && cs[h] != base[h]) e.exponent.push_back(h);
            p.boundary[m].push_back(std::move(e));
        }
    }
    return p;
}

inline TwistedComplexPresentation twisted_presentation(const WeightedArrangement& a) {
    return twisted_presentation(a, face_poset(a));
}

/// Checks d_{m-1} o d_m = 0 as an identity of Laurent polynomials in the t_H.
inline bool boundary_squares_to_zero(const TwistedComplexPresentation& p) {
    for (std::size_t m = 2; m < p.boundary.size(); ++m) {
        std::map<std::size_t, std::vector<const BoundaryEntry*>> lower_by_col;
        for (const auto& e : p.boundary[m - 1]) lower_by_col[e.col].push_back(&e);
        std::map<std::tuple<std::size_t, std::size_t, std::vector<int>>, long long> acc;
        for (const auto& e : p.boundary[m]) {
            auto it = lower_by_col.find(e.row);
            if (it == lower_by_col.end()) continue;
            for (const auto* d : it->second) {
                std::vector<int> exps(p.num_hyperplanes, 0);
                for (auto h : e.exponent) ++exps[h];
                for (auto h : d->exponent) ++exps[h];
                acc[{e.col, d->row, exps}] += e.sign * d->sign;
            }
        }
        for (const auto& [_, v] : acc)
            if (v != 0) return false;
    }
    return true;
}

inline nlohmann::json to_json(const TwistedComplexPresentation& p) {
    nlohmann::json j;
    j["cells"] = p.cells;
    nlohmann::json bs = nlohmann::json::array();
    for (std::size_t m = 1; m < p.boundary.size(); ++m) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : p.boundary[m]) {
            nlohmann::json exps = nlohmann::json::object();
            for (auto h : e.exponent) exps[std::to_string(h)] = 1;
            entries.push_back({{"row", e.row}, {"col", e.col}, {"sign", e.sign}, {"monomial", exps}});
        }
        bs.push_back({{"degree", m}, {"entries", entries}});
    }
    j["boundary"] = bs;
    return j;
}

}  // namespace hypic
