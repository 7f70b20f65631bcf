#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "hypic/arrangement.hpp"
#include "hypic/linalg.hpp"
#include "hypic/poset.hpp"

namespace hypic {

/// Per-hyperplane position of a face: -1, 0 (on the hyperplane) or +1.
using SignVector = std::vector<signed char>;

struct Face {
    SignVector signs;
    RVector witness;       // rational point in the relative interior
    std::size_t flat = 0;  // index of the spanning flat in the poset
    std::size_t dim = 0;
};

/// Faces of the real picture of an affine arrangement, ordered by decreasing
/// dimension (chambers first).
struct FacePoset {
    std::vector<Face> faces;
    std::vector<std::size_t> chambers;
    std::vector<std::vector<std::size_t>> cofacets;  // cofacets[i]: faces G > faces[i] with dim G = dim + 1
    std::map<SignVector, std::size_t> index;
    IntersectionPoset poset;

    /// F <= G: G's signs agree with F wherever F is nonzero.
    static bool below(const SignVector& f, const SignVector& g) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] != 0 && f[i] != g[i]) return false;
        return true;
    }
};

namespace detail {

struct AffineFunctional {
    RVector linear;
    Rational constant;

    Rational at(const RVector& y) const { return linalg::dot(linear, y) + constant; }
};

struct Region {
    SignVector signs;
    RVector witness;
};

inline bool is_constant(const AffineFunctional& f) {
    for (const auto& c : f.linear)
        if (c != 0) return false;
    return true;
}

/// Open regions cut out of R^d by the functionals, found by inserting them one
/// at a time. A region is split by a new hyperplane exactly when its sign
/// vector appears among the regions of the hyperplane itself, which are
/// enumerated recursively in one dimension less.
inline std::vector<Region> regions(const std::vector<AffineFunctional>& fs, std::size_t d) {
    std::vector<Region> out{Region{{}, RVector(d, Rational(0))}};
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto& f = fs[i];
        if (is_constant(f)) {
            for (auto& r : out) r.signs.push_back(static_cast<signed char>(sgn(f.constant)));
            continue;
        }
        // Parametrize {f = 0} by the coordinates other than a pivot j.
        std::size_t j = 0;
        while (f.linear[j] == 0) ++j;
        auto lift = [&](const RVector& z) {
            RVector y(d, Rational(0));
            Rational s = f.constant;
            for (std::size_t l = 0, t = 0; l < d; ++l) {
                if (l == j) continue;
                y[l] = z[t++];
                s += f.linear[l] * y[l];
            }
            y[j] = -s / f.linear[j];
            return y;
        };
        std::vector<AffineFunctional> restricted;
        for (std::size_t g = 0; g < i; ++g) {
            AffineFunctional r;
            // Substitute the pivot coordinate.
            Rational ratio = fs[g].linear[j] / f.linear[j];
            r.constant = fs[g].constant - ratio * f.constant;
            for (std::size_t l = 0; l < d; ++l)
                if (l != j) r.linear.push_back(fs[g].linear[l] - ratio * f.linear[l]);
            restricted.push_back(std::move(r));
        }
        std::map<SignVector, RVector> crossing;
        for (auto& r : regions(restricted, d - 1)) {
            bool open = true;
            for (auto s : r.signs) open = open && s != 0;
            if (open) crossing.emplace(r.signs, lift(r.witness));
        }
        // Step from a point q of R along the normal without leaving R.
        auto nudge = [&](const RVector& q, int direction) {
            Rational eps = 1;
            Rational nn = linalg::dot(f.linear, f.linear);
            for (std::size_t g = 0; g < i; ++g) {
                Rational rate = linalg::dot(fs[g].linear, f.linear);
                if (rate == 0) continue;
                Rational bound = abs(fs[g].at(q) * nn / rate) / 2;
                if (bound < eps) eps = bound;
            }
            RVector y = q;
            for (std::size_t l = 0; l < d; ++l) y[l] += direction * eps * f.linear[l] / nn;
            return y;
        };
        std::vector<Region> next;
        for (auto& r : out) {
            int s = sgn(f.at(r.witness));
            if (s == 0) {
                for (int dir : {-1, 1}) {
                    Region piece{r.signs, nudge(r.witness, dir)};
                    piece.signs.push_back(static_cast<signed char>(dir));
                    next.push_back(std::move(piece));
                }
                continue;
            }
            auto it = crossing.find(r.signs);
            if (it != crossing.end()) {
                Region other{r.signs, nudge(it->second, -s)};
                other.signs.push_back(static_cast<signed char>(-s));
                next.push_back(std::move(other));
            }
            r.signs.push_back(static_cast<signed char>(s));
            next.push_back(std::move(r));
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

/// Enumerates every face as a chamber of the restriction of the arrangement to
/// one of its flats, with exact witness points.
inline FacePoset face_poset(const WeightedArrangement& a) {
    if (a.space != Space::Affine) throw Error(ErrorCode::NotAffine, "face_poset expects an affine arrangement");
    FacePoset fp;
    fp.poset = intersection_poset(a);
    const std::size_t n = a.size();
    for (std::size_t fi = 0; fi < fp.poset.flats.size(); ++fi) {
        const Flat& flat = fp.poset.flats[fi];
        std::vector<std::size_t> outside;
        std::vector<detail::AffineFunctional> fs;
        for (std::size_t h = 0; h < n; ++h) {
            if (std::binary_search(flat.closure.begin(), flat.closure.end(), h)) continue;
            detail::AffineFunctional g;
            g.constant = evaluate(a.hyperplanes[h], flat.point);
            for (const auto& dvec : flat.directions) g.linear.push_back(linalg::dot(a.hyperplanes[h].coeffs, dvec));
            outside.push_back(h);
            fs.push_back(std::move(g));
        }
        for (auto& r : detail::regions(fs, flat.directions.size())) {
            Face face;
            face.signs.assign(n, 0);
            for (std::size_t t = 0; t < outside.size(); ++t) face.signs[outside[t]] = r.signs[t];
            face.witness = flat.point;
            for (std::size_t t = 0; t < flat.directions.size(); ++t)
                for (std::size_t l = 0; l < face.witness.size(); ++l)
                    face.witness[l] += r.witness[t] * flat.directions[t][l];
            face.flat = fi;
            face.dim = flat.directions.size();
            fp.faces.push_back(std::move(face));
        }
    }
    std::stable_sort(fp.faces.begin(), fp.faces.end(), [](const Face& x, const Face& y) { return x.dim > y.dim; });
    fp.cofacets.resize(fp.faces.size());
    for (std::size_t i = 0; i < fp.faces.size(); ++i) {
        fp.index.emplace(fp.faces[i].signs, i);
        if (fp.faces[i].dim == a.dimension) fp.chambers.push_back(i);
    }
    for (std::size_t i = 0; i < fp.faces.size(); ++i)
        for (std::size_t j = 0; j < fp.faces.size(); ++j)
            if (fp.faces[j].dim == fp.faces[i].dim + 1 && FacePoset::below(fp.faces[i].signs, fp.faces[j].signs))
                fp.cofacets[i].push_back(j);
    return fp;
}

}  // namespace hypic
