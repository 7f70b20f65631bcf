#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hypic/arrangement.hpp"
#include "hypic/rank.hpp"
#include "hypic/salvetti.hpp"

namespace hypic {

/// primary: the local system L; dual: L^vee (inverse monodromy).
enum class Side { Primary, Dual };
enum class Backend { Exact, Float, Both };

inline const char* to_string(Side s) { return s == Side::Primary ? "primary" : "dual"; }
inline const char* to_string(Backend b) {
    switch (b) {
        case Backend::Exact: return "exact";
        case Backend::Float: return "float";
        case Backend::Both: return "both";
    }
    return "both";
}

struct BettiVector {
    std::vector<long long> dims;  // dims[l] = dim H^l, l = 0..
    bool exact = true;

    long long euler() const {
        long long chi = 0;
        for (std::size_t l = 0; l < dims.size(); ++l) chi += (l % 2 == 0 ? 1 : -1) * dims[l];
        return chi;
    }
    bool operator==(const BettiVector&) const = default;
};

namespace detail {

inline std::string geometry_key(const WeightedArrangement& a) {
    std::string key = std::to_string(a.dimension) + (a.space == Space::Affine ? "A" : "P");
    for (const auto& h : a.hyperplanes) {
        key += '|';
        for (const auto& c : h.coeffs) key += format_rational(c) + ',';
        key += format_rational(h.offset);
    }
    return key;
}

/// Exponent j_H with the specialization t_H = zeta_N^{j_H}. The chain complex
/// with coefficients in L^vee has homology dual to H^*(U; L), so the primary
/// side specializes at exp(-2 pi i a_H).
inline std::vector<long long> character_exponents(const WeightedArrangement& a, Side side, unsigned conductor) {
    std::vector<long long> j;
    for (const auto& h : a.hyperplanes) {
        Rational e = h.weight * conductor * (side == Side::Primary ? -1 : 1);
        long long v = e.get_num().get_si();  // integral by choice of conductor
        long long r = v % static_cast<long long>(conductor);
        j.push_back(r < 0 ? r + conductor : r);
    }
    return j;
}

}  // namespace detail

inline unsigned conductor_of(const WeightedArrangement& a) {
    Integer n = lcm_of_denominators(a.weights());
    return static_cast<unsigned>(n.get_ui());
}

inline std::vector<long long> betti_from_ranks(const std::vector<std::size_t>& cells, const std::vector<std::size_t>& ranks) {
    // ranks[m] = rank of d_m : C_m -> C_{m-1}; ranks[0] = 0.
    std::vector<long long> b(cells.size(), 0);
    for (std::size_t m = 0; m < cells.size(); ++m) {
        long long out_rank = static_cast<long long>(ranks[m]);
        long long in_rank = m + 1 < cells.size() ? static_cast<long long>(ranks[m + 1]) : 0;
        b[m] = static_cast<long long>(cells[m]) - out_rank - in_rank;
    }
    return b;
}

inline BettiVector specialize_exact(const TwistedComplexPresentation& p, const WeightedArrangement& a, Side side) {
    const unsigned n = conductor_of(a);
    CyclotomicField field(n);
    auto j = detail::character_exponents(a, side, n);
    std::vector<std::size_t> ranks(p.cells.size(), 0);
    for (std::size_t m = 1; m < p.cells.size(); ++m) {
        std::vector<SparseEntry> entries;
        for (const auto& e : p.boundary[m]) {
            long long power = 0;
            for (auto h : e.exponent) power += j[h];
            auto v = field.root_of_unity(power);
            if (e.sign < 0) v = field.neg(v);
            entries.push_back({e.row, e.col, std::move(v)});
        }
        ranks[m] = exact_rank(field, p.cells[m - 1], p.cells[m], entries);
    }
    return {betti_from_ranks(p.cells, ranks), true};
}

inline BettiVector specialize_float(const TwistedComplexPresentation& p, const WeightedArrangement& a, Side side) {
    const unsigned n = conductor_of(a);
    auto j = detail::character_exponents(a, side, n);
    std::vector<std::size_t> ranks(p.cells.size(), 0);
    for (std::size_t m = 1; m < p.cells.size(); ++m) {
        Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(p.cells[m - 1]),
                                                      static_cast<Eigen::Index>(p.cells[m]));
        for (const auto& e : p.boundary[m]) {
            long long power = 0;
            for (auto h : e.exponent) power += j[h];
            double angle = 2.0 * M_PI * static_cast<double>(power % n) / static_cast<double>(n);
            mat(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) +=
                static_cast<double>(e.sign) * std::polar(1.0, angle);
        }
        ranks[m] = float_rank(mat);
    }
    return {betti_from_ranks(p.cells, ranks), true};
}

/// Memoizes presentations by hyperplane geometry (they do not depend on weights).
class TwistedEngine {
public:
    explicit TwistedEngine(Backend backend = Backend::Both) : backend_(backend) {}

    Backend backend() const { return backend_; }

    std::shared_ptr<const TwistedComplexPresentation> presentation(const WeightedArrangement& a) {
        if (a.space != Space::Affine) throw Error(ErrorCode::NotAffine, "presentation expects an affine arrangement");
        const auto key = detail::geometry_key(a);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        auto p = std::make_shared<const TwistedComplexPresentation>(twisted_presentation(a));
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.emplace(key, std::move(p)).first->second;
    }

    /// dim H^l(U; L) for the complement of an affine arrangement, l = 0..k.
    BettiVector betti_affine(const WeightedArrangement& a, Side side, Backend backend) {
        if (a.space != Space::Affine) throw Error(ErrorCode::NotAffine, "twisted_betti_affine expects an affine arrangement");
        auto p = presentation(a);
        if (backend == Backend::Exact) return specialize_exact(*p, a, side);
        if (backend == Backend::Float) return specialize_float(*p, a, side);
        auto exact = specialize_exact(*p, a, side);
        auto approx = specialize_float(*p, a, side);
        if (exact.dims != approx.dims)
            throw Error(ErrorCode::BackendDisagreement, "exact and float backends disagree");
        return exact;
    }
    BettiVector betti_affine(const WeightedArrangement& a, Side side) { return betti_affine(a, side, backend_); }

    /// Affine complements directly; projective complements through the cone.
    BettiVector betti(const WeightedArrangement& a, Side side);

private:
    Backend backend_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const TwistedComplexPresentation>> cache_;
};

/// Recovers the projective complement from the cone: b^l = p^l + p^{l-1}.
inline BettiVector cone_split_projective(const BettiVector& affine, const Rational& total_weight) {
    if (!is_integer(total_weight))
        throw Error(ErrorCode::NonintegralTotal, "total weight " + format_rational(total_weight) + " is not integral");
    if (affine.dims.empty()) throw Error(ErrorCode::InconsistentRecursion, "empty Betti vector");
    BettiVector p;
    p.exact = affine.exact;
    long long prev = 0;
    for (std::size_t l = 0; l + 1 < affine.dims.size(); ++l) {
        long long v = affine.dims[l] - prev;
        if (v < 0) throw Error(ErrorCode::InconsistentRecursion, "negative Betti number in cone split");
        p.dims.push_back(v);
        prev = v;
    }
    if (affine.dims.back() != prev) throw Error(ErrorCode::InconsistentRecursion, "cone split does not close up");
    if (p.dims.empty()) p.dims.push_back(0);
    return p;
}

inline BettiVector TwistedEngine::betti(const WeightedArrangement& a, Side side) {
    if (a.space == Space::Affine) return betti_affine(a, side);
    if (a.size() == 0) {
        BettiVector pk;
        pk.dims.assign(2 * a.dimension + 1, 0);
        for (std::size_t l = 0; l <= 2 * a.dimension; l += 2) pk.dims[l] = 1;
        return pk;
    }
    return cone_split_projective(betti_affine(cone(a), side), a.total_weight());
}

inline BettiVector twisted_betti_affine(const WeightedArrangement& a, Side side, Backend backend) {
    TwistedEngine engine(backend);
    return engine.betti_affine(a, side, backend);
}

inline BettiVector twisted_betti(const WeightedArrangement& a, Side side, Backend backend) {
    TwistedEngine engine(backend);
    return engine.betti(a, side);
}

}  // namespace hypic
