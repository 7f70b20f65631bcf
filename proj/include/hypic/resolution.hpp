#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypic/io.hpp"
#include "hypic/poset.hpp"
#include "hypic/twisted.hpp"

namespace hypic {

enum class BuildingPreset { Minimal, AllEdges, Custom };

inline const char* to_string(BuildingPreset p) {
    switch (p) {
        case BuildingPreset::Minimal: return "minimal";
        case BuildingPreset::AllEdges: return "all-edges";
        default: return "custom";
    }
}

/// Flats to blow up, in blow-up order: increasing dimension, then closure.
struct BuildingSet {
    BuildingPreset preset = BuildingPreset::Minimal;
    std::vector<Flat> flats;

    bool contains(const IndexSet& closure) const {
        for (const auto& f : flats)
            if (f.closure == closure) return true;
        return false;
    }
};

namespace detail {

inline void sort_blowup_order(const WeightedArrangement& a, std::vector<Flat>& flats) {
    std::sort(flats.begin(), flats.end(), [&](const Flat& x, const Flat& y) {
        if (x.dim(a) != y.dim(a)) return x.dim(a) < y.dim(a);
        return x.closure < y.closure;
    });
}

inline std::string closure_label(const WeightedArrangement& a, const IndexSet& closure) {
    if (closure.empty()) return "ambient";
    std::string s;
    for (auto i : closure) {
        if (!s.empty()) s += ",";
        s += a.hyperplanes[i].label.empty() ? "H" + std::to_string(i + 1) : a.hyperplanes[i].label;
    }
    return s;
}

}  // namespace detail

inline BuildingSet minimal_building_set(const WeightedArrangement& a) {
    BuildingSet b;
    b.preset = BuildingPreset::Minimal;
    b.flats = dense_flats(a);
    detail::sort_blowup_order(a, b.flats);
    return b;
}

inline BuildingSet all_edges_building_set(const WeightedArrangement& a) {
    auto poset = intersection_poset(a);
    annotate_density(a, poset);
    BuildingSet b;
    b.preset = BuildingPreset::AllEdges;
    for (const auto& f : poset.flats)
        if (f.codim >= 2) b.flats.push_back(f);
    detail::sort_blowup_order(a, b.flats);
    return b;
}

inline BuildingSet building_set(const WeightedArrangement& a, BuildingPreset preset) {
    if (preset == BuildingPreset::AllEdges) return all_edges_building_set(a);
    return minimal_building_set(a);
}

/// A custom building set given by closures. It must contain every dense flat
/// and, for each member, the irreducible factors of its localization.
inline BuildingSet custom_building_set(const WeightedArrangement& a, const std::vector<IndexSet>& closures) {
    auto poset = intersection_poset(a);
    annotate_density(a, poset);
    BuildingSet b;
    b.preset = BuildingPreset::Custom;
    for (const auto& c : closures) {
        auto i = poset.find(c);
        if (!i || poset.flats[*i].codim < 2)
            throw Error(ErrorCode::MalformedInput, "building set member is not an edge of codimension >= 2");
        if (!b.contains(c)) b.flats.push_back(poset.flats[*i]);
    }
    for (const auto& f : poset.flats)
        if (f.dense && !b.contains(f.closure))
            throw Error(ErrorCode::MalformedInput, "building set misses the dense edge " + detail::closure_label(a, f.closure));
    for (const auto& f : b.flats) {
        auto local = localize(a, f);
        for (const auto& block : irreducible_decomposition(local)) {
            IndexSet members;
            for (auto j : block) members.push_back(f.closure[j]);
            auto sub = detail::solve_subspace(a, members);
            IndexSet closure;
            for (std::size_t h = 0; h < a.size(); ++h)
                if (detail::contains_subspace(a.hyperplanes[h], sub->first, sub->second)) closure.push_back(h);
            if (closure.size() >= 2 && a.vector_dimension() - sub->second.size() >= 2 && !b.contains(closure))
                throw Error(ErrorCode::MalformedInput,
                            "building set is not closed under factors: missing " + detail::closure_label(a, closure));
        }
    }
    detail::sort_blowup_order(a, b.flats);
    return b;
}

struct DivisorComponent {
    enum class Kind { ProperTransform, Exceptional };
    Kind kind = Kind::ProperTransform;
    IndexSet flat;  // the hyperplane itself for proper transforms
    std::string label;
    Rational weight;
    bool monodromy_trivial = false;
    bool kept_in_Dtilde = true;
};

/// Components of the total transform of the arrangement divisor. A component
/// belongs to D~ exactly when the pulled back system has nontrivial monodromy
/// around it.
inline std::vector<DivisorComponent> divisor_components(const WeightedArrangement& a, const BuildingSet& b) {
    std::vector<DivisorComponent> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        DivisorComponent d;
        d.flat = {i};
        d.label = detail::closure_label(a, {i});
        d.weight = a.hyperplanes[i].weight;
        d.monodromy_trivial = is_integer(d.weight);
        d.kept_in_Dtilde = !d.monodromy_trivial;
        out.push_back(std::move(d));
    }
    for (const auto& f : b.flats) {
        DivisorComponent d;
        d.kind = DivisorComponent::Kind::Exceptional;
        d.flat = f.closure;
        d.label = detail::closure_label(a, f.closure);
        d.weight = weight_sum(a, f);
        d.monodromy_trivial = is_integer(d.weight);
        d.kept_in_Dtilde = !d.monodromy_trivial;
        out.push_back(std::move(d));
    }
    return out;
}

struct OpenModel;

/// A kept exceptional stratum: the open part of its center (inside the
/// projectivized normal space for fibers, inside the ambient space for the
/// global model) times the fiber over a generic point of the center.
struct ChildStratum {
    IndexSet center;
    std::string label;
    Rational weight_sum;
    WeightedArrangement factor;  // complement of this arrangement is the open part of the center
    std::shared_ptr<const OpenModel> fiber;

    std::size_t complex_dimension() const;
};

/// Stratified model of either a fiber U~_x over a generic point of an edge, or
/// of the global open set U~. The base stratum is the complement of `base`.
struct OpenModel {
    bool global = false;
    IndexSet edge;
    std::string label;
    std::size_t codim = 0;
    Rational weight_sum;
    bool empty = false;
    std::size_t dimension = 0;  // complex dimension
    WeightedArrangement base;
    std::vector<ChildStratum> children;  // ordered as blown up
    IndexSet removed_hyperplanes;        // proper transforms meeting the model
    std::vector<IndexSet> removed_exceptionals;
    bool complete = true;  // false when two kept strata would meet transversally
    std::vector<std::string> notes;
};

inline std::size_t ChildStratum::complex_dimension() const { return factor.dimension + fiber->dimension; }

namespace detail {

/// Coordinates of `functionals` (restricted to the span of `directions`) in a
/// basis of their row space, with proportional rows merged and weights summed.
/// Rows that vanish identically are dropped.
inline std::pair<std::vector<Hyperplane>, std::size_t> restrict_linear(const std::vector<const Hyperplane*>& hs,
                                                                       const RMatrix& directions) {
    RMatrix rows;
    for (const auto* h : hs) {
        RVector r;
        for (const auto& d : directions) r.push_back(linalg::dot(h->coeffs, d));
        rows.push_back(std::move(r));
    }
    auto ech = linalg::rref(rows, directions.size());
    RMatrix basis(ech.rows.begin(), ech.rows.begin() + static_cast<std::ptrdiff_t>(ech.pivots.size()));
    std::vector<Hyperplane> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        bool zero = std::all_of(rows[i].begin(), rows[i].end(), [](const Rational& x) { return x == 0; });
        if (zero) continue;
        Hyperplane h;
        h.coeffs = *linalg::coordinates(basis, rows[i]);
        h.weight = hs[i]->weight;
        h.label = hs[i]->label;
        bool merged = false;
        for (auto& g : out) {
            if (linalg::proportional(g.coeffs, h.coeffs)) {
                g.weight += h.weight;
                g.label += "+" + h.label;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(h));
    }
    return {std::move(out), basis.size()};
}

inline WeightedArrangement projective_piece(const std::vector<const Hyperplane*>& hs, const RMatrix& directions) {
    auto [hyperplanes, rank] = restrict_linear(hs, directions);
    WeightedArrangement w;
    w.space = Space::Projective;
    w.dimension = rank == 0 ? 0 : rank - 1;
    if (w.dimension > 0) w.hyperplanes = std::move(hyperplanes);
    return w;
}

/// Restriction of an affine arrangement to the affine subspace point + span(directions).
inline WeightedArrangement affine_piece(const std::vector<const Hyperplane*>& hs, const RVector& point,
                                        const RMatrix& directions) {
    WeightedArrangement w;
    w.space = Space::Affine;
    w.dimension = directions.size();
    if (w.dimension == 0) return w;
    for (const auto* h : hs) {
        Hyperplane r;
        for (const auto& d : directions) r.coeffs.push_back(linalg::dot(h->coeffs, d));
        if (std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const Rational& x) { return x == 0; })) continue;
        r.offset = evaluate(*h, point);
        r.weight = h->weight;
        r.label = h->label;
        bool merged = false;
        for (auto& g : w.hyperplanes) {
            if (linalg::proportional(equation_row(g), equation_row(r))) {
                g.weight += r.weight;
                g.label += "+" + r.label;
                merged = true;
                break;
            }
        }
        if (!merged) w.hyperplanes.push_back(std::move(r));
    }
    return w;
}

}  // namespace detail

/// Builds fiber and global models for one arrangement and building set.
/// Fiber models are memoized by edge.
class ResolutionContext {
public:
    ResolutionContext(WeightedArrangement a, BuildingSet b) : a_(std::move(a)), b_(std::move(b)) {
        poset_ = intersection_poset(a_);
        annotate_density(a_, poset_);
    }

    const WeightedArrangement& arrangement() const { return a_; }
    const BuildingSet& building() const { return b_; }
    const IntersectionPoset& poset() const { return poset_; }

    const Flat& flat(const IndexSet& closure) const {
        auto i = poset_.find(closure);
        if (!i) throw Error(ErrorCode::FlatNotInArrangement, "no edge with closure " + detail::closure_label(a_, closure));
        return poset_.flats[*i];
    }

    std::shared_ptr<const OpenModel> fiber(const IndexSet& closure) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = fibers_.find(closure);
            if (it != fibers_.end()) return it->second;
        }
        auto m = std::make_shared<const OpenModel>(build_fiber(flat(closure)));
        std::lock_guard<std::mutex> lock(mutex_);
        return fibers_.emplace(closure, std::move(m)).first->second;
    }

    OpenModel global() {
        OpenModel m;
        m.global = true;
        m.label = "global";
        m.dimension = a_.dimension;
        m.weight_sum = a_.total_weight();
        m.base = a_;
        for (std::size_t i = 0; i < a_.size(); ++i) m.removed_hyperplanes.push_back(i);
        std::vector<const Flat*> kept;
        for (const auto& e : b_.flats) {
            if (!is_integer(weight_sum(a_, e))) {
                m.removed_exceptionals.push_back(e.closure);
                continue;
            }
            std::vector<const Hyperplane*> outside;
            for (std::size_t h = 0; h < a_.size(); ++h)
                if (!std::binary_search(e.closure.begin(), e.closure.end(), h)) outside.push_back(&a_.hyperplanes[h]);
            ChildStratum c;
            c.center = e.closure;
            c.label = detail::closure_label(a_, e.closure);
            c.weight_sum = weight_sum(a_, e);
            c.factor = a_.space == Space::Affine ? detail::affine_piece(outside, e.point, e.directions)
                                                 : detail::projective_piece(outside, e.directions);
            c.fiber = fiber(e.closure);
            m.children.push_back(std::move(c));
            kept.push_back(&e);
        }
        check_overlaps(m, kept, nullptr);
        return m;
    }

private:
    OpenModel build_fiber(const Flat& f) {
        if (f.codim < 2 || (!f.dense && !b_.contains(f.closure)))
            throw Error(ErrorCode::FlatNotDenseNorInB,
                        "edge " + detail::closure_label(a_, f.closure) + " is neither dense nor in the building set");
        OpenModel m;
        m.edge = f.closure;
        m.label = detail::closure_label(a_, f.closure);
        m.codim = f.codim;
        m.weight_sum = weight_sum(a_, f);
        m.dimension = f.codim - 1;
        m.removed_hyperplanes = f.closure;
        if (!is_integer(m.weight_sum)) {
            m.empty = true;
            return m;
        }
        std::vector<const Hyperplane*> local;
        for (auto i : f.closure) local.push_back(&a_.hyperplanes[i]);
        // Row space of the local functionals is the dual of the normal space.
        RMatrix identity(a_.vector_dimension(), RVector(a_.vector_dimension(), Rational(0)));
        for (std::size_t i = 0; i < identity.size(); ++i) identity[i][i] = 1;
        m.base = detail::projective_piece(local, identity);

        std::vector<const Flat*> kept;
        for (const auto& e : b_.flats) {
            if (e.closure == f.closure || e.is_ambient() || !detail::is_subset(e.closure, f.closure)) continue;
            if (!is_integer(weight_sum(a_, e))) {
                m.removed_exceptionals.push_back(e.closure);
                continue;
            }
            std::vector<const Hyperplane*> between;
            for (auto i : f.closure)
                if (!std::binary_search(e.closure.begin(), e.closure.end(), i)) between.push_back(&a_.hyperplanes[i]);
            ChildStratum c;
            c.center = e.closure;
            c.label = detail::closure_label(a_, e.closure);
            c.weight_sum = weight_sum(a_, e);
            c.factor = detail::projective_piece(between, e.directions);
            c.fiber = fiber(e.closure);
            m.children.push_back(std::move(c));
            kept.push_back(&e);
        }
        check_overlaps(m, kept, &f);
        return m;
    }

    /// Kept strata over incomparable centers meeting transversally would
    /// intersect inside the model; the stratification then misses their
    /// intersection, so such models are flagged incomplete.
    void check_overlaps(OpenModel& m, const std::vector<const Flat*>& kept, const Flat* over) {
        for (std::size_t i = 0; i < kept.size(); ++i) {
            for (std::size_t j = i + 1; j < kept.size(); ++j) {
                const auto& x = kept[i]->closure;
                const auto& y = kept[j]->closure;
                if (detail::is_subset(x, y) || detail::is_subset(y, x)) continue;
                IndexSet u;
                std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
                auto sub = detail::solve_subspace(a_, u);
                if (!sub) continue;
                const std::size_t codim = a_.vector_dimension() - sub->second.size();
                if (over && codim >= over->codim) continue;  // meet only at the base edge
                if (codim == kept[i]->codim + kept[j]->codim) {
                    m.complete = false;
                    m.notes.push_back("strata over " + detail::closure_label(a_, x) + " and " +
                                      detail::closure_label(a_, y) + " meet transversally");
                }
            }
        }
    }

    WeightedArrangement a_;
    BuildingSet b_;
    IntersectionPoset poset_;
    std::mutex mutex_;
    std::map<IndexSet, std::shared_ptr<const OpenModel>> fibers_;
};

inline OpenModel fiber_model(const WeightedArrangement& a, const BuildingSet& b, const IndexSet& closure) {
    ResolutionContext ctx(a, b);
    return *ctx.fiber(closure);
}

inline OpenModel global_open_model(const WeightedArrangement& a, const BuildingSet& b) {
    ResolutionContext ctx(a, b);
    return ctx.global();
}

/// Twisted Betti numbers of the complement of a stratum arrangement, padded to
/// length 2 * dimension + 1.
inline BettiVector stratum_betti(const WeightedArrangement& s, Side side, TwistedEngine& engine) {
    BettiVector out;
    out.dims.assign(2 * s.dimension + 1, 0);
    if (s.dimension == 0) {
        out.dims[0] = 1;
        return out;
    }
    std::vector<long long> dims;
    if (s.space == Space::Projective) {
        dims = engine.betti(s, side).dims;
    } else if (s.size() == 0) {
        dims = {1};
    } else {
        dims = engine.betti_affine(s, side).dims;
    }
    std::copy(dims.begin(), dims.end(), out.dims.begin());
    return out;
}

inline BettiVector stratum_betti(const WeightedArrangement& s, Side side, Backend backend = Backend::Both) {
    TwistedEngine engine(backend);
    return stratum_betti(s, side, engine);
}

inline long long complement_euler(const WeightedArrangement& s) {
    if (s.dimension == 0) return 1;
    return euler_characteristic(s).chi;
}

/// Euler characteristic of a model summed over its strata.
inline long long stratified_euler(const OpenModel& m) {
    if (m.empty) return 0;
    long long chi = complement_euler(m.base);
    for (const auto& c : m.children) chi += complement_euler(c.factor) * stratified_euler(*c.fiber);
    return chi;
}

/// Set of Betti vectors compatible with everything known so far. Falls back to
/// a box of per-degree intervals once the set grows too large.
class BettiRange {
public:
    static constexpr std::size_t kCap = 4096;

    static BettiRange exact(std::vector<long long> v) {
        BettiRange r;
        r.length_ = v.size();
        r.points_.insert(std::move(v));
        return r;
    }

    std::size_t length() const { return length_; }
    bool boxed() const { return boxed_; }
    const std::set<std::vector<long long>>& points() const { return points_; }

    std::vector<long long> lower() const {
        if (boxed_) return lo_;
        std::vector<long long> out(length_, std::numeric_limits<long long>::max());
        for (const auto& p : points_)
            for (std::size_t i = 0; i < length_; ++i) out[i] = std::min(out[i], p[i]);
        return out;
    }
    std::vector<long long> upper() const {
        if (boxed_) return hi_;
        std::vector<long long> out(length_, 0);
        for (const auto& p : points_)
            for (std::size_t i = 0; i < length_; ++i) out[i] = std::max(out[i], p[i]);
        return out;
    }
    bool empty() const { return boxed_ ? false : points_.empty(); }

    BettiRange padded(std::size_t length) const {
        BettiRange r;
        r.length_ = length;
        r.boxed_ = boxed_;
        if (boxed_) {
            r.lo_ = lo_;
            r.hi_ = hi_;
            r.lo_.resize(length, 0);
            r.hi_.resize(length, 0);
        }
        for (auto p : points_) {
            p.resize(length, 0);
            r.points_.insert(std::move(p));
        }
        return r;
    }

    /// Kunneth product: Betti vectors convolve.
    friend BettiRange kunneth(const BettiRange& x, const BettiRange& y) {
        const std::size_t len = x.length_ + y.length_ - 1;
        auto conv = [&](const std::vector<long long>& p, const std::vector<long long>& q) {
            std::vector<long long> out(len, 0);
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
            return out;
        };
        BettiRange r;
        r.length_ = len;
        if (!x.boxed_ && !y.boxed_ && x.points_.size() * y.points_.size() <= kCap) {
            for (const auto& p : x.points_)
                for (const auto& q : y.points_) r.points_.insert(conv(p, q));
            return r;
        }
        r.boxed_ = true;
        r.lo_ = conv(x.lower(), y.lower());
        r.hi_ = conv(x.upper(), y.upper());
        return r;
    }

    /// Disjoint union: Betti vectors add.
    friend BettiRange disjoint_sum(const BettiRange& x, const BettiRange& y) {
        BettiRange r;
        r.length_ = std::max(x.length_, y.length_);
        auto px = x.padded(r.length_), py = y.padded(r.length_);
        auto add = [&](const std::vector<long long>& p, const std::vector<long long>& q) {
            std::vector<long long> out(r.length_);
            for (std::size_t i = 0; i < r.length_; ++i) out[i] = p[i] + q[i];
            return out;
        };
        if (!x.boxed_ && !y.boxed_ && x.points_.size() * y.points_.size() <= kCap) {
            for (const auto& p : px.points_)
                for (const auto& q : py.points_) r.points_.insert(add(p, q));
            return r;
        }
        r.boxed_ = true;
        r.lo_ = add(px.lower(), py.lower());
        r.hi_ = add(px.upper(), py.upper());
        return r;
    }

    /// Cohomology of M from the Gysin sequence of a smooth closed divisor Z in M
    /// with complement W:
    ///   ... -> H^{l-2}(Z) -> H^l(M) -> H^l(W) -> H^{l-1}(Z) -> ...
    /// so m_l = z_{l-2} - r_{l-1} + w_l - r_l, with r_l the rank of the residue
    /// H^l(W) -> H^{l-1}(Z), unknown in [0, min(w_l, z_{l-1})].
    friend BettiRange gysin(const BettiRange& w, const BettiRange& z_in) {
        const std::size_t len = w.length_;
        const BettiRange z = z_in.padded(len);
        BettiRange r;
        r.length_ = len;
        if (!w.boxed_ && !z.boxed_) {
            bool overflow = false;
            for (const auto& wp : w.points_) {
                for (const auto& zp : z.points_) {
                    std::vector<long long> rk(len, 0), bound(len, 0);
                    for (std::size_t l = 1; l < len; ++l) bound[l] = std::min(wp[l], zp[l - 1]);
                    while (!overflow) {
                        std::vector<long long> m(len);
                        for (std::size_t l = 0; l < len; ++l)
                            m[l] = (l >= 2 ? zp[l - 2] : 0) - (l >= 1 ? rk[l - 1] : 0) + wp[l] - rk[l];
                        r.points_.insert(std::move(m));
                        if (r.points_.size() > kCap) overflow = true;
                        std::size_t l = 0;
                        while (l < len && rk[l] == bound[l]) rk[l++] = 0;
                        if (l == len) break;
                        ++rk[l];
                    }
                }
            }
            if (!overflow) return r;
            r.points_.clear();
        }
        r.boxed_ = true;
        auto wl = w.lower(), wh = w.upper(), zl = z.lower(), zh = z.upper();
        r.lo_.assign(len, 0);
        r.hi_.assign(len, 0);
        for (std::size_t l = 0; l < len; ++l) {
            long long from_z_lo = l >= 2 ? std::max(0LL, zl[l - 2] - (l >= 1 ? wh[l - 1] : 0)) : 0;
            long long from_w_lo = std::max(0LL, wl[l] - (l >= 1 ? zh[l - 1] : 0));
            r.lo_[l] = from_z_lo + from_w_lo;
            r.hi_[l] = (l >= 2 ? zh[l - 2] : 0) + wh[l];
        }
        return r;
    }

    template <class Pred>
    BettiRange filtered(Pred keep) const {
        BettiRange r = *this;
        if (boxed_) return r;
        r.points_.clear();
        for (const auto& p : points_)
            if (keep(p)) r.points_.insert(p);
        return r;
    }

    /// Intersect a box with the Euler characteristic constraint.
    void tighten_box(long long chi) {
        if (!boxed_) return;
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t l = 0; l < length_; ++l) {
                long long rest_lo = 0, rest_hi = 0;  // range of sum_{j != l} (-1)^j b_j
                for (std::size_t j = 0; j < length_; ++j) {
                    if (j == l) continue;
                    if (j % 2 == 0) {
                        rest_lo += lo_[j];
                        rest_hi += hi_[j];
                    } else {
                        rest_lo -= hi_[j];
                        rest_hi -= lo_[j];
                    }
                }
                // (-1)^l b_l = chi - rest
                long long a = chi - rest_hi, b = chi - rest_lo;
                long long lo = l % 2 == 0 ? a : -b, hi = l % 2 == 0 ? b : -a;
                if (lo > lo_[l]) lo_[l] = lo, changed = true;
                if (hi < hi_[l]) hi_[l] = hi, changed = true;
                if (lo_[l] > hi_[l]) throw Error(ErrorCode::InconsistentBounds, "interval bounds cross");
            }
        }
    }

    /// Box-mode intersection with b_l = b_{len-1-l}.
    void symmetrize_box() {
        if (!boxed_) return;
        for (std::size_t l = 0; l < length_; ++l) {
            std::size_t m = length_ - 1 - l;
            lo_[l] = std::max(lo_[l], lo_[m]);
            hi_[l] = std::min(hi_[l], hi_[m]);
            if (lo_[l] > hi_[l]) throw Error(ErrorCode::InconsistentBounds, "interval bounds cross");
        }
    }
    void zero_above_box(std::size_t degree) {
        if (!boxed_) return;
        for (std::size_t l = degree + 1; l < length_; ++l) {
            if (lo_[l] > 0) throw Error(ErrorCode::InconsistentBounds, "vanishing contradicts lower bound");
            hi_[l] = 0;
        }
    }

private:
    std::size_t length_ = 0;
    bool boxed_ = false;
    std::set<std::vector<long long>> points_;
    std::vector<long long> lo_, hi_;
};

struct DegreeBound {
    long long lower = 0;
    long long upper = 0;  // kUnbounded when nothing is known
    bool exact = false;
    std::string provenance;
};

inline constexpr long long kUnbounded = std::numeric_limits<long long>::max();

struct BettiIntervalVector {
    std::vector<DegreeBound> degrees;
    long long euler = 0;  // stratified Euler characteristic

    bool all_exact() const {
        return std::all_of(degrees.begin(), degrees.end(), [](const DegreeBound& d) { return d.exact; });
    }
    std::vector<long long> values() const {
        std::vector<long long> out;
        for (const auto& d : degrees) out.push_back(d.lower);
        return out;
    }
};

inline nlohmann::json to_json(const BettiIntervalVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t l = 0; l < v.degrees.size(); ++l) {
        const auto& d = v.degrees[l];
        nlohmann::json e{{"degree", l}, {"lower", d.lower}, {"exact", d.exact}, {"provenance", d.provenance}};
        e["upper"] = d.upper == kUnbounded ? nlohmann::json(nullptr) : nlohmann::json(d.upper);
        out.push_back(std::move(e));
    }
    return out;
}

/// Recursive evaluation of models into Betti ranges, memoized per (edge, side).
/// Use one assembler per building set.
class Assembler {
public:
    explicit Assembler(Backend backend = Backend::Both) : engine_(backend) {}

    TwistedEngine& engine() { return engine_; }

    BettiRange range(const OpenModel& m, Side side) {
        const std::size_t len = 2 * m.dimension + 1;
        if (m.empty) return BettiRange::exact(std::vector<long long>(len, 0));
        std::pair<IndexSet, int> key{m.edge, static_cast<int>(side)};
        if (!m.global) {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        BettiRange current = BettiRange::exact(stratum_betti(m.base, side, engine_).dims);
        // Strata were removed smallest center first, so they are added back in reverse.
        std::map<std::size_t, BettiRange, std::greater<>> groups;  // by dimension of the center
        for (const auto& c : m.children) {
            auto piece = kunneth(BettiRange::exact(stratum_betti(c.factor, side, engine_).dims), range(*c.fiber, side));
            const std::size_t d = c.factor.dimension;
            auto it = groups.find(d);
            if (it == groups.end())
                groups.emplace(d, piece);
            else
                it->second = disjoint_sum(it->second, piece);
        }
        for (const auto& [_, z] : groups) current = gysin(current, z);
        const long long chi = stratified_euler(m);
        current = current.filtered([chi](const std::vector<long long>& v) {
            long long s = 0;
            for (std::size_t l = 0; l < v.size(); ++l) s += l % 2 ? -v[l] : v[l];
            return s == chi;
        });
        current.tighten_box(chi);
        if (current.empty()) throw Error(ErrorCode::InconsistentBounds, "no Betti vector is compatible with the model");
        if (!m.global) {
            std::lock_guard<std::mutex> lock(mutex_);
            memo_.emplace(key, current);
        }
        return current;
    }

private:
    TwistedEngine engine_;
    std::mutex mutex_;
    std::map<std::pair<IndexSet, int>, BettiRange> memo_;
};

inline BettiIntervalVector to_intervals(const BettiRange& r, const OpenModel& m) {
    BettiIntervalVector out;
    out.euler = stratified_euler(m);
    auto lo = r.lower(), hi = r.upper();
    std::string how;
    if (m.empty)
        how = "empty fiber";
    else if (m.children.empty())
        how = "base stratum, twisted complex";
    else
        how = "Gysin sequences over " + std::to_string(m.children.size()) + " kept strata" +
              (r.boxed() ? ", interval propagation with Euler characteristic" : ", enumerated residue ranks");
    for (std::size_t l = 0; l < r.length(); ++l) {
        DegreeBound d;
        d.lower = lo[l];
        d.upper = hi[l];
        d.exact = lo[l] == hi[l];
        d.provenance = how;
        if (!m.complete) {
            d.lower = 0;
            d.upper = kUnbounded;
            d.exact = false;
            d.provenance = "stratification incomplete: " + m.notes.front();
        }
        if (d.lower > d.upper) throw Error(ErrorCode::InconsistentBounds, "lower bound exceeds upper bound");
        out.degrees.push_back(std::move(d));
    }
    return out;
}

inline BettiIntervalVector assemble_intervals(const OpenModel& m, Side side, Assembler& assembler) {
    return to_intervals(assembler.range(m, side), m);
}

inline BettiIntervalVector assemble_intervals(const OpenModel& m, Side side, Backend backend = Backend::Both) {
    Assembler assembler(backend);
    return assemble_intervals(m, side, assembler);
}

inline nlohmann::json model_to_json(const WeightedArrangement& a, const OpenModel& m, Side side, Assembler& assembler) {
    nlohmann::json j;
    j["kind"] = m.global ? "global" : "fiber";
    if (!m.global) {
        j["edge"] = m.label;
        j["codim"] = m.codim;
    }
    j["weight_sum"] = format_rational(m.weight_sum);
    j["empty"] = m.empty;
    j["dimension"] = m.dimension;
    j["complete"] = m.complete;
    nlohmann::json removed = nlohmann::json::array();
    for (auto h : m.removed_hyperplanes) removed.push_back(detail::closure_label(a, {h}));
    j["removed_proper_transforms"] = removed;
    nlohmann::json rex = nlohmann::json::array();
    for (const auto& e : m.removed_exceptionals) rex.push_back(detail::closure_label(a, e));
    j["removed_exceptionals"] = rex;
    if (!m.empty) {
        j["base"] = {{"arrangement", to_json(m.base)},
                     {"betti", stratum_betti(m.base, side, assembler.engine()).dims}};
        nlohmann::json kids = nlohmann::json::array();
        for (const auto& c : m.children) {
            kids.push_back({{"center", c.label},
                            {"weight_sum", format_rational(c.weight_sum)},
                            {"factor", to_json(c.factor)},
                            {"factor_betti", stratum_betti(c.factor, side, assembler.engine()).dims},
                            {"fiber", model_to_json(a, *c.fiber, side, assembler)}});
        }
        j["strata"] = kids;
    }
    j["notes"] = m.notes;
    j["intervals"] = to_json(assemble_intervals(m, side, assembler));
    return j;
}

}  // namespace hypic
