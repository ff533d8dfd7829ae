#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsc/error.hpp"
#include "qsc/rational.hpp"
#include "qsc/surface.hpp"

namespace qsc {

// A point where the curve meets the 1-skeleton. Interior points live on a
// gluing and expose two copies (:a and :b, one per glued side); boundary
// points live on a free side and are arc endpoints.
struct EdgePoint {
    std::string id;
    bool interior = true;
    std::string gluing_id; // when interior
    SideRef side;          // when boundary
    Rational rank;         // along side `a` of the gluing / along the free side

    bool operator==(const EdgePoint&) const = default;
};

struct PointCopy {
    std::string point_id;
    char copy = 'a';

    bool operator==(const PointCopy&) const = default;
    auto operator<=>(const PointCopy&) const = default;
};

// Which side of the from->to direction the trivializing normal lies on, in
// the face's reference orientation.
enum class Coor { left, right };

struct Chord {
    std::string id;
    PointCopy from;
    PointCopy to;
    std::string face_id;
    Coor coor = Coor::left;

    bool operator==(const Chord&) const = default;
};

// Embedded null-homotopic component drawn inside one face; carried through
// every operation, contributes zero to every invariant.
struct Circle {
    std::string face_id;
    int sign = 1;

    bool operator==(const Circle&) const = default;
};

struct Multicurve {
    SurfaceComplex complex;
    std::vector<EdgePoint> points;
    std::vector<Chord> chords;
    std::vector<Circle> circles;
    bool relative = false;

    bool operator==(const Multicurve&) const = default;
};

struct ComponentInfo {
    bool closed = true;
    int edge_points = 0;

    bool operator==(const ComponentInfo&) const = default;
};

struct CurveSummary {
    int component_count = 0;
    int closed_components = 0;
    int arc_components = 0;
    int circle_components = 0;
    std::vector<ComponentInfo> components;

    bool operator==(const CurveSummary&) const = default;
};

struct Crossing {
    std::string face_id;
    std::string chord_a;
    std::string chord_b;

    bool operator==(const Crossing&) const = default;
    auto operator<=>(const Crossing&) const = default;
};

struct CrossingReport {
    std::vector<Crossing> crossings;
    std::map<std::string, int> per_component_count; // keyed by ambient component
    std::map<std::string, int> rho_mod2;
    std::map<std::string, std::int64_t> rho_signed_experimental;
};

// Position of a point copy along its side's own parameterization.
struct EndPosition {
    std::size_t face = 0;
    int side = 0;
    Rational pos;

    auto operator<=>(const EndPosition&) const = default;
    bool operator==(const EndPosition&) const = default;
};

// ---------------------------------------------------------------------------

class CurveAnalysis {
  public:
    explicit CurveAnalysis(const Multicurve& m) : topo_(m.complex), curve_(m) { build(); }

    const Topology& topology() const { return topo_; }
    const Multicurve& curve() const { return curve_; }
    const CurveSummary& summary() const { return summary_; }

    const EdgePoint& point(const std::string& id) const {
        auto it = point_index_.find(id);
        if (it == point_index_.end())
            throw Error(ErrorCode::degree_violation, "unknown point '" + id + "'");
        return curve_.points[it->second];
    }

    EndPosition end_position(const PointCopy& pc) const {
        const EdgePoint& p = point(pc.point_id);
        if (!p.interior) {
            if (pc.copy != 'a')
                throw Error(ErrorCode::degree_violation,
                            "boundary point '" + p.id + "' has a single copy");
            std::size_t f = topo_.face_index(p.side.face_id);
            return {f, p.side.side_index, p.rank};
        }
        const Gluing& g = curve_.complex.gluings[topo_.gluing_index(p.gluing_id)];
        const SideRef& sr = pc.copy == 'a' ? g.a : g.b;
        Rational pos = p.rank;
        if (pc.copy == 'b' && Topology::b_side_reverses(g.alignment)) pos = Rational(1) - pos;
        return {topo_.face_index(sr.face_id), sr.side_index, pos};
    }

    // chords grouped per face, in input order
    const std::map<std::size_t, std::vector<std::size_t>>& chords_by_face() const {
        return chords_by_face_;
    }

    // normal-on-left direction of a chord in its face's reference orientation:
    // returns (tail, head) end positions
    std::pair<EndPosition, EndPosition> canonical_direction(const Chord& c) const {
        EndPosition pf = end_position(c.from);
        EndPosition pt = end_position(c.to);
        if (c.coor == Coor::left) return {pf, pt};
        return {pt, pf};
    }

    static bool interleaved(const EndPosition& p1, const EndPosition& p2, const EndPosition& q1,
                            const EndPosition& q2) {
        const EndPosition& lo = p1 < p2 ? p1 : p2;
        const EndPosition& hi = p1 < p2 ? p2 : p1;
        auto inside = [&](const EndPosition& q) { return lo < q && q < hi; };
        return inside(q1) != inside(q2);
    }

  private:
    void build() {
        for (std::size_t i = 0; i < curve_.points.size(); ++i) {
            const EdgePoint& p = curve_.points[i];
            if (!point_index_.emplace(p.id, i).second)
                throw Error(ErrorCode::duplicate_id, "point id '" + p.id + "'");
            if (!(Rational(0) < p.rank && p.rank < Rational(1)))
                throw Error(ErrorCode::degree_violation,
                            "point '" + p.id + "' has rank outside (0,1)");
            if (p.interior) {
                topo_.gluing_index(p.gluing_id); // existence
            } else {
                std::size_t f = topo_.face_index(p.side.face_id);
                if (p.side.side_index < 0 || p.side.side_index >= topo_.side_count(f))
                    throw Error(ErrorCode::dangling_side_ref,
                                "point '" + p.id + "' references side " +
                                    std::to_string(p.side.side_index));
                if (!topo_.side_is_free(f, p.side.side_index))
                    throw Error(ErrorCode::side_not_free,
                                "boundary point '" + p.id + "' sits on a glued side");
                if (!curve_.relative)
                    throw Error(ErrorCode::boundary_point_in_closed_curve, "point '" + p.id + "'");
            }
        }

        // rank collisions per host
        std::map<std::string, std::set<Rational>> host_ranks;
        for (const EdgePoint& p : curve_.points) {
            std::string host = p.interior
                                   ? "g:" + p.gluing_id
                                   : "s:" + p.side.face_id + "." + std::to_string(p.side.side_index);
            if (!host_ranks[host].insert(p.rank).second)
                throw Error(ErrorCode::rank_collision,
                            "two points at rank " + p.rank.str() + " on " + host);
        }

        for (const Circle& c : curve_.circles) {
            topo_.face_index(c.face_id);
            if (c.sign != 1 && c.sign != -1)
                throw Error(ErrorCode::degree_violation, "circle sign must be +1 or -1");
        }

        // chord-end usage
        std::map<std::string, std::size_t> chord_index;
        std::map<std::pair<std::string, char>, std::pair<std::size_t, int>> copy_use;
        for (std::size_t ci = 0; ci < curve_.chords.size(); ++ci) {
            const Chord& c = curve_.chords[ci];
            if (!chord_index.emplace(c.id, ci).second)
                throw Error(ErrorCode::duplicate_id, "chord id '" + c.id + "'");
            std::size_t f = topo_.face_index(c.face_id);
            int end = 0;
            for (const PointCopy* pc : {&c.from, &c.to}) {
                if (pc->copy != 'a' && pc->copy != 'b')
                    throw Error(ErrorCode::degree_violation,
                                "chord '" + c.id + "' uses copy '" + std::string(1, pc->copy) + "'");
                EndPosition ep = end_position(*pc);
                if (ep.face != f)
                    throw Error(ErrorCode::degree_violation,
                                "chord '" + c.id + "' endpoint " + pc->point_id + ":" +
                                    std::string(1, pc->copy) + " is not on face '" + c.face_id + "'");
                auto key = std::make_pair(pc->point_id, pc->copy);
                if (!copy_use.emplace(key, std::make_pair(ci, end)).second)
                    throw Error(ErrorCode::degree_violation,
                                "point copy " + pc->point_id + ":" + std::string(1, pc->copy) +
                                    " used by more than one chord end");
                ++end;
            }
            chords_by_face_[f].push_back(ci);
        }
        for (const EdgePoint& p : curve_.points) {
            if (p.interior) {
                for (char copy : {'a', 'b'})
                    if (!copy_use.count({p.id, copy}))
                        throw Error(ErrorCode::degree_violation,
                                    "point copy " + p.id + ":" + std::string(1, copy) + " unused");
            } else if (!copy_use.count({p.id, 'a'})) {
                throw Error(ErrorCode::degree_violation, "boundary point " + p.id + " unused");
            }
        }

        // traverse components, transporting the coorientation bit
        auto normal_left = [&](const Chord& c, int entry_end) {
            return entry_end == 0 ? c.coor == Coor::left : c.coor == Coor::right;
        };
        std::vector<int> chord_comp(curve_.chords.size(), -1);
        int comp = 0;
        for (std::size_t start = 0; start < curve_.chords.size(); ++start) {
            if (chord_comp[start] >= 0) continue;
            // find an arc start if the component has one: walk backwards
            std::size_t cur = start;
            int entry = 0;
            bool is_arc = false;
            for (;;) {
                const Chord& c = curve_.chords[cur];
                const PointCopy& back = entry == 0 ? c.from : c.to;
                const EdgePoint& p = point(back.point_id);
                if (!p.interior) { is_arc = true; break; }
                char other = back.copy == 'a' ? 'b' : 'a';
                auto [prev, prev_exit] = copy_use.at({back.point_id, other});
                cur = prev;
                entry = 1 - prev_exit;
                if (cur == start && entry == 0) break; // closed loop
            }
            // walk forward from (cur, entry)
            std::size_t head = cur;
            int head_entry = entry;
            std::set<std::string> comp_points;
            bool consistent = true;
            for (;;) {
                const Chord& c = curve_.chords[cur];
                chord_comp[cur] = comp;
                int exit_end = 1 - entry;
                const PointCopy& out = exit_end == 0 ? c.from : c.to;
                const EdgePoint& p = point(out.point_id);
                comp_points.insert(p.id);
                {
                    const PointCopy& in = entry == 0 ? c.from : c.to;
                    comp_points.insert(in.point_id);
                }
                if (!p.interior) break; // arc end
                const Gluing& g = curve_.complex.gluings[topo_.gluing_index(p.gluing_id)];
                char other = out.copy == 'a' ? 'b' : 'a';
                auto [nc, ne] = copy_use.at({out.point_id, other});
                bool nl = normal_left(c, entry);
                if (g.alignment == Alignment::twisted) nl = !nl;
                if (normal_left(curve_.chords[nc], ne) != nl) consistent = false;
                cur = nc;
                entry = ne;
                if (cur == head && entry == head_entry) break;
            }
            if (!consistent)
                throw Error(ErrorCode::one_sided_component,
                            "coorientation transport flips around the component of chord '" +
                                curve_.chords[head].id + "'");
            ComponentInfo info;
            info.closed = !is_arc;
            info.edge_points = static_cast<int>(comp_points.size());
            summary_.components.push_back(info);
            ++comp;
        }
        for (const Circle& c : curve_.circles) {
            (void)c;
            summary_.components.push_back({true, 0});
            ++summary_.circle_components;
        }
        summary_.component_count = static_cast<int>(summary_.components.size());
        for (const ComponentInfo& ci : summary_.components)
            (ci.closed ? summary_.closed_components : summary_.arc_components) += 1;
    }

    Topology topo_;
    Multicurve curve_;
    CurveSummary summary_;
    std::map<std::string, std::size_t> point_index_;
    std::map<std::size_t, std::vector<std::size_t>> chords_by_face_;
};

inline CurveSummary validate_curve(const Multicurve& m) { return CurveAnalysis(m).summary(); }

inline CrossingReport crossing_report_analysed(const CurveAnalysis& a) {
    const Multicurve& m = a.curve();
    const Topology& topo = a.topology();
    CrossingReport out;
    for (int comp = 0; comp < topo.component_count(); ++comp) {
        out.per_component_count[topo.component_key(comp)] = 0;
        out.rho_mod2[topo.component_key(comp)] = 0;
        out.rho_signed_experimental[topo.component_key(comp)] = 0;
    }
    for (const auto& [face, chord_ids] : a.chords_by_face()) {
        const std::string& key = topo.component_key(topo.face_component(face));
        for (std::size_t i = 0; i < chord_ids.size(); ++i)
            for (std::size_t j = i + 1; j < chord_ids.size(); ++j) {
                const Chord& ca = m.chords[chord_ids[i]];
                const Chord& cb = m.chords[chord_ids[j]];
                EndPosition a1 = a.end_position(ca.from);
                EndPosition a2 = a.end_position(ca.to);
                EndPosition b1 = a.end_position(cb.from);
                EndPosition b2 = a.end_position(cb.to);
                if (!CurveAnalysis::interleaved(a1, a2, b1, b2)) continue;
                const Chord& first = ca.id < cb.id ? ca : cb;
                const Chord& second = ca.id < cb.id ? cb : ca;
                out.crossings.push_back({m.complex.faces[face].id, first.id, second.id});
                out.per_component_count[key] += 1;
                // orientation of (t_A, t_B): positive when B's canonical head
                // lies on the left arc of A's canonical direction
                auto [at, ah] = a.canonical_direction(first);
                auto [bt, bh] = a.canonical_direction(second);
                (void)bt;
                // left arc of A = forward cyclic interval (head -> tail)
                auto in_forward = [&](const EndPosition& from, const EndPosition& to,
                                      const EndPosition& q) {
                    if (from < to) return from < q && q < to;
                    return q > from || q < to;
                };
                bool left = in_forward(ah, at, bh);
                out.rho_signed_experimental[key] += left ? 1 : -1;
            }
    }
    std::sort(out.crossings.begin(), out.crossings.end());
    for (auto& [key, count] : out.per_component_count) out.rho_mod2[key] = count % 2;
    return out;
}

inline CrossingReport crossing_report(const Multicurve& m) {
    return crossing_report_analysed(CurveAnalysis(m));
}

// True on an ambient component exactly when the double-point count is odd
// there; true anywhere certifies the curve is not equivalent to an embedding.
inline std::map<std::string, bool> obstruction_nontrivial(const Multicurve& m) {
    CurveAnalysis a(m);
    if (a.summary().arc_components > 0)
        throw Error(ErrorCode::invalid_curve, "obstruction is defined for closed curves");
    CrossingReport r = crossing_report_analysed(a);
    std::map<std::string, bool> out;
    for (const auto& [key, rho] : r.rho_mod2) out[key] = rho == 1;
    return out;
}

} // namespace qsc
