#pragma once

#include <string>
#include <vector>

#include "qsc/multicurve.hpp"
#include "qsc/surface.hpp"

namespace qsc {

// One face passage of a dual path: enters at `entry`, leaves at `exit`.
// Anchors sit exactly at corners (pos 0 or 1), so they never collide with
// curve points and the boundary arc between them is a union of whole sides.
struct Transit {
    std::size_t face = 0;
    EndPosition entry;
    EndPosition exit;
};

namespace detail {

inline const SideRef& via_side(const Gluing& g, char via) { return via == 'a' ? g.a : g.b; }
inline const SideRef& other_side(const Gluing& g, char via) { return via == 'a' ? g.b : g.a; }

} // namespace detail

// Validates step continuity and endpoint kinds, returning the face passages.
inline std::vector<Transit> path_transits(const Topology& topo, const DualPath& p) {
    const SurfaceComplex& c = topo.complex();
    struct Hop {
        std::size_t from_face, to_face;
        EndPosition exit, entry;
    };
    std::vector<Hop> hops;
    for (const PathStep& st : p.steps) {
        std::size_t f = topo.face_index(st.face_id);
        const Gluing& g = c.gluings[topo.gluing_index(st.gluing_id)];
        if (st.via != 'a' && st.via != 'b')
            throw Error(ErrorCode::parse_error, "step via must be a or b");
        const SideRef& out = detail::via_side(g, st.via);
        const SideRef& in = detail::other_side(g, st.via);
        if (topo.face_index(out.face_id) != f)
            throw Error(ErrorCode::dangling_side_ref,
                        "path '" + p.id + "' crosses '" + g.id + "' out of face '" + st.face_id +
                            "', but that side is on '" + out.face_id + "'");
        Hop h;
        h.from_face = f;
        h.to_face = topo.face_index(in.face_id);
        h.exit = {f, out.side_index, Rational(1)};
        bool rev = Topology::b_side_reverses(g.alignment);
        h.entry = {h.to_face, in.side_index, rev ? Rational(0) : Rational(1)};
        hops.push_back(h);
    }
    for (std::size_t i = 0; i + 1 < hops.size(); ++i)
        if (hops[i].to_face != hops[i + 1].from_face)
            throw Error(ErrorCode::dangling_side_ref,
                        "path '" + p.id + "' step " + std::to_string(i + 1) +
                            " does not start where the previous step landed");

    std::vector<Transit> out;
    if (p.kind == PathKind::closed) {
        if (hops.empty())
            throw Error(ErrorCode::parse_error, "closed path '" + p.id + "' needs a step");
        if (hops.back().to_face != hops.front().from_face)
            throw Error(ErrorCode::dangling_side_ref,
                        "closed path '" + p.id + "' does not return to its starting face");
        for (std::size_t i = 0; i < hops.size(); ++i) {
            const Hop& prev = hops[(i + hops.size() - 1) % hops.size()];
            out.push_back({hops[i].from_face, prev.entry, hops[i].exit});
        }
        return out;
    }
    // boundary-to-boundary
    auto free_anchor = [&](const SideRef& sr) {
        std::size_t f = topo.face_index(sr.face_id);
        if (sr.side_index < 0 || sr.side_index >= topo.side_count(f))
            throw Error(ErrorCode::dangling_side_ref,
                        "path '" + p.id + "' endpoint " + sr.face_id + "." +
                            std::to_string(sr.side_index));
        if (!topo.side_is_free(f, sr.side_index))
            throw Error(ErrorCode::side_not_free,
                        "path '" + p.id + "' endpoint " + sr.face_id + "." +
                            std::to_string(sr.side_index) + " is not a boundary side");
        return EndPosition{f, sr.side_index, Rational(1)};
    };
    EndPosition start = free_anchor(p.start);
    EndPosition end = free_anchor(p.end);
    std::size_t first_face = hops.empty() ? end.face : hops.front().from_face;
    if (start.face != first_face)
        throw Error(ErrorCode::dangling_side_ref,
                    "path '" + p.id + "' starts on a side of a different face");
    if (!hops.empty() && end.face != hops.back().to_face)
        throw Error(ErrorCode::dangling_side_ref,
                    "path '" + p.id + "' ends on a side of a different face");
    if (hops.empty() && end.face != start.face)
        throw Error(ErrorCode::dangling_side_ref,
                    "path '" + p.id + "' endpoints lie on different faces but has no steps");
    EndPosition cur = start;
    for (const Hop& h : hops) {
        out.push_back({h.from_face, cur, h.exit});
        cur = h.entry;
    }
    out.push_back({hops.empty() ? start.face : hops.back().to_face, cur, end});
    return out;
}

// Sides wholly contained in the forward boundary arc between the corner
// anchors. Coinciding anchors give the empty arc (the passage hugs a corner).
inline std::vector<int> transit_arc_sides(const Topology& topo, const Transit& t) {
    int k = topo.side_count(t.face);
    int ce = t.entry.pos == Rational(0) ? t.entry.side : (t.entry.side + 1) % k;
    int cx = (t.exit.side + 1) % k;
    std::vector<int> out;
    for (int s = ce; s != cx; s = (s + 1) % k) out.push_back(s);
    return out;
}

// Cellular 1-chain of the path pushed onto the skeleton: each passage walks
// forward along the boundary between its corner anchors.
inline IntVec pushed_cellular_chain(const Topology& topo, const DualPath& p) {
    IntVec chain(topo.edges().size(), 0);
    for (const Transit& t : path_transits(topo, p)) {
        for (int s : transit_arc_sides(topo, t)) {
            int g = topo.gluing_of_side(t.face, s);
            if (g < 0) {
                chain[topo.edge_of_free_side(t.face, s)] += 1;
            } else {
                const Gluing& gl = topo.complex().gluings[g];
                bool is_a = topo.face_index(gl.a.face_id) == t.face && gl.a.side_index == s;
                int coeff = is_a ? 1 : (gl.alignment == Alignment::compatible ? -1 : 1);
                chain[topo.edge_of_gluing(g)] += coeff;
            }
        }
    }
    return chain;
}

inline DualPath reverse_path(const Topology& topo, const DualPath& p) {
    DualPath out;
    out.id = p.id;
    out.kind = p.kind;
    out.start = p.end;
    out.end = p.start;
    for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
        const Gluing& g = topo.complex().gluings[topo.gluing_index(it->gluing_id)];
        char nvia = it->via == 'a' ? 'b' : 'a';
        out.steps.push_back({detail::via_side(g, nvia).face_id, it->gluing_id, nvia});
    }
    return out;
}

} // namespace qsc
