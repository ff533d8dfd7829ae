#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsc/basis.hpp"
#include "qsc/invariants.hpp"
#include "qsc/multicurve.hpp"
#include "qsc/rng.hpp"

namespace qsc {

namespace detail {

inline std::string fresh_id(const std::set<std::string>& used, std::string base) {
    while (used.count(base)) base += "_2";
    return base;
}

} // namespace detail

// Union of two curves on the same complex. Ids from the second curve are
// renamed when they collide; coincident ranks on one host are rejected.
inline Multicurve disjoint_union(const Multicurve& m1, const Multicurve& m2) {
    if (m1.complex != m2.complex)
        throw Error(ErrorCode::complex_mismatch, "curves live on different complexes");
    if (m1.relative != m2.relative)
        throw Error(ErrorCode::complex_mismatch, "one curve is relative, the other closed");
    Multicurve out = m1;
    std::set<std::string> pids, cids;
    for (const EdgePoint& p : m1.points) pids.insert(p.id);
    for (const Chord& c : m1.chords) cids.insert(c.id);
    std::map<std::string, std::string> pmap;
    for (EdgePoint p : m2.points) {
        std::string id = detail::fresh_id(pids, p.id);
        pids.insert(id);
        pmap[p.id] = id;
        p.id = id;
        out.points.push_back(p);
    }
    for (Chord c : m2.chords) {
        c.id = detail::fresh_id(cids, c.id);
        cids.insert(c.id);
        c.from.point_id = pmap.at(c.from.point_id);
        c.to.point_id = pmap.at(c.to.point_id);
        out.chords.push_back(c);
    }
    out.circles.insert(out.circles.end(), m2.circles.begin(), m2.circles.end());
    validate_curve(out); // detects rank collisions between the two curves
    return out;
}

// Canonical renaming: points ordered by host and rank, chords by face and
// endpoints. Makes disjoint_union comparable up to id choices.
inline Multicurve normalize_curve_ids(const Multicurve& m) {
    Multicurve out = m;
    auto host_key = [&](const EdgePoint& p) {
        return p.interior ? "g:" + p.gluing_id
                          : "s:" + p.side.face_id + "." + std::to_string(p.side.side_index);
    };
    std::sort(out.points.begin(), out.points.end(), [&](const EdgePoint& x, const EdgePoint& y) {
        return std::make_pair(host_key(x), x.rank) < std::make_pair(host_key(y), y.rank);
    });
    std::map<std::string, std::string> pmap;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        pmap[out.points[i].id] = "p" + std::to_string(i);
        out.points[i].id = "p" + std::to_string(i);
    }
    for (Chord& c : out.chords) {
        c.from.point_id = pmap.at(c.from.point_id);
        c.to.point_id = pmap.at(c.to.point_id);
    }
    std::sort(out.chords.begin(), out.chords.end(), [](const Chord& x, const Chord& y) {
        auto key = [](const Chord& c) {
            return std::tuple<std::string, std::string, char, std::string, char>(
                c.face_id, c.from.point_id, c.from.copy, c.to.point_id, c.to.copy);
        };
        return key(x) < key(y);
    });
    for (std::size_t i = 0; i < out.chords.size(); ++i) out.chords[i].id = "c" + std::to_string(i);
    std::sort(out.circles.begin(), out.circles.end(), [](const Circle& x, const Circle& y) {
        return std::make_pair(x.face_id, x.sign) < std::make_pair(y.face_id, y.sign);
    });
    return out;
}

// ---------------------------------------------------------------------------
// boundary connected sum
// ---------------------------------------------------------------------------

struct BoundarySumResult {
    SurfaceComplex complex;
    Multicurve curve;
    std::vector<std::string> warnings;
};

// Joins two surfaces-with-curves by a square 1-handle glued along the two
// named free sides. chi adds up minus one; the curves are carried untouched.
inline BoundarySumResult boundary_sum(const SurfaceComplex& c1, const Multicurve& m1,
                                      const SideRef& s1, const SurfaceComplex& c2,
                                      const Multicurve& m2, const SideRef& s2) {
    Topology t1(c1), t2(c2);
    BoundarySumResult out;

    auto check_side = [](const Topology& t, const Multicurve& m, const SideRef& s) {
        std::size_t f = t.face_index(s.face_id);
        if (s.side_index < 0 || s.side_index >= t.side_count(f))
            throw Error(ErrorCode::dangling_side_ref,
                        s.face_id + "." + std::to_string(s.side_index));
        if (!t.side_is_free(f, s.side_index))
            throw Error(ErrorCode::side_not_free,
                        s.face_id + "." + std::to_string(s.side_index) + " is glued");
        for (const EdgePoint& p : m.points)
            if (!p.interior && p.side == s)
                throw Error(ErrorCode::points_on_side,
                            "curve point '" + p.id + "' sits on the joined side");
        int comp = t.boundary_component_of_side(f, s.side_index);
        int sides_on_comp = 0;
        for (auto [ff, ss] : t.free_sides())
            if (t.boundary_component_of_side(ff, ss) == comp) ++sides_on_comp;
        if (sides_on_comp < 2)
            throw Error(ErrorCode::single_side_boundary,
                        "boundary component of " + s.face_id + "." +
                            std::to_string(s.side_index) +
                            " has a single side; subdivide it first");
    };
    check_side(t1, m1, s1);
    check_side(t2, m2, s2);
    if (t1.summary().component_count > 1) out.warnings.push_back("first complex is disconnected");
    if (t2.summary().component_count > 1) out.warnings.push_back("second complex is disconnected");
    if (t1.summary().boundary_component_count > 1)
        out.warnings.push_back("first boundary is disconnected");
    if (t2.summary().boundary_component_count > 1)
        out.warnings.push_back("second boundary is disconnected");

    out.complex = c1;
    std::set<std::string> face_ids, gluing_ids;
    for (const Face& f : c1.faces) face_ids.insert(f.id);
    for (const Gluing& g : c1.gluings) gluing_ids.insert(g.id);
    std::map<std::string, std::string> fmap;
    for (const Face& f : c2.faces) {
        std::string id = detail::fresh_id(face_ids, f.id);
        face_ids.insert(id);
        fmap[f.id] = id;
        out.complex.faces.push_back({id, f.side_count});
    }
    for (Gluing g : c2.gluings) {
        g.id = detail::fresh_id(gluing_ids, g.id);
        gluing_ids.insert(g.id);
        g.a.face_id = fmap.at(g.a.face_id);
        g.b.face_id = fmap.at(g.b.face_id);
        out.complex.gluings.push_back(g);
    }
    std::string handle = detail::fresh_id(face_ids, "handle");
    out.complex.faces.push_back({handle, 4});
    SideRef s2r{fmap.at(s2.face_id), s2.side_index};
    std::string hg1 = detail::fresh_id(gluing_ids, "hjoin1");
    gluing_ids.insert(hg1);
    std::string hg2 = detail::fresh_id(gluing_ids, "hjoin2");
    out.complex.gluings.push_back({hg1, SideRef{handle, 0}, s1, Alignment::compatible});
    out.complex.gluings.push_back({hg2, SideRef{handle, 2}, s2r, Alignment::compatible});

    out.curve.complex = out.complex;
    out.curve.relative = m1.relative || m2.relative;
    out.curve.points = m1.points;
    out.curve.chords = m1.chords;
    out.curve.circles = m1.circles;
    std::set<std::string> pids, cids;
    for (const EdgePoint& p : m1.points) pids.insert(p.id);
    for (const Chord& c : m1.chords) cids.insert(c.id);
    std::map<std::string, std::string> pmap;
    std::map<std::string, std::string> gmap; // original c2 gluing id -> new id
    {
        std::size_t base = c1.gluings.size();
        for (std::size_t i = 0; i < c2.gluings.size(); ++i)
            gmap[c2.gluings[i].id] = out.complex.gluings[base + i].id;
    }
    for (EdgePoint p : m2.points) {
        std::string id = detail::fresh_id(pids, p.id);
        pids.insert(id);
        pmap[p.id] = id;
        p.id = id;
        if (p.interior)
            p.gluing_id = gmap.at(p.gluing_id);
        else
            p.side.face_id = fmap.at(p.side.face_id);
        out.curve.points.push_back(p);
    }
    for (Chord c : m2.chords) {
        c.id = detail::fresh_id(cids, c.id);
        cids.insert(c.id);
        c.from.point_id = pmap.at(c.from.point_id);
        c.to.point_id = pmap.at(c.to.point_id);
        c.face_id = fmap.at(c.face_id);
        out.curve.chords.push_back(c);
    }
    for (Circle c : m2.circles) {
        c.face_id = fmap.at(c.face_id);
        out.curve.circles.push_back(c);
    }
    return out;
}

// Splits a free side and re-ranks the curve points that sat on it. The cut
// lands at 1/2 unless a point sits exactly there.
inline std::pair<SurfaceComplex, Multicurve> subdivide_side(const SurfaceComplex& c,
                                                            const Multicurve& m, const SideRef& s) {
    SurfaceComplex c2 = subdivide_side(c, s);
    Multicurve out = m;
    out.complex = c2;
    Rational cut(1, 2);
    bool taken = false;
    Rational next_above(1);
    for (const EdgePoint& p : m.points)
        if (!p.interior && p.side == s) {
            if (p.rank == cut) taken = true;
            if (p.rank > cut && p.rank < next_above) next_above = p.rank;
        }
    if (taken) cut = (Rational(1, 2) + next_above) / Rational(2);
    for (EdgePoint& p : out.points) {
        if (p.interior) continue;
        if (p.side.face_id != s.face_id) continue;
        if (p.side.side_index == s.side_index) {
            if (p.rank < cut) {
                p.rank = p.rank / cut;
            } else {
                p.side.side_index += 1;
                p.rank = (p.rank - cut) / (Rational(1) - cut);
            }
        } else if (p.side.side_index > s.side_index) {
            p.side.side_index += 1;
        }
    }
    return {c2, out};
}

// ---------------------------------------------------------------------------
// perturbations: reroute a chord through a small dip across an edge
// ---------------------------------------------------------------------------

namespace detail {

struct DipCandidate {
    int side = 0;          // side of the chord's face the dip pokes through
    Rational lo, hi;       // open gap on that side
    bool u_pairs_far = false;
};

// events (sorted positions) of curve endpoints on one side of a face
inline std::vector<Rational> side_positions(const CurveAnalysis& a, std::size_t face, int side) {
    std::vector<Rational> pos;
    for (const Chord& c : a.curve().chords)
        for (const PointCopy* pc : {&c.from, &c.to}) {
            EndPosition ep = a.end_position(*pc);
            if (ep.face == face && ep.side == side) pos.push_back(ep.pos);
        }
    std::sort(pos.begin(), pos.end());
    return pos;
}

// Builds the rerouted curve: chord -> U..dip..V with the dip crossing the
// edge behind `side` inside the gap. Returns nullopt when the host edge does
// not admit the dip (a free side under a closed curve).
inline std::optional<Multicurve> apply_dip(const CurveAnalysis& a, std::size_t chord_idx,
                                           const DipCandidate& d, int serial) {
    const Multicurve& m = a.curve();
    const Topology& topo = a.topology();
    const Chord& chord = m.chords[chord_idx];
    std::size_t face = topo.face_index(chord.face_id);
    int g = topo.gluing_of_side(face, d.side);
    if (g < 0 && !m.relative) return std::nullopt;

    std::string base = "k" + std::to_string(serial);
    Rational width = d.hi - d.lo;
    Rational pos_near = d.lo + width / Rational(3);
    Rational pos_far = d.lo + width * Rational(2, 3);

    Multicurve out = m;
    auto pos_to_rank = [&](Rational pos) {
        if (g < 0) return pos;
        const Gluing& gl = m.complex.gluings[g];
        bool is_a = topo.face_index(gl.a.face_id) == face && gl.a.side_index == d.side;
        if (!is_a && Topology::b_side_reverses(gl.alignment)) return Rational(1) - pos;
        return pos;
    };
    char copy_here = 'a';
    char copy_there = 'b';
    bool twisted = false;
    if (g >= 0) {
        const Gluing& gl = m.complex.gluings[g];
        bool is_a = topo.face_index(gl.a.face_id) == face && gl.a.side_index == d.side;
        copy_here = is_a ? 'a' : 'b';
        copy_there = is_a ? 'b' : 'a';
        twisted = gl.alignment == Alignment::twisted;
    }

    EdgePoint pnear, pfar;
    pnear.id = base + "a";
    pfar.id = base + "b";
    for (EdgePoint* p : {&pnear, &pfar}) {
        if (g >= 0) {
            p->interior = true;
            p->gluing_id = m.complex.gluings[g].id;
        } else {
            p->interior = false;
            p->side = SideRef{chord.face_id, d.side};
        }
    }
    pnear.rank = pos_to_rank(pos_near);
    pfar.rank = pos_to_rank(pos_far);
    out.points.push_back(pnear);
    out.points.push_back(pfar);

    const std::string& u_mate = d.u_pairs_far ? pfar.id : pnear.id;
    const std::string& v_mate = d.u_pairs_far ? pnear.id : pfar.id;
    Coor kappa = chord.coor;
    bool nl = kappa == Coor::left;
    bool nl_far_side = nl != twisted;
    Coor kappa_mid = nl_far_side ? Coor::left : Coor::right;

    // replace the chord in place to keep listing order stable
    Chord c1{chord.id, chord.from, {u_mate, copy_here}, chord.face_id, kappa};
    Chord c3{base + "c", {v_mate, copy_here}, chord.to, chord.face_id, kappa};
    out.chords[chord_idx] = c1;
    if (g >= 0) {
        const Gluing& gl = m.complex.gluings[g];
        const SideRef& far_side = copy_there == 'a' ? gl.a : gl.b;
        Chord c2{base + "m", {u_mate, copy_there}, {v_mate, copy_there}, far_side.face_id,
                 kappa_mid};
        out.chords.push_back(c2);
    }
    out.chords.push_back(c3);
    return out;
}

inline std::vector<DipCandidate> gaps_on_side(const CurveAnalysis& a, std::size_t face, int side) {
    std::vector<Rational> pos = side_positions(a, face, side);
    pos.insert(pos.begin(), Rational(0));
    pos.push_back(Rational(1));
    std::vector<DipCandidate> out;
    for (std::size_t i = 0; i + 1 < pos.size(); ++i)
        for (bool far : {false, true}) out.push_back({side, pos[i], pos[i + 1], far});
    return out;
}

} // namespace detail

struct KinkHost {
    bool is_gluing = true;
    std::string gluing_id;
    SideRef side;
};

// Reroutes one chord into a small dip across the host edge, adding exactly
// one self-crossing. The class vector is untouched: the two new points carry
// canceling signs.
inline Multicurve add_kink(const Multicurve& m, const std::string& chord_id, const KinkHost& host) {
    CurveAnalysis a(m);
    const Topology& topo = a.topology();
    std::size_t chord_idx = m.chords.size();
    for (std::size_t i = 0; i < m.chords.size(); ++i)
        if (m.chords[i].id == chord_id) chord_idx = i;
    if (chord_idx == m.chords.size())
        throw Error(ErrorCode::host_not_on_face, "no chord '" + chord_id + "'");
    const Chord& chord = m.chords[chord_idx];
    std::size_t face = topo.face_index(chord.face_id);

    std::vector<int> host_sides;
    if (host.is_gluing) {
        const Gluing& g = m.complex.gluings[topo.gluing_index(host.gluing_id)];
        for (const SideRef* sr : {&g.a, &g.b})
            if (topo.face_index(sr->face_id) == face) host_sides.push_back(sr->side_index);
        if (host_sides.empty())
            throw Error(ErrorCode::host_not_on_face,
                        "gluing '" + host.gluing_id + "' has no side on face '" + chord.face_id +
                            "'");
    } else {
        if (host.side.face_id != chord.face_id)
            throw Error(ErrorCode::host_not_on_face, "side is on a different face");
        std::size_t f = topo.face_index(host.side.face_id);
        if (host.side.side_index < 0 || host.side.side_index >= topo.side_count(f) ||
            !topo.side_is_free(f, host.side.side_index))
            throw Error(ErrorCode::host_not_on_face, "host side is not a free side of the face");
        host_sides.push_back(host.side.side_index);
    }

    int before = static_cast<int>(crossing_report_analysed(a).crossings.size());
    int serial = static_cast<int>(m.points.size());
    for (int side : host_sides)
        for (const detail::DipCandidate& cand : detail::gaps_on_side(a, face, side)) {
            auto out = detail::apply_dip(a, chord_idx, cand, serial);
            if (!out) continue;
            try {
                validate_curve(*out);
            } catch (const Error&) {
                continue;
            }
            if (static_cast<int>(crossing_report(*out).crossings.size()) == before + 1)
                return *out;
        }
    throw Error(ErrorCode::invalid_curve,
                "no kink placement on that host adds exactly one crossing");
}

// Reroutes `chord_id` across `target_chord_id` and back: exactly two new
// crossings, class vector unchanged.
inline Multicurve finger_move(const Multicurve& m, const std::string& chord_id,
                              const std::string& target_chord_id) {
    CurveAnalysis a(m);
    const Topology& topo = a.topology();
    std::size_t ci = m.chords.size(), ti = m.chords.size();
    for (std::size_t i = 0; i < m.chords.size(); ++i) {
        if (m.chords[i].id == chord_id) ci = i;
        if (m.chords[i].id == target_chord_id) ti = i;
    }
    if (ci >= m.chords.size() || ti >= m.chords.size() || ci == ti)
        throw Error(ErrorCode::not_same_face, "need two distinct chords");
    const Chord& c = m.chords[ci];
    const Chord& t = m.chords[ti];
    if (c.face_id != t.face_id)
        throw Error(ErrorCode::not_same_face,
                    "chords '" + chord_id + "' and '" + target_chord_id + "' are in different faces");
    if (CurveAnalysis::interleaved(a.end_position(c.from), a.end_position(c.to),
                                   a.end_position(t.from), a.end_position(t.to)))
        throw Error(ErrorCode::already_crossing, "the chords already cross");

    std::size_t face = topo.face_index(c.face_id);
    int before = static_cast<int>(crossing_report_analysed(a).crossings.size());
    int serial = static_cast<int>(m.points.size());
    // dips poke through a gap adjacent to one of the target's endpoints
    for (const PointCopy* pc : {&t.from, &t.to}) {
        EndPosition ep = a.end_position(*pc);
        for (const detail::DipCandidate& cand : detail::gaps_on_side(a, face, ep.side)) {
            if (!(cand.lo == ep.pos || cand.hi == ep.pos)) continue;
            auto out = detail::apply_dip(a, ci, cand, serial);
            if (!out) continue;
            try {
                validate_curve(*out);
            } catch (const Error&) {
                continue;
            }
            if (static_cast<int>(crossing_report(*out).crossings.size()) != before + 2) continue;
            // both new crossings involve the target
            int with_target = 0;
            for (const Crossing& cr : crossing_report(*out).crossings)
                if (cr.chord_a == t.id || cr.chord_b == t.id) ++with_target;
            if (with_target >= 2) return *out;
        }
    }
    throw Error(ErrorCode::invalid_curve, "no finger placement across that target");
}

// ---------------------------------------------------------------------------
// seeded generator
// ---------------------------------------------------------------------------

struct CurveProvenance {
    std::vector<DualPath> basis;
    IntVec expected_class;
    std::map<std::string, int> expected_rho_mod2;
    int fingers_applied = 0;
    int kinks_applied = 0;
};

struct RandomCurve {
    Multicurve curve;
    CurveProvenance provenance;
};

// Deterministic in (complex, seed, knobs): realizes a random class, then
// applies finger moves and kinks. Fingers keep the double-point parity, each
// kink flips it on its component.
inline RandomCurve random_curve(const SurfaceComplex& c, std::uint64_t seed, int n_classes,
                                int n_fingers, int n_kinks) {
    Topology topo(c);
    if (!topo.summary().orientable)
        throw Error(ErrorCode::non_orientable_integer_target, "generator needs orientable Z");
    SeqRng rng(seed);
    RandomCurve out;
    out.provenance.basis = evaluation_basis(c, BasisMode::relative);
    IntVec target(out.provenance.basis.size(), 0);
    for (auto& v : target) v = rng.range(-n_classes, n_classes);
    bool all_zero = true;
    for (auto v : target) all_zero = all_zero && v == 0;
    if (all_zero && !target.empty()) target[0] = 1;
    out.provenance.expected_class = target;
    out.curve = realize_class(c, out.provenance.basis, target, false);

    for (int i = 0; i < n_fingers; ++i) {
        // candidate pairs: same face, not yet crossing
        CurveAnalysis a(out.curve);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& [face, ids] : a.chords_by_face())
            for (std::size_t x = 0; x < ids.size(); ++x)
                for (std::size_t y = 0; y < ids.size(); ++y) {
                    if (x == y) continue;
                    const Chord& cx = out.curve.chords[ids[x]];
                    const Chord& cy = out.curve.chords[ids[y]];
                    if (!CurveAnalysis::interleaved(a.end_position(cx.from), a.end_position(cx.to),
                                                    a.end_position(cy.from), a.end_position(cy.to)))
                        pairs.emplace_back(cx.id, cy.id);
                }
        if (pairs.empty()) break;
        bool applied = false;
        for (int attempt = 0; attempt < 16 && !applied; ++attempt) {
            auto [cid, tid] = pairs[rng.index(pairs.size())];
            try {
                out.curve = finger_move(out.curve, cid, tid);
                applied = true;
                out.provenance.fingers_applied += 1;
            } catch (const Error&) {
            }
        }
    }

    for (int i = 0; i < n_kinks; ++i) {
        if (out.curve.chords.empty()) break;
        bool applied = false;
        for (int attempt = 0; attempt < 16 && !applied; ++attempt) {
            const Chord& ch = out.curve.chords[rng.index(out.curve.chords.size())];
            const EdgePoint& p =
                rng.index(2) ? CurveAnalysis(out.curve).point(ch.from.point_id)
                             : CurveAnalysis(out.curve).point(ch.to.point_id);
            if (!p.interior) continue;
            KinkHost host;
            host.is_gluing = true;
            host.gluing_id = p.gluing_id;
            std::string face_key =
                topo.component_key(topo.face_component(topo.face_index(ch.face_id)));
            try {
                out.curve = add_kink(out.curve, ch.id, host);
                applied = true;
                out.provenance.kinks_applied += 1;
                out.provenance.expected_rho_mod2[face_key] ^= 1;
            } catch (const Error&) {
            }
        }
    }
    for (int comp = 0; comp < topo.component_count(); ++comp)
        out.provenance.expected_rho_mod2.emplace(topo.component_key(comp), 0);
    return out;
}

} // namespace qsc
