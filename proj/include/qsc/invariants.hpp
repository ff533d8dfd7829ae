#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qsc/basis.hpp"
#include "qsc/dual_paths.hpp"
#include "qsc/multicurve.hpp"

namespace qsc {

enum class CoefficientMode { integer, mod2 };

struct ClassVector {
    std::vector<DualPath> basis;
    IntVec values;
    CoefficientMode coefficient_mode = CoefficientMode::integer;
};

namespace detail {

// Per (face, side) sum of chord-end signs: a chord contributes -1 where its
// normal-on-left direction starts and +1 where it ends. A transversal from
// one corner anchor to another crosses the curve with total sign equal to the
// sum over the boundary arc between the anchors, so path evaluation reduces
// to these per-side totals.
inline std::map<std::pair<std::size_t, int>, std::int64_t> side_sign_totals(
    const CurveAnalysis& a) {
    std::map<std::pair<std::size_t, int>, std::int64_t> out;
    for (const Chord& c : a.curve().chords) {
        auto [tail, head] = a.canonical_direction(c);
        out[{tail.face, tail.side}] -= 1;
        out[{head.face, head.side}] += 1;
    }
    return out;
}

} // namespace detail

// Signed count of transverse intersections of the path's underlying loop or
// arc with the curve: +1 where the path crosses in the direction of the
// trivializing normal. Pointwise definition, no global orientation involved;
// on non-orientable complexes only the mod-2 value is an invariant.
inline int evaluate_path_analysed(const CurveAnalysis& a, const DualPath& p) {
    if (p.kind == PathKind::boundary_to_boundary && a.curve().relative)
        throw Error(ErrorCode::path_curve_mismatch,
                    "boundary-ended path against a relative curve");
    auto totals = detail::side_sign_totals(a);
    std::int64_t sum = 0;
    for (const Transit& t : path_transits(a.topology(), p))
        for (int s : transit_arc_sides(a.topology(), t)) {
            auto it = totals.find({t.face, s});
            if (it != totals.end()) sum += it->second;
        }
    return static_cast<int>(sum);
}

inline int evaluate_path(const Multicurve& m, const DualPath& p) {
    return evaluate_path_analysed(CurveAnalysis(m), p);
}

inline ClassVector class_vector(const Multicurve& m, const std::vector<DualPath>& basis) {
    CurveAnalysis a(m);
    ClassVector out;
    out.basis = basis;
    out.coefficient_mode = a.topology().summary().orientable ? CoefficientMode::integer
                                                             : CoefficientMode::mod2;
    for (const DualPath& p : basis) {
        int v = evaluate_path_analysed(a, p);
        if (out.coefficient_mode == CoefficientMode::mod2) v = ((v % 2) + 2) % 2;
        out.values.push_back(v);
    }
    return out;
}

// The curve with the opposite trivialization of the normal bundle.
inline Multicurve flip(const Multicurve& m) {
    Multicurve out = m;
    for (Chord& c : out.chords) c.coor = c.coor == Coor::left ? Coor::right : Coor::left;
    for (Circle& c : out.circles) c.sign = -c.sign;
    return out;
}

// The k = n+1 = 2 component of the bordism invariant: the mod-2 double-point
// count per ambient component; zero on every output of realize_class.
inline std::map<std::string, int> bsigma(const Multicurve& m) {
    CurveAnalysis a(m);
    if (a.summary().arc_components > 0)
        throw Error(ErrorCode::invalid_curve, "bsigma is defined for closed curves");
    return crossing_report_analysed(a).rho_mod2;
}

// ---------------------------------------------------------------------------
// realize_class: an embedded cooriented multicurve with a prescribed class.
// Unknowns are signed strand counts per edge (gluings always; free sides too
// when building a relative curve). Path evaluations are linear in those
// counts, face balance makes the strands matchable, and a non-crossing
// matching inside each face produces the chords.
// ---------------------------------------------------------------------------

inline Multicurve realize_class(const SurfaceComplex& c, const std::vector<DualPath>& basis,
                                const IntVec& target, bool relative) {
    Topology topo(c);
    if (!topo.summary().orientable)
        throw Error(ErrorCode::non_orientable_integer_target,
                    "integer classes need an orientable complex");
    if (basis.size() != target.size())
        throw Error(ErrorCode::inconsistent_target, "target length does not match basis size");

    // edge set carrying unknowns
    std::vector<std::size_t> eset;
    std::vector<std::ptrdiff_t> eslot(topo.edges().size(), -1);
    for (std::size_t e = 0; e < topo.edges().size(); ++e)
        if (topo.edges()[e].is_gluing || relative) {
            eslot[e] = static_cast<std::ptrdiff_t>(eset.size());
            eset.push_back(e);
        }

    // side multiplier: +1 crossing out of the a-side face, -1 into the b-side
    // face or inward through a free side; reference-based signs carry an extra
    // face sign
    auto side_edge = [&](std::size_t f, int s) {
        int g = topo.gluing_of_side(f, s);
        if (g < 0) return std::make_pair(topo.edge_of_free_side(f, s), -1);
        const Gluing& gl = c.gluings[g];
        bool is_a = topo.face_index(gl.a.face_id) == f && gl.a.side_index == s;
        return std::make_pair(topo.edge_of_gluing(static_cast<std::size_t>(g)), is_a ? 1 : -1);
    };

    IntMat mat;
    IntVec rhs;
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
        const DualPath& p = basis[bi];
        if (relative && p.kind == PathKind::boundary_to_boundary)
            throw Error(ErrorCode::path_curve_mismatch,
                        "boundary-ended basis path against a relative curve");
        IntVec row(eset.size(), 0);
        for (const Transit& t : path_transits(topo, p))
            for (int s : transit_arc_sides(topo, t)) {
                auto [e, mult] = side_edge(t.face, s);
                if (eslot[e] < 0) continue;
                row[static_cast<std::size_t>(eslot[e])] += mult * topo.face_sign(t.face);
            }
        mat.push_back(row);
        rhs.push_back(target[bi]);
    }
    for (std::size_t f = 0; f < c.faces.size(); ++f) {
        IntVec row(eset.size(), 0);
        for (int s = 0; s < topo.side_count(f); ++s) {
            auto [e, mult] = side_edge(f, s);
            if (eslot[e] < 0) continue;
            row[static_cast<std::size_t>(eslot[e])] += mult;
        }
        mat.push_back(row);
        rhs.push_back(0);
    }

    IntSolve sol = solve_integer(mat, rhs);
    if (!sol.particular)
        throw Error(ErrorCode::inconsistent_target, "target is not in the image of the pairing");
    IntVec w = *sol.particular;

    // minimal-support solution, ties by L1 then lexicographic order
    auto score = [](const IntVec& v) {
        std::int64_t support = 0, l1 = 0;
        for (auto x : v) {
            if (x != 0) ++support;
            l1 += x < 0 ? -x : x;
        }
        return std::make_pair(support, l1);
    };
    auto better = [&](const IntVec& x, const IntVec& y) {
        auto sx = score(x), sy = score(y);
        if (sx != sy) return sx < sy;
        return x < y;
    };
    if (!sol.kernel.empty() && sol.kernel.size() <= 6) {
        // greedy descent, then an exhaustive box around the result
        bool moved = true;
        while (moved) {
            moved = false;
            for (const IntVec& k : sol.kernel)
                for (int dir : {1, -1}) {
                    IntVec cand = w;
                    for (std::size_t i = 0; i < w.size(); ++i) cand[i] += dir * k[i];
                    if (better(cand, w)) { w = cand; moved = true; }
                }
        }
        std::vector<int> coeff(sol.kernel.size(), -2);
        IntVec best = w;
        for (;;) {
            IntVec cand = w;
            for (std::size_t j = 0; j < coeff.size(); ++j)
                for (std::size_t i = 0; i < w.size(); ++i) cand[i] += coeff[j] * sol.kernel[j][i];
            if (better(cand, best)) best = cand;
            std::size_t j = 0;
            while (j < coeff.size() && coeff[j] == 2) coeff[j++] = -2;
            if (j == coeff.size()) break;
            ++coeff[j];
        }
        w = best;
    }

    // place points
    Multicurve out;
    out.complex = c;
    out.relative = relative;
    struct Strand {
        std::string point_id;
        int wsign;
    };
    std::map<std::size_t, std::vector<Strand>> edge_strands;
    int pcount = 0;
    for (std::size_t slot = 0; slot < eset.size(); ++slot) {
        std::int64_t wv = w[slot];
        if (wv == 0) continue;
        std::size_t e = eset[slot];
        const EdgeInfo& ei = topo.edges()[e];
        int n = static_cast<int>(wv < 0 ? -wv : wv);
        for (int i = 0; i < n; ++i) {
            EdgePoint p;
            p.id = "p" + std::to_string(pcount++);
            p.rank = Rational(i + 1, n + 1);
            if (ei.is_gluing) {
                p.interior = true;
                p.gluing_id = c.gluings[ei.gluing_index].id;
            } else {
                p.interior = false;
                p.side = SideRef{c.faces[ei.face].id, ei.side};
            }
            out.points.push_back(p);
            edge_strands[e].push_back({p.id, wv < 0 ? -1 : 1});
        }
    }

    // match strand ends inside each face without crossings
    struct Event {
        EndPosition pos;
        bool head; // strand leaves the face here (in the global orientation)
        PointCopy copy;
    };
    int ccount = 0;
    for (std::size_t f = 0; f < c.faces.size(); ++f) {
        std::vector<Event> events;
        for (int s = 0; s < topo.side_count(f); ++s) {
            int g = topo.gluing_of_side(f, s);
            std::size_t e = g < 0 ? topo.edge_of_free_side(f, s)
                                  : topo.edge_of_gluing(static_cast<std::size_t>(g));
            auto it = edge_strands.find(e);
            if (it == edge_strands.end()) continue;
            char copy = 'a';
            bool head_when_positive = true; // crossing out of the a-side face
            Rational flip_pos(0);
            bool reverse = false;
            if (g >= 0) {
                const Gluing& gl = c.gluings[g];
                bool is_a = topo.face_index(gl.a.face_id) == f && gl.a.side_index == s;
                copy = is_a ? 'a' : 'b';
                head_when_positive = is_a;
                reverse = !is_a && Topology::b_side_reverses(gl.alignment);
            } else {
                head_when_positive = false; // positive means inward
            }
            int n = static_cast<int>(it->second.size());
            for (int i = 0; i < n; ++i) {
                const Strand& st = it->second[i];
                Rational rank(i + 1, n + 1);
                Event ev;
                ev.pos = {f, s, reverse ? Rational(1) - rank : rank};
                ev.head = (st.wsign > 0) == head_when_positive;
                ev.copy = {st.point_id, copy};
                events.push_back(ev);
            }
        }
        if (events.empty()) continue;
        std::sort(events.begin(), events.end(),
                  [](const Event& x, const Event& y) { return x.pos < y.pos; });
        // rotate so prefix depth never dips below zero, then stack-match
        int depth = 0, min_depth = 0;
        std::size_t cut = 0;
        for (std::size_t i = 0; i < events.size(); ++i) {
            depth += events[i].head ? -1 : 1;
            if (depth < min_depth) { min_depth = depth; cut = i + 1; }
        }
        if (depth != 0)
            throw Error(ErrorCode::inconsistent_target, "unbalanced strands in a face");
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < events.size(); ++i) {
            std::size_t at = (cut + i) % events.size();
            if (!events[at].head) {
                stack.push_back(at);
            } else {
                if (stack.empty())
                    throw Error(ErrorCode::inconsistent_target, "unbalanced strands in a face");
                std::size_t tail = stack.back();
                stack.pop_back();
                Chord ch;
                ch.id = "c" + std::to_string(ccount++);
                ch.from = events[tail].copy;
                ch.to = events[at].copy;
                ch.face_id = c.faces[f].id;
                ch.coor = topo.face_sign(f) > 0 ? Coor::left : Coor::right;
                out.chords.push_back(ch);
            }
        }
    }
    return out;
}

} // namespace qsc
