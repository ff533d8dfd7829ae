#pragma once

#include <string>
#include <vector>

#include "qsc/multicurve.hpp"

namespace qsc {

// Positive-chamber smoothing: direct both chords so the trivializing normal
// is `left` in the face's reference orientation, then rematch tails to the
// other chord's head. Flipping the reference orientation reverses both
// directions and produces the same unordered rematch, so the rule is well
// defined on non-orientable complexes too.
inline Multicurve smooth_crossing(const Multicurve& m, const Crossing& crossing) {
    CurveAnalysis a(m);
    std::size_t ia = m.chords.size(), ib = m.chords.size();
    for (std::size_t i = 0; i < m.chords.size(); ++i) {
        if (m.chords[i].id == crossing.chord_a && m.chords[i].face_id == crossing.face_id) ia = i;
        if (m.chords[i].id == crossing.chord_b && m.chords[i].face_id == crossing.face_id) ib = i;
    }
    if (ia >= m.chords.size() || ib >= m.chords.size() || ia == ib)
        throw Error(ErrorCode::not_a_crossing,
                    "no chords '" + crossing.chord_a + "', '" + crossing.chord_b + "' in face '" +
                        crossing.face_id + "'");
    const Chord& ca = m.chords[ia];
    const Chord& cb = m.chords[ib];
    if (!CurveAnalysis::interleaved(a.end_position(ca.from), a.end_position(ca.to),
                                    a.end_position(cb.from), a.end_position(cb.to)))
        throw Error(ErrorCode::not_a_crossing,
                    "chords '" + ca.id + "' and '" + cb.id + "' do not interleave");

    auto tail = [](const Chord& c) { return c.coor == Coor::left ? c.from : c.to; };
    auto head = [](const Chord& c) { return c.coor == Coor::left ? c.to : c.from; };

    Multicurve out = m;
    out.chords[ia] = Chord{ca.id, tail(ca), head(cb), ca.face_id, Coor::left};
    out.chords[ib] = Chord{cb.id, tail(cb), head(ca), cb.face_id, Coor::left};
    return out;
}

struct ResolveResult {
    Multicurve curve;
    int smoothings = 0;
};

// Applies smooth_crossing to the lexicographically first crossing until the
// curve is embedded. Edge points never move, so every dual-path evaluation is
// preserved exactly; embedded input comes back untouched.
inline ResolveResult resolve_with_stats(const Multicurve& m) {
    ResolveResult out{m, 0};
    validate_curve(out.curve);
    int initial = static_cast<int>(crossing_report(out.curve).crossings.size());
    for (;;) {
        CrossingReport r = crossing_report(out.curve);
        if (r.crossings.empty()) break;
        if (out.smoothings >= initial + 1)
            throw Error(ErrorCode::invalid_curve,
                        "smoothing failed to reduce the interleaving count");
        out.curve = smooth_crossing(out.curve, r.crossings.front());
        ++out.smoothings;
    }
    return out;
}

inline Multicurve resolve(const Multicurve& m) { return resolve_with_stats(m).curve; }

} // namespace qsc
