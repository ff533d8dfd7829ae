#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "qsc/resolver.hpp"
#include "qsc/rng.hpp"
#include "support/corpus.hpp"
#include "support/curves.hpp"

using namespace qsc;
namespace corpus = qsc::testing;

namespace {

// axes model: two arcs through a free square, W-E cooriented up and N-S
// cooriented right
Multicurve axes_model() {
    Multicurve m;
    m.relative = true;
    m.complex = corpus::square();
    m.points.push_back({"w", false, "", {"f", 3}, Rational(1, 2)});
    m.points.push_back({"e", false, "", {"f", 1}, Rational(1, 2)});
    m.points.push_back({"n", false, "", {"f", 2}, Rational(1, 2)});
    m.points.push_back({"s", false, "", {"f", 0}, Rational(1, 2)});
    m.chords.push_back({"A", {"w", 'a'}, {"e", 'a'}, "f", Coor::left});
    m.chords.push_back({"B", {"n", 'a'}, {"s", 'a'}, "f", Coor::left});
    return m;
}

} // namespace

TEST_CASE("axes model smooths into the positive-chamber hyperbola pair") {
    Multicurve m = axes_model();
    CrossingReport r = crossing_report(m);
    REQUIRE(r.crossings.size() == 1);
    Multicurve sm = smooth_crossing(m, r.crossings[0]);
    validate_curve(sm);
    REQUIRE(sm.chords.size() == 2);
    // arcs connect W->S and N->E, both normal-left
    auto find = [&](const std::string& id) {
        for (const Chord& c : sm.chords)
            if (c.id == id) return c;
        FAIL("missing chord");
        return Chord{};
    };
    Chord a = find("A");
    Chord b = find("B");
    CHECK(a.from == PointCopy{"w", 'a'});
    CHECK(a.to == PointCopy{"s", 'a'});
    CHECK(a.coor == Coor::left);
    CHECK(b.from == PointCopy{"n", 'a'});
    CHECK(b.to == PointCopy{"e", 'a'});
    CHECK(b.coor == Coor::left);
    CHECK(crossing_report(sm).crossings.empty());
}

TEST_CASE("smoothing is symmetric in its arguments") {
    Multicurve m = axes_model();
    Crossing c = crossing_report(m).crossings[0];
    Crossing swapped{c.face_id, c.chord_b, c.chord_a};
    CHECK(smooth_crossing(m, c) == smooth_crossing(m, swapped));
}

TEST_CASE("smoothing a non-crossing fails") {
    Multicurve m = axes_model();
    Multicurve sm = resolve(m);
    CHECK_THROWS_AS(smooth_crossing(sm, {"f", "A", "B"}), Error);
    CHECK_THROWS_AS(smooth_crossing(m, {"f", "A", "nope"}), Error);
}

TEST_CASE("meridian plus longitude resolve to one embedded diagonal") {
    Multicurve m = corpus::torus_ml();
    ResolveResult r = resolve_with_stats(m);
    CHECK(r.smoothings == 1);
    CurveSummary s = validate_curve(r.curve);
    CHECK(s.component_count == 1);
    CHECK(crossing_report(r.curve).crossings.empty());
    // still crosses each gluing once
    CHECK(r.curve.points == m.points);
}

TEST_CASE("embedded input returns bit-identical with zero smoothings") {
    for (const Multicurve& m :
         {corpus::torus_meridian(), corpus::annulus_core(), corpus::annulus_arc()}) {
        ResolveResult r = resolve_with_stats(m);
        CHECK(r.smoothings == 0);
        CHECK(r.curve == m);
    }
}

TEST_CASE("figure eight resolves to two embedded fold loops") {
    Multicurve m = corpus::fig8_disk();
    ResolveResult r = resolve_with_stats(m);
    CHECK(r.smoothings == 1);
    CHECK(crossing_report(r.curve).crossings.empty());
    CHECK(validate_curve(r.curve).component_count == 2);
    // the flipped coorientation variant gives the same component count
    Multicurve f = m;
    for (Chord& c : f.chords) c.coor = Coor::right;
    ResolveResult rf = resolve_with_stats(f);
    CHECK(validate_curve(rf.curve).component_count == 2);
}

TEST_CASE("resolve is idempotent bit for bit") {
    for (const Multicurve& m : {corpus::torus_ml(), corpus::fig8_disk(), axes_model()}) {
        Multicurve once = resolve(m);
        CHECK(resolve(once) == once);
    }
}

TEST_CASE("rho vanishes after resolve") {
    for (const Multicurve& m : {corpus::torus_ml(), corpus::fig8_disk()}) {
        CrossingReport r = crossing_report(resolve(m));
        for (const auto& [key, rho] : r.rho_mod2) CHECK(rho == 0);
    }
}

// Abstract endpoint model of one face: chords are endpoint pairs on a circle;
// smoothing rematches tails and heads. Checks the strictly-decreasing measure:
// the smoothed pair loses its crossing, any third chord changes by 0 or -2.
TEST_CASE("interleaving count strictly decreases under rematching") {
    SeqRng rng(2024);
    auto cross = [](double a1, double a2, double b1, double b2) {
        double lo = std::min(a1, a2), hi = std::max(a1, a2);
        bool in1 = b1 > lo && b1 < hi;
        bool in2 = b2 > lo && b2 < hi;
        return in1 != in2;
    };
    int seen_zero = 0, seen_minus2 = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        // six distinct endpoints: chords A, B forced to interleave, C anywhere
        std::vector<double> pos(6);
        for (double& p : pos) p = rng.uniform();
        std::sort(pos.begin(), pos.end());
        std::size_t ci = rng.index(6);
        std::size_t cj = rng.index(5);
        if (cj >= ci) ++cj;
        double c1 = pos[ci], c2 = pos[cj];
        std::vector<double> rest;
        for (std::size_t i = 0; i < 6; ++i)
            if (i != ci && i != cj) rest.push_back(pos[i]);
        // alternate the remaining four around the circle
        double a_t = rest[0], a_h = rest[2], b_t = rest[1], b_h = rest[3];
        // the coorientation decides which end is the tail; vary it
        if (rng.index(2)) std::swap(a_t, a_h);
        if (rng.index(2)) std::swap(b_t, b_h);
        REQUIRE(cross(a_t, a_h, b_t, b_h));
        int before = cross(a_t, a_h, c1, c2) + cross(b_t, b_h, c1, c2);
        int after = cross(a_t, b_h, c1, c2) + cross(b_t, a_h, c1, c2);
        int delta = after - before;
        CHECK((delta == 0 || delta == -2));
        // the smoothed pair itself never re-crosses
        CHECK(!cross(a_t, b_h, b_t, a_h));
        if (delta == 0) ++seen_zero;
        if (delta == -2) ++seen_minus2;
    }
    CHECK(seen_zero > 0);
    CHECK(seen_minus2 > 0);
}
