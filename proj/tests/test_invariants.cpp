#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "qsc/invariants.hpp"
#include "qsc/resolver.hpp"
#include "qsc/rng.hpp"
#include "support/corpus.hpp"
#include "support/curves.hpp"

using namespace qsc;
namespace corpus = qsc::testing;

namespace {

// Independent evaluation route: walk the path's face passages and count
// transverse chord crossings by endpoint interleaving, signing each crossing
// by whether the passage exits on the chord's normal side.
int eval_oracle(const Multicurve& m, const DualPath& p) {
    CurveAnalysis a(m);
    if (p.kind == PathKind::boundary_to_boundary && m.relative)
        throw Error(ErrorCode::path_curve_mismatch, "mismatch");
    auto in_forward = [](const EndPosition& from, const EndPosition& to, const EndPosition& q) {
        if (from < to) return from < q && q < to;
        return q > from || q < to;
    };
    int total = 0;
    for (const Transit& t : path_transits(a.topology(), p)) {
        auto it = a.chords_by_face().find(t.face);
        if (it == a.chords_by_face().end()) continue;
        for (std::size_t ci : it->second) {
            const Chord& c = m.chords[ci];
            EndPosition q1 = a.end_position(c.from);
            EndPosition q2 = a.end_position(c.to);
            if (!CurveAnalysis::interleaved(t.entry, t.exit, q1, q2)) continue;
            bool exit_on_normal_side = c.coor == Coor::left ? in_forward(q2, q1, t.exit)
                                                            : in_forward(q1, q2, t.exit);
            total += exit_on_normal_side ? 1 : -1;
        }
    }
    return total;
}

std::vector<DualPath> enumerate_closed_paths(const SurfaceComplex& c, const std::string& face,
                                             int max_len) {
    std::vector<DualPath> out;
    std::vector<std::pair<std::string, char>> options;
    for (const Gluing& g : c.gluings)
        for (char via : {'a', 'b'}) options.emplace_back(g.id, via);
    std::vector<int> pick;
    Topology topo(c);
    std::function<void(int)> rec = [&](int len) {
        if (!pick.empty()) {
            DualPath p;
            p.kind = PathKind::closed;
            p.id = "e" + std::to_string(out.size());
            std::string cur = face;
            bool ok = true;
            for (int i : pick) {
                const Gluing& g = c.gluings[topo.gluing_index(options[i].first)];
                const SideRef& via = options[i].second == 'a' ? g.a : g.b;
                const SideRef& other = options[i].second == 'a' ? g.b : g.a;
                if (via.face_id != cur) { ok = false; break; }
                p.steps.push_back({cur, options[i].first, options[i].second});
                cur = other.face_id;
            }
            if (ok && cur == face) out.push_back(p);
        }
        if (len == max_len) return;
        for (std::size_t i = 0; i < options.size(); ++i) {
            pick.push_back(static_cast<int>(i));
            rec(len + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace

TEST_CASE("side-sum evaluation matches the interleaving oracle") {
    struct Pair { Multicurve m; SurfaceComplex c; };
    std::vector<Pair> pairs{
        {corpus::torus_meridian(), corpus::torus()},
        {corpus::torus_longitude(), corpus::torus()},
        {corpus::torus_ml(), corpus::torus()},
        {resolve(corpus::torus_ml()), corpus::torus()},
        {corpus::annulus_core(), corpus::annulus()},
        {corpus::annulus_arc(), corpus::annulus()},
        {corpus::fig8_disk(), corpus::folded_disk()},
        {resolve(corpus::fig8_disk()), corpus::folded_disk()},
    };
    for (const Pair& pr : pairs) {
        for (BasisMode mode : {BasisMode::absolute, BasisMode::relative}) {
            for (const DualPath& p : evaluation_basis(pr.c, mode)) {
                if (p.kind == PathKind::boundary_to_boundary && pr.m.relative) continue;
                CHECK(evaluate_path(pr.m, p) == eval_oracle(pr.m, p));
            }
        }
        for (const DualPath& p : enumerate_closed_paths(pr.c, "f", 2)) {
            if (pr.c.faces.size() > 1) break;
            CHECK(evaluate_path(pr.m, p) == eval_oracle(pr.m, p));
        }
    }
}

TEST_CASE("torus meridian and longitude pair against the dual basis") {
    auto basis = evaluation_basis(corpus::torus(), BasisMode::relative);
    ClassVector cm = class_vector(corpus::torus_meridian(), basis);
    ClassVector cl = class_vector(corpus::torus_longitude(), basis);
    // frozen convention: the meridian (a point on B, cooriented upward) pairs
    // -1 with the path crossing A; the longitude pairs +1 with the B path
    CHECK(cm.values == IntVec{-1, 0});
    CHECK(cl.values == IntVec{0, 1});
    ClassVector both = class_vector(corpus::torus_ml(), basis);
    CHECK(both.values == IntVec{-1, 1});
    CHECK(both.coefficient_mode == CoefficientMode::integer);
}

TEST_CASE("empty curve evaluates to zero on every path") {
    Multicurve empty;
    empty.complex = corpus::torus();
    for (const DualPath& p : evaluation_basis(corpus::torus(), BasisMode::relative))
        CHECK(evaluate_path(empty, p) == 0);
}

TEST_CASE("evaluation is exactly preserved by resolve") {
    for (const Multicurve& m : {corpus::torus_ml(), corpus::fig8_disk()}) {
        Multicurve res = resolve(m);
        for (BasisMode mode : {BasisMode::absolute, BasisMode::relative})
            for (const DualPath& p : evaluation_basis(m.complex, mode))
                CHECK(evaluate_path(m, p) == evaluate_path(res, p));
    }
}

TEST_CASE("flip negates the class vector exactly") {
    auto basis = evaluation_basis(corpus::torus(), BasisMode::relative);
    for (const Multicurve& m :
         {corpus::torus_meridian(), corpus::torus_ml(), resolve(corpus::torus_ml())}) {
        ClassVector v = class_vector(m, basis);
        ClassVector fv = class_vector(flip(m), basis);
        REQUIRE(v.values.size() == fv.values.size());
        for (std::size_t i = 0; i < v.values.size(); ++i) CHECK(fv.values[i] == -v.values[i]);
    }
    CHECK(flip(flip(corpus::torus_ml())) == corpus::torus_ml());
    // crossings do not depend on the bits
    CHECK(crossing_report(flip(corpus::fig8_disk())).rho_mod2.at("f") == 1);
}

TEST_CASE("path against wrong curve kind is rejected") {
    auto rel = evaluation_basis(corpus::annulus(), BasisMode::relative);
    REQUIRE(rel[0].kind == PathKind::boundary_to_boundary);
    CHECK_THROWS_AS(evaluate_path(corpus::annulus_arc(), rel[0]), Error);
    CHECK_NOTHROW(evaluate_path(corpus::annulus_core(), rel[0]));
    // closed paths are fine against both kinds
    auto abs = evaluation_basis(corpus::annulus(), BasisMode::absolute);
    CHECK_NOTHROW(evaluate_path(corpus::annulus_arc(), abs[0]));
    CHECK_NOTHROW(evaluate_path(corpus::annulus_core(), abs[0]));
}

TEST_CASE("realize_class roundtrips and is embedded") {
    struct Row { SurfaceComplex c; int bound; };
    for (const Row& row : {Row{corpus::torus(), 3}, Row{corpus::annulus(), 3},
                           Row{corpus::genus2(), 1}, Row{corpus::twisted_cylinder(), 3}}) {
        for (bool relative : {false, true}) {
            BasisMode mode = relative ? BasisMode::absolute : BasisMode::relative;
            auto basis = evaluation_basis(row.c, mode);
            if (basis.empty()) continue;
            std::vector<IntVec> targets;
            IntVec t(basis.size(), -row.bound);
            for (;;) {
                targets.push_back(t);
                std::size_t i = 0;
                while (i < t.size() && t[i] == row.bound) t[i++] = -row.bound;
                if (i == t.size()) break;
                ++t[i];
            }
            for (const IntVec& target : targets) {
                Multicurve m = realize_class(row.c, basis, target, relative);
                CHECK(crossing_report(m).crossings.empty());
                ClassVector cv = class_vector(m, basis);
                CHECK(cv.values == target);
            }
        }
    }
}

TEST_CASE("realize_class of the zero class is the empty curve") {
    auto basis = evaluation_basis(corpus::torus(), BasisMode::relative);
    Multicurve m = realize_class(corpus::torus(), basis, {0, 0}, false);
    CHECK(m.points.empty());
    CHECK(m.chords.empty());
}

TEST_CASE("realize_class needs an orientable complex") {
    auto basis = evaluation_basis(corpus::klein_bottle(), BasisMode::relative);
    CHECK_THROWS_MATCHES(realize_class(corpus::klein_bottle(), basis, IntVec(basis.size(), 1), false),
                         Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::non_orientable_integer_target;
                         }));
}

TEST_CASE("class vectors on non-orientable complexes are mod 2") {
    auto basis = evaluation_basis(corpus::klein_bottle(), BasisMode::relative);
    REQUIRE(basis.size() == 1);
    // loop crossing gluing A once: two-sided on the Klein bottle
    Multicurve m;
    m.complex = corpus::klein_bottle();
    m.points.push_back({"p", true, "A", {}, Rational(1, 2)});
    m.chords.push_back({"c", {"p", 'a'}, {"p", 'b'}, "f", Coor::right});
    ClassVector cv = class_vector(m, basis);
    CHECK(cv.coefficient_mode == CoefficientMode::mod2);
    for (auto v : cv.values) CHECK((v == 0 || v == 1));
}

TEST_CASE("bsigma equals the mod-2 crossing count and vanishes on realized curves") {
    CHECK(bsigma(corpus::fig8_disk()).at("f") == 1);
    CHECK(bsigma(corpus::torus_meridian()).at("f") == 0);
    auto basis = evaluation_basis(corpus::torus(), BasisMode::relative);
    Multicurve m = realize_class(corpus::torus(), basis, {2, -3}, false);
    for (const auto& [key, bit] : bsigma(m)) CHECK(bit == 0);
}

TEST_CASE("evaluation depends only on the path's homology class") {
    // enumerate short closed paths, group them by the coordinates of their
    // pushed cellular chains (homologous = differing by face boundaries), and
    // demand equal values per group
    struct Probe { SurfaceComplex c; std::vector<Multicurve> curves; };
    std::vector<Probe> probes{
        {corpus::torus(), {corpus::torus_ml(), corpus::torus_meridian()}},
        {corpus::annulus(), {corpus::annulus_core(), corpus::annulus_arc()}},
    };
    for (const Probe& probe : probes) {
        Topology topo(probe.c);
        HomologyCoords abs_coords(topo, BasisMode::absolute);
        HomologyCoords rel_coords(topo, BasisMode::relative);
        std::vector<DualPath> paths = enumerate_closed_paths(probe.c, "f", 3);
        // boundary-to-boundary probes for closed curves
        std::vector<DualPath> bpaths;
        auto free = topo.free_sides();
        for (auto [f1, s1] : free)
            for (auto [f2, s2] : free) {
                DualPath base;
                base.kind = PathKind::boundary_to_boundary;
                base.start = {probe.c.faces[f1].id, s1};
                base.end = {probe.c.faces[f2].id, s2};
                bpaths.push_back(base);
                for (const DualPath& mid : enumerate_closed_paths(probe.c, "f", 2)) {
                    DualPath p = base;
                    p.steps = mid.steps;
                    bpaths.push_back(p);
                }
            }
        for (const Multicurve& m : probe.curves) {
            // closed curves pair through relative classes, arcs through
            // absolute ones
            const HomologyCoords& hc = m.relative ? abs_coords : rel_coords;
            std::map<IntVec, int> seen;
            auto probe_path = [&](const DualPath& p) {
                auto co = hc.coords(pushed_cellular_chain(topo, p));
                if (!co) return;
                int v = evaluate_path(m, p);
                auto it = seen.find(*co);
                if (it == seen.end())
                    seen.emplace(*co, v);
                else
                    CHECK(it->second == v);
            };
            for (const DualPath& p : paths) probe_path(p);
            if (!m.relative)
                for (const DualPath& p : bpaths) probe_path(p);
            CHECK(seen.size() >= 2);
        }
    }
}

TEST_CASE("inserting a back-and-forth hop does not change evaluation") {
    SurfaceComplex torus = corpus::torus();
    auto basis = evaluation_basis(torus, BasisMode::relative);
    SeqRng rng(9);
    for (const Multicurve& m : {corpus::torus_ml(), corpus::torus_meridian()}) {
        for (const DualPath& p : basis) {
            DualPath widened = p;
            const Gluing& g = torus.gluings[rng.index(2)];
            widened.steps.push_back({"f", g.id, 'a'});
            widened.steps.push_back({"f", g.id, 'b'});
            CHECK(evaluate_path(m, widened) == evaluate_path(m, p));
        }
    }
}
