#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsc/dual_paths.hpp"
#include "qsc/snf.hpp"
#include "qsc/surface.hpp"

namespace qsc {

enum class BasisMode { absolute, relative };

// Integer coordinates on the free part of H_1(Z;Z) (absolute) or
// H_1(Z,dZ;Z) (relative), read off cellular 1-chains.
class HomologyCoords {
  public:
    HomologyCoords(const Topology& topo, BasisMode mode) : topo_(&topo) {
        bool rel = mode == BasisMode::relative;
        for (std::size_t e = 0; e < topo.edges().size(); ++e)
            if (!rel || topo.edges()[e].is_gluing) edge_sel_.push_back(e);
        std::vector<std::size_t> orbit_sel;
        for (int v = 0; v < topo.orbit_count(); ++v)
            if (!rel || !topo.orbit_on_boundary(v)) orbit_sel.push_back(static_cast<std::size_t>(v));

        b1_.assign(orbit_sel.size(), IntVec(edge_sel_.size(), 0));
        for (std::size_t i = 0; i < orbit_sel.size(); ++i)
            for (std::size_t j = 0; j < edge_sel_.size(); ++j)
                b1_[i][j] = topo.d1()[orbit_sel[i]][edge_sel_[j]];

        // lattice basis of the cycle space
        std::size_t ecount = edge_sel_.size();
        if (b1_.empty()) {
            kmat_.assign(ecount, IntVec(ecount, 0));
            for (std::size_t i = 0; i < ecount; ++i) kmat_[i][i] = 1;
        } else {
            SmithForm s1 = smith_normal_form(b1_);
            std::size_t z = ecount - s1.rank;
            kmat_.assign(ecount, IntVec(z, 0));
            for (std::size_t j = 0; j < z; ++j)
                for (std::size_t i = 0; i < ecount; ++i) kmat_[i][j] = s1.v[i][s1.rank + j];
        }
        std::size_t z = kmat_.empty() ? 0 : kmat_[0].size();

        // face boundaries in cycle coordinates
        std::size_t nf = topo.complex().faces.size();
        IntMat y(z, IntVec(nf, 0));
        for (std::size_t f = 0; f < nf; ++f) {
            IntVec col(edge_sel_.size());
            for (std::size_t j = 0; j < edge_sel_.size(); ++j) col[j] = topo.d2()[edge_sel_[j]][f];
            IntSolve sol = solve_integer(kmat_, col);
            if (!sol.particular)
                throw Error(ErrorCode::not_valid_complex, "face boundary is not a cycle");
            for (std::size_t i = 0; i < z; ++i) y[i][f] = (*sol.particular)[i];
        }
        if (z == 0) {
            yrank_ = 0;
            uy_ = IntMat{};
        } else {
            SmithForm sy = smith_normal_form(y);
            yrank_ = sy.rank;
            uy_ = sy.u;
        }
        free_rank_ = static_cast<int>(z - yrank_);
    }

    int free_rank() const { return free_rank_; }

    // chain indexed over all edges of the complex; free edges are projected
    // away in relative mode
    std::optional<IntVec> coords(const IntVec& chain) const {
        IntVec sel(edge_sel_.size());
        for (std::size_t j = 0; j < edge_sel_.size(); ++j) sel[j] = chain[edge_sel_[j]];
        for (const IntVec& row : b1_) {
            std::int64_t dot = 0;
            for (std::size_t j = 0; j < sel.size(); ++j) dot += row[j] * sel[j];
            if (dot != 0) return std::nullopt; // not a cycle in this mode
        }
        IntSolve sol = solve_integer(kmat_, sel);
        if (!sol.particular) return std::nullopt;
        std::size_t z = kmat_.empty() ? 0 : kmat_[0].size();
        IntVec w(free_rank_, 0);
        for (std::size_t i = yrank_; i < z; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < z; ++j) acc += uy_[i][j] * (*sol.particular)[j];
            w[i - yrank_] = acc;
        }
        return w;
    }

  private:
    const Topology* topo_;
    std::vector<std::size_t> edge_sel_;
    IntMat b1_;
    IntMat kmat_;
    IntMat uy_;
    std::size_t yrank_ = 0;
    int free_rank_ = 0;
};

namespace detail {

struct ForestInfo {
    // per face: root of its component, and the hop from its tree parent
    std::vector<std::size_t> root;
    std::vector<int> parent_gluing;      // -1 at roots
    std::vector<char> parent_via;        // side on the parent face
    std::vector<std::size_t> parent_face;
};

inline ForestInfo spanning_forest(const Topology& topo) {
    const SurfaceComplex& c = topo.complex();
    std::size_t nf = c.faces.size();
    ForestInfo out;
    out.root.assign(nf, 0);
    out.parent_gluing.assign(nf, -1);
    out.parent_via.assign(nf, 'a');
    out.parent_face.assign(nf, 0);

    std::vector<std::size_t> face_order(nf);
    for (std::size_t i = 0; i < nf; ++i) face_order[i] = i;
    std::sort(face_order.begin(), face_order.end(),
              [&](std::size_t x, std::size_t y) { return c.faces[x].id < c.faces[y].id; });
    std::vector<std::size_t> gluing_order(c.gluings.size());
    for (std::size_t i = 0; i < c.gluings.size(); ++i) gluing_order[i] = i;
    std::sort(gluing_order.begin(), gluing_order.end(),
              [&](std::size_t x, std::size_t y) { return c.gluings[x].id < c.gluings[y].id; });

    std::vector<bool> seen(nf, false);
    for (std::size_t start : face_order) {
        if (seen[start]) continue;
        seen[start] = true;
        out.root[start] = start;
        std::vector<std::size_t> queue{start};
        while (!queue.empty()) {
            std::size_t f = queue.front();
            queue.erase(queue.begin());
            for (std::size_t gi : gluing_order) {
                const Gluing& g = c.gluings[gi];
                std::size_t fa = topo.face_index(g.a.face_id);
                std::size_t fb = topo.face_index(g.b.face_id);
                for (auto [from, to, via] :
                     {std::tuple<std::size_t, std::size_t, char>{fa, fb, 'a'},
                      std::tuple<std::size_t, std::size_t, char>{fb, fa, 'b'}}) {
                    if (from != f || seen[to]) continue;
                    seen[to] = true;
                    out.root[to] = start;
                    out.parent_face[to] = f;
                    out.parent_gluing[to] = static_cast<int>(gi);
                    out.parent_via[to] = via;
                    queue.push_back(to);
                }
            }
        }
    }
    return out;
}

inline std::vector<PathStep> walk_down(const Topology& topo, const ForestInfo& forest,
                                       std::size_t face) {
    // steps from the component root to `face`
    std::vector<PathStep> rev;
    const SurfaceComplex& c = topo.complex();
    std::size_t f = face;
    while (forest.parent_gluing[f] >= 0) {
        const Gluing& g = c.gluings[forest.parent_gluing[f]];
        rev.push_back({c.faces[forest.parent_face[f]].id, g.id, forest.parent_via[f]});
        f = forest.parent_face[f];
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

inline std::vector<PathStep> walk_up(const Topology& topo, const ForestInfo& forest,
                                     std::size_t face) {
    // steps from `face` back to the component root
    std::vector<PathStep> out;
    const SurfaceComplex& c = topo.complex();
    std::size_t f = face;
    while (forest.parent_gluing[f] >= 0) {
        const Gluing& g = c.gluings[forest.parent_gluing[f]];
        char via = forest.parent_via[f] == 'a' ? 'b' : 'a';
        out.push_back({c.faces[f].id, g.id, via});
        f = forest.parent_face[f];
    }
    return out;
}

inline std::int64_t abs_det(IntMat a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                __int128 v = (__int128)a[i][j] * a[k][k] - (__int128)a[i][k] * a[k][j];
                a[i][j] = static_cast<std::int64_t>(v / prev);
            }
        prev = a[k][k];
    }
    std::int64_t d = a[n - 1][n - 1];
    return d < 0 ? -d : d;
}

} // namespace detail

// Dual paths whose classes form a basis of the free part of the homology the
// mode names: H_1(Z;Z) for absolute (closed paths, the pairing target of
// relative curves), H_1(Z,dZ;Z) for relative (closed and boundary-to-boundary
// paths, the pairing target of closed curves). The count is certified against
// the Smith normal form of the cellular chain complex.
inline std::vector<DualPath> evaluation_basis(const SurfaceComplex& c, BasisMode mode) {
    Topology topo(c);
    HomologyCoords hc(topo, mode);
    int r = hc.free_rank();
    if (r == 0) return {};

    detail::ForestInfo forest = detail::spanning_forest(topo);
    std::vector<DualPath> pool;

    // fundamental loops, one per non-tree gluing
    std::vector<std::size_t> gluing_order(c.gluings.size());
    for (std::size_t i = 0; i < c.gluings.size(); ++i) gluing_order[i] = i;
    std::sort(gluing_order.begin(), gluing_order.end(),
              [&](std::size_t x, std::size_t y) { return c.gluings[x].id < c.gluings[y].id; });
    std::vector<DualPath> loops;
    for (std::size_t gi : gluing_order) {
        bool is_tree = false;
        for (std::size_t f = 0; f < c.faces.size(); ++f)
            if (forest.parent_gluing[f] == static_cast<int>(gi)) is_tree = true;
        if (is_tree) continue;
        const Gluing& g = c.gluings[gi];
        std::size_t fa = topo.face_index(g.a.face_id);
        std::size_t fb = topo.face_index(g.b.face_id);
        DualPath p;
        p.kind = PathKind::closed;
        p.steps = detail::walk_down(topo, forest, fa);
        p.steps.push_back({g.a.face_id, g.id, 'a'});
        auto back = detail::walk_up(topo, forest, fb);
        p.steps.insert(p.steps.end(), back.begin(), back.end());
        loops.push_back(p);
    }

    // boundary ports, one free side per boundary component
    std::vector<DualPath> arcs;
    if (mode == BasisMode::relative) {
        std::map<int, SideRef> ports;
        for (auto [f, s] : topo.free_sides()) {
            int b = topo.boundary_component_of_side(f, s);
            SideRef sr{c.faces[f].id, s};
            auto it = ports.find(b);
            if (it == ports.end() || std::make_pair(sr.face_id, sr.side_index) <
                                         std::make_pair(it->second.face_id, it->second.side_index))
                ports[b] = sr;
        }
        std::vector<SideRef> plist;
        for (const auto& [b, sr] : ports) plist.push_back(sr);
        std::sort(plist.begin(), plist.end(), [](const SideRef& x, const SideRef& y) {
            return std::make_pair(x.face_id, x.side_index) < std::make_pair(y.face_id, y.side_index);
        });
        for (std::size_t i = 0; i < plist.size(); ++i)
            for (std::size_t j = i + 1; j < plist.size(); ++j) {
                std::size_t fi = topo.face_index(plist[i].face_id);
                std::size_t fj = topo.face_index(plist[j].face_id);
                if (forest.root[fi] != forest.root[fj]) continue;
                DualPath p;
                p.kind = PathKind::boundary_to_boundary;
                p.start = plist[i];
                p.end = plist[j];
                p.steps = detail::walk_up(topo, forest, fi);
                auto down = detail::walk_down(topo, forest, fj);
                p.steps.insert(p.steps.end(), down.begin(), down.end());
                arcs.push_back(p);
            }
    }

    auto same_root = [&](const DualPath& x, const DualPath& y) {
        std::size_t fx = topo.face_index(x.steps.empty() ? x.start.face_id : x.steps[0].face_id);
        std::size_t fy = topo.face_index(y.steps.empty() ? y.start.face_id : y.steps[0].face_id);
        return forest.root[fx] == forest.root[fy];
    };

    for (const DualPath& l : loops) pool.push_back(l);
    for (const DualPath& a : arcs) pool.push_back(a);
    // loop pairs
    for (std::size_t i = 0; i < loops.size(); ++i)
        for (std::size_t j = 0; j < loops.size(); ++j) {
            if (i == j || !same_root(loops[i], loops[j])) continue;
            DualPath q = loops[i];
            q.steps.insert(q.steps.end(), loops[j].steps.begin(), loops[j].steps.end());
            pool.push_back(q);
            DualPath rev = reverse_path(topo, loops[j]);
            DualPath q2 = loops[i];
            q2.steps.insert(q2.steps.end(), rev.steps.begin(), rev.steps.end());
            pool.push_back(q2);
        }
    // arcs with a loop detour at the root
    for (const DualPath& a : arcs)
        for (const DualPath& l : loops) {
            if (!same_root(a, l)) continue;
            std::size_t fi = topo.face_index(a.start.face_id);
            std::size_t up_len = detail::walk_up(topo, forest, fi).size();
            for (bool reversed : {false, true}) {
                DualPath p = a;
                const DualPath piece = reversed ? reverse_path(topo, l) : l;
                p.steps.insert(p.steps.begin() + static_cast<long>(up_len), piece.steps.begin(),
                               piece.steps.end());
                pool.push_back(p);
            }
        }

    // coordinates of every candidate
    std::vector<IntVec> rows;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        auto co = hc.coords(pushed_cellular_chain(topo, pool[i]));
        if (!co) continue;
        rows.push_back(*co);
        keep.push_back(i);
    }

    // first subset of r candidates with unimodular coordinate matrix
    std::vector<std::size_t> idx(static_cast<std::size_t>(r));
    std::function<bool(std::size_t, std::size_t)> pick = [&](std::size_t at, std::size_t from) {
        if (at == idx.size()) {
            IntMat m(idx.size(), IntVec(static_cast<std::size_t>(r)));
            for (std::size_t i = 0; i < idx.size(); ++i) m[i] = rows[idx[i]];
            return detail::abs_det(m) == 1;
        }
        for (std::size_t i = from; i < rows.size(); ++i) {
            idx[at] = i;
            if (pick(at + 1, i + 1)) return true;
        }
        return false;
    };
    if (!pick(0, 0))
        throw Error(ErrorCode::not_valid_complex,
                    "could not assemble a dual-path basis for this complex");
    std::vector<DualPath> out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        DualPath p = pool[keep[idx[i]]];
        p.id = "h" + std::to_string(i);
        out.push_back(p);
    }
    return out;
}

} // namespace qsc
