#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsc/error.hpp"
#include "qsc/snf.hpp"

namespace qsc {

// Addresses one boundary piece of one polygonal face.
struct SideRef {
    std::string face_id;
    int side_index = 0;

    bool operator==(const SideRef&) const = default;
    auto operator<=>(const SideRef&) const = default;
};

// compatible = the identification reverses the two sides' traversal
// directions (the orientation-consistent case); twisted preserves them.
enum class Alignment { compatible, twisted };

struct Gluing {
    std::string id;
    SideRef a;
    SideRef b;
    Alignment alignment = Alignment::compatible;

    bool operator==(const Gluing&) const = default;
};

struct Face {
    std::string id;
    int side_count = 1;

    bool operator==(const Face&) const = default;
};

struct SurfaceComplex {
    std::vector<Face> faces;
    std::vector<Gluing> gluings;

    bool operator==(const SurfaceComplex&) const = default;
};

struct SurfaceSummary {
    int component_count = 0;
    int euler_characteristic = 0;
    bool orientable = true;
    int boundary_component_count = 0;
    int h1_rank_abs = 0;
    int h1_rank_rel = 0;

    bool operator==(const SurfaceSummary&) const = default;
};

enum class PathKind { closed, boundary_to_boundary };

// One step crosses one gluing; `via` names the side the path exits through,
// which matters only when both sides of the gluing lie on the same face.
struct PathStep {
    std::string face_id;
    std::string gluing_id;
    char via = 'a';

    bool operator==(const PathStep&) const = default;
};

struct DualPath {
    std::string id;
    PathKind kind = PathKind::closed;
    std::vector<PathStep> steps;
    SideRef start; // used when kind == boundary_to_boundary
    SideRef end;

    bool operator==(const DualPath&) const = default;
};

// ---------------------------------------------------------------------------
// Derived structure shared by everything downstream of validation.
// ---------------------------------------------------------------------------

struct EdgeInfo {
    bool is_gluing = false;
    std::size_t gluing_index = 0; // when is_gluing
    std::size_t face = 0;         // when free: the side
    int side = 0;
    int from_orbit = 0; // canonical orientation: along side a / along the free side
    int to_orbit = 0;
};

class Topology {
  public:
    explicit Topology(const SurfaceComplex& c) : complex_(c) { build(); }

    const SurfaceComplex& complex() const { return complex_; }
    const SurfaceSummary& summary() const { return summary_; }

    std::size_t face_index(const std::string& id) const {
        auto it = face_index_.find(id);
        if (it == face_index_.end())
            throw Error(ErrorCode::dangling_side_ref, "unknown face '" + id + "'");
        return it->second;
    }
    std::size_t gluing_index(const std::string& id) const {
        auto it = gluing_index_.find(id);
        if (it == gluing_index_.end())
            throw Error(ErrorCode::dangling_side_ref, "unknown gluing '" + id + "'");
        return it->second;
    }
    bool has_face(const std::string& id) const { return face_index_.count(id) > 0; }
    bool has_gluing(const std::string& id) const { return gluing_index_.count(id) > 0; }

    int side_count(std::size_t f) const { return complex_.faces[f].side_count; }

    // -1 when the side is free, else index into gluings
    int gluing_of_side(std::size_t f, int s) const { return side_gluing_[side_key(f, s)]; }
    bool side_is_free(std::size_t f, int s) const { return gluing_of_side(f, s) < 0; }

    int corner_orbit(std::size_t f, int s) const { return corner_orbit_[corner_key(f, s)]; }
    int orbit_count() const { return orbit_count_; }

    const std::vector<EdgeInfo>& edges() const { return edges_; }
    std::size_t edge_of_gluing(std::size_t g) const { return gluing_edge_[g]; }
    std::size_t edge_of_free_side(std::size_t f, int s) const {
        return free_edge_.at(side_key(f, s));
    }

    int face_component(std::size_t f) const { return face_component_[f]; }
    int component_count() const { return summary_.component_count; }
    // Components are keyed by their lexicographically smallest face id.
    const std::string& component_key(int comp) const { return component_key_[comp]; }

    // +1/-1 face signs realizing the global orientation; all +1 exactly when
    // every face's reference orientation already agrees. Meaningful only when
    // orientable; filled with +1 otherwise.
    int face_sign(std::size_t f) const { return face_sign_[f]; }

    bool orbit_on_boundary(int orbit) const { return orbit_on_boundary_[orbit]; }
    int boundary_component_of_side(std::size_t f, int s) const {
        auto it = boundary_comp_.find(side_key(f, s));
        return it == boundary_comp_.end() ? -1 : it->second;
    }

    // cellular boundary maps, canonical edge orientations
    const IntMat& d1() const { return d1_; } // orbits x edges
    const IntMat& d2() const { return d2_; } // edges x faces

    std::vector<std::pair<std::size_t, int>> free_sides() const {
        std::vector<std::pair<std::size_t, int>> out;
        for (std::size_t f = 0; f < complex_.faces.size(); ++f)
            for (int s = 0; s < side_count(f); ++s)
                if (side_is_free(f, s)) out.emplace_back(f, s);
        return out;
    }

    // For a point at rank r along side `a` of gluing g, its position along the
    // other side: compatible identifications reverse the parameter.
    static bool b_side_reverses(Alignment al) { return al == Alignment::compatible; }

  private:
    std::size_t side_key(std::size_t f, int s) const { return face_offset_[f] + s; }
    std::size_t corner_key(std::size_t f, int s) const { return face_offset_[f] + s; }

    void build() {
        std::size_t nf = complex_.faces.size();
        for (std::size_t i = 0; i < nf; ++i) {
            if (complex_.faces[i].side_count < 1)
                throw Error(ErrorCode::bad_config,
                            "face '" + complex_.faces[i].id + "' needs at least one side");
            if (!face_index_.emplace(complex_.faces[i].id, i).second)
                throw Error(ErrorCode::duplicate_id, "face id '" + complex_.faces[i].id + "'");
        }
        face_offset_.resize(nf + 1, 0);
        for (std::size_t i = 0; i < nf; ++i)
            face_offset_[i + 1] = face_offset_[i] + complex_.faces[i].side_count;
        std::size_t total_sides = face_offset_[nf];

        side_gluing_.assign(total_sides, -1);
        for (std::size_t g = 0; g < complex_.gluings.size(); ++g) {
            const Gluing& gl = complex_.gluings[g];
            if (!gluing_index_.emplace(gl.id, g).second)
                throw Error(ErrorCode::duplicate_id, "gluing id '" + gl.id + "'");
            for (const SideRef* sr : {&gl.a, &gl.b}) {
                auto it = face_index_.find(sr->face_id);
                if (it == face_index_.end())
                    throw Error(ErrorCode::dangling_side_ref,
                                "gluing '" + gl.id + "' references face '" + sr->face_id + "'");
                if (sr->side_index < 0 || sr->side_index >= complex_.faces[it->second].side_count)
                    throw Error(ErrorCode::dangling_side_ref,
                                "gluing '" + gl.id + "' references side " +
                                    std::to_string(sr->side_index) + " of face '" + sr->face_id +
                                    "'");
            }
            if (gl.a == gl.b)
                throw Error(ErrorCode::side_glued_twice,
                            "gluing '" + gl.id + "' glues a side to itself");
            for (const SideRef* sr : {&gl.a, &gl.b}) {
                std::size_t key = side_key(face_index_[sr->face_id], sr->side_index);
                if (side_gluing_[key] >= 0)
                    throw Error(ErrorCode::side_glued_twice,
                                "side " + sr->face_id + "." + std::to_string(sr->side_index) +
                                    " appears in more than one gluing");
                side_gluing_[key] = static_cast<int>(g);
            }
        }

        // corner orbits via union-find; corner s sits at the start of side s
        std::vector<int> parent(total_sides);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
            return x;
        };
        auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
        auto corner_of = [&](const SideRef& sr, bool start) {
            std::size_t f = face_index_[sr.face_id];
            int k = complex_.faces[f].side_count;
            int c = start ? sr.side_index : (sr.side_index + 1) % k;
            return static_cast<int>(corner_key(f, c));
        };
        for (const Gluing& gl : complex_.gluings) {
            if (gl.alignment == Alignment::compatible) {
                unite(corner_of(gl.a, true), corner_of(gl.b, false));
                unite(corner_of(gl.a, false), corner_of(gl.b, true));
            } else {
                unite(corner_of(gl.a, true), corner_of(gl.b, true));
                unite(corner_of(gl.a, false), corner_of(gl.b, false));
            }
        }
        corner_orbit_.assign(total_sides, -1);
        orbit_count_ = 0;
        std::map<int, int> root_to_orbit;
        for (std::size_t i = 0; i < total_sides; ++i) {
            int r = find(static_cast<int>(i));
            auto it = root_to_orbit.find(r);
            if (it == root_to_orbit.end()) {
                root_to_orbit.emplace(r, orbit_count_);
                corner_orbit_[i] = orbit_count_++;
            } else {
                corner_orbit_[i] = it->second;
            }
        }

        // edges with canonical orientation
        gluing_edge_.assign(complex_.gluings.size(), 0);
        for (std::size_t g = 0; g < complex_.gluings.size(); ++g) {
            const Gluing& gl = complex_.gluings[g];
            EdgeInfo e;
            e.is_gluing = true;
            e.gluing_index = g;
            e.from_orbit = corner_orbit_[corner_of(gl.a, true)];
            e.to_orbit = corner_orbit_[corner_of(gl.a, false)];
            gluing_edge_[g] = edges_.size();
            edges_.push_back(e);
        }
        for (std::size_t f = 0; f < nf; ++f)
            for (int s = 0; s < side_count(f); ++s)
                if (side_is_free(f, s)) {
                    EdgeInfo e;
                    e.is_gluing = false;
                    e.face = f;
                    e.side = s;
                    SideRef sr{complex_.faces[f].id, s};
                    e.from_orbit = corner_orbit_[corner_of(sr, true)];
                    e.to_orbit = corner_orbit_[corner_of(sr, false)];
                    free_edge_[side_key(f, s)] = edges_.size();
                    edges_.push_back(e);
                }

        // connected components of the face-adjacency graph
        face_component_.assign(nf, -1);
        int comps = 0;
        std::vector<std::vector<std::size_t>> adj(nf);
        for (const Gluing& gl : complex_.gluings) {
            std::size_t fa = face_index_[gl.a.face_id];
            std::size_t fb = face_index_[gl.b.face_id];
            adj[fa].push_back(fb);
            adj[fb].push_back(fa);
        }
        // deterministic order: BFS from faces sorted by id
        std::vector<std::size_t> order(nf);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return complex_.faces[x].id < complex_.faces[y].id;
        });
        for (std::size_t start : order) {
            if (face_component_[start] >= 0) continue;
            component_key_.push_back(complex_.faces[start].id);
            std::vector<std::size_t> stack{start};
            face_component_[start] = comps;
            while (!stack.empty()) {
                std::size_t f = stack.back();
                stack.pop_back();
                for (std::size_t g : adj[f])
                    if (face_component_[g] < 0) {
                        face_component_[g] = comps;
                        stack.push_back(g);
                    }
            }
            ++comps;
        }

        // orientability: face signs consistent across gluings
        face_sign_.assign(nf, 0);
        bool orientable = true;
        for (std::size_t start : order) {
            if (face_sign_[start] != 0) continue;
            face_sign_[start] = 1;
            std::vector<std::size_t> stack{start};
            while (!stack.empty()) {
                std::size_t f = stack.back();
                stack.pop_back();
                for (const Gluing& gl : complex_.gluings) {
                    std::size_t fa = face_index_[gl.a.face_id];
                    std::size_t fb = face_index_[gl.b.face_id];
                    if (fa != f && fb != f) continue;
                    int want = gl.alignment == Alignment::compatible ? 1 : -1;
                    std::size_t other = fa == f ? fb : fa;
                    int expect = face_sign_[f] * want;
                    if (face_sign_[other] == 0) {
                        face_sign_[other] = expect;
                        stack.push_back(other);
                    } else if (face_sign_[other] != expect) {
                        orientable = false;
                    }
                }
            }
        }
        if (!orientable) std::fill(face_sign_.begin(), face_sign_.end(), 1);

        // boundary: free sides form circles over corner orbits
        orbit_on_boundary_.assign(orbit_count_, false);
        {
            std::vector<int> bparent(orbit_count_);
            std::iota(bparent.begin(), bparent.end(), 0);
            std::function<int(int)> bfind = [&](int x) {
                while (bparent[x] != x) { bparent[x] = bparent[bparent[x]]; x = bparent[x]; }
                return x;
            };
            for (const EdgeInfo& e : edges_)
                if (!e.is_gluing) {
                    orbit_on_boundary_[e.from_orbit] = true;
                    orbit_on_boundary_[e.to_orbit] = true;
                    bparent[bfind(e.from_orbit)] = bfind(e.to_orbit);
                }
            std::map<int, int> groups;
            for (const EdgeInfo& e : edges_)
                if (!e.is_gluing) {
                    int r = bfind(e.from_orbit);
                    if (!groups.count(r)) {
                        int id = static_cast<int>(groups.size());
                        groups.emplace(r, id);
                    }
                }
            for (const EdgeInfo& e : edges_)
                if (!e.is_gluing)
                    boundary_comp_[side_key(e.face, e.side)] = groups[bfind(e.from_orbit)];
            summary_.boundary_component_count = static_cast<int>(groups.size());
        }

        // chain complex
        std::size_t ne = edges_.size();
        d1_.assign(orbit_count_, IntVec(ne, 0));
        for (std::size_t e = 0; e < ne; ++e) {
            d1_[edges_[e].to_orbit][e] += 1;
            d1_[edges_[e].from_orbit][e] -= 1;
        }
        d2_.assign(ne, IntVec(nf, 0));
        for (std::size_t f = 0; f < nf; ++f)
            for (int s = 0; s < side_count(f); ++s) {
                int g = gluing_of_side(f, s);
                if (g < 0) {
                    d2_[edge_of_free_side(f, s)][f] += 1;
                } else {
                    const Gluing& gl = complex_.gluings[g];
                    bool is_a = face_index_[gl.a.face_id] == f && gl.a.side_index == s;
                    int coeff = is_a ? 1 : (gl.alignment == Alignment::compatible ? -1 : 1);
                    d2_[gluing_edge_[g]][f] += coeff;
                }
            }

        int V = orbit_count_;
        int E = static_cast<int>(ne);
        int F = static_cast<int>(nf);
        summary_.component_count = comps;
        summary_.euler_characteristic = V - E + F;
        summary_.orientable = orientable;
        summary_.h1_rank_abs = homology_rank(false);
        summary_.h1_rank_rel = homology_rank(true);
    }

    int homology_rank(bool relative) const {
        // pick the generators that survive in the (relative) complex
        std::vector<std::size_t> edge_sel;
        for (std::size_t e = 0; e < edges_.size(); ++e)
            if (!relative || edges_[e].is_gluing) edge_sel.push_back(e);
        std::vector<std::size_t> orbit_sel;
        for (int v = 0; v < orbit_count_; ++v)
            if (!relative || !orbit_on_boundary_[v]) orbit_sel.push_back(static_cast<std::size_t>(v));

        IntMat b1(orbit_sel.size(), IntVec(edge_sel.size(), 0));
        for (std::size_t i = 0; i < orbit_sel.size(); ++i)
            for (std::size_t j = 0; j < edge_sel.size(); ++j)
                b1[i][j] = d1_[orbit_sel[i]][edge_sel[j]];
        IntMat b2(edge_sel.size(), IntVec(complex_.faces.size(), 0));
        for (std::size_t i = 0; i < edge_sel.size(); ++i)
            for (std::size_t j = 0; j < complex_.faces.size(); ++j)
                b2[i][j] = d2_[edge_sel[i]][j];

        std::size_t rank_d1 = b1.empty() || b1[0].empty() ? 0 : int_rank(b1);
        std::size_t rank_d2 = b2.empty() || b2[0].empty() ? 0 : int_rank(b2);
        return static_cast<int>(edge_sel.size() - rank_d1 - rank_d2);
    }

    SurfaceComplex complex_;
    SurfaceSummary summary_;
    std::map<std::string, std::size_t> face_index_;
    std::map<std::string, std::size_t> gluing_index_;
    std::vector<std::size_t> face_offset_;
    std::vector<int> side_gluing_;
    std::vector<int> corner_orbit_;
    int orbit_count_ = 0;
    std::vector<EdgeInfo> edges_;
    std::vector<std::size_t> gluing_edge_;
    std::map<std::size_t, std::size_t> free_edge_;
    std::vector<int> face_component_;
    std::vector<std::string> component_key_;
    std::vector<int> face_sign_;
    std::vector<bool> orbit_on_boundary_;
    std::map<std::size_t, int> boundary_comp_;
    IntMat d1_;
    IntMat d2_;
};

inline SurfaceSummary validate_complex(const SurfaceComplex& c) { return Topology(c).summary(); }

// Splits a free side in two; the face gains one side, the surface itself is
// unchanged. Side indices after the split shift up by one.
inline SurfaceComplex subdivide_side(const SurfaceComplex& c, const SideRef& s) {
    Topology topo(c);
    std::size_t f = topo.face_index(s.face_id);
    if (s.side_index < 0 || s.side_index >= topo.side_count(f))
        throw Error(ErrorCode::dangling_side_ref,
                    "side " + s.face_id + "." + std::to_string(s.side_index));
    if (!topo.side_is_free(f, s.side_index))
        throw Error(ErrorCode::side_not_free,
                    "side " + s.face_id + "." + std::to_string(s.side_index) + " is glued");
    SurfaceComplex out = c;
    out.faces[f].side_count += 1;
    for (Gluing& g : out.gluings)
        for (SideRef* sr : {&g.a, &g.b})
            if (sr->face_id == s.face_id && sr->side_index > s.side_index) sr->side_index += 1;
    return out;
}

} // namespace qsc
