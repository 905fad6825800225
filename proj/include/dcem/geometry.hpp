// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcem/errors.hpp"
#include "dcem/material.hpp"
#include "dcem/vec.hpp"

namespace dcem {

inline constexpr uint32_t kInvalidIndex = 0xffffffffu;
inline constexpr double kMinTriangleArea = 1e-12; // m^2, degenerate cutoff

struct Triangle {
    Vec3 v[3];
    uint32_t material_id = 0;
    uint32_t object_id = 0; // 0 = static world

    Vec3 raw_normal() const { return cross(v[1] - v[0], v[2] - v[0]); }
    Vec3 normal() const { return normalized(raw_normal()); }
    double area() const { return 0.5 * norm(raw_normal()); }
    Vec3 centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }
};

// A wedge formed by up to two faces meeting at a straight edge. The frame
// (tangent0, normal0) spans the plane perpendicular to the edge; angles
// through the exterior (air) region are measured from tangent0 towards
// normal0, so the 0-face lies at 0 and the n-face at exterior_angle.
// Boundary edges of open sheets are half-planes with exterior angle 2*pi.
struct DiffractionEdge {
    Vec3 endpoints[2];
    Vec3 adjacent_face_normals[2];
    double wedge_exterior_angle = 0.0; // (pi, 2*pi]
    uint32_t edge_id = 0;
    // Support data for angle measurement and occlusion bookkeeping.
    Vec3 tangent0;   // unit, in face 0, perpendicular to the edge, into the face
    uint32_t faces[2] = {kInvalidIndex, kInvalidIndex}; // faces[1] invalid for half-planes

    Vec3 direction() const { return normalized(endpoints[1] - endpoints[0]); }
    double length() const { return distance(endpoints[0], endpoints[1]); }

    // Angle of the (non-edge-parallel component of) direction d from the
    // 0-face, swept through the air wedge. Returns a value in [0, 2*pi).
    double wedge_angle_of(const Vec3 &d) const {
        Vec3 e = direction();
        Vec3 p = d - e * dot(d, e);
        double a = std::atan2(dot(p, adjacent_face_normals[0]), dot(p, tangent0));
        if (a < 0.0)
            a += 2.0 * std::numbers::pi;
        return a;
    }
};

struct ObjectInfo {
    std::string name;
    std::vector<uint32_t> triangle_ids;
};

struct LoadReport {
    std::vector<std::string> warnings;
    size_t degenerate_dropped = 0;
    size_t unmatched_materials = 0;
    size_t non_manifold_edges = 0;
};

// Immutable between frame boundaries; apply_frame_transform returns a new
// snapshot so concurrent readers of the previous frame stay valid.
struct SceneGeometry {
    std::vector<Triangle> triangles;
    MaterialTable materials;
    std::vector<DiffractionEdge> diffraction_edges;
    std::vector<ObjectInfo> objects; // index == object_id, [0] is the static world
    uint64_t structure_version = 0;  // bumped on add/remove, not on motion
    double min_exterior_angle = std::numbers::pi + 0.35;

    const Material &material_of(const Triangle &t) const { return materials[t.material_id]; }

    uint32_t object_id_by_name(const std::string &name) const {
        for (uint32_t i = 0; i < objects.size(); ++i)
            if (objects[i].name == name)
                return i;
        throw SceneError("unknown object '" + name + "'");
    }
};

namespace detail {

// Edges are matched by quantized endpoint position so that meshes with
// duplicated (unindexed) vertices still weld.
struct EdgeKey {
    int64_t a[3], b[3];
    bool operator==(const EdgeKey &o) const {
        for (int i = 0; i < 3; ++i)
            if (a[i] != o.a[i] || b[i] != o.b[i])
                return false;
        return true;
    }
    bool operator<(const EdgeKey &o) const {
        for (int i = 0; i < 3; ++i) {
            if (a[i] != o.a[i])
                return a[i] < o.a[i];
            if (b[i] != o.b[i])
                return b[i] < o.b[i];
        }
        return false;
    }
};

inline void quantize(const Vec3 &v, int64_t out[3]) {
    constexpr double kGrid = 1e9; // 1 nm grid
    out[0] = static_cast<int64_t>(std::llround(v.x * kGrid));
    out[1] = static_cast<int64_t>(std::llround(v.y * kGrid));
    out[2] = static_cast<int64_t>(std::llround(v.z * kGrid));
}

inline EdgeKey make_edge_key(const Vec3 &p, const Vec3 &q) {
    int64_t kp[3], kq[3];
    quantize(p, kp);
    quantize(q, kq);
    bool swap = false;
    for (int i = 0; i < 3; ++i) {
        if (kp[i] != kq[i]) {
            swap = kp[i] > kq[i];
            break;
        }
    }
    EdgeKey k{};
    for (int i = 0; i < 3; ++i) {
        k.a[i] = swap ? kq[i] : kp[i];
        k.b[i] = swap ? kp[i] : kq[i];
    }
    return k;
}

// In-face perpendicular of edge (p,q) pointing towards the opposite vertex.
inline Vec3 in_face_tangent(const Vec3 &p, const Vec3 &q, const Vec3 &opposite) {
    Vec3 e = normalized(q - p);
    Vec3 w = opposite - p;
    return normalized(w - e * dot(w, e));
}

} // namespace detail

// Marks every edge whose wedge exterior angle exceeds min_exterior_angle.
// Open-boundary edges (a single adjacent face) are half-planes with
// exterior angle 2*pi and are always marked. Edges shared by more than two
// faces are non-manifold and skipped. The result does not depend on the
// mesh winding: if the signed dihedral comes out on the reflex side the
// wedge frame is flipped so the stored air region is the larger one.
inline std::vector<DiffractionEdge>
extract_diffraction_edges(const SceneGeometry &geometry, double min_exterior_angle,
                          LoadReport *report = nullptr) {
    struct FaceEdge {
        uint32_t face;
        uint32_t corner; // edge (corner, corner+1)
    };
    std::map<detail::EdgeKey, std::vector<FaceEdge>> edge_map;
    for (uint32_t f = 0; f < geometry.triangles.size(); ++f) {
        const Triangle &t = geometry.triangles[f];
        for (uint32_t c = 0; c < 3; ++c) {
            detail::EdgeKey k = detail::make_edge_key(t.v[c], t.v[(c + 1) % 3]);
            edge_map[k].push_back({f, c});
        }
    }

    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::vector<DiffractionEdge> edges;
    for (auto &[key, faces] : edge_map) {
        if (faces.size() > 2) {
            if (report)
                ++report->non_manifold_edges;
            continue;
        }
        const Triangle &t0 = geometry.triangles[faces[0].face];
        Vec3 p = t0.v[faces[0].corner];
        Vec3 q = t0.v[(faces[0].corner + 1) % 3];
        Vec3 opp0 = t0.v[(faces[0].corner + 2) % 3];
        Vec3 n0 = t0.normal();
        Vec3 tan0 = detail::in_face_tangent(p, q, opp0);

        DiffractionEdge e;
        e.endpoints[0] = p;
        e.endpoints[1] = q;
        e.faces[0] = faces[0].face;

        if (faces.size() == 1) {
            // Half-plane: air wraps fully around the sheet.
            e.adjacent_face_normals[0] = n0;
            e.adjacent_face_normals[1] = -n0;
            e.tangent0 = tan0;
            e.wedge_exterior_angle = kTwoPi;
        } else {
            const Triangle &t1 = geometry.triangles[faces[1].face];
            Vec3 opp1 = t1.v[(faces[1].corner + 2) % 3];
            Vec3 n1 = t1.normal();
            Vec3 tan1 = detail::in_face_tangent(p, q, opp1);
            // Sweep from face 0's surface direction towards n0; the first
            // crossing of face 1's surface bounds the air wedge.
            double a = std::atan2(dot(tan1, n0), dot(tan1, tan0));
            if (a < 0.0)
                a += kTwoPi;
            if (a < std::numbers::pi) {
                // Reflex side is the air region; flip the frame.
                n0 = -n0;
                n1 = -n1;
                a = kTwoPi - a;
            }
            if (a <= min_exterior_angle)
                continue;
            e.adjacent_face_normals[0] = n0;
            e.adjacent_face_normals[1] = n1;
            e.tangent0 = tan0;
            e.wedge_exterior_angle = a;
            e.faces[1] = faces[1].face;
        }
        if (e.wedge_exterior_angle > min_exterior_angle) {
            e.edge_id = static_cast<uint32_t>(edges.size());
            edges.push_back(e);
        }
    }
    return edges;
}

// Rigidly transforms one object's triangles and refreshes the diffraction
// edges adjacent to them. Returns the new frame snapshot plus the indices
// of moved triangles (the refit set for the BVH).
inline std::pair<SceneGeometry, std::vector<uint32_t>>
apply_frame_transform(const SceneGeometry &geometry, uint32_t object_id,
                      const RigidTransform &transform) {
    if (object_id >= geometry.objects.size())
        throw SceneError("apply_frame_transform: unknown object id " + std::to_string(object_id));
    if (!transform.is_rigid())
        throw std::invalid_argument("apply_frame_transform: rotation is not orthonormal");

    SceneGeometry out = geometry;
    const std::vector<uint32_t> &moved = geometry.objects[object_id].triangle_ids;
    std::vector<bool> is_moved(out.triangles.size(), false);
    for (uint32_t id : moved) {
        Triangle &t = out.triangles[id];
        for (Vec3 &v : t.v)
            v = transform.apply(v);
        is_moved[id] = true;
    }

    for (DiffractionEdge &e : out.diffraction_edges) {
        bool f0 = e.faces[0] != kInvalidIndex && is_moved[e.faces[0]];
        bool f1 = e.faces[1] != kInvalidIndex && is_moved[e.faces[1]];
        if (f0 && (f1 || e.faces[1] == kInvalidIndex)) {
            for (Vec3 &p : e.endpoints)
                p = transform.apply(p);
            for (Vec3 &n : e.adjacent_face_normals)
                n = transform.apply_direction(n);
            e.tangent0 = transform.apply_direction(e.tangent0);
        } else if (f0 || f1) {
            // Edge welded between a moved and a static face: the wedge no
            // longer exists as built. Re-extraction would be needed; such
            // scenes are not produced by the loaders (objects are separate
            // bodies), so degrade it to a half-plane on the static face.
            uint32_t keep = f0 ? e.faces[1] : e.faces[0];
            const Triangle &t = out.triangles[keep];
            e.faces[0] = keep;
            e.faces[1] = kInvalidIndex;
            e.adjacent_face_normals[0] = t.normal();
            e.adjacent_face_normals[1] = -t.normal();
            // endpoints unchanged; tangent recomputed against the kept face
            Vec3 p = e.endpoints[0], q = e.endpoints[1];
            Vec3 opp = t.v[0] + t.v[1] + t.v[2] - p - q; // remaining vertex of the face
            e.tangent0 = detail::in_face_tangent(p, q, opp);
            e.wedge_exterior_angle = 2.0 * std::numbers::pi;
        }
    }
    return {std::move(out), moved};
}

} // namespace dcem
