// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "dcem/geometry.hpp"

namespace dcem {

struct LoadOptions {
    double scale = 1.0; // uniform scale applied to vertices (OBJ assumed meters)
    double min_exterior_angle = std::numbers::pi + 0.35;
    bool extract_edges = true;
};

namespace detail {

// Parses the vertex-index part of an OBJ face token ("7", "7/1", "7//3",
// "-2/..."). Only the position index matters here.
inline int parse_face_index(const std::string &token, int lineno) {
    size_t slash = token.find('/');
    std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    try {
        size_t pos = 0;
        int idx = std::stoi(head, &pos);
        if (pos != head.size() || idx == 0)
            throw SceneError(lineno, "bad face index '" + token + "'");
        return idx;
    } catch (const SceneError &) {
        throw;
    } catch (const std::exception &) {
        throw SceneError(lineno, "bad face index '" + token + "'");
    }
}

} // namespace detail

// Wavefront OBJ subset: v, f, g/o, usemtl, mtllib; everything else is
// ignored. Faces with more than three vertices are fan-triangulated.
// Negative indices are relative to the vertices defined so far, per the
// OBJ convention. Materials are recorded by usemtl name as placeholder
// entries; bind_materials resolves them against a sidecar table.
inline SceneGeometry load_obj(std::istream &in, const LoadOptions &opts = {},
                              LoadReport *report = nullptr) {
    SceneGeometry geo;
    geo.min_exterior_angle = opts.min_exterior_angle;
    geo.objects.push_back({"", {}}); // object 0: static world / ungrouped

    std::vector<Vec3> vertices;
    uint32_t current_object = 0;
    uint32_t current_material = kInvalidIndex;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#')
            continue;

        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z))
                throw SceneError(lineno, "malformed vertex record");
            vertices.push_back(Vec3{x, y, z} * opts.scale);
        } else if (tag == "f") {
            std::vector<uint32_t> idx;
            std::string token;
            while (ls >> token) {
                int raw = detail::parse_face_index(token, lineno);
                int64_t resolved = raw > 0 ? raw - 1 : static_cast<int64_t>(vertices.size()) + raw;
                if (resolved < 0 || resolved >= static_cast<int64_t>(vertices.size()))
                    throw SceneError(lineno, "face index out of range");
                idx.push_back(static_cast<uint32_t>(resolved));
            }
            if (idx.size() < 3)
                throw SceneError(lineno, "face with fewer than 3 vertices");
            if (current_material == kInvalidIndex) {
                Material def;
                def.name = "default";
                def.reflection_coefficient = 0.5;
                current_material = geo.materials.add(def);
            }
            for (size_t i = 1; i + 1 < idx.size(); ++i) {
                Triangle t;
                t.v[0] = vertices[idx[0]];
                t.v[1] = vertices[idx[i]];
                t.v[2] = vertices[idx[i + 1]];
                t.material_id = current_material;
                t.object_id = current_object;
                if (t.area() <= kMinTriangleArea) {
                    if (report) {
                        ++report->degenerate_dropped;
                        if (report->degenerate_dropped == 1)
                            report->warnings.push_back("degenerate triangle(s) dropped at load");
                    }
                    continue;
                }
                uint32_t tid = static_cast<uint32_t>(geo.triangles.size());
                geo.triangles.push_back(t);
                geo.objects[current_object].triangle_ids.push_back(tid);
            }
        } else if (tag == "g" || tag == "o") {
            std::string name;
            ls >> name;
            if (name.empty() || name == "default") {
                current_object = 0;
            } else {
                current_object = kInvalidIndex;
                for (uint32_t i = 0; i < geo.objects.size(); ++i)
                    if (geo.objects[i].name == name)
                        current_object = i;
                if (current_object == kInvalidIndex) {
                    current_object = static_cast<uint32_t>(geo.objects.size());
                    geo.objects.push_back({name, {}});
                }
            }
        } else if (tag == "usemtl") {
            std::string name;
            if (!(ls >> name))
                throw SceneError(lineno, "usemtl without a name");
            if (auto id = geo.materials.find(name)) {
                current_material = *id;
            } else {
                Material placeholder;
                placeholder.name = name;
                placeholder.reflection_coefficient = 0.5;
                current_material = geo.materials.add(placeholder);
            }
        } else if (tag == "mtllib") {
            // Material names come from usemtl; the EM sidecar supersedes
            // the .mtl contents, so the library reference is informational.
            continue;
        }
        // all other records (vn, vt, s, ...) ignored
    }

    geo.structure_version = 1;
    if (opts.extract_edges)
        geo.diffraction_edges = extract_diffraction_edges(geo, opts.min_exterior_angle, report);
    return geo;
}

// Replaces the placeholder materials recorded at load with entries from
// `table`, binding unmatched names to `default_name` and counting them.
// Returns the number of unmatched material names.
inline size_t bind_materials(SceneGeometry &geometry, const MaterialTable &table,
                             const std::string &default_name, LoadReport *report = nullptr) {
    if (table.empty())
        throw SceneError("bind_materials: empty material table");
    auto def = table.find(default_name);
    if (!def)
        throw SceneError("bind_materials: default material '" + default_name + "' not in table");

    size_t unmatched = 0;
    MaterialTable bound;
    std::vector<uint32_t> remap(geometry.materials.size());
    for (uint32_t i = 0; i < geometry.materials.size(); ++i) {
        const std::string &name = geometry.materials[i].name;
        if (auto id = table.find(name)) {
            remap[i] = bound.add(table[*id]);
        } else {
            ++unmatched;
            if (report)
                report->warnings.push_back("material '" + name + "' not in table, using '" +
                                           default_name + "'");
            Material fallback = table[*def];
            fallback.name = name; // keep the scene-facing name
            remap[i] = bound.add(fallback);
        }
    }
    for (Triangle &t : geometry.triangles)
        t.material_id = remap[t.material_id];
    geometry.materials = std::move(bound);
    if (report)
        report->unmatched_materials += unmatched;
    return unmatched;
}

} // namespace dcem
