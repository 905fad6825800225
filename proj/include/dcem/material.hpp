// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcem/errors.hpp"

namespace dcem {

// EM surface description. MTL files only carry names; the EM properties
// come from a sidecar table (see MaterialTable::parse_sidecar).
// A missing penetration_loss_db means the surface is opaque: rays are
// never transmitted through it.
struct Material {
    std::string name;
    std::optional<double> thickness_mm;
    double reflection_coefficient = 0.0;        // field magnitude, [0,1]
    std::optional<double> penetration_loss_db;  // absent -> opaque
    double scattering_coefficient = 0.0;        // effective-roughness S, [0,1]

    void validate() const {
        if (reflection_coefficient < 0.0 || reflection_coefficient > 1.0)
            throw SceneError("material '" + name + "': reflection coefficient out of [0,1]");
        if (penetration_loss_db && *penetration_loss_db < 0.0)
            throw SceneError("material '" + name + "': negative penetration loss");
        if (scattering_coefficient < 0.0 || scattering_coefficient > 1.0)
            throw SceneError("material '" + name + "': scattering coefficient out of [0,1]");
        if (thickness_mm && *thickness_mm < 0.0)
            throw SceneError("material '" + name + "': negative thickness");
    }
};

class MaterialTable {
  public:
    // Index of a material, inserting if new. Index 0 is reserved for the
    // first inserted material.
    uint32_t add(Material m) {
        m.validate();
        auto it = index_.find(m.name);
        if (it != index_.end()) {
            materials_[it->second] = std::move(m);
            return it->second;
        }
        uint32_t id = static_cast<uint32_t>(materials_.size());
        index_.emplace(m.name, id);
        materials_.push_back(std::move(m));
        return id;
    }

    std::optional<uint32_t> find(const std::string &name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    const Material &operator[](uint32_t id) const { return materials_.at(id); }
    Material &operator[](uint32_t id) { return materials_.at(id); }
    size_t size() const { return materials_.size(); }
    bool empty() const { return materials_.empty(); }
    const std::vector<Material> &all() const { return materials_; }

    // Reference material set: reflection magnitudes and penetration losses
    // for the wall/glass surfaces the simulator is calibrated against.
    // Outdoor walls are opaque; indoor walls and glass are penetrable.
    static MaterialTable builtin() {
        MaterialTable t;
        t.add({"wall_outdoor", std::nullopt, 0.80, std::nullopt, 0.0});
        t.add({"wall_indoor", 10.0, 0.70, 20.0, 0.0});
        t.add({"glass_indoor", 5.0, 0.74, 5.0, 0.0});
        return t;
    }

    // Line-oriented sidecar format, one material per line:
    //   name thickness_mm reflection penetration_db scattering
    // with '-' for absent optional fields and '#' starting a comment.
    static MaterialTable parse_sidecar(std::istream &in) {
        MaterialTable t;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            std::istringstream ls(line);
            std::string name;
            if (!(ls >> name))
                continue; // blank
            std::string thick, refl, pen, scat;
            if (!(ls >> thick >> refl >> pen >> scat))
                throw SceneError(lineno, "expected: name thickness refl pen scat");
            std::string extra;
            if (ls >> extra)
                throw SceneError(lineno, "trailing tokens after material record");
            Material m;
            m.name = name;
            try {
                if (thick != "-")
                    m.thickness_mm = std::stod(thick);
                if (refl == "-")
                    throw SceneError(lineno, "reflection coefficient is required");
                m.reflection_coefficient = std::stod(refl);
                if (pen != "-")
                    m.penetration_loss_db = std::stod(pen);
                if (scat != "-")
                    m.scattering_coefficient = std::stod(scat);
            } catch (const SceneError &) {
                throw;
            } catch (const std::exception &) {
                throw SceneError(lineno, "malformed numeric field");
            }
            try {
                m.validate();
            } catch (const SceneError &e) {
                throw SceneError(lineno, e.what());
            }
            t.add(std::move(m));
        }
        return t;
    }

  private:
    std::vector<Material> materials_;
    std::unordered_map<std::string, uint32_t> index_;
};

} // namespace dcem
