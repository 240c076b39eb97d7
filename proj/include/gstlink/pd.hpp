#pragma once

#include "gstlink/geometry.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gstlink {

enum class Role { knot_q, companion, unknown };

struct PDComponent {
    std::string name;
    Role role = Role::unknown;
    std::vector<int> arcs;  // semi-arc labels in orientation order
};

struct LayoutCrossing {
    Vec2 at;
    int over = 0;    // component of the over strand
    Vec2 over_dir;   // unit direction of the over strand
};

struct Layout {
    std::vector<std::vector<Vec2>> curves;  // closed, one per component, from the basepoint
    std::vector<LayoutCrossing> crossings;  // parallel to PlanarDiagram::crossings
};

// X[i,j,k,l]: i incoming under strand, then counterclockwise.
struct PlanarDiagram {
    std::vector<std::array<int, 4>> crossings;
    std::vector<PDComponent> components;
    std::vector<int> signs;  // optional, parallel to crossings; needed only for two-arc components
    std::optional<Layout> layout;
};

std::string pd_text(const PlanarDiagram& pd);
// components inferred from the strand pairs; labels increase along orientation
PlanarDiagram parse_pd_text(const std::string& text);
PlanarDiagram infer_components(std::vector<std::array<int, 4>> crossings);

std::string pd_json(const PlanarDiagram& pd);
PlanarDiagram pd_from_json(const std::string& text);

// +1 / -1; throws if the diagram has no component data
int crossing_sign(const PlanarDiagram& pd, size_t i);
std::vector<int> crossing_signs(const PlanarDiagram& pd);
// label -> component index
std::map<int, int> label_components(const PlanarDiagram& pd);
// index of the component holding a label, -1 if absent
int component_of(const PlanarDiagram& pd, int label);
// keep only the listed components and the crossings among them, relabelled
PlanarDiagram restrict_components(const PlanarDiagram& pd, const std::vector<int>& keep);

}  // namespace gstlink
