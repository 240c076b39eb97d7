#pragma once

#include "gstlink/geometry.hpp"
#include "gstlink/pd.hpp"
#include "gstlink/pillowcase.hpp"

#include <string>
#include <vector>

namespace gstlink {

struct BraidHalf {
    int strands = 0;
    int disks = 0;
    int bands = 0;
    int sign = 1;           // crossing sign of every band
    std::vector<int> word;  // generator indices, 1-based
};

struct WalkSegment {
    int half = 0;  // 0 for F+, 1 for F-, 2 for the connect-sum band
    enum Kind { disk, band_side, sum_side } kind = disk;
    int index = 0;  // disk number or band (crossing) number
    int part = 0;   // segment of the disk, or side of the band
    bool operator==(const WalkSegment&) const = default;
};

struct GammaInterval {
    EdgeLabel label;
    int position = 0;
    double u_begin = 0, u_end = 0;  // boundary interval of the half, fine units
};

struct DiskBandSurface {
    Params params;
    BraidHalf plus, minus;
    std::vector<WalkSegment> walk;  // boundary of the connected sum
    int walk_components = 0;
    int segments_total = 0;
    int slots_per_half = 0;
    std::vector<GammaInterval> gamma;
    LayoutConstants constants;
};

DiskBandSurface build_disk_band(const Params& P, const LayoutConstants& k = {});

using UV = Vec2;  // (u, rho) on a half of the fiber

struct RoutedArc {
    ArcKey key;
    int side = 1;                  // +1 on F+, -1 on F-
    int chord[2] = {0, 0};         // outer global index of the two chords it joins
    int pile[2] = {0, 0};          // pile rank of each end
    std::vector<UV> path[2];       // pile end -> spine, spine -> pile end
    double slide[2] = {0, 0};      // distance each end travelled along the knot
};

std::vector<RoutedArc> place_and_slide(const ArcMultiset& arcs, const DiskBandSurface& S);

struct Companions {
    int count = 0;
    std::vector<std::vector<int>> members;  // routed-arc indices per companion
};

Companions connect_ends(const std::vector<RoutedArc>& routed);

struct AssembledLink {
    Params params;
    std::vector<VertexRef> starts;
    std::vector<Orbit> orbits;  // canonical lifts, one per start
    std::vector<int> lift_index;
    PlanarDiagram pd;
    std::vector<std::vector<Vec3>> curves;  // 3D polylines, Q first
    int companion_count = 0;
};

AssembledLink assemble_link(const Params& P, const std::vector<VertexRef>& starts,
                            const LayoutConstants& k = {});

// 2D projection plus crossing extraction of closed 3D polylines
PlanarDiagram extract_pd(const std::vector<std::vector<Vec3>>& curves, const Vec3& view);

// brute force count of projected crossings, for checking extract_pd
long long count_crossings_brute(const std::vector<std::vector<Vec3>>& curves, const Vec3& view);

std::string render_svg(const PlanarDiagram& pd);

std::string companion_name(const VertexRef& start);

}  // namespace gstlink
