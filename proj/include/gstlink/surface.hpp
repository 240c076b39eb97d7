#pragma once

#include "gstlink/pillowcase.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gstlink {

// Annulus subdivided on three levels (outer 0, middle 1, inner 2) in a sheared
// fine coordinate j in [0,T), T = 2*circle_size. Physical position on level l is
// j + l*c, so every spanning chord is the vertical pair of edges over j = 2g.
// Outer and inner horizontal edges are glued (a,b,+) <-> (a,b,-), v <-> d+1-v.
struct SurfaceComplex {
    Params params;
    int T = 0;
    int num_vertices = 0;
    std::vector<int> vertex_id;                  // raw (l*T + j) -> glued id
    std::vector<std::pair<int, int>> edge_ends;  // glued vertex ids
    std::vector<int> hedge, hedge_sign;          // raw horizontal (l*T + j) -> edge id, orientation
    std::vector<int> vedge;                      // raw vertical (l*T + j), l in {0,1} -> edge id
    std::vector<std::vector<std::pair<int, int>>> faces;  // (edge, sign), counterclockwise
    int puncture_face = 0;
    int euler_closed = 0;  // reglued annulus with the puncture filled
    int euler = 0;         // with the puncture removed
    int genus = 0;
    int boundary = 1;
    int pre_gluing_euler = 0;
    // homology basis: leftover edges of a BFS tree / dual BFS cotree
    std::vector<int> basis_edges;
    std::vector<int> dual_parent_edge, dual_parent_face, dual_order;
    std::string basis_description;
};

SurfaceComplex build_fiber_complex(const Params& P);

struct Traversal {
    bool boundary = false;
    int rect_first = 0, rect_last = 0;  // annulus rectangles crossed (outer edge positions)
    VertexRef entry, exit;
};

struct CurveOnSurface {
    Params params;
    VertexRef start;
    std::vector<Traversal> steps;
    std::vector<std::pair<int, int>> chain;  // (edge id, +1/-1)
    std::vector<int> vertices;               // glued vertex ids visited
};

CurveOnSurface curve_on_fiber(const Orbit& o, const SurfaceComplex& K);
// boundary of a single face, as a test loop
CurveOnSurface face_loop(const SurfaceComplex& K, int face);

std::vector<long long> homology_class(const CurveOnSurface& c, const SurfaceComplex& K);

struct CutReport {
    int components = 0;
    std::vector<int> genus, boundaries, euler;
    bool connected = false, planar = false;
};

struct CutError : std::runtime_error {
    int first, second;
    CutError(const std::string& m, int a, int b) : std::runtime_error(m), first(a), second(b) {}
};

CutReport cut_and_classify(const SurfaceComplex& K, const std::vector<CurveOnSurface>& curves);

struct Rejection {
    std::vector<int> subset;
    std::string reason;
};

struct PlanarSelection {
    std::vector<int> chosen;                 // indices into lifts
    std::vector<std::vector<int>> all;       // exhaustive mode only
    std::vector<Rejection> rejected;
    long long examined = 0;
};

PlanarSelection select_planar_system(const std::vector<Orbit>& lifts, const SurfaceComplex& K,
                                     bool exhaustive = false);

std::string cut_report_json(const CutReport& r);
std::string selection_json(const PlanarSelection& s, const std::vector<Orbit>& lifts,
                           const SurfaceComplex& K);

}  // namespace gstlink
