#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gstlink {

enum class Sign : int { minus = -1, plus = 1 };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Params {
    int p = 0, q = 0, c = 0, d = 0;
    auto operator<=>(const Params&) const = default;
};

// Empty string when valid, otherwise every failed constraint joined by "; ".
std::string params_problem(const Params& P);
void validate(const Params& P);

struct EdgeLabel {
    int a = 1, b = 1;
    Sign s = Sign::plus;
    int t = 0;
    auto operator<=>(const EdgeLabel&) const = default;
};

struct VertexRef {
    EdgeLabel edge;
    int v = 1;
    auto operator<=>(const VertexRef&) const = default;
};

VertexRef make_vertex(int a, int b, Sign s, int t, int v);
std::string to_string(const VertexRef& x);
// "a,b,s,t,v" with s one of + or -
VertexRef parse_vertex(const std::string& text);

EdgeLabel next_edge(const EdgeLabel& e, int p, int q);

struct LabeledAnnulus {
    Params params;
    std::vector<EdgeLabel> outer, inner;
};

LabeledAnnulus label_annulus(const Params& P);

// cycle position of (a,b,s), 0..2pq-1, and its inverse
int edge_position(int a, int b, Sign s, int p, int q);
EdgeLabel edge_at(int pos, int p, int q, int t = 0);

int circle_size(const Params& P);  // 2pq*d
int global_index(const VertexRef& x, const Params& P);
VertexRef vertex_at(int t, int g, const Params& P);
bool vertex_valid(const VertexRef& x, const Params& P);
std::vector<VertexRef> all_vertices(const Params& P);  // canonical sweep order

VertexRef translate(const VertexRef& x, const Params& P);
VertexRef translate_inv(const VertexRef& x, const Params& P);
VertexRef reflect(const VertexRef& x, int d);

struct Orbit {
    Params params;
    VertexRef start;
    std::vector<VertexRef> vertices;
    int macro_cycles = 0;
};

Orbit compute_orbit(const VertexRef& start, const Params& P);
std::vector<Orbit> enumerate_lifts(const Params& P);
// index into lifts of the orbit containing x, -1 if none
int lift_containing(const std::vector<Orbit>& lifts, const VertexRef& x);

struct ArcKey {
    int a = 1, b = 1, v = 1;
    auto operator<=>(const ArcKey&) const = default;
};

struct ArcMultiset {
    Params params;
    std::map<ArcKey, int> plus, minus;
    int total_plus() const;
    int total_minus() const;
};

ArcMultiset arcs_from_orbit(const Orbit& o);
ArcMultiset merge(const ArcMultiset& x, const ArcMultiset& y);

enum class ChordKind { spanning, boundary };
enum class ChordModel { identification, hugging };

struct Chord {
    ChordKind kind = ChordKind::spanning;
    VertexRef ends[2];
    int gidx[2] = {0, 0};
    int circle = 0;
    int orbit = 0;
};

std::vector<Chord> chords_of(const Orbit& o, int orbit_id = 0);
bool chords_cross(const Chord& x, const Chord& y,
                  ChordModel model = ChordModel::identification);
// cyclic interleaving of {a0,a1} and {b0,b1} on a circle of size n
bool interleaved(int a0, int a1, int b0, int b1, int n);

std::string orbit_to_json(const Orbit& o);
Orbit orbit_from_json(const std::string& text);
std::string arcs_to_json(const ArcMultiset& m, const VertexRef& start);

}  // namespace gstlink
