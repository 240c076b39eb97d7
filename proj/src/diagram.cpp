#include "gstlink/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace gstlink {

namespace {

int imod(int x, int m) { return ((x % m) + m) % m; }

// boundary walk of the Seifert surface of a closed positive or negative braid:
// disk segments between band attachments, then one side of the next band
std::vector<WalkSegment> braid_walk(const BraidHalf& B, int half, int& components)
{
    const int m = (int)B.word.size();
    std::vector<std::vector<int>> attach(B.strands);
    for (int j = 0; j < m; ++j) {
        attach[B.word[j] - 1].push_back(j);
        attach[B.word[j]].push_back(j);
    }
    std::vector<WalkSegment> walk;
    std::set<std::pair<int, int>> used;  // (disk, attachment index)
    components = 0;
    for (int d0 = 0; d0 < B.strands; ++d0) {
        for (int a0 = 0; a0 < (int)attach[d0].size(); ++a0) {
            if (used.count({d0, a0})) continue;
            ++components;
            int disk = d0, at = a0;
            while (!used.count({disk, at})) {
                used.insert({disk, at});
                // disk segment that ends at attachment `at`
                walk.push_back({half, WalkSegment::disk, disk, at});
                int j = attach[disk][at];
                int other = B.word[j] - 1 == disk ? disk + 1 : disk - 1;
                walk.push_back({half, WalkSegment::band_side, j, other > disk ? 0 : 1});
                const auto& oa = attach[other];
                int k = (int)(std::find(oa.begin(), oa.end(), j) - oa.begin());
                disk = other;
                at = (k + 1) % (int)oa.size();
            }
        }
    }
    return walk;
}

struct Piece {
    double ug, ut;
};

std::vector<std::vector<UV>> route_side(const std::vector<Piece>& pieces, double T, const LayoutConstants& k)
{
    const int n = (int)std::lround(T / k.h);
    std::vector<std::vector<std::pair<double, double>>> pts(pieces.size());
    struct Act {
        double straight;
        int piece;
        double x;
    };
    std::vector<Act> act;
    for (int s = 0; s < n; ++s) {
        const double uk = s * k.h;
        act.clear();
        for (int i = 0; i < (int)pieces.size(); ++i) {
            const double a = std::min(pieces[i].ug, pieces[i].ut), b = std::max(pieces[i].ug, pieces[i].ut);
            for (long j = (long)std::ceil((a - uk) / T - 1e-12); uk + j * T < b; ++j) {
                const double x = uk + j * T;
                if (a < x && x < b) act.push_back({(x - pieces[i].ug) / (pieces[i].ut - pieces[i].ug), i, x});
            }
        }
        std::sort(act.begin(), act.end(), [](const Act& p, const Act& q) {
            if (p.straight != q.straight) return p.straight < q.straight;
            if (p.piece != q.piece) return p.piece < q.piece;
            return p.x < q.x;
        });
        const int m = (int)act.size();
        for (int r = 0; r < m; ++r)
            pts[act[r].piece].push_back({act[r].x, k.lo + (k.hi - k.lo) * (r + 1) / (m + 1)});
    }
    std::vector<std::vector<UV>> out;
    for (size_t i = 0; i < pieces.size(); ++i) {
        auto& p = pts[i];
        std::sort(p.begin(), p.end());
        if (pieces[i].ut < pieces[i].ug) std::reverse(p.begin(), p.end());
        std::vector<UV> path{{pieces[i].ug, 0.0}};
        for (auto& [x, r] : p) path.push_back({x, r});
        path.push_back({pieces[i].ut, 1.0});
        out.push_back(std::move(path));
    }
    return out;
}

struct Routing {
    std::map<int, int> rank;                  // chord -> pile rank
    std::map<int, std::vector<UV>> plus, minus;  // chord -> piece from spine to pile
    std::map<int, double> slide;
};

Routing route_chords(const std::set<int>& chords, const Params& P, const LayoutConstants& k)
{
    const double T = 2.0 * circle_size(P);
    struct Info {
        double E, key, tgt;
    };
    std::map<int, Info> info;
    for (int g : chords) {
        const double psi = 2.0 * g + P.c;
        const double E = k.u_mark + T * std::floor((psi - k.u_mark) / T);
        info[g] = {E, 2.0 * g - E, 0.0};
    }
    std::vector<int> order(chords.begin(), chords.end());
    std::sort(order.begin(), order.end(), [&](int x, int y) { return info[x].key < info[y].key; });
    Routing R;
    const int n = (int)order.size();
    for (int r = 0; r < n; ++r) {
        auto& I = info[order[r]];
        I.tgt = I.E + k.a0 + (k.a1 - k.a0) * (r + 0.5) / n;
        R.rank[order[r]] = r;
        R.slide[order[r]] = 2.0 * order[r] + P.c - I.tgt;
    }
    std::vector<int> list(chords.begin(), chords.end());
    std::vector<Piece> pp, mp;
    for (int g : list) {
        pp.push_back({2.0 * g, info[g].tgt});
        mp.push_back({2.0 * g + 2.0 * P.c, info[g].tgt});
    }
    auto rp = route_side(pp, T, k), rm = route_side(mp, T, k);
    for (size_t i = 0; i < list.size(); ++i) {
        R.plus[list[i]] = std::move(rp[i]);
        R.minus[list[i]] = std::move(rm[i]);
    }
    return R;
}

void check_key(const ArcKey& key, const Params& P)
{
    if (key.a < 1 || key.a > P.p || key.b < 1 || key.b > P.q)
        throw std::invalid_argument("arc slot unknown for (" + std::to_string(key.a) + "," + std::to_string(key.b) + ")");
    if (key.v < 1 || key.v > P.d) throw std::invalid_argument("arc vertex out of range");
}

// chords joined by a model arc instance
std::pair<int, int> arc_chords(const ArcKey& key, int side, const Params& P)
{
    const int M = circle_size(P);
    VertexRef x = make_vertex(key.a, key.b, Sign::plus, side > 0 ? 0 : 1, key.v);
    VertexRef y = reflect(x, P.d);
    int shift = side > 0 ? 0 : P.c;
    return {imod(global_index(x, P) - shift, M), imod(global_index(y, P) - shift, M)};
}

std::vector<UV> reversed(std::vector<UV> v)
{
    std::reverse(v.begin(), v.end());
    return v;
}

}  // namespace

std::string companion_name(const VertexRef& s) { return "V_{" + to_string(s) + "}"; }

DiskBandSurface build_disk_band(const Params& P, const LayoutConstants& k)
{
    validate(P);
    DiskBandSurface S;
    S.params = P;
    S.constants = k;
    for (BraidHalf* B : {&S.plus, &S.minus}) {
        B->strands = P.p;
        B->disks = P.p;
        for (int r = 0; r < P.q; ++r)
            for (int g = 1; g < P.p; ++g) B->word.push_back(g);
        B->bands = (int)B->word.size();
    }
    S.plus.sign = 1;
    S.minus.sign = -1;
    int cp = 0, cm = 0;
    auto wp = braid_walk(S.plus, 0, cp);
    auto wm = braid_walk(S.minus, 1, cm);
    // connect-sum band joins the first disk segment of each half, splitting both
    S.walk.push_back({0, WalkSegment::disk, wp[0].index, -1});
    S.walk.push_back({2, WalkSegment::sum_side, 0, 0});
    S.walk.push_back({1, WalkSegment::disk, wm[0].index, -2});
    S.walk.insert(S.walk.end(), wm.begin() + 1, wm.end());
    S.walk.push_back({1, WalkSegment::disk, wm[0].index, -1});
    S.walk.push_back({2, WalkSegment::sum_side, 0, 1});
    S.walk.push_back({0, WalkSegment::disk, wp[0].index, -2});
    S.walk.insert(S.walk.end(), wp.begin() + 1, wp.end());
    S.walk_components = cp + cm - 1;
    for (const BraidHalf* B : {&S.plus, &S.minus}) S.segments_total += 2 * B->bands + 2 * B->bands;
    S.segments_total += 2 + 2;  // two split disk segments, two band sides
    S.slots_per_half = P.p * P.q;
    const int Ne = 2 * P.p * P.q;
    for (int e = 0; e < Ne; ++e)
        S.gamma.push_back({edge_at(e, P.p, P.q), e, 2.0 * e * P.d - 1, 2.0 * e * P.d + 2.0 * P.d - 1});
    return S;
}

std::vector<RoutedArc> place_and_slide(const ArcMultiset& arcs, const DiskBandSurface& S)
{
    const Params& P = arcs.params;
    if (P != S.params) throw std::invalid_argument("arcs and surface have different params");
    std::set<int> chords;
    for (int side : {1, -1})
        for (auto& [key, n] : side > 0 ? arcs.plus : arcs.minus) {
            check_key(key, P);
            if (n != 1) throw std::invalid_argument("model arc instance repeated; orbits overlap");
            auto [g1, g2] = arc_chords(key, side, P);
            chords.insert(g1);
            chords.insert(g2);
        }
    Routing R = route_chords(chords, P, S.constants);
    std::vector<RoutedArc> out;
    for (int side : {1, -1})
        for (auto& [key, n] : side > 0 ? arcs.plus : arcs.minus) {
            RoutedArc a;
            a.key = key;
            a.side = side;
            auto [g1, g2] = arc_chords(key, side, P);
            a.chord[0] = g1;
            a.chord[1] = g2;
            auto& pieces = side > 0 ? R.plus : R.minus;
            a.path[0] = reversed(pieces.at(g1));
            a.path[1] = pieces.at(g2);
            for (int i = 0; i < 2; ++i) {
                a.pile[i] = R.rank.at(a.chord[i]);
                a.slide[i] = R.slide.at(a.chord[i]);
            }
            out.push_back(std::move(a));
        }
    return out;
}

Companions connect_ends(const std::vector<RoutedArc>& routed)
{
    std::map<int, int> plus_at, minus_at;  // pile rank -> arc
    for (int i = 0; i < (int)routed.size(); ++i)
        for (int e = 0; e < 2; ++e) {
            auto& m = routed[i].side > 0 ? plus_at : minus_at;
            if (!m.emplace(routed[i].pile[e], i).second) throw std::runtime_error("two ends share a pile slot");
        }
    if (plus_at.size() != minus_at.size()) throw std::runtime_error("pile size mismatch between F+ and F-");
    std::vector<int> parent(routed.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto& [rank, i] : plus_at) {
        auto it = minus_at.find(rank);
        if (it == minus_at.end()) throw std::runtime_error("pile size mismatch between F+ and F-");
        parent[find(i)] = find(it->second);
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < (int)routed.size(); ++i) groups[find(i)].push_back(i);
    Companions c;
    for (auto& [r, g] : groups) c.members.push_back(g);
    std::sort(c.members.begin(), c.members.end());
    c.count = (int)c.members.size();
    return c;
}

AssembledLink assemble_link(const Params& P, const std::vector<VertexRef>& starts, const LayoutConstants& k)
{
    validate(P);
    AssembledLink L;
    L.params = P;
    L.starts = starts;
    auto lifts = enumerate_lifts(P);
    for (const auto& s : starts) {
        if (!vertex_valid(s, P)) throw std::invalid_argument("start vertex invalid: " + to_string(s));
        int i = lift_containing(lifts, s);
        if (std::find(L.lift_index.begin(), L.lift_index.end(), i) != L.lift_index.end())
            throw std::invalid_argument("duplicate orbit");
        L.lift_index.push_back(i);
        L.orbits.push_back(lifts[i]);
    }
    std::vector<std::vector<Chord>> ch;
    for (size_t i = 0; i < L.orbits.size(); ++i) ch.push_back(chords_of(L.orbits[i], (int)i));
    for (size_t i = 0; i < ch.size(); ++i)
        for (size_t j = i + 1; j < ch.size(); ++j)
            for (auto& x : ch[i])
                for (auto& y : ch[j])
                    if (chords_cross(x, y)) throw std::invalid_argument("crossing chords among orbits");

    ArcMultiset arcs;
    arcs.params = P;
    for (auto& o : L.orbits) arcs = merge(arcs, arcs_from_orbit(o));
    DiskBandSurface S = build_disk_band(P, k);
    auto routed = place_and_slide(arcs, S);
    Companions comp = connect_ends(routed);
    if (comp.count != (int)L.orbits.size())
        throw std::runtime_error("companion count " + std::to_string(comp.count) + " differs from orbit count");
    L.companion_count = comp.count;

    std::map<int, std::vector<UV>> plus, minus;  // chord -> spine-to-pile piece
    for (auto& a : routed) {
        auto& m = a.side > 0 ? plus : minus;
        m[a.chord[0]] = reversed(a.path[0]);
        m[a.chord[1]] = a.path[1];
    }

    Embedding emb(P.p, P.q, P.d, k);
    auto plus3 = [&](UV x) { return emb.plus(x.x, x.y); };
    auto minus3 = [&](UV x) { return emb.minus(x.x, x.y); };
    auto append = [&](std::vector<Vec3>& out, auto f, const std::vector<UV>& pts) {
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            Vec3 A = f(pts[i]), B = f(pts[i + 1]);
            int m = std::max(1, (int)std::ceil(norm(B - A) / k.seglen));
            for (int j = 0; j < m; ++j) {
                double t = double(j) / m;
                out.push_back(f({pts[i].x + (pts[i + 1].x - pts[i].x) * t, pts[i].y + (pts[i + 1].y - pts[i].y) * t}));
            }
        }
        out.push_back(f(pts.back()));
    };
    auto dedupe = [](std::vector<Vec3> v) {
        std::vector<Vec3> out;
        for (auto& x : v)
            if (out.empty() || norm(x - out.back()) > 1e-12) out.push_back(x);
        while (out.size() > 1 && norm(out.front() - out.back()) <= 1e-12) out.pop_back();
        return out;
    };

    const double T = 2.0 * circle_size(P);
    std::vector<Vec3> Q;
    std::vector<UV> knot;
    const int nq = (int)(T / k.h);
    for (int i = 0; i <= nq; ++i) knot.push_back({k.u_mark + k.a1 + (T + k.a0 - k.a1) * i / nq, 1.0});
    append(Q, plus3, knot);
    append(Q, minus3, reversed(knot));
    L.curves.push_back(dedupe(Q));

    for (auto& o : L.orbits) {
        std::vector<Vec3> V;
        for (size_t m = 0; m < o.vertices.size(); m += 4) {
            const VertexRef& x0 = m ? o.vertices[m - 1] : o.vertices.back();
            int g0 = global_index(x0, P), g3 = global_index(o.vertices[m + 2], P);
            append(V, plus3, plus.at(g0));
            append(V, minus3, reversed(minus.at(g0)));
            append(V, minus3, minus.at(g3));
            append(V, plus3, reversed(plus.at(g3)));
        }
        L.curves.push_back(dedupe(V));
    }

    L.pd = extract_pd(L.curves, k.view);
    L.pd.components[0].name = "Q";
    L.pd.components[0].role = Role::knot_q;
    for (size_t i = 0; i < starts.size(); ++i) {
        L.pd.components[i + 1].name = companion_name(starts[i]);
        L.pd.components[i + 1].role = Role::companion;
    }
    return L;
}

namespace {

struct Projected {
    Vec2 a, b;
    double ha, hb;
    int comp, idx;
};

struct Frame {
    Vec3 v, a, b;
    explicit Frame(Vec3 view)
    {
        v = (1.0 / norm(view)) * view;
        Vec3 x{1, 0, 0};
        a = {v.y * x.z - v.z * x.y, v.z * x.x - v.x * x.z, v.x * x.y - v.y * x.x};
        a = (1.0 / norm(a)) * a;
        b = {v.y * a.z - v.z * a.y, v.z * a.x - v.x * a.z, v.x * a.y - v.y * a.x};
    }
    Vec2 flat(Vec3 p) const { return {dot(p, a), dot(p, b)}; }
};

double cr(Vec2 o, Vec2 p, Vec2 q) { return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x); }

struct Hit {
    int c1, i1;
    double t1;
    int c2, i2;
    double t2;
    bool first_over;
    double crz;  // cross(dir1, dir2)
    Vec2 at;
};

std::vector<Projected> project(const std::vector<std::vector<Vec3>>& curves, const Frame& F)
{
    std::vector<Projected> segs;
    for (int c = 0; c < (int)curves.size(); ++c) {
        const auto& C = curves[c];
        for (int i = 0; i < (int)C.size(); ++i) {
            Vec3 A = C[i], B = C[(i + 1) % C.size()];
            if (norm(B - A) < 1e-12) continue;
            segs.push_back({F.flat(A), F.flat(B), dot(A, F.v), dot(B, F.v), c, i});
        }
    }
    return segs;
}

bool adjacent(const Projected& s, const Projected& t, const std::vector<std::vector<Vec3>>& curves)
{
    if (s.comp != t.comp) return false;
    int n = (int)curves[s.comp].size();
    int d = std::abs(s.idx - t.idx);
    return d == 0 || d == 1 || d == n - 1;
}

bool intersect(const Projected& s, const Projected& t, Hit& h)
{
    double d1 = cr(s.a, s.b, t.a), d2 = cr(s.a, s.b, t.b), d3 = cr(t.a, t.b, s.a), d4 = cr(t.a, t.b, s.b);
    if (!(d1 * d2 < 0 && d3 * d4 < 0)) return false;
    double ts = d3 / (d3 - d4), tt = d1 / (d1 - d2);
    double h1 = s.ha + ts * (s.hb - s.ha), h2 = t.ha + tt * (t.hb - t.ha);
    Vec2 u{s.b.x - s.a.x, s.b.y - s.a.y}, w{t.b.x - t.a.x, t.b.y - t.a.y};
    h = {s.comp, s.idx, ts, t.comp, t.idx, tt, h1 > h2, u.x * w.y - u.y * w.x,
         {s.a.x + ts * u.x, s.a.y + ts * u.y}};
    return true;
}

std::vector<Hit> find_hits(const std::vector<std::vector<Vec3>>& curves, const Frame& F)
{
    auto segs = project(curves, F);
    const double cell = 0.05;
    std::unordered_map<long long, std::vector<int>> grid;
    auto key = [](long long gx, long long gy) { return gx * 4000037LL + gy; };
    for (int k = 0; k < (int)segs.size(); ++k) {
        const auto& s = segs[k];
        long long x0 = (long long)std::floor(std::min(s.a.x, s.b.x) / cell);
        long long x1 = (long long)std::floor(std::max(s.a.x, s.b.x) / cell);
        long long y0 = (long long)std::floor(std::min(s.a.y, s.b.y) / cell);
        long long y1 = (long long)std::floor(std::max(s.a.y, s.b.y) / cell);
        for (long long gx = x0; gx <= x1; ++gx)
            for (long long gy = y0; gy <= y1; ++gy) grid[key(gx, gy)].push_back(k);
    }
    std::vector<std::pair<int, int>> cand;
    for (auto& [cellkey, lst] : grid)
        for (size_t i = 0; i < lst.size(); ++i)
            for (size_t j = i + 1; j < lst.size(); ++j) cand.emplace_back(std::min(lst[i], lst[j]), std::max(lst[i], lst[j]));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Hit> hits;
    for (auto [k, l] : cand) {
        if (adjacent(segs[k], segs[l], curves)) continue;
        Hit h;
        if (intersect(segs[k], segs[l], h)) hits.push_back(h);
    }
    return hits;
}

}  // namespace

long long count_crossings_brute(const std::vector<std::vector<Vec3>>& curves, const Vec3& view)
{
    Frame F(view);
    auto segs = project(curves, F);
    long long n = 0;
    for (size_t k = 0; k < segs.size(); ++k)
        for (size_t l = k + 1; l < segs.size(); ++l) {
            if (adjacent(segs[k], segs[l], curves)) continue;
            Hit h;
            n += intersect(segs[k], segs[l], h);
        }
    return n;
}

PlanarDiagram extract_pd(const std::vector<std::vector<Vec3>>& curves, const Vec3& view)
{
    Frame F(view);
    auto hits = find_hits(curves, F);
    const int nc = (int)curves.size();
    Layout layout;
    std::vector<int> base_idx(nc);
    for (int c = 0; c < nc; ++c) {
        std::vector<Vec2> flat;
        for (auto& p : curves[c]) flat.push_back(F.flat(p));
        int b = 0;
        for (int i = 1; i < (int)flat.size(); ++i)
            if (flat[i].y < flat[b].y || (flat[i].y == flat[b].y && flat[i].x < flat[b].x)) b = i;
        base_idx[c] = b;
        std::rotate(flat.begin(), flat.begin() + b, flat.end());
        layout.curves.push_back(std::move(flat));
    }
    // passages per component ordered from the basepoint
    struct Pass {
        double s;
        int hit, side;
    };
    std::vector<std::vector<Pass>> passes(nc);
    for (int x = 0; x < (int)hits.size(); ++x) {
        const auto& h = hits[x];
        for (int side = 0; side < 2; ++side) {
            int c = side ? h.c2 : h.c1;
            double s = (side ? h.i2 + h.t2 : h.i1 + h.t1) - base_idx[c];
            if (s < 0) s += (double)curves[c].size();
            passes[c].push_back({s, x, side});
        }
    }
    std::map<std::pair<int, int>, std::pair<int, int>> label;  // (hit, side) -> (in, out)
    PlanarDiagram pd;
    int base = 1;
    for (int c = 0; c < nc; ++c) {
        auto& L = passes[c];
        if (L.empty()) throw std::runtime_error("component " + std::to_string(c) + " has no crossings in the projection");
        std::sort(L.begin(), L.end(), [](const Pass& a, const Pass& b) { return a.s < b.s; });
        const int m = (int)L.size();
        PDComponent comp;
        comp.name = "C" + std::to_string(c + 1);
        for (int j = 0; j < m; ++j) {
            label[{L[j].hit, L[j].side}] = {base + j, base + (j + 1) % m};
            comp.arcs.push_back(base + j);
        }
        pd.components.push_back(comp);
        base += m;
    }
    struct Row {
        std::array<int, 4> X;
        int sign;
        LayoutCrossing g;
    };
    std::vector<Row> rows;
    for (int x = 0; x < (int)hits.size(); ++x) {
        const auto& h = hits[x];
        int us = h.first_over ? 1 : 0, os = 1 - us;
        auto [in_u, out_u] = label[{x, us}];
        auto [in_o, out_o] = label[{x, os}];
        double cuo = us == 0 ? h.crz : -h.crz;
        Row r;
        r.X = cuo > 0 ? std::array<int, 4>{in_u, in_o, out_u, out_o} : std::array<int, 4>{in_u, out_o, out_u, in_o};
        r.sign = cuo > 0 ? -1 : 1;
        int oc = os ? h.c2 : h.c1, oi = os ? h.i2 : h.i1;
        const auto& C = curves[oc];
        Vec2 A = F.flat(C[oi]), B = F.flat(C[(oi + 1) % C.size()]);
        double len = std::hypot(B.x - A.x, B.y - A.y);
        r.g = {h.at, oc, {(B.x - A.x) / len, (B.y - A.y) / len}};
        rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.X[0] < b.X[0]; });
    for (auto& r : rows) {
        pd.crossings.push_back(r.X);
        pd.signs.push_back(r.sign);
        layout.crossings.push_back(r.g);
    }
    pd.layout = std::move(layout);
    return pd;
}

}  // namespace gstlink
