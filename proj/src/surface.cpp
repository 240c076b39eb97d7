#include "gstlink/surface.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace gstlink {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x)
    {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

// raw sheared column of a vertex on its level
int raw_column(const VertexRef& x, const Params& P, int T)
{
    int level = 2 * x.edge.t;
    return mod(2 * global_index(x, P) - level * P.c, T);
}

}  // namespace

SurfaceComplex build_fiber_complex(const Params& P)
{
    validate(P);
    SurfaceComplex K;
    K.params = P;
    const int T = 2 * circle_size(P);
    const int Ne = 2 * P.p * P.q;
    const int d = P.d;
    K.T = T;

    // partner of fine position u on a boundary circle, as an offset map within edges
    auto split = [&](int u, int& k, int& o) {
        k = mod((u + 1) / (2 * d), Ne);
        o = (u + 1) - ((u + 1) / (2 * d)) * 2 * d;
    };
    auto partner_start = [&](int k) {
        EdgeLabel e = edge_at(k, P.p, P.q);
        return 2 * edge_position(e.a, e.b, flip(e.s), P.p, P.q) * d - 1;
    };

    DSU vs(3 * T);
    K.hedge.assign(3 * T, -1);
    K.hedge_sign.assign(3 * T, 1);
    std::vector<int> hpartner(3 * T, -1);
    for (int level : {0, 2}) {
        for (int j = 0; j < T; ++j) {
            int u = mod(j + level * P.c, T), k, o;
            split(u, k, o);
            int ks = partner_start(k);
            int jv = mod(ks + (2 * d - o) - level * P.c, T);
            vs.unite(level * T + j, level * T + jv);
            int je = mod(ks + (2 * d - o - 1) - level * P.c, T);
            hpartner[level * T + j] = level * T + je;
        }
    }
    // compact vertex ids in raw order
    K.vertex_id.assign(3 * T, -1);
    std::map<int, int> root_id;
    for (int r = 0; r < 3 * T; ++r) {
        int root = vs.find(r);
        auto it = root_id.find(root);
        if (it == root_id.end()) it = root_id.emplace(root, (int)root_id.size()).first;
        K.vertex_id[r] = it->second;
    }
    K.num_vertices = (int)root_id.size();

    auto vid = [&](int level, int j) { return K.vertex_id[level * T + mod(j, T)]; };
    auto add_edge = [&](int a, int b) {
        K.edge_ends.emplace_back(a, b);
        return (int)K.edge_ends.size() - 1;
    };
    for (int level = 0; level < 3; ++level) {
        for (int j = 0; j < T; ++j) {
            int r = level * T + j;
            if (K.hedge[r] >= 0) continue;
            int e = add_edge(vid(level, j), vid(level, j + 1));
            K.hedge[r] = e;
            if (level != 1) {
                int r2 = hpartner[r];
                if (r2 == r || hpartner[r2] != r) throw std::logic_error("non-matching gluing");
                K.hedge[r2] = e;
                K.hedge_sign[r2] = -1;
                auto ends2 = std::make_pair(vid(level, r2 - level * T + 1), vid(level, r2 - level * T));
                if (ends2 != K.edge_ends[e]) throw std::logic_error("non-matching gluing");
            }
        }
    }
    K.vedge.assign(2 * T, -1);
    for (int level = 0; level < 2; ++level)
        for (int j = 0; j < T; ++j) K.vedge[level * T + j] = add_edge(vid(level, j), vid(level + 1, j));

    for (int level = 0; level < 2; ++level) {
        for (int j = 0; j < T; ++j) {
            int j1 = mod(j + 1, T);
            K.faces.push_back({{K.hedge[level * T + j], K.hedge_sign[level * T + j]},
                               {K.vedge[level * T + j1], 1},
                               {K.hedge[(level + 1) * T + j], -K.hedge_sign[(level + 1) * T + j]},
                               {K.vedge[level * T + j], -1}});
        }
    }
    const int E = (int)K.edge_ends.size();
    const int F = (int)K.faces.size();
    std::vector<int> inc(E, 0), net(E, 0);
    for (const auto& f : K.faces)
        for (auto [e, s] : f) {
            inc[e]++;
            net[e] += s;
        }
    for (int e = 0; e < E; ++e)
        if (inc[e] != 2 || net[e] != 0) throw std::logic_error("non-matching gluing at edge " + std::to_string(e));

    K.puncture_face = T - 1;  // level 0, spanning sheared [-1,0]
    K.euler_closed = K.num_vertices - E + F;
    K.euler = K.euler_closed - 1;
    K.boundary = 1;
    K.genus = (2 - K.euler_closed) / 2;
    K.pre_gluing_euler = 3 * T - 5 * T + 2 * T - 1;

    // homology basis by tree / cotree
    std::vector<std::vector<int>> vadj(K.num_vertices);
    for (int e = 0; e < E; ++e) {
        vadj[K.edge_ends[e].first].push_back(e);
        if (K.edge_ends[e].second != K.edge_ends[e].first) vadj[K.edge_ends[e].second].push_back(e);
    }
    std::vector<char> in_tree(E, 0), seen(K.num_vertices, 0);
    std::deque<int> qv{0};
    seen[0] = 1;
    while (!qv.empty()) {
        int v = qv.front();
        qv.pop_front();
        for (int e : vadj[v]) {
            int w = K.edge_ends[e].first == v ? K.edge_ends[e].second : K.edge_ends[e].first;
            if (!seen[w]) {
                seen[w] = 1;
                in_tree[e] = 1;
                qv.push_back(w);
            }
        }
    }
    std::vector<std::vector<int>> edge_faces(E);
    for (int f = 0; f < F; ++f)
        for (auto [e, s] : K.faces[f]) edge_faces[e].push_back(f);
    K.dual_parent_edge.assign(F, -1);
    K.dual_parent_face.assign(F, -1);
    std::vector<char> in_cotree(E, 0), fseen(F, 0);
    std::deque<int> qf{K.puncture_face};
    fseen[K.puncture_face] = 1;
    while (!qf.empty()) {
        int f = qf.front();
        qf.pop_front();
        K.dual_order.push_back(f);
        std::vector<int> es;
        for (auto [e, s] : K.faces[f]) es.push_back(e);
        std::sort(es.begin(), es.end());
        for (int e : es) {
            if (in_tree[e]) continue;
            int g = edge_faces[e][0] == f ? edge_faces[e][1] : edge_faces[e][0];
            if (!fseen[g]) {
                fseen[g] = 1;
                in_cotree[e] = 1;
                K.dual_parent_edge[g] = e;
                K.dual_parent_face[g] = f;
                qf.push_back(g);
            }
        }
    }
    for (int e = 0; e < E; ++e)
        if (!in_tree[e] && !in_cotree[e]) K.basis_edges.push_back(e);
    if ((int)K.basis_edges.size() != 2 * K.genus)
        throw std::logic_error("tree/cotree leftover count differs from 2g");
    K.basis_description =
        "generator i is the fundamental cycle of basis_edges[i] in the BFS spanning tree of the 1-skeleton "
        "rooted at vertex 0; the cotree is the BFS tree of the dual graph rooted at the puncture face, "
        "neighbours taken in edge-index order";
    return K;
}

CurveOnSurface curve_on_fiber(const Orbit& o, const SurfaceComplex& K)
{
    const Params& P = o.params;
    if (P != K.params) throw std::invalid_argument("orbit and complex have different params");
    if (o.vertices.empty() || o.vertices.size() % 4 != 0 || o.vertices.back() != o.start)
        throw std::invalid_argument("orbit not closed");
    if (o.start.edge.t != 0) throw std::invalid_argument("orbit must start on the outer circle");
    const int T = K.T;
    const int Ne = 2 * P.p * P.q;
    auto rect = [&](int u) { return mod((u + 1) / (2 * P.d), Ne); };
    auto vid = [&](const VertexRef& x) { return K.vertex_id[2 * x.edge.t * T + raw_column(x, P, T)]; };

    CurveOnSurface c;
    c.params = P;
    c.start = o.start;
    VertexRef prev = o.start;
    for (size_t i = 0; i < o.vertices.size(); ++i) {
        const VertexRef& cur = o.vertices[i];
        Traversal tr;
        tr.entry = prev;
        tr.exit = cur;
        if (i % 2 == 0) {
            const VertexRef& outer = i % 4 == 0 ? prev : cur;
            const VertexRef& inner = i % 4 == 0 ? cur : prev;
            if (outer.edge.t != 0 || inner.edge.t != 1) throw std::logic_error("spanning step does not cross");
            int j = 2 * global_index(outer, P);
            if (raw_column(inner, P, T) != mod(j, T)) throw std::logic_error("chord not vertical in sheared frame");
            tr.rect_first = rect(j);
            tr.rect_last = rect(j + 2 * P.c);
            if (i % 4 == 0) {
                c.chain.emplace_back(K.vedge[j], 1);
                c.chain.emplace_back(K.vedge[T + j], 1);
                c.vertices.push_back(K.vertex_id[j]);
                c.vertices.push_back(K.vertex_id[T + j]);
            } else {
                c.chain.emplace_back(K.vedge[T + j], -1);
                c.chain.emplace_back(K.vedge[j], -1);
                c.vertices.push_back(K.vertex_id[2 * T + j]);
                c.vertices.push_back(K.vertex_id[T + j]);
            }
        } else {
            tr.boundary = true;
            if (vid(prev) != vid(cur)) throw std::logic_error("R-step endpoints are not glued");
            tr.rect_first = edge_position(prev.edge.a, prev.edge.b, prev.edge.s, P.p, P.q);
            tr.rect_last = edge_position(cur.edge.a, cur.edge.b, cur.edge.s, P.p, P.q);
        }
        c.steps.push_back(tr);
        prev = cur;
    }
    std::map<int, int> deg;
    for (auto [e, s] : c.chain) {
        deg[K.edge_ends[e].first] -= s;
        deg[K.edge_ends[e].second] += s;
    }
    for (auto [v, n] : deg)
        if (n != 0) throw std::logic_error("curve chain is not closed");
    return c;
}

CurveOnSurface face_loop(const SurfaceComplex& K, int face)
{
    CurveOnSurface c;
    c.params = K.params;
    c.chain = K.faces.at(face);
    for (auto [e, s] : c.chain) c.vertices.push_back(s > 0 ? K.edge_ends[e].first : K.edge_ends[e].second);
    return c;
}

std::vector<long long> homology_class(const CurveOnSurface& c, const SurfaceComplex& K)
{
    const int E = (int)K.edge_ends.size();
    std::vector<long long> g(E, 0);
    for (auto [e, s] : c.chain) g[e] += s;
    std::vector<long long> a(K.faces.size(), 0);
    auto sign_in = [&](int f, int e) {
        for (auto [x, s] : K.faces[f])
            if (x == e) return s;
        throw std::logic_error("edge not on face");
    };
    for (int f : K.dual_order) {
        int e = K.dual_parent_edge[f];
        if (e < 0) continue;
        int pf = K.dual_parent_face[f];
        a[f] = (g[e] - a[pf] * sign_in(pf, e)) * sign_in(f, e);
    }
    for (size_t f = 0; f < K.faces.size(); ++f)
        if (a[f])
            for (auto [e, s] : K.faces[f]) g[e] -= a[f] * s;
    std::vector<long long> out;
    for (int e : K.basis_edges) out.push_back(g[e]);
    return out;
}

CutReport cut_and_classify(const SurfaceComplex& K, const std::vector<CurveOnSurface>& curves)
{
    const int T = K.T;
    const int E = (int)K.edge_ends.size();
    const int F = (int)K.faces.size();
    std::vector<std::set<int>> vsets;
    for (const auto& c : curves) {
        if (c.params != K.params) throw std::invalid_argument("curve and complex have different params");
        vsets.emplace_back(c.vertices.begin(), c.vertices.end());
    }
    for (size_t i = 0; i < curves.size(); ++i)
        for (size_t j = i + 1; j < curves.size(); ++j)
            for (int v : vsets[i])
                if (vsets[j].count(v))
                    throw CutError("curves " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint",
                                   (int)i, (int)j);
    std::vector<char> cut(E, 0), on_curve(K.num_vertices, 0);
    for (const auto& c : curves) {
        for (auto [e, s] : c.chain) cut[e] = 1;
        for (int v : c.vertices) on_curve[v] = 1;
    }
    std::vector<std::vector<int>> edge_faces(E);
    for (int f = 0; f < F; ++f)
        for (auto [e, s] : K.faces[f]) edge_faces[e].push_back(f);
    DSU dsu(F);
    for (int e = 0; e < E; ++e)
        if (!cut[e]) dsu.unite(edge_faces[e][0], edge_faces[e][1]);
    std::map<int, int> comp_of_root;
    std::vector<int> comp(F);
    for (int f = 0; f < F; ++f) {
        int r = dsu.find(f);
        auto it = comp_of_root.find(r);
        if (it == comp_of_root.end()) it = comp_of_root.emplace(r, (int)comp_of_root.size()).first;
        comp[f] = it->second;
    }
    const int n = (int)comp_of_root.size();
    std::vector<int> chi(n, 0), b(n, 0);
    for (int f = 0; f < F; ++f) chi[comp[f]] += 1;
    chi[comp[K.puncture_face]] -= 1;
    b[comp[K.puncture_face]] += 1;
    for (int e = 0; e < E; ++e)
        if (!cut[e]) chi[comp[edge_faces[e][0]]] -= 1;
    std::vector<int> vface(K.num_vertices, -1);
    for (int f = 0; f < F; ++f)
        for (auto [e, s] : K.faces[f]) {
            vface[K.edge_ends[e].first] = f;
            vface[K.edge_ends[e].second] = f;
        }
    for (int v = 0; v < K.num_vertices; ++v)
        if (!on_curve[v]) chi[comp[vface[v]]] += 1;

    // sides: right of an upward vertical edge over column j is face (l,j)
    std::map<int, std::pair<int, int>> vertical_faces;
    for (int level = 0; level < 2; ++level)
        for (int j = 0; j < T; ++j)
            vertical_faces[K.vedge[level * T + j]] = {level * T + j, level * T + mod(j - 1, T)};
    for (const auto& c : curves) {
        std::set<int> right, left;
        for (auto [e, s] : c.chain) {
            auto it = vertical_faces.find(e);
            if (it == vertical_faces.end()) continue;
            auto [fr, fl] = it->second;
            if (s < 0) std::swap(fr, fl);
            right.insert(comp[fr]);
            left.insert(comp[fl]);
        }
        if (right.size() != 1 || left.size() != 1) throw std::logic_error("curve sides are inconsistent");
        b[*right.begin()] += 1;
        b[*left.begin()] += 1;
    }
    CutReport r;
    r.components = n;
    r.connected = n == 1;
    r.planar = true;
    for (int i = 0; i < n; ++i) {
        int twice = 2 - chi[i] - b[i];
        if (twice < 0 || twice % 2) throw std::logic_error("cut component has inconsistent Euler data");
        r.genus.push_back(twice / 2);
        r.boundaries.push_back(b[i]);
        r.euler.push_back(chi[i]);
        if (twice) r.planar = false;
    }
    return r;
}

PlanarSelection select_planar_system(const std::vector<Orbit>& lifts, const SurfaceComplex& K, bool exhaustive)
{
    const int g = K.genus;
    const int n = (int)lifts.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int i) {
        return std::make_pair(lifts[i].start.edge.t, global_index(lifts[i].start, K.params));
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
    std::vector<CurveOnSurface> curves;
    for (const auto& o : lifts) curves.push_back(curve_on_fiber(o, K));

    PlanarSelection sel;
    if (g > n) throw std::runtime_error("fewer lifts than the genus");
    std::vector<int> idx(g);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::vector<int> subset;
        std::vector<CurveOnSurface> cs;
        for (int i : idx) {
            subset.push_back(order[i]);
            cs.push_back(curves[order[i]]);
        }
        ++sel.examined;
        CutReport r = cut_and_classify(K, cs);
        if (r.connected && r.planar) {
            if (sel.chosen.empty()) sel.chosen = subset;
            if (!exhaustive) return sel;
            sel.all.push_back(subset);
        } else {
            sel.rejected.push_back({subset, r.connected ? "not planar" : "disconnected"});
        }
        int i = g - 1;
        while (i >= 0 && idx[i] == n - g + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < g; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (sel.chosen.empty()) throw std::runtime_error("no subset of lifts cuts F into a connected planar surface");
    return sel;
}

std::string cut_report_json(const CutReport& r)
{
    nlohmann::ordered_json j;
    j["components"] = r.components;
    j["genus"] = r.genus;
    j["boundaries"] = r.boundaries;
    j["euler"] = r.euler;
    j["connected"] = r.connected;
    j["planar"] = r.planar;
    return j.dump();
}

std::string selection_json(const PlanarSelection& s, const std::vector<Orbit>& lifts, const SurfaceComplex& K)
{
    nlohmann::ordered_json j;
    auto starts = [&](const std::vector<int>& sub) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (int i : sub) a.push_back(to_string(lifts[i].start));
        return a;
    };
    j["genus"] = K.genus;
    j["chosen"] = starts(s.chosen);
    j["qualifying"] = (long long)s.all.size();
    j["examined"] = s.examined;
    j["basis"] = K.basis_description;
    j["basis_edges"] = K.basis_edges;
    return j.dump();
}

}  // namespace gstlink
