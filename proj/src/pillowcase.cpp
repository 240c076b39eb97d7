#include "gstlink/pillowcase.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gstlink {

using ojson = nlohmann::ordered_json;

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

ojson vertex_json(const VertexRef& x)
{
    return ojson::array({x.edge.a, x.edge.b, std::string(1, sign_char(x.edge.s)), x.edge.t, x.v});
}

VertexRef vertex_from_json(const ojson& j)
{
    if (!j.is_array() || j.size() != 5) throw std::invalid_argument("vertex must be [a,b,s,t,v]");
    std::string s = j[2].get<std::string>();
    if (s != "+" && s != "-") throw std::invalid_argument("sign must be + or -");
    return make_vertex(j[0].get<int>(), j[1].get<int>(), s == "+" ? Sign::plus : Sign::minus,
                       j[3].get<int>(), j[4].get<int>());
}

ojson params_json(const Params& P)
{
    ojson j;
    j["p"] = P.p;
    j["q"] = P.q;
    j["c"] = P.c;
    j["d"] = P.d;
    return j;
}

}  // namespace

std::string params_problem(const Params& P)
{
    std::vector<std::string> bad;
    if (P.p <= 0 || P.q <= 0 || P.c <= 0 || P.d <= 0) bad.push_back("p,q,c,d must be positive");
    if (P.p > 0 && P.q > 0) {
        if (std::gcd(P.p, P.q) != 1) bad.push_back("gcd(p,q) must be 1");
        if (!(P.q < P.p)) bad.push_back("0 < q < p required");
    }
    if (P.c > 0 && P.d > 0 && std::gcd(P.c, P.d) != 1) bad.push_back("gcd(c,d) must be 1");
    if ((P.c > 0 && P.c % 2 != 0) || (P.d > 0 && P.d % 2 == 0)) bad.push_back("c must be even (d odd): c even/d odd violated");
    std::string out;
    for (size_t i = 0; i < bad.size(); ++i) out += (i ? "; " : "") + bad[i];
    return out;
}

void validate(const Params& P)
{
    auto why = params_problem(P);
    if (!why.empty()) throw ParamError(why);
}

VertexRef make_vertex(int a, int b, Sign s, int t, int v)
{
    return VertexRef{EdgeLabel{a, b, s, t}, v};
}

std::string to_string(const VertexRef& x)
{
    std::ostringstream os;
    os << x.edge.a << ',' << x.edge.b << ',' << sign_char(x.edge.s) << ',' << x.edge.t << ',' << x.v;
    return os.str();
}

VertexRef parse_vertex(const std::string& text)
{
    std::vector<std::string> f;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 5) throw std::invalid_argument("start vertex must be a,b,s,t,v: " + text);
    if (f[2] != "+" && f[2] != "-") throw std::invalid_argument("sign must be + or -: " + text);
    try {
        return make_vertex(std::stoi(f[0]), std::stoi(f[1]), f[2] == "+" ? Sign::plus : Sign::minus,
                           std::stoi(f[3]), std::stoi(f[4]));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad integer in start vertex: " + text);
    }
}

EdgeLabel next_edge(const EdgeLabel& e, int p, int q)
{
    if (e.s == Sign::plus) return EdgeLabel{e.a, e.b % q + 1, Sign::minus, e.t};
    return EdgeLabel{e.a % p + 1, e.b, Sign::plus, e.t};
}

LabeledAnnulus label_annulus(const Params& P)
{
    validate(P);
    LabeledAnnulus A;
    A.params = P;
    EdgeLabel e{1, 1, Sign::plus, 0};
    std::set<EdgeLabel> seen;
    do {
        if (!seen.insert(e).second) throw std::logic_error("N recurrence revisited a label early");
        A.outer.push_back(e);
        e = next_edge(e, P.p, P.q);
    } while (!(e == EdgeLabel{1, 1, Sign::plus, 0}));
    if ((int)A.outer.size() != 2 * P.p * P.q) throw std::logic_error("cycle length is not 2pq");
    for (auto x : A.outer) {
        x.t = 1;
        A.inner.push_back(x);
    }
    return A;
}

int edge_position(int a, int b, Sign s, int p, int q)
{
    // position 2k holds (1+k%p, 1+k%q, +), position 2k+1 holds (1+k%p, 1+(k+1)%q, -)
    int off = s == Sign::plus ? 1 : 2;
    for (int k = mod(a - 1, p); k < p * q; k += p)
        if (mod(k, q) == mod(b - off, q)) return 2 * k + (s == Sign::plus ? 0 : 1);
    throw std::invalid_argument("label outside 1..p x 1..q");
}

EdgeLabel edge_at(int pos, int p, int q, int t)
{
    pos = mod(pos, 2 * p * q);
    int k = pos / 2;
    if (pos % 2 == 0) return EdgeLabel{1 + k % p, 1 + k % q, Sign::plus, t};
    return EdgeLabel{1 + k % p, 1 + (k + 1) % q, Sign::minus, t};
}

int circle_size(const Params& P) { return 2 * P.p * P.q * P.d; }

int global_index(const VertexRef& x, const Params& P)
{
    return edge_position(x.edge.a, x.edge.b, x.edge.s, P.p, P.q) * P.d + (x.v - 1);
}

VertexRef vertex_at(int t, int g, const Params& P)
{
    g = mod(g, circle_size(P));
    return VertexRef{edge_at(g / P.d, P.p, P.q, t), g % P.d + 1};
}

bool vertex_valid(const VertexRef& x, const Params& P)
{
    const auto& e = x.edge;
    return e.a >= 1 && e.a <= P.p && e.b >= 1 && e.b <= P.q && (e.t == 0 || e.t == 1) && x.v >= 1 &&
           x.v <= P.d;
}

std::vector<VertexRef> all_vertices(const Params& P)
{
    std::vector<VertexRef> out;
    out.reserve(2 * circle_size(P));
    for (int t = 0; t < 2; ++t)
        for (int g = 0; g < circle_size(P); ++g) out.push_back(vertex_at(t, g, P));
    return out;
}

VertexRef translate(const VertexRef& x, const Params& P)
{
    int D = (x.v + P.c - 1) / P.d;
    int delta = x.v + P.c - D * P.d;
    int pos = edge_position(x.edge.a, x.edge.b, x.edge.s, P.p, P.q);
    return VertexRef{edge_at(pos + D, P.p, P.q, 1 - x.edge.t), delta};
}

VertexRef translate_inv(const VertexRef& x, const Params& P)
{
    int g = global_index(x, P) - P.c;
    return vertex_at(1 - x.edge.t, g, P);
}

VertexRef reflect(const VertexRef& x, int d)
{
    VertexRef y = x;
    y.edge.s = flip(x.edge.s);
    y.v = d + 1 - x.v;
    return y;
}

Orbit compute_orbit(const VertexRef& start, const Params& P)
{
    validate(P);
    if (!vertex_valid(start, P)) throw std::invalid_argument("start vertex invalid: " + to_string(start));
    Orbit o;
    o.params = P;
    o.start = start;
    const size_t guard = 4u * P.p * P.q * P.d;
    VertexRef x = start;
    std::set<VertexRef> seen;
    for (;;) {
        for (int step = 0; step < 4; ++step) {
            switch (step) {
                case 0: x = translate(x, P); break;
                case 1: x = reflect(x, P.d); break;
                case 2: x = translate_inv(x, P); break;
                default: x = reflect(x, P.d); break;
            }
            o.vertices.push_back(x);
            if (o.vertices.size() > guard)
                throw OrbitError("orbit from " + to_string(start) + " exceeded 4pqd vertices");
        }
        ++o.macro_cycles;
        if (x == start) break;
    }
    return o;
}

std::vector<Orbit> enumerate_lifts(const Params& P)
{
    validate(P);
    std::vector<Orbit> lifts;
    std::set<VertexRef> covered;
    for (const auto& x : all_vertices(P)) {
        if (covered.count(x)) continue;
        Orbit o = compute_orbit(x, P);
        std::set<VertexRef> vs(o.vertices.begin(), o.vertices.end());
        for (const auto& y : vs)
            if (covered.count(y))
                throw OrbitError("lift from " + to_string(x) + " overlaps an earlier lift at " + to_string(y));
        covered.insert(vs.begin(), vs.end());
        lifts.push_back(std::move(o));
    }
    return lifts;
}

int lift_containing(const std::vector<Orbit>& lifts, const VertexRef& x)
{
    for (size_t i = 0; i < lifts.size(); ++i)
        if (std::find(lifts[i].vertices.begin(), lifts[i].vertices.end(), x) != lifts[i].vertices.end())
            return (int)i;
    return -1;
}

int ArcMultiset::total_plus() const
{
    int n = 0;
    for (auto& [k, c] : plus) n += c;
    return n;
}

int ArcMultiset::total_minus() const
{
    int n = 0;
    for (auto& [k, c] : minus) n += c;
    return n;
}

ArcMultiset arcs_from_orbit(const Orbit& o)
{
    if (o.vertices.empty()) throw std::invalid_argument("orbit is empty");
    if (o.vertices.size() % 4 != 0 || o.vertices.back() != o.start)
        throw std::invalid_argument("orbit is not closed");
    ArcMultiset m;
    m.params = o.params;
    for (size_t i = 1; i < o.vertices.size(); i += 2) {
        // R-steps sit at odd positions; key by the + endpoint
        const VertexRef& x = o.vertices[i];
        VertexRef y = x.edge.s == Sign::plus ? x : reflect(x, o.params.d);
        ArcKey k{y.edge.a, y.edge.b, y.v};
        (x.edge.t == 0 ? m.plus : m.minus)[k] += 1;
    }
    return m;
}

ArcMultiset merge(const ArcMultiset& x, const ArcMultiset& y)
{
    if (x.params != y.params) throw std::invalid_argument("arc multisets with different params");
    ArcMultiset m = x;
    for (auto& [k, c] : y.plus) m.plus[k] += c;
    for (auto& [k, c] : y.minus) m.minus[k] += c;
    return m;
}

std::vector<Chord> chords_of(const Orbit& o, int orbit_id)
{
    const Params& P = o.params;
    std::vector<Chord> out;
    VertexRef prev = o.start;
    for (size_t i = 0; i < o.vertices.size(); ++i) {
        const VertexRef& cur = o.vertices[i];
        Chord ch;
        ch.circle = circle_size(P);
        ch.orbit = orbit_id;
        if (i % 2 == 0) {
            ch.kind = ChordKind::spanning;
            bool prev_outer = prev.edge.t == 0;
            ch.ends[0] = prev_outer ? prev : cur;
            ch.ends[1] = prev_outer ? cur : prev;
        } else {
            ch.kind = ChordKind::boundary;
            ch.ends[0] = prev;
            ch.ends[1] = cur;
        }
        ch.gidx[0] = global_index(ch.ends[0], P);
        ch.gidx[1] = global_index(ch.ends[1], P);
        out.push_back(ch);
        prev = cur;
    }
    return out;
}

bool interleaved(int a0, int a1, int b0, int b1, int n)
{
    auto inside = [&](int x) {
        int span = mod(a1 - a0, n), off = mod(x - a0, n);
        return off > 0 && off < span;
    };
    if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) return false;
    return inside(b0) != inside(b1);
}

bool chords_cross(const Chord& x, const Chord& y, ChordModel model)
{
    for (const auto& ex : x.ends)
        for (const auto& ey : y.ends)
            if (ex == ey) {
                if (x.orbit != y.orbit)
                    throw OrbitError("chords of distinct orbits share vertex " + to_string(ex));
                return false;
            }
    const int n = x.circle;
    if (x.kind == ChordKind::spanning && y.kind == ChordKind::spanning) {
        auto disp = [n](const Chord& ch) {
            int dd = mod(ch.gidx[1] - ch.gidx[0], n);
            return dd > n / 2 ? dd - n : dd;
        };
        int o1 = x.gidx[0], i1 = o1 + disp(x);
        int o2 = y.gidx[0], i2 = o2 + disp(y);
        for (int k = -2; k <= 2; ++k) {
            long s1 = o1 - (o2 + (long)k * n), s2 = i1 - (i2 + (long)k * n);
            if ((s1 < 0 && s2 > 0) || (s1 > 0 && s2 < 0)) return true;
        }
        return false;
    }
    if (model == ChordModel::identification) return false;
    auto shorter = [n](const Chord& b, int& lo, int& hi) {
        lo = b.gidx[0];
        hi = b.gidx[1];
        if (mod(hi - lo, n) > n / 2) std::swap(lo, hi);
    };
    if (x.kind == ChordKind::boundary && y.kind == ChordKind::boundary) {
        if (x.ends[0].edge.t != y.ends[0].edge.t) return false;
        return interleaved(x.gidx[0], x.gidx[1], y.gidx[0], y.gidx[1], n);
    }
    const Chord& b = x.kind == ChordKind::boundary ? x : y;
    const Chord& s = x.kind == ChordKind::boundary ? y : x;
    int t = b.ends[0].edge.t;
    int e = s.ends[0].edge.t == t ? s.gidx[0] : s.gidx[1];
    int lo, hi;
    shorter(b, lo, hi);
    int span = mod(hi - lo, n), off = mod(e - lo, n);
    return off > 0 && off < span;
}

std::string orbit_to_json(const Orbit& o)
{
    ojson j;
    j["params"] = params_json(o.params);
    j["start"] = vertex_json(o.start);
    ojson vs = ojson::array();
    for (const auto& x : o.vertices) vs.push_back(vertex_json(x));
    j["vertices"] = vs;
    j["version"] = 1;
    return j.dump();
}

Orbit orbit_from_json(const std::string& text)
{
    auto j = ojson::parse(text);
    Orbit o;
    const auto& pj = j.at("params");
    o.params = Params{pj.at("p").get<int>(), pj.at("q").get<int>(), pj.at("c").get<int>(), pj.at("d").get<int>()};
    o.start = vertex_from_json(j.at("start"));
    for (const auto& v : j.at("vertices")) o.vertices.push_back(vertex_from_json(v));
    o.macro_cycles = (int)o.vertices.size() / 4;
    return o;
}

std::string arcs_to_json(const ArcMultiset& m, const VertexRef& start)
{
    ojson j;
    j["params"] = params_json(m.params);
    j["start"] = vertex_json(start);
    auto side = [](const std::map<ArcKey, int>& s) {
        ojson a = ojson::array();
        for (auto& [k, c] : s) a.push_back(ojson::array({k.a, k.b, k.v, c}));
        return a;
    };
    j["plus"] = side(m.plus);
    j["minus"] = side(m.minus);
    j["version"] = 1;
    return j.dump();
}

}  // namespace gstlink
