#include "gstlink/pd.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace gstlink {

namespace {

const char* role_name(Role r)
{
    switch (r) {
        case Role::knot_q: return "Q";
        case Role::companion: return "V";
        default: return "unknown";
    }
}

Role role_from(const std::string& s)
{
    if (s == "Q") return Role::knot_q;
    if (s == "V") return Role::companion;
    return Role::unknown;
}

struct Succ {
    std::map<int, int> next;
    std::map<int, int> comp;
    int operator()(int l) const { return next.at(l); }
};

Succ successor_map(const PlanarDiagram& pd)
{
    if (pd.components.empty() && !pd.crossings.empty()) throw std::invalid_argument("diagram is unoriented");
    Succ s;
    for (size_t c = 0; c < pd.components.size(); ++c) {
        const auto& a = pd.components[c].arcs;
        for (size_t i = 0; i < a.size(); ++i) {
            s.next[a[i]] = a[(i + 1) % a.size()];
            s.comp[a[i]] = (int)c;
        }
    }
    return s;
}

// incoming label of the over strand at every crossing
std::vector<int> over_ins(const PlanarDiagram& pd, const Succ& s)
{
    const bool have_signs = pd.signs.size() == pd.crossings.size();
    std::map<int, std::vector<std::pair<size_t, int>>> seen;  // label -> (crossing, slot)
    for (size_t i = 0; i < pd.crossings.size(); ++i)
        for (int k = 0; k < 4; ++k) seen[pd.crossings[i][k]].push_back({i, k});
    std::vector<int> out;
    for (size_t i = 0; i < pd.crossings.size(); ++i) {
        const auto& X = pd.crossings[i];
        int j = X[1], l = X[3];
        bool jl = s.next.count(j) && s(j) == l;
        bool lj = s.next.count(l) && s(l) == j;
        if (jl != lj) {
            out.push_back(jl ? j : l);
            continue;
        }
        if (have_signs) {
            out.push_back(pd.signs[i] > 0 ? l : j);
            continue;
        }
        // two-arc component: an under passage elsewhere fixes the direction
        int in = 0;
        for (int lab : {j, l})
            for (auto [x, k] : seen[lab]) {
                if (x == i) continue;
                if (k == 0) in = lab == j ? l : j;  // lab ends at x, so it starts here
                if (k == 2) in = lab;               // lab starts at x, so it ends here
            }
        if (!in) {
            // over at both passages: orientation is a free choice, keep it consistent
            size_t other = i;
            for (auto [x, k] : seen[j])
                if (x != i) other = x;
            in = i <= other ? std::min(j, l) : std::max(j, l);
        }
        out.push_back(in);
    }
    return out;
}

}  // namespace

std::string pd_text(const PlanarDiagram& pd)
{
    std::ostringstream os;
    os << "PD[";
    for (size_t i = 0; i < pd.crossings.size(); ++i) {
        const auto& X = pd.crossings[i];
        os << (i ? ", " : "") << "X[" << X[0] << ',' << X[1] << ',' << X[2] << ',' << X[3] << ']';
    }
    os << ']';
    return os.str();
}

PlanarDiagram infer_components(std::vector<std::array<int, 4>> crossings)
{
    PlanarDiagram pd;
    pd.crossings = std::move(crossings);
    std::map<int, int> parent;
    auto find = [&](int x) {
        if (!parent.count(x)) parent[x] = x;
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (const auto& X : pd.crossings) {
        unite(X[0], X[2]);
        unite(X[1], X[3]);
    }
    std::map<int, std::vector<int>> groups;
    for (auto& [x, p] : parent) groups[find(x)].push_back(x);
    int n = 0;
    for (auto& [root, labels] : groups) {
        std::sort(labels.begin(), labels.end());
        PDComponent c;
        c.name = "K" + std::to_string(++n);
        c.arcs = labels;
        pd.components.push_back(c);
    }
    return pd;
}

PlanarDiagram parse_pd_text(const std::string& text)
{
    std::string t;
    for (char ch : text)
        if (!std::isspace((unsigned char)ch)) t += ch;
    if (t.rfind("PD[", 0) != 0 || t.back() != ']') throw std::invalid_argument("not a PD[...] expression");
    std::vector<std::array<int, 4>> xs;
    static const std::regex cross(R"(X\[(-?\d+),(-?\d+),(-?\d+),(-?\d+)\])");
    std::string body = t.substr(3, t.size() - 4);
    size_t consumed = 0;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), cross); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        xs.push_back({std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])});
        consumed += m.length() + 1;
    }
    if (body.size() + 1 != consumed && !(body.empty() && consumed == 0))
        throw std::invalid_argument("malformed PD text");
    return infer_components(xs);
}

std::string pd_json(const PlanarDiagram& pd)
{
    nlohmann::ordered_json j;
    j["format"] = "pd";
    j["version"] = 1;
    nlohmann::ordered_json xs = nlohmann::ordered_json::array();
    for (const auto& X : pd.crossings) xs.push_back({X[0], X[1], X[2], X[3]});
    j["crossings"] = xs;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : pd.components) {
        nlohmann::ordered_json o;
        o["name"] = c.name;
        o["role"] = role_name(c.role);
        o["arcs"] = c.arcs;
        cs.push_back(o);
    }
    j["components"] = cs;
    if (pd.signs.size() == pd.crossings.size()) j["signs"] = pd.signs;
    j["orientation"] = "arcs listed in traversal order";
    return j.dump();
}

PlanarDiagram pd_from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    PlanarDiagram pd;
    for (const auto& x : j.at("crossings")) {
        if (x.size() != 4) throw std::invalid_argument("crossing must have 4 entries");
        pd.crossings.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
    }
    for (const auto& c : j.at("components")) {
        PDComponent k;
        k.name = c.at("name").get<std::string>();
        k.role = role_from(c.at("role").get<std::string>());
        k.arcs = c.at("arcs").get<std::vector<int>>();
        pd.components.push_back(k);
    }
    if (j.contains("signs")) pd.signs = j["signs"].get<std::vector<int>>();
    if (!pd.signs.empty() && pd.signs.size() != pd.crossings.size()) throw std::invalid_argument("signs must match crossings");
    return pd;
}

int crossing_sign(const PlanarDiagram& pd, size_t i)
{
    return crossing_signs(pd).at(i);
}

std::vector<int> crossing_signs(const PlanarDiagram& pd)
{
    if (pd.signs.size() == pd.crossings.size()) return pd.signs;
    Succ s = successor_map(pd);
    auto in = over_ins(pd, s);
    std::vector<int> out;
    // over strand running l -> j is positive
    for (size_t i = 0; i < pd.crossings.size(); ++i) out.push_back(in[i] == pd.crossings[i][3] ? 1 : -1);
    return out;
}

std::map<int, int> label_components(const PlanarDiagram& pd)
{
    return successor_map(pd).comp;
}

int component_of(const PlanarDiagram& pd, int label)
{
    for (size_t c = 0; c < pd.components.size(); ++c)
        for (int a : pd.components[c].arcs)
            if (a == label) return (int)c;
    return -1;
}

PlanarDiagram restrict_components(const PlanarDiagram& pd, const std::vector<int>& keep)
{
    Succ s = successor_map(pd);
    std::vector<char> kept(pd.components.size(), 0);
    for (int k : keep) kept.at(k) = 1;
    // passage after each label: (crossing, kept?)
    std::map<int, bool> boundary_after;
    std::vector<size_t> keep_x;
    auto ins = over_ins(pd, s);
    for (size_t i = 0; i < pd.crossings.size(); ++i) {
        const auto& X = pd.crossings[i];
        bool k = kept[s.comp.at(X[0])] && kept[s.comp.at(X[1])];
        if (k) keep_x.push_back(i);
        boundary_after[X[0]] = boundary_after[X[0]] || k;
        boundary_after[ins[i]] = boundary_after[ins[i]] || k;
    }
    PlanarDiagram out;
    std::map<int, int> relabel;
    int base = 1;
    for (int c : keep) {
        const auto& arcs = pd.components[c].arcs;
        int m = 0;
        for (int a : arcs) m += boundary_after[a];
        PDComponent nc = pd.components[c];
        nc.arcs.clear();
        int count = 0;
        for (int a : arcs) {
            relabel[a] = m ? base + count % m : 0;
            count += boundary_after[a];
        }
        for (int r = 0; r < m; ++r) nc.arcs.push_back(base + r);
        base += m;
        out.components.push_back(nc);
    }
    for (size_t i : keep_x) {
        const auto& X = pd.crossings[i];
        out.crossings.push_back({relabel[X[0]], relabel[X[1]], relabel[X[2]], relabel[X[3]]});
        if (pd.signs.size() == pd.crossings.size()) out.signs.push_back(pd.signs[i]);
    }
    return out;
}

}  // namespace gstlink
