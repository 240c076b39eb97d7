#include "gstlink/invariants.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace gstlink {

Laurent Laurent::constant(long v) { return monomial(v, 0); }

Laurent Laurent::monomial(long coeff, int exp)
{
    Laurent p;
    if (coeff) p.terms[exp] = coeff;
    return p;
}

int Laurent::min_exp() const { return terms.empty() ? 0 : terms.begin()->first; }
int Laurent::max_exp() const { return terms.empty() ? 0 : terms.rbegin()->first; }

std::string Laurent::str() const
{
    if (terms.empty()) return "0";
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        BigInt c = it->second;
        int e = it->first;
        bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string var = e == 0 ? "" : e == 1 ? "t" : "t^" + std::to_string(e);
        if (c != 1 || e == 0) out += c.str();
        out += var;
    }
    return out;
}

Laurent operator*(const Laurent& a, const Laurent& b)
{
    Laurent r;
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) r.terms[ea + eb] += ca * cb;
    std::erase_if(r.terms, [](const auto& kv) { return kv.second == 0; });
    return r;
}

Laurent operator+(const Laurent& a, const Laurent& b)
{
    Laurent r = a;
    for (auto& [e, c] : b.terms) r.terms[e] += c;
    std::erase_if(r.terms, [](const auto& kv) { return kv.second == 0; });
    return r;
}

Laurent operator-(const Laurent& a)
{
    Laurent r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

Laurent normalize_alexander(const Laurent& p)
{
    if (p.is_zero()) return p;
    int lo = p.min_exp(), hi = p.max_exp();
    // even span centres on 0; odd span keeps the lower half-step
    int shift = -((lo + hi) >= 0 ? (lo + hi) / 2 : -((-(lo + hi) + 1) / 2));
    Laurent r;
    for (auto& [e, c] : p.terms) r.terms[e + shift] = c;
    if (r.terms.rbegin()->second < 0) r = -r;
    return r;
}

namespace {

// polynomials in t with nonnegative exponents, index = degree
using Poly = std::vector<BigInt>;

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly exact_div(Poly a, const Poly& b)
{
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::logic_error("inexact polynomial division");
    Poly q(a.size() - b.size() + 1);
    for (size_t k = q.size(); k-- > 0;) {
        const BigInt& top = a[k + b.size() - 1];
        if (top % b.back() != 0) throw std::logic_error("inexact polynomial division");
        q[k] = top / b.back();
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
    }
    trim(a);
    if (!a.empty()) throw std::logic_error("inexact polynomial division");
    trim(q);
    return q;
}

Poly bareiss_det(std::vector<std::vector<Poly>> A)
{
    const size_t n = A.size();
    if (n == 0) return {1};
    int sign = 1;
    Poly prev{1};
    for (size_t k = 0; k < n; ++k) {
        if (A[k][k].empty()) {
            size_t r = k + 1;
            while (r < n && A[r][k].empty()) ++r;
            if (r == n) return {};
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                A[i][j] = exact_div(sub(mul(A[k][k], A[i][j]), mul(A[i][k], A[k][j])), prev);
            A[i][k].clear();
        }
        prev = A[k][k];
    }
    Poly d = A[n - 1][n - 1];
    if (sign < 0)
        for (auto& c : d) c = -c;
    return d;
}

Laurent to_laurent(const Poly& p)
{
    Laurent r;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) r.terms[(int)i] = p[i];
    return r;
}

Poly from_terms(std::initializer_list<std::pair<int, long>> t)
{
    Poly p;
    for (auto [e, c] : t) {
        if ((int)p.size() <= e) p.resize(e + 1);
        p[e] += c;
    }
    trim(p);
    return p;
}

}  // namespace

ValidityReport validate_pd(const PlanarDiagram& pd)
{
    ValidityReport r;
    r.crossings = (int)pd.crossings.size();
    std::map<int, std::vector<std::pair<int, int>>> where;
    for (int x = 0; x < r.crossings; ++x)
        for (int j = 0; j < 4; ++j) {
            int l = pd.crossings[x][j];
            if (l <= 0) r.four_valent = false;
            where[l].push_back({x, j});
        }
    if (!r.four_valent) r.reasons.push_back("non-positive semi-arc label");
    r.semi_arcs = (int)where.size();
    for (auto& [l, w] : where)
        if (w.size() != 2) r.multiplicity = false;
    if (!r.multiplicity) r.reasons.push_back("semi-arc multiplicity");

    if (r.multiplicity && r.crossings > 0) {
        auto alpha = [&](int x, int j) {
            const auto& w = where[pd.crossings[x][j]];
            return w[0] == std::make_pair(x, j) ? w[1] : w[0];
        };
        std::vector<char> seen(4 * r.crossings, 0);
        for (int s = 0; s < 4 * r.crossings; ++s) {
            if (seen[s]) continue;
            ++r.faces;
            int d = s;
            while (!seen[d]) {
                seen[d] = 1;
                auto [y, k] = alpha(d / 4, d % 4);
                d = 4 * y + (k + 1) % 4;
            }
        }
        std::vector<int> parent(r.crossings);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        for (auto& [l, w] : where) parent[find(w[0].first)] = find(w[1].first);
        for (int x = 0; x < r.crossings; ++x) r.pieces += find(x) == x;
        r.planar = r.crossings - r.semi_arcs + r.faces == 2 * r.pieces;
        if (!r.planar) r.reasons.push_back("not planar (Euler characteristic)");
    }

    int listed = 0;
    std::set<int> listed_labels;
    for (const auto& c : pd.components) {
        listed += !c.arcs.empty();
        for (int a : c.arcs) listed_labels.insert(a);
    }
    r.component_count = (int)pd.components.size();
    if (r.multiplicity && r.four_valent) {
        int inferred = (int)infer_components(pd.crossings).components.size();
        if (pd.components.empty()) r.component_count = inferred;
        else {
            std::set<int> labels;
            for (auto& [l, w] : where) labels.insert(l);
            r.components_match = inferred == listed && labels == listed_labels;
        }
    }
    if (!r.components_match) r.reasons.push_back("component count mismatch");
    r.valid = r.four_valent && r.multiplicity && r.planar && r.components_match;
    return r;
}

LinkingMatrix linking_matrix(const PlanarDiagram& pd)
{
    if (pd.components.empty() && !pd.crossings.empty()) throw UnorientedError("diagram is unoriented");
    const size_t n = pd.components.size();
    LinkingMatrix m(n, std::vector<long long>(n, 0));
    auto comp = label_components(pd);
    auto sg = crossing_signs(pd);
    for (size_t i = 0; i < pd.crossings.size(); ++i) {
        int a = comp.at(pd.crossings[i][0]), b = comp.at(pd.crossings[i][1]);
        if (a == b) continue;
        m[a][b] += sg[i];
        m[b][a] += sg[i];
    }
    for (auto& row : m)
        for (auto& v : row) {
            if (v % 2) throw std::invalid_argument("odd inter-component sign sum");
            v /= 2;
        }
    return m;
}

std::vector<long long> smith_diagonal(LinkingMatrix a)
{
    const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<long long> diag;
    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        // pivot: smallest nonzero absolute value in the remaining block
        for (;;) {
            size_t pi = rows, pj = cols;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (a[i][j] && (pi == rows || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) pi = i, pj = j;
            if (pi == rows) return diag;
            std::swap(a[t], a[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                long long q = a[i][t] / a[t][t];
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                long long q = a[t][j] / a[t][t];
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (!clean) continue;
            // divisibility: fold any entry not divisible by the pivot into row t
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t]) {
                        for (size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(std::llabs(a[t][t]));
    }
    return diag;
}

AbelianGroup surgery_homology(const LinkingMatrix& m)
{
    AbelianGroup g;
    auto d = smith_diagonal(m);
    g.free_rank = (int)m.size() - (int)d.size();
    for (long long v : d)
        if (v > 1) g.torsion.push_back(v);
    return g;
}

std::string AbelianGroup::str() const
{
    std::vector<std::string> parts;
    if (free_rank) parts.push_back(free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank));
    for (long long t : torsion) parts.push_back("Z/" + std::to_string(t));
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

Laurent alexander_knot(const PlanarDiagram& pd, int component)
{
    if (pd.components.empty()) throw std::invalid_argument("empty diagram");
    if (component < 0 || component >= (int)pd.components.size()) throw std::out_of_range("no such component");
    PlanarDiagram K = restrict_components(pd, {component});
    const int n = (int)K.crossings.size();
    if (n == 0) return Laurent::constant(1);
    // Wirtinger generators: over-arcs, i.e. labels joined through over passages
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        auto it = parent.find(x);
        if (it == parent.end()) return parent[x] = x;
        return it->second == x ? x : it->second = find(it->second);
    };
    for (auto& X : K.crossings) parent[find(X[1])] = find(X[3]);
    std::map<int, int> gen;
    for (auto& X : K.crossings)
        for (int l : X) gen.emplace(find(l), 0);
    int g = 0;
    for (auto& [root, id] : gen) id = g++;
    if (g != n) throw std::logic_error("Wirtinger arc count differs from crossing count");
    auto sg = crossing_signs(K);
    std::vector<std::vector<Poly>> A(n, std::vector<Poly>(n));
    auto add = [&](int row, int label, std::initializer_list<std::pair<int, long>> t) {
        Poly& e = A[row][gen.at(find(label))];
        Poly r = e;
        Poly add_p = from_terms(t);
        if (r.size() < add_p.size()) r.resize(add_p.size());
        for (size_t i = 0; i < add_p.size(); ++i) r[i] += add_p[i];
        trim(r);
        e = r;
    };
    for (int x = 0; x < n; ++x) {
        const auto& X = K.crossings[x];
        if (sg[x] > 0) {
            add(x, X[1], {{0, 1}, {1, -1}});
            add(x, X[0], {{1, 1}});
            add(x, X[2], {{0, -1}});
        } else {
            add(x, X[1], {{0, -1}, {1, 1}});
            add(x, X[0], {{0, 1}});
            add(x, X[2], {{1, -1}});
        }
    }
    std::vector<std::vector<Poly>> minor(n - 1, std::vector<Poly>(n - 1));
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) minor[i][j] = A[i][j];
    return normalize_alexander(to_laurent(bareiss_det(std::move(minor))));
}

Laurent torus_alexander(int p, int q)
{
    auto tm1 = [](int k) { return from_terms({{k, 1}, {0, -1}}); };
    Poly num = mul(tm1(p * q), tm1(1));
    Poly den = mul(tm1(p), tm1(q));
    return normalize_alexander(to_laurent(exact_div(num, den)));
}

Laurent square_alexander(int p, int q)
{
    Laurent a = torus_alexander(p, q);
    return normalize_alexander(a * a);
}

int writhe(const PlanarDiagram& pd, int component)
{
    auto comp = label_components(pd);
    auto sg = crossing_signs(pd);
    int w = 0;
    for (size_t i = 0; i < pd.crossings.size(); ++i)
        if (comp.at(pd.crossings[i][0]) == component && comp.at(pd.crossings[i][1]) == component) w += sg[i];
    return w;
}

bool InvariantReport::certified() const
{
    if (!validity.valid) return false;
    for (auto& row : linking)
        for (auto v : row)
            if (v) return false;
    if (!homology.is_free(component_count)) return false;
    for (auto& k : alexander)
        if (!k.matches()) return false;
    return true;
}

InvariantReport compute_report(const PlanarDiagram& pd, std::optional<std::pair<int, int>> pq)
{
    InvariantReport r;
    r.validity = validate_pd(pd);
    r.component_count = r.validity.component_count;
    if (!r.validity.valid) return r;
    r.linking = linking_matrix(pd);
    r.homology = surgery_homology(r.linking);
    for (int c = 0; c < (int)pd.components.size(); ++c) {
        const auto& comp = pd.components[c];
        if (comp.role == Role::knot_q) {
            InvariantReport::KnotPoly k{comp.name, alexander_knot(pd, c), std::nullopt};
            if (pq) k.expected = square_alexander(pq->first, pq->second);
            r.alexander.push_back(std::move(k));
        } else if (comp.role == Role::companion) {
            r.writhes.push_back({comp.name, writhe(pd, c)});
        }
    }
    return r;
}

nlohmann::ordered_json laurent_json(const Laurent& p)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto& [e, c] : p.terms) {
        if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
            j[std::to_string(e)] = (long long)c;
        else j[std::to_string(e)] = c.str();
    }
    return j;
}

Laurent laurent_from_json(const nlohmann::json& j)
{
    Laurent p;
    for (auto& [k, v] : j.items()) {
        BigInt c = v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<long long>());
        if (c != 0) p.terms[std::stoi(k)] = c;
    }
    return p;
}

nlohmann::ordered_json report_json(const InvariantReport& r)
{
    using nlohmann::ordered_json;
    ordered_json v;
    v["valid"] = r.validity.valid;
    v["four_valent"] = r.validity.four_valent;
    v["multiplicity"] = r.validity.multiplicity;
    v["planar"] = r.validity.planar;
    v["components_match"] = r.validity.components_match;
    v["reasons"] = r.validity.reasons;
    ordered_json j;
    j["validity"] = v;
    j["components"] = r.component_count;
    j["crossings"] = r.validity.crossings;
    j["linking_matrix"] = r.linking;
    j["surgery_homology"] = {{"free_rank", r.homology.free_rank}, {"torsion", r.homology.torsion}};
    ordered_json al = ordered_json::array();
    for (auto& k : r.alexander) {
        ordered_json e;
        e["component"] = k.component;
        e["polynomial"] = laurent_json(k.poly);
        if (k.expected) {
            e["expected"] = laurent_json(*k.expected);
            e["matches"] = k.matches();
        }
        al.push_back(e);
    }
    j["alexander"] = al;
    ordered_json w = ordered_json::object();
    for (auto& [name, val] : r.writhes) w[name] = val;
    j["companion_writhe"] = w;
    j["certified"] = r.certified();
    return j;
}

}  // namespace gstlink
