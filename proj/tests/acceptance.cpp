// One line per acceptance criterion; exit status is the number of failures.
#include "gstlink/diagram.hpp"
#include "gstlink/invariants.hpp"
#include "gstlink/surface.hpp"

#include "oracle_tracer.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace gstlink;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(const char* name, double limit_s, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.ok && s >= limit_s) r.fail("too slow");
    std::printf("%s  %-22s %8.3f s (limit %g s)  %s\n", r.ok ? "PASS" : "FAIL", name, s, limit_s, r.detail.c_str());
    std::fflush(stdout);
    failures += !r.ok;
}

VertexRef V(int a, int b, char s, int t, int v) { return make_vertex(a, b, s == '+' ? Sign::plus : Sign::minus, t, v); }

const std::vector<Params> algebra_set{{3, 2, 2, 3}, {4, 3, 2, 3}, {3, 2, 4, 5}, {5, 2, 2, 3}};

struct Case {
    Params P;
    std::vector<std::vector<int>> variants;  // lift index sets
};

std::vector<Case> certificate_cases()
{
    auto singles_and_pairs = [](int n) {
        std::vector<std::vector<int>> v;
        for (int i = 0; i < n; ++i) v.push_back({i});
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) v.push_back({i, j});
        return v;
    };
    return {{{3, 2, 2, 3}, singles_and_pairs(6)},
            {{3, 2, 4, 5}, singles_and_pairs(6)},
            {{3, 2, 4, 7}, singles_and_pairs(6)},
            {{4, 3, 2, 3}, singles_and_pairs(12)}};
}

std::string label(const Params& P, const std::vector<VertexRef>& s)
{
    std::ostringstream o;
    o << P.p << "," << P.q << "," << P.c << "," << P.d << " [";
    for (size_t i = 0; i < s.size(); ++i) o << (i ? " " : "") << to_string(s[i]);
    o << "]";
    return o.str();
}

}  // namespace

int main()
{
    criterion("operator-algebra", 1.0, [] {
        Outcome r;
        long long checked = 0;
        for (const auto& P : algebra_set) {
            auto all = all_vertices(P);
            if ((int)all.size() != 4 * P.p * P.q * P.d) r.fail("vertex count");
            std::set<VertexRef> timg, rimg;
            for (const auto& x : all) {
                VertexRef t = translate(x, P), rr = reflect(x, P.d);
                if (!vertex_valid(t, P) || !vertex_valid(rr, P)) r.fail("image not a vertex at " + to_string(x));
                timg.insert(t);
                rimg.insert(rr);
                if (reflect(rr, P.d) != x) r.fail("reflect^2 != id at " + to_string(x));
                if (translate_inv(t, P) != x) r.fail("translate_inv . translate != id at " + to_string(x));
                if (translate(translate_inv(x, P), P) != x) r.fail("translate . translate_inv != id at " + to_string(x));
                ++checked;
            }
            if (timg.size() != all.size() || rimg.size() != all.size()) r.fail("not bijective");
        }
        if (r.ok) r.detail = std::to_string(checked) + " vertices over 4 parameter sets";
        return r;
    });

    criterion("lift-census", 5.0, [] {
        Outcome r;
        long long pairs = 0;
        for (const auto& P : algebra_set) {
            auto lifts = enumerate_lifts(P);
            if ((int)lifts.size() != P.p * P.q) r.fail("lift count at " + label(P, {}));
            std::set<VertexRef> seen;
            size_t total = 0;
            for (auto& o : lifts) {
                seen.insert(o.vertices.begin(), o.vertices.end());
                total += o.vertices.size();
            }
            if (seen.size() != total) r.fail("lifts share vertices");
            std::vector<std::vector<Chord>> ch;
            for (size_t i = 0; i < lifts.size(); ++i) ch.push_back(chords_of(lifts[i], (int)i));
            for (size_t i = 0; i < ch.size(); ++i)
                for (size_t j = i + 1; j < ch.size(); ++j)
                    for (auto& x : ch[i])
                        for (auto& y : ch[j]) {
                            ++pairs;
                            if (chords_cross(x, y)) r.fail("chords of distinct lifts cross");
                        }
        }
        if (r.ok) r.detail = std::to_string(pairs) + " chord pairs disjoint";
        return r;
    });

    criterion("hand-traced-orbit", 1.0, [] {
        Outcome r;
        const Params P{3, 2, 2, 3};
        std::vector<VertexRef> expect{V(1, 1, '+', 1, 3), V(1, 1, '-', 1, 1), V(1, 2, '+', 0, 2), V(1, 2, '-', 0, 2),
                                      V(2, 2, '+', 1, 1), V(2, 2, '-', 1, 3), V(2, 2, '-', 0, 1), V(2, 2, '+', 0, 3),
                                      V(2, 1, '-', 1, 2), V(2, 1, '+', 1, 2), V(1, 1, '-', 0, 3), V(1, 1, '+', 0, 1)};
        if (compute_orbit(V(1, 1, '+', 0, 1), P).vertices != expect) r.fail("12-vertex sequence differs");
        oracle::Tracer tr(P);
        int n = 0;
        for (auto& o : enumerate_lifts(P)) {
            if (tr.trace(o.start) != o.vertices) r.fail("tracer disagrees from " + to_string(o.start));
            ++n;
        }
        // every vertex as a start, including inner-circle ones
        for (auto& x : all_vertices(P)) {
            if (tr.trace(x) != compute_orbit(x, P).vertices) r.fail("tracer disagrees from " + to_string(x));
            ++n;
        }
        if (r.ok) r.detail = "sequence exact; tracer agrees on " + std::to_string(n) + " orbits";
        return r;
    });

    criterion("surface-bookkeeping", 30.0, [] {
        Outcome r;
        for (auto [p, q] : {std::pair{3, 2}, {4, 3}, {5, 2}, {5, 3}}) {
            auto K = build_fiber_complex({p, q, 2, 3});
            if (K.genus != (p - 1) * (q - 1) || K.boundary != 1) r.fail("genus/boundary at " + std::to_string(p) + "," + std::to_string(q));
        }
        long long selections = 0;
        for (auto [P, exhaustive] : {std::pair{Params{3, 2, 2, 3}, true}, {Params{4, 3, 2, 3}, true},
                                     {Params{5, 2, 2, 3}, true}, {Params{5, 3, 2, 3}, false}}) {
            auto K = build_fiber_complex(P);
            auto lifts = enumerate_lifts(P);
            auto sel = select_planar_system(lifts, K, exhaustive);
            auto sets = sel.all;
            if (!exhaustive || sets.empty()) sets.push_back(sel.chosen);
            if (sel.chosen.empty()) r.fail("no selection at " + label(P, {}));
            for (auto& s : sets) {
                std::vector<CurveOnSurface> cs;
                for (int i : s) cs.push_back(curve_on_fiber(lifts[i], K));
                auto c = cut_and_classify(K, cs);
                if (!c.connected || c.genus != std::vector<int>{0}) r.fail("selection not connected planar at " + label(P, {}));
                ++selections;
            }
        }
        if (r.ok) r.detail = "genus ok for 4 (p,q); " + std::to_string(selections) + " selections cut to connected planar";
        return r;
    });

    std::vector<std::pair<std::string, std::string>> first_run;  // pd text, svg
    criterion("diagram-certificates", 120.0, [&] {
        Outcome r;
        int n = 0;
        long long crossings = 0;
        for (auto& C : certificate_cases()) {
            auto lifts = enumerate_lifts(C.P);
            for (auto& v : C.variants) {
                std::vector<VertexRef> starts;
                for (int i : v) starts.push_back(lifts[i].start);
                auto L = assemble_link(C.P, starts);
                auto rep = compute_report(L.pd, std::make_pair(C.P.p, C.P.q));
                std::string where = label(C.P, starts);
                const int comps = 1 + (int)starts.size();
                if (!rep.validity.valid) r.fail("invalid PD at " + where);
                if (L.companion_count != (int)starts.size()) r.fail("companion count at " + where);
                for (auto& row : rep.linking)
                    for (auto x : row)
                        if (x) r.fail("nonzero linking at " + where);
                if (!rep.homology.is_free(comps)) r.fail("surgery homology " + rep.homology.str() + " at " + where);
                if (rep.alexander.size() != 1 || !rep.alexander[0].matches()) r.fail("Q Alexander at " + where);
                first_run.push_back({pd_text(L.pd), render_svg(L.pd)});
                crossings += (long long)L.pd.crossings.size();
                ++n;
            }
        }
        if (r.ok) r.detail = std::to_string(n) + " links certified, " + std::to_string(crossings) + " crossings";
        return r;
    });

    criterion("determinism", 120.0, [&] {
        Outcome r;
        size_t k = 0;
        for (auto& C : certificate_cases()) {
            auto lifts = enumerate_lifts(C.P);
            for (auto& v : C.variants) {
                std::vector<VertexRef> starts;
                for (int i : v) starts.push_back(lifts[i].start);
                auto L = assemble_link(C.P, starts);
                if (k >= first_run.size()) {
                    r.fail("first run incomplete");
                    return r;
                }
                if (pd_text(L.pd) != first_run[k].first) r.fail("PD text differs at " + label(C.P, starts));
                if (render_svg(L.pd) != first_run[k].second) r.fail("SVG differs at " + label(C.P, starts));
                ++k;
            }
        }
        if (r.ok) r.detail = std::to_string(k) + " PD texts and SVGs byte-identical";
        return r;
    });

    return failures;
}
