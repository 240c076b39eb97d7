#include <gtest/gtest.h>

#include "gstlink/surface.hpp"

#include <numeric>
#include <set>

using namespace gstlink;

namespace {

VertexRef V(int a, int b, char s, int t, int v) { return make_vertex(a, b, s == '+' ? Sign::plus : Sign::minus, t, v); }

std::vector<CurveOnSurface> curves_of(const std::vector<Orbit>& lifts, const SurfaceComplex& K, std::vector<int> idx)
{
    std::vector<CurveOnSurface> out;
    for (int i : idx) out.push_back(curve_on_fiber(lifts[i], K));
    return out;
}

}  // namespace

TEST(FiberComplex, GenusAndBoundary)
{
    for (auto [p, q] : {std::pair{3, 2}, {4, 3}, {5, 2}, {5, 3}, {5, 4}}) {
        auto K = build_fiber_complex({p, q, 2, 3});
        EXPECT_EQ(K.genus, (p - 1) * (q - 1)) << p << "," << q;
        EXPECT_EQ(K.boundary, 1);
        EXPECT_EQ(K.euler, 2 - 2 * K.genus - 1);
        EXPECT_EQ(K.pre_gluing_euler, -1);
        EXPECT_EQ((int)K.basis_edges.size(), 2 * K.genus);
    }
}

TEST(FiberComplex, DegenerateD1)
{
    auto K = build_fiber_complex({3, 2, 4, 1});
    EXPECT_EQ(K.genus, 2);
    auto lifts = enumerate_lifts({3, 2, 4, 1});
    auto cut = cut_and_classify(K, curves_of(lifts, K, {0}));
    int chi = std::accumulate(cut.euler.begin(), cut.euler.end(), 0);
    EXPECT_EQ(chi, K.euler);
}

TEST(CurveOnFiber, HandTracedOrbit)
{
    Params P{3, 2, 2, 3};
    auto K = build_fiber_complex(P);
    auto c = curve_on_fiber(compute_orbit(V(1, 1, '+', 0, 1), P), K);
    int spanning = 0, boundary = 0;
    for (auto& s : c.steps) (s.boundary ? boundary : spanning)++;
    EXPECT_EQ(spanning, 6);
    EXPECT_EQ(boundary, 6);
    EXPECT_EQ(c.steps.front().entry, c.steps.back().exit);
    for (size_t i = 1; i < c.steps.size(); ++i) EXPECT_EQ(c.steps[i].entry, c.steps[i - 1].exit);
}

TEST(CurveOnFiber, DistinctLiftsShareNoPoint)
{
    for (Params P : {Params{3, 2, 2, 3}, Params{4, 3, 2, 3}, Params{3, 2, 4, 5}}) {
        auto K = build_fiber_complex(P);
        auto lifts = enumerate_lifts(P);
        std::vector<std::set<int>> vs;
        for (auto& o : lifts) {
            auto c = curve_on_fiber(o, K);
            vs.emplace_back(c.vertices.begin(), c.vertices.end());
        }
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                for (int v : vs[i]) EXPECT_FALSE(vs[j].count(v));
    }
}

TEST(CurveOnFiber, Errors)
{
    auto K = build_fiber_complex({3, 2, 2, 3});
    auto o = compute_orbit(V(1, 1, '+', 0, 1), {3, 2, 4, 5});
    EXPECT_THROW(curve_on_fiber(o, K), std::invalid_argument);
    auto open = compute_orbit(V(1, 1, '+', 0, 1), {3, 2, 2, 3});
    open.vertices.pop_back();
    EXPECT_THROW(curve_on_fiber(open, K), std::invalid_argument);
}

TEST(Homology, FaceLoopIsZero)
{
    auto K = build_fiber_complex({3, 2, 2, 3});
    for (int f : {0, 5, 17, K.T + 3}) {
        auto h = homology_class(face_loop(K, f), K);
        EXPECT_EQ(h, std::vector<long long>(2 * K.genus, 0)) << f;
    }
}

TEST(Homology, RotationInvariant)
{
    Params P{3, 2, 2, 3};
    auto K = build_fiber_complex(P);
    auto o = compute_orbit(V(1, 1, '+', 0, 1), P);
    // restart the same curve at its third macro-cycle
    auto r = compute_orbit(o.vertices[7], P);
    std::set<VertexRef> a(o.vertices.begin(), o.vertices.end()), b(r.vertices.begin(), r.vertices.end());
    ASSERT_EQ(a, b);
    EXPECT_EQ(homology_class(curve_on_fiber(o, K), K), homology_class(curve_on_fiber(r, K), K));
}

TEST(Homology, LiftsAreNontrivialAndSumRecorded)
{
    Params P{3, 2, 2, 3};
    auto K = build_fiber_complex(P);
    std::vector<long long> sum(2 * K.genus, 0);
    for (auto& o : enumerate_lifts(P)) {
        auto h = homology_class(curve_on_fiber(o, K), K);
        EXPECT_NE(h, std::vector<long long>(2 * K.genus, 0));
        for (size_t i = 0; i < h.size(); ++i) sum[i] += h[i];
    }
    ::testing::Test::RecordProperty("lift_class_sum_size", (int)sum.size());
}

TEST(Cut, NoCurves)
{
    auto K = build_fiber_complex({4, 3, 2, 3});
    auto r = cut_and_classify(K, {});
    EXPECT_EQ(r.components, 1);
    EXPECT_EQ(r.genus, std::vector<int>{6});
    EXPECT_EQ(r.boundaries, std::vector<int>{1});
}

TEST(Cut, EulerConserved)
{
    Params P{4, 3, 2, 3};
    auto K = build_fiber_complex(P);
    auto lifts = enumerate_lifts(P);
    for (std::vector<int> idx : {std::vector<int>{0}, {0, 1}, {0, 3, 7}, {1, 2, 3, 4, 5, 6}}) {
        auto r = cut_and_classify(K, curves_of(lifts, K, idx));
        int total = 0;
        for (int i = 0; i < r.components; ++i) total += 2 - 2 * r.genus[i] - r.boundaries[i];
        EXPECT_EQ(total, K.euler);
    }
}

TEST(Cut, NotDisjointNamesPair)
{
    Params P{3, 2, 2, 3};
    auto K = build_fiber_complex(P);
    auto lifts = enumerate_lifts(P);
    auto cs = curves_of(lifts, K, {0, 1, 0});
    try {
        cut_and_classify(K, cs);
        FAIL() << "expected CutError";
    } catch (const CutError& e) {
        EXPECT_EQ(e.first, 0);
        EXPECT_EQ(e.second, 2);
    }
}

TEST(Select, ThreeTwo)
{
    Params P{3, 2, 2, 3};
    auto K = build_fiber_complex(P);
    auto lifts = enumerate_lifts(P);
    auto s = select_planar_system(lifts, K, true);
    ASSERT_EQ(s.chosen.size(), 2u);
    EXPECT_GE(s.all.size(), 1u);
    EXPECT_EQ(s.examined, 15);
    auto r = cut_and_classify(K, curves_of(lifts, K, s.chosen));
    EXPECT_EQ(r.components, 1);
    EXPECT_EQ(r.genus, std::vector<int>{0});
    EXPECT_EQ(r.boundaries, std::vector<int>{5});
    for (auto& rej : s.rejected) EXPECT_TRUE(rej.reason == "disconnected" || rej.reason == "not planar");
}

TEST(Select, FourThreeLexFirst)
{
    Params P{4, 3, 2, 3};
    auto K = build_fiber_complex(P);
    auto lifts = enumerate_lifts(P);
    auto s = select_planar_system(lifts, K);
    ASSERT_EQ(s.chosen.size(), 6u);
    auto r = cut_and_classify(K, curves_of(lifts, K, s.chosen));
    EXPECT_TRUE(r.connected);
    EXPECT_EQ(r.genus, std::vector<int>{0});
    EXPECT_EQ(r.boundaries, std::vector<int>{13});
}

TEST(Select, DisconnectedReason)
{
    // all pq lifts together always separate F
    Params P{3, 2, 2, 3};
    auto K = build_fiber_complex(P);
    auto lifts = enumerate_lifts(P);
    std::vector<int> all(lifts.size());
    std::iota(all.begin(), all.end(), 0);
    auto r = cut_and_classify(K, curves_of(lifts, K, all));
    EXPECT_FALSE(r.connected);
}
