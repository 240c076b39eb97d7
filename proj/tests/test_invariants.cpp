#include <gtest/gtest.h>

#include "gstlink/invariants.hpp"

using namespace gstlink;

namespace {

const char* trefoil = "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]";
const char* figure8 = "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]";
const char* five2 = "PD[X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]]";

Laurent L(std::initializer_list<std::pair<int, long>> t)
{
    Laurent p;
    for (auto [e, c] : t) p = p + Laurent::monomial(c, e);
    return p;
}

}  // namespace

TEST(Validate, Trefoil)
{
    auto r = validate_pd(parse_pd_text(trefoil));
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.component_count, 1);
    EXPECT_EQ(r.faces, 5);
    EXPECT_TRUE(r.reasons.empty());
}

TEST(Validate, TripleSemiArc)
{
    PlanarDiagram pd;
    pd.crossings = {{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 1, 2}};
    auto r = validate_pd(pd);
    EXPECT_FALSE(r.valid);
    EXPECT_FALSE(r.multiplicity);
    ASSERT_FALSE(r.reasons.empty());
    EXPECT_EQ(r.reasons[0], "semi-arc multiplicity");
}

TEST(Validate, NonPlanarRotation)
{
    // trefoil gluing with one crossing's rotation scrambled
    PlanarDiagram pd;
    pd.crossings = {{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 6, 3, 2}};
    auto r = validate_pd(pd);
    EXPECT_TRUE(r.multiplicity);
    EXPECT_EQ(r.crossings - r.semi_arcs + r.faces == 2 * r.pieces, r.planar);
    EXPECT_FALSE(r.planar);
}

TEST(Validate, ComponentCountMismatch)
{
    auto pd = parse_pd_text(trefoil);
    pd.components.push_back({"extra", Role::companion, {7}});
    EXPECT_FALSE(validate_pd(pd).components_match);
}

TEST(Linking, PositiveHopfFromText)
{
    // two 2-arc components; the numeric convention orients them 1->2 and 3->4
    auto pd = parse_pd_text("PD[X[4,1,3,2], X[2,3,1,4]]");
    ASSERT_EQ(pd.components.size(), 2u);
    auto m = linking_matrix(pd);
    EXPECT_EQ(m[0][0], 0);
    EXPECT_EQ(std::abs(m[0][1]), 1);
    EXPECT_EQ(m[0][1], m[1][0]);
}

TEST(Linking, Unoriented)
{
    PlanarDiagram pd;
    pd.crossings = {{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}};
    EXPECT_THROW(linking_matrix(pd), UnorientedError);
}

TEST(Surgery, Examples)
{
    EXPECT_TRUE(surgery_homology({{0, 0}, {0, 0}}).is_free(2));
    auto g = surgery_homology({{0, 2}, {2, 0}});
    EXPECT_EQ(g.free_rank, 0);
    EXPECT_EQ(g.torsion, (std::vector<long long>{2, 2}));
    auto u = surgery_homology({{1}});
    EXPECT_EQ(u.free_rank, 0);
    EXPECT_TRUE(u.torsion.empty());
    EXPECT_EQ(u.str(), "0");
    EXPECT_EQ(smith_diagonal({{2, 4}, {6, 8}}), (std::vector<long long>{2, 4}));
    EXPECT_EQ(surgery_homology({{2, 0}, {0, 3}}).torsion, (std::vector<long long>{6}));
}

TEST(Surgery, ZeroMatricesAreFree)
{
    for (int n = 0; n <= 6; ++n) {
        LinkingMatrix m(n, std::vector<long long>(n, 0));
        auto g = surgery_homology(m);
        EXPECT_TRUE(g.is_free(n)) << n;
    }
}

TEST(Alexander, Unknot)
{
    PlanarDiagram pd;
    pd.components.push_back({"K", Role::knot_q, {}});
    EXPECT_EQ(alexander_knot(pd, 0), Laurent::constant(1));
}

TEST(Alexander, EmptyDiagram)
{
    EXPECT_THROW(alexander_knot(PlanarDiagram{}, 0), std::invalid_argument);
}

TEST(Alexander, SmallKnots)
{
    EXPECT_EQ(alexander_knot(parse_pd_text(trefoil), 0), L({{1, 1}, {0, -1}, {-1, 1}}));
    EXPECT_EQ(alexander_knot(parse_pd_text(figure8), 0), L({{1, 1}, {0, -3}, {-1, 1}}));
    EXPECT_EQ(alexander_knot(parse_pd_text(five2), 0), L({{1, 2}, {0, -3}, {-1, 2}}));
}

TEST(Alexander, RelabelInvariant)
{
    for (const char* text : {trefoil, figure8, five2}) {
        auto pd = parse_pd_text(text);
        auto base = alexander_knot(pd, 0);
        int n = 2 * (int)pd.crossings.size();
        for (int shift = 1; shift < n; ++shift) {
            PlanarDiagram q;
            for (auto X : pd.crossings) {
                for (int& l : X) l = (l - 1 + shift) % n + 1;
                q.crossings.push_back(X);
            }
            auto r = parse_pd_text(pd_text(q));
            EXPECT_EQ(alexander_knot(r, 0), base) << text << " shift " << shift;
        }
    }
}

TEST(Alexander, TorusFormula)
{
    EXPECT_EQ(torus_alexander(3, 2), L({{1, 1}, {0, -1}, {-1, 1}}));
    EXPECT_EQ(torus_alexander(5, 2), L({{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}}));
    EXPECT_EQ(torus_alexander(4, 3), L({{3, 1}, {2, -1}, {0, 1}, {-2, -1}, {-3, 1}}));
    EXPECT_EQ(square_alexander(3, 2), L({{2, 1}, {1, -2}, {0, 3}, {-1, -2}, {-2, 1}}));
}

TEST(Alexander, Normalization)
{
    // -t^5 + t^4 - t^3  ->  t - 1 + t^-1
    EXPECT_EQ(normalize_alexander(L({{5, -1}, {4, 1}, {3, -1}})), L({{1, 1}, {0, -1}, {-1, 1}}));
    EXPECT_EQ(L({{1, 1}, {0, -1}, {-1, 1}}).str(), "t - 1 + t^-1");
}

TEST(Report, JsonShape)
{
    auto pd = parse_pd_text(trefoil);
    pd.components[0].role = Role::knot_q;
    pd.components[0].name = "Q";
    auto r = compute_report(pd, std::make_pair(3, 2));
    auto j = report_json(r);
    EXPECT_TRUE(j["validity"]["valid"].get<bool>());
    EXPECT_EQ(j["alexander"][0]["polynomial"]["1"].get<int>(), 1);
    EXPECT_EQ(j["alexander"][0]["polynomial"]["0"].get<int>(), -1);
    // the trefoil is not a square knot
    EXPECT_FALSE(j["alexander"][0]["matches"].get<bool>());
    EXPECT_FALSE(r.certified());
    EXPECT_EQ(laurent_from_json(j["alexander"][0]["polynomial"]), r.alexander[0].poly);
}

TEST(Report, InvalidDiagramStopsEarly)
{
    PlanarDiagram pd;
    pd.crossings = {{1, 1, 1, 2}};
    auto r = compute_report(pd);
    EXPECT_FALSE(r.validity.valid);
    EXPECT_TRUE(r.linking.empty());
    EXPECT_FALSE(r.certified());
}
