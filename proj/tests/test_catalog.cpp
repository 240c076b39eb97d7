#include <gtest/gtest.h>

#include "gstlink/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gstlink;

namespace {

struct TempCatalog {
    std::string path;
    TempCatalog()
    {
        auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path = (std::filesystem::temp_directory_path() / (std::string("gstlink_") + info->name() + ".jsonl")).string();
        std::filesystem::remove(path);
    }
    ~TempCatalog() { std::filesystem::remove(path); }
    void raw(const std::string& line) const
    {
        std::ofstream(path, std::ios::app) << line << "\n";
    }
};

VertexRef V(const char* s) { return parse_vertex(s); }

}  // namespace

TEST(Entry, IdFormat)
{
    EXPECT_EQ(entry_id({3, 2, 2, 3}, {V("1,1,+,0,1")}), "3-2-2-3/1,1,+,0,1");
    EXPECT_EQ(entry_id({3, 2, 4, 5}, {V("1,1,+,0,1"), V("1,2,-,0,3")}), "3-2-4-5/1,1,+,0,1+1,2,-,0,3");
}

TEST(Entry, GenerateCertified)
{
    auto e = generate_entry({3, 2, 2, 3}, {V("1,1,+,0,1")});
    EXPECT_TRUE(e.certified());
    EXPECT_EQ(e.invariants["components"].get<int>(), 2);
    EXPECT_EQ(e.invariants["linking_matrix"], nlohmann::ordered_json::parse("[[0,0],[0,0]]"));
    EXPECT_TRUE(e.selection["cut"]["connected"].get<bool>());
    EXPECT_EQ(e.pd_text.rfind("PD[X[", 0), 0u);
    EXPECT_EQ(e.version, tool_version);
    EXPECT_FALSE(e.timestamp.empty());
}

TEST(Entry, GenerateRejects)
{
    EXPECT_THROW(generate_entry({3, 2, 2, 4}, {V("1,1,+,0,1")}), ParamError);
    EXPECT_THROW(generate_entry({3, 2, 2, 3}, {}), std::invalid_argument);
}

TEST(Entry, JsonRoundTrip)
{
    auto e = generate_entry({3, 2, 2, 3}, {V("1,2,-,0,2")});
    auto j = entry_json(e);
    auto back = entry_from_json(nlohmann::ordered_json::parse(j.dump()));
    EXPECT_EQ(back.id, e.id);
    EXPECT_EQ(back.pd_text, e.pd_text);
    EXPECT_EQ(entry_json(back).dump(), j.dump());
}

TEST(Entry, RegenerationReproducesPd)
{
    auto a = generate_entry({3, 2, 4, 5}, {V("1,1,+,0,1")});
    auto b = generate_entry({3, 2, 4, 5}, {V("1,1,+,0,1")});
    EXPECT_EQ(a.pd_text, b.pd_text);
    EXPECT_EQ(a.pd.dump(), b.pd.dump());
    EXPECT_EQ(a.invariants.dump(), b.invariants.dump());
}

TEST(CatalogFile, AppendIsIdempotent)
{
    TempCatalog t;
    Catalog cat(t.path);
    EXPECT_TRUE(cat.load().empty());
    auto e = generate_entry({3, 2, 2, 3}, {V("1,1,+,0,1")});
    EXPECT_TRUE(cat.append(e));
    EXPECT_FALSE(cat.append(e));
    auto all = cat.load();
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(all[0].pd_text, e.pd_text);
    EXPECT_TRUE(cat.find(e.id).has_value());
    EXPECT_FALSE(cat.find("3-2-2-3/9,9,+,0,1").has_value());
}

TEST(CatalogFile, FailureRecord)
{
    TempCatalog t;
    Catalog cat(t.path);
    cat.append(failure_entry({3, 2, 2, 3}, {V("1,1,+,0,1")}, "boom"));
    auto all = cat.load();
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(all[0].failure.value(), "boom");
    EXPECT_FALSE(all[0].certified());
}

TEST(CatalogFile, MalformedLine)
{
    TempCatalog t;
    t.raw("{not json");
    EXPECT_THROW(Catalog(t.path).load(), std::runtime_error);
}

TEST(Match, NoAnnotations)
{
    TempCatalog t;
    Catalog cat(t.path);
    cat.append(generate_entry({3, 2, 2, 3}, {V("1,1,+,0,1")}));
    auto r = match_catalog(cat.load());
    EXPECT_TRUE(r.matches.empty());
    EXPECT_EQ(r.skipped_entries, 1);
    EXPECT_FALSE(r.notice.empty());
}

TEST(Match, CrossParameterPair)
{
    TempCatalog t;
    Catalog cat(t.path);
    cat.append(failure_entry({3, 2, 2, 3}, {V("1,1,+,0,1")}, "placeholder"));
    cat.append(failure_entry({3, 2, 4, 5}, {V("1,1,+,0,1")}, "placeholder"));
    cat.append(failure_entry({3, 2, 4, 7}, {V("1,1,+,0,1")}, "placeholder"));
    t.raw(R"({"kind":"annotation","entry":"3-2-2-3/1,1,+,0,1","target":"full","signature":"sigA","verified":true})");
    t.raw(R"({"kind":"annotation","entry":"3-2-4-5/1,1,+,0,1","target":"full","signature":"sigA","verified":true})");
    t.raw(R"({"kind":"annotation","entry":"3-2-4-7/1,1,+,0,1","target":"full","signature":"sigA","verified":false})");
    auto r = match_catalog(cat.load());
    ASSERT_EQ(r.matches.size(), 1u);
    EXPECT_TRUE(r.matches[0].cross_parameter);
    EXPECT_EQ(r.matches[0].members.size(), 2u);
    EXPECT_EQ(r.annotated_entries, 2);
    EXPECT_EQ(r.skipped_entries, 1);
    auto j = match_json(r);
    EXPECT_EQ(j["matches"][0]["signature"], "sigA");
}

TEST(Sweep, FamilyMembers)
{
    EXPECT_EQ(family_member("l32-4d", 5).value(), (Params{3, 2, 4, 5}));
    EXPECT_FALSE(family_member("l32-4d", 2).has_value());
    EXPECT_EQ(family_member("l32-6n+1", 1).value(), (Params{3, 2, 6, 7}));
    EXPECT_EQ(family_member("l32-6n-1", 1).value(), (Params{3, 2, 6, 5}));
    EXPECT_EQ(family_member("ln1n-23", 2).value(), (Params{3, 2, 2, 3}));
    EXPECT_EQ(family_member("ln1n-23", 3).value(), (Params{4, 3, 2, 3}));
    EXPECT_THROW(family_member("nope", 1), std::invalid_argument);
}

TEST(Sweep, Variants)
{
    auto v = sweep_variants({3, 2, 2, 3});
    EXPECT_EQ(v.size(), 6u + 15u);
}

TEST(Sweep, EmptyRange)
{
    TempCatalog t;
    std::ostringstream log;
    auto st = run_sweep(Catalog(t.path), "l32-4d", 5, 4, 2, log);
    EXPECT_EQ(st.generated, 0);
    EXPECT_TRUE(Catalog(t.path).load().empty());
}

TEST(Sweep, SmallFamilyAllCertified)
{
    TempCatalog t;
    Catalog cat(t.path);
    std::ostringstream log;
    auto st = run_sweep(cat, "l32-4d", 1, 3, 2, log);
    EXPECT_EQ(st.skipped_members, 1);  // d = 2
    EXPECT_EQ(st.generated, 42);
    EXPECT_EQ(st.failures, 0);
    for (auto& e : cat.load()) {
        EXPECT_TRUE(e.certified()) << e.id;
        EXPECT_LE(e.starts.size(), 2u);
    }
    // second run adds nothing
    auto again = run_sweep(cat, "l32-4d", 1, 3, 2, log);
    EXPECT_EQ(again.generated, 0);
    EXPECT_EQ(again.duplicates, 42);
}
