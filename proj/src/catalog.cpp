#include "gstlink/catalog.hpp"

#include "gstlink/diagram.hpp"
#include "gstlink/invariants.hpp"
#include "gstlink/surface.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <set>

namespace gstlink {

const char* const tool_version = "0.1.0";

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string utc_now()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json params_json(const Params& P) { return {{"p", P.p}, {"q", P.q}, {"c", P.c}, {"d", P.d}}; }

std::mutex append_mutex;

}  // namespace

bool CatalogEntry::certified() const
{
    return !failure && invariants.is_object() && invariants.value("certified", false);
}

std::string entry_id(const Params& P, const std::vector<VertexRef>& starts)
{
    std::string id = std::to_string(P.p) + "-" + std::to_string(P.q) + "-" + std::to_string(P.c) + "-" + std::to_string(P.d) + "/";
    for (size_t i = 0; i < starts.size(); ++i) id += (i ? "+" : "") + to_string(starts[i]);
    return id;
}

CatalogEntry generate_entry(const Params& P, const std::vector<VertexRef>& starts)
{
    validate(P);
    if (starts.empty() || starts.size() > 2) throw std::invalid_argument("1 or 2 start vertices required");
    AssembledLink L = assemble_link(P, starts);
    CatalogEntry e;
    e.id = entry_id(P, starts);
    e.params = P;
    e.starts = starts;

    SurfaceComplex K = build_fiber_complex(P);
    std::vector<CurveOnSurface> curves;
    for (auto& o : L.orbits) curves.push_back(curve_on_fiber(o, K));
    CutReport cut = cut_and_classify(K, curves);
    ordered_json sel;
    sel["lift_index"] = L.lift_index;
    std::vector<std::string> os;
    for (auto& o : L.orbits) os.push_back(to_string(o.start));
    sel["orbit_starts"] = os;
    sel["cut"] = ordered_json::parse(cut_report_json(cut));
    e.selection = sel;

    e.pd_text = pd_text(L.pd);
    e.pd = ordered_json::parse(pd_json(L.pd));
    e.invariants = report_json(compute_report(L.pd, std::make_pair(P.p, P.q)));
    e.version = tool_version;
    e.timestamp = utc_now();
    return e;
}

CatalogEntry failure_entry(const Params& P, const std::vector<VertexRef>& starts, const std::string& why)
{
    CatalogEntry e;
    e.id = entry_id(P, starts);
    e.params = P;
    e.starts = starts;
    e.failure = why;
    e.version = tool_version;
    e.timestamp = utc_now();
    return e;
}

ordered_json entry_json(const CatalogEntry& e)
{
    ordered_json j;
    j["kind"] = "entry";
    j["id"] = e.id;
    j["params"] = params_json(e.params);
    std::vector<std::string> st;
    for (auto& s : e.starts) st.push_back(to_string(s));
    j["starts"] = st;
    if (e.failure) {
        j["failure"] = *e.failure;
    } else {
        j["selection"] = e.selection;
        j["pd_text"] = e.pd_text;
        j["pd"] = e.pd;
        j["invariants"] = e.invariants;
    }
    j["provenance"] = {{"tool", "gstlink"}, {"version", e.version}, {"timestamp", e.timestamp}};
    return j;
}

CatalogEntry entry_from_json(const ordered_json& j)
{
    CatalogEntry e;
    e.id = j.at("id").get<std::string>();
    const auto& p = j.at("params");
    e.params = {p.at("p").get<int>(), p.at("q").get<int>(), p.at("c").get<int>(), p.at("d").get<int>()};
    for (auto& s : j.at("starts")) e.starts.push_back(parse_vertex(s.get<std::string>()));
    if (j.contains("failure")) e.failure = j["failure"].get<std::string>();
    if (j.contains("selection")) e.selection = j["selection"];
    if (j.contains("pd_text")) e.pd_text = j["pd_text"].get<std::string>();
    if (j.contains("pd")) e.pd = j["pd"];
    if (j.contains("invariants")) e.invariants = j["invariants"];
    if (j.contains("provenance")) {
        e.version = j["provenance"].value("version", "");
        e.timestamp = j["provenance"].value("timestamp", "");
    }
    return e;
}

std::vector<CatalogEntry> Catalog::load() const
{
    std::vector<CatalogEntry> out;
    std::ifstream in(path_);
    if (!in) return out;
    std::map<std::string, size_t> index;
    std::vector<Annotation> notes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const json::exception&) {
            throw std::runtime_error(path_ + ":" + std::to_string(lineno) + ": malformed catalog line");
        }
        std::string kind = j.value("kind", "entry");
        if (kind == "entry") {
            CatalogEntry e = entry_from_json(j);
            if (index.count(e.id)) continue;
            index[e.id] = out.size();
            out.push_back(std::move(e));
        } else if (kind == "annotation") {
            Annotation a;
            a.entry = j.value("entry", "");
            a.target = j.value("target", "full");
            a.signature = j.value("signature", "");
            a.verified = j.value("verified", false);
            a.status = j.value("status", "");
            a.verifier_version = j.value("verifier_version", "");
            notes.push_back(a);
        }
    }
    for (auto& a : notes) {
        auto it = index.find(a.entry);
        if (it != index.end()) out[it->second].annotations.push_back(a);
    }
    return out;
}

std::optional<CatalogEntry> Catalog::find(const std::string& id) const
{
    for (auto& e : load())
        if (e.id == id) return e;
    return std::nullopt;
}

bool Catalog::append(const CatalogEntry& e) const
{
    std::lock_guard<std::mutex> lock(append_mutex);
    {
        std::ifstream in(path_);
        std::string line, needle = json(e.id).dump();
        while (std::getline(in, line)) {
            if (line.find(needle) == std::string::npos) continue;
            json j = json::parse(line, nullptr, false);
            if (!j.is_discarded() && j.value("kind", "entry") == "entry" && j.value("id", "") == e.id) return false;
        }
    }
    std::string line = entry_json(e).dump() + "\n";
    int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw std::runtime_error("cannot open catalog " + path_);
    ssize_t n = ::write(fd, line.data(), line.size());
    ::close(fd);
    if (n != (ssize_t)line.size()) throw std::runtime_error("short write to catalog " + path_);
    return true;
}

bool known_family(const std::string& f)
{
    return f == "l32-4d" || f == "l32-6n+1" || f == "l32-6n-1" || f == "ln1n-23";
}

std::optional<Params> family_member(const std::string& family, int n)
{
    Params P;
    if (family == "l32-4d") P = {3, 2, 4, n};
    else if (family == "l32-6n+1") P = {3, 2, 6, 6 * n + 1};
    else if (family == "l32-6n-1") P = {3, 2, 6, 6 * n - 1};
    else if (family == "ln1n-23") P = {n + 1, n, 2, 3};
    else throw std::invalid_argument("unknown family " + family);
    if (!params_problem(P).empty()) return std::nullopt;
    return P;
}

std::vector<std::vector<int>> sweep_variants(const Params& P)
{
    const int n = P.p * P.q;
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) out.push_back({i});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

SweepStats run_sweep(const Catalog& cat, const std::string& family, int from, int to, int jobs, std::ostream& log)
{
    if (!known_family(family)) throw std::invalid_argument("unknown family " + family);
    SweepStats st;
    std::vector<Params> members;
    for (int n = from; n <= to; ++n) {
        auto P = family_member(family, n);
        if (!P) {
            log << "skip " << family << " n=" << n << ": invalid parameters\n";
            ++st.skipped_members;
            continue;
        }
        members.push_back(*P);
    }
    auto work = [](Params P) {
        std::vector<CatalogEntry> out;
        auto lifts = enumerate_lifts(P);
        std::set<std::vector<int>> seen;  // orbit sets already generated
        for (auto& v : sweep_variants(P)) {
            std::vector<int> key = v;
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;
            std::vector<VertexRef> starts;
            for (int i : v) starts.push_back(lifts[i].start);
            try {
                out.push_back(generate_entry(P, starts));
            } catch (const std::exception& ex) {
                out.push_back(failure_entry(P, starts, ex.what()));
            }
        }
        return out;
    };
    // tuples run in parallel, results appended in member order
    std::vector<std::future<std::vector<CatalogEntry>>> pending;
    size_t next = 0;
    auto launch = [&] {
        while (next < members.size() && (int)pending.size() < std::max(1, jobs)) pending.push_back(std::async(std::launch::async, work, members[next++]));
    };
    launch();
    while (!pending.empty()) {
        auto batch = pending.front().get();
        pending.erase(pending.begin());
        launch();
        for (auto& e : batch) {
            bool added = cat.append(e);
            if (!added) {
                ++st.duplicates;
                log << e.id << ": already in catalog\n";
            } else if (e.failure) {
                ++st.failures;
                log << e.id << ": failed: " << *e.failure << "\n";
            } else {
                ++st.generated;
                log << e.id << ": " << (e.certified() ? "certified" : "NOT certified") << "\n";
            }
        }
    }
    return st;
}

MatchReport match_catalog(const std::vector<CatalogEntry>& entries)
{
    MatchReport r;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> groups;
    std::map<std::string, std::string> params_of;
    for (auto& e : entries) {
        bool any = false;
        for (auto& a : e.annotations) {
            if (!a.verified || a.signature.empty()) continue;
            any = true;
            groups[a.signature].push_back({e.id, a.target});
        }
        params_of[e.id] = e.id.substr(0, e.id.find('/'));
        if (any) ++r.annotated_entries;
        else ++r.skipped_entries;
    }
    for (auto& [sig, mem] : groups) {
        std::set<std::string> ids;
        for (auto& m : mem) ids.insert(m.first);
        if (ids.size() < 2) continue;
        MatchGroup g{sig, mem, false};
        std::set<std::string> ps;
        for (auto& id : ids) ps.insert(params_of[id]);
        g.cross_parameter = ps.size() > 1;
        r.matches.push_back(std::move(g));
    }
    if (r.annotated_entries == 0) r.notice = "no signature annotations in catalog; nothing to match";
    else if (r.skipped_entries) r.notice = "skipped " + std::to_string(r.skipped_entries) + " entries without verified signatures";
    return r;
}

ordered_json match_json(const MatchReport& r)
{
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (auto& g : r.matches) {
        ordered_json m;
        m["signature"] = g.signature;
        m["cross_parameter"] = g.cross_parameter;
        ordered_json mem = ordered_json::array();
        for (auto& [id, target] : g.members) mem.push_back({{"entry", id}, {"target", target}});
        m["members"] = mem;
        arr.push_back(m);
    }
    j["matches"] = arr;
    j["annotated_entries"] = r.annotated_entries;
    j["skipped_entries"] = r.skipped_entries;
    return j;
}

}  // namespace gstlink
