#include "gstlink/catalog.hpp"
#include "gstlink/diagram.hpp"
#include "gstlink/invariants.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace gstlink;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_precondition = 2;
constexpr int exit_unknown_id = 3;

std::string default_catalog()
{
    const char* env = std::getenv("GSTLINK_CATALOG");
    return env && *env ? env : "gstlink-catalog.jsonl";
}

void print_summary(const CatalogEntry& e)
{
    const auto& r = e.invariants;
    std::cout << "id: " << e.id << "\n";
    std::cout << "components: " << r.value("components", 0) << "  crossings: " << r.value("crossings", 0) << "\n";
    std::cout << "linking matrix: " << r["linking_matrix"].dump() << "\n";
    std::cout << "surgery homology: free rank " << r["surgery_homology"]["free_rank"] << ", torsion "
              << r["surgery_homology"]["torsion"].dump() << "\n";
    for (auto& a : r["alexander"]) {
        Laurent p = laurent_from_json(a["polynomial"]);
        std::cout << "alexander(" << a["component"].get<std::string>() << "): " << p.str();
        if (a.contains("matches")) std::cout << (a["matches"].get<bool>() ? "  [matches torus formula]" : "  [MISMATCH]");
        std::cout << "\n";
    }
    std::cout << "certified: " << (e.certified() ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gstlink: planar diagrams and certificates for pillowcase R-links"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string catalog_path = default_catalog();
    std::string seed_start = "1,1,+,0,1";
    std::string format = "pd";
    app.add_option("--catalog", catalog_path, "catalog file (JSON lines); default $GSTLINK_CATALOG");
    app.add_option("--seed-start", seed_start, "start vertex used when --start is absent");
    app.add_option("--format", format, "export format")->check(CLI::IsMember({"pd", "json", "svg"}));

    auto* gen = app.add_subcommand("generate", "build one link, certify it, append it to the catalog");
    std::vector<int> params;
    int gst = 0;
    std::vector<std::string> starts;
    gen->add_option("params", params, "p q c d")->expected(0, 4);
    gen->add_option("--gst", gst, "alias for (3,2,2n,2n+1)");
    gen->add_option("--start", starts, "start vertex a,b,s,t,v (once or twice)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    auto* sw = app.add_subcommand("sweep", "generate every 2- and 3-component variant of a family");
    std::string family;
    int from = 1, to = 0, jobs = (int)std::max(1u, std::thread::hardware_concurrency());
    sw->add_option("family", family, "l32-4d | l32-6n+1 | l32-6n-1 | ln1n-23")->required();
    sw->add_option("--from", from, "first family index");
    sw->add_option("--to", to, "last family index (inclusive)");
    sw->add_option("--jobs", jobs, "parallel parameter tuples");

    auto* mt = app.add_subcommand("match", "group annotated entries by signature");

    auto* ex = app.add_subcommand("export", "write an entry as PD text, PD JSON or SVG");
    std::string export_id, output;
    ex->add_option("id", export_id)->required();
    ex->add_option("-o,--output", output, "output file (default stdout)");

    auto* inv = app.add_subcommand("invariants", "recompute the invariant report of an entry or a PD file");
    std::string inv_id, pd_file;
    inv->add_option("id", inv_id);
    inv->add_option("--pd-file", pd_file, "PD text file instead of a catalog entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_precondition;
    }

    Catalog cat(catalog_path);
    try {
        if (gen->parsed()) {
            Params P;
            if (gst > 0) {
                if (!params.empty()) throw std::invalid_argument("give either p q c d or --gst, not both");
                P = {3, 2, 2 * gst, 2 * gst + 1};
            } else if (params.size() == 4) {
                P = {params[0], params[1], params[2], params[3]};
            } else {
                throw std::invalid_argument("generate needs p q c d or --gst n");
            }
            std::string why = params_problem(P);
            if (!why.empty()) throw ParamError(why);
            if (starts.empty()) starts.push_back(seed_start);
            if (starts.size() > 2) throw std::invalid_argument("at most two --start vertices");
            std::vector<VertexRef> sv;
            for (auto& s : starts) sv.push_back(parse_vertex(s));
            CatalogEntry e = generate_entry(P, sv);
            bool added = cat.append(e);
            std::cout << e.pd_text << "\n";
            print_summary(e);
            if (!added) std::cerr << "note: " << e.id << " already in " << cat.path() << ", not appended\n";
            return exit_ok;
        }
        if (sw->parsed()) {
            if (!known_family(family)) throw std::invalid_argument("unknown family " + family);
            SweepStats st = run_sweep(cat, family, from, to, jobs, std::cout);
            std::cout << "generated " << st.generated << ", duplicates " << st.duplicates << ", failures " << st.failures
                      << ", skipped members " << st.skipped_members << "\n";
            return exit_ok;
        }
        if (mt->parsed()) {
            MatchReport r = match_catalog(cat.load());
            if (!r.notice.empty()) std::cerr << "notice: " << r.notice << "\n";
            std::cout << match_json(r).dump(2) << "\n";
            return exit_ok;
        }
        if (ex->parsed()) {
            auto e = cat.find(export_id);
            if (!e || e->failure) {
                std::cerr << "unknown entry id: " << export_id << "\n";
                return exit_unknown_id;
            }
            std::string text;
            if (format == "pd") {
                text = e->pd_text + "\n";
            } else if (format == "json") {
                text = e->pd.dump(2) + "\n";
            } else {
                AssembledLink L = assemble_link(e->params, e->starts);
                if (pd_text(L.pd) != e->pd_text) throw std::runtime_error("regenerated diagram differs from catalog entry " + e->id);
                text = render_svg(L.pd);
            }
            if (output.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(output, std::ios::binary);
                if (!(out << text)) throw std::runtime_error("cannot write " + output);
            }
            return exit_ok;
        }
        if (inv->parsed()) {
            if (!pd_file.empty()) {
                std::ifstream in(pd_file);
                if (!in) throw std::invalid_argument("cannot read " + pd_file);
                std::stringstream ss;
                ss << in.rdbuf();
                std::cout << report_json(compute_report(parse_pd_text(ss.str()))).dump(2) << "\n";
                return exit_ok;
            }
            if (inv_id.empty()) throw std::invalid_argument("invariants needs an entry id or --pd-file");
            auto e = cat.find(inv_id);
            if (!e || e->failure) {
                std::cerr << "unknown entry id: " << inv_id << "\n";
                return exit_unknown_id;
            }
            PlanarDiagram pd = pd_from_json(e->pd.dump());
            auto report = report_json(compute_report(pd, std::make_pair(e->params.p, e->params.q)));
            std::cout << report.dump(2) << "\n";
            if (report.dump() != e->invariants.dump()) std::cerr << "warning: recomputed report differs from the stored one\n";
            return exit_ok;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}
