#pragma once

#include "gstlink/pd.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gstlink {

using BigInt = boost::multiprecision::cpp_int;

// Laurent polynomial in t, exponent -> nonzero coefficient
struct Laurent {
    std::map<int, BigInt> terms;

    static Laurent constant(long v);
    static Laurent monomial(long coeff, int exp);
    bool is_zero() const { return terms.empty(); }
    int min_exp() const;
    int max_exp() const;
    bool operator==(const Laurent& o) const { return terms == o.terms; }
    std::string str() const;
};

Laurent operator*(const Laurent& a, const Laurent& b);
Laurent operator+(const Laurent& a, const Laurent& b);
Laurent operator-(const Laurent& a);

// symmetric under t <-> 1/t after shifting, positive leading coefficient
Laurent normalize_alexander(const Laurent& p);

struct ValidityReport {
    bool valid = true;
    bool four_valent = true;
    bool multiplicity = true;   // every semi-arc appears exactly twice
    bool planar = true;
    bool components_match = true;
    int crossings = 0;
    int semi_arcs = 0;
    int faces = 0;
    int pieces = 0;             // connected pieces of the crossing graph
    int component_count = 0;
    std::vector<std::string> reasons;
};

ValidityReport validate_pd(const PlanarDiagram& pd);

class UnorientedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using LinkingMatrix = std::vector<std::vector<long long>>;

LinkingMatrix linking_matrix(const PlanarDiagram& pd);

struct AbelianGroup {
    int free_rank = 0;
    std::vector<long long> torsion;  // invariant factors > 1, each dividing the next
    bool is_free(int n) const { return free_rank == n && torsion.empty(); }
    std::string str() const;
};

// cokernel of a square integer matrix via Smith normal form
AbelianGroup surgery_homology(const LinkingMatrix& m);
std::vector<long long> smith_diagonal(LinkingMatrix m);

Laurent alexander_knot(const PlanarDiagram& pd, int component);
Laurent torus_alexander(int p, int q);
// Alexander polynomial of T(p,q) # T(p,q)-mirror
Laurent square_alexander(int p, int q);

// signed self-crossing sum of one component
int writhe(const PlanarDiagram& pd, int component);

struct InvariantReport {
    ValidityReport validity;
    int component_count = 0;
    LinkingMatrix linking;
    AbelianGroup homology;
    struct KnotPoly {
        std::string component;
        Laurent poly;
        std::optional<Laurent> expected;
        bool matches() const { return !expected || *expected == poly; }
    };
    std::vector<KnotPoly> alexander;
    std::vector<std::pair<std::string, int>> writhes;

    bool certified() const;  // valid, lk zero, homology free of rank n, Alexander as expected
};

// Alexander data for components with role knot_q; expected value from (p,q) if given
InvariantReport compute_report(const PlanarDiagram& pd, std::optional<std::pair<int, int>> pq = std::nullopt);

nlohmann::ordered_json laurent_json(const Laurent& p);
Laurent laurent_from_json(const nlohmann::json& j);
nlohmann::ordered_json report_json(const InvariantReport& r);

}  // namespace gstlink
