#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace slink {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One crossing of a PD code. slots are edge ids in cyclic order with the
// incoming under-strand first; the over-strand occupies slots 1 and 3.
struct Crossing {
    std::array<int, 4> slots;
    bool over_in_at_1;  // true: over-strand runs slots[1] -> slots[3]
    int sign() const { return over_in_at_1 ? +1 : -1; }
};

struct LinkDiagram {
    std::vector<Crossing> crossings;
    int edge_count = 0;  // edges are 1..edge_count
    std::vector<std::vector<int>> components;  // edge ids in orientation order
    int unknot_components = 0;
    std::vector<int> component_of_edge;  // 1-based; indexes into components

    int total_components() const {
        return static_cast<int>(components.size()) + unknot_components;
    }
    int n_plus() const;
    int n_minus() const;
    int writhe() const { return n_plus() - n_minus(); }
    // twice the total linking number (always even; kept integral)
    int total_linking() const;
    // successor edge along the strand orientation
    int succ(int edge) const;
};

LinkDiagram parse_pd(const std::string& text);
std::string to_pd(const LinkDiagram& d);

// Oriented (Seifert) resolution with idempotent labels from 2-coloring the
// Seifert graph. label: 1 = X, 0 = 1-X.
struct SeifertData {
    int n_circles = 0;
    std::vector<int> circle_of_edge;          // 1-based edges
    std::vector<int> circle_of_unknot;        // per U component
    std::vector<std::pair<int, int>> crossing_adjacency;  // (circle through slot0 arc, other)
    std::vector<int> label;                   // per circle
};
SeifertData oriented_resolution(const LinkDiagram& d,
                                const std::set<int>* flip_parts = nullptr);

LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram reverse_components(const LinkDiagram& d, const std::set<int>& subset);
LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b);
LinkDiagram connect_sum(const LinkDiagram& a, int edge_a, const LinkDiagram& b, int edge_b);

// Decomposition into split (diagram-connectivity) parts; U components come
// out as 0-crossing one-circle parts.
std::vector<LinkDiagram> split_parts(const LinkDiagram& d);

struct ScanStep {
    int crossing;
    std::vector<int> closes;          // edges closing at this step
    std::vector<int> boundary_after;  // open edges after the step
};
std::vector<ScanStep> scan_order(const LinkDiagram& d);
std::vector<ScanStep> scan_schedule(const LinkDiagram& d, const std::vector<int>& order);
int max_girth(const std::vector<ScanStep>& steps);

// Valid random renumbering: permutes component blocks and rotates starting
// edges, preserving the consecutive-numbering convention.
LinkDiagram renumber(const LinkDiagram& d, unsigned seed);

// Assemble a diagram from explicit crossing data (slots with the incoming
// under-strand first, over-strand entering at slot 1 or 3) and the strand
// successor relation on arbitrary edge ids; edges are renumbered canonically.
LinkDiagram assemble_diagram(const std::vector<std::array<int, 4>>& slots,
                             const std::vector<bool>& over_in_at_1,
                             const std::map<int, int>& succ, int unknots);

}  // namespace slink
