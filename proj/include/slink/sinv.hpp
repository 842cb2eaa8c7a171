#pragma once

#include <optional>
#include <set>

#include "slink/filt.hpp"
#include "slink/pd.hpp"

namespace slink {

struct SResult {
    int s = 0;
    std::optional<int> s_min, s_max;
    long p = 0;
    int pages_used = 0;
    std::vector<int> e_infinity_q_h0;  // bounds mode: q-degrees at hdeg 0
    int components = 0;
    int total_lk = 0;
    std::optional<long> total_dim;     // no-truncation mode: final total dimension
};

enum class TruncMode { SMode, Bounds, None };

struct SOptions {
    std::optional<unsigned> order_seed;  // random scan order instead of the greedy one
    bool flip_labels = false;            // flip the Seifert bipartition everywhere
    TruncMode trunc = TruncMode::SMode;
    bool check = false;                  // assert structural invariants at every stage
};

SResult s_invariant(const LinkDiagram& d, long p, const SOptions& opts = {});
SResult s_bounds(const LinkDiagram& d, long p, const SOptions& opts = {});

struct OrientationEntry {
    std::set<int> reversed;
    int total_lk = 0;
    SResult result;
};
// s over all orientation classes (component 0 kept fixed)
std::vector<OrientationEntry> orientation_scan(const LinkDiagram& d, long p,
                                               int component_limit = 10);

enum class SliceVerdict { Obstructed, Inconclusive };
SliceVerdict weak_slice_report(const SResult& r, int components);

}  // namespace slink
