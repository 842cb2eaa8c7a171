#include "slink/sinv.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace slink {

namespace {

struct PartRun {
    int filtration = 0;          // tracked min-q (s mode)
    std::vector<int> h0_q;       // bounds mode
    int pages = 0;
    long dim = 0;
};

PartRun run_part(const LinkDiagram& part, long p, const SOptions& opts, bool track,
                 unsigned seed_salt) {
    PartRun out;
    FilteredComplex cx(p, track);
    if (part.crossings.empty()) {
        int label = opts.flip_labels ? 0 : 1;
        cx.init_circle(label);
        cx.deloop_pass();
        if (track) cx.close_domain_circles();
        if (opts.check) cx.check_invariants();
    } else {
        std::set<int> flips;
        if (opts.flip_labels) flips.insert(0);  // parts are connected
        SeifertData sd = oriented_resolution(part, &flips);
        std::vector<ScanStep> schedule;
        if (opts.order_seed) {
            std::vector<int> order(part.crossings.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            std::mt19937 rng(*opts.order_seed + seed_salt);
            std::shuffle(order.begin(), order.end(), rng);
            schedule = scan_schedule(part, order);
        } else {
            schedule = scan_order(part);
        }
        int remaining_neg = part.n_minus();
        int threshold;
        switch (opts.trunc) {
            case TruncMode::SMode: threshold = 1; break;
            case TruncMode::Bounds: threshold = 2; break;
            default: threshold = std::numeric_limits<int>::max();
        }
        cx.init_unit();
        for (const auto& step : schedule) {
            const Crossing& c = part.crossings[step.crossing];
            int label0 = sd.label[sd.crossing_adjacency[step.crossing].first];
            CrossingStep cs = make_crossing_step(c.sign(), c.slots, label0, track, p);
            cx.tensor_crossing(cs);
            if (c.sign() < 0) --remaining_neg;
            if (threshold != std::numeric_limits<int>::max())
                cx.truncate(remaining_neg, threshold);
            if (track) cx.close_domain_circles();
            cx.deloop_pass();
            cx.eliminate_delta0();
            if (opts.check) cx.check_invariants();
        }
    }
    cx.sweep_all_pages();
    if (opts.check) cx.check_invariants();
    if (track) out.filtration = cx.read_filtration();
    out.h0_q = cx.h0_qdegs();
    out.pages = cx.pages_used();
    out.dim = cx.alive_count();
    return out;
}

}  // namespace

SResult s_invariant(const LinkDiagram& d, long p, const SOptions& opts) {
    if (!is_valid_characteristic(p)) throw DiagramError("characteristic must be 0 or prime");
    SResult r;
    r.p = p;
    r.components = d.total_components();
    r.total_lk = d.total_linking();
    auto parts = split_parts(d);
    int total = 0;
    long dim = 1;
    unsigned salt = 0;
    for (const auto& part : parts) {
        PartRun pr = run_part(part, p, opts, true, salt++);
        total += pr.filtration + 1;
        r.pages_used = std::max(r.pages_used, pr.pages);
        dim *= pr.dim;
    }
    r.s = total - (static_cast<int>(parts.size()) - 1);
    if (opts.trunc == TruncMode::None) r.total_dim = dim;
    if (((r.s - r.components - 1) % 2 + 2) % 2 != 0)
        throw FiltError("s parity violated (internal error)");
    return r;
}

SResult s_bounds(const LinkDiagram& d, long p, const SOptions& opts) {
    if (!is_valid_characteristic(p)) throw DiagramError("characteristic must be 0 or prime");
    SOptions o = opts;
    if (o.trunc == TruncMode::SMode) o.trunc = TruncMode::Bounds;
    SResult r = s_invariant(d, p, opts);  // s still comes from the tracked run
    auto parts = split_parts(d);
    std::vector<int> qsum{0};
    int pages = 0;
    unsigned salt = 1000;
    for (const auto& part : parts) {
        PartRun pr = run_part(part, p, o, false, salt++);
        std::vector<int> next;
        for (int a : qsum)
            for (int b : pr.h0_q) next.push_back(a + b);
        std::sort(next.begin(), next.end());
        qsum = std::move(next);
        pages = std::max(pages, pr.pages);
    }
    r.e_infinity_q_h0 = qsum;
    r.pages_used = std::max(r.pages_used, pages);
    r.s_min = qsum.front() + 1;
    r.s_max = qsum.back() - 1;
    return r;
}

std::vector<OrientationEntry> orientation_scan(const LinkDiagram& d, long p,
                                               int component_limit) {
    int n = d.total_components();
    if (n > component_limit) throw DiagramError("component limit exceeded");
    std::vector<OrientationEntry> out;
    int classes = 1 << (n > 0 ? n - 1 : 0);
    for (int m = 0; m < classes; ++m) {
        std::set<int> rev;
        for (int c = 1; c < n; ++c)
            if (m & (1 << (c - 1))) rev.insert(c);
        LinkDiagram rd = reverse_components(d, rev);
        OrientationEntry e;
        e.reversed = rev;
        e.total_lk = rd.total_linking();
        e.result = s_invariant(rd, p);
        out.push_back(std::move(e));
    }
    return out;
}

SliceVerdict weak_slice_report(const SResult& r, int components) {
    return std::abs(r.s) > components - 1 ? SliceVerdict::Obstructed
                                          : SliceVerdict::Inconclusive;
}

}  // namespace slink
