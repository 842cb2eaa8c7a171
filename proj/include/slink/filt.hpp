#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "slink/cob.hpp"

namespace slink {

struct FiltError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Generator {
    Tangle object;
    int hdeg = 0;
    int qdeg = 0;
    bool alive = true;
};

// One scan step: the two-generator crossing complex plus the tracked-map data.
struct CrossingStep {
    Tangle obj[2];   // generator objects on the 4 slot points
    int dh[2];       // homological shifts
    int dq[2];       // q shifts
    int oriented;    // which generator carries the oriented smoothing
    Cob saddle;      // Hom(obj[0], obj[1])
    Cob phi_map;     // Hom(oriented smoothing, oriented smoothing); empty if untracked
    std::vector<std::pair<int, int>> welds;  // kink edge identifications
};

CrossingStep make_crossing_step(int sign, const std::array<int, 4>& slots, int label_slot0_arc,
                                bool track, long p);

// Filtered cochain complex over the cobordism category with an optionally
// tracked degree-0 cochain map (the orientation cocycle).
class FilteredComplex {
  public:
    FilteredComplex(long p, bool track);

    // start with the unit object (scan pipelines)
    void init_unit();
    // start with a single labelled circle (crossingless unknot components);
    // label 1 = X, 0 = 1-X
    void init_circle(int label);

    long characteristic() const { return p_; }
    bool tracking() const { return track_; }

    void tensor_crossing(const CrossingStep& step);
    void close_domain_circles();
    void deloop_pass();
    void eliminate_delta0();
    void truncate(int remaining_negative, int threshold);
    int page_sweep(int delta);          // eliminates all delta-entries, returns count
    void sweep_all_pages();             // delta = 2, 4, ... until the differential is zero
    int pages_used() const { return pages_used_; }

    int read_filtration() const;        // min qdeg over the tracked column support
    std::vector<int> h0_qdegs() const;  // alive generators at hdeg 0
    int alive_count() const;
    bool differential_is_zero() const;

    // invariant checks (d^2 = 0, entry deltas even and >= 0, tracked cocycle)
    void check_invariants() const;

    // test access
    const std::vector<Generator>& generators() const { return gens_; }
    const std::map<int, Cob>& out_entries(int g) const { return out_[g]; }
    const std::map<int, Cob>& phi() const { return phi_; }
    const Tangle& domain() const { return domain_; }
    int phi_min_q() const;

    // direct setup (tests and the 0-crossing pipeline)
    int add_generator(const Tangle& obj, int h, int q);
    void set_entry(int src, int tgt, const Cob& c);
    void set_phi(int gen, const Cob& c);
    void set_domain(const Tangle& t) { domain_ = t; }
    void eliminate(int x, int y);       // Gaussian elimination of an invertible entry

  private:
    long p_;
    bool track_;
    std::vector<Generator> gens_;
    std::vector<std::map<int, Cob>> out_;
    std::vector<std::set<int>> in_;
    std::map<int, Cob> phi_;
    Tangle domain_;
    int next_circle_ = 1;
    int pages_used_ = 0;

    int delta_of_entry(int src, int tgt, const Cob& c) const;  // min over terms
    bool invertible_entry(int x, int y, int delta) const;
    void drop_generator(int g);
};

}  // namespace slink
