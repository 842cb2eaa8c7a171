#include "slink/filt.hpp"

#include <algorithm>
#include <limits>

namespace slink {

namespace {
constexpr int kTempOffset = 1 << 24;  // temporary point ids for doubled edges
}

CrossingStep make_crossing_step(int sign, const std::array<int, 4>& slots, int label_slot0_arc,
                                bool track, long p) {
    CrossingStep st;
    // point ids: second occurrence of a doubled (kink) edge gets a temp id
    std::array<int, 4> pt{};
    std::map<int, int> seen;
    for (int k = 0; k < 4; ++k) {
        int e = slots[k];
        if (seen.count(e)) {
            pt[k] = e + kTempOffset;
            st.welds.push_back({e, pt[k]});
        } else {
            seen[e] = 1;
            pt[k] = e;
        }
    }
    Tangle or_sm, other_sm;
    if (sign > 0) {
        or_sm.arcs = {{pt[0], pt[3]}, {pt[1], pt[2]}};
        other_sm.arcs = {{pt[0], pt[1]}, {pt[2], pt[3]}};
    } else {
        or_sm.arcs = {{pt[0], pt[1]}, {pt[2], pt[3]}};
        other_sm.arcs = {{pt[0], pt[3]}, {pt[1], pt[2]}};
    }
    or_sm.normalize();
    other_sm.normalize();
    if (sign > 0) {
        st.obj[0] = or_sm;
        st.obj[1] = other_sm;
        st.dh[0] = 0;
        st.dh[1] = 1;
        st.dq[0] = 1;
        st.dq[1] = 2;
        st.oriented = 0;
    } else {
        st.obj[0] = other_sm;
        st.obj[1] = or_sm;
        st.dh[0] = -1;
        st.dh[1] = 0;
        st.dq[0] = -2;
        st.dq[1] = -1;
        st.oriented = 1;
    }
    st.saddle = Cob::single(0, Scalar::one(p));
    if (track) {
        // two-term idempotent map: dot on the X-labelled arc minus dots on both
        auto cyc = make_cycles(or_sm, or_sm);
        int cyc0 = cyc.of_point.at(pt[0]);  // cycle of the arc through slot 0
        int cyc1 = 1 - cyc0;
        int x_cycle = label_slot0_arc == 1 ? cyc0 : cyc1;
        st.phi_map = Cob::single(1ULL << x_cycle, Scalar::one(p)) +
                     Cob::single(3ULL, -Scalar::one(p));
    }
    return st;
}

FilteredComplex::FilteredComplex(long p, bool track) : p_(p), track_(track) {}

void FilteredComplex::init_unit() {
    gens_.push_back({Tangle{}, 0, 0, true});
    out_.push_back({});
    in_.push_back({});
    if (track_) phi_[0] = Cob::single(0, Scalar::one(p_));
}

void FilteredComplex::init_circle(int label) {
    Tangle obj;
    obj.circles = {next_circle_++};
    int g = add_generator(obj, 0, 0);
    if (track_) {
        domain_ = obj;
        auto cyc = make_cycles(domain_, obj);
        std::uint64_t sbit = 1ULL << cyc.of_s_circle.at(obj.circles[0]);
        std::uint64_t tbit = 1ULL << cyc.of_t_circle.at(obj.circles[0]);
        Cob dotted = Cob::single(sbit | tbit, Scalar::one(p_));
        if (label == 1) {
            phi_[g] = dotted;  // X
        } else {               // 1 - X
            Cob cyl = Cob::single(sbit, Scalar::one(p_)) + Cob::single(tbit, Scalar::one(p_)) +
                      Cob::single(0, -Scalar::one(p_));
            phi_[g] = cyl + (-dotted);
        }
    }
}

int FilteredComplex::add_generator(const Tangle& obj, int h, int q) {
    gens_.push_back({obj, h, q, true});
    out_.push_back({});
    in_.push_back({});
    return static_cast<int>(gens_.size()) - 1;
}

void FilteredComplex::set_entry(int src, int tgt, const Cob& c) {
    if (c.is_zero()) {
        out_[src].erase(tgt);
        in_[tgt].erase(src);
        return;
    }
    out_[src][tgt] = c;
    in_[tgt].insert(src);
}

void FilteredComplex::set_phi(int gen, const Cob& c) {
    if (c.is_zero())
        phi_.erase(gen);
    else
        phi_[gen] = c;
}

void FilteredComplex::drop_generator(int g) {
    gens_[g].alive = false;
    for (auto& [t, c] : out_[g]) in_[t].erase(g);
    out_[g].clear();
    for (int s : in_[g]) out_[s].erase(g);
    in_[g].clear();
    phi_.erase(g);
}

void FilteredComplex::tensor_crossing(const CrossingStep& step) {
    std::vector<Generator> ngens;
    std::vector<std::map<int, Cob>> nout;
    std::vector<std::set<int>> nin;
    std::vector<std::array<int, 2>> id_of(gens_.size(), {-1, -1});
    std::vector<std::array<GluedObject, 2>> glued(gens_.size());

    for (size_t g = 0; g < gens_.size(); ++g) {
        if (!gens_[g].alive) continue;
        for (int k = 0; k < 2; ++k) {
            glued[g][k] = glue_objects(gens_[g].object, step.obj[k], step.welds, next_circle_);
            id_of[g][k] = static_cast<int>(ngens.size());
            ngens.push_back({glued[g][k].object, gens_[g].hdeg + step.dh[k],
                             gens_[g].qdeg + step.dq[k], true});
            nout.push_back({});
            nin.push_back({});
        }
    }

    GluedObject gdom;
    if (track_) gdom = glue_objects(domain_, step.obj[step.oriented], step.welds, next_circle_);

    // old differential (x) identity on the crossing generators
    for (size_t g = 0; g < gens_.size(); ++g) {
        if (!gens_[g].alive) continue;
        for (auto& [w, c] : out_[g]) {
            for (int k = 0; k < 2; ++k) {
                Cob idc = Cob::single(0, Scalar::one(p_));  // crossing objects have no circles
                Cob nc = glue_cobs(gens_[g].object, gens_[w].object, c, step.obj[k], step.obj[k],
                                   idc, glued[g][k], glued[w][k], p_);
                if (!nc.is_zero()) {
                    nout[id_of[g][k]][id_of[w][k]] = nc;
                    nin[id_of[w][k]].insert(id_of[g][k]);
                }
            }
        }
    }
    // identity on old generators (x) saddle, with the Koszul sign
    for (size_t g = 0; g < gens_.size(); ++g) {
        if (!gens_[g].alive) continue;
        Cob idg = identity_cob(gens_[g].object, p_);
        Scalar sgn = gens_[g].hdeg % 2 == 0 ? Scalar::one(p_) : -Scalar::one(p_);
        Cob nc = glue_cobs(gens_[g].object, gens_[g].object, idg, step.obj[0], step.obj[1],
                           step.saddle.scaled(sgn), glued[g][0], glued[g][1], p_);
        if (!nc.is_zero()) {
            nout[id_of[g][0]][id_of[g][1]] = nc;
            nin[id_of[g][1]].insert(id_of[g][0]);
        }
    }
    // extend the tracked column
    std::map<int, Cob> nphi;
    if (track_) {
        const Tangle& or_sm = step.obj[step.oriented];
        for (auto& [g, col] : phi_) {
            Cob nc = glue_cobs(domain_, gens_[g].object, col, or_sm, or_sm, step.phi_map, gdom,
                               glued[g][step.oriented], p_);
            if (!nc.is_zero()) nphi[id_of[g][step.oriented]] = nc;
        }
        domain_ = gdom.object;
    }
    gens_ = std::move(ngens);
    out_ = std::move(nout);
    in_ = std::move(nin);
    phi_ = std::move(nphi);
}

void FilteredComplex::close_domain_circles() {
    if (!track_) return;
    while (domain_.has_circle()) {
        int z = domain_.circles.front();
        Cob cup = deloop_map(domain_, z, DeloopMap::InPlus, p_);
        Tangle small = domain_;
        std::erase(small.circles, z);
        std::map<int, Cob> nphi;
        for (auto& [g, col] : phi_) {
            Cob nc = compose(small, cup, domain_, col, gens_[g].object, p_);
            if (!nc.is_zero()) nphi[g] = nc;
        }
        phi_ = std::move(nphi);
        domain_ = small;
    }
}

void FilteredComplex::deloop_pass() {
    bool found = true;
    while (found) {
        found = false;
        int n = static_cast<int>(gens_.size());
        for (int g = 0; g < n; ++g) {
            if (!gens_[g].alive || !gens_[g].object.has_circle()) continue;
            found = true;
            int z = gens_[g].object.circles.front();
            const Tangle obj = gens_[g].object;
            Tangle small = obj;
            std::erase(small.circles, z);
            Cob in_p = deloop_map(obj, z, DeloopMap::InPlus, p_);
            Cob in_m = deloop_map(obj, z, DeloopMap::InMinus, p_);
            Cob out_p = deloop_map(obj, z, DeloopMap::OutPlus, p_);
            Cob out_m = deloop_map(obj, z, DeloopMap::OutMinus, p_);

            int gp = add_generator(small, gens_[g].hdeg, gens_[g].qdeg + 1);
            int gm = add_generator(small, gens_[g].hdeg, gens_[g].qdeg - 1);
            auto outs = out_[g];
            auto ins = in_[g];
            for (auto& [v, beta] : outs) {
                Cob bp = compose(small, in_p, obj, beta, gens_[v].object, p_);
                Cob bm = compose(small, in_m, obj, beta, gens_[v].object, p_);
                if (!bp.is_zero()) set_entry(gp, v, bp);
                if (!bm.is_zero()) set_entry(gm, v, bm);
            }
            for (int w : ins) {
                Cob alpha = out_[w][g];
                Cob ap = compose(gens_[w].object, alpha, obj, out_p, small, p_);
                Cob am = compose(gens_[w].object, alpha, obj, out_m, small, p_);
                if (!ap.is_zero()) set_entry(w, gp, ap);
                if (!am.is_zero()) set_entry(w, gm, am);
            }
            if (track_) {
                auto it = phi_.find(g);
                if (it != phi_.end()) {
                    Cob fp = compose(domain_, it->second, obj, out_p, small, p_);
                    Cob fm = compose(domain_, it->second, obj, out_m, small, p_);
                    if (!fp.is_zero()) phi_[gp] = fp;
                    if (!fm.is_zero()) phi_[gm] = fm;
                }
            }
            drop_generator(g);
        }
    }
}

int FilteredComplex::delta_of_entry(int src, int tgt, const Cob& c) const {
    auto cyc = make_cycles(gens_[src].object, gens_[tgt].object);
    int dmin = std::numeric_limits<int>::max();
    for (auto& [m, s] : c.terms)
        dmin = std::min(dmin, deg_cob(cyc, m) + gens_[tgt].qdeg - gens_[src].qdeg);
    return dmin;
}

bool FilteredComplex::invertible_entry(int x, int y, int delta) const {
    const auto it = out_[x].find(y);
    if (it == out_[x].end()) return false;
    const Cob& c = it->second;
    if (c.terms.size() != 1 || c.terms[0].first != 0) return false;
    if (!(gens_[x].object == gens_[y].object)) return false;
    return gens_[y].qdeg - gens_[x].qdeg == delta;
}

void FilteredComplex::eliminate(int x, int y) {
    Cob alpha = out_[x].at(y);
    if (alpha.terms.size() != 1 || alpha.terms[0].first != 0 ||
        !(gens_[x].object == gens_[y].object))
        throw FiltError("entry not invertible");
    Scalar ci = alpha.terms[0].second.inverse();
    const Tangle mid = gens_[x].object;

    std::vector<int> sources(in_[y].begin(), in_[y].end());
    std::vector<std::pair<int, Cob>> targets(out_[x].begin(), out_[x].end());
    // phi retraction first (needs d(x) before edits)
    if (track_) {
        auto it = phi_.find(y);
        if (it != phi_.end()) {
            Cob cy = it->second;
            for (auto& [v, beta] : targets) {
                if (v == y) continue;
                Cob corr = compose(domain_, cy, mid, beta, gens_[v].object, p_).scaled(-ci);
                Cob cur = phi_.count(v) ? phi_[v] : Cob::zero();
                set_phi(v, cur + corr);
            }
        }
        phi_.erase(x);
        phi_.erase(y);
    }
    for (int w : sources) {
        if (w == x) continue;
        Cob gamma = out_[w].at(y);
        for (auto& [v, beta] : targets) {
            if (v == y) continue;
            Cob corr = compose(gens_[w].object, gamma, mid, beta, gens_[v].object, p_).scaled(-ci);
            auto cur = out_[w].find(v);
            Cob sum = cur == out_[w].end() ? corr : cur->second + corr;
            set_entry(w, v, sum);
        }
    }
    drop_generator(x);
    drop_generator(y);
}

void FilteredComplex::eliminate_delta0() {
    while (true) {
        int bx = -1, by = -1;
        long best = std::numeric_limits<long>::max();
        for (size_t x = 0; x < gens_.size(); ++x) {
            if (!gens_[x].alive) continue;
            for (auto& [y, c] : out_[x]) {
                (void)c;
                if (!invertible_entry(static_cast<int>(x), y, 0)) continue;
                long fill = static_cast<long>(in_[y].size() - 1) *
                            static_cast<long>(out_[x].size() - 1);
                if (fill < best) {
                    best = fill;
                    bx = static_cast<int>(x);
                    by = y;
                }
            }
        }
        if (bx < 0) return;
        eliminate(bx, by);
    }
}

void FilteredComplex::truncate(int remaining_negative, int threshold) {
    for (size_t g = 0; g < gens_.size(); ++g)
        if (gens_[g].alive && gens_[g].hdeg - remaining_negative >= threshold)
            drop_generator(static_cast<int>(g));
}

int FilteredComplex::page_sweep(int delta) {
    int count = 0;
    while (true) {
        int bx = -1, by = -1;
        long best = std::numeric_limits<long>::max();
        for (size_t x = 0; x < gens_.size(); ++x) {
            if (!gens_[x].alive) continue;
            for (auto& [y, c] : out_[x]) {
                (void)c;
                if (!invertible_entry(static_cast<int>(x), y, delta)) continue;
                long fill = static_cast<long>(in_[y].size() - 1) *
                            static_cast<long>(out_[x].size() - 1);
                if (fill < best) {
                    best = fill;
                    bx = static_cast<int>(x);
                    by = y;
                }
            }
        }
        if (bx < 0) break;
        eliminate(bx, by);
        ++count;
    }
    // after a sweep no entry of this page degree may remain
    for (size_t x = 0; x < gens_.size(); ++x) {
        if (!gens_[x].alive) continue;
        for (auto& [y, c] : out_[x])
            if (delta_of_entry(static_cast<int>(x), y, c) <= delta)
                throw FiltError("page sweep left a low-degree entry");
    }
    if (count > 0) pages_used_ = std::max(pages_used_, delta);
    return count;
}

void FilteredComplex::sweep_all_pages() {
    eliminate_delta0();
    int delta = 2;
    while (!differential_is_zero()) {
        page_sweep(delta);
        delta += 2;
        if (delta > 4096) throw FiltError("page sweep did not terminate");
    }
}

bool FilteredComplex::differential_is_zero() const {
    for (size_t x = 0; x < gens_.size(); ++x)
        if (gens_[x].alive && !out_[x].empty()) return false;
    return true;
}

int FilteredComplex::alive_count() const {
    int n = 0;
    for (const auto& g : gens_) n += g.alive;
    return n;
}

std::vector<int> FilteredComplex::h0_qdegs() const {
    std::vector<int> q;
    for (const auto& g : gens_)
        if (g.alive && g.hdeg == 0) q.push_back(g.qdeg);
    std::sort(q.begin(), q.end());
    return q;
}

int FilteredComplex::phi_min_q() const {
    int m = std::numeric_limits<int>::max();
    for (auto& [g, c] : phi_) {
        if (c.is_zero()) continue;
        auto cyc = make_cycles(domain_, gens_[g].object);
        for (auto& [mask, s] : c.terms)
            m = std::min(m, gens_[g].qdeg + deg_cob(cyc, mask));
    }
    return m;
}

int FilteredComplex::read_filtration() const {
    if (!differential_is_zero()) throw FiltError("differential not yet zero");
    if (!domain_.arcs.empty() || !domain_.circles.empty())
        throw FiltError("tracked domain not closed");
    int m = std::numeric_limits<int>::max();
    for (auto& [g, c] : phi_) {
        if (c.is_zero()) continue;
        if (!gens_[g].alive) throw FiltError("tracked column hits a dead generator");
        m = std::min(m, gens_[g].qdeg);
    }
    if (m == std::numeric_limits<int>::max())
        throw FiltError("tracked cocycle vanished (internal error)");
    return m;
}

void FilteredComplex::check_invariants() const {
    // entry degrees and shape
    for (size_t x = 0; x < gens_.size(); ++x) {
        if (!gens_[x].alive) continue;
        for (auto& [y, c] : out_[x]) {
            if (!gens_[y].alive) throw FiltError("entry into dead generator");
            if (gens_[y].hdeg != gens_[x].hdeg + 1) throw FiltError("entry not degree +1");
            auto cyc = make_cycles(gens_[x].object, gens_[y].object);
            for (auto& [m, s] : c.terms) {
                int delta = deg_cob(cyc, m) + gens_[y].qdeg - gens_[x].qdeg;
                if (delta < 0 || delta % 2 != 0) throw FiltError("entry delta not even >= 0");
            }
        }
    }
    // d o d = 0
    for (size_t x = 0; x < gens_.size(); ++x) {
        if (!gens_[x].alive) continue;
        std::map<int, Cob> acc;
        for (auto& [y, f] : out_[x])
            for (auto& [z, g] : out_[y]) {
                Cob c = compose(gens_[x].object, f, gens_[y].object, g, gens_[z].object, p_);
                auto it = acc.find(z);
                acc[z] = it == acc.end() ? c : it->second + c;
            }
        for (auto& [z, c] : acc)
            if (!c.is_zero()) throw FiltError("d^2 != 0");
    }
    // tracked cocycle: d o phi = 0
    if (track_) {
        std::map<int, Cob> acc;
        for (auto& [g, col] : phi_) {
            if (gens_[g].hdeg != 0) throw FiltError("tracked column outside degree 0");
            for (auto& [y, f] : out_[g]) {
                Cob c = compose(domain_, col, gens_[g].object, f, gens_[y].object, p_);
                auto it = acc.find(y);
                acc[y] = it == acc.end() ? c : it->second + c;
            }
        }
        for (auto& [y, c] : acc)
            if (!c.is_zero()) throw FiltError("tracked column is not a cocycle");
    }
}

}  // namespace slink
