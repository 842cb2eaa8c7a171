#include "slink/cob.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace slink {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

Scalar coeff_int(long p, long v) { return Scalar::from_int(p, v); }

}  // namespace

void Tangle::normalize() {
    for (auto& a : arcs)
        if (a.first > a.second) std::swap(a.first, a.second);
    std::sort(arcs.begin(), arcs.end());
    std::sort(circles.begin(), circles.end());
}

std::vector<int> Tangle::boundary() const {
    std::vector<int> b;
    for (auto [x, y] : arcs) {
        b.push_back(x);
        b.push_back(y);
    }
    std::sort(b.begin(), b.end());
    return b;
}

Cycles make_cycles(const Tangle& S, const Tangle& T) {
    if (S.boundary() != T.boundary()) throw CobError("object boundary mismatch");
    Cycles out;
    std::map<int, int> s_at, t_at;  // point -> arc index
    for (size_t i = 0; i < S.arcs.size(); ++i) {
        s_at[S.arcs[i].first] = static_cast<int>(i);
        s_at[S.arcs[i].second] = static_cast<int>(i);
    }
    for (size_t i = 0; i < T.arcs.size(); ++i) {
        t_at[T.arcs[i].first] = static_cast<int>(i);
        t_at[T.arcs[i].second] = static_cast<int>(i);
    }
    out.n_points = static_cast<int>(s_at.size());
    out.of_s_arc.assign(S.arcs.size(), -1);
    out.of_t_arc.assign(T.arcs.size(), -1);

    std::set<int> seen;
    for (auto& [p0, a0] : s_at) {
        (void)a0;
        if (seen.count(p0)) continue;
        Cycles::Cycle cyc;
        int p = p0;
        while (!seen.count(p)) {
            seen.insert(p);
            int sa = s_at[p];
            cyc.s_arcs.push_back(sa);
            int q = S.arcs[sa].first == p ? S.arcs[sa].second : S.arcs[sa].first;
            seen.insert(q);
            int ta = t_at[q];
            cyc.t_arcs.push_back(ta);
            cyc.points.push_back(p);
            cyc.points.push_back(q);
            p = T.arcs[ta].first == q ? T.arcs[ta].second : T.arcs[ta].first;
        }
        std::sort(cyc.points.begin(), cyc.points.end());
        cyc.points.erase(std::unique(cyc.points.begin(), cyc.points.end()), cyc.points.end());
        out.cycles.push_back(cyc);
    }
    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const Cycles::Cycle& a, const Cycles::Cycle& b) {
                  return a.points[0] < b.points[0];
              });
    for (int z : S.circles) {
        Cycles::Cycle c;
        c.s_circle = z;
        out.cycles.push_back(c);
    }
    for (int z : T.circles) {
        Cycles::Cycle c;
        c.t_circle = z;
        out.cycles.push_back(c);
    }
    if (out.cycles.size() > 64) throw CobError("too many cycles");
    for (size_t i = 0; i < out.cycles.size(); ++i) {
        const auto& c = out.cycles[i];
        for (int p : c.points) out.of_point[p] = static_cast<int>(i);
        for (int a : c.s_arcs) out.of_s_arc[a] = static_cast<int>(i);
        for (int a : c.t_arcs) out.of_t_arc[a] = static_cast<int>(i);
        if (c.s_circle >= 0) out.of_s_circle[c.s_circle] = static_cast<int>(i);
        if (c.t_circle >= 0) out.of_t_circle[c.t_circle] = static_cast<int>(i);
    }
    return out;
}

int deg_cob(const Cycles& cyc, std::uint64_t mask) {
    return cyc.size() - cyc.n_points / 2 - 2 * std::popcount(mask);
}

Cob Cob::single(std::uint64_t mask, const Scalar& c) {
    Cob r;
    if (!c.is_zero()) r.terms.push_back({mask, c});
    return r;
}

void Cob::merge() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::uint64_t, Scalar>> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const auto& t) { return t.second.is_zero(); });
    terms = std::move(out);
}

Cob Cob::operator+(const Cob& o) const {
    Cob r;
    r.terms = terms;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    r.merge();
    return r;
}

Cob Cob::operator-() const {
    Cob r = *this;
    for (auto& t : r.terms) t.second = -t.second;
    return r;
}

Cob Cob::scaled(const Scalar& c) const {
    if (c.is_zero()) return {};
    Cob r = *this;
    for (auto& t : r.terms) t.second = t.second * c;
    return r;
}

namespace {

// One glued piece before normalization.
struct Piece {
    int discs = 0;
    int glues = 0;            // chi-1 glue elements (middle arcs / vertical segments)
    std::vector<int> cycles;  // out-cycle indices on this piece
};

// Expand glued pieces into normalized single-cycle dotted terms and append
// them to out. dots[i] = dots landing on piece i for the current term pair.
void expand_pieces(long p, const Scalar& coeff0, const std::vector<Piece>& pieces,
                   const std::vector<int>& dots,
                   std::vector<std::pair<std::uint64_t, Scalar>>& out) {
    std::vector<std::vector<std::pair<long, std::uint64_t>>> factors;
    Scalar coeff = coeff0;
    for (size_t i = 0; i < pieces.size(); ++i) {
        const Piece& pc = pieces[i];
        int chi = pc.discs - pc.glues;
        int b = static_cast<int>(pc.cycles.size());
        int d = dots[i];
        if (b == 0) {  // closed piece: sphere 0, dotted 1, odd genus 2
            if ((2 - chi) % 2 != 0 || chi > 2) throw CobError("bad closed piece");
            int genus = (2 - chi) / 2;
            if (d >= 1) continue;
            if (genus % 2 == 0) return;
            coeff = coeff * coeff_int(p, 2);
            continue;
        }
        if ((2 - b - chi) % 2 != 0) throw CobError("piece genus parity");
        int genus = (2 - b - chi) / 2;
        if (genus < 0) throw CobError("negative genus");
        std::vector<std::pair<long, int>> dotopts;  // (multiplier, dots in {0,1})
        if (genus % 2 == 0)
            dotopts.push_back({1, d >= 1 ? 1 : 0});
        else if (d >= 1)
            dotopts.push_back({1, 1});
        else {
            dotopts.push_back({2, 1});
            dotopts.push_back({-1, 0});
        }
        std::uint64_t full = 0;
        for (int cyc : pc.cycles) full |= (1ULL << cyc);
        std::vector<std::pair<long, std::uint64_t>> opts;
        for (auto [mult, delta] : dotopts) {
            if (delta == 1) {
                opts.push_back({mult, full});
            } else if (b == 1) {
                opts.push_back({mult, 0});
            } else {
                // neck-cutting of an undotted genus-0 piece with b cycles
                for (std::uint64_t m = 0; m + 1 < (1ULL << b); ++m) {
                    std::uint64_t lifted = 0;
                    for (int j = 0; j < b; ++j)
                        if (m & (1ULL << j)) lifted |= (1ULL << pc.cycles[j]);
                    int sign = ((b - 1 - std::popcount(m)) % 2 == 0) ? 1 : -1;
                    opts.push_back({mult * sign, lifted});
                }
            }
        }
        factors.push_back(opts);
    }
    if (coeff.is_zero()) return;
    std::vector<std::pair<std::uint64_t, Scalar>> acc{{0, coeff}};
    for (const auto& f : factors) {
        std::vector<std::pair<std::uint64_t, Scalar>> next;
        next.reserve(acc.size() * f.size());
        for (const auto& [m0, c0] : acc)
            for (const auto& [mult, m1] : f) {
                Scalar c = c0 * coeff_int(p, mult);
                if (!c.is_zero()) next.push_back({m0 | m1, c});
            }
        acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
}

// Shared finish: group discs into pieces and expand every term pair.
Cob finish_glue(long p, const Cob& ca, const Cob& cb, int n1, int n2, Dsu& dsu,
                const std::vector<int>& glue_count_of_root,
                const std::vector<int>& piece_of_out_cycle, int n_out) {
    std::map<int, int> root_index;
    std::vector<Piece> pieces;
    std::vector<int> index_of(n1 + n2);
    for (int i = 0; i < n1 + n2; ++i) {
        int r = dsu.find(i);
        if (!root_index.count(r)) {
            root_index[r] = static_cast<int>(pieces.size());
            pieces.push_back({});
            pieces.back().glues = glue_count_of_root[r];
        }
        index_of[i] = root_index[r];
        ++pieces[root_index[r]].discs;
    }
    for (int i = 0; i < n_out; ++i)
        pieces[index_of[piece_of_out_cycle[i]]].cycles.push_back(i);

    Cob out;
    for (const auto& [ma, sa] : ca.terms)
        for (const auto& [mb, sb] : cb.terms) {
            std::vector<int> dots(pieces.size(), 0);
            for (int i = 0; i < n1; ++i)
                if (ma & (1ULL << i)) ++dots[index_of[i]];
            for (int i = 0; i < n2; ++i)
                if (mb & (1ULL << i)) ++dots[index_of[n1 + i]];
            expand_pieces(p, sa * sb, pieces, dots, out.terms);
        }
    out.merge();
    return out;
}

}  // namespace

Cob compose(const Tangle& a, const Cob& g, const Tangle& b, const Cob& f, const Tangle& c,
            long p) {
    if (g.is_zero() || f.is_zero()) return {};
    Cycles cab = make_cycles(a, b);
    Cycles cbc = make_cycles(b, c);
    Cycles cac = make_cycles(a, c);
    int n1 = cab.size(), n2 = cbc.size();
    Dsu dsu(n1 + n2);
    std::vector<std::pair<int, int>> glue_arcs;
    for (size_t k = 0; k < b.arcs.size(); ++k)
        glue_arcs.push_back({cab.of_t_arc[k], n1 + cbc.of_s_arc[k]});
    for (auto& [x, y] : glue_arcs) dsu.unite(x, y);
    for (int z : b.circles) dsu.unite(cab.of_t_circle.at(z), n1 + cbc.of_s_circle.at(z));
    std::vector<int> glue_count(n1 + n2, 0);
    for (auto& [x, y] : glue_arcs) ++glue_count[dsu.find(x)];

    std::vector<int> piece_of(cac.size());
    for (int i = 0; i < cac.size(); ++i) {
        const auto& cy = cac.cycles[i];
        if (!cy.s_arcs.empty())
            piece_of[i] = cab.of_s_arc[cy.s_arcs[0]];
        else if (!cy.t_arcs.empty())
            piece_of[i] = n1 + cbc.of_t_arc[cy.t_arcs[0]];
        else if (cy.s_circle >= 0)
            piece_of[i] = cab.of_s_circle.at(cy.s_circle);
        else
            piece_of[i] = n1 + cbc.of_t_circle.at(cy.t_circle);
    }
    return finish_glue(p, g, f, n1, n2, dsu, glue_count, piece_of, cac.size());
}

GluedObject glue_objects(const Tangle& A, const Tangle& B,
                         const std::vector<std::pair<int, int>>& welds, int& next_circle_id) {
    GluedObject out;
    std::map<int, int> weld_root;
    std::function<int(int)> wfind = [&](int x) -> int {
        auto it = weld_root.find(x);
        if (it == weld_root.end() || it->second == x) return x;
        return it->second = wfind(it->second);
    };
    for (auto [x, y] : welds) {
        int rx = wfind(x), ry = wfind(y);
        if (rx != ry) weld_root[rx] = ry;
    }
    struct End {
        int side, point, arc;
    };
    std::map<int, std::vector<End>> at;  // merged node -> incidences
    for (size_t i = 0; i < A.arcs.size(); ++i) {
        at[wfind(A.arcs[i].first)].push_back({0, A.arcs[i].first, static_cast<int>(i)});
        at[wfind(A.arcs[i].second)].push_back({0, A.arcs[i].second, static_cast<int>(i)});
    }
    for (size_t i = 0; i < B.arcs.size(); ++i) {
        at[wfind(B.arcs[i].first)].push_back({1, B.arcs[i].first, static_cast<int>(i)});
        at[wfind(B.arcs[i].second)].push_back({1, B.arcs[i].second, static_cast<int>(i)});
    }
    for (auto& [node, ends] : at)
        if (ends.size() > 2) throw CobError("point with more than two arc ends");

    std::set<std::pair<int, int>> used;
    std::vector<std::pair<std::pair<int, int>, GluedObject::Rep>> arcs;
    auto other_end = [&](int side, int arc, int pt) {
        const Tangle& t = side == 0 ? A : B;
        return t.arcs[arc].first == pt ? t.arcs[arc].second : t.arcs[arc].first;
    };
    for (auto& [node, ends] : at) {
        if (ends.size() != 1) continue;
        End e = ends[0];
        if (used.count({e.side, e.arc})) continue;
        GluedObject::Rep rep{e.side, 0, e.arc};
        int side = e.side, arc = e.arc, pt = e.point;
        while (true) {
            used.insert({side, arc});
            int q = other_end(side, arc, pt);
            auto& qe = at[wfind(q)];
            if (qe.size() == 1) {
                arcs.push_back({{std::min(node, wfind(q)), std::max(node, wfind(q))}, rep});
                break;
            }
            End nxt = (qe[0].side == side && qe[0].arc == arc && qe[0].point == q) ? qe[1] : qe[0];
            side = nxt.side;
            arc = nxt.arc;
            pt = nxt.point;
        }
    }
    std::vector<std::pair<int, GluedObject::Rep>> circles;
    for (int z : A.circles) circles.push_back({z, {0, 1, z}});
    for (int z : B.circles) circles.push_back({z, {1, 1, z}});
    auto trace_loop = [&](int side0, int arc0) {
        int side = side0, arc = arc0;
        int pt = (side0 == 0 ? A : B).arcs[arc0].first;
        GluedObject::Rep rep{side0, 0, arc0};
        while (!used.count({side, arc})) {
            used.insert({side, arc});
            int q = other_end(side, arc, pt);
            auto& qe = at[wfind(q)];
            End nxt = (qe[0].side == side && qe[0].arc == arc && qe[0].point == q) ? qe[1] : qe[0];
            side = nxt.side;
            arc = nxt.arc;
            pt = nxt.point;
        }
        circles.push_back({next_circle_id++, rep});
    };
    for (size_t i = 0; i < A.arcs.size(); ++i)
        if (!used.count({0, static_cast<int>(i)})) trace_loop(0, static_cast<int>(i));
    for (size_t i = 0; i < B.arcs.size(); ++i)
        if (!used.count({1, static_cast<int>(i)})) trace_loop(1, static_cast<int>(i));

    for (auto& [node, ends] : at)
        if (ends.size() == 2)
            out.consumed.push_back(
                {std::pair{ends[0].side, ends[0].point}, std::pair{ends[1].side, ends[1].point}});
    std::sort(arcs.begin(), arcs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::sort(circles.begin(), circles.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [ep, rep] : arcs) {
        out.object.arcs.push_back(ep);
        out.arc_rep.push_back(rep);
    }
    for (auto& [z, rep] : circles) {
        out.object.circles.push_back(z);
        out.circle_rep.push_back(rep);
        if (rep.kind == 0) out.new_circle_ids.push_back(z);
    }
    return out;
}

Cob glue_cobs(const Tangle& Sa, const Tangle& Ta, const Cob& ca, const Tangle& Sb,
              const Tangle& Tb, const Cob& cb, const GluedObject& gs, const GluedObject& gt,
              long p) {
    if (ca.is_zero() || cb.is_zero()) return {};
    Cycles cyc_a = make_cycles(Sa, Ta);
    Cycles cyc_b = make_cycles(Sb, Tb);
    Cycles cyc_out = make_cycles(gs.object, gt.object);
    int n1 = cyc_a.size(), n2 = cyc_b.size();
    Dsu dsu(n1 + n2);
    std::vector<std::pair<int, int>> glue_pairs;
    // each consumed point glues the two incident sheets along one vertical
    // segment; the sheet at a boundary point is the cycle through it
    auto disc_at = [&](std::pair<int, int> inc) {
        const Cycles& cy = inc.first == 0 ? cyc_a : cyc_b;
        auto it = cy.of_point.find(inc.second);
        if (it == cy.of_point.end()) throw CobError("consumed point not on boundary");
        return (inc.first == 0 ? 0 : n1) + it->second;
    };
    for (const auto& pair : gs.consumed)
        glue_pairs.push_back({disc_at(pair[0]), disc_at(pair[1])});
    for (auto& [x, y] : glue_pairs) dsu.unite(x, y);
    std::vector<int> glue_count(n1 + n2, 0);
    for (auto& [x, y] : glue_pairs) ++glue_count[dsu.find(x)];

    auto rep_disc = [&](const GluedObject::Rep& r, bool target_side) {
        const Cycles& cy = r.side == 0 ? cyc_a : cyc_b;
        int base = r.side == 0 ? 0 : n1;
        if (r.kind == 0) return base + (target_side ? cy.of_t_arc[r.ref] : cy.of_s_arc[r.ref]);
        return base + (target_side ? cy.of_t_circle.at(r.ref) : cy.of_s_circle.at(r.ref));
    };
    std::vector<int> piece_of(cyc_out.size());
    for (int i = 0; i < cyc_out.size(); ++i) {
        const auto& cy = cyc_out.cycles[i];
        if (!cy.s_arcs.empty())
            piece_of[i] = rep_disc(gs.arc_rep[cy.s_arcs[0]], false);
        else if (!cy.t_arcs.empty())
            piece_of[i] = rep_disc(gt.arc_rep[cy.t_arcs[0]], true);
        else if (cy.s_circle >= 0) {
            auto it = std::find(gs.object.circles.begin(), gs.object.circles.end(), cy.s_circle);
            piece_of[i] = rep_disc(gs.circle_rep[it - gs.object.circles.begin()], false);
        } else {
            auto it = std::find(gt.object.circles.begin(), gt.object.circles.end(), cy.t_circle);
            piece_of[i] = rep_disc(gt.circle_rep[it - gt.object.circles.begin()], true);
        }
    }
    return finish_glue(p, ca, cb, n1, n2, dsu, glue_count, piece_of, cyc_out.size());
}

namespace {

Cob product_factors(long p, const std::vector<std::vector<std::pair<std::uint64_t, long>>>& factors) {
    std::vector<std::pair<std::uint64_t, Scalar>> acc{{0, Scalar::one(p)}};
    for (const auto& f : factors) {
        std::vector<std::pair<std::uint64_t, Scalar>> next;
        for (const auto& [m0, c0] : acc)
            for (const auto& [m1, mult] : f) {
                Scalar c = c0 * coeff_int(p, mult);
                if (!c.is_zero()) next.push_back({m0 | m1, c});
            }
        acc = std::move(next);
    }
    Cob out;
    out.terms = std::move(acc);
    out.merge();
    return out;
}

}  // namespace

Cob identity_cob(const Tangle& obj, long p) {
    Cycles cyc = make_cycles(obj, obj);
    std::vector<std::vector<std::pair<std::uint64_t, long>>> factors;
    for (int z : obj.circles) {
        std::uint64_t s = 1ULL << cyc.of_s_circle.at(z);
        std::uint64_t t = 1ULL << cyc.of_t_circle.at(z);
        factors.push_back({{s, 1}, {t, 1}, {0, -1}});
    }
    return product_factors(p, factors);
}

Cob deloop_map(const Tangle& obj, int z, DeloopMap which, long p) {
    Tangle small = obj;
    std::erase(small.circles, z);
    bool in = which == DeloopMap::InPlus || which == DeloopMap::InMinus;
    const Tangle& src = in ? small : obj;
    const Tangle& tgt = in ? obj : small;
    Cycles cyc = make_cycles(src, tgt);
    std::vector<std::vector<std::pair<std::uint64_t, long>>> factors;
    for (int w : small.circles) {
        std::uint64_t s = 1ULL << cyc.of_s_circle.at(w);
        std::uint64_t t = 1ULL << cyc.of_t_circle.at(w);
        factors.push_back({{s, 1}, {t, 1}, {0, -1}});
    }
    std::uint64_t zb = 1ULL << (in ? cyc.of_t_circle.at(z) : cyc.of_s_circle.at(z));
    switch (which) {
        case DeloopMap::InPlus: break;  // plain cup
        case DeloopMap::InMinus: factors.push_back({{zb, 1}}); break;
        case DeloopMap::OutPlus: factors.push_back({{zb, 1}, {0, -1}}); break;
        case DeloopMap::OutMinus: break;  // plain cap
    }
    return product_factors(p, factors);
}

}  // namespace slink
