#include "slink/sl3.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include "slink/filt.hpp"

namespace slink::sl3 {

namespace {
Scalar sc(long p, long v) { return Scalar::from_int(p, v); }
}

void Web::check() const {
    for (auto& [v, r] : rot) {
        int tails = 0, heads = 0;
        std::set<int> distinct;
        for (int e : r) {
            distinct.insert(e);
            auto it = edges.find(e);
            if (it == edges.end()) throw Sl3Error("rotation references missing edge");
            if (it->second.first == v) ++tails;
            if (it->second.second == v) ++heads;
        }
        if (distinct.size() != 3) throw Sl3Error("degenerate rotation");
        if (!(tails == 3 || heads == 3)) throw Sl3Error("vertex is not a source or sink");
    }
    for (auto& [e, ends] : edges) {
        if (ends.first < 0) continue;
        for (int v : {ends.first, ends.second}) {
            auto it = rot.find(v);
            if (it == rot.end()) throw Sl3Error("edge endpoint missing");
            if (std::find(it->second.begin(), it->second.end(), e) == it->second.end())
                throw Sl3Error("edge not in endpoint rotation");
        }
    }
}

Movie Movie::reversed() const {
    Movie m;
    m.webs.assign(webs.rbegin(), webs.rend());
    for (auto it = slabs.rbegin(); it != slabs.rend(); ++it) {
        Slab s;
        for (const auto& pc : it->pieces) s.pieces.push_back({pc.top, pc.bottom, pc.dots});
        for (const auto& sm : it->seams) {
            Slab::Seam r;
            for (int k = 0; k < 2; ++k) {
                r.ends[k] = {1 - sm.ends[k].first, sm.ends[k].second};
                r.strands[k] = sm.strands[k];
            }
            s.seams.push_back(r);
        }
        m.slabs.push_back(s);
    }
    return m;
}

Movie Movie::then(const Movie& next) const {
    if (!(webs.back() == next.webs.front())) throw Sl3Error("movie composition mismatch");
    Movie m = *this;
    m.webs.insert(m.webs.end(), next.webs.begin() + 1, next.webs.end());
    m.slabs.insert(m.slabs.end(), next.slabs.begin(), next.slabs.end());
    return m;
}

void Movie::add_dots(int slab, int dt, int edge, int count) {
    int found = -1;
    auto& pieces = slabs[slab].pieces;
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& ports = dt == 0 ? pieces[i].bottom : pieces[i].top;
        if (std::find(ports.begin(), ports.end(), edge) != ports.end()) {
            if (found >= 0) throw Sl3Error("ambiguous dot placement");
            found = static_cast<int>(i);
        }
    }
    if (found < 0) throw Sl3Error("dot placement: edge not found");
    pieces[found].dots += count;
}

namespace {

// identity pieces for edges untouched by a move
void finish_slab(const Web& w0, const Web& w1, Slab& slab) {
    std::set<int> bottom_done, top_done;
    for (const auto& pc : slab.pieces) {
        for (int e : pc.bottom) bottom_done.insert(e);
        for (int e : pc.top) top_done.insert(e);
    }
    for (auto& [e, ends] : w0.edges) {
        if (bottom_done.count(e)) continue;
        if (!w1.edges.count(e)) throw Sl3Error("edge vanishes without a piece");
        slab.pieces.push_back({{e}, {e}, 0});
        top_done.insert(e);
    }
    for (auto& [e, ends] : w1.edges)
        if (!top_done.count(e)) throw Sl3Error("edge appears without a piece");
}

Movie one_slab(const Web& w0, const Web& w1, Slab slab) {
    finish_slab(w0, w1, slab);
    Movie m;
    m.webs = {w0, w1};
    m.slabs = {std::move(slab)};
    return m;
}

// strand fusion at dying vertices: pairs (in_edge -> out_edge); returns the
// surgered web plus one sheet piece per pair
struct FusionResult {
    Web web;
    std::vector<int> merged_id;  // per pair
};

FusionResult fuse_strands(const Web& w, const std::set<int>& dying_vertices,
                          const std::set<int>& dying_edges,
                          const std::vector<std::pair<int, int>>& pairs) {
    FusionResult out;
    out.web = w;
    for (int v : dying_vertices) out.web.rot.erase(v);
    for (int e : dying_edges) out.web.edges.erase(e);

    std::map<int, int> nxt;  // in edge -> out edge
    for (auto [a, b] : pairs) {
        if (nxt.count(a)) throw Sl3Error("strand fused twice");
        nxt[a] = b;
    }
    std::set<int> outs;
    for (auto [a, b] : pairs) outs.insert(b);

    std::map<int, int> chain_of;  // edge -> merged id
    std::vector<std::vector<int>> chains;
    for (auto [a, b] : pairs) {
        if (chain_of.count(a)) continue;
        // walk backwards to the chain start
        int start = a;
        {
            std::map<int, int> prev;
            for (auto [x, y] : nxt) prev[y] = x;
            std::set<int> seen;
            while (prev.count(start) && !seen.count(start)) {
                seen.insert(start);
                start = prev[start];
            }
        }
        std::vector<int> chain{start};
        std::set<int> seen{start};
        int cur = start;
        while (nxt.count(cur)) {
            cur = nxt[cur];
            if (seen.count(cur)) break;  // closed chain
            seen.insert(cur);
            chain.push_back(cur);
        }
        bool closed = nxt.count(chain.back()) && nxt[chain.back()] == start &&
                      (chain.size() > 1 || nxt.at(start) == start);
        // a chain is closed when every edge of it is both an in and an out
        closed = nxt.count(chain.back()) == 1 && nxt.at(chain.back()) == chain.front();
        int id = *std::min_element(chain.begin(), chain.end());
        for (int e : chain) chain_of[e] = id;
        // surgered edge endpoints
        for (int e : chain) out.web.edges.erase(e);
        if (closed) {
            out.web.edges[id] = {-1, -1};
        } else {
            auto first = w.edges.at(chain.front());
            auto last = w.edges.at(chain.back());
            int tail = first.first, head = last.second;
            if (dying_vertices.count(tail) || dying_vertices.count(head))
                throw Sl3Error("chain endpoint dies");
            out.web.edges[id] = {tail, head};
            for (int v : {tail, head})
                for (auto& x : out.web.rot.at(v))
                    if (x == chain.front() || x == chain.back()) x = id;
        }
    }
    for (auto [a, b] : pairs) out.merged_id.push_back(chain_of.at(a));
    return out;
}

int third_edge(const Web& w, int v, int e1, int e2) {
    for (int e : w.rot.at(v))
        if (e != e1 && e != e2) return e;
    throw Sl3Error("no third edge");
}

// rotate so the given edge sits last
std::array<int, 3> rot_ending_with(const Web& w, int v, int last) {
    auto r = w.rot.at(v);
    for (int k = 0; k < 3; ++k) {
        if (r[2] == last) return r;
        std::rotate(r.begin(), r.begin() + 1, r.end());
    }
    throw Sl3Error("edge not at vertex");
}

}  // namespace

Movie birth(const Web& w, int circle_id) {
    if (w.edges.count(circle_id)) throw Sl3Error("circle id in use");
    Web w1 = w;
    w1.edges[circle_id] = {-1, -1};
    Slab s;
    s.pieces.push_back({{}, {circle_id}, 0});
    return one_slab(w, w1, std::move(s));
}

Movie death(const Web& w, int circle_id) {
    if (!w.is_circle(circle_id)) throw Sl3Error("not a circle");
    Web w1 = w;
    w1.edges.erase(circle_id);
    Slab s;
    s.pieces.push_back({{circle_id}, {}, 0});
    return one_slab(w, w1, std::move(s));
}

Movie dotted_identity(const Web& w, int edge, int dots) {
    Slab s;
    s.pieces.push_back({{edge}, {edge}, dots});
    return one_slab(w, w, std::move(s));
}

Movie unzip(const Web& web, int wide_edge) {
    auto [T, B] = web.edges.at(wide_edge);  // wide runs source T -> sink B
    if (T < 0) throw Sl3Error("unzip needs a wide edge, not a circle");
    auto rb = rot_ending_with(web, B, wide_edge);  // (x0, x1, w)
    auto rt = rot_ending_with(web, T, wide_edge);  // (y0, y1, w)
    int x0 = rb[0], x1 = rb[1], y0 = rt[0], y1 = rt[1];
    // fuse x0 with y1 (left sheet) and x1 with y0 (right sheet)
    auto fused = fuse_strands(web, {B, T}, {wide_edge}, {{x0, y1}, {x1, y0}});
    Slab s;
    auto dedup = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    s.pieces.push_back({dedup({x0, y1}), {fused.merged_id[0]}, 0});  // L
    s.pieces.push_back({dedup({x1, y0}), {fused.merged_id[1]}, 0});  // R
    s.pieces.push_back({{wide_edge}, {}, 0});                        // membrane
    if (fused.merged_id[0] == fused.merged_id[1]) s.pieces[1].top.clear();
    Slab::Seam seam;
    seam.ends[0] = {0, B};
    seam.ends[1] = {0, T};
    seam.strands[0] = {{x0, 0}, {x1, 1}, {wide_edge, 2}};
    seam.strands[1] = {{y1, 0}, {y0, 1}, {wide_edge, 2}};
    s.seams.push_back(seam);
    return one_slab(web, fused.web, std::move(s));
}

Movie digon_collapse(const Web& web, int d1, int d2) {
    auto [S, T1] = web.edges.at(d1);
    auto [S2, T] = web.edges.at(d2);
    if (S != S2 || T1 != T) throw Sl3Error("edges do not bound a digon");
    int xs = third_edge(web, S, d1, d2);
    int xt = third_edge(web, T, d1, d2);
    auto fused = fuse_strands(web, {S, T}, {d1, d2}, {{xt, xs}});
    Slab s;
    s.pieces.push_back({{d1}, {}, 0});  // fin 1
    s.pieces.push_back({{d2}, {}, 0});  // fin 2
    std::vector<int> xports{xt, xs};
    std::sort(xports.begin(), xports.end());
    xports.erase(std::unique(xports.begin(), xports.end()), xports.end());
    s.pieces.push_back({xports, {fused.merged_id[0]}, 0});
    Slab::Seam seam;
    seam.ends[0] = {0, S};
    seam.ends[1] = {0, T};
    seam.strands[0] = {{d1, 0}, {d2, 1}, {xs, 2}};
    seam.strands[1] = {{d1, 0}, {d2, 1}, {xt, 2}};
    s.seams.push_back(seam);
    return one_slab(web, fused.web, std::move(s));
}

Movie square_collapse(const Web& web, const std::array<int, 4>& face, int variant) {
    // face edges in cyclic order; shared vertices between consecutive edges
    auto shared_vertex = [&](int e, int f) {
        auto [a, b] = web.edges.at(e);
        auto [c, d] = web.edges.at(f);
        if (a == c || a == d) return a;
        if (b == c || b == d) return b;
        throw Sl3Error("face edges not adjacent");
    };
    std::array<int, 4> v{};  // v[i] shared by face[i], face[i+1]
    for (int i = 0; i < 4; ++i) v[i] = shared_vertex(face[i], face[(i + 1) % 4]);
    int f1 = face[variant], f2 = face[variant + 2];          // fins
    int m1 = face[(variant + 1) % 4], m2 = face[(variant + 3) % 4];  // saddle
    // fin f1 spans vertices v[variant-1], v[variant]
    auto fin_verts = [&](int idx) {
        return std::pair<int, int>{v[(idx + 3) % 4], v[idx]};
    };
    auto [a1, b1] = fin_verts(variant);
    auto [a2, b2] = fin_verts(variant + 2);
    std::set<int> dying{v[0], v[1], v[2], v[3]};

    // externals at the two endpoints of each fin fuse
    auto ext_at = [&](int vv) {
        int count = 0, found = -1;
        for (int e : web.rot.at(vv))
            if (e != face[0] && e != face[1] && e != face[2] && e != face[3]) {
                ++count;
                found = e;
            }
        if (count != 1) throw Sl3Error("square vertex without a single external");
        return found;
    };
    auto ordered_pair = [&](int va, int vb) {
        int ea = ext_at(va), eb = ext_at(vb);
        // the incoming external (head at a dying vertex) fuses into the outgoing one
        bool ea_in = web.edges.at(ea).second == va;
        return ea_in ? std::pair<int, int>{ea, eb} : std::pair<int, int>{eb, ea};
    };
    auto p1 = ordered_pair(a1, b1);
    auto p2 = ordered_pair(a2, b2);
    auto fused = fuse_strands(web, dying, {face[0], face[1], face[2], face[3]}, {p1, p2});

    Slab s;
    s.pieces.push_back({{f1}, {}, 0});  // 0: fin 1
    s.pieces.push_back({{f2}, {}, 0});  // 1: fin 2
    std::vector<int> mid{m1, m2};
    std::sort(mid.begin(), mid.end());
    s.pieces.push_back({mid, {}, 0});   // 2: saddle
    auto dedup = [](std::vector<int> x) {
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        return x;
    };
    int ext_piece_1 = 3, ext_piece_2;
    s.pieces.push_back({dedup({p1.first, p1.second}), {fused.merged_id[0]}, 0});
    if (fused.merged_id[0] == fused.merged_id[1] &&
        dedup({p1.first, p1.second}) == dedup({p2.first, p2.second})) {
        ext_piece_2 = ext_piece_1;  // a single closed chain: one piece only
        if (fused.web.is_circle(fused.merged_id[0])) {
            // both pairs feed one circle: single piece with all externals
            s.pieces[3].bottom = dedup({p1.first, p1.second, p2.first, p2.second});
        }
    } else {
        ext_piece_2 = 4;
        s.pieces.push_back({dedup({p2.first, p2.second}), {fused.merged_id[1]}, 0});
        if (fused.merged_id[0] == fused.merged_id[1]) s.pieces[4].top.clear();
    }

    auto fin_seam = [&](int fin_piece, int fin_edge, int va, int vb, int ext_piece) {
        Slab::Seam seam;
        seam.ends[0] = {0, va};
        seam.ends[1] = {0, vb};
        for (int k = 0; k < 2; ++k) {
            int vv = k == 0 ? va : vb;
            std::map<int, int> m;
            for (int e : web.rot.at(vv)) {
                if (e == fin_edge)
                    m[e] = fin_piece;
                else if (e == m1 || e == m2)
                    m[e] = 2;
                else
                    m[e] = ext_piece;
            }
            seam.strands[k] = m;
        }
        s.seams.push_back(seam);
    };
    fin_seam(0, f1, a1, b1, ext_piece_1);
    fin_seam(1, f2, a2, b2, ext_piece_2);
    return one_slab(web, fused.web, std::move(s));
}

std::vector<std::vector<int>> web_faces(const Web& w) {
    // darts (edge, dir): dir 0 along the orientation; faces via clockwise-next
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> faces;
    for (auto& [e0, ends0] : w.edges) {
        if (w.is_circle(e0)) continue;
        for (int d0 : {0, 1}) {
            if (seen.count({e0, d0})) continue;
            std::vector<int> face;
            int e = e0, d = d0;
            while (!seen.count({e, d})) {
                seen.insert({e, d});
                face.push_back(e);
                auto [tail, head] = w.edges.at(e);
                int v = d == 0 ? head : tail;
                const auto& r = w.rot.at(v);
                int idx = 0;
                while (r[idx] != e) ++idx;
                int f = r[(idx + 2) % 3];  // clockwise neighbour
                auto [ft, fh] = w.edges.at(f);
                d = ft == v ? 0 : 1;
                e = f;
            }
            faces.push_back(face);
        }
    }
    return faces;
}

// ---------------------------------------------------------------------------
// closed foam assembly and evaluation

namespace {

int theta_value(int d0, int d1, int d2) {
    if (d0 == 0 && d1 == 1 && d2 == 2) return 1;
    if (d0 == 1 && d1 == 2 && d2 == 0) return 1;
    if (d0 == 2 && d1 == 0 && d2 == 1) return 1;
    if (d0 == 2 && d1 == 1 && d2 == 0) return -1;
    if (d0 == 1 && d1 == 0 && d2 == 2) return -1;
    if (d0 == 0 && d1 == 2 && d2 == 1) return -1;
    return 0;
}

// reduce a dot count by the cubic relation
int reduce_dots(long p, int d) {
    if (p == 3) {
        if (d <= 2) return d;
        return d % 2 == 0 ? 2 : 1;  // X^3 = X
    }
    return d % 3;  // X^3 = 1
}

// CN distribution of an undotted-through-dotted facet over its b boundary
// discs: list of (coefficient, dots per disc)
void cn_distribute(long p, int b, int dots, long coeff, std::vector<int>& acc,
                   std::vector<std::pair<long, std::vector<int>>>& out) {
    if (b == 1) {
        acc.push_back(dots);
        out.push_back({coeff, acc});
        acc.pop_back();
        return;
    }
    const int first_opts[4] = {2, 1, 0, 0};
    const int rest_opts[4] = {0, 1, 2, 0};
    const long coeffs[4] = {-1, -1, -1, 1};
    int n_opts = p == 3 ? 4 : 3;
    for (int i = 0; i < n_opts; ++i) {
        acc.push_back(first_opts[i]);
        cn_distribute(p, b - 1, dots + rest_opts[i], coeff * coeffs[i], acc, out);
        acc.pop_back();
    }
}

}  // namespace

Scalar eval_closed(const Movie& m, long p) {
    if (!m.webs.front().empty() || !m.webs.back().empty())
        throw Sl3Error("eval_closed needs a closed movie");
    int nslabs = static_cast<int>(m.slabs.size());

    // global piece ids
    std::map<std::pair<int, int>, int> pid;  // (slab, piece idx) -> global
    int np = 0;
    for (int t = 0; t < nslabs; ++t)
        for (size_t i = 0; i < m.slabs[t].pieces.size(); ++i)
            pid[{t, static_cast<int>(i)}] = np++;

    std::vector<int> chi(np), dots(np);
    std::vector<int> dsu(np);
    std::iota(dsu.begin(), dsu.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    auto unite = [&](int a, int b) { dsu[find(a)] = find(b); };

    for (int t = 0; t < nslabs; ++t) {
        const Web& w0 = m.webs[t];
        const Web& w1 = m.webs[t + 1];
        for (size_t i = 0; i < m.slabs[t].pieces.size(); ++i) {
            const auto& pc = m.slabs[t].pieces[i];
            int circles = 0, arcs = 0;
            for (int e : pc.bottom) (w0.is_circle(e) ? circles : arcs) += 1;
            for (int e : pc.top) (w1.is_circle(e) ? circles : arcs) += 1;
            int g = pid[{t, static_cast<int>(i)}];
            chi[g] = 2 - circles - (arcs > 0 ? 1 : 0);
            dots[g] = pc.dots;
        }
        // seam sides: pieces referenced by seam strands have extra boundary
        for (const auto& seam : m.slabs[t].seams)
            for (int k = 0; k < 2; ++k)
                for (auto& [e, piece] : seam.strands[k]) {
                    (void)e;
                    int g = pid[{t, static_cast<int>(piece)}];
                    const auto& pc = m.slabs[t].pieces[piece];
                    int circles = 0, arcs = 0;
                    const Web& wb = m.webs[t];
                    const Web& wt = m.webs[t + 1];
                    for (int e2 : pc.bottom) (wb.is_circle(e2) ? circles : arcs) += 1;
                    for (int e2 : pc.top) (wt.is_circle(e2) ? circles : arcs) += 1;
                    if (arcs == 0) chi[g] = 2 - circles - 1;  // seam is its only arc boundary
                }
    }

    // facet gluing along interior web edges
    std::map<int, std::set<int>> facet_edges;  // root -> interior arc edge keys
    for (int t = 1; t < nslabs; ++t) {
        const Web& w = m.webs[t];
        for (auto& [e, ends] : w.edges) {
            std::vector<int> inc;
            for (size_t i = 0; i < m.slabs[t - 1].pieces.size(); ++i) {
                const auto& pc = m.slabs[t - 1].pieces[i];
                if (std::find(pc.top.begin(), pc.top.end(), e) != pc.top.end())
                    inc.push_back(pid[{t - 1, static_cast<int>(i)}]);
            }
            for (size_t i = 0; i < m.slabs[t].pieces.size(); ++i) {
                const auto& pc = m.slabs[t].pieces[i];
                if (std::find(pc.bottom.begin(), pc.bottom.end(), e) != pc.bottom.end())
                    inc.push_back(pid[{t, static_cast<int>(i)}]);
            }
            if (inc.size() < 2) throw Sl3Error("interior edge with one sheet");
            for (size_t i = 1; i < inc.size(); ++i) unite(inc[0], inc[i]);
        }
    }
    // chi bookkeeping per facet
    std::map<int, int> fchi, fdots;
    for (int g = 0; g < np; ++g) {
        fchi[find(g)] += chi[g];
        fdots[find(g)] += dots[g];
    }
    for (int t = 1; t < nslabs; ++t)
        for (auto& [e, ends] : m.webs[t].edges) {
            if (m.webs[t].is_circle(e)) continue;
            // subtract once per interior arc edge
            for (size_t i = 0; i < m.slabs[t].pieces.size(); ++i) {
                const auto& pc = m.slabs[t].pieces[i];
                if (std::find(pc.bottom.begin(), pc.bottom.end(), e) != pc.bottom.end()) {
                    fchi[find(pid[{t, static_cast<int>(i)}])] -= 1;
                    break;
                }
            }
        }

    // ------- seam circles -------
    struct ArcRef {
        int kind;  // 0 = vertex line (slab, vertex), 1 = event (slab, seam idx)
        int slab, a;
    };
    // incidences at vertex instances (t, v)
    std::map<std::pair<int, int>, std::vector<std::pair<ArcRef, int>>> at;  // + end index
    std::vector<ArcRef> arcs;
    for (int t = 0; t < nslabs; ++t) {
        for (size_t si = 0; si < m.slabs[t].seams.size(); ++si) {
            ArcRef r{1, t, static_cast<int>(si)};
            arcs.push_back(r);
            const auto& seam = m.slabs[t].seams[si];
            for (int k = 0; k < 2; ++k)
                at[{t + seam.ends[k].first, seam.ends[k].second}].push_back(
                    {r, k});
        }
        // vertex lines: vertices present in both webs of the slab
        for (auto& [v, r0] : m.webs[t].rot)
            if (m.webs[t + 1].rot.count(v)) {
                ArcRef r{0, t, v};
                arcs.push_back(r);
                at[{t, v}].push_back({r, 0});
                at[{t + 1, v}].push_back({r, 1});
            }
    }
    for (auto& [inst, incs] : at)
        if (incs.size() != 2) throw Sl3Error("seam junction degree != 2");

    // facet triple at a vertex instance (source rotations reversed)
    auto triple_at = [&](int t, int v) -> std::array<int, 3> {
        const Web& w = m.webs[t];
        const auto& r = w.rot.at(v);
        std::array<int, 3> tr{};
        for (int k = 0; k < 3; ++k) {
            int e = r[k];
            // locate the sheet at this edge: prefer stored event strands
            int piece = -1;
            for (auto& [arc, end] : at.at({t, v})) {
                if (arc.kind != 1) continue;
                const auto& seam = m.slabs[arc.slab].seams[arc.a];
                for (int kk = 0; kk < 2; ++kk)
                    if (arc.slab + seam.ends[kk].first == t && seam.ends[kk].second == v) {
                        auto it = seam.strands[kk].find(e);
                        if (it != seam.strands[kk].end())
                            piece = pid.at({arc.slab, it->second});
                    }
            }
            if (piece < 0) {
                // derive from the slab pieces above or below
                if (t < nslabs) {
                    for (size_t i = 0; i < m.slabs[t].pieces.size(); ++i) {
                        const auto& pc = m.slabs[t].pieces[i];
                        if (std::find(pc.bottom.begin(), pc.bottom.end(), e) != pc.bottom.end()) {
                            if (piece >= 0) throw Sl3Error("ambiguous sheet at vertex line");
                            piece = pid.at({t, static_cast<int>(i)});
                        }
                    }
                }
                if (piece < 0 && t > 0) {
                    for (size_t i = 0; i < m.slabs[t - 1].pieces.size(); ++i) {
                        const auto& pc = m.slabs[t - 1].pieces[i];
                        if (std::find(pc.top.begin(), pc.top.end(), e) != pc.top.end()) {
                            if (piece >= 0) throw Sl3Error("ambiguous sheet at vertex line");
                            piece = pid.at({t - 1, static_cast<int>(i)});
                        }
                    }
                }
            }
            if (piece < 0) throw Sl3Error("no sheet at seam vertex");
            tr[k] = find(piece);
        }
        bool source = w.edges.at(r[0]).first == v;
        if (source) std::swap(tr[1], tr[2]);  // reversed triple, first entry fixed
        return tr;
    };

    // walk seam circles and collect a coherent facet triple for each
    std::set<std::pair<int, int>> arc_seen;  // (kind*big + slab, a) flattened
    auto arc_key = [](const ArcRef& r) {
        return std::pair<int, int>{r.kind * 100000 + r.slab, r.a};
    };
    std::vector<std::array<int, 3>> thetas;  // facet triples per seam circle
    auto canon = [](std::array<int, 3> tr) {
        // canonical rotation: smallest entry first (entries may repeat; pick
        // lexicographically smallest rotation)
        std::array<int, 3> best = tr;
        for (int k = 0; k < 2; ++k) {
            std::rotate(tr.begin(), tr.begin() + 1, tr.end());
            if (tr < best) best = tr;
        }
        return best;
    };
    auto endpoint_of = [&](const ArcRef& r, int end) -> std::pair<int, int> {
        if (r.kind == 0) return {r.slab + end, r.a};
        const auto& seam = m.slabs[r.slab].seams[r.a];
        return {r.slab + seam.ends[end].first, seam.ends[end].second};
    };
    for (const auto& arc0 : arcs) {
        if (arc_seen.count(arc_key(arc0))) continue;
        std::vector<std::pair<int, int>> instances;
        ArcRef cur = arc0;
        int enter = 0;
        while (true) {
            arc_seen.insert(arc_key(cur));
            int exit_end = 1 - enter;
            auto inst = endpoint_of(cur, exit_end);
            instances.push_back(inst);
            const auto& incs = at.at(inst);
            int pick = -1;
            for (int i = 0; i < 2; ++i)
                if (!(arc_key(incs[i].first) == arc_key(cur) && incs[i].second == exit_end))
                    pick = i;
            if (pick < 0) throw Sl3Error("seam walk stuck");
            cur = incs[pick].first;
            enter = incs[pick].second;
            if (arc_key(cur) == arc_key(arc0) && enter == 0) break;
            if (arc_seen.count(arc_key(cur))) throw Sl3Error("seam walk revisits an arc");
        }
        // triples at all instances must agree cyclically
        std::array<int, 3> rep = canon(triple_at(instances[0].first, instances[0].second));
        for (auto& [t, v] : instances)
            if (canon(triple_at(t, v)) != rep) throw Sl3Error("incoherent seam triple");
        thetas.push_back(rep);
    }

    // ------- evaluation -------
    // facets: roots with data
    std::map<int, int> broot;  // boundary-circle count per facet root
    for (auto& tr : thetas)
        for (int f : tr) broot[f] += 1;

    Scalar coeff = Scalar::one(p);
    long total_dots_orig = 0;
    long total_chi = 0;
    std::map<int, int> base_dots;  // per facet after genus reduction
    for (auto it = fchi.begin(); it != fchi.end(); ++it) {
        int root = it->first;
        int x = it->second;
        int d = fdots[root];
        total_dots_orig += d;
        total_chi += x;
        int b = broot.count(root) ? broot[root] : 0;
        int twice_g = 2 - b - x;
        if (twice_g < 0 || twice_g % 2 != 0) throw Sl3Error("facet genus inconsistency");
        int g = twice_g / 2;
        if (g > 0) {
            if (p != 3) {
                for (int i = 0; i < g; ++i) {
                    coeff = coeff * sc(p, -3);
                    d += 2;
                }
            }
            // p == 3: a handle cut leaves the facet unchanged
        }
        if (b == 0) {
            int r = reduce_dots(p, d);
            if (r != 2) return Scalar::zero(p);  // sphere with 0 or 1 dots
            coeff = coeff * sc(p, -1);
        } else {
            base_dots[root] = d;
        }
    }

    // distribute dots of multi-boundary facets over their discs (CN cuts)
    // enumerate facets with b >= 1 and assign per-(seam, slot) dots
    std::vector<int> facet_list;
    for (auto& [root, b] : broot) facet_list.push_back(root);
    // incidence slots per facet, in the order they appear in thetas
    std::map<int, std::vector<std::pair<int, int>>> slots_of;  // root -> (theta idx, slot)
    for (size_t ti = 0; ti < thetas.size(); ++ti)
        for (int k = 0; k < 3; ++k)
            slots_of[thetas[ti][k]].push_back({static_cast<int>(ti), k});

    Scalar result = Scalar::zero(p);
    std::vector<std::array<int, 3>> theta_dots(thetas.size(), {0, 0, 0});
    std::function<void(size_t, Scalar)> walk = [&](size_t fi, Scalar acc) {
        if (acc.is_zero()) return;
        if (fi == facet_list.size()) {
            Scalar prod = acc;
            for (size_t ti = 0; ti < thetas.size(); ++ti) {
                int v = theta_value(reduce_dots(p, theta_dots[ti][0]),
                                    reduce_dots(p, theta_dots[ti][1]),
                                    reduce_dots(p, theta_dots[ti][2]));
                if (v == 0) return;
                prod = prod * sc(p, v);
            }
            result += prod;
            return;
        }
        int root = facet_list[fi];
        int b = static_cast<int>(slots_of[root].size());
        std::vector<std::pair<long, std::vector<int>>> options;
        std::vector<int> tmp;
        cn_distribute(p, b, base_dots[root], 1, tmp, options);
        for (auto& [c, dist] : options) {
            for (int k = 0; k < b; ++k)
                theta_dots[slots_of[root][k].first][slots_of[root][k].second] = dist[k];
            walk(fi + 1, acc * sc(p, c));
        }
    };
    walk(0, coeff);

    if (!result.is_zero()) {
        // the cubic and bracket relations only lower the (increasing) degree
        long deg = -2 * total_chi + 2 * total_dots_orig;
        if (deg < 0 || deg % 2 != 0) throw Sl3Error("nonzero evaluation in negative degree");
    }
    return result;
}


// ---------------------------------------------------------------------------
// Frobenius data and splitting-map calibration

int Frobenius::reduce_exp(int d) const { return reduce_dots(p, d); }

std::array<Scalar, 3> Frobenius::mul(const std::array<Scalar, 3>& a,
                                     const std::array<Scalar, 3>& b) const {
    std::array<Scalar, 3> out{Scalar::zero(p), Scalar::zero(p), Scalar::zero(p)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[reduce_exp(i + j)] += a[i] * b[j];
    return out;
}

std::array<Scalar, 3> Frobenius::counit_table() const {
    return {Scalar::zero(p), Scalar::zero(p), sc(p, -1)};
}

Frobenius Frobenius::make(long p) {
    Frobenius f;
    f.p = p;
    if (p == 3) {
        f.i1 = {Scalar::zero(p), sc(p, -1), sc(p, -1)};  // -X^2 - X
    } else {
        Scalar third = sc(p, 3).inverse();
        f.i1 = {third, third, third};  // (X^2 + X + 1)/3
    }
    return f;
}

namespace {

// splitting-map coefficients per characteristic, solved from the identity
// equations under closed evaluation
struct Calib {
    std::array<std::array<Scalar, 3>, 3> circle_pi;  // [j][a] death with a dots
    // digon projections over the dot basis {(0,0), (1,0), (0,1)} on the two fins
    static constexpr std::array<std::array<int, 2>, 3> kDigonBasis{{{0, 0}, {1, 0}, {0, 1}}};
    std::array<std::array<Scalar, 3>, 2> digon_pi;
    std::array<Scalar, 2> square_pi;
};

// solve M x = rhs for small dense systems
std::vector<Scalar> solve_linear(std::vector<std::vector<Scalar>> M, std::vector<Scalar> rhs,
                                 long p) {
    int n = static_cast<int>(M.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!M[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Sl3Error("singular calibration system");
        std::swap(M[col], M[piv]);
        std::swap(rhs[col], rhs[piv]);
        Scalar inv = M[col][col].inverse();
        for (int c = 0; c < n; ++c) M[col][c] = M[col][c] * inv;
        rhs[col] = rhs[col] * inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || M[r][col].is_zero()) continue;
            Scalar f = M[r][col];
            for (int c = 0; c < n; ++c) M[r][c] = M[r][c] - f * M[col][c];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    return rhs;
}

Web theta_web() {
    Web w;
    w.edges[1] = {1, 2};  // gamma
    w.edges[2] = {1, 2};  // d1
    w.edges[3] = {1, 2};  // d2
    w.rot[1] = {3, 2, 1};  // source S: (d2, d1, gamma) CCW
    w.rot[2] = {1, 2, 3};  // sink T: (gamma, d1, d2) CCW
    return w;
}

Web circle_web(int id) {
    Web w;
    w.edges[id] = {-1, -1};
    return w;
}

Calib make_calib(long p) {
    Calib cal;
    Web e;  // empty
    Web circ = circle_web(1);

    // circle: solve sum_a mu[j][a] sphere(a + k) = delta_jk
    std::vector<std::vector<Scalar>> S(3, std::vector<Scalar>(3, Scalar::zero(p)));
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < 3; ++k) {
            Movie m = birth(e, 1);
            m.add_dots(0, 1, 1, k);
            Movie dn = death(circ, 1);
            dn.add_dots(0, 0, 1, a);
            S[a][k] = eval_closed(m.then(dn), p);
        }
    for (int j = 0; j < 3; ++j) {
        std::vector<std::vector<Scalar>> M(3, std::vector<Scalar>(3, Scalar::zero(p)));
        std::vector<Scalar> rhs(3, Scalar::zero(p));
        for (int k = 0; k < 3; ++k) {
            for (int a = 0; a < 3; ++a) M[k][a] = S[a][k];
            rhs[k] = k == j ? Scalar::one(p) : Scalar::zero(p);
        }
        auto mu = solve_linear(M, rhs, p);
        for (int a = 0; a < 3; ++a) cal.circle_pi[j][a] = mu[a];
    }

    // digon: theta context; inclusion dots on fin d1 = edge 2, projections over
    // the dot basis {(0,0), (1,0), (0,1)} on the fins (d1, d2)
    Web th = theta_web();
    Movie collapse = digon_collapse(th, 2, 3);
    if (!(collapse.webs.back() == circ)) throw Sl3Error("digon calibration context broken");
    auto closed_digon = [&](int t_dots, int k_dots, int a1, int a2, int s_dots) {
        Movie m = birth(e, 1);
        m.add_dots(0, 1, 1, t_dots);
        Movie up = collapse.reversed();
        up.add_dots(0, 1, 2, k_dots);
        Movie down = collapse;
        down.add_dots(0, 0, 2, a1);
        down.add_dots(0, 0, 3, a2);
        Movie dd = death(circ, 1);
        dd.add_dots(0, 0, 1, s_dots);
        return eval_closed(m.then(up).then(down).then(dd), p);
    };
    auto sphere_val = [&](int dvalue) {
        Movie m = birth(e, 1);
        m.add_dots(0, 1, 1, dvalue);
        return eval_closed(m.then(death(circ, 1)), p);
    };
    const auto& basis = Calib::kDigonBasis;
    for (int j = 0; j < 2; ++j) {
        std::vector<std::vector<Scalar>> M;
        std::vector<Scalar> rhs;
        for (int k = 0; k < 2; ++k)
            for (int s = 0; s < 3; ++s)
                for (int t = 0; t < 3; ++t) {
                    std::vector<Scalar> row;
                    for (auto [a1, a2] : basis) row.push_back(closed_digon(t, k, a1, a2, s));
                    Scalar r = k == j ? sphere_val(s + t) : Scalar::zero(p);
                    M.push_back(row);
                    rhs.push_back(r);
                }
        // pick three independent rows
        std::vector<std::vector<Scalar>> Msel;
        std::vector<Scalar> rsel;
        for (size_t i = 0; i < M.size() && Msel.size() < 3; ++i) {
            Msel.push_back(M[i]);
            rsel.push_back(rhs[i]);
            try {
                auto probe = Msel;
                auto rp = rsel;
                while (probe.size() < 3) {
                    probe.push_back(std::vector<Scalar>(3, Scalar::zero(p)));
                    size_t n = probe.size() - 1;
                    probe.back()[n % 3] = Scalar::one(p);
                    rp.push_back(Scalar::zero(p));
                }
                (void)solve_linear(probe, rp, p);
            } catch (const Sl3Error&) {
                Msel.pop_back();
                rsel.pop_back();
            }
        }
        // rank may be short; pad assuming remaining coefficients vanish
        while (Msel.size() < 3) {
            std::vector<Scalar> row(3, Scalar::zero(p));
            size_t n = Msel.size();
            row[n] = Scalar::one(p);
            // only accept a padding row independent of the chosen ones
            Msel.push_back(row);
            rsel.push_back(Scalar::zero(p));
            try {
                auto probe = Msel;
                auto rp = rsel;
                (void)solve_linear(probe, rp, p);
            } catch (const Sl3Error&) {
                Msel.pop_back();
                rsel.pop_back();
                row[n] = Scalar::zero(p);
            }
        }
        auto lam = solve_linear(Msel, rsel, p);
        for (int a = 0; a < 3; ++a) cal.digon_pi[j][a] = lam[a];
        // verify every equation
        for (size_t i = 0; i < M.size(); ++i) {
            Scalar v = Scalar::zero(p);
            for (int a = 0; a < 3; ++a) v += lam[a] * M[i][a];
            if (!(v == rhs[i])) throw Sl3Error("digon calibration inconsistent");
        }
    }

    // square: closed context web
    Web q;
    q.edges[1] = {1, 2};   // s12
    q.edges[2] = {3, 2};   // s32
    q.edges[3] = {3, 4};   // s34
    q.edges[4] = {1, 4};   // s14
    q.edges[5] = {1, 2};   // outer arc x1
    q.edges[6] = {3, 4};   // outer arc x3
    q.rot[1] = {1, 5, 4};  // v1 source: (s12, x1, s14)
    q.rot[2] = {5, 1, 2};  // v2 sink: (x1, s12, s32)
    q.rot[3] = {2, 3, 6};  // v3 source: (s32, s34, x3)
    q.rot[4] = {3, 4, 6};  // v4 sink: (s34, s14, x3)
    q.check();
    std::array<int, 4> face{1, 2, 3, 4};  // s12, s32, s34, s14 around the square
    for (int variant = 0; variant < 2; ++variant) {
        Movie down = square_collapse(q, face, variant);
        const Web& child = down.webs.back();
        // closures of the child: births of its circles / caps
        std::vector<int> circles;
        for (auto& [id, ends] : child.edges)
            if (ends.first < 0) circles.push_back(id);
        auto close_up = [&](const std::vector<int>& dots_up) {
            Movie m = Movie::still(e);
            Web cur = e;
            for (size_t i = 0; i < circles.size(); ++i) {
                Movie b = birth(cur, circles[i]);
                b.add_dots(0, 1, circles[i], dots_up[i]);
                m = m.then(b);
                cur = b.webs.back();
            }
            return m;
        };
        auto close_down = [&](const std::vector<int>& dots_dn) {
            Movie m = Movie::still(child);
            Web cur = child;
            for (size_t i = 0; i < circles.size(); ++i) {
                Movie dth = death(cur, circles[i]);
                dth.add_dots(0, 0, circles[i], dots_dn[i]);
                m = m.then(dth);
                cur = dth.webs.back();
            }
            return m;
        };
        // c * eval(up . down) pairings must reproduce sphere products
        int nc = static_cast<int>(circles.size());
        Scalar c_found = Scalar::zero(p);
        bool have = false;
        std::vector<std::vector<int>> tuples;
        std::function<void(std::vector<int>)> gen = [&](std::vector<int> acc) {
            if (static_cast<int>(acc.size()) == nc) {
                tuples.push_back(acc);
                return;
            }
            for (int k2 = 0; k2 < 3; ++k2) {
                acc.push_back(k2);
                gen(acc);
                acc.pop_back();
            }
        };
        gen({});
        for (auto& up_dots : tuples)
            for (auto& dn_dots : tuples) {
                Movie closed = close_up(up_dots)
                                   .then(down.reversed())
                                   .then(down)
                                   .then(close_down(dn_dots));
                Scalar v = eval_closed(closed, p);
                Scalar want = Scalar::one(p);
                for (int i = 0; i < nc; ++i) {
                    Movie sp = birth(e, circles[i]);
                    sp.add_dots(0, 1, circles[i], up_dots[i] + dn_dots[i]);
                    Web cw = circle_web(circles[i]);
                    want = want * eval_closed(sp.then(death(cw, circles[i])), p);
                }
                if (!have && !v.is_zero()) {
                    c_found = want * v.inverse();
                    have = true;
                } else if (!v.is_zero() || !want.is_zero()) {
                    if (!have) continue;
                    if (!(c_found * v == want)) throw Sl3Error("square calibration inconsistent");
                }
            }
        if (!have) throw Sl3Error("square calibration degenerate");
        cal.square_pi[variant] = c_found;
    }
    return cal;
}

const Calib& get_calib(long p) {
    static std::mutex mu;
    static std::map<long, Calib> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, make_calib(p)).first;
    return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// full web reduction

namespace {

std::vector<ReducedGen> reduce_impl(const Web& w, long p) {
    if (w.empty()) {
        ReducedGen g;
        g.dq = 0;
        g.iota = Movie::still(w);
        g.pi = {{Scalar::one(p), Movie::still(w)}};
        return {g};
    }
    const Calib& cal = get_calib(p);

    // circle first
    for (auto& [e, ends] : w.edges) {
        if (ends.first >= 0) continue;
        Movie down = death(w, e);
        const Web& child = down.webs.back();
        auto sub = reduce_impl(child, p);
        std::vector<ReducedGen> out;
        for (int j = 0; j < 3; ++j) {
            for (const auto& g : sub) {
                ReducedGen ng;
                ng.dq = g.dq + (2 - 2 * j);
                Movie up = down.reversed();
                up.add_dots(0, 1, e, j);
                ng.iota = g.iota.then(up);
                for (const auto& [cf, pm] : g.pi)
                    for (int a = 0; a < 3; ++a) {
                        if (cal.circle_pi[j][a].is_zero()) continue;
                        Movie dn = down;
                        dn.add_dots(0, 0, e, a);
                        ng.pi.push_back({cf * cal.circle_pi[j][a], dn.then(pm)});
                    }
                out.push_back(std::move(ng));
            }
        }
        return out;
    }

    auto faces = web_faces(w);
    // digon
    for (auto& f : faces) {
        if (f.size() != 2 || f[0] == f[1]) continue;
        Movie down = digon_collapse(w, f[0], f[1]);
        auto sub = reduce_impl(down.webs.back(), p);
        std::vector<ReducedGen> out;
        for (int j = 0; j < 2; ++j) {
            for (const auto& g : sub) {
                ReducedGen ng;
                ng.dq = g.dq + (1 - 2 * j);
                Movie up = down.reversed();
                up.add_dots(0, 1, f[0], j);
                ng.iota = g.iota.then(up);
                for (const auto& [cf, pm] : g.pi)
                    for (int a = 0; a < 3; ++a) {
                        if (cal.digon_pi[j][a].is_zero()) continue;
                        Movie dn = down;
                        dn.add_dots(0, 0, f[0], Calib::kDigonBasis[a][0]);
                        dn.add_dots(0, 0, f[1], Calib::kDigonBasis[a][1]);
                        ng.pi.push_back({cf * cal.digon_pi[j][a], dn.then(pm)});
                    }
                out.push_back(std::move(ng));
            }
        }
        return out;
    }
    // square
    for (auto& f : faces) {
        if (f.size() != 4) continue;
        std::set<int> distinct(f.begin(), f.end());
        if (distinct.size() != 4) continue;
        std::array<int, 4> face{f[0], f[1], f[2], f[3]};
        std::vector<ReducedGen> out;
        for (int variant = 0; variant < 2; ++variant) {
            Movie down = square_collapse(w, face, variant);
            auto sub = reduce_impl(down.webs.back(), p);
            for (const auto& g : sub) {
                ReducedGen ng;
                ng.dq = g.dq;
                ng.iota = g.iota.then(down.reversed());
                for (const auto& [cf, pm] : g.pi)
                    ng.pi.push_back({cf * cal.square_pi[variant], down.then(pm)});
                out.push_back(std::move(ng));
            }
        }
        return out;
    }
    throw Sl3Error("no reducible face in a non-empty web");
}

}  // namespace

std::vector<ReducedGen> reduce_web(const Web& w, long p) {
    if (w.empty()) throw Sl3Error("empty web");
    return reduce_impl(w, p);
}

namespace {
std::vector<ReducedGen> reduce_any(const Web& w, long p) { return reduce_impl(w, p); }
}  // namespace

// ---------------------------------------------------------------------------
// resolution cube

namespace {

bool crossing_wide(const LinkDiagram& d, int state, int c) {
    bool bit = state & (1 << c);
    return d.crossings[c].sign() > 0 ? !bit : bit;
}

int wide_edge_id(const LinkDiagram& d, int c) {
    return d.edge_count + d.unknot_components + 1 + c;
}

}  // namespace

int state_hdeg(const LinkDiagram& d, int state) {
    int h = 0;
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        bool bit = state & (1 << c);
        if (d.crossings[c].sign() > 0)
            h += bit ? 0 : -1;
        else
            h += bit ? 1 : 0;
    }
    return h;
}

int state_qtilde(const LinkDiagram& d, int state) {
    int q = 0;
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        bool bit = state & (1 << c);
        if (d.crossings[c].sign() > 0)
            q += bit ? 2 : 3;
        else
            q += bit ? -3 : -2;
    }
    return -q;
}

Web state_web(const LinkDiagram& d, int state) {
    int E = d.edge_count;
    std::vector<int> dsu(E + 1);
    std::iota(dsu.begin(), dsu.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    auto unite = [&](int a, int b) { dsu[find(a)] = find(b); };
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        if (crossing_wide(d, static_cast<int>(c), state)) continue;
        const auto& s = d.crossings[c].slots;
        if (d.crossings[c].sign() > 0) {
            unite(s[0], s[3]);
            unite(s[1], s[2]);
        } else {
            unite(s[0], s[1]);
            unite(s[3], s[2]);
        }
    }
    std::map<int, int> cls;  // root -> min edge
    for (int e = 1; e <= E; ++e) {
        int r = find(e);
        auto it = cls.find(r);
        if (it == cls.end() || e < it->second) cls[r] = e;
    }
    auto class_of = [&](int e) { return cls.at(find(e)); };

    Web w;
    // incidences at wide crossings
    std::map<int, std::pair<int, int>> head_of, tail_of;  // class -> (vertex)
    std::map<int, int> heads, tails;
    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        int c = static_cast<int>(ci);
        if (!crossing_wide(d, c, state)) continue;
        const auto& s = d.crossings[c].slots;
        int B = 2 * c, T = 2 * c + 1;
        int wid = wide_edge_id(d, c);
        w.edges[wid] = {T, B};
        std::array<int, 2> ins{}, outs{};
        if (d.crossings[c].sign() > 0) {
            ins = {s[0], s[1]};
            outs = {s[2], s[3]};
            w.rot[B] = {class_of(s[0]), class_of(s[1]), wid};
            w.rot[T] = {class_of(s[2]), class_of(s[3]), wid};
        } else {
            ins = {s[0], s[3]};
            outs = {s[1], s[2]};
            w.rot[B] = {class_of(s[3]), class_of(s[0]), wid};
            w.rot[T] = {class_of(s[1]), class_of(s[2]), wid};
        }
        for (int e : ins) {
            if (heads.count(class_of(e))) throw Sl3Error("strand with two heads");
            heads[class_of(e)] = B;
        }
        for (int e : outs) {
            if (tails.count(class_of(e))) throw Sl3Error("strand with two tails");
            tails[class_of(e)] = T;
        }
    }
    for (auto& [r, id] : cls) {
        (void)r;
        bool h = heads.count(id), t = tails.count(id);
        if (h != t) throw Sl3Error("strand with one wide end");
        if (h)
            w.edges[id] = {tails[id], heads[id]};
        else
            w.edges[id] = {-1, -1};
    }
    for (int u = 0; u < d.unknot_components; ++u) w.edges[E + 1 + u] = {-1, -1};
    return w;
}

Movie edge_movie(const LinkDiagram& d, int state, int c) {
    if (state & (1 << c)) throw Sl3Error("edge bit already set");
    Web wu = state_web(d, state);
    Web wv = state_web(d, state | (1 << c));
    if (d.crossings[c].sign() > 0) {
        Movie m = unzip(wu, wide_edge_id(d, c));
        if (!(m.webs.back() == wv)) throw Sl3Error("unzip target mismatch");
        return m;
    }
    Movie m = unzip(wv, wide_edge_id(d, c)).reversed();
    if (!(m.webs.front() == wu)) throw Sl3Error("zip source mismatch");
    return m;
}

namespace {

int sl3_part_value(const LinkDiagram& dm, long p, int max_crossings, bool check) {
    int n = static_cast<int>(dm.crossings.size());
    if (n > max_crossings) throw Sl3Error("crossing count exceeds the sl3 size limit");
    FilteredComplex cx(p, true);

    std::map<int, std::vector<ReducedGen>> gens;
    std::map<int, std::vector<int>> ids;
    for (int state = 0; state < (1 << n); ++state) {
        if (state_hdeg(dm, state) > 0) continue;
        Web w = state_web(dm, state);
        if (check) w.check();
        gens[state] = reduce_any(w, p);
        for (const auto& g : gens[state])
            ids[state].push_back(
                cx.add_generator(Tangle{}, state_hdeg(dm, state), state_qtilde(dm, state) + g.dq));
    }
    for (auto& [u, gu] : gens) {
        for (int c = 0; c < n; ++c) {
            if (u & (1 << c)) continue;
            int v = u | (1 << c);
            if (!gens.count(v)) continue;
            Movie F = edge_movie(dm, u, c);
            long sign = std::popcount(static_cast<unsigned>(u & ((1 << c) - 1))) % 2 == 0
                            ? 1
                            : -1;
            for (size_t k = 0; k < gu.size(); ++k)
                for (size_t j = 0; j < gens[v].size(); ++j) {
                    Scalar val = Scalar::zero(p);
                    Movie base = gu[k].iota.then(F);
                    for (const auto& [cf, pm] : gens[v][j].pi)
                        val += cf * eval_closed(base.then(pm), p);
                    val = val * sc(p, sign);
                    if (!val.is_zero())
                        cx.set_entry(ids[u][k], ids[v][static_cast<int>(j)],
                                     Cob::single(0, val));
                }
        }
    }

    // tracked class: I1 on every circle of the oriented resolution
    int oriented = 0;
    for (int c = 0; c < n; ++c)
        if (dm.crossings[c].sign() > 0) oriented |= 1 << c;
    if (state_hdeg(dm, oriented) != 0) throw Sl3Error("oriented state not in degree 0");
    Web wo = state_web(dm, oriented);
    std::vector<int> circles;
    for (auto& [e, ends] : wo.edges) {
        if (ends.first >= 0) throw Sl3Error("oriented resolution has a vertex");
        circles.push_back(e);
    }
    Frobenius frob = Frobenius::make(p);
    Scalar global = (p == 3 && n % 2 == 1) ? sc(p, -1) : Scalar::one(p);

    int k = static_cast<int>(circles.size());
    std::vector<int> tuple(k, 0);
    std::vector<Scalar> phi_vals(ids[oriented].size(), Scalar::zero(p));
    std::function<void(int, Scalar)> enumerate = [&](int i, Scalar coeff) {
        if (coeff.is_zero()) return;
        if (i == k) {
            // closed pairing against every projection of the oriented state
            Movie m = Movie::still(Web{});
            Web cur;
            for (int idx = 0; idx < k; ++idx) {
                Movie b = birth(cur, circles[idx]);
                b.add_dots(0, 1, circles[idx], tuple[idx]);
                m = m.then(b);
                cur = b.webs.back();
            }
            for (size_t j = 0; j < gens[oriented].size(); ++j) {
                Scalar v = Scalar::zero(p);
                for (const auto& [cf, pm] : gens[oriented][j].pi)
                    v += cf * eval_closed(m.then(pm), p);
                phi_vals[j] += coeff * v;
            }
            return;
        }
        for (int e = 0; e < 3; ++e) {
            tuple[i] = e;
            enumerate(i + 1, coeff * frob.i1[e]);
        }
    };
    enumerate(0, global);
    for (size_t j = 0; j < phi_vals.size(); ++j)
        if (!phi_vals[j].is_zero())
            cx.set_phi(ids[oriented][static_cast<int>(j)], Cob::single(0, phi_vals[j]));

    if (check) cx.check_invariants();
    cx.sweep_all_pages();
    if (check) cx.check_invariants();
    int m = cx.read_filtration();
    if ((m + 2) % 2 != 0) throw Sl3Error("odd sl3 filtration level");
    return (m + 2) / 2;
}

}  // namespace

int s_sl3(const LinkDiagram& d, long p, int max_crossings, bool check) {
    if (!is_valid_characteristic(p)) throw Sl3Error("characteristic must be 0 or prime");
    auto parts = split_parts(mirror(d));
    int total = 0;
    for (const auto& part : parts) total += sl3_part_value(part, p, max_crossings, check);
    return total - (static_cast<int>(parts.size()) - 1);
}

}  // namespace slink::sl3
