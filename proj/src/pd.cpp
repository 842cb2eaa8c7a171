#include "slink/pd.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace slink {

namespace {

struct Token {
    enum Kind { X, U } kind;
    std::array<int, 4> slots{};
    int forced_sign = 0;  // +1/-1 from Xp/Xm, 0 for plain X
};

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

void expect(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw ParseError("expected '" + std::string(1, c) + "' at position " + std::to_string(i));
    ++i;
}

int parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected edge number at position " + std::to_string(start));
    return std::stoi(s.substr(start, i - start));
}

std::vector<Token> tokenize(const std::string& text) {
    size_t i = 0;
    skip_ws(text, i);
    if (text.compare(i, 2, "PD") != 0) throw ParseError("expected 'PD['");
    i += 2;
    expect(text, i, '[');
    std::vector<Token> toks;
    skip_ws(text, i);
    if (i < text.size() && text[i] == ']') throw ParseError("empty PD expression");
    while (true) {
        skip_ws(text, i);
        if (i >= text.size()) throw ParseError("unbalanced bracket");
        if (text[i] == 'U') {
            ++i;
            toks.push_back({Token::U, {}, 0});
        } else if (text[i] == 'X') {
            ++i;
            int forced = 0;
            if (i < text.size() && (text[i] == 'p' || text[i] == 'm')) {
                forced = text[i] == 'p' ? +1 : -1;
                ++i;
            }
            expect(text, i, '[');
            Token t{Token::X, {}, forced};
            for (int k = 0; k < 4; ++k) {
                t.slots[k] = parse_int(text, i);
                if (t.slots[k] <= 0) throw ParseError("edge numbers must be positive");
                if (k < 3) expect(text, i, ',');
            }
            expect(text, i, ']');
            toks.push_back(t);
        } else {
            throw ParseError("unexpected character at position " + std::to_string(i));
        }
        skip_ws(text, i);
        if (i >= text.size()) throw ParseError("unbalanced bracket");
        if (text[i] == ',') { ++i; continue; }
        if (text[i] == ']') { ++i; break; }
        throw ParseError("expected ',' or ']' at position " + std::to_string(i));
    }
    skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing input after PD expression");
    return toks;
}

// internal half-edge style record used for rebuilding diagrams
struct Raw {
    std::array<int, 4> slots;
    int uin;  // slot position of incoming under-strand
    int oin;  // slot position of incoming over-strand
};

std::map<int, int> succ_map(const LinkDiagram& d) {
    std::map<int, int> s;
    for (const auto& comp : d.components) {
        int n = static_cast<int>(comp.size());
        for (int i = 0; i < n; ++i) s[comp[i]] = comp[(i + 1) % n];
    }
    return s;
}

LinkDiagram assemble(const std::vector<Crossing>& crossings,
                     const std::vector<std::vector<int>>& components, int ucount) {
    LinkDiagram d;
    d.crossings = crossings;
    d.components = components;
    d.unknot_components = ucount;
    int ec = 0;
    for (const auto& c : components) ec += static_cast<int>(c.size());
    d.edge_count = ec;
    d.component_of_edge.assign(ec + 1, -1);
    for (size_t ci = 0; ci < components.size(); ++ci)
        for (int e : components[ci]) d.component_of_edge[e] = static_cast<int>(ci);
    return d;
}

// Renumbers edges consecutively along each component and emits a fresh
// diagram. comp_order/start select the component ordering and the starting
// edge of each cycle; defaults give the canonical form.
LinkDiagram rebuild(const std::vector<Raw>& raw, const std::map<int, int>& succ, int ucount,
                    const std::vector<int>* comp_order = nullptr,
                    const std::vector<int>* starts = nullptr) {
    // cycles of succ
    std::map<int, int> seen;
    std::vector<std::vector<int>> cycles;
    for (const auto& [e, _] : succ) {
        if (seen.count(e)) continue;
        std::vector<int> cyc;
        int x = e;
        while (!seen.count(x)) {
            seen[x] = 1;
            cyc.push_back(x);
            x = succ.at(x);
        }
        cycles.push_back(cyc);
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return *std::min_element(a.begin(), a.end()) <
                         *std::min_element(b.begin(), b.end());
              });
    std::vector<int> order(cycles.size());
    for (size_t i = 0; i < cycles.size(); ++i) order[i] = static_cast<int>(i);
    if (comp_order) order = *comp_order;

    std::map<int, int> newid;
    std::vector<std::vector<int>> comps;
    int next = 1;
    for (size_t oi = 0; oi < order.size(); ++oi) {
        const auto& cyc = cycles[order[oi]];
        int n = static_cast<int>(cyc.size());
        int s0 = 0;
        if (starts) {
            s0 = (*starts)[oi] % n;
        } else {
            s0 = static_cast<int>(std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
        }
        std::vector<int> comp;
        for (int i = 0; i < n; ++i) {
            int e = cyc[(s0 + i) % n];
            newid[e] = next;
            comp.push_back(next);
            ++next;
        }
        comps.push_back(comp);
    }

    std::vector<Crossing> crossings;
    for (const auto& r : raw) {
        Crossing c;
        for (int k = 0; k < 4; ++k) c.slots[k] = newid.at(r.slots[(r.uin + k) % 4]);
        c.over_in_at_1 = ((r.oin - r.uin) % 4 + 4) % 4 == 1;
        crossings.push_back(c);
    }
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.slots[0] < b.slots[0]; });
    return assemble(crossings, comps, ucount);
}

std::vector<Raw> to_raw(const LinkDiagram& d) {
    std::vector<Raw> raw;
    for (const auto& c : d.crossings)
        raw.push_back({c.slots, 0, c.over_in_at_1 ? 1 : 3});
    return raw;
}

// union-find over crossings sharing edges; returns part index per crossing,
// parts ordered by smallest incident edge
std::pair<std::vector<int>, int> crossing_parts(const LinkDiagram& d) {
    int n = static_cast<int>(d.crossings.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, int> first_crossing_of_edge;
    for (int i = 0; i < n; ++i)
        for (int e : d.crossings[i].slots) {
            auto it = first_crossing_of_edge.find(e);
            if (it == first_crossing_of_edge.end())
                first_crossing_of_edge[e] = i;
            else
                parent[find(i)] = find(it->second);
        }
    std::map<int, int> root_min_edge;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        int me = *std::min_element(d.crossings[i].slots.begin(), d.crossings[i].slots.end());
        auto it = root_min_edge.find(r);
        if (it == root_min_edge.end() || me < it->second) root_min_edge[r] = me;
    }
    std::vector<std::pair<int, int>> roots;  // (min edge, root)
    for (auto& [r, me] : root_min_edge) roots.push_back({me, r});
    std::sort(roots.begin(), roots.end());
    std::map<int, int> part_of_root;
    for (size_t i = 0; i < roots.size(); ++i) part_of_root[roots[i].second] = static_cast<int>(i);
    std::vector<int> part(n);
    for (int i = 0; i < n; ++i) part[i] = part_of_root[find(i)];
    return {part, static_cast<int>(roots.size())};
}

}  // namespace

int LinkDiagram::n_plus() const {
    int k = 0;
    for (const auto& c : crossings) k += c.sign() > 0;
    return k;
}

int LinkDiagram::n_minus() const {
    int k = 0;
    for (const auto& c : crossings) k += c.sign() < 0;
    return k;
}

int LinkDiagram::total_linking() const {
    int twice = 0;
    for (const auto& c : crossings) {
        int under = component_of_edge[c.slots[0]];
        int over = component_of_edge[c.slots[c.over_in_at_1 ? 1 : 3]];
        if (under != over) twice += c.sign();
    }
    if (twice % 2 != 0) throw DiagramError("odd inter-component crossing count");
    return twice / 2;
}

int LinkDiagram::succ(int edge) const {
    const auto& comp = components[component_of_edge[edge]];
    for (size_t i = 0; i < comp.size(); ++i)
        if (comp[i] == edge) return comp[(i + 1) % comp.size()];
    throw DiagramError("edge not found");
}

LinkDiagram parse_pd(const std::string& text) {
    auto toks = tokenize(text);
    int ucount = 0;
    std::vector<Token> xs;
    for (const auto& t : toks)
        if (t.kind == Token::U)
            ++ucount;
        else
            xs.push_back(t);

    // occurrence counts; edges must be 1..2n, each appearing exactly twice
    std::map<int, int> occ;
    for (const auto& t : xs)
        for (int e : t.slots) ++occ[e];
    int n_edges = static_cast<int>(occ.size());
    for (const auto& [e, c] : occ) {
        if (c != 2)
            throw ParseError("edge " + std::to_string(e) + " appears " + std::to_string(c) +
                             " times (expected 2)");
        if (e > n_edges) throw ParseError("edges must be numbered 1..2n consecutively");
    }
    if (static_cast<int>(xs.size()) * 2 != n_edges && !xs.empty())
        throw ParseError("edge/crossing count mismatch");

    // role assignment: each edge needs exactly one head (incoming slot) and
    // one tail; under-strand roles are fixed, over-strand direction is a
    // binary choice per crossing resolved by propagation plus the
    // increasing-numbering convention
    std::vector<int> head(n_edges + 1, 0), tail(n_edges + 1, 0);
    auto take = [&](std::vector<int>& v, int e) {
        if (v[e]) throw ParseError("inconsistent strand-following at edge " + std::to_string(e));
        v[e] = 1;
    };
    for (const auto& t : xs) {
        take(head, t.slots[0]);
        take(tail, t.slots[2]);
    }
    int nx = static_cast<int>(xs.size());
    std::vector<int> dir(nx, 0);  // +1: over runs slots[1]->slots[3]; -1: reverse
    auto can = [&](int i, int d) {
        int b = xs[i].slots[1], dd = xs[i].slots[3];
        int in = d > 0 ? b : dd, out = d > 0 ? dd : b;
        return !head[in] && !tail[out];
    };
    auto apply = [&](int i, int d) {
        int b = xs[i].slots[1], dd = xs[i].slots[3];
        take(head, d > 0 ? b : dd);
        take(tail, d > 0 ? dd : b);
        dir[i] = d;
    };
    for (int i = 0; i < nx; ++i)
        if (xs[i].forced_sign != 0) apply(i, xs[i].forced_sign);
    bool progress = true;
    int undecided = nx;
    while (progress) {
        progress = false;
        for (int i = 0; i < nx; ++i) {
            if (dir[i]) continue;
            bool p = can(i, +1), m = can(i, -1);
            if (!p && !m) throw ParseError("inconsistent strand-following (no valid over-strand orientation)");
            if (p != m) {
                apply(i, p ? +1 : -1);
                progress = true;
            }
        }
        if (!progress) {
            // take the first undecided crossing by the numbering convention
            for (int i = 0; i < nx; ++i) {
                if (dir[i]) continue;
                int b = xs[i].slots[1], dd = xs[i].slots[3];
                int d;
                if (dd == b + 1) d = +1;
                else if (b == dd + 1) d = -1;
                else d = b > dd ? +1 : -1;  // wrap runs high -> low
                if (!can(i, d)) throw ParseError("ambiguous orientation at crossing " + std::to_string(i));
                apply(i, d);
                progress = true;
                break;
            }
        }
        undecided = 0;
        for (int i = 0; i < nx; ++i) undecided += dir[i] == 0;
        if (undecided == 0) break;
    }
    for (int e = 1; e <= n_edges; ++e)
        if (!head[e] || !tail[e])
            throw ParseError("edge " + std::to_string(e) + " lacks a consistent orientation");

    // successor map along strands
    std::map<int, int> succ;
    for (int i = 0; i < nx; ++i) {
        succ[xs[i].slots[0]] = xs[i].slots[2];
        if (dir[i] > 0)
            succ[xs[i].slots[1]] = xs[i].slots[3];
        else
            succ[xs[i].slots[3]] = xs[i].slots[1];
    }

    // components: cycles must be consecutively numbered with one wrap
    std::vector<int> comp_of(n_edges + 1, -1);
    std::vector<std::vector<int>> comps;
    for (int e = 1; e <= n_edges; ++e) {
        if (comp_of[e] != -1) continue;
        std::vector<int> cyc;
        int x = e;
        while (comp_of[x] == -1) {
            comp_of[x] = static_cast<int>(comps.size());
            cyc.push_back(x);
            x = succ[x];
        }
        if (x != e) throw ParseError("inconsistent strand-following (open strand)");
        int lo = *std::min_element(cyc.begin(), cyc.end());
        int hi = *std::max_element(cyc.begin(), cyc.end());
        if (hi - lo + 1 != static_cast<int>(cyc.size()))
            throw ParseError("component edges not consecutive");
        for (size_t i = 0; i < cyc.size(); ++i) {
            int want = cyc[i] == hi ? lo : cyc[i] + 1;
            if (succ[cyc[i]] != want)
                throw ParseError("edges not numbered increasingly along component");
        }
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
        comps.push_back(cyc);
    }
    std::sort(comps.begin(), comps.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });

    std::vector<Crossing> crossings;
    for (int i = 0; i < nx; ++i)
        crossings.push_back({xs[i].slots, dir[i] > 0});

    if (xs.empty() && ucount == 0) throw ParseError("empty PD expression");
    return assemble(crossings, comps, ucount);
}

std::string to_pd(const LinkDiagram& d) {
    LinkDiagram c = d.crossings.empty() ? d : rebuild(to_raw(d), succ_map(d), d.unknot_components);
    std::ostringstream os;
    os << "PD[";
    bool first = true;
    for (const auto& cr : c.crossings) {
        if (!first) os << ",";
        first = false;
        // naive direction inference on re-parse; force the sign tag when the
        // numbering alone would misread the over-strand
        int b = cr.slots[1], dd = cr.slots[3];
        int naive;
        if (dd == b + 1) naive = +1;
        else if (b == dd + 1) naive = -1;
        else naive = b > dd ? +1 : -1;
        int actual = cr.over_in_at_1 ? +1 : -1;
        os << (naive == actual ? "X" : (actual > 0 ? "Xp" : "Xm"));
        os << "[" << cr.slots[0] << "," << cr.slots[1] << "," << cr.slots[2] << ","
           << cr.slots[3] << "]";
    }
    for (int i = 0; i < c.unknot_components; ++i) {
        if (!first) os << ",";
        first = false;
        os << "U";
    }
    os << "]";
    return os.str();
}

SeifertData oriented_resolution(const LinkDiagram& d, const std::set<int>* flip_parts) {
    SeifertData s;
    int ne = d.edge_count;
    // head position of every edge
    std::vector<std::pair<int, int>> head_at(ne + 1, {-1, -1});  // (crossing, slot)
    for (size_t i = 0; i < d.crossings.size(); ++i) {
        const auto& c = d.crossings[i];
        head_at[c.slots[0]] = {static_cast<int>(i), 0};
        head_at[c.slots[c.over_in_at_1 ? 1 : 3]] = {static_cast<int>(i), c.over_in_at_1 ? 1 : 3};
    }
    // smoothing successor: the out-slot the oriented resolution connects to
    auto smooth_next = [&](int e) {
        auto [ci, slot] = head_at[e];
        const auto& c = d.crossings[ci];
        int out;
        if (c.over_in_at_1)  // positive: {0-3, 1-2}
            out = slot == 0 ? 3 : 2;
        else  // negative: {0-1, 3-2}
            out = slot == 0 ? 1 : 2;
        return c.slots[out];
    };
    s.circle_of_edge.assign(ne + 1, -1);
    for (int e = 1; e <= ne; ++e) {
        if (s.circle_of_edge[e] != -1) continue;
        int x = e;
        while (s.circle_of_edge[x] == -1) {
            s.circle_of_edge[x] = s.n_circles;
            x = smooth_next(x);
        }
        ++s.n_circles;
    }
    for (int i = 0; i < d.unknot_components; ++i) s.circle_of_unknot.push_back(s.n_circles++);

    for (const auto& c : d.crossings) {
        int c1 = s.circle_of_edge[c.slots[0]];
        int c2 = s.circle_of_edge[c.slots[c.over_in_at_1 ? 1 : 3]];
        s.crossing_adjacency.push_back({c1, c2});
    }

    // 2-color the Seifert graph, one deterministic choice per diagram part
    s.label.assign(s.n_circles, -1);
    std::vector<std::vector<int>> adj(s.n_circles);
    for (auto [a, b] : s.crossing_adjacency) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (int r = 0; r < s.n_circles; ++r) {
        if (s.label[r] != -1) continue;
        s.label[r] = 1;  // X at the root
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (s.label[w] == -1) {
                    s.label[w] = 1 - s.label[v];
                    stack.push_back(w);
                } else if (s.label[w] == s.label[v]) {
                    throw DiagramError("Seifert graph not bipartite (invalid PD code)");
                }
            }
        }
    }
    if (flip_parts && !flip_parts->empty()) {
        auto [part, nparts] = crossing_parts(d);
        std::vector<int> part_of_circle(s.n_circles, -1);
        for (int e = 1; e <= ne; ++e)
            part_of_circle[s.circle_of_edge[e]] = part[head_at[e].first];
        for (int i = 0; i < d.unknot_components; ++i)
            part_of_circle[s.circle_of_unknot[i]] = nparts + i;
        for (int c = 0; c < s.n_circles; ++c)
            if (flip_parts->count(part_of_circle[c])) s.label[c] ^= 1;
    }
    return s;
}

LinkDiagram mirror(const LinkDiagram& d) {
    std::vector<Crossing> crossings;
    for (const auto& c : d.crossings) {
        Crossing m;
        int r = c.over_in_at_1 ? 1 : 3;  // rotate so the incoming over-strand leads
        for (int k = 0; k < 4; ++k) m.slots[k] = c.slots[(r + k) % 4];
        // new over-strand is the old under-strand, incoming edge old slots[0]
        m.over_in_at_1 = ((0 - r) % 4 + 4) % 4 == 1;
        crossings.push_back(m);
    }
    return assemble(crossings, d.components, d.unknot_components);
}

LinkDiagram reverse_components(const LinkDiagram& d, const std::set<int>& subset) {
    for (int c : subset)
        if (c < 0 || c >= d.total_components()) throw DiagramError("invalid component index");
    if (d.crossings.empty()) return d;  // reversing unknots is a no-op
    auto succ = succ_map(d);
    std::map<int, int> next;
    for (auto [e, f] : succ) {
        if (subset.count(d.component_of_edge[e]))
            next[f] = e;  // reversed
        else
            next[e] = f;
    }
    std::vector<Raw> raw;
    for (const auto& c : d.crossings) {
        Raw r{c.slots, 0, c.over_in_at_1 ? 1 : 3};
        if (subset.count(d.component_of_edge[c.slots[0]])) r.uin = 2;
        if (subset.count(d.component_of_edge[c.slots[r.oin]])) r.oin = r.oin == 1 ? 3 : 1;
        raw.push_back(r);
    }
    return rebuild(raw, next, d.unknot_components);
}

LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b) {
    int off = a.edge_count;
    std::vector<Crossing> crossings = a.crossings;
    for (const auto& c : b.crossings) {
        Crossing s = c;
        for (auto& e : s.slots) e += off;
        crossings.push_back(s);
    }
    auto comps = a.components;
    for (const auto& cc : b.components) {
        std::vector<int> c2;
        for (int e : cc) c2.push_back(e + off);
        comps.push_back(c2);
    }
    return assemble(crossings, comps, a.unknot_components + b.unknot_components);
}

LinkDiagram connect_sum(const LinkDiagram& a, int edge_a, const LinkDiagram& b, int edge_b) {
    if (edge_a < 1 || edge_a > a.edge_count || edge_b < 1 || edge_b > b.edge_count)
        throw DiagramError("invalid edge choice for connected sum");
    LinkDiagram u = split_union(a, b);
    int e1 = edge_a, e2 = edge_b + a.edge_count;
    // cut both edges and cross-join: swap their head occurrences and their
    // strand successors
    auto head_slot = [&](int e) -> std::pair<int, int> {
        for (size_t i = 0; i < u.crossings.size(); ++i) {
            const auto& c = u.crossings[i];
            if (c.slots[0] == e) return {static_cast<int>(i), 0};
            int oin = c.over_in_at_1 ? 1 : 3;
            if (c.slots[oin] == e) return {static_cast<int>(i), oin};
        }
        throw DiagramError("edge head not found");
    };
    auto [c1, s1] = head_slot(e1);
    auto [c2, s2] = head_slot(e2);
    auto succ = succ_map(u);
    std::swap(succ[e1], succ[e2]);
    u.crossings[c1].slots[s1] = e2;
    u.crossings[c2].slots[s2] = e1;
    return rebuild(to_raw(u), succ, u.unknot_components);
}

std::vector<LinkDiagram> split_parts(const LinkDiagram& d) {
    std::vector<LinkDiagram> parts;
    if (!d.crossings.empty()) {
        auto [part, nparts] = crossing_parts(d);
        auto succ = succ_map(d);
        for (int p = 0; p < nparts; ++p) {
            std::vector<Raw> raw;
            std::set<int> edges;
            for (size_t i = 0; i < d.crossings.size(); ++i)
                if (part[i] == p) {
                    const auto& c = d.crossings[i];
                    raw.push_back({c.slots, 0, c.over_in_at_1 ? 1 : 3});
                    for (int e : c.slots) edges.insert(e);
                }
            std::map<int, int> sub;
            for (int e : edges) sub[e] = succ.at(e);
            parts.push_back(rebuild(raw, sub, 0));
        }
    }
    for (int i = 0; i < d.unknot_components; ++i) {
        LinkDiagram u = assemble({}, {}, 1);
        parts.push_back(u);
    }
    return parts;
}

static std::vector<ScanStep> schedule_impl(const LinkDiagram& d, const std::vector<int>& order) {
    std::set<int> open;
    std::vector<ScanStep> steps;
    for (int ci : order) {
        const auto& c = d.crossings[ci];
        ScanStep st;
        st.crossing = ci;
        std::map<int, int> mult;
        for (int e : c.slots) ++mult[e];
        for (auto [e, m] : mult) {
            if (m == 2) {
                st.closes.push_back(e);  // kink edge: opens and closes within the step
            } else if (open.count(e)) {
                open.erase(e);
                st.closes.push_back(e);
            } else {
                open.insert(e);
            }
        }
        st.boundary_after.assign(open.begin(), open.end());
        steps.push_back(st);
    }
    if (!open.empty()) throw DiagramError("scan did not close the diagram");
    return steps;
}

std::vector<ScanStep> scan_schedule(const LinkDiagram& d, const std::vector<int>& order) {
    return schedule_impl(d, order);
}

std::vector<ScanStep> scan_order(const LinkDiagram& d) {
    int n = static_cast<int>(d.crossings.size());
    std::set<int> open;
    std::vector<bool> done(n, false);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int best = -1, best_size = 1 << 30;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            std::map<int, int> mult;
            for (int e : d.crossings[i].slots) ++mult[e];
            int sz = static_cast<int>(open.size());
            for (auto [e, m] : mult) {
                if (m == 2) continue;
                sz += open.count(e) ? -1 : +1;
            }
            if (sz < best_size) {
                best_size = sz;
                best = i;
            }
        }
        done[best] = true;
        order.push_back(best);
        std::map<int, int> mult;
        for (int e : d.crossings[best].slots) ++mult[e];
        for (auto [e, m] : mult) {
            if (m == 2) continue;
            if (open.count(e))
                open.erase(e);
            else
                open.insert(e);
        }
    }
    return schedule_impl(d, order);
}

int max_girth(const std::vector<ScanStep>& steps) {
    int g = 0;
    for (const auto& s : steps) g = std::max(g, static_cast<int>(s.boundary_after.size()));
    return g;
}

LinkDiagram assemble_diagram(const std::vector<std::array<int, 4>>& slots,
                             const std::vector<bool>& over_in_at_1,
                             const std::map<int, int>& succ, int unknots) {
    std::vector<Raw> raw;
    for (size_t i = 0; i < slots.size(); ++i)
        raw.push_back({slots[i], 0, over_in_at_1[i] ? 1 : 3});
    return rebuild(raw, succ, unknots);
}

LinkDiagram renumber(const LinkDiagram& d, unsigned seed) {
    if (d.crossings.empty()) return d;
    std::mt19937 rng(seed);
    auto succ = succ_map(d);
    int nc = static_cast<int>(d.components.size());
    std::vector<int> order(nc);
    for (int i = 0; i < nc; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> starts(nc);
    for (int i = 0; i < nc; ++i)
        starts[i] = static_cast<int>(rng() % d.components[order[i]].size());
    return rebuild(to_raw(d), succ, d.unknot_components, &order, &starts);
}

}  // namespace slink
