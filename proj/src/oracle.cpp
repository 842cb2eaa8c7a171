#include "slink/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>

namespace slink {

namespace {

// 0-smoothing joins slots {0,3} and {1,2}; 1-smoothing joins {0,1} and {2,3}
int smooth_partner(int slot, bool one_smoothing) {
    static const int zero[4] = {3, 2, 1, 0};
    static const int one[4] = {1, 0, 3, 2};
    return one_smoothing ? one[slot] : zero[slot];
}

}  // namespace

CubeComplex::CubeComplex(const LinkDiagram& d, long p, int max_crossings)
    : diag_(d), p_(p), n_(static_cast<int>(d.crossings.size())) {
    if (n_ > max_crossings) throw OracleError("crossing count exceeds the oracle size limit");
    if (!is_valid_characteristic(p)) throw OracleError("invalid characteristic");
    for (int i = 0; i < n_; ++i)
        if (d.crossings[i].sign() < 0) oriented_state_ |= 1 << i;

    // where each edge's two occurrences live
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (int i = 0; i < n_; ++i)
        for (int s = 0; s < 4; ++s) occ[d.crossings[i].slots[s]].push_back({i, s});

    int nstates = 1 << n_;
    circ_.resize(nstates);
    u_circle_base_.resize(nstates);
    for (int state = 0; state < nstates; ++state) {
        // union-find over slot instances
        std::map<std::pair<int, int>, std::pair<int, int>> parent;
        std::function<std::pair<int, int>(std::pair<int, int>)> find =
            [&](std::pair<int, int> x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
        for (int i = 0; i < n_; ++i)
            for (int s = 0; s < 4; ++s) parent[{i, s}] = {i, s};
        auto unite = [&](std::pair<int, int> a, std::pair<int, int> b) {
            parent[find(a)] = find(b);
        };
        for (int i = 0; i < n_; ++i)
            for (int s = 0; s < 4; ++s)
                unite({i, s}, {i, smooth_partner(s, state & (1 << i))});
        for (auto& [e, pos] : occ) unite(pos[0], pos[1]);
        std::map<std::pair<int, int>, int> index;
        StateCircles sc;
        for (int i = 0; i < n_; ++i)
            for (int s = 0; s < 4; ++s) {
                auto r = find({i, s});
                if (!index.count(r)) index[r] = sc.n++;
                sc.of_slot[{i, s}] = index[r];
            }
        u_circle_base_[state] = sc.n;
        sc.n += d.unknot_components;
        if (sc.n > 30) throw OracleError("too many circles");
        circ_[state] = sc;
    }
}

int CubeComplex::hdeg_of_state(int state) const {
    return std::popcount(static_cast<unsigned>(state)) - diag_.n_minus();
}

int CubeComplex::qshift_of_state(int state) const {
    int q = 0;
    for (int i = 0; i < n_; ++i) {
        bool one = state & (1 << i);
        if (diag_.crossings[i].sign() > 0)
            q += one ? 2 : 1;
        else
            q += one ? -1 : -2;
    }
    return q;
}

int CubeComplex::circles(int state) const { return circ_[state].n; }

int CubeComplex::qdeg(int state, int labels) const {
    int q = qshift_of_state(state);
    int c = circ_[state].n;
    for (int i = 0; i < c; ++i) q += (labels & (1 << i)) ? -1 : 1;
    return q;
}

long CubeComplex::dim_at_hdeg(int h) const {
    long dim = 0;
    for (int state = 0; state < (1 << n_); ++state)
        if (hdeg_of_state(state) == h) dim += 1L << circ_[state].n;
    return dim;
}

void CubeComplex::apply_edge(int state, int c, int labels, const Scalar& coeff,
                             Chain& out) const {
    int target = state | (1 << c);
    const StateCircles& sc = circ_[state];
    const StateCircles& tc = circ_[target];
    // arcs of the 0-smoothing are {0,3} and {1,2}; of the 1-smoothing {0,1}, {2,3}
    int a1 = sc.of_slot.at({c, 0});
    int a2 = sc.of_slot.at({c, 1});
    int b1 = tc.of_slot.at({c, 0});
    int b2 = tc.of_slot.at({c, 2});

    // map each target circle to the source circle sharing a strand away from
    // this crossing; U circles map index-to-index
    std::vector<int> src_of(tc.n, -1);
    for (auto& [pos, idx] : tc.of_slot)
        if (pos.first != c && src_of[idx] < 0) src_of[idx] = sc.of_slot.at(pos);
    for (int u = 0; u < tc.n - u_circle_base_[target]; ++u)
        src_of[u_circle_base_[target] + u] = u_circle_base_[state] + u;
    long sign = std::popcount(static_cast<unsigned>(state & ((1 << c) - 1))) % 2 == 0 ? 1 : -1;
    Scalar base = coeff * Scalar::from_int(p_, sign);

    // assemble target labelings
    auto push = [&](int lab1, int lab2, long mult) {
        // lab1/lab2: labels for b1/b2 (b1 == b2 on merge: lab2 ignored)
        int tl = 0;
        for (int j = 0; j < tc.n; ++j) {
            int v;
            if (j == b1)
                v = lab1;
            else if (j == b2)
                v = lab2;
            else {
                if (src_of[j] < 0) throw OracleError("unmapped circle");
                v = (labels >> src_of[j]) & 1;
            }
            if (v) tl |= 1 << j;
        }
        Scalar s = base * Scalar::from_int(p_, mult);
        if (s.is_zero()) return;
        Key k{target, tl};
        auto it = out.find(k);
        if (it == out.end())
            out[k] = s;
        else {
            it->second += s;
            if (it->second.is_zero()) out.erase(it);
        }
    };

    int la1 = (labels >> a1) & 1, la2 = (labels >> a2) & 1;
    if (a1 != a2) {
        // merge: m(1,1) = 1, otherwise X (X.X = X in F_BN)
        int lab = (la1 || la2) ? 1 : 0;
        push(lab, lab, 1);
    } else {
        if (b1 == b2) throw OracleError("split did not split");
        if (la1) {
            push(1, 1, 1);  // Delta(X) = X (x) X
        } else {
            push(1, 0, 1);  // Delta(1) = X (x) 1 + 1 (x) X - 1 (x) 1
            push(0, 1, 1);
            push(0, 0, -1);
        }
    }
}

CubeComplex::Chain CubeComplex::d(const Chain& z) const {
    Chain out;
    for (auto& [key, coeff] : z) {
        auto [state, labels] = key;
        for (int c = 0; c < n_; ++c)
            if (!(state & (1 << c))) apply_edge(state, c, labels, coeff, out);
    }
    return out;
}

bool CubeComplex::is_cocycle(const Chain& z) const { return d(z).empty(); }

void CubeComplex::verify_d2() const {
    for (int state = 0; state < (1 << n_); ++state)
        for (int labels = 0; labels < (1 << circ_[state].n); ++labels) {
            Chain z{{{state, labels}, Scalar::one(p_)}};
            if (!d(d(z)).empty()) throw OracleError("d^2 != 0");
        }
}

CubeComplex::Chain CubeComplex::orientation_cocycle(bool flip) const {
    SeifertData sd = oriented_resolution(diag_);
    int state = oriented_state_;
    const StateCircles& sc = circ_[state];
    // identify each state circle's Seifert label via any edge on it
    std::vector<int> label(sc.n, -1);
    for (int i = 0; i < n_; ++i)
        for (int s = 0; s < 4; ++s) {
            int e = diag_.crossings[i].slots[s];
            label[sc.of_slot.at({i, s})] = sd.label[sd.circle_of_edge[e]];
        }
    for (int u = 0; u < diag_.unknot_components; ++u)
        label[u_circle_base_[state] + u] = sd.label[sd.circle_of_unknot[u]];
    if (flip)
        for (auto& l : label) l ^= 1;

    // expand the tensor of idempotents: X stays X, 1-X = 1 - X
    Chain z;
    std::vector<int> free_circles;
    int base_labels = 0;
    for (int j = 0; j < sc.n; ++j) {
        if (label[j] == 1)
            base_labels |= 1 << j;
        else
            free_circles.push_back(j);
    }
    int k = static_cast<int>(free_circles.size());
    for (int m = 0; m < (1 << k); ++m) {
        int labels = base_labels;
        int picks = 0;
        for (int i = 0; i < k; ++i)
            if (m & (1 << i)) {
                labels |= 1 << free_circles[i];
                ++picks;
            }
        z[{state, labels}] = Scalar::from_int(p_, picks % 2 == 0 ? 1 : -1);
    }
    return z;
}

int CubeComplex::class_filtration(const Chain& z) const {
    if (z.empty()) throw OracleError("zero class");
    int h = hdeg_of_state(z.begin()->first.first);
    for (auto& [key, c] : z) {
        (void)c;
        if (hdeg_of_state(key.first) != h) throw OracleError("inhomogeneous class");
    }
    if (!is_cocycle(z)) throw OracleError("not a cocycle");

    // rows: basis of C^h ordered by ascending qdeg; columns: d of C^{h-1}
    std::vector<Key> rows;
    for (int state = 0; state < (1 << n_); ++state) {
        if (hdeg_of_state(state) != h) continue;
        for (int labels = 0; labels < (1 << circ_[state].n); ++labels)
            rows.push_back({state, labels});
    }
    std::stable_sort(rows.begin(), rows.end(), [&](const Key& a, const Key& b) {
        return qdeg(a.first, a.second) < qdeg(b.first, b.second);
    });
    std::map<Key, int> row_of;
    for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);

    using Col = std::vector<std::pair<int, Scalar>>;  // sorted by row
    auto to_col = [&](const Chain& ch) {
        Col col;
        for (auto& [key, c] : ch) col.push_back({row_of.at(key), c});
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return col;
    };
    std::map<int, Col> pivot;  // pivot row -> reduced column (leading coeff 1)
    auto reduce = [&](Col col) {
        while (!col.empty()) {
            int r = col.front().first;
            auto it = pivot.find(r);
            if (it == pivot.end()) break;
            Scalar f = col.front().second;
            // col -= f * pivot column
            Col next;
            size_t i = 0, j = 0;
            const Col& pc = it->second;
            while (i < col.size() || j < pc.size()) {
                if (j == pc.size() || (i < col.size() && col[i].first < pc[j].first)) {
                    next.push_back(col[i++]);
                } else if (i == col.size() || pc[j].first < col[i].first) {
                    Scalar v = -(f * pc[j].second);
                    if (!v.is_zero()) next.push_back({pc[j].first, v});
                    ++j;
                } else {
                    Scalar v = col[i].second - f * pc[j].second;
                    if (!v.is_zero()) next.push_back({col[i].first, v});
                    ++i;
                    ++j;
                }
            }
            col = std::move(next);
        }
        return col;
    };

    for (int state = 0; state < (1 << n_); ++state) {
        if (hdeg_of_state(state) != h - 1) continue;
        for (int labels = 0; labels < (1 << circ_[state].n); ++labels) {
            Chain img;
            for (int c = 0; c < n_; ++c)
                if (!(state & (1 << c)))
                    apply_edge(state, c, labels, Scalar::one(p_), img);
            Col col = reduce(to_col(img));
            if (col.empty()) continue;
            Scalar inv = col.front().second.inverse();
            for (auto& [r, v] : col) v = v * inv;
            pivot[col.front().first] = col;
        }
    }
    Col zc = reduce(to_col(z));
    if (zc.empty()) throw OracleError("class is a coboundary");
    return qdeg(rows[zc.front().first].first, rows[zc.front().first].second);
}

long CubeComplex::total_homology_dim() const {
    // rank of d per homological degree by column reduction
    std::map<int, long> rank, dim;
    for (int state = 0; state < (1 << n_); ++state)
        dim[hdeg_of_state(state)] += 1L << circ_[state].n;

    std::map<int, std::map<Key, int>> row_of_h;
    std::map<int, std::map<int, std::vector<std::pair<int, Scalar>>>> pivots_h;
    auto row_id = [&](int h, const Key& k) {
        auto& m = row_of_h[h];
        auto it = m.find(k);
        if (it == m.end()) {
            int id = static_cast<int>(m.size());
            m[k] = id;
            return id;
        }
        return it->second;
    };
    for (int state = 0; state < (1 << n_); ++state) {
        int h = hdeg_of_state(state);
        for (int labels = 0; labels < (1 << circ_[state].n); ++labels) {
            Chain img;
            for (int c = 0; c < n_; ++c)
                if (!(state & (1 << c)))
                    apply_edge(state, c, labels, Scalar::one(p_), img);
            if (img.empty()) continue;
            std::vector<std::pair<int, Scalar>> col;
            for (auto& [key, v] : img) col.push_back({row_id(h + 1, key), v});
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            auto& pivots = pivots_h[h];
            while (!col.empty()) {
                int r = col.front().first;
                auto it = pivots.find(r);
                if (it == pivots.end()) {
                    Scalar inv = col.front().second.inverse();
                    for (auto& [rr, v] : col) v = v * inv;
                    pivots[r] = col;
                    ++rank[h];
                    break;
                }
                Scalar f = col.front().second;
                const auto& pc = it->second;
                std::vector<std::pair<int, Scalar>> next;
                size_t i = 0, j = 0;
                while (i < col.size() || j < pc.size()) {
                    if (j == pc.size() || (i < col.size() && col[i].first < pc[j].first))
                        next.push_back(col[i++]);
                    else if (i == col.size() || pc[j].first < col[i].first) {
                        Scalar v = -(f * pc[j].second);
                        if (!v.is_zero()) next.push_back({pc[j].first, v});
                        ++j;
                    } else {
                        Scalar v = col[i].second - f * pc[j].second;
                        if (!v.is_zero()) next.push_back({col[i].first, v});
                        ++i;
                        ++j;
                    }
                }
                col = std::move(next);
            }
        }
    }
    long total = 0;
    for (auto& [h, dm] : dim) {
        long r_out = rank.count(h) ? rank[h] : 0;
        long r_in = rank.count(h - 1) ? rank[h - 1] : 0;
        total += dm - r_out - r_in;
    }
    return total;
}

int s_oracle(const LinkDiagram& d, long p, int max_crossings) {
    CubeComplex cube(d, p, max_crossings);
    auto z = cube.orientation_cocycle();
    return cube.class_filtration(z) + 1;
}

bool average_check(const LinkDiagram& d, long p, int max_crossings) {
    if (p == 2) throw OracleError("the average identity does not hold in characteristic 2");
    CubeComplex cube(d, p, max_crossings);
    auto z = cube.orientation_cocycle(false);
    auto w = cube.orientation_cocycle(true);
    CubeComplex::Chain sum = z, diff = z;
    for (auto& [k, v] : w) {
        auto add = [&](CubeComplex::Chain& t, const Scalar& x) {
            auto it = t.find(k);
            if (it == t.end())
                t[k] = x;
            else {
                it->second += x;
                if (it->second.is_zero()) t.erase(it);
            }
        };
        add(sum, v);
        add(diff, -v);
    }
    int s = cube.class_filtration(z) + 1;
    int a = cube.class_filtration(sum);
    int b = cube.class_filtration(diff);
    return (a + b) % 2 == 0 && (a + b) / 2 == s;
}

}  // namespace slink
