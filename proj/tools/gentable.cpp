// Generates the bundled PD table from braid words and writes it to stdout.
// Run once; the output is committed as data/links.pd.

#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "slink/oracle.hpp"
#include "slink/pd.hpp"
#include "slink/sinv.hpp"

using namespace slink;

namespace {

// closure of a braid word; generators are 1-based, negative for inverses
LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
    std::vector<int> pos(strands);  // current segment id per position
    int next = 1;
    for (int i = 0; i < strands; ++i) pos[i] = next++;
    std::vector<int> first = pos;

    std::vector<std::array<int, 4>> slots;
    std::vector<bool> over1;
    std::map<int, int> succ;
    for (int g : word) {
        int i = std::abs(g) - 1;
        int a = pos[i], b = pos[i + 1];
        int na = next++, nb = next++;  // new segments at positions i, i+1
        if (g > 0) {
            // under: a -> nb, over: b -> na
            slots.push_back({a, b, nb, na});
            over1.push_back(true);
            succ[a] = nb;
            succ[b] = na;
        } else {
            // under: b -> na, over: a -> nb
            slots.push_back({b, nb, na, a});
            over1.push_back(false);
            succ[b] = na;
            succ[a] = nb;
        }
        pos[i] = na;
        pos[i + 1] = nb;
    }
    // closure: identify the final segment at each position with the initial one
    std::map<int, int> rep;
    for (int i = 0; i < strands; ++i)
        if (pos[i] != first[i]) rep[pos[i]] = first[i];
    auto canon = [&](int s) {
        while (rep.count(s)) s = rep[s];
        return s;
    };
    int unknots = 0;
    for (int i = 0; i < strands; ++i)
        if (pos[i] == first[i] && !succ.count(first[i])) ++unknots;  // untouched strand
    std::vector<std::array<int, 4>> cslots;
    for (auto& s : slots)
        cslots.push_back({canon(s[0]), canon(s[1]), canon(s[2]), canon(s[3])});
    std::map<int, int> csucc;
    for (auto [a, b] : succ) csucc[canon(a)] = canon(b);
    return assemble_diagram(cslots, over1, csucc, unknots);
}

std::vector<int> parse_word(const std::string& w) {
    std::vector<int> out;
    std::istringstream is(w);
    int x;
    while (is >> x) out.push_back(x);
    return out;
}

void emit(const std::string& name, const LinkDiagram& d) {
    // sanity: serialization round-trips and the diagram parses back
    auto text = to_pd(d);
    auto d2 = parse_pd(text);
    if (to_pd(d2) != text) throw std::runtime_error("unstable serialization: " + name);
    std::cout << "# " << name << "  crossings=" << d2.crossings.size()
              << " components=" << d2.total_components() << " writhe=" << d2.writhe()
              << "\n"
              << text << "\n";
}

}  // namespace

int main() {
    std::cout << "# Bundled PD table: torus braids, twist-style braid closures,\n";
    std::cout << "# alternating 3-braid closures and small multi-component links.\n";
    std::cout << "# One PD code per line; '#' starts a comment.\n";

    emit("unknot", parse_pd("PD[U]"));
    emit("unknot-kink-pos", parse_pd("PD[X[2,1,1,2]]"));
    emit("unknot-kink-neg", parse_pd("PD[X[1,1,2,2]]"));

    // torus links and knots T(2,n)
    for (int n = 2; n <= 8; ++n) {
        std::vector<int> w(n, 1);
        emit("torus-2-" + std::to_string(n), braid_closure(2, w));
        std::vector<int> wm(n, -1);
        emit("torus-2-" + std::to_string(n) + "-mirror", braid_closure(2, wm));
    }

    // alternating 3-braid closures (figure-eight family and friends)
    emit("figure-eight", braid_closure(3, parse_word("1 -2 1 -2")));
    emit("alt-3braid-5a", braid_closure(3, parse_word("1 -2 1 -2 1")));
    emit("alt-3braid-6a", braid_closure(3, parse_word("1 1 -2 1 -2 -2")));
    emit("borromean", braid_closure(3, parse_word("1 -2 1 -2 1 -2")));
    emit("alt-3braid-7a", braid_closure(3, parse_word("1 -2 1 -2 1 -2 1")));
    emit("alt-3braid-7b", braid_closure(3, parse_word("1 1 -2 1 -2 1 -2")));
    emit("alt-3braid-7c", braid_closure(3, parse_word("1 1 1 -2 1 -2 -2")));
    emit("alt-3braid-8a", braid_closure(3, parse_word("1 1 -2 1 -2 1 -2 -2")));

    // twist-style braids
    emit("twist-4", braid_closure(3, parse_word("1 1 1 -2")));
    emit("twist-5", braid_closure(3, parse_word("1 1 1 1 -2")));
    emit("twist-6", braid_closure(3, parse_word("1 1 1 1 1 -2")));

    // torus braids on three strands; T(3,4) is non-alternating
    emit("torus-3-2", braid_closure(3, parse_word("1 2 1 2")));
    emit("torus-3-3", braid_closure(3, parse_word("1 2 1 2 1 2")));
    emit("torus-3-4", braid_closure(3, parse_word("1 2 1 2 1 2 1 2")));
    emit("torus-3-4-mirror", braid_closure(3, parse_word("-1 -2 -1 -2 -1 -2 -1 -2")));

    // multi-component links beyond the torus family
    emit("chain-3", braid_closure(3, parse_word("1 1 2 2")));
    emit("link-2c-5", braid_closure(3, parse_word("1 1 -2 1 1")));
    emit("link-2c-6", braid_closure(3, parse_word("1 1 1 -2 1 1")));
    emit("link-3c-6", braid_closure(3, parse_word("1 1 -2 -2 1 1")));
    emit("link-2c-7", braid_closure(3, parse_word("1 1 1 1 1 1 -2")));
    emit("link-2c-8", braid_closure(3, parse_word("1 1 1 1 1 1 -2 -2")));
    emit("link-3c-8", braid_closure(3, parse_word("1 1 2 2 1 1 2 2")));

    // mixed-sign knots
    emit("knot-6n", braid_closure(3, parse_word("1 1 1 -2 -2 -2")));
    emit("knot-7n", braid_closure(3, parse_word("1 1 1 1 -2 -2 -2")));
    emit("knot-8n", braid_closure(4, parse_word("1 1 -2 3 -2 3 1 -2")));

    // split and composite constructions
    emit("unlink-2", parse_pd("PD[U,U]"));
    emit("unlink-3", parse_pd("PD[U,U,U]"));
    emit("unlink-4", parse_pd("PD[U,U,U,U]"));
    {
        auto t = braid_closure(2, parse_word("1 1 1"));
        emit("trefoil-split-unknot", split_union(t, parse_pd("PD[U]")));
        emit("trefoil-split-hopf", split_union(t, braid_closure(2, parse_word("1 1"))));
        emit("granny", connect_sum(t, 1, t, 1));
        emit("square-knot", connect_sum(t, 1, mirror(t), 1));
        emit("hopf-chain", connect_sum(braid_closure(2, parse_word("1 1")), 1,
                                       braid_closure(2, parse_word("1 1")), 1));
    }
    return 0;
}
