#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "slink/pd.hpp"
#include "slink/scalar.hpp"

namespace slink::sl3 {

struct Sl3Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed trivalent web: oriented edges run source -> sink, every vertex is a
// source (all tails) or a sink (all heads), circles have endpoints (-1,-1).
// rot gives the incident edges in counterclockwise planar order.
struct Web {
    std::map<int, std::pair<int, int>> edges;   // id -> (tail vertex, head vertex)
    std::map<int, std::array<int, 3>> rot;      // vertex -> incident edge ids, CCW
    bool operator==(const Web& o) const { return edges == o.edges && rot == o.rot; }
    bool is_circle(int e) const { return edges.at(e).first < 0; }
    bool empty() const { return edges.empty(); }
    void check() const;  // source/sink and rotation consistency
};

// One elementary foam slab between two webs: sheet pieces plus seam arcs.
struct Slab {
    struct Piece {
        std::vector<int> bottom, top;  // distinct edge ids per side
        int dots = 0;
    };
    struct Seam {
        std::array<std::pair<int, int>, 2> ends;       // (dt 0/1, vertex)
        std::array<std::map<int, int>, 2> strands;     // edge -> piece, per end
    };
    std::vector<Piece> pieces;
    std::vector<Seam> seams;
};

// Formal composite of elementary foams.
struct Movie {
    std::vector<Web> webs;
    std::vector<Slab> slabs;

    static Movie still(const Web& w) { return {{w}, {}}; }
    Movie reversed() const;
    Movie then(const Movie& next) const;
    // add dots to the piece whose bottom (or top, if dt == 1) contains edge
    void add_dots(int slab, int dt, int edge, int count);
};

// linear combination of movies with a common source and target
using FoamExpr = std::vector<std::pair<Scalar, Movie>>;

// elementary moves (each a one-slab movie)
Movie birth(const Web& w, int circle_id);
Movie death(const Web& w, int circle_id);
Movie dotted_identity(const Web& w, int edge, int dots);
// removes the wide edge w between sink B and source T, fusing the strands
Movie unzip(const Web& web, int wide_edge);
// collapses the digon face bounded by edges d1, d2
Movie digon_collapse(const Web& web, int d1, int d2);
// square reduction: face edges in cyclic order (e1, e2, e3, e4); variant 0
// collapses e1, e3 as fins, variant 1 collapses e2, e4
Movie square_collapse(const Web& web, const std::array<int, 4>& face, int variant);

// evaluation of a closed movie (both end webs empty) by the foam relations
Scalar eval_closed(const Movie& m, long p);

// faces of a closed web via the rotation system (cyclic edge sequences)
std::vector<std::vector<int>> web_faces(const Web& w);

// rank-3 Frobenius data for the characteristic
struct Frobenius {
    long p;
    // I1 coefficients (c0 + c1 X + c2 X^2) and the cubic relation for dots
    std::array<Scalar, 3> i1;
    // multiplication in F[X]/(f): reduce X^d
    int reduce_exp(int d) const;
    std::array<Scalar, 3> mul(const std::array<Scalar, 3>& a,
                              const std::array<Scalar, 3>& b) const;
    std::array<Scalar, 3> counit_table() const;  // sphere values per dot count
    static Frobenius make(long p);
};

// one reduced generator of a closed web: q-shift (in the negated grading used
// by the pipeline) with inclusion/projection foams
struct ReducedGen {
    int dq = 0;
    Movie iota;    // empty web -> W
    FoamExpr pi;   // W -> empty web
};
std::vector<ReducedGen> reduce_web(const Web& w, long p);

// state webs of the resolution cube (bit 1 = higher homological degree)
Web state_web(const LinkDiagram& d, int state);
int state_hdeg(const LinkDiagram& d, int state);
int state_qtilde(const LinkDiagram& d, int state);
// the elementary foam of the cube edge flipping crossing c (bit 0 -> 1)
Movie edge_movie(const LinkDiagram& d, int state, int c);

int s_sl3(const LinkDiagram& d, long p, int max_crossings = 8, bool check = false);

}  // namespace slink::sl3
