#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "slink/scalar.hpp"

namespace slink {

struct CobError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Crossingless tangle: a perfect matching on boundary points plus closed
// circles. Circles are transient; delooping removes them.
struct Tangle {
    std::vector<std::pair<int, int>> arcs;  // each (lo, hi), sorted
    std::vector<int> circles;               // sorted ids

    void normalize();
    bool operator==(const Tangle& o) const { return arcs == o.arcs && circles == o.circles; }
    std::vector<int> boundary() const;
    bool has_circle() const { return !circles.empty(); }
};

// Closed cycles of the glued 1-manifold S u_d T (S, T on the same boundary).
// A normalized cobordism term assigns a dot bit to every cycle; the cycle
// order here is canonical, so a term is just a bit mask.
struct Cycles {
    struct Cycle {
        std::vector<int> points;            // sorted; empty for lone circles
        std::vector<int> s_arcs, t_arcs;    // arc indices
        int s_circle = -1, t_circle = -1;
    };
    std::vector<Cycle> cycles;
    int n_points = 0;
    std::map<int, int> of_point;            // boundary point -> cycle index
    std::map<int, int> of_s_circle, of_t_circle;
    std::vector<int> of_s_arc, of_t_arc;    // arc index -> cycle index
    int size() const { return static_cast<int>(cycles.size()); }
};

Cycles make_cycles(const Tangle& S, const Tangle& T);

// Linear combination of normalized dotted cobordisms between fixed objects.
struct Cob {
    std::vector<std::pair<std::uint64_t, Scalar>> terms;  // sorted by mask

    bool is_zero() const { return terms.empty(); }
    Cob operator+(const Cob& o) const;
    Cob operator-() const;
    Cob scaled(const Scalar& c) const;
    bool operator==(const Cob& o) const { return terms == o.terms; }

    static Cob zero() { return {}; }
    static Cob single(std::uint64_t mask, const Scalar& c);
    void merge();  // sort, combine, drop zeros
};

// degree of one normalized term between S and T (chi - |boundary|/2 - 2 dots)
int deg_cob(const Cycles& cyc, std::uint64_t mask);

// identity morphism (circle factors expand by neck-cutting)
Cob identity_cob(const Tangle& obj, long p);

// f after g: g in Hom(a,b), f in Hom(b,c)
Cob compose(const Tangle& a, const Cob& g, const Tangle& b, const Cob& f, const Tangle& c,
            long p);

// Horizontal gluing of objects along equal point ids (plus explicit welds for
// doubled points). Records a constituent representative for every new arc and
// circle so cobordism gluing can locate pieces.
struct GluedObject {
    Tangle object;
    // each consumed boundary point yields one vertical gluing segment; the
    // two incidences are (side, point) with side 0 = first object
    std::vector<std::array<std::pair<int, int>, 2>> consumed;
    // representative constituent per new arc / new circle:
    // side 0 = first object, 1 = second; kind 0 = arc index, 1 = circle id
    struct Rep {
        int side, kind, ref;
    };
    std::vector<Rep> arc_rep;
    std::vector<Rep> circle_rep;
    std::vector<int> new_circle_ids;
};
GluedObject glue_objects(const Tangle& A, const Tangle& B,
                         const std::vector<std::pair<int, int>>& welds, int& next_circle_id);

// Horizontal gluing of cobordism terms matching a glue_objects result (the
// same weld pattern applies to source and target sides).
Cob glue_cobs(const Tangle& Sa, const Tangle& Ta, const Cob& ca, const Tangle& Sb,
              const Tangle& Tb, const Cob& cb, const GluedObject& gs, const GluedObject& gt,
              long p);

// Delooping structural maps for circle z of obj: obj ~ q^{+1} obj' + q^{-1} obj'.
// in_plus: cup, in_minus: dotted cup (obj' -> obj);
// out_plus: dotted cap - cap, out_minus: cap (obj -> obj').
enum class DeloopMap { InPlus, InMinus, OutPlus, OutMinus };
Cob deloop_map(const Tangle& obj, int z, DeloopMap which, long p);

}  // namespace slink
