#include <doctest.h>

#include "slink/pd.hpp"
#include "slink/sinv.hpp"

using namespace slink;

static const char* TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
static const char* HOPF = "PD[X[4,1,3,2],X[2,3,1,4]]";

TEST_CASE("s of small links") {
    auto trefoil = parse_pd(TREFOIL);
    for (long p : {0L, 2L, 3L}) {
        SOptions chk;
        chk.check = true;
        CHECK(s_invariant(trefoil, p, chk).s == 2);
        CHECK(s_invariant(mirror(trefoil), p).s == -2);
    }
    SOptions chk;
    chk.check = true;
    CHECK(s_invariant(parse_pd("PD[U]"), 0, chk).s == 0);
    CHECK(s_invariant(parse_pd("PD[X[2,1,1,2]]"), 0, chk).s == 0);
    CHECK(s_invariant(parse_pd("PD[X[1,1,2,2]]"), 0, chk).s == 0);
}

TEST_CASE("unlinks") {
    std::string pd = "PD[U";
    for (int n = 1; n <= 4; ++n) {
        auto d = parse_pd(pd + "]");
        for (long p : {0L, 2L, 3L, 7L}) CHECK(s_invariant(d, p).s == 1 - n);
        pd += ",U";
    }
}

TEST_CASE("positive Hopf link") {
    auto h = parse_pd(HOPF);
    SOptions chk;
    chk.check = true;
    for (long p : {0L, 2L, 3L}) {
        auto r = s_invariant(h, p, chk);
        CHECK(r.s == 1);
        CHECK(r.total_lk == 1);
    }
    SOptions none;
    none.trunc = TruncMode::None;
    auto r = s_invariant(h, 0, none);
    CHECK(r.total_dim.value() == 4);  // 2^{|L|}
}

TEST_CASE("truncation modes agree") {
    for (const char* s : {TREFOIL, HOPF, "PD[X[2,1,1,2]]"}) {
        auto d = parse_pd(s);
        auto m = mirror(d);
        for (long p : {0L, 3L}) {
            SOptions none;
            none.trunc = TruncMode::None;
            CHECK(s_invariant(d, p).s == s_invariant(d, p, none).s);
            CHECK(s_invariant(m, p).s == s_invariant(m, p, none).s);
        }
    }
}

TEST_CASE("scan order robustness") {
    auto d = parse_pd(TREFOIL);
    for (unsigned seed = 0; seed < 5; ++seed) {
        SOptions o;
        o.order_seed = seed;
        CHECK(s_invariant(d, 0, o).s == 2);
    }
}

TEST_CASE("bounds") {
    auto trefoil = parse_pd(TREFOIL);
    auto r = s_bounds(trefoil, 0);
    CHECK(r.s_min.value() == 2);
    CHECK(r.s_max.value() == 2);
    CHECK(r.s == 2);

    auto o2 = s_bounds(parse_pd("PD[U,U]"), 0);
    CHECK(o2.s_min.value() == -1);
    CHECK(o2.s_max.value() == 1);
    CHECK(o2.e_infinity_q_h0 == std::vector<int>{-2, 0, 0, 2});
    CHECK(o2.s_min.value() <= o2.s);
    CHECK(o2.s <= o2.s_max.value());
}

TEST_CASE("orientation scan shape") {
    auto trefoil = parse_pd(TREFOIL);
    CHECK(orientation_scan(trefoil, 0).size() == 1);
    auto h = parse_pd(HOPF);
    auto entries = orientation_scan(h, 0);
    CHECK(entries.size() == 2);
    CHECK(entries[0].total_lk == 1);
    CHECK(entries[1].total_lk == -1);
    CHECK_THROWS_AS(orientation_scan(h, 0, 1), DiagramError);
}

TEST_CASE("weak slice verdicts") {
    SResult u;
    u.s = 0;
    CHECK(weak_slice_report(u, 1) == SliceVerdict::Inconclusive);
    SResult t;
    t.s = 2;
    CHECK(weak_slice_report(t, 1) == SliceVerdict::Obstructed);
    SResult o3;
    o3.s = -2;
    CHECK(weak_slice_report(o3, 3) == SliceVerdict::Inconclusive);
}

TEST_CASE("lemma 2.4 flavours on small inputs") {
    auto trefoil = parse_pd(TREFOIL);
    auto h = parse_pd(HOPF);
    long p = 0;
    // split union additivity
    auto tu = split_union(trefoil, h);
    CHECK(s_invariant(tu, p).s == s_invariant(trefoil, p).s + s_invariant(h, p).s - 1);
    // connected sum sandwich
    auto gr = connect_sum(trefoil, 1, trefoil, 1);
    int s_gr = s_invariant(gr, p).s;
    CHECK(2 + 2 - 2 <= s_gr);
    CHECK(s_gr <= 2 + 2);
    // mirror sandwich
    int sm = s_invariant(trefoil, p).s + s_invariant(mirror(trefoil), p).s;
    CHECK(-2 * 1 + 2 <= sm);
    CHECK(sm <= 2);
    // reversing all components preserves s
    auto hr = reverse_components(h, {0, 1});
    CHECK(s_invariant(hr, p).s == s_invariant(h, p).s);
    // bipartition flip does not change s
    SOptions flip;
    flip.flip_labels = true;
    CHECK(s_invariant(trefoil, p, flip).s == 2);
    CHECK(s_invariant(h, p, flip).s == 1);
}
