#include <doctest.h>

#include "slink/oracle.hpp"
#include "slink/sinv.hpp"

using namespace slink;

static const char* TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
static const char* HOPF = "PD[X[4,1,3,2],X[2,3,1,4]]";

TEST_CASE("cube dimensions") {
    CubeComplex u(parse_pd("PD[U]"), 0);
    CHECK(u.dim_at_hdeg(0) == 2);
    CHECK(u.total_homology_dim() == 2);

    CubeComplex kink(parse_pd("PD[X[2,1,1,2]]"), 0);
    CHECK(kink.circles(0) == 2);
    CHECK(kink.circles(1) == 1);
    CHECK(kink.dim_at_hdeg(0) == 4);
    CHECK(kink.dim_at_hdeg(1) == 2);
    kink.verify_d2();

    CubeComplex t(parse_pd(TREFOIL), 0);
    long total = 0;
    for (int h = 0; h <= 3; ++h) total += t.dim_at_hdeg(h);
    long expect = 0;
    for (int s = 0; s < 8; ++s) expect += 1L << t.circles(s);
    CHECK(total == expect);
    t.verify_d2();
}

TEST_CASE("orientation cocycle is a cocycle under any bipartition") {
    for (const char* pd : {TREFOIL, HOPF, "PD[X[2,1,1,2]]"}) {
        for (long p : {0L, 3L}) {
            CubeComplex cube(parse_pd(pd), p);
            CHECK(cube.is_cocycle(cube.orientation_cocycle(false)));
            CHECK(cube.is_cocycle(cube.orientation_cocycle(true)));
        }
    }
}

TEST_CASE("class filtration examples") {
    CubeComplex u(parse_pd("PD[U]"), 0);
    CHECK(u.class_filtration(u.orientation_cocycle()) == -1);
    CHECK(s_oracle(parse_pd("PD[U]"), 0) == 0);

    CubeComplex o2(parse_pd("PD[U,U]"), 0);
    CHECK(o2.class_filtration(o2.orientation_cocycle()) == -2);

    CHECK(s_oracle(parse_pd(TREFOIL), 0) == 2);
}

TEST_CASE("oracle agrees with the scanning engine on small diagrams") {
    for (const char* pd :
         {"PD[U]", "PD[U,U]", "PD[X[2,1,1,2]]", "PD[X[1,1,2,2]]", TREFOIL, HOPF}) {
        auto d = parse_pd(pd);
        auto m = mirror(d);
        for (long p : {0L, 2L, 3L}) {
            CHECK(s_oracle(d, p) == s_invariant(d, p).s);
            CHECK(s_oracle(m, p) == s_invariant(m, p).s);
        }
    }
}

TEST_CASE("reversed-orientation filtration agrees") {
    for (const char* pd : {TREFOIL, HOPF}) {
        CubeComplex cube(parse_pd(pd), 0);
        CHECK(cube.class_filtration(cube.orientation_cocycle(false)) ==
              cube.class_filtration(cube.orientation_cocycle(true)));
    }
}

TEST_CASE("average identity") {
    for (const char* pd : {"PD[U]", "PD[X[2,1,1,2]]", TREFOIL, HOPF}) {
        auto d = parse_pd(pd);
        for (long p : {0L, 3L, 5L}) CHECK(average_check(d, p));
    }
    CHECK_THROWS_AS(average_check(parse_pd(TREFOIL), 2), OracleError);
}

TEST_CASE("total homology dimension is 2^components") {
    CHECK(CubeComplex(parse_pd(TREFOIL), 0).total_homology_dim() == 2);
    CHECK(CubeComplex(parse_pd(HOPF), 0).total_homology_dim() == 4);
    CHECK(CubeComplex(parse_pd(HOPF), 2).total_homology_dim() == 4);
    CHECK(CubeComplex(parse_pd("PD[U,U]"), 0).total_homology_dim() == 4);
}

TEST_CASE("size limit") {
    CHECK_THROWS_AS(CubeComplex(parse_pd(TREFOIL), 0, 2), OracleError);
}

TEST_CASE("hopf antiparallel orientation via oracle") {
    auto h = parse_pd(HOPF);
    auto hr = reverse_components(h, {1});
    for (long p : {0L, 2L, 3L}) {
        int so = s_oracle(hr, p);
        CHECK(so == s_invariant(hr, p).s);
    }
}
