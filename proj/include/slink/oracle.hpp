#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "slink/pd.hpp"
#include "slink/scalar.hpp"

namespace slink {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full 2^n resolution cube of the Bar-Natan complex over F_BN. Basis vectors
// are (state, labels): labels bit i set = circle i carries X.
class CubeComplex {
  public:
    CubeComplex(const LinkDiagram& d, long p, int max_crossings = 12);

    long characteristic() const { return p_; }
    int n_crossings() const { return n_; }
    int hdeg_of_state(int state) const;
    int qshift_of_state(int state) const;
    int circles(int state) const;
    int qdeg(int state, int labels) const;
    long dim_at_hdeg(int h) const;

    using Key = std::pair<int, int>;  // (state, labels)
    using Chain = std::map<Key, Scalar>;

    Chain d(const Chain& z) const;
    bool is_cocycle(const Chain& z) const;
    void verify_d2() const;  // d of every basis vector, then d again

    // orientation cocycle; flip swaps both idempotent labels everywhere
    // (equivalently the cocycle of the all-reversed orientation)
    Chain orientation_cocycle(bool flip = false) const;

    // largest j such that z + d(b) is supported in q-degrees >= j
    int class_filtration(const Chain& z) const;

    long total_homology_dim() const;

  private:
    const LinkDiagram diag_;
    long p_;
    int n_;
    int oriented_state_ = 0;
    struct StateCircles {
        int n = 0;
        std::map<std::pair<int, int>, int> of_slot;  // (crossing, slot) -> circle
    };
    std::vector<StateCircles> circ_;
    std::vector<int> u_circle_base_;  // index of first U circle per state

    void apply_edge(int state, int c, int labels, const Scalar& coeff, Chain& out) const;
};

int s_oracle(const LinkDiagram& d, long p, int max_crossings = 12);
bool average_check(const LinkDiagram& d, long p, int max_crossings = 12);

}  // namespace slink
