#ifndef VRESLAB_DIFF_CALCULUS_HPP
#define VRESLAB_DIFF_CALCULUS_HPP

#include <stdexcept>

#include "vreslab/int_matrix.hpp"

namespace vreslab {

/// (Delta^C H)_{i,j} = H_{i,j} - H_{i-1,j}
IntMatrix delta_c(const IntMatrix& h);
/// (Delta^R H)_{i,j} = H_{i,j} - H_{i,j-1}
IntMatrix delta_r(const IntMatrix& h);

/// (Delta^C)^{n+1} (Delta^R)^{m+1} H. Entry (p,q) is the alternating sum
/// sum_k (-1)^k beta_{k,(p,q)} when H is the Hilbert matrix of a module.
IntMatrix alternating_betti_from_hilbert(const IntMatrix& h, int n, int m);

/// H(i,j) = sum_{(p,q) <= (i,j)} T_{i-p,n} T_{j-q,m} B_{p,q}.
IntMatrix hilbert_from_betti(const IntMatrix& b, int n, int m, BiDegree window);

/// DH = (Delta^C)^2 (Delta^R)^3 H, for P^1 x P^2.
IntMatrix dh_p1p2(const IntMatrix& h);

/// N = 6q + r = 3q' + r'.
struct NRDecomposition {
    int count;
    int q, r;
    int qp, rp;
    friend bool operator==(const NRDecomposition&, const NRDecomposition&) = default;
};

NRDecomposition nr_decomposition(int count);

struct NTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Closed form of columns 0..2 of DH for N >= 12 generic points in P^1 x P^2.
/// The window is (N+1, 2); entries landing on the same cell are summed.
IntMatrix predicted_dh_generic(int count);

}  // namespace vreslab

#endif
