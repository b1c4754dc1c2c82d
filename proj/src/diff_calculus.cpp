#include "vreslab/diff_calculus.hpp"

#include <string>

namespace vreslab {

IntMatrix delta_c(const IntMatrix& h) {
    IntMatrix out(h.max_i(), h.max_j());
    for (int i = 0; i <= h.max_i(); ++i)
        for (int j = 0; j <= h.max_j(); ++j) out(i, j) = h.at(i, j) - h.at(i - 1, j);
    return out;
}

IntMatrix delta_r(const IntMatrix& h) {
    IntMatrix out(h.max_i(), h.max_j());
    for (int i = 0; i <= h.max_i(); ++i)
        for (int j = 0; j <= h.max_j(); ++j) out(i, j) = h.at(i, j) - h.at(i, j - 1);
    return out;
}

IntMatrix alternating_betti_from_hilbert(const IntMatrix& h, int n, int m) {
    IntMatrix b = h;
    for (int k = 0; k <= n; ++k) b = delta_c(b);
    for (int k = 0; k <= m; ++k) b = delta_r(b);
    return b;
}

IntMatrix hilbert_from_betti(const IntMatrix& b, int n, int m, BiDegree window) {
    IntMatrix h(window.i, window.j);
    for (int p = 0; p <= b.max_i() && p <= window.i; ++p) {
        for (int q = 0; q <= b.max_j() && q <= window.j; ++q) {
            const std::int64_t c = b.at(p, q);
            if (c == 0) continue;
            for (int i = p; i <= window.i; ++i)
                for (int j = q; j <= window.j; ++j) h(i, j) += c * t_binom(i - p, n) * t_binom(j - q, m);
        }
    }
    return h;
}

IntMatrix dh_p1p2(const IntMatrix& h) { return alternating_betti_from_hilbert(h, 1, 2); }

NRDecomposition nr_decomposition(int count) {
    if (count < 1) throw std::invalid_argument("nr_decomposition: need N >= 1");
    return {count, count / 6, count % 6, count / 3, count % 3};
}

IntMatrix predicted_dh_generic(int count) {
    if (count < 12)
        throw NTooSmall("predicted_dh_generic: closed form needs N >= 12, got " + std::to_string(count));
    const auto [n_, q, r, qp, rp] = nr_decomposition(count);
    IntMatrix dh(count + 1, 2);
    dh(0, 0) += 1;
    dh(q, 2) += r - 6;
    dh(q + 1, 2) += -r;
    dh(qp, 1) += rp - 3;
    dh(qp, 2) += 9 - 3 * rp;
    dh(qp + 1, 1) += -rp;
    dh(qp + 1, 2) += 3 * rp;
    dh(count, 0) += -1;
    dh(count, 1) += 3;
    dh(count, 2) += -3;
    return dh;
}

}  // namespace vreslab
