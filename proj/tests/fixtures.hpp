// Hand-built point configurations shared by several test files.
#ifndef VRESLAB_TEST_FIXTURES_HPP
#define VRESLAB_TEST_FIXTURES_HPP

#include <random>

#include "vreslab/betti.hpp"

namespace fixture {

// Points whose x-parts take exactly sizes.size() distinct values, fiber k holding sizes[k] points.
inline vreslab::PointSet fibered_points(int n, int m, const std::vector<int>& sizes, std::uint64_t seed,
                                        vreslab::FieldPrime field = vreslab::FieldPrime{}) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<vreslab::Residue> coord(0, field.value() - 1);
    auto vec = [&](int len) {
        std::vector<vreslab::Residue> v{1};
        for (int k = 0; k < len; ++k) v.push_back(coord(gen));
        return v;
    };
    std::vector<vreslab::Point> pts;
    for (int size : sizes) {
        const auto base = vec(n);
        for (int s = 0; s < size; ++s) pts.push_back({base, vec(m)});
    }
    return vreslab::PointSet(n, m, field, std::move(pts), seed);
}

// Monomial ideal generated by the given monomials, degreewise.
inline vreslab::IdealPieces monomial_ideal(vreslab::CoxRing ring, std::vector<vreslab::Monomial> gens) {
    return [ring, gens](vreslab::BiDegree d) {
        const vreslab::MonomialBasis basis(ring, d);
        vreslab::FpMatrix rows(0, basis.size());
        std::vector<vreslab::Residue> e(basis.size(), 0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const vreslab::Monomial mono = basis.at(k);
            bool divisible = false;
            for (const auto& g : gens) {
                bool div = true;
                for (std::size_t a = 0; a < g.x.size(); ++a) div = div && mono.x[a] >= g.x[a];
                for (std::size_t a = 0; a < g.y.size(); ++a) div = div && mono.y[a] >= g.y[a];
                divisible = divisible || div;
            }
            if (divisible) {
                e[k] = 1;
                rows.append_row(e);
                e[k] = 0;
            }
        }
        return rows;
    };
}

inline vreslab::PointSet generic(int n, int m, int count, std::uint64_t seed) {
    return vreslab::random_points(n, m, count, seed, true).points;
}

}  // namespace fixture

#endif
