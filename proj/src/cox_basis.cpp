#include "vreslab/cox_basis.hpp"

namespace vreslab {

std::string to_string(BiDegree d) {
    return "(" + std::to_string(d.i) + "," + std::to_string(d.j) + ")";
}

std::int64_t t_binom(int a, int b) {
    if (a < 0 || b < 0) return 0;
    // C(a+b, b) computed incrementally; exact at every step.
    std::int64_t r = 1;
    for (int k = 1; k <= b; ++k) r = r * (a + k) / k;
    return r;
}

std::string CoxRing::var_name(int var) const {
    return is_x(var) ? "x" + std::to_string(var) : "y" + std::to_string(var - n - 1);
}

std::vector<std::vector<int>> compositions(int degree, int vars) {
    std::vector<std::vector<int>> out;
    if (degree < 0 || vars <= 0) return out;
    std::vector<int> cur(vars, 0);
    // Recursive fill, largest first exponent first.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == vars - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

std::size_t composition_rank(const std::vector<int>& exps) {
    int left = 0;
    for (int e : exps) left += e;
    const int vars = static_cast<int>(exps.size());
    std::size_t rank = 0;
    for (int pos = 0; pos + 1 < vars; ++pos) {
        // Vectors with a larger exponent at `pos` come first.
        for (int e = left; e > exps[pos]; --e)
            rank += static_cast<std::size_t>(t_binom(left - e, vars - pos - 2));
        left -= exps[pos];
    }
    return rank;
}

MonomialBasis::MonomialBasis(CoxRing ring, BiDegree degree) : ring_(ring), degree_(degree) {
    if (!nonnegative(degree))
        throw NegativeDegree("monomial basis requested in negative degree " + to_string(degree));
    x_blocks_ = compositions(degree.i, ring.n + 1);
    y_blocks_ = compositions(degree.j, ring.m + 1);
}

Monomial MonomialBasis::at(std::size_t index) const {
    const std::size_t ny = y_blocks_.size();
    return {x_blocks_.at(index / ny), y_blocks_.at(index % ny)};
}

std::size_t MonomialBasis::index_of(const Monomial& mono) const {
    return composition_rank(mono.x) * y_blocks_.size() + composition_rank(mono.y);
}

MonomialBasis monomials(int n, int m, BiDegree d) { return MonomialBasis(CoxRing{n, m}, d); }

std::vector<std::size_t> mult_index_map(int var, BiDegree src, int n, int m) {
    CoxRing ring{n, m};
    if (var < 0 || var >= ring.num_vars()) throw std::out_of_range("variable index out of range");
    MonomialBasis from(ring, src);
    MonomialBasis to(ring, src + ring.degree_of(var));
    std::vector<std::size_t> image(from.size());
    for (std::size_t k = 0; k < from.size(); ++k) {
        Monomial mono = from.at(k);
        if (ring.is_x(var))
            ++mono.x[var];
        else
            ++mono.y[var - n - 1];
        image[k] = to.index_of(mono);
    }
    return image;
}

FpMatrix mult_map(int var, BiDegree src, int n, int m, FieldPrime field) {
    CoxRing ring{n, m};
    auto image = mult_index_map(var, src, n, m);
    FpMatrix a(static_cast<std::size_t>(ring.dim(src + ring.degree_of(var))), image.size(), field);
    for (std::size_t k = 0; k < image.size(); ++k) a(image[k], k) = 1;
    return a;
}

}  // namespace vreslab
