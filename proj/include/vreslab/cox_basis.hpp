#ifndef VRESLAB_COX_BASIS_HPP
#define VRESLAB_COX_BASIS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vreslab/fp_matrix.hpp"

namespace vreslab {

/// Z^2-degree in the Cox ring of P^n x P^m: deg x_k = (1,0), deg y_k = (0,1).
struct BiDegree {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
    BiDegree operator+(BiDegree o) const { return {i + o.i, j + o.j}; }
    BiDegree operator-(BiDegree o) const { return {i - o.i, j - o.j}; }
};

/// Componentwise partial order.
inline bool leq(BiDegree a, BiDegree b) { return a.i <= b.i && a.j <= b.j; }
inline bool nonnegative(BiDegree d) { return d.i >= 0 && d.j >= 0; }

std::string to_string(BiDegree d);

struct NegativeDegree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Number of monomials of degree a in b+1 variables; zero for negative a.
std::int64_t t_binom(int a, int b);

/// Variables are numbered x_0..x_n, y_0..y_m -> 0..n+m+1.
struct CoxRing {
    int n = 1;
    int m = 2;

    int num_vars() const { return n + m + 2; }
    bool is_x(int var) const { return var <= n; }
    BiDegree degree_of(int var) const { return is_x(var) ? BiDegree{1, 0} : BiDegree{0, 1}; }
    int y0() const { return n + 1; }
    std::int64_t dim(BiDegree d) const { return t_binom(d.i, n) * t_binom(d.j, m); }
    std::string var_name(int var) const;
    friend bool operator==(const CoxRing&, const CoxRing&) = default;
};

struct Monomial {
    std::vector<int> x;  // length n+1
    std::vector<int> y;  // length m+1
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Monomial basis of S_(i,j), x-block major, each block in lex order with
/// x_0 > x_1 > ... (so x_0^i y_0^j comes first).
class MonomialBasis {
public:
    MonomialBasis(CoxRing ring, BiDegree degree);

    const CoxRing& ring() const { return ring_; }
    BiDegree degree() const { return degree_; }
    std::size_t size() const { return x_blocks_.size() * y_blocks_.size(); }

    Monomial at(std::size_t index) const;
    std::size_t index_of(const Monomial& mono) const;

    const std::vector<std::vector<int>>& x_exponents() const { return x_blocks_; }
    const std::vector<std::vector<int>>& y_exponents() const { return y_blocks_; }

private:
    CoxRing ring_;
    BiDegree degree_;
    std::vector<std::vector<int>> x_blocks_;
    std::vector<std::vector<int>> y_blocks_;
};

MonomialBasis monomials(int n, int m, BiDegree d);

/// Exponent vectors of total degree `degree` in `vars` variables, lex-descending.
std::vector<std::vector<int>> compositions(int degree, int vars);
/// Position of `exps` in the list produced by compositions().
std::size_t composition_rank(const std::vector<int>& exps);

/// Multiplication by `var` from S_src to S_(src + deg var), as a
/// (dim target) x (dim source) 0/1 matrix in the monomial bases.
FpMatrix mult_map(int var, BiDegree src, int n, int m, FieldPrime field = FieldPrime{});

/// Image index of each source monomial under multiplication by `var`.
std::vector<std::size_t> mult_index_map(int var, BiDegree src, int n, int m);

}  // namespace vreslab

#endif
