#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homcat/field.hpp"

namespace homcat {

// Dense row-major matrix over an exact field. Values are immutable in spirit:
// every operation returns a fresh matrix and entries stay canonical.
class Matrix {
public:
    Matrix() : field_(Field::rationals()), rows_(0), cols_(0) {}
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar(0))
    {
    }
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

    static Matrix identity(Field f, std::size_t n);
    static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }
    static Matrix from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols);
    static Matrix column(Field f, const Vec& v);
    static Matrix scalar(Field f, std::size_t n, const Scalar& c);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Scalar& v) { e_[i * cols_ + j] = field_.reduce(v); }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;
    Vec apply(const Vec& v) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;

    Matrix hcat(const Matrix& o) const;
    Matrix vcat(const Matrix& o) const;
    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    std::string to_string() const;

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> e_;

    friend struct MatrixKernels;
};

// Kronecker product, row-major convention: (A (x) B)[(ia*rB+ib), (ja*cB+jb)].
Matrix kron(const Matrix& a, const Matrix& b);

// Assemble a matrix from a grid of blocks with prescribed block dims.
class BlockBuilder {
public:
    BlockBuilder(Field f, std::vector<std::size_t> row_dims, std::vector<std::size_t> col_dims);
    void place(std::size_t bi, std::size_t bj, const Matrix& m);
    void place_scaled(std::size_t bi, std::size_t bj, const Matrix& m, const Scalar& c);
    const Matrix& result() const { return m_; }

private:
    std::vector<std::size_t> roff_, coff_;
    std::vector<std::size_t> rdim_, cdim_;
    Matrix m_;
};

struct Echelon {
    Matrix rref;                 // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per pivot row
    std::size_t rank = 0;
};

// Production kernels. Over the rationals: row-scaled fraction-free (Bareiss)
// forward elimination, then a rational normalization pass to RREF. Over F_p:
// plain modular elimination. Row updates are OpenMP-parallel; results are
// bit-identical at any thread count (each row update depends only on that row
// and the pivot row).
Echelon rref(const Matrix& m);

std::size_t rank(const Matrix& m);

class Subspace; // fwd

// canonical basis of {v : m v = 0}, rows in RREF
Subspace kernel_basis(const Matrix& m);

// canonical particular solution of m x = b (free variables zero), or nullopt
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// inverse of a square matrix, nullopt when singular
std::optional<Matrix> inverse(const Matrix& m);

// Subspace of F^n given by an RREF row basis; the canonical representative of
// the subspace, so equality is plain matrix equality.
class Subspace {
public:
    Subspace() : ambient_(0), basis_(Field::rationals(), 0, 0) {}
    static Subspace zero(Field f, std::size_t ambient);
    static Subspace full(Field f, std::size_t ambient);
    static Subspace from_spanning(Field f, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace from_rows(const Matrix& rows); // echelonizes

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    // coordinates of v in the RREF basis (nullopt if v is outside)
    std::optional<Vec> coordinates(const Vec& v) const;
    // remainder of v after reducing by the basis (zero iff contained)
    Vec reduce(const Vec& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

    bool operator==(const Subspace& o) const
    {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    std::size_t ambient_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace image_space(const Matrix& m); // column span, as a Subspace of F^rows

// Canonical basis of the quotient F^n / S: classes of the standard basis
// vectors at the non-pivot coordinates of S, ascending.
std::vector<std::size_t> quotient_coordinates(const Subspace& s);
// coordinates of [v] in that basis
Vec quotient_reduce(const Subspace& s, const Vec& v);

// Matrix of the map induced by m on F^cols/src -> F^rows/dst between the
// canonical quotient bases. Throws SubspaceNotPreserved if m(src) is not
// contained in dst.
Matrix induced_on_quotient(const Matrix& m, const Subspace& src, const Subspace& dst);

// Serial reference implementations, kept as an independent oracle for the
// OpenMP kernels (plain Gauss-Jordan with immediate division, no Bareiss).
namespace ref {
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
} // namespace ref

} // namespace homcat
