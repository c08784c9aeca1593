#include "homcat/matrix.hpp"

// Serial reference kernels. Deliberately a different algorithm from the
// production path (immediate rational division instead of fraction-free
// updates, no OpenMP) so the two can check each other.

namespace homcat {
namespace ref {

Echelon rref(const Matrix& m)
{
    const Field F = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Scalar> w(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            w[i * cols + j] = m(i, j);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (w[i * cols + c] != 0) {
                sel = i;
                break;
            }
        if (sel == rows)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(w[sel * cols + j], w[r * cols + j]);
        Scalar inv = F.inv(w[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j)
            w[r * cols + j] = F.mul(w[r * cols + j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            Scalar f = w[i * cols + c];
            if (f == 0)
                continue;
            for (std::size_t j = c; j < cols; ++j)
                w[i * cols + j] = F.sub(w[i * cols + j], F.mul(f, w[r * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{Matrix(F, rows, cols, std::move(w)), pivots, pivots.size()};
}

std::size_t rank(const Matrix& m)
{
    return ref::rref(m).rank;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    require(a.cols() == b.rows() && a.field() == b.field(), Errc::shape_mismatch,
            "reference multiply shape mismatch");
    Matrix r(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Scalar acc(0);
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += a(i, k) * b(k, j);
            r.set(i, j, acc);
        }
    return r;
}

} // namespace ref
} // namespace homcat
