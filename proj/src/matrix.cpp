#include "homcat/matrix.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace homcat {

namespace {

// below this many entries the parallel loops are not worth spawning
constexpr std::size_t kParallelCutoff = 4096;

// word-sized residue view of a prime-field matrix; all F_p kernels run on
// plain uint64 arithmetic and convert back at the end
std::vector<std::uint64_t> residues(const Matrix& m)
{
    std::vector<std::uint64_t> w(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            w[i * m.cols() + j] = m(i, j).get_num().get_ui();
    return w;
}

std::vector<Scalar> scalars_of(const std::vector<std::uint64_t>& w)
{
    std::vector<Scalar> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = Scalar(static_cast<unsigned long>(w[i]));
    return out;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    // extended Euclid on word-sized values
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0)
        t += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(f), rows_(rows), cols_(cols), e_(std::move(entries))
{
    require(e_.size() == rows_ * cols_, Errc::shape_mismatch,
            "entry count does not match rows*cols");
    for (auto& x : e_)
        x = field_.reduce(x);
}

Matrix Matrix::identity(Field f, std::size_t n)
{
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.e_[i * n + i] = 1;
    return m;
}

Matrix Matrix::scalar(Field f, std::size_t n, const Scalar& c)
{
    Matrix m(f, n, n);
    Scalar cc = f.reduce(c);
    for (std::size_t i = 0; i < n; ++i)
        m.e_[i * n + i] = cc;
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols)
{
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == cols, Errc::shape_mismatch, "row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m.e_[i * cols + j] = f.reduce(rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(Field f, const Vec& v)
{
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        m.e_[i] = f.reduce(v[i]);
    return m;
}

Vec Matrix::row(std::size_t i) const
{
    return Vec(e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const
{
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = e_[i * cols_ + j];
    return v;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    require(field_ == o.field_, Errc::field_mismatch, "matrix product over different fields");
    require(cols_ == o.rows_, Errc::shape_mismatch, "matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rows_);
    if (!field_.is_rationals()) {
        // word arithmetic mod p with a 128-bit accumulator
        const std::uint64_t p = field_.characteristic();
        std::vector<std::uint64_t> a = residues(*this), b = residues(o);
        std::vector<std::uint64_t> c(rows_ * o.cols_, 0);
#pragma omp parallel for schedule(static) if (rows_ * o.cols_ * cols_ > kParallelCutoff)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < o.cols_; ++j) {
                unsigned __int128 acc = 0;
                for (std::size_t k = 0; k < cols_; ++k)
                    acc += static_cast<unsigned __int128>(a[static_cast<std::size_t>(i) * cols_ +
                                                            k]) *
                           b[k * o.cols_ + j];
                c[static_cast<std::size_t>(i) * o.cols_ + j] =
                    static_cast<std::uint64_t>(acc % p);
            }
        r.e_ = scalars_of(c);
        return r;
    }
    // the rational product is GMP-allocation bound; it stays serial
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = e_[static_cast<std::size_t>(i) * cols_ + k];
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.e_[k * o.cols_ + j];
                if (b == 0)
                    continue;
                r.e_[static_cast<std::size_t>(i) * o.cols_ + j] += a * b;
            }
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const
{
    require(field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_, Errc::shape_mismatch,
            "matrix sum shape mismatch");
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = field_.add(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const
{
    require(field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_, Errc::shape_mismatch,
            "matrix difference shape mismatch");
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = field_.sub(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::operator-() const
{
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = field_.neg(e_[i]);
    return r;
}

Matrix Matrix::scaled(const Scalar& c) const
{
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = field_.mul(e_[i], c);
    return r;
}

Matrix Matrix::transpose() const
{
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r.e_[j * rows_ + i] = e_[i * cols_ + j];
    return r;
}

Vec Matrix::apply(const Vec& v) const
{
    require(v.size() == cols_, Errc::shape_mismatch, "matrix-vector shape mismatch");
    Vec r(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc(0);
        for (std::size_t j = 0; j < cols_; ++j)
            if (e_[i * cols_ + j] != 0 && v[j] != 0)
                acc += e_[i * cols_ + j] * v[j];
        r[i] = field_.reduce(acc);
    }
    return r;
}

bool Matrix::operator==(const Matrix& o) const
{
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool Matrix::is_zero() const
{
    for (const auto& x : e_)
        if (x != 0)
            return false;
    return true;
}

bool Matrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (e_[i * cols_ + j] != (i == j ? 1 : 0))
                return false;
    return true;
}

Matrix Matrix::hcat(const Matrix& o) const
{
    require(rows_ == o.rows_ && field_ == o.field_, Errc::shape_mismatch, "hcat shape mismatch");
    Matrix r(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            r.e_[i * r.cols_ + j] = e_[i * cols_ + j];
        for (std::size_t j = 0; j < o.cols_; ++j)
            r.e_[i * r.cols_ + cols_ + j] = o.e_[i * o.cols_ + j];
    }
    return r;
}

Matrix Matrix::vcat(const Matrix& o) const
{
    require(cols_ == o.cols_ && field_ == o.field_, Errc::shape_mismatch, "vcat shape mismatch");
    Matrix r(field_, rows_ + o.rows_, cols_);
    std::copy(e_.begin(), e_.end(), r.e_.begin());
    std::copy(o.e_.begin(), o.e_.end(), r.e_.begin() + static_cast<std::ptrdiff_t>(e_.size()));
    return r;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    require(r0 + nr <= rows_ && c0 + nc <= cols_, Errc::shape_mismatch, "submatrix out of range");
    Matrix r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            r.e_[i * nc + j] = e_[(r0 + i) * cols_ + (c0 + j)];
    return r;
}

std::string Matrix::to_string() const
{
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " over " << field_.to_string() << "\n";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << e_[i * cols_ + j].get_str();
        os << "]\n";
    }
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    require(a.field() == b.field(), Errc::field_mismatch, "kron over different fields");
    Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Scalar& c = a(ia, ja);
            if (c == 0)
                continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    if (b(ib, jb) != 0)
                        r.set(ia * b.rows() + ib, ja * b.cols() + jb, c * b(ib, jb));
        }
    return r;
}

BlockBuilder::BlockBuilder(Field f, std::vector<std::size_t> row_dims, std::vector<std::size_t> col_dims)
    : rdim_(std::move(row_dims)), cdim_(std::move(col_dims)), m_(f, 0, 0)
{
    std::size_t r = 0, c = 0;
    for (auto d : rdim_) {
        roff_.push_back(r);
        r += d;
    }
    for (auto d : cdim_) {
        coff_.push_back(c);
        c += d;
    }
    m_ = Matrix(f, r, c);
}

void BlockBuilder::place(std::size_t bi, std::size_t bj, const Matrix& m)
{
    require(bi < rdim_.size() && bj < cdim_.size(), Errc::shape_mismatch, "block index out of range");
    require(m.rows() == rdim_[bi] && m.cols() == cdim_[bj], Errc::shape_mismatch,
            "block shape mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                m_.set(roff_[bi] + i, coff_[bj] + j, m(i, j));
}

void BlockBuilder::place_scaled(std::size_t bi, std::size_t bj, const Matrix& m, const Scalar& c)
{
    place(bi, bj, m.scaled(c));
}

// ---------------------------------------------------------------------------
// elimination kernels
// ---------------------------------------------------------------------------

namespace {

// forward Bareiss elimination on integer rows; one-step fraction-free
// updates keep the entries integral, and the row loop runs in mpz scratch
// space so the hot path does no allocation
void bareiss_forward(std::vector<mpz_class>& w, std::size_t rows, std::size_t cols,
                     std::vector<std::size_t>& pivots)
{
    mpz_class prev(1);
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
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(w[sel * cols + j], w[r * cols + j]);
        const mpz_class piv = w[r * cols + c];
        const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(r + 1);
        const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(rows);
        // bignum row updates are allocator-bound and measured slower under
        // threads; the rational forward pass stays serial (the F_p kernels
        // carry the OpenMP path)
        {
            mpz_class f, t;
            for (std::ptrdiff_t i = lo; i < hi; ++i) {
                const std::size_t base = static_cast<std::size_t>(i) * cols;
                f = w[base + c];
                for (std::size_t j = c; j < cols; ++j) {
                    // t = (piv*w_ij - f*w_rj) / prev, exact by Sylvester;
                    // every row below the pivot is updated every step, or
                    // the divisibility pattern breaks
                    mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), w[base + j].get_mpz_t());
                    mpz_submul(t.get_mpz_t(), f.get_mpz_t(), w[r * cols + j].get_mpz_t());
                    mpz_divexact(w[base + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                w[base + c] = 0;
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
}

// rational back-substitution pass: normalize pivots to 1, clear above
void normalize_to_rref(std::vector<Scalar>& w, std::size_t cols,
                       const std::vector<std::size_t>& pivots)
{
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t pr = k; // after forward pass pivot row index == k
        const std::size_t pc = pivots[k];
        Scalar inv = Scalar(1) / w[pr * cols + pc];
        for (std::size_t j = pc; j < cols; ++j)
            w[pr * cols + j] *= inv;
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pr);
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const std::size_t base = static_cast<std::size_t>(i) * cols;
            const Scalar f = w[base + pc];
            if (f == 0)
                continue;
            for (std::size_t j = pc; j < cols; ++j)
                w[base + j] -= f * w[pr * cols + j];
        }
    }
}

Echelon rref_rationals(const Matrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<mpz_class> w(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        // scale the row to integer entries; row spans are unchanged
        mpz_class l(1);
        for (std::size_t j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j)
            w[i * cols + j] = mpz_class(m(i, j) * Scalar(l));
    }
    std::vector<std::size_t> pivots;
    bareiss_forward(w, rows, cols, pivots);
    std::vector<Scalar> q(rows * cols);
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = Scalar(w[i]);
    normalize_to_rref(q, cols, pivots);
    Echelon e{Matrix(m.field(), rows, cols, std::move(q)), pivots, pivots.size()};
    return e;
}

Echelon rref_prime(const Matrix& m)
{
    const Field F = m.field();
    const std::uint64_t p = F.characteristic();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> w = residues(m);
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
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(w[sel * cols + j], w[r * cols + j]);
        const std::uint64_t inv = inv_mod(w[r * cols + c], p);
        for (std::size_t j = c; j < cols; ++j)
            w[r * cols + j] = (w[r * cols + j] * inv) % p;
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (rows * cols > kParallelCutoff)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (static_cast<std::size_t>(i) == r)
                continue;
            const std::size_t base = static_cast<std::size_t>(i) * cols;
            const std::uint64_t f = w[base + c];
            if (f == 0)
                continue;
            for (std::size_t j = c; j < cols; ++j)
                w[base + j] = (w[base + j] + p * p - (f * w[r * cols + j]) % p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{Matrix(F, rows, cols, scalars_of(w)), pivots, pivots.size()};
}

} // namespace

Echelon rref(const Matrix& m)
{
    return m.field().is_rationals() ? rref_rationals(m) : rref_prime(m);
}

std::size_t rank(const Matrix& m)
{
    return rref(m).rank;
}

Subspace kernel_basis(const Matrix& m)
{
    Echelon e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec> span;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j])
            continue;
        Vec v(n, Scalar(0));
        v[j] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            v[e.pivots[k]] = m.field().neg(e.rref(k, j));
        span.push_back(std::move(v));
    }
    return Subspace::from_spanning(m.field(), n, span);
}

std::optional<Vec> solve(const Matrix& m, const Vec& b)
{
    require(b.size() == m.rows(), Errc::shape_mismatch, "solve: rhs length mismatch");
    Matrix aug = m.hcat(Matrix::column(m.field(), b));
    Echelon e = rref(aug);
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        if (e.pivots[k] == m.cols())
            return std::nullopt; // pivot in the rhs column: inconsistent
    Vec x(m.cols(), Scalar(0));
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        x[e.pivots[k]] = e.rref(k, m.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    Echelon e = rref(m.hcat(Matrix::identity(m.field(), m.rows())));
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        if (e.pivots[k] != k)
            return std::nullopt;
    if (e.rank != m.rows())
        return std::nullopt;
    return e.rref.submatrix(0, m.cols(), m.rows(), m.cols());
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace Subspace::zero(Field f, std::size_t ambient)
{
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(f, 0, ambient);
    return s;
}

Subspace Subspace::full(Field f, std::size_t ambient)
{
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix::identity(f, ambient);
    for (std::size_t i = 0; i < ambient; ++i)
        s.pivots_.push_back(i);
    return s;
}

Subspace Subspace::from_spanning(Field f, std::size_t ambient, const std::vector<Vec>& vectors)
{
    return from_rows(Matrix::from_rows(f, vectors, ambient));
}

Subspace Subspace::from_rows(const Matrix& rows)
{
    Echelon e = rref(rows);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = e.rref.submatrix(0, 0, e.rank, rows.cols());
    s.pivots_ = e.pivots;
    return s;
}

Vec Subspace::reduce(const Vec& v) const
{
    Vec r = v;
    const Field& F = field();
    for (std::size_t k = 0; k < basis_.rows(); ++k) {
        const Scalar c = r[pivots_[k]];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (basis_(k, j) != 0)
                r[j] = F.sub(r[j], F.mul(c, basis_(k, j)));
    }
    return r;
}

bool Subspace::contains(const Vec& v) const
{
    Vec r = reduce(v);
    for (const auto& x : r)
        if (x != 0)
            return false;
    return true;
}

bool Subspace::contains(const Subspace& o) const
{
    for (std::size_t i = 0; i < o.basis_.rows(); ++i)
        if (!contains(o.basis_.row(i)))
            return false;
    return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const
{
    if (!contains(v))
        return std::nullopt;
    Vec c(basis_.rows());
    for (std::size_t k = 0; k < basis_.rows(); ++k)
        c[k] = v[pivots_[k]];
    return c;
}

Subspace Subspace::sum(const Subspace& o) const
{
    require(ambient_ == o.ambient_ && field() == o.field(), Errc::shape_mismatch,
            "subspace sum ambient mismatch");
    return from_rows(basis_.vcat(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const
{
    require(ambient_ == o.ambient_ && field() == o.field(), Errc::shape_mismatch,
            "subspace intersection ambient mismatch");
    // Zassenhaus: echelonize [[A A],[B 0]]; rows with zero left half carry
    // the intersection in their right half.
    Matrix top = basis_.hcat(basis_);
    Matrix bot = o.basis_.hcat(Matrix::zero(field(), o.basis_.rows(), ambient_));
    Echelon e = rref(top.vcat(bot));
    std::vector<Vec> inter;
    for (std::size_t i = 0; i < e.rank; ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < ambient_ && left_zero; ++j)
            left_zero = e.rref(i, j) == 0;
        if (left_zero) {
            Vec v(ambient_);
            for (std::size_t j = 0; j < ambient_; ++j)
                v[j] = e.rref(i, ambient_ + j);
            inter.push_back(std::move(v));
        }
    }
    return from_spanning(field(), ambient_, inter);
}

Subspace image_space(const Matrix& m)
{
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        cols.push_back(m.col(j));
    return Subspace::from_spanning(m.field(), m.rows(), cols);
}

std::vector<std::size_t> quotient_coordinates(const Subspace& s)
{
    std::vector<bool> is_pivot(s.ambient_dim(), false);
    for (auto c : s.pivots())
        is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < s.ambient_dim(); ++j)
        if (!is_pivot[j])
            free.push_back(j);
    return free;
}

Vec quotient_reduce(const Subspace& s, const Vec& v)
{
    Vec r = s.reduce(v);
    std::vector<std::size_t> free = quotient_coordinates(s);
    Vec out(free.size());
    for (std::size_t k = 0; k < free.size(); ++k)
        out[k] = r[free[k]];
    return out;
}

Matrix induced_on_quotient(const Matrix& m, const Subspace& src, const Subspace& dst)
{
    require(src.ambient_dim() == m.cols() && dst.ambient_dim() == m.rows(), Errc::shape_mismatch,
            "induced_on_quotient: ambient dims do not match the matrix");
    for (std::size_t i = 0; i < src.dim(); ++i)
        require(dst.contains(m.apply(src.basis().row(i))), Errc::subspace_not_preserved,
                "matrix does not map the source subspace into the target subspace");
    std::vector<std::size_t> sfree = quotient_coordinates(src);
    std::vector<std::size_t> dfree = quotient_coordinates(dst);
    Matrix r(m.field(), dfree.size(), sfree.size());
    for (std::size_t k = 0; k < sfree.size(); ++k) {
        Vec e(m.cols(), Scalar(0));
        e[sfree[k]] = 1;
        Vec img = quotient_reduce(dst, m.apply(e));
        for (std::size_t i = 0; i < dfree.size(); ++i)
            r.set(i, k, img[i]);
    }
    return r;
}

} // namespace homcat
