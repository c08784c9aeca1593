#include "homcat/algebra.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace homcat {

FinDimAlgebra::FinDimAlgebra(Field f, std::size_t dim, Vec unit, std::vector<Scalar> mult,
                             bool check)
    : field_(f), dim_(dim), unit_(std::move(unit)), mult_(std::move(mult))
{
    require(unit_.size() == dim_, Errc::shape_mismatch, "algebra: unit length mismatch");
    require(mult_.size() == dim_ * dim_ * dim_, Errc::shape_mismatch,
            "algebra: structure tensor size mismatch");
    for (auto& x : unit_)
        x = field_.reduce(x);
    for (auto& x : mult_)
        x = field_.reduce(x);
    reg_.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Matrix L(field_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                L.set(k, j, this->mult(i, j, k));
        reg_.push_back(std::move(L));
    }
    if (check)
        validate();
}

void FinDimAlgebra::validate() const
{
    // commutativity
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                require(mult(i, j, k) == mult(j, i, k), Errc::invalid_argument,
                        "algebra: structure constants are not commutative");
    // associativity on basis triples: L_i L_j = L of (e_i e_j)
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            Matrix lhs = reg_[i] * reg_[j];
            Matrix rhs(field_, dim_, dim_);
            for (std::size_t k = 0; k < dim_; ++k)
                if (mult(i, j, k) != 0)
                    rhs = rhs + reg_[k].scaled(mult(i, j, k));
            require(lhs == rhs, Errc::invalid_argument, "algebra: multiplication not associative");
        }
    // unit law
    Matrix u(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (unit_[i] != 0)
            u = u + reg_[i].scaled(unit_[i]);
    require(u.is_identity(), Errc::invalid_argument, "algebra: unit does not act as identity");
}

std::string FinDimAlgebra::key() const
{
    std::ostringstream os;
    os << field_.to_string() << ";" << dim_ << ";";
    for (const auto& x : unit_)
        os << x.get_str() << ",";
    os << ";";
    for (const auto& x : mult_)
        os << x.get_str() << ",";
    return os.str();
}

AlgebraPtr FinDimAlgebra::field_algebra(Field f)
{
    return std::make_shared<FinDimAlgebra>(f, 1, Vec{Scalar(1)}, std::vector<Scalar>{Scalar(1)});
}

AlgebraPtr FinDimAlgebra::dual_numbers(Field f)
{
    return truncated_polynomials(f, 2);
}

AlgebraPtr FinDimAlgebra::truncated_polynomials(Field f, std::size_t m)
{
    require(m >= 1, Errc::invalid_argument, "k[x]/(x^m) needs m >= 1");
    std::vector<Scalar> mult(m * m * m, Scalar(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i + j < m)
                mult[(i * m + j) * m + (i + j)] = 1;
    Vec unit(m, Scalar(0));
    unit[0] = 1;
    return std::make_shared<FinDimAlgebra>(f, m, std::move(unit), std::move(mult));
}

AlgebraPtr FinDimAlgebra::product_of_points(Field f, std::size_t n)
{
    require(n >= 1, Errc::invalid_argument, "product of points needs n >= 1");
    std::vector<Scalar> mult(n * n * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
        mult[(i * n + i) * n + i] = 1;
    Vec unit(n, Scalar(1));
    return std::make_shared<FinDimAlgebra>(f, n, std::move(unit), std::move(mult));
}

AlgebraPtr FinDimAlgebra::by_name(Field f, const std::string& name, std::size_t param)
{
    if (name == "field")
        return field_algebra(f);
    if (name == "dual_numbers")
        return dual_numbers(f);
    if (name == "k[x]/(x^m)")
        return truncated_polynomials(f, param);
    if (name == "product of points" || name == "product_of_points")
        return product_of_points(f, param);
    fail(Errc::schema_error, "unknown builtin algebra '" + name + "'");
}

AModule::AModule(AlgebraPtr alg, std::size_t dim, std::vector<Matrix> action, bool check)
    : alg_(std::move(alg)), dim_(dim), action_(std::move(action))
{
    require(action_.size() == alg_->dim(), Errc::shape_mismatch,
            "module: one action matrix per algebra basis element");
    for (const auto& a : action_)
        require(a.rows() == dim_ && a.cols() == dim_ && a.field() == alg_->field(),
                Errc::shape_mismatch, "module: action matrix shape mismatch");
    if (check)
        validate();
}

void AModule::validate() const
{
    const Field& F = field();
    const std::size_t n = alg_->dim();
    // respects multiplication
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix lhs = action_[i] * action_[j];
            Matrix rhs(F, dim_, dim_);
            for (std::size_t k = 0; k < n; ++k)
                if (alg_->mult(i, j, k) != 0)
                    rhs = rhs + action_[k].scaled(alg_->mult(i, j, k));
            require(lhs == rhs, Errc::not_a_morphism, "module action does not respect mult");
        }
    require(act(alg_->unit()).is_identity(), Errc::not_a_morphism,
            "module: unit does not act as identity");
}

Matrix AModule::act(const Vec& a) const
{
    require(a.size() == alg_->dim(), Errc::shape_mismatch, "act: bad algebra element");
    Matrix r(field(), dim_, dim_);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            r = r + action_[i].scaled(a[i]);
    return r;
}

AModule AModule::free_module(AlgebraPtr alg, std::size_t rank)
{
    const Field F = alg->field();
    const std::size_t n = alg->dim();
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < n; ++i)
        action.push_back(kron(Matrix::identity(F, rank), alg->left_mult(i)));
    return AModule(std::move(alg), rank * n, std::move(action), false);
}

AModule AModule::zero_module(AlgebraPtr alg)
{
    const Field F = alg->field();
    std::vector<Matrix> action(alg->dim(), Matrix::zero(F, 0, 0));
    return AModule(std::move(alg), 0, std::move(action), false);
}

AModule AModule::direct_sum(const AModule& a, const AModule& b)
{
    require(a.alg_->key() == b.alg_->key(), Errc::invalid_argument,
            "direct sum over different algebras");
    const Field& F = a.field();
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < a.alg_->dim(); ++i) {
        BlockBuilder bb(F, {a.dim_, b.dim_}, {a.dim_, b.dim_});
        bb.place(0, 0, a.action(i));
        bb.place(1, 1, b.action(i));
        action.push_back(bb.result());
    }
    return AModule(a.alg_, a.dim_ + b.dim_, std::move(action), false);
}

bool AModule::same_as(const AModule& o) const
{
    if (dim_ != o.dim_ || alg_->key() != o.alg_->key())
        return false;
    for (std::size_t i = 0; i < action_.size(); ++i)
        if (action_[i] != o.action_[i])
            return false;
    return true;
}

std::string AModule::key() const
{
    std::ostringstream os;
    os << alg_->key() << "|" << dim_ << "|";
    for (const auto& a : action_)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                os << a(i, j).get_str() << ",";
    return os.str();
}

void ModuleMap::validate() const
{
    require(src.algebra()->key() == dst.algebra()->key(), Errc::invalid_argument,
            "module map: different algebras");
    require(mat.rows() == dst.dim() && mat.cols() == src.dim(), Errc::shape_mismatch,
            "module map: matrix shape mismatch");
    require(is_equivariant(), Errc::not_a_morphism, "module map is not equivariant");
}

bool ModuleMap::is_equivariant() const
{
    for (std::size_t i = 0; i < src.algebra()->dim(); ++i)
        if (mat * src.action(i) != dst.action(i) * mat)
            return false;
    return true;
}

ModuleMap ModuleMap::make(const AModule& src, const AModule& dst, Matrix m, bool check)
{
    ModuleMap r{src, dst, std::move(m)};
    if (check)
        r.validate();
    return r;
}

ModuleMap ModuleMap::identity(const AModule& m)
{
    return make(m, m, Matrix::identity(m.field(), m.dim()), false);
}

ModuleMap ModuleMap::zero(const AModule& src, const AModule& dst)
{
    return make(src, dst, Matrix::zero(src.field(), dst.dim(), src.dim()), false);
}

ModuleMap ModuleMap::compose_after(const ModuleMap& first) const
{
    return make(first.src, dst, mat * first.mat, false);
}

Subspace ModuleMap::kernel() const
{
    return kernel_basis(mat);
}

Subspace ModuleMap::image() const
{
    return image_space(mat);
}

HomSpace hom_space(const AModule& f, const AModule& g)
{
    const Field& F = f.field();
    const std::size_t nf = f.dim(), ng = g.dim();
    const std::size_t na = f.algebra()->dim();
    // unknown M: ng x nf, col-major vec; act_g(a) M - M act_f(a) = 0
    Matrix sys(F, na * nf * ng, nf * ng);
    std::size_t row0 = 0;
    for (std::size_t a = 0; a < na; ++a) {
        Matrix blk = kron(Matrix::identity(F, nf), g.action(a)) -
                     kron(f.action(a).transpose(), Matrix::identity(F, ng));
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j)
                if (blk(i, j) != 0)
                    sys.set(row0 + i, j, blk(i, j));
        row0 += nf * ng;
    }
    Subspace sol = kernel_basis(sys);
    HomSpace h;
    h.dim = sol.dim();
    for (std::size_t r = 0; r < sol.dim(); ++r) {
        Vec v = sol.basis().row(r);
        Matrix m(F, ng, nf);
        for (std::size_t j = 0; j < nf; ++j)
            for (std::size_t i = 0; i < ng; ++i)
                m.set(i, j, v[j * ng + i]);
        h.basis.push_back(std::move(m));
    }
    return h;
}

Subspace module_closure(const AModule& m, const std::vector<Vec>& gens)
{
    std::vector<Vec> span;
    for (const auto& g : gens)
        for (std::size_t a = 0; a < m.algebra()->dim(); ++a)
            span.push_back(m.action(a).apply(g));
    return Subspace::from_spanning(m.field(), m.dim(), span);
}

std::vector<Vec> canonical_generators(const AModule& m, const Subspace& closed)
{
    std::vector<Vec> gens;
    Subspace have = Subspace::zero(m.field(), m.dim());
    for (std::size_t r = 0; r < closed.dim(); ++r) {
        Vec v = closed.basis().row(r);
        if (have.contains(v))
            continue;
        gens.push_back(v);
        have = have.sum(module_closure(m, {v}));
        if (have.dim() == closed.dim())
            break;
    }
    return gens;
}

SubmoduleData submodule(const AModule& m, const Subspace& s)
{
    const Field& F = m.field();
    // action closure check
    for (std::size_t a = 0; a < m.algebra()->dim(); ++a)
        for (std::size_t r = 0; r < s.dim(); ++r)
            require(s.contains(m.action(a).apply(s.basis().row(r))), Errc::invalid_argument,
                    "submodule: subspace is not action-closed");
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < m.algebra()->dim(); ++a) {
        Matrix r(F, s.dim(), s.dim());
        for (std::size_t k = 0; k < s.dim(); ++k) {
            Vec img = m.action(a).apply(s.basis().row(k));
            Vec c = *s.coordinates(img);
            for (std::size_t i = 0; i < s.dim(); ++i)
                r.set(i, k, c[i]);
        }
        action.push_back(std::move(r));
    }
    AModule sub(m.algebra(), s.dim(), std::move(action), false);
    ModuleMap incl = ModuleMap::make(sub, m, s.basis().transpose(), false);
    return SubmoduleData{std::move(sub), std::move(incl), s};
}

QuotientData quotient_module_of(const AModule& m, const Subspace& s)
{
    const Field& F = m.field();
    Subspace zero_dst = Subspace::zero(F, m.dim());
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < m.algebra()->dim(); ++a)
        action.push_back(induced_on_quotient(m.action(a), s, s));
    std::vector<std::size_t> freec = quotient_coordinates(s);
    AModule quo(m.algebra(), freec.size(), std::move(action), false);
    // projection: v |-> class coordinates
    Matrix proj(F, freec.size(), m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) {
        Vec e(m.dim(), Scalar(0));
        e[j] = 1;
        Vec c = quotient_reduce(s, e);
        for (std::size_t i = 0; i < freec.size(); ++i)
            proj.set(i, j, c[i]);
    }
    ModuleMap pm = ModuleMap::make(m, quo, std::move(proj), false);
    return QuotientData{std::move(quo), std::move(pm), s};
}

std::optional<ModuleMap> free_structure(const AModule& m)
{
    const std::size_t na = m.algebra()->dim();
    if (m.dim() % na != 0)
        return std::nullopt;
    std::vector<Vec> gens = canonical_generators(m, Subspace::full(m.field(), m.dim()));
    if (gens.size() * na != m.dim())
        return std::nullopt;
    AModule fr = AModule::free_module(m.algebra(), gens.size());
    Matrix cover(m.field(), m.dim(), fr.dim());
    for (std::size_t t = 0; t < gens.size(); ++t)
        for (std::size_t a = 0; a < na; ++a) {
            Vec col = m.action(a).apply(gens[t]);
            for (std::size_t i = 0; i < m.dim(); ++i)
                cover.set(i, t * na + a, col[i]);
        }
    if (rank(cover) != m.dim())
        return std::nullopt;
    return ModuleMap::make(fr, m, std::move(cover), false);
}

AModule FreeResolution::term(std::size_t i) const
{
    return AModule::free_module(module.algebra(), ranks[i]);
}

bool FreeResolution::exact_through(std::size_t stages) const
{
    // im d_1 = ker aug, im d_{i+1} = ker d_i
    if (stages >= 1 && ranks.size() >= 2) {
        if (!(image_space(diffs[0]) == kernel_basis(aug)))
            return false;
    }
    for (std::size_t i = 1; i < stages && i + 1 < ranks.size(); ++i)
        if (!(image_space(diffs[i]) == kernel_basis(diffs[i - 1])))
            return false;
    return true;
}

namespace {

// classwide memo of deterministic resolutions, extended on demand
std::mutex res_mutex;
std::unordered_map<std::string, FreeResolution> res_memo;

FreeResolution compute_resolution(const AModule& m, std::size_t length,
                                  const FreeResolution* seed)
{
    const Field& F = m.field();
    const AlgebraPtr& A = m.algebra();
    const std::size_t na = A->dim();
    FreeResolution res;
    if (seed) {
        res = *seed;
    } else {
        res.module = m;
        std::vector<Vec> gens = canonical_generators(m, Subspace::full(F, m.dim()));
        res.ranks.push_back(gens.size());
        Matrix aug(F, m.dim(), gens.size() * na);
        for (std::size_t t = 0; t < gens.size(); ++t)
            for (std::size_t a = 0; a < na; ++a) {
                Vec col = m.action(a).apply(gens[t]);
                for (std::size_t i = 0; i < m.dim(); ++i)
                    aug.set(i, t * na + a, col[i]);
            }
        res.aug = std::move(aug);
    }
    while (res.length() < length) {
        const std::size_t i = res.length();
        const Matrix& prev = (i == 0) ? res.aug : res.diffs[i - 1];
        AModule term = res.term(i);
        Subspace ker = kernel_basis(prev);
        std::vector<Vec> gens = canonical_generators(term, ker);
        res.ranks.push_back(gens.size());
        Matrix d(F, term.dim(), gens.size() * na);
        for (std::size_t t = 0; t < gens.size(); ++t)
            for (std::size_t a = 0; a < na; ++a) {
                Vec col = term.action(a).apply(gens[t]);
                for (std::size_t r = 0; r < term.dim(); ++r)
                    d.set(r, t * na + a, col[r]);
            }
        res.diffs.push_back(std::move(d));
    }
    return res;
}

} // namespace

FreeResolution free_resolution(const AModule& m, std::size_t length)
{
    std::lock_guard<std::mutex> lock(res_mutex);
    const std::string key = m.key();
    auto it = res_memo.find(key);
    if (it == res_memo.end()) {
        FreeResolution r = compute_resolution(m, length, nullptr);
        it = res_memo.emplace(key, std::move(r)).first;
    } else if (it->second.length() < length) {
        it->second = compute_resolution(m, length, &it->second);
    }
    FreeResolution out = it->second;
    // hand back exactly the requested truncation
    if (out.length() > length) {
        out.ranks.resize(length + 1);
        out.diffs.resize(length);
    }
    return out;
}

CochainComplex ext_cochain_complex(const FreeResolution& res, const AModule& g, std::size_t up_to)
{
    require(up_to <= res.length(), Errc::truncation_too_short,
            "ext complex: resolution shorter than requested degree");
    const Field& F = g.field();
    const std::size_t na = g.algebra()->dim();
    std::vector<std::size_t> dims;
    for (std::size_t q = 0; q <= up_to; ++q)
        dims.push_back(res.ranks[q] * g.dim());
    std::vector<Matrix> diffs;
    for (std::size_t q = 0; q + 1 <= up_to; ++q) {
        // delta(s) = s o d_{q+1}, in generator-evaluation coordinates
        const Matrix& d = res.diffs[q];
        Matrix delta(F, res.ranks[q + 1] * g.dim(), res.ranks[q] * g.dim());
        for (std::size_t u = 0; u < res.ranks[q + 1]; ++u) {
            // d(eps_u) expanded over the (t, a) basis of A^{s_q}
            Vec eps(res.ranks[q + 1] * na, Scalar(0));
            const Vec& unit = g.algebra()->unit();
            for (std::size_t a = 0; a < na; ++a)
                eps[u * na + a] = unit[a];
            Vec img = d.apply(eps);
            for (std::size_t t = 0; t < res.ranks[q]; ++t)
                for (std::size_t a = 0; a < na; ++a) {
                    const Scalar& c = img[t * na + a];
                    if (c == 0)
                        continue;
                    const Matrix& act = g.action(a);
                    for (std::size_t i = 0; i < g.dim(); ++i)
                        for (std::size_t j = 0; j < g.dim(); ++j)
                            if (act(i, j) != 0)
                                delta.set(u * g.dim() + i, t * g.dim() + j,
                                          delta(u * g.dim() + i, t * g.dim() + j) + c * act(i, j));
                }
        }
        diffs.push_back(std::move(delta));
    }
    return CochainComplex(F, 0, std::move(dims), std::move(diffs));
}

Matrix hom_from_generator_values(const FreeResolution& res, std::size_t q, const AModule& g,
                                 const Vec& vals)
{
    const Field& F = g.field();
    const std::size_t na = g.algebra()->dim();
    require(vals.size() == res.ranks[q] * g.dim(), Errc::shape_mismatch,
            "generator values length mismatch");
    Matrix m(F, g.dim(), res.ranks[q] * na);
    for (std::size_t t = 0; t < res.ranks[q]; ++t) {
        Vec v(vals.begin() + static_cast<std::ptrdiff_t>(t * g.dim()),
              vals.begin() + static_cast<std::ptrdiff_t>((t + 1) * g.dim()));
        for (std::size_t a = 0; a < na; ++a) {
            Vec col = g.action(a).apply(v);
            for (std::size_t i = 0; i < g.dim(); ++i)
                m.set(i, t * na + a, col[i]);
        }
    }
    return m;
}

ExtGroup ext_group(const AModule& f, const AModule& g, std::size_t k, std::size_t length)
{
    require(k + 1 <= length, Errc::truncation_too_short,
            "ext_group: need k <= length - 1 for a truncation-stable answer");
    FreeResolution res = free_resolution(f, length);
    CochainComplex cx = ext_cochain_complex(res, g, length);
    Cohomology h = cx.cohomology(static_cast<int>(k));
    return ExtGroup{h.dim, h.reps};
}

ExtClass ExtClass::zero(const AModule& f, const AModule& g, std::size_t k)
{
    FreeResolution res = free_resolution(f, k + 1);
    return ExtClass{f, g, k, Vec(res.ranks[k] * g.dim(), Scalar(0))};
}

ExtClass ExtClass::identity(const AModule& f)
{
    FreeResolution res = free_resolution(f, 1);
    Vec vals(res.ranks[0] * f.dim(), Scalar(0));
    // values of the augmentation at the generators
    const std::size_t na = f.algebra()->dim();
    const Vec& unit = f.algebra()->unit();
    for (std::size_t t = 0; t < res.ranks[0]; ++t) {
        Vec eps(res.ranks[0] * na, Scalar(0));
        for (std::size_t a = 0; a < na; ++a)
            eps[t * na + a] = unit[a];
        Vec img = res.aug.apply(eps);
        for (std::size_t i = 0; i < f.dim(); ++i)
            vals[t * f.dim() + i] = img[i];
    }
    return ExtClass{f, f, 0, std::move(vals)};
}

ExtClass ExtClass::of_map(const ModuleMap& m)
{
    ExtClass id = identity(m.src);
    FreeResolution res = free_resolution(m.src, 1);
    Vec vals(res.ranks[0] * m.dst.dim(), Scalar(0));
    for (std::size_t t = 0; t < res.ranks[0]; ++t) {
        Vec v(id.cocycle.begin() + static_cast<std::ptrdiff_t>(t * m.src.dim()),
              id.cocycle.begin() + static_cast<std::ptrdiff_t>((t + 1) * m.src.dim()));
        Vec img = m.mat.apply(v);
        for (std::size_t i = 0; i < m.dst.dim(); ++i)
            vals[t * m.dst.dim() + i] = img[i];
    }
    return ExtClass{m.src, m.dst, 0, std::move(vals)};
}

namespace {

std::size_t default_length(const ExtClass& a, std::size_t length)
{
    return length ? length : a.k + 1;
}

} // namespace

bool ext_class_is_zero(const ExtClass& a, std::size_t length)
{
    const std::size_t L = default_length(a, length);
    FreeResolution res = free_resolution(a.f, L);
    CochainComplex cx = ext_cochain_complex(res, a.g, L);
    Vec coords = cx.class_coordinates(static_cast<int>(a.k), a.cocycle);
    for (const auto& c : coords)
        if (c != 0)
            return false;
    return true;
}

bool ext_classes_equal(const ExtClass& a, const ExtClass& b, std::size_t length)
{
    require(a.k == b.k && a.f.same_as(b.f) && a.g.same_as(b.g), Errc::invalid_argument,
            "ext class comparison across different groups");
    ExtClass diff = a;
    const Field& F = a.f.field();
    for (std::size_t i = 0; i < diff.cocycle.size(); ++i)
        diff.cocycle[i] = F.sub(diff.cocycle[i], b.cocycle[i]);
    return ext_class_is_zero(diff, length);
}

ExtClass ext_class_add(const ExtClass& a, const ExtClass& b)
{
    require(a.k == b.k && a.f.same_as(b.f) && a.g.same_as(b.g), Errc::invalid_argument,
            "ext class sum across different groups");
    ExtClass r = a;
    const Field& F = a.f.field();
    for (std::size_t i = 0; i < r.cocycle.size(); ++i)
        r.cocycle[i] = F.add(r.cocycle[i], b.cocycle[i]);
    return r;
}

ExtClass ext_class_scale(const ExtClass& a, const Scalar& c)
{
    ExtClass r = a;
    const Field& F = a.f.field();
    for (auto& x : r.cocycle)
        x = F.mul(x, c);
    return r;
}

Vec ext_class_coordinates(const ExtClass& a, std::size_t length)
{
    const std::size_t L = default_length(a, length);
    FreeResolution res = free_resolution(a.f, L);
    CochainComplex cx = ext_cochain_complex(res, a.g, L);
    return cx.class_coordinates(static_cast<int>(a.k), a.cocycle);
}

Vec free_generator(const AlgebraPtr& alg, std::size_t s, std::size_t t)
{
    const std::size_t na = alg->dim();
    Vec eps(s * na, Scalar(0));
    for (std::size_t c = 0; c < na; ++c)
        eps[t * na + c] = alg->unit()[c];
    return eps;
}

Vec generator_values(const FreeResolution& res, std::size_t q, const AModule& m,
                     const Matrix& full)
{
    Vec vals(res.ranks[q] * m.dim());
    for (std::size_t t = 0; t < res.ranks[q]; ++t) {
        Vec img = full.apply(free_generator(res.module.algebra(), res.ranks[q], t));
        for (std::size_t i = 0; i < m.dim(); ++i)
            vals[t * m.dim() + i] = img[i];
    }
    return vals;
}

namespace {

// solve target o x = rhs generatorwise and assemble the module map
Matrix lift_through(const FreeResolution& res, std::size_t q, const AModule& target_module,
                    const Matrix& target, const Matrix& rhs, const char* what)
{
    Vec flat;
    for (std::size_t u = 0; u < res.ranks[q]; ++u) {
        auto w = solve(target, rhs.apply(free_generator(res.module.algebra(), res.ranks[q], u)));
        require(w.has_value(), Errc::internal, std::string(what) + ": lift failed");
        flat.insert(flat.end(), w->begin(), w->end());
    }
    return hom_from_generator_values(res, q, target_module, flat);
}

} // namespace

ExtClass yoneda_product(const ExtClass& a, const ExtClass& b)
{
    require(a.g.same_as(b.f), Errc::endpoint_mismatch,
            "yoneda product: middle modules do not match");
    const std::size_t m = a.k, n = b.k;
    FreeResolution resF = free_resolution(a.f, m + n + 1);
    FreeResolution resG = free_resolution(a.g, n + 1);

    // chain-map lift phi_i : P_{m+i}(F) -> P_i(G) of a's cocycle
    std::vector<Matrix> phi;
    Matrix acoc = hom_from_generator_values(resF, m, a.g, a.cocycle);
    phi.push_back(lift_through(resF, m, resG.term(0), resG.aug, acoc, "yoneda phi_0"));
    for (std::size_t i = 1; i <= n; ++i) {
        Matrix rhs = phi[i - 1] * resF.diffs[m + i - 1];
        phi.push_back(
            lift_through(resF, m + i, resG.term(i), resG.diffs[i - 1], rhs, "yoneda phi_i"));
    }
    Matrix bcoc = hom_from_generator_values(resG, n, b.g, b.cocycle);
    Vec vals = generator_values(resF, m + n, b.g, bcoc * phi[n]);
    return ExtClass{a.f, b.g, m + n, std::move(vals)};
}

std::vector<Matrix> lift_identity(const FreeResolution& to, const FreeResolution& from,
                                  std::size_t up_to)
{
    require(to.module.same_as(from.module), Errc::invalid_argument,
            "lift_identity: resolutions of different modules");
    std::vector<Matrix> lam;
    for (std::size_t q = 0; q <= up_to; ++q) {
        const Matrix& target = (q == 0) ? to.aug : to.diffs[q - 1];
        Matrix rhs = (q == 0) ? from.aug : (lam[q - 1] * from.diffs[q - 1]);
        lam.push_back(lift_through(from, q, to.term(q), target, rhs, "lift_identity"));
    }
    return lam;
}

} // namespace homcat
