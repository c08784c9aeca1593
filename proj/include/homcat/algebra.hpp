#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homcat/complex.hpp"

namespace homcat {

// Finite-dimensional commutative unital algebra given by structure constants:
// e_i e_j = sum_k mult[i][j][k] e_k.
class FinDimAlgebra {
public:
    FinDimAlgebra(Field f, std::size_t dim, Vec unit, std::vector<Scalar> mult, bool check = true);

    static std::shared_ptr<const FinDimAlgebra> field_algebra(Field f);
    static std::shared_ptr<const FinDimAlgebra> dual_numbers(Field f);
    static std::shared_ptr<const FinDimAlgebra> truncated_polynomials(Field f, std::size_t m);
    static std::shared_ptr<const FinDimAlgebra> product_of_points(Field f, std::size_t n);
    // "field" | "dual_numbers" | "k[x]/(x^m)" | "product of points"
    static std::shared_ptr<const FinDimAlgebra> by_name(Field f, const std::string& name,
                                                        std::size_t param);

    const Field& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Vec& unit() const { return unit_; }
    const Scalar& mult(std::size_t i, std::size_t j, std::size_t k) const
    {
        return mult_[(i * dim_ + j) * dim_ + k];
    }
    // regular representation of e_i
    const Matrix& left_mult(std::size_t i) const { return reg_[i]; }

    void validate() const; // commutativity, associativity, unit law

    std::string key() const; // canonical content string (memo key)

private:
    Field field_;
    std::size_t dim_;
    Vec unit_;
    std::vector<Scalar> mult_;
    std::vector<Matrix> reg_;
};

using AlgebraPtr = std::shared_ptr<const FinDimAlgebra>;

// Finite-dimensional module over a FinDimAlgebra: one action matrix per
// algebra basis element.
class AModule {
public:
    AModule() = default;
    AModule(AlgebraPtr alg, std::size_t dim, std::vector<Matrix> action, bool check = true);

    static AModule free_module(AlgebraPtr alg, std::size_t rank);
    static AModule zero_module(AlgebraPtr alg);
    static AModule direct_sum(const AModule& a, const AModule& b);

    const AlgebraPtr& algebra() const { return alg_; }
    const Field& field() const { return alg_->field(); }
    std::size_t dim() const { return dim_; }
    const Matrix& action(std::size_t i) const { return action_[i]; }
    Matrix act(const Vec& algebra_element) const;

    void validate() const; // respects mult and unit
    bool same_as(const AModule& o) const;
    std::string key() const;

private:
    AlgebraPtr alg_;
    std::size_t dim_ = 0;
    std::vector<Matrix> action_;
};

// Equivariant map of modules.
struct ModuleMap {
    AModule src, dst;
    Matrix mat;

    void validate() const; // NotAMorphism on equivariance failure
    bool is_equivariant() const;
    static ModuleMap make(const AModule& src, const AModule& dst, Matrix m, bool check = true);
    static ModuleMap identity(const AModule& m);
    static ModuleMap zero(const AModule& src, const AModule& dst);
    ModuleMap compose_after(const ModuleMap& first) const;
    Subspace kernel() const;
    Subspace image() const;
};

struct HomSpace {
    std::size_t dim = 0;
    std::vector<Matrix> basis;
};
// solves the equivariance system exactly; Ext^0
HomSpace hom_space(const AModule& f, const AModule& g);

// submodule spanned by vectors under the algebra action
Subspace module_closure(const AModule& m, const std::vector<Vec>& gens);
// greedy canonical generating set of an action-closed subspace
std::vector<Vec> canonical_generators(const AModule& m, const Subspace& closed);

struct SubmoduleData {
    AModule mod;
    ModuleMap incl;
    Subspace space;
};
SubmoduleData submodule(const AModule& m, const Subspace& action_closed);

struct QuotientData {
    AModule mod;
    ModuleMap proj;
    Subspace killed;
};
QuotientData quotient_module_of(const AModule& m, const Subspace& action_closed);

// nullopt when m is not free; otherwise an isomorphism A^r -> m
std::optional<ModuleMap> free_structure(const AModule& m);

// Truncated free resolution ... -> A^{s_1} -> A^{s_0} -> m -> 0,
// minimal-by-construction (greedy canonical generators at each stage).
struct FreeResolution {
    AModule module;
    std::vector<std::size_t> ranks; // s_0..s_L
    std::vector<Matrix> diffs;      // diffs[i-1] = d_i : A^{s_i} -> A^{s_{i-1}}
    Matrix aug;                     // A^{s_0} -> module
    std::size_t length() const { return ranks.empty() ? 0 : ranks.size() - 1; }
    AModule term(std::size_t i) const; // free module A^{s_i}
    bool exact_through(std::size_t stages) const;
};

// deterministic and memoized per module
FreeResolution free_resolution(const AModule& m, std::size_t length);

// the Hom_A(P_q, g) cochain complex in generator-evaluation coordinates
// (degree q has dimension s_q * dim g); differential is s |-> s o d.
CochainComplex ext_cochain_complex(const FreeResolution& res, const AModule& g,
                                   std::size_t up_to);

// full matrix of the module map P_q -> g with the given generator values
Matrix hom_from_generator_values(const FreeResolution& res, std::size_t q, const AModule& g,
                                 const Vec& gen_values);

// the flat coordinates of the t-th generator (t, unit) of A^s
Vec free_generator(const AlgebraPtr& alg, std::size_t s, std::size_t t);
// generator-value coordinates of a full module-map matrix A^{s_q} -> m
Vec generator_values(const FreeResolution& res, std::size_t q, const AModule& m,
                     const Matrix& full);

struct ExtGroup {
    std::size_t dim = 0;
    std::vector<Vec> cocycles; // canonical basis, generator-evaluation coords
};
ExtGroup ext_group(const AModule& f, const AModule& g, std::size_t k, std::size_t length);

// An Ext class carried by a cocycle over the memoized resolution of f.
struct ExtClass {
    AModule f, g;
    std::size_t k = 0;
    Vec cocycle;

    static ExtClass zero(const AModule& f, const AModule& g, std::size_t k);
    static ExtClass identity(const AModule& f); // [id] in Ext^0(f,f)
    static ExtClass of_map(const ModuleMap& m);  // Ext^0 class of a module map
};

bool ext_class_is_zero(const ExtClass& a, std::size_t length = 0);
bool ext_classes_equal(const ExtClass& a, const ExtClass& b, std::size_t length = 0);
ExtClass ext_class_add(const ExtClass& a, const ExtClass& b);
ExtClass ext_class_scale(const ExtClass& a, const Scalar& c);
// coordinates in the canonical ext_group basis
Vec ext_class_coordinates(const ExtClass& a, std::size_t length = 0);

// chain-map lift of a's cocycle through the resolutions, composed with b
ExtClass yoneda_product(const ExtClass& a, const ExtClass& b);

// lift of the identity between two resolutions of the same module:
// maps lam[q] : from.term(q) -> to.term(q) with to-aug o lam_0 = from-aug.
std::vector<Matrix> lift_identity(const FreeResolution& to, const FreeResolution& from,
                                  std::size_t up_to);

} // namespace homcat
