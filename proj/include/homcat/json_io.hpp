#pragma once

#include <json.hpp>

#include "homcat/cech.hpp"
#include "homcat/correlation.hpp"
#include "homcat/koszul.hpp"
#include "homcat/spectral.hpp"
#include "homcat/strings.hpp"

namespace homcat {

using json = nlohmann::json;

// strict decoding: unknown keys are schema errors
void expect_keys(const json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional = {});

Field field_from_json(const json& j);
json field_to_json(const Field& f);

Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);

Vec vec_from_json(const Field& f, const json& j);
json vec_to_json(const Vec& v);

CochainComplex complex_from_json(const json& j);
json complex_to_json(const CochainComplex& c);

// {"src":complex, "dst":complex, "lo":n, "components":[matrix...]}
ChainMap chain_map_from_json(const json& j);
json chain_map_to_json(const ChainMap& f);

AlgebraPtr algebra_from_json(const json& j);
json algebra_to_json(const FinDimAlgebra& a);

AModule module_from_json(const json& j, const AlgebraPtr& alg);
json module_to_json(const AModule& m);

SeparatedSequence sequence_from_json(const json& j);
json sequence_to_json(const SeparatedSequence& s);

EvalModule eval_module_from_json(const json& j);

Nerve nerve_from_json(const json& j);
json nerve_to_json(const Nerve& n);

NervePresheaf presheaf_from_json(const json& j);
json presheaf_to_json(const NervePresheaf& p);

ComplexPresheaf complex_presheaf_from_json(const json& j);

DoubleComplex double_complex_from_json(const json& j);
json double_complex_to_json(const DoubleComplex& dc);

Extension1 extension_from_json(const json& j, const AlgebraPtr& alg);
json extension_to_json(const Extension1& e);

// 64-bit FNV-1a over raw bytes, rendered as fixed-width hex
std::string content_digest(const std::string& bytes);

} // namespace homcat
