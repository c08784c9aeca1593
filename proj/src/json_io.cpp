#include "homcat/json_io.hpp"

#include <set>

namespace homcat {

void expect_keys(const json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional)
{
    require(j.is_object(), Errc::schema_error, "expected a JSON object");
    std::set<std::string> allowed(required.begin(), required.end());
    allowed.insert(optional.begin(), optional.end());
    for (const auto& [k, v] : j.items()) {
        (void)v;
        require(allowed.count(k) > 0, Errc::schema_error, "unknown field '" + k + "'");
    }
    for (const auto& k : required)
        require(j.contains(k), Errc::schema_error, "missing field '" + k + "'");
}

Field field_from_json(const json& j)
{
    if (j.is_string()) {
        require(j.get<std::string>() == "Q", Errc::schema_error,
                "field must be \"Q\" or {\"Fp\": p}");
        return Field::rationals();
    }
    expect_keys(j, {"Fp"});
    require(j["Fp"].is_number_unsigned(), Errc::schema_error, "Fp must be a positive integer");
    return Field::prime_field(j["Fp"].get<unsigned long>());
}

json field_to_json(const Field& f)
{
    if (f.is_rationals())
        return "Q";
    return json{{"Fp", f.characteristic()}};
}

Matrix matrix_from_json(const json& j)
{
    expect_keys(j, {"field", "rows", "cols", "entries"});
    Field f = field_from_json(j["field"]);
    std::size_t rows = j["rows"].get<std::size_t>();
    std::size_t cols = j["cols"].get<std::size_t>();
    require(j["entries"].is_array() && j["entries"].size() == rows * cols, Errc::schema_error,
            "entries must be a rows*cols array");
    std::vector<Scalar> e;
    for (const auto& s : j["entries"]) {
        require(s.is_string(), Errc::schema_error, "matrix entries are strings");
        e.push_back(f.from_string(s.get<std::string>()));
    }
    return Matrix(f, rows, cols, std::move(e));
}

json matrix_to_json(const Matrix& m)
{
    json e = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j2 = 0; j2 < m.cols(); ++j2)
            e.push_back(m(i, j2).get_str());
    return json{{"field", field_to_json(m.field())},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", std::move(e)}};
}

Vec vec_from_json(const Field& f, const json& j)
{
    require(j.is_array(), Errc::schema_error, "vector must be an array of strings");
    Vec v;
    for (const auto& s : j)
        v.push_back(f.from_string(s.get<std::string>()));
    return v;
}

json vec_to_json(const Vec& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(x.get_str());
    return out;
}

CochainComplex complex_from_json(const json& j)
{
    expect_keys(j, {"field", "lo", "hi", "dims", "differentials"});
    Field f = field_from_json(j["field"]);
    int lo = j["lo"].get<int>();
    int hi = j["hi"].get<int>();
    std::vector<std::size_t> dims = j["dims"].get<std::vector<std::size_t>>();
    require(static_cast<int>(dims.size()) == hi - lo + 1, Errc::schema_error,
            "dims must cover [lo, hi]");
    std::vector<Matrix> diffs;
    for (const auto& m : j["differentials"])
        diffs.push_back(matrix_from_json(m));
    return CochainComplex(f, lo, std::move(dims), std::move(diffs));
}

json complex_to_json(const CochainComplex& c)
{
    json dims = json::array(), diffs = json::array();
    for (int n = c.lo(); n <= c.hi(); ++n)
        dims.push_back(c.dim(n));
    for (int n = c.lo(); n < c.hi(); ++n)
        diffs.push_back(matrix_to_json(c.d(n)));
    return json{{"field", field_to_json(c.field())},
                {"lo", c.lo()},
                {"hi", c.hi()},
                {"dims", std::move(dims)},
                {"differentials", std::move(diffs)}};
}

ChainMap chain_map_from_json(const json& j)
{
    expect_keys(j, {"src", "dst", "lo", "components"});
    CochainComplex src = complex_from_json(j["src"]);
    CochainComplex dst = complex_from_json(j["dst"]);
    std::vector<Matrix> comps;
    for (const auto& m : j["components"])
        comps.push_back(matrix_from_json(m));
    return ChainMap::make(src, dst, j["lo"].get<int>(), std::move(comps));
}

json chain_map_to_json(const ChainMap& f)
{
    json comps = json::array();
    for (const auto& m : f.comps)
        comps.push_back(matrix_to_json(m));
    return json{{"src", complex_to_json(f.src)},
                {"dst", complex_to_json(f.dst)},
                {"lo", f.lo},
                {"components", std::move(comps)}};
}

AlgebraPtr algebra_from_json(const json& j)
{
    if (j.contains("builtin")) {
        expect_keys(j, {"builtin", "field"}, {"param"});
        Field f = field_from_json(j["field"]);
        std::size_t param = j.value("param", 0);
        return FinDimAlgebra::by_name(f, j["builtin"].get<std::string>(), param);
    }
    expect_keys(j, {"field", "dim", "unit", "mult"});
    Field f = field_from_json(j["field"]);
    std::size_t dim = j["dim"].get<std::size_t>();
    Vec unit = vec_from_json(f, j["unit"]);
    std::vector<Scalar> mult;
    for (const auto& s : j["mult"])
        mult.push_back(f.from_string(s.get<std::string>()));
    return std::make_shared<FinDimAlgebra>(f, dim, std::move(unit), std::move(mult));
}

json algebra_to_json(const FinDimAlgebra& a)
{
    json mult = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j2 = 0; j2 < a.dim(); ++j2)
            for (std::size_t k = 0; k < a.dim(); ++k)
                mult.push_back(a.mult(i, j2, k).get_str());
    return json{{"field", field_to_json(a.field())},
                {"dim", a.dim()},
                {"unit", vec_to_json(a.unit())},
                {"mult", std::move(mult)}};
}

AModule module_from_json(const json& j, const AlgebraPtr& alg)
{
    if (j.contains("free")) {
        expect_keys(j, {"free"});
        return AModule::free_module(alg, j["free"].get<std::size_t>());
    }
    expect_keys(j, {"dim", "action"});
    std::vector<Matrix> action;
    for (const auto& m : j["action"])
        action.push_back(matrix_from_json(m));
    return AModule(alg, j["dim"].get<std::size_t>(), std::move(action));
}

json module_to_json(const AModule& m)
{
    json action = json::array();
    for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
        action.push_back(matrix_to_json(m.action(i)));
    return json{{"dim", m.dim()}, {"action", std::move(action)}};
}

SeparatedSequence sequence_from_json(const json& j)
{
    expect_keys(j, {"n", "polys"}, {"field"});
    Field f = j.contains("field") ? field_from_json(j["field"]) : Field::rationals();
    SeparatedSequence s{f, {}};
    for (const auto& p : j["polys"]) {
        Poly poly;
        for (const auto& c : p)
            poly.push_back(c.is_string() ? f.from_string(c.get<std::string>())
                                         : f.reduce(Scalar(c.get<long>())));
        s.polys.push_back(std::move(poly));
    }
    require(s.polys.size() == j["n"].get<std::size_t>(), Errc::schema_error,
            "polys length must equal n");
    s.validate();
    return s;
}

json sequence_to_json(const SeparatedSequence& s)
{
    json polys = json::array();
    for (const auto& p : s.polys)
        polys.push_back(vec_to_json(p));
    return json{{"field", field_to_json(s.field)}, {"n", s.n()}, {"polys", std::move(polys)}};
}

EvalModule eval_module_from_json(const json& j)
{
    expect_keys(j, {"dim", "var_actions"}, {"field"});
    Field f = j.contains("field") ? field_from_json(j["field"]) : Field::rationals();
    EvalModule m;
    m.field = f;
    m.dim = j["dim"].get<std::size_t>();
    for (const auto& x : j["var_actions"])
        m.var_actions.push_back(matrix_from_json(x));
    m.validate();
    return m;
}

Nerve nerve_from_json(const json& j)
{
    expect_keys(j, {"vertices", "faces"});
    std::vector<std::vector<int>> faces;
    for (const auto& f : j["faces"])
        faces.push_back(f.get<std::vector<int>>());
    return Nerve::closure(j["vertices"].get<std::size_t>(), std::move(faces));
}

json nerve_to_json(const Nerve& n)
{
    json faces = json::array();
    for (const auto& f : n.faces)
        faces.push_back(f);
    return json{{"vertices", n.vertex_count}, {"faces", std::move(faces)}};
}

NervePresheaf presheaf_from_json(const json& j)
{
    expect_keys(j, {"nerve", "field", "dims", "restrictions"});
    NervePresheaf p;
    p.nerve = nerve_from_json(j["nerve"]);
    p.field = field_from_json(j["field"]);
    p.dims.assign(p.nerve.faces.size(), 0);
    for (const auto& d : j["dims"]) {
        expect_keys(d, {"face", "dim"});
        long id = p.nerve.face_index(d["face"].get<std::vector<int>>());
        require(id >= 0, Errc::schema_error, "dims: unknown face");
        p.dims[static_cast<std::size_t>(id)] = d["dim"].get<std::size_t>();
    }
    for (const auto& r : j["restrictions"]) {
        expect_keys(r, {"from", "to", "matrix"});
        long a = p.nerve.face_index(r["from"].get<std::vector<int>>());
        long b = p.nerve.face_index(r["to"].get<std::vector<int>>());
        require(a >= 0 && b >= 0, Errc::schema_error, "restriction: unknown face");
        p.restr.emplace(std::make_pair(static_cast<std::size_t>(a), static_cast<std::size_t>(b)),
                        matrix_from_json(r["matrix"]));
    }
    p.validate();
    return p;
}

json presheaf_to_json(const NervePresheaf& p)
{
    json dims = json::array(), restr = json::array();
    for (std::size_t i = 0; i < p.nerve.faces.size(); ++i)
        dims.push_back(json{{"face", p.nerve.faces[i]}, {"dim", p.dims[i]}});
    for (const auto& [k, m] : p.restr)
        restr.push_back(json{{"from", p.nerve.faces[k.first]},
                             {"to", p.nerve.faces[k.second]},
                             {"matrix", matrix_to_json(m)}});
    return json{{"nerve", nerve_to_json(p.nerve)},
                {"field", field_to_json(p.field)},
                {"dims", std::move(dims)},
                {"restrictions", std::move(restr)}};
}

ComplexPresheaf complex_presheaf_from_json(const json& j)
{
    expect_keys(j, {"nerve", "field", "complexes", "restrictions"});
    ComplexPresheaf cp;
    cp.nerve = nerve_from_json(j["nerve"]);
    cp.field = field_from_json(j["field"]);
    cp.cx.assign(cp.nerve.faces.size(), CochainComplex::zero(cp.field));
    for (const auto& c : j["complexes"]) {
        expect_keys(c, {"face", "complex"});
        long id = cp.nerve.face_index(c["face"].get<std::vector<int>>());
        require(id >= 0, Errc::schema_error, "complexes: unknown face");
        cp.cx[static_cast<std::size_t>(id)] = complex_from_json(c["complex"]);
    }
    for (const auto& r : j["restrictions"]) {
        expect_keys(r, {"from", "to", "components"});
        long a = cp.nerve.face_index(r["from"].get<std::vector<int>>());
        long b = cp.nerve.face_index(r["to"].get<std::vector<int>>());
        require(a >= 0 && b >= 0, Errc::schema_error, "restrictions: unknown face");
        std::vector<Matrix> comps;
        for (const auto& m : r["components"])
            comps.push_back(matrix_from_json(m));
        cp.restr.emplace(
            std::make_pair(static_cast<std::size_t>(a), static_cast<std::size_t>(b)),
            std::move(comps));
    }
    cp.validate();
    return cp;
}

DoubleComplex double_complex_from_json(const json& j)
{
    expect_keys(j, {"field", "p_lo", "q_lo", "dims", "d_h", "d_v"});
    Field f = field_from_json(j["field"]);
    std::vector<std::vector<std::size_t>> dims =
        j["dims"].get<std::vector<std::vector<std::size_t>>>();
    std::vector<std::vector<Matrix>> dh, dv;
    for (const auto& row : j["d_h"]) {
        std::vector<Matrix> r;
        for (const auto& m : row)
            r.push_back(matrix_from_json(m));
        dh.push_back(std::move(r));
    }
    for (const auto& row : j["d_v"]) {
        std::vector<Matrix> r;
        for (const auto& m : row)
            r.push_back(matrix_from_json(m));
        dv.push_back(std::move(r));
    }
    return DoubleComplex(f, j["p_lo"].get<int>(), j["q_lo"].get<int>(), std::move(dims),
                         std::move(dh), std::move(dv));
}

json double_complex_to_json(const DoubleComplex& dc)
{
    json dims = json::array(), dh = json::array(), dv = json::array();
    for (int p = dc.p_lo(); p <= dc.p_hi(); ++p) {
        json drow = json::array(), hrow = json::array(), vrow = json::array();
        for (int q = dc.q_lo(); q <= dc.q_hi(); ++q) {
            drow.push_back(dc.dim(p, q));
            hrow.push_back(matrix_to_json(dc.dh(p, q)));
            vrow.push_back(matrix_to_json(dc.dv(p, q)));
        }
        dims.push_back(std::move(drow));
        dh.push_back(std::move(hrow));
        dv.push_back(std::move(vrow));
    }
    return json{{"field", field_to_json(dc.field())}, {"p_lo", dc.p_lo()},
                {"q_lo", dc.q_lo()},                  {"dims", std::move(dims)},
                {"d_h", std::move(dh)},               {"d_v", std::move(dv)}};
}

Extension1 extension_from_json(const json& j, const AlgebraPtr& alg)
{
    expect_keys(j, {"sub", "mid", "quo", "inject", "project"});
    AModule sub = module_from_json(j["sub"], alg);
    AModule mid = module_from_json(j["mid"], alg);
    AModule quo = module_from_json(j["quo"], alg);
    ModuleMap inject = ModuleMap::make(sub, mid, matrix_from_json(j["inject"]));
    ModuleMap project = ModuleMap::make(mid, quo, matrix_from_json(j["project"]));
    Extension1 e{std::move(sub), std::move(mid), std::move(quo), std::move(inject),
                 std::move(project)};
    e.validate();
    return e;
}

json extension_to_json(const Extension1& e)
{
    return json{{"sub", module_to_json(e.sub)},
                {"mid", module_to_json(e.mid)},
                {"quo", module_to_json(e.quo)},
                {"inject", matrix_to_json(e.inject.mat)},
                {"project", matrix_to_json(e.project.mat)}};
}

std::string content_digest(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

} // namespace homcat
