#include "homcat/cli_runner.hpp"

#include <sstream>

#include "homcat/homcx.hpp"
#include "homcat/verify.hpp"

namespace homcat {

namespace {

json cohomology_dims_json(const CochainComplex& c)
{
    json out = json::array();
    for (int n = c.lo(); n <= c.hi(); ++n)
        out.push_back(json{{"degree", n}, {"dim", c.cohomology(n).dim}});
    return out;
}

json cmd_cohomology(const json& p)
{
    expect_keys(p, {"complex"}, {"shift", "basis"});
    CochainComplex c = complex_from_json(p["complex"]);
    if (p.contains("shift"))
        c = shift(c, p["shift"].get<int>());
    json res{{"lo", c.lo()}, {"hi", c.hi()}, {"cohomology", cohomology_dims_json(c)}};
    if (p.value("basis", false)) {
        json basis = json::array();
        for (int n = c.lo(); n <= c.hi(); ++n) {
            json reps = json::array();
            for (const auto& r : c.cohomology(n).reps)
                reps.push_back(vec_to_json(r));
            basis.push_back(json{{"degree", n}, {"representatives", std::move(reps)}});
        }
        res["basis"] = std::move(basis);
    }
    return res;
}

json cmd_cone(const json& p)
{
    expect_keys(p, {"op"}, {"map", "ses", "maps"});
    const std::string op = p["op"].get<std::string>();
    if (op == "cone") {
        ChainMap f = chain_map_from_json(p.at("map"));
        CochainComplex con = cone(f);
        return json{{"cone", complex_to_json(con)}, {"cohomology", cohomology_dims_json(con)}};
    }
    if (op == "cylinder") {
        ChainMap f = chain_map_from_json(p.at("map"));
        CylinderData cd = cylinder(f);
        ShortExactSeq ses{cd.include_src, cd.project_cone};
        ses.validate();
        return json{{"cylinder", complex_to_json(cd.cyl)},
                    {"cohomology", cohomology_dims_json(cd.cyl)},
                    {"ses_exact", true}};
    }
    if (op == "connecting") {
        expect_keys(p.at("ses"), {"inc", "proj"});
        ShortExactSeq ses{chain_map_from_json(p.at("ses")["inc"]),
                          chain_map_from_json(p.at("ses")["proj"])};
        auto delta = connecting(ses);
        json maps = json::array();
        for (const auto& [n, m] : delta)
            if (m.rows() > 0 || m.cols() > 0)
                maps.push_back(json{{"degree", n}, {"matrix", matrix_to_json(m)}});
        LongExactSequence les = les_of_ses(ses);
        return json{{"connecting", std::move(maps)}, {"les_exact", les.exact}};
    }
    if (op == "exactness") {
        std::vector<Matrix> maps;
        for (const auto& m : p.at("maps"))
            maps.push_back(matrix_from_json(m));
        return json{{"exact", exactness_check(maps)}};
    }
    fail(Errc::schema_error, "cone: unknown op '" + op + "'");
}

json cmd_hom(const json& p)
{
    expect_keys(p, {"p"}, {"b", "map", "check_cone"});
    CochainComplex src = complex_from_json(p["p"]);
    json res;
    if (p.contains("map")) {
        ChainMap g = chain_map_from_json(p["map"]);
        ChainMap ghat = induced_hom_map(src, g);
        res["induced"] = chain_map_to_json(ghat);
        if (p.value("check_cone", false))
            res["cone_hom_commutes"] = cone_hom_commutes(src, g);
    } else {
        require(p.contains("b"), Errc::schema_error, "hom: need 'b' or 'map'");
        CochainComplex b = complex_from_json(p["b"]);
        HomComplex h = hom_complex(src, b);
        res["hom"] = complex_to_json(h.complex());
        res["cohomology"] = cohomology_dims_json(h.complex());
    }
    return res;
}

json cmd_koszul(const json& p)
{
    expect_keys(p, {"n", "polys"}, {"field", "module"});
    SeparatedSequence seq = sequence_from_json(
        json{{"n", p["n"]}, {"polys", p["polys"]},
             {"field", p.contains("field") ? p["field"] : json("Q")}});
    EvalModule m = p.contains("module") ? eval_module_from_json(p["module"])
                                        : quotient_module(seq);
    KoszulHomComplex k = koszul_hom(seq, m);
    json degrees = json::array();
    for (std::size_t d = 0; d <= seq.n(); ++d) {
        json entry{{"p", d},
                   {"blocks", binomial(seq.n(), d)},
                   {"dim", k.cx.dim(static_cast<int>(d))},
                   {"cohomology", k.cx.cohomology(static_cast<int>(d)).dim}};
        if (d < seq.n()) {
            entry["rank"] = rank(k.cx.d(static_cast<int>(d)));
            entry["zero_differential"] = k.cx.d(static_cast<int>(d)).is_zero();
        }
        degrees.push_back(std::move(entry));
    }
    return json{{"module_dim", m.dim}, {"degrees", std::move(degrees)}};
}

json cmd_d0(const json& p)
{
    expect_keys(p, {"n", "polys"}, {"field"});
    SeparatedSequence seq = sequence_from_json(
        json{{"n", p["n"]}, {"polys", p["polys"]},
             {"field", p.contains("field") ? p["field"] : json("Q")}});
    std::vector<std::size_t> dims = d0_ext_dims(seq);
    return json{{"dims", dims}, {"module_dim", quotient_module(seq).dim}};
}

json cmd_cech(const json& p)
{
    expect_keys(p, {}, {"presheaf", "skyscraper", "degree"});
    NervePresheaf pre = [&] {
        if (p.contains("skyscraper")) {
            const json& s = p["skyscraper"];
            expect_keys(s, {"nerve", "field", "points", "stalk_dim"});
            Nerve n = nerve_from_json(s["nerve"]);
            std::vector<std::vector<int>> pts;
            for (const auto& x : s["points"])
                pts.push_back(x.get<std::vector<int>>());
            return skyscraper_presheaf(n, field_from_json(s["field"]), pts,
                                       s["stalk_dim"].get<std::size_t>());
        }
        require(p.contains("presheaf"), Errc::schema_error, "cech: need presheaf or skyscraper");
        return presheaf_from_json(p["presheaf"]);
    }();
    CechComplexData data = cech_complex(pre);
    json res{{"cohomology", cohomology_dims_json(data.cx)}};
    if (p.contains("degree")) {
        int q = p["degree"].get<int>();
        VertexSpace v = vertex_space(pre, q);
        json basis = json::array();
        for (const auto& cls : v.basis)
            basis.push_back(vec_to_json(cls.cochain));
        res["vertex_space"] = json{{"q", q}, {"dim", v.dim}, {"basis", std::move(basis)}};
    }
    return res;
}

json cmd_hyper(const json& p)
{
    expect_keys(p, {"complex_presheaf"}, {"globaxten"});
    ComplexPresheaf cp = complex_presheaf_from_json(p["complex_presheaf"]);
    HyperData h = hypercohomology(cp);
    json tot = json::array();
    for (const auto& [n, d] : h.total_dims)
        tot.push_back(json{{"degree", n}, {"dim", d}});
    json res{{"total_cohomology", std::move(tot)}};
    if (p.contains("globaxten")) {
        const json& g = p["globaxten"];
        expect_keys(g, {"f", "h"});
        std::vector<Vec> fv, hv;
        for (const auto& x : g["f"])
            fv.push_back(vec_from_json(cp.field, x));
        for (const auto& x : g["h"])
            hv.push_back(vec_from_json(cp.field, x));
        res["globaxten"] = globaxten_check(fv, hv, cp);
    }
    return res;
}

json cmd_spectral(const json& p)
{
    expect_keys(p, {}, {"double_complex", "complex_presheaf", "up_to", "class"});
    DoubleComplex dc = [&] {
        if (p.contains("double_complex"))
            return double_complex_from_json(p["double_complex"]);
        require(p.contains("complex_presheaf"), Errc::schema_error,
                "spectral: need double_complex or complex_presheaf");
        return hypercohomology(complex_presheaf_from_json(p["complex_presheaf"])).dc;
    }();
    int up_to = p.value("up_to", dc.stabilization_page());
    json pages_json = json::array();
    std::ostringstream text;
    for (int r = 2; r <= up_to; ++r) {
        SpectralPage pg = page(dc, r);
        json cells = json::array();
        json arrows = json::array();
        text << "E_" << r << ":\n";
        for (int q = dc.q_hi(); q >= dc.q_lo(); --q) {
            text << "  q=" << q << " |";
            for (int pp = dc.p_lo(); pp <= dc.p_hi(); ++pp) {
                const PageCell& cell = pg.cells.at({pp, q});
                text << " " << cell.dim;
                cells.push_back(json{{"p", pp}, {"q", q}, {"dim", cell.dim}});
            }
            text << "\n";
        }
        for (const auto& [pq, m] : pg.d)
            if (!m.is_zero()) {
                arrows.push_back(json{{"from", {pq.first, pq.second}},
                                      {"to", {pq.first + r, pq.second - r + 1}},
                                      {"rank", rank(m)}});
                text << "  d_" << r << " (" << pq.first << "," << pq.second << ") -> ("
                     << pq.first + r << "," << pq.second - r + 1 << ") rank " << rank(m) << "\n";
            }
        pages_json.push_back(json{{"r", r}, {"cells", std::move(cells)},
                                  {"arrows", std::move(arrows)}});
    }
    json tot = json::array();
    for (const auto& [n, d] : total_cohomology_dims(dc))
        tot.push_back(json{{"degree", n}, {"dim", d}});
    json res{{"pages", std::move(pages_json)},
             {"abutment_ok", abutment_check(dc)},
             {"total_cohomology", std::move(tot)},
             {"text", text.str()}};
    if (p.contains("class")) {
        const json& c = p["class"];
        expect_keys(c, {"p", "q", "cocycle"});
        ClassLift lift = class_map(dc, c["p"].get<int>(), c["q"].get<int>(),
                                   vec_from_json(dc.field(), c["cocycle"]));
        json cl{{"survives", lift.survives}};
        if (lift.survives)
            cl["alpha"] = vec_to_json(lift.alpha);
        else
            cl["dies_at"] = lift.dies_at;
        res["class_map"] = std::move(cl);
    }
    return res;
}

json cmd_ext(const json& p)
{
    expect_keys(p, {"algebra", "f", "g", "k", "length"});
    AlgebraPtr alg = algebra_from_json(p["algebra"]);
    AModule f = module_from_json(p["f"], alg);
    AModule g = module_from_json(p["g"], alg);
    std::size_t k = p["k"].get<std::size_t>();
    std::size_t length = p["length"].get<std::size_t>();
    ExtGroup e = ext_group(f, g, k, length);
    FreeResolution res = free_resolution(f, length);
    json basis = json::array();
    for (const auto& c : e.cocycles)
        basis.push_back(vec_to_json(c));
    return json{{"dim", e.dim},
                {"basis", std::move(basis)},
                {"resolution_ranks", res.ranks},
                {"hom_dim", hom_space(f, g).dim}};
}

json cmd_yoneda(const json& p)
{
    expect_keys(p, {"algebra", "f", "g", "h", "a", "b"});
    AlgebraPtr alg = algebra_from_json(p["algebra"]);
    AModule f = module_from_json(p["f"], alg);
    AModule g = module_from_json(p["g"], alg);
    AModule h = module_from_json(p["h"], alg);
    auto cls = [&](const json& j, const AModule& src, const AModule& dst) {
        expect_keys(j, {"k", "cocycle"});
        return ExtClass{src, dst, j["k"].get<std::size_t>(),
                        vec_from_json(alg->field(), j["cocycle"])};
    };
    ExtClass a = cls(p["a"], f, g);
    ExtClass b = cls(p["b"], g, h);
    ExtClass ab = yoneda_product(a, b);
    return json{{"k", ab.k},
                {"cocycle", vec_to_json(ab.cocycle)},
                {"coordinates", vec_to_json(ext_class_coordinates(ab, ab.k + 1))}};
}

json cmd_extension(const json& p)
{
    require(p.contains("op") && p.contains("algebra"), Errc::schema_error,
            "extension: need op and algebra");
    AlgebraPtr alg = algebra_from_json(p["algebra"]);
    const std::string op = p["op"].get<std::string>();
    if (op == "pullback") {
        expect_keys(p, {"op", "algebra", "ext", "gamma_src", "gamma"});
        Extension1 s = extension_from_json(p["ext"], alg);
        AModule fp = module_from_json(p["gamma_src"], alg);
        ModuleMap gamma = ModuleMap::make(fp, s.quo, matrix_from_json(p["gamma"]));
        Extension1 r = pullback_ext(s, gamma);
        return json{{"extension", extension_to_json(r)},
                    {"class", vec_to_json(ext_class_coordinates(ext_class_of1(r)))}};
    }
    if (op == "pushout") {
        expect_keys(p, {"op", "algebra", "ext", "alpha_dst", "alpha"});
        Extension1 s = extension_from_json(p["ext"], alg);
        AModule gp = module_from_json(p["alpha_dst"], alg);
        ModuleMap alpha = ModuleMap::make(s.sub, gp, matrix_from_json(p["alpha"]));
        Extension1 r = pushout_ext(s, alpha);
        return json{{"extension", extension_to_json(r)},
                    {"class", vec_to_json(ext_class_coordinates(ext_class_of1(r)))}};
    }
    if (op == "is_equivalent") {
        expect_keys(p, {"op", "algebra", "ext", "other"});
        Extension1 s = extension_from_json(p["ext"], alg);
        Extension1 t = extension_from_json(p["other"], alg);
        return json{{"equivalent", is_equivalent(s, t)}};
    }
    if (op == "baer_sum") {
        expect_keys(p, {"op", "algebra", "ext", "other"});
        Extension1 s = extension_from_json(p["ext"], alg);
        Extension1 t = extension_from_json(p["other"], alg);
        Extension1 r = baer_sum(s, t);
        return json{{"extension", extension_to_json(r)},
                    {"class", vec_to_json(ext_class_coordinates(ext_class_of1(r)))}};
    }
    if (op == "class_of") {
        expect_keys(p, {"op", "algebra"}, {"ext", "exts"});
        std::vector<Extension1> splices;
        if (p.contains("ext"))
            splices.push_back(extension_from_json(p["ext"], alg));
        else
            for (const auto& e : p.at("exts"))
                splices.push_back(extension_from_json(e, alg));
        ExtClass c = ext_class_of(ExtensionP{std::move(splices)});
        return json{{"k", c.k},
                    {"cocycle", vec_to_json(c.cocycle)},
                    {"coordinates", vec_to_json(ext_class_coordinates(c, c.k + 1))}};
    }
    if (op == "from_cocycle") {
        expect_keys(p, {"op", "algebra", "f", "g", "k", "cocycle"});
        AModule f = module_from_json(p["f"], alg);
        AModule g = module_from_json(p["g"], alg);
        ExtClass c{f, g, p["k"].get<std::size_t>(), vec_from_json(alg->field(), p["cocycle"])};
        ExtensionP e = extension_from_cocycle(c);
        json splices = json::array();
        for (const auto& s : e.splices)
            splices.push_back(extension_to_json(s));
        ExtClass back = ext_class_of(e);
        return json{{"splices", std::move(splices)},
                    {"roundtrip_class", vec_to_json(ext_class_coordinates(back, back.k + 1))},
                    {"roundtrip_ok", ext_classes_equal(back, c, c.k + 1)}};
    }
    fail(Errc::schema_error, "extension: unknown op '" + op + "'");
}

json cmd_obstruction(const json& p)
{
    expect_keys(p, {"kind", "algebra", "u", "p", "other", "cocycle"});
    AlgebraPtr alg = algebra_from_json(p["algebra"]);
    Extension1 u = extension_from_json(p["u"], alg);
    std::size_t deg = p["p"].get<std::size_t>();
    AModule other = module_from_json(p["other"], alg);
    const std::string kind = p["kind"].get<std::string>();
    Obstruction ob;
    if (kind == "extend") {
        ExtClass rho{u.sub, other, deg, vec_from_json(alg->field(), p["cocycle"])};
        ob = obstruction_extend(rho, u);
    } else if (kind == "lift") {
        ExtClass tau{other, u.quo, deg, vec_from_json(alg->field(), p["cocycle"])};
        ob = obstruction_lift(tau, u);
    } else {
        fail(Errc::schema_error, "obstruction: kind must be extend or lift");
    }
    json res{{"vanishes", ob.vanishes},
             {"class", vec_to_json(ext_class_coordinates(ob.value, ob.value.k + 1))}};
    if (ob.witness.has_value())
        res["witness_cocycle"] = vec_to_json(ob.witness->cocycle);
    return res;
}

SectorSes sector_ses_from_json(const json& j, const AlgebraPtr& alg)
{
    expect_keys(j, {"support", "b", "c", "d", "inject", "project", "f"});
    SectorSes s;
    s.support = j["support"].get<std::vector<int>>();
    AModule b = module_from_json(j["b"], alg);
    AModule c = module_from_json(j["c"], alg);
    AModule d = module_from_json(j["d"], alg);
    s.inject = ModuleMap::make(b, c, matrix_from_json(j["inject"]));
    s.project = ModuleMap::make(c, d, matrix_from_json(j["project"]));
    s.f = module_from_json(j["f"], alg);
    return s;
}

json cmd_les(const json& p)
{
    require(p.contains("kind"), Errc::schema_error, "les: need kind");
    const std::string kind = p["kind"].get<std::string>();
    if (kind == "module") {
        expect_keys(p, {"kind", "algebra", "u", "other", "side", "length"});
        AlgebraPtr alg = algebra_from_json(p["algebra"]);
        Extension1 u = extension_from_json(p["u"], alg);
        AModule other = module_from_json(p["other"], alg);
        const std::string side = p["side"].get<std::string>();
        require(side == "covariant_from_f" || side == "contravariant_to_g", Errc::schema_error,
                "les: bad side");
        StringLesReport rep = les_report(
            u, other,
            side == "covariant_from_f" ? LesSide::covariant_from_f : LesSide::contravariant_to_g,
            p["length"].get<std::size_t>());
        json res{{"exact", rep.exact}, {"dims", rep.les.dims}, {"labels", rep.les.labels}};
        if (rep.free_case_checked)
            res["free_case_ok"] = rep.free_case_ok;
        return res;
    }
    if (kind == "vertex") {
        expect_keys(p, {"kind", "algebra", "nerve", "sectors", "k", "length"});
        AlgebraPtr alg = algebra_from_json(p["algebra"]);
        Nerve nerve = nerve_from_json(p["nerve"]);
        std::vector<SectorSes> sectors;
        for (const auto& s : p["sectors"])
            sectors.push_back(sector_ses_from_json(s, alg));
        VertexLesReport rep = vertex_les(nerve, sectors, p["k"].get<std::size_t>(),
                                         p["length"].get<std::size_t>());
        return json{{"exact", rep.exact},
                    {"ker_dims", rep.ker_dims},
                    {"mid_dims", rep.mid_dims},
                    {"im_dims", rep.im_dims},
                    {"dims", rep.les.dims}};
    }
    fail(Errc::schema_error, "les: kind must be module or vertex");
}

CechAlgebraModel model_from_json(const json& j)
{
    expect_keys(j, {"algebra", "nerve", "slots", "sectors"});
    CechAlgebraModel m;
    m.alg = algebra_from_json(j["algebra"]);
    m.field = m.alg->field();
    m.nerve = nerve_from_json(j["nerve"]);
    m.slots = j["slots"].get<std::size_t>();
    for (const auto& s : j["sectors"]) {
        expect_keys(s, {"support", "modules"});
        ModelSector sec;
        sec.support = s["support"].get<std::vector<int>>();
        for (const auto& mod : s["modules"])
            sec.modules.push_back(module_from_json(mod, m.alg));
        m.sectors.push_back(std::move(sec));
    }
    m.validate();
    return m;
}

json cmd_correlate(const json& p)
{
    expect_keys(p, {"model", "operators"}, {"volume", "equivalencia"});
    CechAlgebraModel model = model_from_json(p["model"]);
    std::vector<LocalOperator> ops;
    for (const auto& o : p["operators"]) {
        expect_keys(o, {"slot", "p", "q", "data"});
        LocalOperator op;
        op.slot = o["slot"].get<std::size_t>();
        op.p = o["p"].get<int>();
        op.q = o["q"].get<int>();
        for (const auto& per : o["data"]) {
            std::vector<Vec> faces;
            for (const auto& v : per)
                faces.push_back(vec_from_json(model.field, v));
            op.data.push_back(std::move(faces));
        }
        ops.push_back(std::move(op));
    }
    if (p.contains("equivalencia")) {
        expect_keys(p["equivalencia"], {"vol_scalar"});
        Vec vs = vec_from_json(model.field, p["equivalencia"]["vol_scalar"]);
        EquivalenciaReport rep = equivalencia_check(model, ops, vs);
        return json{{"equal", rep.equal},
                    {"via_spectral", rep.via_spectral.get_str()},
                    {"via_cup", rep.via_cup.get_str()}};
    }
    require(p.contains("volume"), Errc::schema_error, "correlate: need volume or equivalencia");
    const json& v = p["volume"];
    VolumeFunctional vf;
    if (v.contains("locally_free_trace")) {
        expect_keys(v, {"locally_free_trace"});
        expect_keys(v["locally_free_trace"], {"n", "vol_scalar"});
        vf = locally_free_trace(model, v["locally_free_trace"]["n"].get<int>(),
                                vec_from_json(model.field, v["locally_free_trace"]["vol_scalar"]));
    } else {
        expect_keys(v, {"n", "coeffs"});
        vf.n = v["n"].get<int>();
        vf.coeffs = vec_from_json(model.field, v["coeffs"]);
    }
    CorrelationReport rep = correlate(model, ops, vf);
    return json{{"value", rep.value.get_str()},
                {"statuses", rep.statuses},
                {"any_died", rep.any_died}};
}

json cmd_verify(const json& p, const RunOptions& opts)
{
    expect_keys(p, {"suite"});
    std::vector<SuiteResult> results = run_suite(p["suite"].get<std::string>(), opts.seed);
    json suites = json::array();
    bool all_ok = true;
    for (const auto& r : results) {
        suites.push_back(json{{"name", r.name},
                              {"checks", r.checks},
                              {"failures", r.failures},
                              {"notes", r.notes},
                              {"passed", r.passed()}});
        all_ok = all_ok && r.passed();
    }
    return json{{"seed", opts.seed}, {"suites", std::move(suites)}, {"passed", all_ok}};
}

} // namespace

json run_problem(const json& problem, const RunOptions& opts)
{
    expect_keys(problem, {"version", "command", "payload"});
    require(problem["version"].get<std::string>() == "1", Errc::schema_error,
            "unsupported problem version");
    const std::string cmd = problem["command"].get<std::string>();
    const json& p = problem["payload"];
    json results;
    if (cmd == "cohomology")
        results = cmd_cohomology(p);
    else if (cmd == "cone")
        results = cmd_cone(p);
    else if (cmd == "hom")
        results = cmd_hom(p);
    else if (cmd == "koszul")
        results = cmd_koszul(p);
    else if (cmd == "d0")
        results = cmd_d0(p);
    else if (cmd == "cech")
        results = cmd_cech(p);
    else if (cmd == "hyper")
        results = cmd_hyper(p);
    else if (cmd == "spectral")
        results = cmd_spectral(p);
    else if (cmd == "ext")
        results = cmd_ext(p);
    else if (cmd == "yoneda")
        results = cmd_yoneda(p);
    else if (cmd == "extension")
        results = cmd_extension(p);
    else if (cmd == "obstruction")
        results = cmd_obstruction(p);
    else if (cmd == "les")
        results = cmd_les(p);
    else if (cmd == "correlate")
        results = cmd_correlate(p);
    else if (cmd == "verify")
        results = cmd_verify(p, opts);
    else
        fail(Errc::schema_error, "unknown command '" + cmd + "'");

    json report{{"command", cmd},
                {"engine", json{{"name", "homcat"}, {"version", "0.1.0"}}},
                {"input_digest", content_digest(problem.dump())},
                {"results", std::move(results)},
                {"timings", nullptr}};
    (void)opts;
    return report;
}

std::string report_to_string(const json& report)
{
    return report.dump(2) + "\n";
}

namespace {

void render_rec(const json& j, std::ostream& os, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                os << pad << k << ":\n";
                render_rec(v, os, indent + 1);
            } else {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                render_rec(v, os, indent + 1);
            } else {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

} // namespace

std::string render_text(const json& report)
{
    std::ostringstream os;
    render_rec(report, os, 0);
    return os.str();
}

std::vector<std::pair<std::string, std::vector<std::string>>> operation_coverage()
{
    return {
        {"cohomology", {"cohomology", "shift", "rank", "kernel_basis"}},
        {"cone", {"cone", "cylinder", "connecting", "exactness_check", "solve"}},
        {"hom", {"hom_complex", "induced_hom_map", "cone_hom_commutes"}},
        {"koszul", {"koszul_hom", "quotient_module"}},
        {"d0", {"d0_ext_dims"}},
        {"cech", {"cech_complex", "skyscraper_presheaf", "vertex_space"}},
        {"hyper", {"hypercohomology", "globaxten_check"}},
        {"spectral", {"pages", "abutment_check", "class_map"}},
        {"ext", {"ext_group", "free_resolution", "hom_space"}},
        {"yoneda", {"yoneda_product"}},
        {"extension",
         {"pullback_ext", "pushout_ext", "is_equivalent", "baer_sum", "ext_class_of",
          "extension_from_cocycle", "induced_on_quotient"}},
        {"obstruction", {"obstruction_extend", "obstruction_lift"}},
        {"les", {"les_report", "vertex_les"}},
        {"correlate", {"correlate", "locally_free_trace", "equivalencia_check"}},
        {"verify", {"verify_suite", "run"}},
    };
}

std::vector<std::string> all_operations()
{
    return {"rank",
            "kernel_basis",
            "solve",
            "induced_on_quotient",
            "cohomology",
            "shift",
            "cone",
            "cylinder",
            "connecting",
            "exactness_check",
            "hom_complex",
            "induced_hom_map",
            "cone_hom_commutes",
            "free_resolution",
            "ext_group",
            "yoneda_product",
            "hom_space",
            "quotient_module",
            "koszul_hom",
            "d0_ext_dims",
            "cech_complex",
            "skyscraper_presheaf",
            "hypercohomology",
            "globaxten_check",
            "vertex_space",
            "vertex_les",
            "pages",
            "abutment_check",
            "class_map",
            "pullback_ext",
            "pushout_ext",
            "is_equivalent",
            "baer_sum",
            "ext_class_of",
            "extension_from_cocycle",
            "obstruction_extend",
            "obstruction_lift",
            "les_report",
            "correlate",
            "locally_free_trace",
            "equivalencia_check",
            "run",
            "verify_suite"};
}

} // namespace homcat
