#include "starres/serialize.hpp"

#include <sstream>

namespace starres {

namespace {

json vector_to_json(const GradedVector& v) {
    json out = json::array();
    for (const auto& p : v.coords()) out.push_back(p.str());
    return out;
}

GradedVector vector_from_json(const json& j, ModulePtr m) {
    if (!j.is_array() || j.size() != m->rank())
        throw SerializeError("vector coordinate count mismatch");
    GradedVector v(m);
    for (size_t i = 0; i < m->rank(); ++i)
        v.set_coord(i, parse_polynomial(j[i].get<std::string>(), m->ring()));
    return v;
}

json index_pairs_to_json(const std::vector<IndexPair>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back({p.i, p.lambda});
    return out;
}

std::vector<IndexPair> index_pairs_from_json(const json& j) {
    std::vector<IndexPair> out;
    for (const auto& e : j)
        out.push_back({e[0].get<int>(), e[1].get<size_t>()});
    return out;
}

}  // namespace

json ring_to_json(const WeightedRing& ring) {
    return json{{"characteristic", ring.field().characteristic()},
                {"weights", ring.weights()},
                {"variables", WeightedRing::variables()}};
}

WeightedRing ring_from_json(const json& j) {
    std::array<unsigned, 3> w = j.at("weights");
    return WeightedRing(w, Field(j.at("characteristic").get<unsigned long>()));
}

json module_to_json(const GradedFreeModule& m) {
    return json{{"labels", m.labels()}, {"degrees", m.degrees()}};
}

ModulePtr module_from_json(const json& j, const WeightedRing& ring) {
    return GradedFreeModule::make(ring,
                                  j.at("labels").get<std::vector<std::string>>(),
                                  j.at("degrees").get<std::vector<long>>());
}

json map_to_json(const ModuleMap& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.target()->rank(); ++i) {
        json row = json::array();
        for (size_t jx = 0; jx < m.source()->rank(); ++jx)
            row.push_back(m.entry(i, jx).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

ModuleMap map_from_json(const json& j, ModulePtr source, ModulePtr target) {
    if (!j.is_array() || j.size() != target->rank())
        throw SerializeError("map row count mismatch");
    ModuleMap m = ModuleMap::zero(source, target);
    for (size_t i = 0; i < target->rank(); ++i) {
        if (j[i].size() != source->rank())
            throw SerializeError("map column count mismatch");
        for (size_t c = 0; c < source->rank(); ++c) {
            auto p = parse_polynomial(j[i][c].get<std::string>(),
                                      source->ring());
            if (!p.is_zero()) m.set_entry(i, c, std::move(p));
        }
    }
    return m;
}

json complex_to_json(const ChainComplex& c) {
    json modules = json::array();
    for (size_t i = 0; i <= c.length(); ++i)
        modules.push_back(module_to_json(*c.module(i)));
    json maps = json::array();
    for (size_t i = 1; i <= c.length(); ++i)
        maps.push_back(map_to_json(c.differential(i)));
    return json{{"schema", "starres/complex/v1"},
                {"ring", ring_to_json(c.ring())},
                {"modules", std::move(modules)},
                {"maps", std::move(maps)}};
}

ChainComplex complex_from_json(const json& j) {
    if (j.value("schema", "") != "starres/complex/v1")
        throw SerializeError("not a starres complex file");
    WeightedRing ring = ring_from_json(j.at("ring"));
    std::vector<ModulePtr> modules;
    for (const auto& m : j.at("modules"))
        modules.push_back(module_from_json(m, ring));
    const auto& jm = j.at("maps");
    if (jm.size() + 1 != modules.size())
        throw SerializeError("complex needs one map per module pair");
    std::vector<ModuleMap> maps;
    for (size_t i = 0; i < jm.size(); ++i)
        maps.push_back(map_from_json(jm[i], modules[i + 1], modules[i]));
    return ChainComplex(std::move(modules), std::move(maps));
}

json record_to_json(const StarTransformRecord& r) {
    json lifts = json::array();
    for (const auto& tr : r.sigma.lifts) {
        lifts.push_back(json{{"v", {vector_to_json(tr.v[0]),
                                    vector_to_json(tr.v[1]),
                                    vector_to_json(tr.v[2])}},
                             {"u", {vector_to_json(tr.u[0]),
                                    vector_to_json(tr.u[1]),
                                    vector_to_json(tr.u[2])}},
                             {"d", tr.d.str()},
                             {"xi2", vector_to_json(tr.xi2)},
                             {"xi3", vector_to_json(tr.xi3)}});
    }
    json sigma_maps = json::array();
    for (const auto& s : r.sigma.sigma) sigma_maps.push_back(map_to_json(s));

    json coeff_a = json::array();
    for (const auto& row : r.coefficients.a) {
        json jr = json::object();
        for (const auto& [key, poly] : row)
            jr[std::to_string(key.i) + "," + std::to_string(key.lambda)] =
                poly.str();
        coeff_a.push_back(std::move(jr));
    }
    json coeff_b = json::array();
    for (const auto& row : r.coefficients.b) {
        json jr = json::object();
        for (const auto& [u, poly] : row) jr[std::to_string(u)] = poly.str();
        coeff_b.push_back(std::move(jr));
    }
    json wstar = json::array();
    for (const auto& w : r.w_star) wstar.push_back(vector_to_json(w));

    json params = json::array();
    for (const auto& p : r.input.params) params.push_back(p.str());

    return json{{"schema", "starres/star-record/v1"},
                {"input", json{{"complex", complex_to_json(r.input.complex)},
                               {"params", std::move(params)}}},
                {"sigma", json{{"koszul", complex_to_json(r.sigma.koszul)},
                               {"domain", complex_to_json(r.sigma.domain)},
                               {"maps", std::move(sigma_maps)},
                               {"lifts", std::move(lifts)}}},
                {"cone", complex_to_json(r.cone)},
                {"trimmed", complex_to_json(r.trimmed)},
                {"lambda_tilde", index_pairs_to_json(r.lambda_tilde)},
                {"lambda_star_prime", index_pairs_to_json(r.lambda_star_prime)},
                {"lambda_double_star",
                 index_pairs_to_json(r.lambda_double_star)},
                {"U", r.U},
                {"basis_certificate", r.basis_certificate.str()},
                {"coefficients", json{{"a", std::move(coeff_a)},
                                      {"b", std::move(coeff_b)}}},
                {"w_star", std::move(wstar)},
                {"output", complex_to_json(r.output)},
                {"depth_shortcut", r.depth_shortcut},
                {"promotion_sweeps", r.promotion_sweeps},
                {"verify_bound", r.verify_bound}};
}

StarTransformRecord record_from_json(const json& j) {
    if (j.value("schema", "") != "starres/star-record/v1")
        throw SerializeError("not a starres star-record file");
    ChainComplex input_complex = complex_from_json(j.at("input").at("complex"));
    const WeightedRing& ring = input_complex.ring();
    const Field field = ring.field();
    auto jparams = j.at("input").at("params");
    std::array<Polynomial, 3> params = {
        parse_polynomial(jparams[0].get<std::string>(), ring),
        parse_polynomial(jparams[1].get<std::string>(), ring),
        parse_polynomial(jparams[2].get<std::string>(), ring)};

    ChainComplex koszul = complex_from_json(j.at("sigma").at("koszul"));
    ChainComplex domain = complex_from_json(j.at("sigma").at("domain"));
    std::vector<ModuleMap> sigma_maps;
    for (size_t i = 0; i < 4; ++i)
        sigma_maps.push_back(map_from_json(j.at("sigma").at("maps")[i],
                                           domain.module(i),
                                           input_complex.module(i)));
    auto cell21 = [&] {  // K_2 (x) F_1 and K_3 (x) F_0 cells for the traces
        DoubleComplexKF dc(koszul, input_complex);
        return std::make_pair(dc.cell(2, 1), dc.cell(3, 0));
    }();

    std::vector<LiftTrace> lifts;
    for (const auto& jt : j.at("sigma").at("lifts")) {
        LiftTrace tr{{vector_from_json(jt.at("v")[0], input_complex.module(2)),
                      vector_from_json(jt.at("v")[1], input_complex.module(2)),
                      vector_from_json(jt.at("v")[2], input_complex.module(2))},
                     {vector_from_json(jt.at("u")[0], input_complex.module(1)),
                      vector_from_json(jt.at("u")[1], input_complex.module(1)),
                      vector_from_json(jt.at("u")[2], input_complex.module(1))},
                     parse_polynomial(jt.at("d").get<std::string>(), ring),
                     vector_from_json(jt.at("xi2"), cell21.first),
                     vector_from_json(jt.at("xi3"), cell21.second)};
        lifts.push_back(std::move(tr));
    }
    ChainMapSigma sigma{std::move(koszul), std::move(domain),
                        std::move(sigma_maps), std::move(lifts)};

    ChainComplex cone = complex_from_json(j.at("cone"));
    ChainComplex trimmed = complex_from_json(j.at("trimmed"));
    ChainComplex output = complex_from_json(j.at("output"));

    ExpressionTables tables;
    for (const auto& row : j.at("coefficients").at("a")) {
        std::map<IndexPair, Polynomial> r2;
        for (auto it = row.begin(); it != row.end(); ++it) {
            auto key = it.key();
            auto comma = key.find(',');
            IndexPair p{std::stoi(key.substr(0, comma)),
                        std::stoul(key.substr(comma + 1))};
            r2.emplace(p, parse_polynomial(it.value().get<std::string>(),
                                           ring));
        }
        tables.a.push_back(std::move(r2));
    }
    for (const auto& row : j.at("coefficients").at("b")) {
        std::map<size_t, Polynomial> r2;
        for (auto it = row.begin(); it != row.end(); ++it)
            r2.emplace(std::stoul(it.key()),
                       parse_polynomial(it.value().get<std::string>(), ring));
        tables.b.push_back(std::move(r2));
    }

    std::vector<GradedVector> wstar;
    for (const auto& w : j.at("w_star"))
        wstar.push_back(vector_from_json(w, trimmed.module(3)));

    return StarTransformRecord{
        StarInput{std::move(input_complex), std::move(params)},
        std::move(sigma),
        std::move(cone),
        std::move(trimmed),
        index_pairs_from_json(j.at("lambda_tilde")),
        index_pairs_from_json(j.at("lambda_star_prime")),
        index_pairs_from_json(j.at("lambda_double_star")),
        j.at("U").get<std::vector<size_t>>(),
        Scalar::parse(j.at("basis_certificate").get<std::string>(), field),
        std::move(tables),
        std::move(wstar),
        std::move(output),
        j.at("depth_shortcut").get<bool>(),
        j.at("promotion_sweeps").get<int>(),
        j.at("verify_bound").get<long>()};
}

json report_to_json(const LengthReport& rep, const Ideal& symbolic) {
    json steps = json::array();
    for (const auto& s : rep.steps)
        steps.push_back(json{{"k", s.k},
                             {"length", s.length},
                             {"predicted", s.predicted},
                             {"oracle_checked", s.oracle_checked},
                             {"params", s.params}});
    json gens = json::array();
    for (const auto& g : symbolic.generators()) gens.push_back(g.str());
    return json{{"schema", "starres/length-report/v1"},
                {"n", rep.n},
                {"passes", rep.passes},
                {"shortcut_pass", rep.shortcut_pass},
                {"steps", std::move(steps)},
                {"total", rep.total},
                {"symbolic_generators", std::move(gens)}};
}

json epsilon_to_json(const EpsilonTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back(json{{"n", r.n},
                            {"q", r.q},
                            {"length", r.length},
                            {"ratio", r.ratio.get_str()},
                            {"ratio_decimal", r.ratio.get_d()},
                            {"pipeline_verified", r.pipeline_verified}});
    return json{{"schema", "starres/epsilon-table/v1"},
                {"rows", std::move(rows)}};
}

std::string report_to_text(const LengthReport& rep, const Ideal& symbolic) {
    std::ostringstream os;
    os << "n = " << rep.n << ", passes = " << rep.passes
       << ", shortcut at pass " << rep.shortcut_pass << "\n";
    os << "  k  length  predicted  oracle  params\n";
    for (const auto& s : rep.steps) {
        os << "  " << s.k << "  " << s.length << "  " << s.predicted << "  "
           << (s.oracle_checked ? "yes" : "no") << "  (";
        for (size_t i = 0; i < s.params.size(); ++i)
            os << (i ? ", " : "") << s.params[i];
        os << ")\n";
    }
    os << "total length I^(n)/I^n = " << rep.total << "\n";
    os << "minimal generators of I^(n): " << symbolic.generators().size()
       << "\n";
    for (const auto& g : symbolic.generators()) os << "  " << g.str() << "\n";
    return os.str();
}

std::string epsilon_to_text(const EpsilonTable& t) {
    std::ostringstream os;
    os << "  n  q  length  6*len/n^3  verified\n";
    for (const auto& r : t.rows) {
        os << "  " << r.n << "  " << r.q << "  " << r.length << "  "
           << r.ratio.get_str() << " (" << r.ratio.get_d() << ")  "
           << (r.pipeline_verified ? "pipeline" : "formula") << "\n";
    }
    return os.str();
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

void recheck_record(const StarTransformRecord& r, bool check_oracle) {
    StarOptions opts;
    opts.v_override = std::vector<std::array<GradedVector, 3>>();
    for (const auto& tr : r.sigma.lifts)
        opts.v_override->push_back({tr.v[0], tr.v[1], tr.v[2]});
    opts.lambda_star_override = r.lambda_star_prime;
    if (!r.lambda_double_star.empty()) opts.expression_override = r.coefficients;
    opts.verify_bound = r.verify_bound;
    opts.check_colon_oracle = check_oracle;
    auto fresh = star_transform(r.input, opts);
    if (!(fresh.output == r.output))
        throw StarError("recheck: stored output differs from recomputation");
    if (!(fresh.cone == r.cone))
        throw StarError("recheck: stored cone differs from recomputation");
    if (!(fresh.trimmed == r.trimmed))
        throw StarError("recheck: stored trim differs from recomputation");
    if (fresh.w_star != r.w_star)
        throw StarError("recheck: stored w* differ from recomputation");
    if (fresh.lambda_double_star != r.lambda_double_star ||
        fresh.U != r.U || fresh.depth_shortcut != r.depth_shortcut)
        throw StarError("recheck: stored index data differ from "
                        "recomputation");
}

}  // namespace starres
