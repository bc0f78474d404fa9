#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "starres/serialize.hpp"

using namespace starres;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string subcommand;
    unsigned long characteristic = 0;
    std::vector<unsigned> exponents;
    unsigned n = 0;
    unsigned n_max = 0;
    std::string weights = "auto";
    long degree_bound = -1;
    std::string format = "text";
    std::string out;
    std::string in;
    std::string params = "x,y,z";
    std::string schedule;
    std::string strategy = "auto";
    std::string oracle = "every";
    unsigned pipeline_cutoff = 6;
    unsigned long seed = 20240817;

    json to_json() const {
        return json{{"subcommand", subcommand},
                    {"char", characteristic},
                    {"exponents", exponents},
                    {"n", n},
                    {"n_max", n_max},
                    {"weights", weights},
                    {"degree_bound", degree_bound},
                    {"format", format},
                    {"in", in},
                    {"params", params},
                    {"schedule", schedule},
                    {"strategy", strategy},
                    {"oracle", oracle},
                    {"pipeline_cutoff", pipeline_cutoff},
                    {"seed", seed},
                    {"version", kVersion}};
    }
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const json& payload,
          const std::string& text_form) {
    std::string body;
    if (cfg.format == "json") {
        json wrapped = payload;
        wrapped["config"] = cfg.to_json();
        body = dump_canonical(wrapped);
    } else {
        body = text_form;
    }
    if (cfg.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw InputError("cannot write " + cfg.out);
        f << body;
    }
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    json j;
    f >> j;
    return j;
}

// accepts either a bare complex file or a resolve report wrapping one
json unwrap_complex(json j) {
    if (j.value("schema", "") == "starres/resolve/v1")
        return j.at("complex");
    return j;
}

DeterminantalSpec make_spec(const RunConfig& cfg) {
    if (cfg.exponents.size() != 6)
        throw InputError("--exponents needs six positive integers "
                         "a,b,g,a',b',g'");
    std::array<unsigned, 6> e;
    std::copy(cfg.exponents.begin(), cfg.exponents.end(), e.begin());
    std::optional<std::array<unsigned, 3>> w;
    if (cfg.weights != "auto") {
        std::array<unsigned, 3> ww{};
        if (sscanf(cfg.weights.c_str(), "%u,%u,%u", &ww[0], &ww[1], &ww[2]) !=
            3)
            throw InputError("--weights must be auto or w1,w2,w3");
        w = ww;
    }
    return DeterminantalSpec(e, Field(cfg.characteristic), w);
}

std::array<Polynomial, 3> parse_params(const std::string& text,
                                       const WeightedRing& ring) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        throw InputError("expected three comma-separated parameters");
    return {parse_polynomial(parts[0], ring), parse_polynomial(parts[1], ring),
            parse_polynomial(parts[2], ring)};
}

int cmd_resolve(const RunConfig& cfg) {
    auto spec = make_spec(cfg);
    if (cfg.n < 2) throw InputError("resolve requires --n >= 2");
    auto F = rees_resolution(spec, cfg.n);
    long bound =
        cfg.degree_bound >= 0 ? cfg.degree_bound : default_verify_bound(F);
    auto rep = verify_exactness(F, bound);

    json payload{{"schema", "starres/resolve/v1"},
                 {"complex", complex_to_json(F)},
                 {"ranks", json::array()},
                 {"verified_bound", bound},
                 {"exact", rep.all_exact}};
    for (size_t i = F.length() + 1; i-- > 0;)
        payload["ranks"].push_back(F.module(i)->rank());

    std::ostringstream text;
    text << "resolution of I^" << cfg.n << ": ranks";
    for (size_t i = F.length() + 1; i-- > 0;)
        text << " " << F.module(i)->rank();
    text << "\nexact up to degree " << bound << ": "
         << (rep.all_exact ? "yes" : "NO") << "\n";
    emit(cfg, payload, text.str());
    return rep.all_exact ? 0 : 2;
}

int cmd_star(const RunConfig& cfg) {
    if (cfg.in.empty()) throw InputError("star requires --in complex.json");
    ChainComplex F = complex_from_json(unwrap_complex(load_json(cfg.in)));
    auto params = parse_params(cfg.params, F.ring());
    StarOptions opts;
    opts.verify_bound = cfg.degree_bound;
    opts.check_colon_oracle = cfg.oracle != "none";
    auto rec = star_transform({std::move(F), params}, opts);

    std::ostringstream text;
    text << "star transform: shortcut="
         << (rec.depth_shortcut ? "true" : "false")
         << " |Lambda*'|=" << rec.lambda_star_prime.size()
         << " |Lambda**|=" << rec.lambda_double_star.size()
         << " rank F*_3=" << rec.output.module(3)->rank() << "\n";
    emit(cfg, record_to_json(rec), text.str());
    return 0;
}

int cmd_sympow(const RunConfig& cfg) {
    auto spec = make_spec(cfg);
    if (cfg.n < 2) throw InputError("sympow requires --n >= 2");
    SympowOptions opts;
    if (!cfg.schedule.empty()) {
        std::string part;
        std::istringstream is(cfg.schedule);
        while (std::getline(is, part, ';'))
            opts.schedule.push_back(parse_params(part, spec.ring()));
        opts.repeat_last = false;
    }
    if (cfg.strategy == "pinned")
        opts.strategy = SympowOptions::Strategy::Pinned;
    else if (cfg.strategy == "greedy")
        opts.strategy = SympowOptions::Strategy::Greedy;
    else if (cfg.strategy != "auto")
        throw InputError("--strategy must be auto, pinned or greedy");
    if (cfg.oracle == "none")
        opts.oracle = SympowOptions::OracleLevel::None;
    else if (cfg.oracle == "final")
        opts.oracle = SympowOptions::OracleLevel::FinalOnly;
    else if (cfg.oracle != "every")
        throw InputError("--oracle must be none, final or every");
    opts.verify_bound = cfg.degree_bound;

    auto res = symbolic_power(spec, cfg.n, opts);
    emit(cfg, report_to_json(res.report, res.symbolic),
         report_to_text(res.report, res.symbolic));
    return 0;
}

int cmd_epsilon(const RunConfig& cfg) {
    if (cfg.n_max < 2) throw InputError("epsilon requires --n-max >= 2");
    auto table = epsilon_table(cfg.n_max, cfg.pipeline_cutoff);
    emit(cfg, epsilon_to_json(table), epsilon_to_text(table));
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.in.empty()) throw InputError("verify requires --in file.json");
    json j = unwrap_complex(load_json(cfg.in));
    std::string schema = j.value("schema", "");
    std::ostringstream text;
    if (schema == "starres/complex/v1") {
        ChainComplex c = complex_from_json(j);
        long bound = cfg.degree_bound >= 0 ? cfg.degree_bound
                                           : default_verify_bound(c);
        auto rep = verify_exactness(c, bound);
        text << "complex: d o d = 0 holds; exact up to " << bound << ": "
             << (rep.all_exact ? "yes" : "NO") << "\n";
        if (!rep.all_exact && rep.first_failure)
            text << "first failure at degree " << rep.first_failure->first
                 << ", position " << rep.first_failure->second << "\n";
        json payload{{"schema", "starres/verify/v1"},
                     {"kind", "complex"},
                     {"bound", bound},
                     {"exact", rep.all_exact}};
        emit(cfg, payload, text.str());
        return rep.all_exact ? 0 : 2;
    }
    if (schema == "starres/star-record/v1") {
        auto rec = record_from_json(j);
        recheck_record(rec, cfg.oracle != "none");
        text << "star record: all stored artifacts reproduced and "
                "verified\n";
        json payload{{"schema", "starres/verify/v1"},
                     {"kind", "star-record"},
                     {"ok", true}};
        emit(cfg, payload, text.str());
        return 0;
    }
    throw InputError("unrecognized schema '" + schema + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact star-transform toolkit for length-3 resolutions"};
    app.set_version_flag("--version", kVersion);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format)
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", cfg.out);
        sub->add_option("--degree-bound", cfg.degree_bound);
        sub->add_option("--seed", cfg.seed);
    };

    auto* resolve = app.add_subcommand("resolve",
                                       "build and verify the I^n resolution");
    resolve->add_option("--exponents", cfg.exponents)->delimiter(',');
    resolve->add_option("--n", cfg.n);
    resolve->add_option("--char", cfg.characteristic);
    resolve->add_option("--weights", cfg.weights);
    add_common(resolve);

    auto* star = app.add_subcommand("star", "one star-transform pass on a "
                                            "stored complex");
    star->add_option("--in", cfg.in);
    star->add_option("--params", cfg.params);
    star->add_option("--oracle", cfg.oracle)
        ->check(CLI::IsMember({"none", "final", "every"}));
    add_common(star);

    auto* sympow = app.add_subcommand("sympow", "iterate the transform to "
                                                "the symbolic power");
    sympow->add_option("--exponents", cfg.exponents)->delimiter(',');
    sympow->add_option("--n", cfg.n);
    sympow->add_option("--char", cfg.characteristic);
    sympow->add_option("--weights", cfg.weights);
    sympow->add_option("--schedule", cfg.schedule);
    sympow->add_option("--strategy", cfg.strategy);
    sympow->add_option("--oracle", cfg.oracle);
    add_common(sympow);

    auto* epsilon = app.add_subcommand("epsilon", "length and ratio table "
                                                  "for the (x,y,z / y,z,x^2) "
                                                  "family");
    epsilon->add_option("--n-max", cfg.n_max);
    epsilon->add_option("--pipeline-cutoff", cfg.pipeline_cutoff);
    add_common(epsilon);

    auto* verify = app.add_subcommand("verify", "re-check a stored complex "
                                                "or star record");
    verify->add_option("--in", cfg.in);
    verify->add_option("--oracle", cfg.oracle);
    add_common(verify);

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (resolve->parsed()) {
            cfg.subcommand = "resolve";
            return cmd_resolve(cfg);
        }
        if (star->parsed()) {
            cfg.subcommand = "star";
            return cmd_star(cfg);
        }
        if (sympow->parsed()) {
            cfg.subcommand = "sympow";
            return cmd_sympow(cfg);
        }
        if (epsilon->parsed()) {
            cfg.subcommand = "epsilon";
            return cmd_epsilon(cfg);
        }
        if (verify->parsed()) {
            cfg.subcommand = "verify";
            return cmd_verify(cfg);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const SerializeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const SpecError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const FieldError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const RingError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
