#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "embedkit/cyclotomic.hpp"
#include "embedkit/gmodule.hpp"
#include "embedkit/matrix.hpp"
#include "embedkit/oracle.hpp"
#include "embedkit/pm_builder.hpp"
#include "embedkit/solvability.hpp"

using json = nlohmann::json;
using namespace embedkit;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSizeBound = 3;

struct ValidationError : std::runtime_error {
    ValidationError(const std::string& path, const std::string& what)
        : std::runtime_error(what + " (at " + path + ")") {}
};

std::uint64_t get_u64(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) throw ValidationError(path + "/" + key, "missing required field");
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ValidationError(path + "/" + key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::uint64_t get_u64_or(const json& j, const std::string& path, const std::string& key,
                         std::uint64_t dflt) {
    return j.contains(key) ? get_u64(j, path, key) : dflt;
}

std::vector<std::uint64_t> get_u64_array(const json& j, const std::string& path,
                                         const std::string& key) {
    if (!j.contains(key)) throw ValidationError(path + "/" + key, "missing required field");
    const auto& v = j.at(key);
    if (!v.is_array()) throw ValidationError(path + "/" + key, "expected an array");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& e = v[i];
        if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0))
            throw ValidationError(path + "/" + key + "/" + std::to_string(i),
                                  "expected a non-negative integer");
        out.push_back(e.get<std::uint64_t>());
    }
    return out;
}

Mat get_matrix(const json& j, const std::string& path, const std::string& key, const Modulus& mod) {
    if (!j.contains(key)) throw ValidationError(path + "/" + key, "missing required field");
    const auto& v = j.at(key);
    if (!v.is_array()) throw ValidationError(path + "/" + key, "expected an array of rows");
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        json row_obj;
        row_obj["row"] = v[i];
        rows.push_back(get_u64_array(row_obj, path + "/" + key + "/" + std::to_string(i), "row"));
        if (rows.back().size() != rows.front().size())
            throw ValidationError(path + "/" + key + "/" + std::to_string(i), "ragged matrix rows");
    }
    if (rows.empty()) return Mat(mod, 0, 0);
    return Mat::from_rows(mod, rows);
}

json poly_to_json(const Poly& p) { return json(p.coeffs()); }

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

GModule module_from_params(const json& params, const std::string& path) {
    std::uint64_t p = get_u64(params, path, "p");
    unsigned a = static_cast<unsigned>(get_u64(params, path, "a"));
    std::uint64_t l = get_u64(params, path, "l");
    unsigned c = static_cast<unsigned>(get_u64_or(params, path, "c", 1));
    Modulus mod(l, c);
    Mat sigma = get_matrix(params, path, "sigma", mod);
    try {
        return GModule(p, a, mod, std::move(sigma));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path + "/sigma", e.what());
    }
}

PmModule build_pm_from_params(const json& params, const std::string& path) {
    std::string kind = params.value("kind", std::string("genus0"));
    if (kind == "artin-schreier")
        return artin_schreier_example(get_u64(params, path, "p"), get_u64(params, path, "m"));
    if (kind == "synthetic")
        return synthetic_module(get_u64(params, path, "p"),
                                static_cast<unsigned>(get_u64(params, path, "a")),
                                get_u64_array(params, path, "orbits"), get_u64(params, path, "m"));
    if (kind != "genus0") throw ValidationError(path + "/kind", "unknown cover kind '" + kind + "'");
    if (!params.contains("punctures") || !params.at("punctures").is_array())
        throw ValidationError(path + "/punctures", "expected an array of names");
    std::vector<std::string> punctures;
    for (const auto& s : params.at("punctures")) {
        if (!s.is_string()) throw ValidationError(path + "/punctures", "expected string names");
        punctures.push_back(s.get<std::string>());
    }
    auto sigma = get_u64_array(params, path, "sigma");
    std::vector<std::size_t> perm(sigma.begin(), sigma.end());
    return build_pm_genus0(PuncturedCoverSpec::make(get_u64(params, path, "p"),
                                                    static_cast<unsigned>(get_u64(params, path, "a")),
                                                    punctures, perm, get_u64(params, path, "m")));
}

json run_factor(const json& params, std::uint64_t seed) {
    std::uint64_t p = get_u64(params, "/params", "p");
    unsigned b = static_cast<unsigned>(get_u64(params, "/params", "b"));
    std::uint64_t l = get_u64(params, "/params", "l");
    unsigned c = static_cast<unsigned>(get_u64_or(params, "/params", "c", 1));
    json out;
    out["d"] = multiplicative_order(l, p, b);
    std::vector<Poly> factors = factor_cyclotomic(p, b, l, seed);
    if (c > 1) {
        // use the joint factorization so the mod-l list stays aligned with
        // the canonically ordered lifted list
        auto cf = CycloFactorization::build(p, b, l, c, seed);
        factors = cf.factors_mod_l[b - 1];
        json lifted = json::array();
        for (const auto& f : cf.factors_lifted[b - 1]) lifted.push_back(poly_to_json(f));
        out["factorsLifted"] = lifted;
        out["linearFactor"] = poly_to_json(cf.linear_factor);
    }
    out["count"] = factors.size();
    json fl = json::array();
    for (const auto& f : factors) fl.push_back(poly_to_json(f));
    out["factorsModL"] = fl;
    return out;
}

json pm_to_json(const PmModule& pm) {
    json out;
    out["rank"] = pm.module.rank();
    out["l"] = pm.module.mod.l;
    out["c"] = pm.module.mod.c;
    out["sigma"] = matrix_to_json(pm.module.sigma);
    out["labels"] = pm.labels;
    out["punctures"] = pm.punctures;
    return out;
}

json run_build_pm(const json& params) {
    PmModule pm = build_pm_from_params(params, "/params");
    json out = pm_to_json(pm);
    if (params.contains("subset")) {
        auto subset = get_u64_array(params, "/params", "subset");
        Submodule s = pm_inclusion(pm, std::vector<std::size_t>(subset.begin(), subset.end()));
        out["inclusion"] = {{"basis", matrix_to_json(s.basis)},
                            {"sigmaStable", is_sigma_stable(pm.module, s.basis)}};
    }
    return out;
}

json decomposition_to_json(const Decomposition& dec) {
    json out;
    out["fPrime"] = dec.dims.f_prime;
    out["f"] = dec.dims.f;
    out["trivial"] = dec.trivial;
    out["components"] = dec.components;
    out["logSize"] = dec.log_size;
    return out;
}

json run_decompose(const json& params, std::uint64_t seed) {
    GModule m = params.contains("sigma") ? module_from_params(params, "/params")
                                         : build_pm_from_params(params, "/params").module;
    auto cf = CycloFactorization::build(m.p, m.a, m.mod.l, m.mod.c, seed);
    json out = decomposition_to_json(decompose(m, cf));
    out["rank"] = m.rank();
    return out;
}

json witness_to_json(const FieldWitness& w) {
    return json{{"u", w.u}, {"v", w.v}};
}

FieldInvariants invariants_from_json(const json& j, const std::string& path, std::uint64_t p,
                                     unsigned a, std::uint64_t l) {
    FieldInvariants inv;
    inv.p = p;
    inv.a = a;
    inv.l = l;
    inv.n0 = static_cast<unsigned>(get_u64(j, path, "n0"));
    auto nb = get_u64_array(j, path, "nb");
    if (nb.size() != a) throw ValidationError(path + "/nb", "expected one entry per b = 1..a");
    for (unsigned b = 1; b <= a; ++b) {
        inv.n_b.push_back(static_cast<unsigned>(nb[b - 1]));
        inv.d.push_back(multiplicative_order(l, p, b));
    }
    return inv;
}

json run_solvable(const json& params) {
    std::uint64_t p = get_u64(params, "/params", "p");
    unsigned a = static_cast<unsigned>(get_u64(params, "/params", "a"));
    json out;
    if (params.contains("perPrime")) {
        unsigned n = static_cast<unsigned>(get_u64(params, "/params", "n"));
        const auto& arr = params.at("perPrime");
        if (!arr.is_array() || arr.empty())
            throw ValidationError("/params/perPrime", "expected a nonempty array");
        std::vector<FieldInvariants> per;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string path = "/params/perPrime/" + std::to_string(i);
            per.push_back(invariants_from_json(arr[i], path, p, a, get_u64(arr[i], path, "l")));
        }
        auto rep = solvable_squarefree(n, per);
        out["theorem"] = "square-free";
        out["verdict"] = rep.verdict == Verdict::Yes ? "yes" : "no";
        if (rep.verdict == Verdict::Yes) {
            json ws = json::array();
            for (const auto& w : rep.witnesses_per_prime) ws.push_back(witness_to_json(w));
            out["witnessPerPrime"] = ws;
        }
    } else if (params.contains("e")) {
        unsigned c = static_cast<unsigned>(get_u64(params, "/params", "c"));
        std::uint64_t l = get_u64(params, "/params", "l");
        auto e64 = get_u64_array(params, "/params", "e");
        if (e64.size() != c) throw ValidationError("/params/e", "expected one entry per i = 1..c");
        std::vector<unsigned> e(e64.begin(), e64.end());
        GradedDims dims;
        auto fp = get_u64_array(params, "/params", "fPrime");
        dims.f_prime.assign(fp.begin(), fp.end());
        if (!params.contains("f") || !params.at("f").is_array())
            throw ValidationError("/params/f", "expected the f_bij table");
        std::vector<std::uint64_t> d;
        for (unsigned b = 1; b <= a; ++b) d.push_back(multiplicative_order(l, p, b));
        const auto& ftab = params.at("f");
        if (ftab.size() != a) throw ValidationError("/params/f", "expected one level per b = 1..a");
        dims.f.resize(a);
        for (std::size_t b = 0; b < a; ++b) {
            for (std::size_t j = 0; j < ftab[b].size(); ++j) {
                json row;
                row["fj"] = ftab[b][j];
                auto vals = get_u64_array(row, "/params/f/" + std::to_string(b) + "/" + std::to_string(j), "fj");
                dims.f[b].emplace_back(vals.begin(), vals.end());
            }
        }
        auto rep = solvable_prime_power(e, dims, d);
        out["theorem"] = "prime-power-sufficient";
        out["verdict"] = rep.verdict == Verdict::Yes ? "yes" : "sufficient-only-unknown";
        if (rep.verdict == Verdict::Yes)
            out["witness"] = {{"ePrime", rep.e_prime}, {"eDoublePrime", rep.e_double_prime}};
    } else {
        unsigned n = static_cast<unsigned>(get_u64(params, "/params", "n"));
        std::uint64_t l = get_u64(params, "/params", "l");
        if (!params.contains("invariants"))
            throw ValidationError("/params/invariants", "missing required field");
        auto inv = invariants_from_json(params.at("invariants"), "/params/invariants", p, a, l);
        auto rep = solvable_field(n, inv);
        out["theorem"] = "field-criterion";
        out["verdict"] = rep.verdict == Verdict::Yes ? "yes" : "no";
        if (rep.witness) out["witness"] = witness_to_json(*rep.witness);
    }
    return out;
}

json run_count(const json& params) {
    std::uint64_t l = get_u64(params, "/params", "l");
    auto d = get_u64_array(params, "/params", "d");
    unsigned n0 = static_cast<unsigned>(get_u64(params, "/params", "n0"));
    unsigned u = static_cast<unsigned>(get_u64(params, "/params", "u"));
    auto read_table = [&](const std::string& key) {
        if (!params.contains(key) || !params.at(key).is_array())
            throw ValidationError("/params/" + key, "expected an array of per-level arrays");
        std::vector<std::vector<unsigned>> t;
        const auto& arr = params.at(key);
        for (std::size_t b = 0; b < arr.size(); ++b) {
            json row;
            row["r"] = arr[b];
            auto vals = get_u64_array(row, "/params/" + key + "/" + std::to_string(b), "r");
            t.emplace_back(vals.begin(), vals.end());
        }
        return t;
    };
    auto gamma = read_table("gamma");
    auto gamma_prime = read_table("gammaPrime");
    SubmoduleCount sc;
    try {
        sc = count_nsext(gamma, gamma_prime, n0, u, l, d);
    } catch (const std::invalid_argument& e) {
        throw ValidationError("/params", e.what());
    }
    json out;
    out["theorem"] = "nsext-count";
    out["count"] = sc.value.str();
    json fs = json::array();
    for (const auto& f : sc.component_factors) fs.push_back(f.str());
    out["componentFactors"] = fs;
    out["fixedFactor"] = sc.fixed_factor.str();
    return out;
}

json run_oracle_count(const json& params, std::uint64_t seed, std::uint64_t size_bound) {
    GModule m = params.contains("sigma") ? module_from_params(params, "/params")
                                         : build_pm_from_params(params, "/params").module;
    auto cf = CycloFactorization::build(m.p, m.a, m.mod.l, m.mod.c, seed);
    OracleOptions opt;
    opt.size_bound = size_bound;
    auto inv = enumerate_g_submodules(m, cf, opt);
    json out;
    out["totalSubmodules"] = inv.entries.size();
    if (params.contains("shape")) {
        const auto& shape = params.at("shape");
        Decomposition target;
        target.c = m.mod.c;
        auto triv = get_u64_array(shape, "/params/shape", "trivial");
        if (triv.size() != m.mod.c)
            throw ValidationError("/params/shape/trivial", "expected one entry per i = 1..c");
        target.trivial.assign(triv.begin(), triv.end());
        if (!shape.contains("components") || !shape.at("components").is_array())
            throw ValidationError("/params/shape/components", "expected [b][j][i] table");
        const auto& comp = shape.at("components");
        if (comp.size() != m.a)
            throw ValidationError("/params/shape/components", "expected one level per b = 1..a");
        target.components.resize(m.a);
        for (std::size_t b = 0; b < m.a; ++b) {
            if (comp[b].size() != cf.r[b])
                throw ValidationError("/params/shape/components/" + std::to_string(b),
                                      "expected one entry per factor (j = 1..r_b)");
            for (std::size_t j = 0; j < cf.r[b]; ++j) {
                json row;
                row["m"] = comp[b][j];
                auto vals = get_u64_array(row,
                                          "/params/shape/components/" + std::to_string(b) + "/" +
                                              std::to_string(j),
                                          "m");
                if (vals.size() != m.mod.c)
                    throw ValidationError("/params/shape/components", "expected c multiplicities");
                target.components[b].emplace_back(vals.begin(), vals.end());
            }
        }
        out["count"] = count_isomorphic(inv, target);
    }
    return out;
}

json run_t1_check(const json& params, std::uint64_t size_bound) {
    auto factors = get_u64_array(params, "/params", "invariantFactors");
    if (!params.contains("elements") || !params.at("elements").is_array())
        throw ValidationError("/params/elements", "expected an array of vectors");
    std::vector<std::vector<std::uint64_t>> elements;
    const auto& arr = params.at("elements");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        json row;
        row["e"] = arr[i];
        elements.push_back(get_u64_array(row, "/params/elements/" + std::to_string(i), "e"));
    }
    json out;
    out["t1"] = is_type_t1(factors, elements, size_bound);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedkit: exact solvability and counting for prime-to-p embedding problems "
                 "over cyclic p-group covers"};
    app.require_subcommand(1);
    std::string input_file;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t size_bound = 1ULL << 20;
    app.add_option("--input", input_file, "Read the JSON job from FILE instead of stdin");
    app.add_option("--seed", seed, "Seed for randomized factor splitting");
    app.add_option("--size-bound", size_bound, "Enumeration refusal bound");

    const std::vector<std::string> names = {"factor",      "build-pm", "decompose", "solvable",
                                            "count",       "oracle-count", "t1-check"};
    for (const auto& n : names) app.add_subcommand(n)->fallthrough();
    CLI11_PARSE(app, argc, argv);
    std::string sub = app.get_subcommands().front()->get_name();

    json params;
    try {
        if (!input_file.empty()) {
            std::ifstream in(input_file);
            if (!in) {
                std::cerr << "embedkit: cannot open " << input_file << "\n";
                return kExitValidation;
            }
            in >> params;
        } else {
            std::cin >> params;
        }
    } catch (const json::exception& e) {
        std::cerr << "embedkit: invalid JSON input: " << e.what() << "\n";
        return kExitValidation;
    }

    json report;
    report["input"] = {{"subcommand", sub}, {"params", params}, {"seed", seed}};
    try {
        json result;
        if (sub == "factor") result = run_factor(params, seed);
        else if (sub == "build-pm") result = run_build_pm(params);
        else if (sub == "decompose") result = run_decompose(params, seed);
        else if (sub == "solvable") result = run_solvable(params);
        else if (sub == "count") result = run_count(params);
        else if (sub == "oracle-count") result = run_oracle_count(params, seed, size_bound);
        else if (sub == "t1-check") result = run_t1_check(params, size_bound);
        report["result"] = result;
    } catch (const SizeBoundError& e) {
        std::cerr << "embedkit: refused: " << e.what() << "\n";
        return kExitSizeBound;
    } catch (const ValidationError& e) {
        std::cerr << "embedkit: validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "embedkit: error: " << e.what() << "\n";
        return kExitValidation;
    }
    std::cout << report.dump(2) << std::endl;
    return 0;
}
