// matdim: exact computations around exponent semigroups of rational
// matrices and the matricial dimension of numerical semigroups.
//
// Exit codes: 0 success, 1 verification or golden-table failure,
// 2 malformed input.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expsg/bounds.hpp"
#include "expsg/cmm.hpp"
#include "expsg/constructions.hpp"
#include "expsg/io.hpp"
#include "expsg/pipeline.hpp"

using namespace expsg;

namespace {

std::vector<long> parse_generator_list(const std::string& text) {
    std::vector<long> gens;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(token, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != token.size()) throw ParseError("bad generator: " + token);
        gens.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            flush();
        } else {
            token += ch;
        }
    }
    flush();
    if (gens.empty()) throw ParseError("empty generator list");
    return gens;
}

NumericalSemigroup numerical_from(const std::string& text) {
    Subsemigroup s = from_generators(parse_generator_list(text));
    if (!s.is_numerical())
        throw ParseError("generators must have gcd 1 (got a scaled subsemigroup)");
    return s.core();
}

struct GlobalPaths {
    std::string store = "data/certificates";
    std::string golden = "data/reference_dimensions.json";
};

int run_analyze(const std::string& gens_text, const std::string& format, const GlobalPaths& paths,
                bool search) {
    Subsemigroup sub = from_generators(parse_generator_list(gens_text));
    if (!sub.is_numerical()) {
        std::cout << "scaled subsemigroup: " << sub.scale() << " * core\n";
        if (auto cls = classify_low_multiplicity(sub))
            std::cout << "matricial dimension " << *cls << " (cyclic class)\n";
        else
            std::cout << "matricial dimension undetermined for scaled semigroups\n";
        return 0;
    }
    const NumericalSemigroup& s = sub.core();
    PipelineConfig config;
    config.enable_cmm = search;
    CertificateStore store(paths.store);
    DimensionResult r = resolve_dimension(s, config, &store);
    if (format == "json") {
        std::cout << dimension_result_to_json(r).dump(2) << "\n";
        return 0;
    }
    std::cout << "generators:      " << detail::gens_str(s) << "\n";
    std::cout << "multiplicity:    " << s.multiplicity() << "\n";
    std::cout << "frobenius:       " << s.frobenius() << "\n";
    std::cout << "genus:           " << s.genus() << "\n";
    if (!s.is_naturals()) {
        std::cout << "apery(m):       ";
        for (long a : s.apery_set(s.multiplicity())) std::cout << " " << a;
        std::cout << "\n";
        std::cout << "small elements: ";
        auto small = s.small_elements();
        if (small.empty()) std::cout << " (none)";
        for (long n : small) std::cout << " " << n;
        std::cout << "\n";
        std::cout << "gcd of small:    " << small_elements_gcd(s) << "\n";
    }
    std::cout << "bounds:          [" << r.bounds.lower << ", " << r.bounds.upper << "]\n";
    for (const auto& reason : r.bounds.reasons)
        std::cout << "  - " << bound_reason_name(reason.tag) << " -> " << reason.value << " ("
                  << reason.detail << ")\n";
    if (r.exact) {
        std::cout << "exact dimension: " << *r.exact << " via " << r.certificate->method << "\n";
    } else {
        std::cout << "exact dimension: unresolved\n";
    }
    return 0;
}

int run_expsg(const std::string& matrix_path, long cap, const std::string& format) {
    RationalMatrix a = matrix_from_json(load_json_file(matrix_path));
    ExponentSemigroupResult res = exponent_semigroup(a, cap);
    if (format == "json") {
        Json j;
        j["cap"] = res.cap;
        j["members"] = res.members;
        j["certified_tail_from"] =
            res.certified_tail_from ? Json(*res.certified_tail_from) : Json(nullptr);
        j["truncated"] = res.truncated;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "members up to " << res.cap << ":";
    for (long n : res.members) std::cout << " " << n;
    std::cout << "\n";
    if (res.certified_tail_from)
        std::cout << "all exponents >= " << *res.certified_tail_from << " are members\n";
    else
        std::cout << "no tail certificate within the cap (truncated)\n";
    return 0;
}

int run_verify(const std::string& matrix_path, const std::string& gens_text) {
    RationalMatrix a = matrix_from_json(load_json_file(matrix_path));
    NumericalSemigroup s = numerical_from(gens_text);
    VerificationResult v = verify_representation(a, s);
    if (v.ok) {
        std::cout << "verified: the matrix represents " << detail::gens_str(s) << "\n";
        return 0;
    }
    std::cout << "failed: first disagreement at exponent " << *v.witness << "\n";
    return 1;
}

void emit_certificate(const Certificate& cert) {
    std::cout << certificate_to_json(cert).dump(2) << "\n";
}

int run_cmm(const std::string& gens_text, int dim, const std::optional<std::string>& config_path,
            bool with_random, const std::optional<std::string>& model_matrix,
            const std::optional<std::string>& model_gens, const GlobalPaths& paths, int workers,
            bool save, const std::optional<std::uint64_t>& seed) {
    NumericalSemigroup s = numerical_from(gens_text);
    CmmConfig cfg;
    if (config_path) cfg = cmm_config_from_json(load_json_file(*config_path));
    if (seed) cfg.seed = *seed;
    if (model_matrix) {
        if (!model_gens) throw ParseError("--model-matrix needs --model-semigroup");
        RationalMatrix cert = matrix_from_json(load_json_file(*model_matrix));
        NumericalSemigroup model = numerical_from(*model_gens);
        for (const auto& f : candidate_polynomials_model(s, model, cert)) cfg.model_polys.push_back(f);
    }
    auto finish = [&](const Certificate& cert) {
        if (save) CertificateStore(paths.store).append(cert);
        emit_certificate(cert);
        return 0;
    };
    if (auto r = cmm_search(s, dim, cfg))
        return finish({s, r->matrix, "cmm", Json{{"poly", r->poly.str()}, {"d", dim}}});
    if (with_random || cfg.strategy_random) {
        auto r = random_triangular_search_parallel(s, dim, cfg, workers);
        if (r) {
            Json params{{"poly", r->poly.str()}, {"tested", r->tested}, {"seed", cfg.seed}};
            return finish({s, r->matrix, "random", params});
        }
    }
    std::cout << "no certificate found at dimension " << dim << "\n";
    return 1;
}

int run_catalog(std::optional<long> frobenius, std::optional<long> genus, bool check_golden,
                const std::string& format, const GlobalPaths& paths, int workers) {
    if (frobenius.has_value() == genus.has_value())
        throw ParseError("choose exactly one of --frobenius or --genus");
    PipelineConfig config;
    config.workers = workers;
    CertificateStore store(paths.store);
    CatalogMode mode = frobenius ? CatalogMode::by_frobenius : CatalogMode::by_genus;
    long value = frobenius ? *frobenius : *genus;
    if ((frobenius && value > 10) || (genus && value > 6))
        std::cerr << "note: outside the reference range; expect unresolved intervals\n";
    CatalogReport report = catalog(mode, value, config, &store);
    if (format == "json")
        std::cout << catalog_to_json(report).dump(2) << "\n";
    else if (format == "csv")
        std::cout << catalog_to_csv(report);
    else
        std::cout << catalog_to_markdown(report);
    if (check_golden) {
        GoldenCheck check = check_against_reference(report, load_reference_dimensions(paths.golden));
        if (!check.ok) {
            for (const auto& m : check.mismatches) std::cerr << "golden mismatch: " << m << "\n";
            return 1;
        }
        std::cerr << "golden check passed (" << report.results.size() << " semigroups)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "matdim: exact toolkit for exponent semigroups S(A) = {n : A^n is an integer matrix}\n"
        "of rational matrices and for the matricial dimension of numerical semigroups (the\n"
        "smallest d with S = S(A) for a d x d rational A)."};
    app.require_subcommand(1);

    GlobalPaths paths;
    app.add_option("--store", paths.store, "certificate store directory")->capture_default_str();
    app.add_option("--golden", paths.golden, "reference dimension table (JSON)")
        ->capture_default_str();

    // analyze
    std::string analyze_gens, analyze_format = "text";
    bool analyze_no_search = false;
    auto* analyze = app.add_subcommand(
        "analyze", "invariants (multiplicity, Frobenius number, genus, Apery set, small "
                   "elements) and the matricial dimension of a numerical semigroup");
    analyze->add_option("generators", analyze_gens, "comma-separated generators, e.g. 4,5,7")
        ->required();
    analyze->add_option("--format", analyze_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_flag("--no-search", analyze_no_search, "skip the companion-matrix search");

    // expsg
    std::string expsg_matrix, expsg_format = "text";
    long expsg_cap = 0;
    auto* expsg_cmd = app.add_subcommand(
        "expsg", "membership of the exponent semigroup of a matrix up to a cap, with a "
                 "certified tail when a full run of consecutive members appears");
    expsg_cmd->add_option("--matrix", expsg_matrix, "matrix JSON file")->required();
    expsg_cmd->add_option("--cap", expsg_cap, "largest exponent to test")->required();
    expsg_cmd->add_option("--format", expsg_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // verify
    std::string verify_matrix, verify_gens;
    auto* verify = app.add_subcommand(
        "verify", "decide exactly whether S(matrix) equals the given numerical semigroup; "
                  "prints the first disagreeing exponent on failure");
    verify->add_option("--matrix", verify_matrix, "matrix JSON file")->required();
    verify->add_option("--semigroup", verify_gens, "comma-separated generators")->required();

    // construct
    auto* construct = app.add_subcommand("construct", "emit representing-matrix certificates");
    construct->require_subcommand(1);

    std::string cycle_gens;
    long cycle_dim = 0, cycle_prime = 2;
    auto* c_cycle = construct->add_subcommand(
        "cycle", "weighted cycle matrix of size d for any d in S, entries from the Apery set");
    c_cycle->add_option("--semigroup", cycle_gens)->required();
    c_cycle->add_option("--dim", cycle_dim)->required();
    c_cycle->add_option("--prime", cycle_prime)->capture_default_str();

    long union_a = 0, union_b = 0;
    std::optional<long> union_prime;
    std::optional<std::string> union_z;
    auto* c_union = construct->add_subcommand(
        "union", "2x2 certificate for the union of a cyclic and an ordinary semigroup");
    c_union->add_option("--a", union_a, "cyclic part <a>")->required();
    c_union->add_option("--b", union_b, "ordinary part {0, b, b+1, ...}")->required();
    c_union->add_option("--prime", union_prime, "prime p = 1 (mod a)");
    c_union->add_option("--z", union_z, "element of order a mod p^b");

    long ordinary_b = 0, ordinary_prime = 2;
    auto* c_ordinary =
        construct->add_subcommand("ordinary", "2x2 certificate for {0, b, b+1, ...}");
    c_ordinary->add_option("--b", ordinary_b)->required();
    c_ordinary->add_option("--prime", ordinary_prime)->capture_default_str();

    long cyclic_a = 0;
    std::optional<long> cyclic_prime;
    auto* c_cyclic = construct->add_subcommand("cyclic", "2x2 matrix with S(A) = <a>");
    c_cyclic->add_option("--a", cyclic_a)->required();
    c_cyclic->add_option("--prime", cyclic_prime, "prime p = 1 (mod a)");

    std::string inter_parts;
    long inter_prime = 2;
    auto* c_inter = construct->add_subcommand(
        "intersection", "block-diagonal certificate for an intersection of numerical "
                        "semigroups; parts as gens:dim separated by semicolons");
    c_inter->add_option("--parts", inter_parts, "e.g. \"2,31:2;3,31:3;5,31:5\"")->required();
    c_inter->add_option("--prime", inter_prime)->capture_default_str();

    std::string quot_matrix, quot_gens;
    long quot_g = 0;
    auto* c_quot = construct->add_subcommand(
        "quotient", "raise a representing matrix to the g-th power, realizing S/g");
    c_quot->add_option("--matrix", quot_matrix)->required();
    c_quot->add_option("--g", quot_g)->required();
    c_quot->add_option("--semigroup", quot_gens, "expected quotient semigroup")->required();

    // cmm
    std::string cmm_gens;
    int cmm_dim = 0, cmm_workers = 1;
    std::optional<std::string> cmm_config_path, cmm_model_matrix, cmm_model_gens;
    bool cmm_random = false, cmm_save = false;
    auto* cmm = app.add_subcommand(
        "cmm", "companion-matrix search: candidate characteristic polynomials reduced to "
               "integer difference-constraint problems over diagonal conjugators, plus an "
               "optional seeded lower-triangular random search");
    cmm->add_option("--semigroup", cmm_gens)->required();
    cmm->add_option("--dim", cmm_dim)->required();
    cmm->add_option("--config", cmm_config_path, "CmmConfig JSON file");
    cmm->add_flag("--random", cmm_random, "fall back to the random triangular search");
    cmm->add_option("--model-matrix", cmm_model_matrix, "model certificate matrix JSON");
    cmm->add_option("--model-semigroup", cmm_model_gens, "model semigroup generators");
    cmm->add_option("--workers", cmm_workers, "random-search workers")->capture_default_str();
    cmm->add_flag("--save", cmm_save, "append found certificates to the store");
    std::optional<std::uint64_t> cmm_seed;
    cmm->add_option("--seed", cmm_seed, "random-search seed (default fixed, never time-based)");

    // catalog
    std::optional<long> cat_frobenius, cat_genus;
    bool cat_golden = false;
    std::string cat_format = "md";
    int cat_workers = 1;
    auto* cat = app.add_subcommand(
        "catalog", "resolve the matricial dimension of every numerical semigroup with the "
                   "given Frobenius number or genus and print a report");
    cat->add_option("--frobenius", cat_frobenius, "Frobenius number (golden range 1..10)");
    cat->add_option("--genus", cat_genus, "genus (golden range 0..6)");
    cat->add_flag("--check-golden", cat_golden, "diff against the reference table");
    cat->add_option("--format", cat_format, "md|csv|json")
        ->check(CLI::IsMember({"md", "csv", "json"}));
    cat->add_option("--workers", cat_workers)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return run_analyze(analyze_gens, analyze_format, paths, !analyze_no_search);
        if (*expsg_cmd) return run_expsg(expsg_matrix, expsg_cap, expsg_format);
        if (*verify) return run_verify(verify_matrix, verify_gens);
        if (*c_cycle) {
            NumericalSemigroup s = numerical_from(cycle_gens);
            RationalMatrix a = cycle_matrix({s, cycle_dim, cycle_prime});
            if (!verify_representation(a, s).ok) return 1;
            emit_certificate({s, a, "cycle", Json{{"d", cycle_dim}, {"p", cycle_prime}}});
            return 0;
        }
        if (*c_union) {
            std::optional<BigInt> z;
            if (union_z) z = BigInt(*union_z);
            TwoByTwoSpec spec = two_by_two_union_spec(union_a, union_b, union_prime, z);
            Subsemigroup target = two_by_two_target(spec);
            RationalMatrix a = two_by_two(spec);
            if (!verify_representation(a, target).ok) return 1;
            emit_certificate({target.core(), a, "two_by_two",
                              Json{{"kind", "union"}, {"a", union_a}, {"b", union_b},
                                   {"p", spec.p}, {"z", spec.z.str()}}});
            return 0;
        }
        if (*c_ordinary) {
            TwoByTwoSpec spec = two_by_two_ordinary_spec(ordinary_b, ordinary_prime);
            Subsemigroup target = two_by_two_target(spec);
            RationalMatrix a = two_by_two(spec);
            if (!verify_representation(a, target).ok) return 1;
            emit_certificate({target.core(), a, "two_by_two",
                              Json{{"kind", "ordinary"}, {"b", ordinary_b}, {"p", spec.p}}});
            return 0;
        }
        if (*c_cyclic) {
            TwoByTwoSpec spec = two_by_two_cyclic_spec(cyclic_a, cyclic_prime);
            RationalMatrix a = two_by_two(spec);
            // <a> is not numerical; check a window of powers exactly.
            PowerStream stream(a);
            for (long n = 1; n <= 3 * cyclic_a; ++n)
                if (stream.next().second.is_integral() != (n % cyclic_a == 0)) return 1;
            Json j;
            j["semigroup"] = Json{{"cyclic", cyclic_a}};
            j["matrix"] = matrix_to_json(a);
            j["method"] = "two_by_two";
            j["params"] = Json{{"kind", "cyclic"}, {"a", cyclic_a}, {"p", spec.p},
                               {"z", spec.z.str()}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*c_inter) {
            std::vector<std::pair<NumericalSemigroup, long>> parts;
            std::vector<Subsemigroup> subs;
            std::string token;
            std::istringstream in(inter_parts);
            while (std::getline(in, token, ';')) {
                auto colon = token.rfind(':');
                if (colon == std::string::npos) throw ParseError("parts need gens:dim");
                NumericalSemigroup s = numerical_from(token.substr(0, colon));
                long d = std::stol(token.substr(colon + 1));
                parts.emplace_back(s, d);
                subs.push_back(Subsemigroup::numerical(s));
            }
            Subsemigroup target = intersect(subs);
            RationalMatrix a = intersection_matrix(parts, inter_prime);
            if (!verify_representation(a, target).ok) return 1;
            emit_certificate({target.core(), a, "intersection",
                              Json{{"parts", inter_parts}, {"p", inter_prime}}});
            return 0;
        }
        if (*c_quot) {
            RationalMatrix a = matrix_from_json(load_json_file(quot_matrix));
            NumericalSemigroup s = numerical_from(quot_gens);
            RationalMatrix q = quotient_matrix(a, quot_g);
            if (!verify_representation(q, s).ok) return 1;
            emit_certificate({s, q, "quotient", Json{{"g", quot_g}}});
            return 0;
        }
        if (*cmm)
            return run_cmm(cmm_gens, cmm_dim, cmm_config_path, cmm_random, cmm_model_matrix,
                           cmm_model_gens, paths, cmm_workers, cmm_save, cmm_seed);
        if (*cat)
            return run_catalog(cat_frobenius, cat_genus, cat_golden, cat_format, paths,
                               cat_workers);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
