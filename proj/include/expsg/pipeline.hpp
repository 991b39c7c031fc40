#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "expsg/bounds.hpp"
#include "expsg/cmm.hpp"
#include "expsg/constructions.hpp"
#include "expsg/io.hpp"

namespace expsg {

struct TraceEntry {
    std::string method;
    std::string params;
    long lower;
    long upper;
    std::string outcome;
};

struct DimensionResult {
    NumericalSemigroup semigroup;
    DimensionBounds bounds;
    std::optional<long> exact;
    std::optional<Certificate> certificate;
    std::vector<TraceEntry> trace;
};

// Directory of certificate records, one JSON file per semigroup, filename
// derived from the canonical generators.  Certificates are re-verified on
// every load; a record that fails verification is reported, never used.
class CertificateStore {
public:
    explicit CertificateStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<Certificate> lookup(const NumericalSemigroup& s) const {
        std::filesystem::path file = dir_ / (generators_key(s) + ".json");
        if (!std::filesystem::exists(file)) return std::nullopt;
        Certificate c = certificate_from_json(load_json_file(file.string()));
        if (c.semigroup != s) return std::nullopt;
        if (!verify_representation(c.matrix, c.semigroup)) return std::nullopt;
        return c;
    }

    void append(const Certificate& c) const {
        std::filesystem::create_directories(dir_);
        std::filesystem::path file = dir_ / (generators_key(c.semigroup) + ".json");
        if (std::filesystem::exists(file)) {
            // Keep the smaller certificate.
            Certificate old = certificate_from_json(load_json_file(file.string()));
            if (old.matrix.dim() <= c.matrix.dim()) return;
        }
        write_json_file(file.string(), certificate_to_json(c));
    }

    std::vector<std::filesystem::path> files() const {
        std::vector<std::filesystem::path> out;
        if (!std::filesystem::exists(dir_)) return out;
        for (const auto& e : std::filesystem::directory_iterator(dir_))
            if (e.path().extension() == ".json") out.push_back(e.path());
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::filesystem::path dir_;
};

struct PipelineConfig {
    CmmConfig cmm;
    long cycle_prime = 2;
    bool enable_cmm = true;
    int workers = 1;
};

// JSON face of CmmConfig, field for field; strategies appear as a string
// array subset of {"divisor", "model", "box", "random"}.
inline Json cmm_config_to_json(const CmmConfig& c) {
    Json strategies = Json::array();
    if (c.strategy_divisor) strategies.push_back("divisor");
    if (c.strategy_model) strategies.push_back("model");
    if (c.strategy_box) strategies.push_back("box");
    if (c.strategy_random) strategies.push_back("random");
    Json j;
    j["base"] = c.base;
    j["extra_bases"] = c.extra_bases;
    j["exponent_cap"] = c.exponent_cap ? Json(*c.exponent_cap) : Json(nullptr);
    j["strategies"] = strategies;
    j["coefficient_gcd_filter"] = c.coefficient_gcd_filter;
    j["box_limit_sparse"] = c.box_limit_sparse;
    j["box_limit_d2"] = c.box_limit_d2;
    j["box_limit_d3"] = c.box_limit_d3;
    j["box_limit_d4"] = c.box_limit_d4;
    j["random_budget"] = c.random_budget;
    j["seed"] = c.seed;
    j["random_coeff_range"] = c.random_coeff_range;
    j["random_exponent_max"] = c.random_exponent_max;
    j["entry_bit_limit"] = c.entry_bit_limit;
    return j;
}

inline CmmConfig cmm_config_from_json(const Json& j) {
    CmmConfig c;
    c.base = j.value("base", c.base);
    if (j.contains("extra_bases")) c.extra_bases = j["extra_bases"].get<std::vector<long>>();
    if (j.contains("exponent_cap") && !j["exponent_cap"].is_null())
        c.exponent_cap = j["exponent_cap"].get<long>();
    if (j.contains("strategies")) {
        c.strategy_divisor = c.strategy_model = c.strategy_box = c.strategy_random = false;
        for (const auto& s : j["strategies"]) {
            std::string name = s.get<std::string>();
            if (name == "divisor") c.strategy_divisor = true;
            else if (name == "model") c.strategy_model = true;
            else if (name == "box") c.strategy_box = true;
            else if (name == "random") c.strategy_random = true;
            else throw ParseError("unknown strategy: " + name);
        }
    }
    c.coefficient_gcd_filter = j.value("coefficient_gcd_filter", c.coefficient_gcd_filter);
    c.box_limit_sparse = j.value("box_limit_sparse", c.box_limit_sparse);
    c.box_limit_d2 = j.value("box_limit_d2", c.box_limit_d2);
    c.box_limit_d3 = j.value("box_limit_d3", c.box_limit_d3);
    c.box_limit_d4 = j.value("box_limit_d4", c.box_limit_d4);
    c.random_budget = j.value("random_budget", c.random_budget);
    c.seed = j.value("seed", c.seed);
    c.random_coeff_range = j.value("random_coeff_range", c.random_coeff_range);
    c.random_exponent_max = j.value("random_exponent_max", c.random_exponent_max);
    c.entry_bit_limit = j.value("entry_bit_limit", c.entry_bit_limit);
    return c;
}

namespace detail {

inline std::string gens_str(const NumericalSemigroup& s) {
    std::string out;
    for (long g : s.min_generators()) {
        if (!out.empty()) out += ",";
        out += std::to_string(g);
    }
    return out;
}

// Materializes the certificate behind a classification verdict.
inline std::optional<Certificate> classification_certificate(const NumericalSemigroup& s,
                                                             long dim, long prime) {
    if (s.is_naturals()) {
        RationalMatrix a = cycle_matrix({s, 1, prime});
        return Certificate{s, a, "cycle", Json{{"d", 1}, {"p", prime}}};
    }
    if (dim == 2) {
        if (auto b = recognize_ordinary(s)) {
            TwoByTwoSpec spec = two_by_two_ordinary_spec(*b, prime);
            return Certificate{s, two_by_two(spec), "two_by_two",
                               Json{{"kind", "ordinary"}, {"b", *b}, {"p", spec.p}}};
        }
        if (auto ab = recognize_cyclic_union_ordinary(Subsemigroup::numerical(s))) {
            auto [a, b] = *ab;
            TwoByTwoSpec spec = two_by_two_union_spec(a, b);
            return Certificate{s, two_by_two(spec), "two_by_two",
                               Json{{"kind", "union"}, {"a", a}, {"b", b}, {"p", spec.p},
                                    {"z", spec.z.str()}}};
        }
        return std::nullopt;
    }
    if (dim == s.multiplicity()) {
        RationalMatrix a = cycle_matrix({s, dim, prime});
        return Certificate{s, a, "cycle", Json{{"d", dim}, {"p", prime}}};
    }
    return std::nullopt;
}

}  // namespace detail

// The dimension-resolution driver: classification, combined bounds, the
// recognized dimension-2 route, stored certificates and the
// companion-matrix search from the lower bound upward, and finally the
// cycle construction at d = m(S).  Exact values are only reported when
// the bounds meet, and every certificate is re-verified before being
// attached.
inline DimensionResult resolve_dimension(const NumericalSemigroup& s, const PipelineConfig& config,
                                         const CertificateStore* store = nullptr) {
    DimensionResult res;
    res.semigroup = s;
    res.bounds = combine_bounds(s);
    long lower = res.bounds.lower;
    long upper = res.bounds.upper;
    auto trace = [&](const std::string& method, const std::string& params, const std::string& outcome) {
        res.trace.push_back({method, params, lower, upper, outcome});
    };
    trace("bounds", "", "lower " + std::to_string(lower) + ", upper " + std::to_string(upper));

    std::optional<Certificate> cert;
    auto classcert = [&](long dim) {
        cert = detail::classification_certificate(s, dim, config.cycle_prime);
        if (cert && !verify_representation(cert->matrix, s).ok)
            throw std::logic_error("classification certificate failed verification");
    };

    if (auto cls = classify_low_multiplicity(Subsemigroup::numerical(s))) {
        classcert(*cls);
        if (cert) {
            upper = std::min(upper, *cls);
            trace("classify", "class dimension " + std::to_string(*cls), "certificate verified");
        }
    }

    if (!cert) {
        std::optional<Certificate> stored = store ? store->lookup(s) : std::nullopt;
        for (long d = lower; d < upper && !cert; ++d) {
            if (stored && stored->matrix.dim() == d) {
                cert = stored;
                upper = d;
                trace("store", "d " + std::to_string(d), "stored certificate verified");
                break;
            }
            if (!config.enable_cmm) continue;
            auto r = cmm_search(s, static_cast<int>(d), config.cmm);
            if (r) {
                cert = Certificate{s, r->matrix, "cmm", Json{{"poly", r->poly.str()}, {"d", d}}};
                upper = d;
                trace("cmm", "d " + std::to_string(d) + ", f = " + r->poly.str(),
                      "certificate verified");
            } else {
                trace("cmm", "d " + std::to_string(d), "no candidate feasible");
            }
        }
    }

    if (!cert) {
        long m = s.multiplicity();
        RationalMatrix a = cycle_matrix({s, m, config.cycle_prime});
        if (!verify_representation(a, s).ok)
            throw std::logic_error("cycle certificate failed verification");
        cert = Certificate{s, a, "cycle", Json{{"d", m}, {"p", config.cycle_prime}}};
        trace("cycle", "d " + std::to_string(m), "certificate verified");
    }

    res.bounds.upper = upper;
    if (cert)
        res.bounds.reasons.push_back(
            {BoundReason::Tag::construction, cert->method + " certificate", cert->matrix.dim()});
    if (lower == upper) {
        res.exact = lower;
        res.certificate = cert;
    }
    return res;
}

enum class CatalogMode { by_frobenius, by_genus };

struct CatalogReport {
    CatalogMode mode;
    long value = 0;
    std::vector<DimensionResult> results;  // sorted by canonical generators
    std::map<long, long> dimension_counts;
    long unresolved = 0;
};

inline CatalogReport catalog(CatalogMode mode, long value, const PipelineConfig& config,
                             const CertificateStore* store = nullptr) {
    std::vector<NumericalSemigroup> semigroups =
        mode == CatalogMode::by_frobenius ? enumerate_by_frobenius(value) : enumerate_by_genus(value);
    CatalogReport report;
    report.mode = mode;
    report.value = value;
    report.results.resize(semigroups.size());

    int workers = std::max(1, config.workers);
    if (workers == 1) {
        for (size_t i = 0; i < semigroups.size(); ++i)
            report.results[i] = resolve_dimension(semigroups[i], config, store);
    } else {
        std::mutex mx;
        size_t next = 0;
        auto run = [&] {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lock(mx);
                    if (next >= semigroups.size()) return;
                    i = next++;
                }
                report.results[i] = resolve_dimension(semigroups[i], config, store);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    for (const auto& r : report.results) {
        if (r.exact) {
            ++report.dimension_counts[*r.exact];
        } else {
            ++report.unresolved;
        }
    }
    return report;
}

inline Json dimension_result_to_json(const DimensionResult& r) {
    Json j;
    j["semigroup"] = semigroup_to_json(r.semigroup);
    Json reasons = Json::array();
    for (const auto& reason : r.bounds.reasons)
        reasons.push_back(Json{{"tag", bound_reason_name(reason.tag)},
                               {"detail", reason.detail},
                               {"value", reason.value}});
    j["bounds"] = Json{{"lower", r.bounds.lower}, {"upper", r.bounds.upper}, {"reasons", reasons}};
    j["exact"] = r.exact ? Json(*r.exact) : Json(nullptr);
    j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
    Json trace = Json::array();
    for (const auto& t : r.trace)
        trace.push_back(Json{{"method", t.method},
                             {"params", t.params},
                             {"lower", t.lower},
                             {"upper", t.upper},
                             {"outcome", t.outcome}});
    j["trace"] = trace;
    return j;
}

inline Json catalog_to_json(const CatalogReport& report) {
    Json j = Json::array();
    for (const auto& r : report.results) j.push_back(dimension_result_to_json(r));
    return j;
}

inline std::string catalog_row_method(const DimensionResult& r) {
    if (!r.exact) return "unresolved";
    return r.certificate ? r.certificate->method : "?";
}

inline std::string catalog_to_markdown(const CatalogReport& report) {
    std::ostringstream out;
    out << "| generators | F | genus | m | lower | upper | exact | method |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : report.results) {
        const NumericalSemigroup& s = r.semigroup;
        out << "| " << detail::gens_str(s) << " | " << s.frobenius() << " | " << s.genus() << " | "
            << s.multiplicity() << " | " << r.bounds.lower << " | " << r.bounds.upper << " | "
            << (r.exact ? std::to_string(*r.exact) : std::string("-")) << " | "
            << catalog_row_method(r) << " |\n";
    }
    out << "\nsemigroups: " << report.results.size();
    out << ", by dimension:";
    for (const auto& [dim, count] : report.dimension_counts) out << " " << dim << ":" << count;
    if (report.unresolved) out << ", unresolved: " << report.unresolved;
    out << "\n";
    return out.str();
}

inline std::string catalog_to_csv(const CatalogReport& report) {
    std::ostringstream out;
    out << "generators,frobenius,genus,multiplicity,lower,upper,exact,method\n";
    for (const auto& r : report.results) {
        const NumericalSemigroup& s = r.semigroup;
        out << "\"" << detail::gens_str(s) << "\"," << s.frobenius() << "," << s.genus() << ","
            << s.multiplicity() << "," << r.bounds.lower << "," << r.bounds.upper << ","
            << (r.exact ? std::to_string(*r.exact) : std::string()) << "," << catalog_row_method(r)
            << "\n";
    }
    return out.str();
}

// Reference table: an array of {"generators": [...], "dimension": n}.
inline std::map<std::vector<long>, long> load_reference_dimensions(const std::string& path) {
    Json j = load_json_file(path);
    std::map<std::vector<long>, long> out;
    for (const auto& entry : j) {
        std::vector<long> gens = entry.at("generators").get<std::vector<long>>();
        out[gens] = entry.at("dimension").get<long>();
    }
    return out;
}

struct GoldenCheck {
    bool ok = true;
    std::vector<std::string> mismatches;
};

inline GoldenCheck check_against_reference(const CatalogReport& report,
                                           const std::map<std::vector<long>, long>& reference) {
    GoldenCheck check;
    for (const auto& r : report.results) {
        auto it = reference.find(r.semigroup.min_generators());
        std::string name = detail::gens_str(r.semigroup);
        if (it == reference.end()) {
            check.ok = false;
            check.mismatches.push_back(name + ": not in the reference table");
        } else if (!r.exact) {
            check.ok = false;
            check.mismatches.push_back(name + ": unresolved, reference says " +
                                       std::to_string(it->second));
        } else if (*r.exact != it->second) {
            check.ok = false;
            check.mismatches.push_back(name + ": computed " + std::to_string(*r.exact) +
                                       ", reference says " + std::to_string(it->second));
        }
    }
    return check;
}

struct StoreReport {
    long total = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Re-verifies every record in a certificate store.
inline StoreReport verify_certificate_store(const CertificateStore& store) {
    StoreReport report;
    for (const auto& file : store.files()) {
        ++report.total;
        try {
            Certificate c = certificate_from_json(load_json_file(file.string()));
            VerificationResult v = verify_representation(c.matrix, c.semigroup);
            if (!v.ok)
                report.failures.push_back(file.filename().string() + ": disagrees at n = " +
                                          std::to_string(v.witness.value_or(-1)));
        } catch (const std::exception& e) {
            report.failures.push_back(file.filename().string() + ": " + e.what());
        }
    }
    return report;
}

}  // namespace expsg
