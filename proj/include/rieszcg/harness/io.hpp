#pragma once

// JSON interchange for problems, CG traces, oracle results and bound reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rieszcg/cg_solver.hpp"
#include "rieszcg/harness/compare.hpp"
#include "rieszcg/harness/oracle.hpp"
#include "rieszcg/harness/problem.hpp"
#include "rieszcg/rate_bounds.hpp"

namespace rieszcg::io {

using json = nlohmann::json;

// ---- files ----

/// Writes to a sibling temporary file, then renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + path.string());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- field access ----

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(path + key, "missing field");
    return j.at(key);
}

template <class T>
T as(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(path, e.what());
    }
}

inline std::vector<std::vector<double>> rows_of(const FunctionVector& v) {
    std::vector<std::vector<double>> out;
    for (const auto& e : v.entries()) out.emplace_back(e.values().begin(), e.values().end());
    return out;
}

inline json element_json(const AlgebraElement& e) { return json(std::vector<double>(e.values().begin(), e.values().end())); }

inline AlgebraElement element_from(const json& j, const SpacePtr& space, const std::string& path) {
    auto vals = as<std::vector<double>>(j, path);
    if (vals.size() != space->size()) throw ValidationError(path, "expected one value per sample");
    try {
        return AlgebraElement(space, std::move(vals));
    } catch (const Error& e) {
        throw ValidationError(path, e.what());
    }
}

inline FunctionVector vector_from(const json& j, const SpacePtr& space, std::size_t n, const std::string& path) {
    if (!j.is_array() || j.size() != n) throw ValidationError(path + ".shape", "expected " + std::to_string(n) + " entries");
    std::vector<AlgebraElement> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(element_from(j[i], space, path + "[" + std::to_string(i) + "]"));
    return FunctionVector(std::move(e));
}

inline json space_json(const MeasureSpace& s) {
    json j;
    j["weights"] = s.weights();
    if (!s.labels().empty()) j["labels"] = s.labels();
    return j;
}

inline SpacePtr space_from(const json& j) {
    auto weights = as<std::vector<double>>(field(j, "weights", "space."), "space.weights");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = as<std::vector<std::string>>(j.at("labels"), "space.labels");
    try {
        return make_space(std::move(weights), std::move(labels));
    } catch (const Error& e) {
        throw ValidationError("space", e.what());
    }
}

}  // namespace detail

// ---- problems ----

inline json to_json(const Problem& p) {
    json j;
    j["space"] = detail::space_json(*p.space);
    j["n"] = p.n();
    json a = json::array();
    for (std::size_t i = 0; i < p.n(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < p.n(); ++k) row.push_back(detail::element_json(p.A(i, k)));
        a.push_back(std::move(row));
    }
    j["A"] = std::move(a);
    j["b"] = detail::rows_of(p.b);
    if (p.x0) j["x0"] = detail::rows_of(*p.x0);
    j["metadata"] = {{"generator", p.metadata.generator},
                     {"seed", p.metadata.seed},
                     {"kappa_target", p.metadata.kappa_target},
                     {"perturbation", p.metadata.perturbation},
                     {"mode", p.metadata.mode}};
    return j;
}

inline Problem problem_from_json(const json& j, bool validate = true) {
    const SpacePtr space = detail::space_from(detail::field(j, "space", ""));
    const auto n = detail::as<std::size_t>(detail::field(j, "n", ""), "n");
    if (n == 0) throw ValidationError("n", "dimension must be positive");
    const json& ja = detail::field(j, "A", "");
    if (!ja.is_array() || ja.size() != n) throw ValidationError("A.shape", "expected n rows");
    std::vector<AlgebraElement> entries;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ja[i].is_array() || ja[i].size() != n) throw ValidationError("A.shape", "expected n columns in every row");
        for (std::size_t k = 0; k < n; ++k)
            entries.push_back(detail::element_from(ja[i][k], space, "A[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    FunctionMatrix a(n, std::move(entries));
    FunctionVector b = detail::vector_from(detail::field(j, "b", ""), space, n, "b");
    std::optional<FunctionVector> x0;
    if (j.contains("x0") && !j.at("x0").is_null()) x0 = detail::vector_from(j.at("x0"), space, n, "x0");
    ProblemMetadata meta;
    if (j.contains("metadata")) {
        const json& m = j.at("metadata");
        meta.generator = m.value("generator", meta.generator);
        meta.seed = m.value("seed", meta.seed);
        meta.kappa_target = m.value("kappa_target", meta.kappa_target);
        meta.perturbation = m.value("perturbation", meta.perturbation);
        meta.mode = m.value("mode", meta.mode);
    }
    Problem p{space, std::move(a), std::move(b), std::move(x0), meta};
    if (validate) validate_problem(p);
    return p;
}

inline void save_problem(const std::filesystem::path& path, const Problem& p) { write_atomic(path, dump(to_json(p))); }

inline Problem load_problem(const std::filesystem::path& path, bool validate = true) {
    return problem_from_json(parse(read_file(path)), validate);
}

/// Reads an initial guess stored either as a bare [[...]] array or as an
/// object with an "x" or "x0" member.
inline FunctionVector load_vector(const std::filesystem::path& path, const SpacePtr& space, std::size_t n) {
    const json j = parse(read_file(path));
    if (j.is_object()) {
        if (j.contains("x0")) return detail::vector_from(j.at("x0"), space, n, "x0");
        return detail::vector_from(detail::field(j, "x", ""), space, n, "x");
    }
    return detail::vector_from(j, space, n, "x0");
}

// ---- traces ----

inline json to_json(const CgOutcome& out, const CgConfig& cfg, bool include_vectors = true) {
    const auto& space = out.final_x.space();
    json j;
    j["format"] = "rieszcg-trace";
    j["space"] = detail::space_json(space);
    j["n"] = out.final_x.size();
    j["verdict"] = {{"kind", to_string(out.verdict)}, {"k", out.verdict_k}};
    j["config"] = {{"residual_tol", cfg.residual_tol},
                   {"max_iter", cfg.max_iter ? json(*cfg.max_iter) : json(nullptr)},
                   {"tau_zero", cfg.tol.tau_zero},
                   {"relative", cfg.tol.relative}};
    json recs = json::array();
    for (const auto& r : out.records) {
        json jr;
        jr["k"] = r.k;
        jr["alpha"] = detail::element_json(r.alpha);
        jr["beta"] = detail::element_json(r.beta);
        jr["curvature"] = detail::element_json(r.curvature);
        jr["residual_sup"] = r.residual_sup;
        jr["alpha_feasible"] = r.alpha_feasible;
        jr["alpha_negative"] = r.alpha_negative;
        jr["failure_set"] = r.failure_set;
        jr["infeasible_samples"] = r.infeasible_samples;
        if (include_vectors) {
            jr["x"] = detail::rows_of(r.x);
            jr["r"] = detail::rows_of(r.r);
            jr["p"] = detail::rows_of(r.p);
        }
        recs.push_back(std::move(jr));
    }
    j["records"] = std::move(recs);
    if (include_vectors) j["final_x"] = detail::rows_of(out.final_x);
    return j;
}

struct LoadedTrace {
    CgOutcome outcome;
    CgConfig config;
};

inline CgVerdict verdict_from(const std::string& s) {
    if (s == "Successful") return CgVerdict::Successful;
    if (s == "Infeasible") return CgVerdict::Infeasible;
    if (s == "MaxIterReached") return CgVerdict::MaxIterReached;
    throw ValidationError("verdict.kind", "unknown verdict '" + s + "'");
}

inline LoadedTrace trace_from_json(const json& j) {
    const SpacePtr space = detail::space_from(detail::field(j, "space", ""));
    const auto n = detail::as<std::size_t>(detail::field(j, "n", ""), "n");
    const json& jv = detail::field(j, "verdict", "");
    CgConfig cfg;
    if (j.contains("config")) {
        const json& c = j.at("config");
        cfg.residual_tol = c.value("residual_tol", cfg.residual_tol);
        if (c.contains("max_iter") && !c.at("max_iter").is_null()) cfg.max_iter = c.at("max_iter").get<std::size_t>();
        cfg.tol.tau_zero = c.value("tau_zero", cfg.tol.tau_zero);
        cfg.tol.relative = c.value("relative", cfg.tol.relative);
    }
    const json& jr = detail::field(j, "records", "");
    if (!jr.is_array() || jr.empty()) throw ValidationError("records", "expected a nonempty array");
    std::vector<CgIterationRecord> recs;
    for (std::size_t idx = 0; idx < jr.size(); ++idx) {
        const json& r = jr[idx];
        const std::string at = "records[" + std::to_string(idx) + "].";
        CgIterationRecord rec{detail::as<std::size_t>(detail::field(r, "k", at), at + "k"),
                              detail::vector_from(detail::field(r, "x", at), space, n, at + "x"),
                              detail::vector_from(detail::field(r, "r", at), space, n, at + "r"),
                              detail::vector_from(detail::field(r, "p", at), space, n, at + "p"),
                              detail::element_from(detail::field(r, "alpha", at), space, at + "alpha"),
                              detail::element_from(detail::field(r, "beta", at), space, at + "beta"),
                              detail::element_from(detail::field(r, "curvature", at), space, at + "curvature")};
        rec.alpha_feasible = detail::as<bool>(detail::field(r, "alpha_feasible", at), at + "alpha_feasible");
        rec.alpha_negative = r.value("alpha_negative", false);
        rec.residual_sup = detail::as<double>(detail::field(r, "residual_sup", at), at + "residual_sup");
        rec.failure_set = r.value("failure_set", std::vector<std::size_t>{});
        rec.infeasible_samples = r.value("infeasible_samples", std::vector<std::size_t>{});
        recs.push_back(std::move(rec));
    }
    FunctionVector final_x = j.contains("final_x") ? detail::vector_from(j.at("final_x"), space, n, "final_x") : recs.back().x;
    CgOutcome out{verdict_from(detail::as<std::string>(detail::field(jv, "kind", "verdict."), "verdict.kind")),
                  detail::as<std::size_t>(detail::field(jv, "k", "verdict."), "verdict.k"), std::move(recs),
                  std::move(final_x)};
    return {std::move(out), cfg};
}

inline void save_trace(const std::filesystem::path& path, const CgOutcome& out, const CgConfig& cfg,
                       bool include_vectors = true) {
    write_atomic(path, dump(to_json(out, cfg, include_vectors)));
}

inline LoadedTrace load_trace(const std::filesystem::path& path) { return trace_from_json(parse(read_file(path))); }

/// k, residual_sup, error_A_sup (empty when x* is not supplied).
inline std::string trace_csv(const CgOutcome& out, const FunctionMatrix* a = nullptr, const FunctionVector* x_star = nullptr) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "k,residual_sup,error_A_sup\n";
    for (const auto& r : out.records) {
        ss << r.k << ',' << r.residual_sup << ',';
        if (a && x_star) ss << sup_over_space(pointwise_norm_A(sub(*x_star, r.x), *a));
        ss << '\n';
    }
    return ss.str();
}

// ---- oracle ----

inline json to_json(const OracleResult& o) {
    json j;
    j["format"] = "rieszcg-oracle";
    j["n"] = o.n;
    j["m"] = o.m;
    j["x_star"] = o.x_star;
    json samples = json::array();
    for (const auto& t : o.per_sample_traces) {
        json its = json::array();
        for (const auto& it : t.iterations) its.push_back({{"x", it.x}, {"r", it.r}, {"p", it.p}, {"alpha", it.alpha}});
        samples.push_back({{"sample", t.sample}, {"iterations", std::move(its)}});
    }
    j["samples"] = std::move(samples);
    return j;
}

inline OracleResult oracle_from_json(const json& j) {
    OracleResult o;
    o.n = detail::as<std::size_t>(detail::field(j, "n", ""), "n");
    o.m = detail::as<std::size_t>(detail::field(j, "m", ""), "m");
    o.x_star = detail::as<std::vector<std::vector<double>>>(detail::field(j, "x_star", ""), "x_star");
    if (o.x_star.size() != o.n) throw ValidationError("x_star.shape", "expected n rows");
    for (const auto& row : o.x_star)
        if (row.size() != o.m) throw ValidationError("x_star.shape", "expected m values per row");
    const json& js = detail::field(j, "samples", "");
    for (std::size_t s = 0; s < js.size(); ++s) {
        const std::string at = "samples[" + std::to_string(s) + "].";
        SampleTrace t;
        t.sample = detail::as<std::size_t>(detail::field(js[s], "sample", at), at + "sample");
        for (const auto& it : detail::field(js[s], "iterations", at)) {
            ScalarCgIterate v;
            v.x = detail::as<std::vector<double>>(detail::field(it, "x", at), at + "x");
            v.r = detail::as<std::vector<double>>(detail::field(it, "r", at), at + "r");
            v.p = detail::as<std::vector<double>>(detail::field(it, "p", at), at + "p");
            v.alpha = detail::as<double>(detail::field(it, "alpha", at), at + "alpha");
            if (v.x.size() != o.n || v.r.size() != o.n || v.p.size() != o.n)
                throw ValidationError(at + "iterations", "iterate length differs from n");
            t.iterations.push_back(std::move(v));
        }
        o.per_sample_traces.push_back(std::move(t));
    }
    return o;
}

inline void save_oracle(const std::filesystem::path& path, const OracleResult& o) { write_atomic(path, dump(to_json(o))); }
inline OracleResult load_oracle(const std::filesystem::path& path) { return oracle_from_json(parse(read_file(path))); }

// ---- reports ----

inline json to_json(const BoundReport& r) {
    json j;
    j["kappa"] = r.kappa;
    j["lambda_under"] = r.lambda_under;
    j["lambda_over"] = r.lambda_over;
    j["kappa_per_sample"] = r.kappa_per_sample;
    j["all_hold"] = r.all_hold();
    json rows = json::array();
    for (const auto& row : r.per_k)
        rows.push_back({{"k", row.k},
                        {"lhs_sup", row.lhs_sup},
                        {"rhs", row.rhs},
                        {"holds", row.holds},
                        {"holds_sup", row.holds_sup},
                        {"margin", row.margin},
                        {"worst_pointwise", row.worst_pointwise}});
    j["per_k"] = std::move(rows);
    return j;
}

inline std::string bound_csv(const BoundReport& r) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "k,lhs_sup,rhs,margin\n";
    for (const auto& row : r.per_k) ss << row.k << ',' << row.lhs_sup << ',' << row.rhs << ',' << row.margin << '\n';
    return ss.str();
}

inline json to_json(const OrthogonalityReport& r, double threshold) {
    return {{"max_p_r", r.max_p_r},       {"max_r_r", r.max_r_r}, {"max_p_A_p", r.max_p_A_p},
            {"max_krylov", r.max_krylov}, {"pairs", r.pairs},     {"scale", r.scale},
            {"threshold", threshold},     {"pass", r.worst() <= threshold}};
}

inline json to_json(const CompareReport& r) {
    return {{"max_dev_x", r.max_dev_x},
            {"max_dev_r", r.max_dev_r},
            {"max_dev_p", r.max_dev_p},
            {"max_dev_alpha", r.max_dev_alpha},
            {"max_dev", r.max_dev()},
            {"iterations_compared", r.iterations_compared},
            {"samples_compared", r.samples_compared},
            {"tol", r.tol},
            {"pass", r.pass()}};
}

}  // namespace rieszcg::io
