#include "kstab/driver.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kstab/errors.hpp"
#include "kstab/json_io.hpp"
#include "kstab/optimize.hpp"
#include "kstab/theorem.hpp"
#include "kstab/toric.hpp"

namespace kstab::cli {

using nlohmann::json;

namespace {

constexpr int kApproxDigits = 12;

json rat_json(const Rat& r) { return rat_to_string(r); }

json vec_json(const RatVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rat_json(x));
    return out;
}

json approx_json(const Rat& r) { return rat_to_decimal(r, kApproxDigits); }

json polytope_json(const LatticePolytope& p) {
    json out;
    out["dimension"] = p.dimension();
    out["volume"] = rat_json(p.volume());
    out["boundary_volume"] = rat_json(p.boundary_volume());
    out["vertices"] = json::array();
    for (const auto& v : p.vertices()) out["vertices"].push_back(vec_json(v));
    out["facets"] = json::array();
    for (const auto& f : p.facets()) {
        json fac;
        fac["normal"] = json::array();
        for (const auto& c : f.normal) fac["normal"].push_back(c.str());
        fac["offset"] = rat_json(f.offset);
        out["facets"].push_back(fac);
    }
    return out;
}

const char* status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Destabilizer: return "Destabilizer";
        case SearchStatus::Stable: return "Stable";
        case SearchStatus::BoundaryDegenerate: return "BoundaryDegenerate";
    }
    return "Stable";
}

json search_result_json(const SearchResult& r) {
    json out;
    out["minimizer"] = vec_json(r.minimizer);
    out["value_squared_signed"] = rat_json(r.value_squared_signed);
    out["value_approx"] = approx_json(r.value_approx);
    out["status"] = status_name(r.status);
    out["certified"] = r.certified;
    out["stage"] = r.stage;
    out["iterations"] = r.iterations;
    out["active_set"] = r.active_set;
    out["stationarity_residual"] = vec_json(r.stationarity_residual);
    return out;
}

json trace_json(const InequalityTrace& t) {
    json out;
    out["m"] = t.m;
    out["lhs"] = rat_json(t.lhs);
    out["rhs"] = rat_json(t.rhs);
    out["proof_inequality_holds"] = t.proof_inequality_holds;
    out["paper_lhs_squared"] = rat_json(t.paper_lhs_squared);
    out["paper_rhs_squared"] = rat_json(t.paper_rhs_squared);
    out["paper_variant_contradicts"] = t.paper_variant_contradicts;
    out["vy_variant_defined"] = t.vy_variant_defined;
    out["vy_variant_contradicts"] = t.vy_variant_contradicts;
    out["presquare_lhs_squared"] = rat_json(t.presquare_lhs_squared);
    out["presquare_rhs"] = rat_json(t.presquare_rhs);
    out["squaring_precondition_ok"] = t.squaring_precondition_ok;
    return out;
}

json certificate_json(const ContradictionCertificate& c) {
    json out;
    out["epsilon"] = rat_json(c.epsilon);
    out["norm_v_squared"] = rat_json(c.norm_v_sq);
    out["norm_w_squared"] = rat_json(c.norm_w_sq);
    out["pairing"] = rat_json(c.pairing);
    out["m0"] = c.m0;
    out["trace"] = json::array();
    for (const auto& t : c.trace) out["trace"].push_back(trace_json(t));
    return out;
}

std::string convention_name(Convention c) {
    return c == Convention::TraceFree ? "trace-free" : "paper";
}

RunResult analyze(const RunConfig& config, const ToricInput& in) {
    EquivariantModel model = build_model(in.polytope, in.functions, in.shifts, in.labels);

    json doc;
    doc["command"] = "analyze";
    doc["convention"] = convention_name(config.convention);
    doc["precision"] = rat_json(config.precision);
    doc["polytope"] = polytope_json(in.polytope);
    doc["model"] = json::parse(model_to_json(model));

    doc["functions"] = json::array();
    ToricIntegrator integ(in.polytope, in.functions);
    for (std::size_t i = 0; i < in.functions.size(); ++i) {
        LieAlgebraPoint e(model.size(), Rat(0));
        e[i] = 1;
        const Rat df = donaldson_futaki(model, e);
        const Rat nsq = norm_squared(model, e, config.convention);
        json f;
        f["label"] = in.labels[i];
        f["shift"] = rat_json(in.shifts[i]);
        f["max"] = rat_json(in.functions[i].max_over(in.polytope));
        f["integral"] = rat_json(integ.integral(i));
        f["boundary_integral"] = rat_json(integ.boundary_integral(i));
        f["b0"] = rat_json(model.actions()[i].weight.b0);
        f["b1"] = rat_json(model.actions()[i].weight.b1);
        f["df"] = rat_json(df);
        f["df_approx"] = approx_json(df);
        f["norm_squared"] = rat_json(nsq);
        f["norm_squared_approx"] = approx_json(nsq);
        if (nsq >= 0)
            f["l2_norm_approx"] = approx_json(sqrt_approx(nsq, config.precision));
        else
            f["l2_norm_approx"] = nullptr;
        if (nsq > 0) {
            json nd;
            nd["value_squared_signed"] = rat_json(Rat(sign_of(df)) * df * df / nsq);
            nd["approx"] = approx_json(Rat(sign_of(df)) * sqrt_approx(df * df / nsq, config.precision));
            f["normalized_df"] = nd;
        } else {
            f["normalized_df"] = nullptr;
        }
        doc["functions"].push_back(f);
    }

    doc["inner_products"] = json::array();
    for (std::size_t i = 0; i < model.size(); ++i) {
        json row = json::array();
        LieAlgebraPoint ei(model.size(), Rat(0));
        ei[i] = 1;
        for (std::size_t j = 0; j < model.size(); ++j) {
            LieAlgebraPoint ej(model.size(), Rat(0));
            ej[j] = 1;
            row.push_back(rat_json(inner_product(model, ei, ej, config.convention)));
        }
        doc["inner_products"].push_back(row);
    }

    std::ostringstream summary;
    summary << "analyze: " << in.functions.size() << " function(s) on a " << in.polytope.dimension()
            << "-dimensional polytope";
    for (std::size_t i = 0; i < in.functions.size(); ++i) {
        LieAlgebraPoint e(model.size(), Rat(0));
        e[i] = 1;
        summary << "; DF[" << in.labels[i] << "] = " << rat_to_string(donaldson_futaki(model, e));
    }
    return RunResult{0, doc.dump(2) + "\n", summary.str()};
}

RunResult search(const RunConfig& config, const ToricInput& in) {
    if (!in.triangulation)
        throw ParseError("search: input needs a \"triangulation\" object");
    SearchSpace space = build_search_space(in.polytope, *in.triangulation);

    const long max_iter = config.max_iterations ? *config.max_iterations
                           : in.max_iterations  ? *in.max_iterations
                                                : 100000;
    const std::uint64_t seed = config.seed ? *config.seed : in.seed ? *in.seed : 0;
    SearchResult result = minimize_normalized_df(space, max_iter, seed);

    json doc;
    doc["command"] = "search";
    doc["seed"] = seed;
    doc["max_iterations"] = max_iter;
    json sp;
    sp["nodes"] = space.tri.nodes.size();
    sp["nontrivial_dimension"] = space.free_nodes.size();
    sp["constraints"] = space.convexity.rows();
    doc["space"] = sp;
    doc["result"] = search_result_json(result);

    const Rat bound_sq = calabi_lower_bound(result);
    json bound;
    bound["value_squared"] = rat_json(bound_sq);
    bound["approx"] = approx_json(sqrt_approx(bound_sq, config.precision));
    bound["scope"] = "searched family only";
    doc["calabi_lower_bound"] = bound;

    std::optional<int> resolution = config.resolution ? config.resolution : in.resolution;
    if (resolution && *resolution >= 1) {
        SearchResult bf = brute_force_search(space, *resolution);
        doc["brute_force"] = search_result_json(bf);
        doc["brute_force"]["resolution"] = *resolution;
        doc["brute_force"]["dominates_exact"] = result.value_squared_signed <= bf.value_squared_signed;
    }

    std::ostringstream summary;
    summary << "search: status=" << status_name(result.status)
            << " value^2=" << rat_to_string(result.value_squared_signed)
            << " (~" << rat_to_decimal(result.value_approx, 6) << ")";
    return RunResult{0, doc.dump(2) + "\n", summary.str()};
}

RunResult verify(const RunConfig&, const VerifyInput& in) {
    json doc;
    doc["command"] = "verify";
    try {
        VerificationReport report = verify_relative_semistability(in.model, in.candidate, in.directions);
        doc["verdict"] = report.pass ? "Pass" : "Fail";
        doc["branch"] = report.branch == Branch::Extremal ? "Extremal" : "Semistable";
        doc["candidate"] = vec_json(report.candidate);
        doc["scaled_candidate"] = vec_json(report.scaled_candidate);
        doc["scale"] = rat_json(report.scale);
        doc["directions_mode"] = in.span ? "span" : "explicit";
        doc["directions"] = json::array();
        for (const auto& rec : report.directions) {
            json d;
            d["index"] = rec.index;
            d["direction"] = vec_json(rec.direction);
            d["orthogonalized"] = vec_json(rec.orthogonalized);
            d["pairing_before"] = rat_json(rec.pairing_before);
            d["pairing_after"] = rat_json(rec.pairing_after);
            d["relative_df"] = rat_json(rec.relative_df);
            d["relative_df_approx"] = approx_json(rec.relative_df);
            d["verdict"] = rec.pass ? "pass" : "fail";
            if (rec.certificate) d["certificate"] = certificate_json(*rec.certificate);
            doc["directions"].push_back(d);
        }
        std::ostringstream summary;
        summary << "verify: " << (report.pass ? "Pass" : "Fail") << " (" << report.directions.size()
                << " direction(s), " << (report.branch == Branch::Extremal ? "extremal" : "semistable")
                << " branch)";
        return RunResult{report.pass ? 0 : 2, doc.dump(2) + "\n", summary.str()};
    } catch (const NotACandidate& e) {
        doc["verdict"] = "NotACandidate";
        doc["reason"] = e.what();
        return RunResult{3, doc.dump(2) + "\n", std::string("verify: NotACandidate (") + e.what() + ")"};
    }
}

RunResult oracle(const RunConfig& config, const ToricInput& in) {
    if (in.functions.empty()) throw ParseError("oracle: input needs at least one function");
    EquivariantModel model = build_model(in.polytope, in.functions, in.shifts, in.labels);
    const int n = in.polytope.dimension();

    std::vector<long> samples;
    if (config.k_samples)
        samples = *config.k_samples;
    else if (in.k_samples)
        samples = *in.k_samples;
    else
        for (long s = 1; s <= n + 4; ++s) samples.push_back(s);

    json doc;
    doc["command"] = "oracle";
    doc["k_samples"] = samples;
    doc["functions"] = json::array();
    bool all_match = true;

    const Rat a0 = in.polytope.volume();
    const Rat a1 = in.polytope.boundary_volume() / 2;
    for (std::size_t i = 0; i < in.functions.size(); ++i) {
        OracleFit fit = discrete_weight_oracle(in.polytope, in.functions[i], in.shifts[i], samples);
        json f;
        f["label"] = in.labels[i];
        f["stride"] = fit.stride;
        f["dilations"] = fit.dilations;
        f["rows"] = json::array();
        auto row = [&](const char* name, const Rat& continuous, const Rat& discrete) {
            json r;
            r["quantity"] = name;
            r["continuous"] = rat_json(continuous);
            r["discrete"] = rat_json(discrete);
            r["match"] = continuous == discrete;
            all_match &= continuous == discrete;
            f["rows"].push_back(r);
        };
        row("a0", a0, fit.a0);
        row("a1", a1, fit.a1);
        row("b0", model.actions()[i].weight.b0, fit.b0);
        row("b1", model.actions()[i].weight.b1, fit.b1);
        row("d0", model.d0().at(i, i), fit.d0_diag);
        doc["functions"].push_back(f);
    }
    doc["all_match"] = all_match;

    std::ostringstream summary;
    summary << "oracle: " << (all_match ? "all coefficients match" : "MISMATCH detected") << " over "
            << in.functions.size() << " function(s)";
    return RunResult{all_match ? 0 : 2, doc.dump(2) + "\n", summary.str()};
}

}  // namespace

RunResult run_on_text(const RunConfig& config, const std::string& input_text) {
    try {
        switch (config.command) {
            case Command::Analyze: return analyze(config, parse_toric_input(input_text));
            case Command::Search: return search(config, parse_toric_input(input_text));
            case Command::Verify: return verify(config, parse_verify_input(input_text));
            case Command::Oracle: return oracle(config, parse_toric_input(input_text));
        }
        throw Error("unknown command");
    } catch (const NotACandidate& e) {
        json doc;
        doc["error"] = {{"type", "NotACandidate"}, {"message", e.what()}};
        return RunResult{3, doc.dump(2) + "\n", std::string("error: ") + e.what()};
    } catch (const Error& e) {
        json doc;
        doc["error"] = {{"type", "validation"}, {"message", e.what()}};
        return RunResult{1, doc.dump(2) + "\n", std::string("error: ") + e.what()};
    }
}

RunResult run(const RunConfig& config) {
    std::ifstream in(config.input_path);
    if (!in) {
        json doc;
        doc["error"] = {{"type", "io"}, {"message", "cannot open input file: " + config.input_path}};
        return RunResult{1, doc.dump(2) + "\n", "error: cannot open input file: " + config.input_path};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RunResult result = run_on_text(config, buffer.str());
    if (!config.output_path.empty()) {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) {
            json doc;
            doc["error"] = {{"type", "io"}, {"message", "cannot open output file: " + config.output_path}};
            return RunResult{1, doc.dump(2) + "\n", "error: cannot open output file: " + config.output_path};
        }
        out << result.report;
    }
    return result;
}

}  // namespace kstab::cli
