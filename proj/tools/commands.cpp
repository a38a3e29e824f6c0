#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qh/blaschke.hpp"
#include "qh/diagnostics.hpp"
#include "qh/io.hpp"
#include "qh/sonin.hpp"

namespace qh::cli {

using nlohmann::json;

namespace {

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json fit_json(const DecayFit& f) {
    return {{"model", f.model == DecayFit::Model::PowerLaw ? "PowerLaw" : "StretchedExp"},
            {"parameter", f.parameter},
            {"r_squared", f.r_squared},
            {"points", f.points}};
}

json profile_json(const SpectralProfile& p, bool values = true) {
    json j = {{"truncation_size", p.truncation_size},
              {"numerical_rank", p.numerical_rank},
              {"fitted_decay", fit_json(p.fitted_decay)},
              {"power_fit", fit_json(p.power_fit)},
              {"sqrt_fit", fit_json(p.sqrt_fit)}};
    if (values) j["singular_values"] = p.singular_values;
    return j;
}

json stream_json(const CoefficientStream& s) {
    json entries = json::array();
    for (int k = s.k_min; k <= s.k_max; ++k) {
        const cplx c = s.at(k);
        entries.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}, {"err", s.err(k)}});
    }
    return {{"spec", to_string(s.spec)},
            {"method", method_name(s.method)},
            {"detail", s.detail},
            {"slow_convergence", s.slow_convergence},
            {"entries", entries}};
}

json header(const RunConfig& c) {
    return {{"schema_version", schema_version}, {"command", c.command}, {"config_hash", config_hash(c)},
            {"config", config_json(c)}};
}

std::string csv_banner(const RunConfig& c) {
    return "# qh schema_version=" + std::to_string(schema_version) + " command=" + c.command +
           " config_hash=" + config_hash(c) + "\n";
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (c.format == a) return;
    throw Error("parse", "format '" + c.format + "' not supported by " + c.command);
}

void require_size(int n) {
    if (n < 1) throw Error("range", "truncation must be positive");
    if (n > 512) throw Error("resource", "truncation " + std::to_string(n) + " exceeds 512");
}

BoundaryGrid make_grid(const RunConfig& c) {
    if (c.grid < 8 || (c.grid & (c.grid - 1)) != 0) throw Error("parse", "grid size must be a power of two >= 8");
    return BoundaryGrid(c.grid, c.offset);
}

std::vector<Place> parse_places(const std::vector<std::string>& items) {
    std::vector<Place> out;
    for (const auto& s : items) {
        if (s == "inf") {
            out.push_back(Place::archimedean());
            continue;
        }
        const std::string digits = s.rfind("p:", 0) == 0 ? s.substr(2) : s;
        std::size_t used = 0;
        long p = 0;
        try {
            p = std::stol(digits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != digits.size()) throw Error("parse", "bad place '" + s + "'");
        out.push_back(Place::prime(p));
    }
    if (out.empty()) throw Error("parse", "empty place set");
    return out;
}

cplx parse_point(const std::string& s) {
    std::stringstream ss(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ss >> re)) throw Error("parse", "bad point '" + s + "'");
    if (ss >> comma) {
        if (comma != ',' || !(ss >> im)) throw Error("parse", "bad point '" + s + "', expected re,im");
    }
    std::string rest;
    if (ss >> rest) throw Error("parse", "bad point '" + s + "'");
    return {re, im};
}

json place_list(const std::vector<Place>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.is_archimedean() ? std::string("inf") : std::to_string(p.p));
    return a;
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

json config_json(const RunConfig& c) {
    return {{"command", c.command},     {"spec", c.spec},     {"grid", c.grid},
            {"offset", c.offset},       {"n_terms", c.n_terms}, {"arch_terms", c.arch_terms},
            {"kmax", c.kmax},           {"method", c.method}, {"quadrature", c.quadrature},
            {"kind", c.kind},           {"n", c.n},           {"sweep", c.sweep},
            {"places", c.places},       {"target", c.target}, {"eps", c.eps},
            {"tolerance", c.tolerance}, {"z", c.z},           {"pole_part", c.pole_part},
            {"format", c.format}};
}

std::string config_hash(const RunConfig& c) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : config_json(c).dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Output cmd_eval(const RunConfig& c) {
    require_format(c, {"json", "csv"});
    const FactorSpec spec = parse_spec(c.spec);
    if (c.z.empty()) throw Error("parse", "eval needs at least one --z point");
    std::vector<std::pair<cplx, cplx>> rows;
    for (const auto& s : c.z) {
        const cplx z = parse_point(s);
        rows.push_back({z, rho(spec, z)});
    }
    if (c.format == "csv") {
        std::string out = csv_banner(c) + "z_re,z_im,re,im\n";
        char buf[128];
        for (const auto& [z, v] : rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", z.real(), z.imag(), v.real(), v.imag());
            out += buf;
        }
        return {out, "csv"};
    }
    json j = header(c);
    j["spec"] = to_string(spec);
    j["values"] = json::array();
    for (const auto& [z, v] : rows) j["values"].push_back({{"z", cjson(z)}, {"rho", cjson(v)}});
    return {j.dump(2) + "\n", "json"};
}

Output cmd_coeffs(const RunConfig& c) {
    require_format(c, {"json", "csv"});
    const FactorSpec spec = parse_spec(c.spec);
    if (c.kmax < 1) throw Error("range", "kmax must be positive");
    std::vector<CoefficientStream> streams;
    if (c.method == "residue" || c.method == "both") {
        ResidueOptions o;
        o.arch_terms = c.arch_terms;
        o.prime_terms = c.n_terms;
        streams.push_back(residue_coeffs(spec, c.kmax, o));
    }
    if (c.method == "quadrature" || c.method == "both") {
        if (c.quadrature == "line") {
            streams.push_back(line_quadrature_coeffs(spec, -c.kmax, c.kmax));
        } else if (c.quadrature == "dft") {
            const BoundaryGrid g = make_grid(c);
            streams.push_back(quadrature_coeffs(sample_boundary(spec, g), g, -c.kmax, c.kmax, spec));
        } else {
            throw Error("parse", "quadrature must be line or dft");
        }
    }
    if (streams.empty()) throw Error("parse", "method must be residue, quadrature or both");
    if (c.format == "csv") {
        std::string out = csv_banner(c) + "method,k,re,im,err\n";
        char buf[160];
        for (const auto& s : streams)
            for (int k = s.k_min; k <= s.k_max; ++k) {
                std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g\n", method_name(s.method).c_str(), k,
                              s.at(k).real(), s.at(k).imag(), s.err(k));
                out += buf;
            }
        return {out, "csv"};
    }
    json j = header(c);
    j["streams"] = json::array();
    for (const auto& s : streams) j["streams"].push_back(stream_json(s));
    if (streams.size() == 2) {
        const auto cmp = compare_streams(streams[0], streams[1]);
        j["comparison"] = {{"k_min", cmp.k_min},
                           {"k_max", cmp.k_max},
                           {"max_diff", cmp.max_diff},
                           {"argmax", cmp.argmax},
                           {"within_bounds", cmp.within_bounds}};
    }
    return {j.dump(2) + "\n", "json"};
}

Output cmd_spectrum(const RunConfig& c) {
    require_format(c, {"json", "csv"});
    require_size(c.n);
    const FactorSpec spec = parse_spec(c.spec);
    SpectralProfile prof;
    if (c.kind == "hankel") {
        ResidueOptions o;
        o.arch_terms = c.arch_terms;
        o.prime_terms = c.n_terms;
        prof = singular_values(hankel_truncation(residue_coeffs(spec, 2 * c.n, o), c.n));
    } else if (c.kind == "toeplitz") {
        prof = singular_values(toeplitz_u22(two_sided_stream(spec, c.n - 1), c.n));
    } else if (c.kind == "pole-space") {
        prof = pole_space_profile(spec, c.n, c.arch_terms);
    } else {
        throw Error("parse", "kind must be hankel, toeplitz or pole-space");
    }
    if (c.format == "csv") {
        std::ostringstream os;
        write_spectrum_csv(os, prof);
        return {csv_banner(c) + os.str(), "csv"};
    }
    json j = header(c);
    j["spec"] = to_string(spec);
    j["kind"] = c.kind;
    j["profile"] = profile_json(prof);
    return {j.dump(2) + "\n", "json"};
}

Output cmd_classify(const RunConfig& c) {
    require_format(c, {"json"});
    for (int n : c.sweep) require_size(n);
    const FactorSpec spec = parse_spec(c.spec);
    const auto v = classify(spec, c.sweep);
    json j = header(c);
    j["spec"] = to_string(spec);
    j["verdict"] = {{"compact", v.compact},
                    {"decay_class", decay_class_name(v.decay_class)},
                    {"alpha", v.alpha},
                    {"power_r_squared", v.power_r2},
                    {"sqrt_c", v.sqrt_c},
                    {"sqrt_r_squared", v.sqrt_r2},
                    {"note", v.note}};
    json ev = {{"n_sweep", v.n_sweep},
               {"counts_above_tau", v.counts_above_tau},
               {"mid_sigma", v.mid_sigma},
               {"alphas", v.alphas},
               {"profiles", json::array()},
               {"coordinate_profiles", json::array()}};
    for (const auto& p : v.profiles) ev["profiles"].push_back(profile_json(p));
    for (const auto& p : v.coordinate_profiles) ev["coordinate_profiles"].push_back(profile_json(p, false));
    j["evidence"] = ev;
    return {j.dump(2) + "\n", "json"};
}

Output cmd_sonin(const RunConfig& c) {
    require_format(c, {"json", "csv"});
    for (int n : c.sweep) require_size(n);
    if (!(c.eps > 0.0)) throw Error("range", "eps must be positive");
    const auto F = parse_places(c.places);
    const auto r = sonin_sweep(F, c.sweep, c.eps);
    if (c.format == "csv") {
        std::string out = csv_banner(c) + "vector,j,re,im\n";
        char buf[128];
        for (Eigen::Index v = 0; v < r.kernel_basis.cols(); ++v)
            for (Eigen::Index i = 0; i < r.kernel_basis.rows(); ++i) {
                const cplx x = r.kernel_basis(i, v);
                std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(v), static_cast<long>(i),
                              x.real(), x.imag());
                out += buf;
            }
        return {out, "csv"};
    }
    json j = header(c);
    j["place_set"] = place_list(F);
    j["truncation"] = r.truncation;
    j["rows"] = r.rows;
    j["epsilon"] = r.epsilon;
    j["min_sigma"] = r.min_sigma;
    j["kernel_sigma"] = r.kernel_sigma;
    j["dimension_curve"] = json::array();
    for (const auto& [n, d] : r.dimension_curve) j["dimension_curve"].push_back({{"n", n}, {"dim", d}});
    json basis = json::array();
    for (Eigen::Index v = 0; v < r.kernel_basis.cols(); ++v) {
        json col = json::array();
        for (Eigen::Index i = 0; i < r.kernel_basis.rows(); ++i) col.push_back(cjson(r.kernel_basis(i, v)));
        basis.push_back(col);
    }
    j["kernel_basis"] = basis;
    if (!c.target.empty()) {
        const auto Fp = parse_places(c.target);
        const auto m = inductive_map_check(F, Fp, r);
        double leak = 0.0;
        for (double x : m.d_leakage) leak = std::max(leak, x);
        j["map_check"] = {{"target", place_list(Fp)},
                          {"residuals", m.residuals},
                          {"image_norms", m.image_norms},
                          {"gram_min_eigenvalue", m.gram_min_eigenvalue},
                          {"d_positive_leakage", leak}};
    }
    return {j.dump(2) + "\n", "json"};
}

Output cmd_figure(const RunConfig& c) {
    require_format(c, {"csv", "svg", "json"});
    const FactorSpec spec = parse_spec(c.spec);
    const BoundaryGrid g = make_grid(c);
    const auto pts = figure_curve(spec, g, c.pole_part);
    if (c.format == "csv") {
        std::ostringstream os;
        write_grid_csv(os, g, pts);
        return {csv_banner(c) + os.str(), "csv"};
    }
    if (c.format == "svg") {
        std::ostringstream os;
        write_svg_polyline(os, pts, 600, (c.pole_part ? "pole part of " : "") + to_string(spec));
        return {"<!-- " + csv_banner(c).substr(2, csv_banner(c).size() - 3) + " -->\n" + os.str(), "svg"};
    }
    json j = header(c);
    j["spec"] = to_string(spec);
    j["pole_part"] = c.pole_part;
    j["points"] = json::array();
    for (const auto& p : pts) j["points"].push_back(cjson(p));
    return {j.dump(2) + "\n", "json"};
}

Output cmd_report(const RunConfig& c) {
    require_format(c, {"json"});
    for (int n : c.sweep) require_size(n);
    json j = header(c);

    json suites = json::array();
    for (const char* s : {"inf", "p:2", "p:3", "inf*p:2", "gauss:3:0", "gauss:3:1", "gauss:3:2"}) {
        const auto rep = verify_suite(parse_spec(s), c.tolerance);
        json ids = json::array();
        for (const auto& r : rep.results)
            ids.push_back({{"name", r.name}, {"max_residual", r.max_residual}, {"samples", r.samples}, {"pass", r.pass}});
        suites.push_back({{"spec", s}, {"all_pass", rep.all_pass()}, {"identities", ids}});
    }
    j["identity_suites"] = suites;

    json gauss = json::array();
    for (int m : {1, 2, 3, 5})
        for (bool norm : {false, true}) {
            const auto r = gauss_product_check(m, norm);
            gauss.push_back({{"name", r.name}, {"max_residual", r.max_residual}, {"pass", r.pass}});
        }
    j["gauss_factorization"] = gauss;

    json coeffs = json::array();
    for (const char* s : {"inf", "p:2"}) {
        const FactorSpec spec = parse_spec(s);
        const auto cmp = compare_streams(residue_coeffs(spec, c.kmax), line_quadrature_coeffs(spec, -c.kmax, -1));
        coeffs.push_back({{"spec", s}, {"max_diff", cmp.max_diff}, {"within_bounds", cmp.within_bounds}});
    }
    j["coefficient_cross_check"] = coeffs;

    json verdicts = json::array();
    for (const char* s : {"inf", "p:2", "inf*p:2"}) {
        ClassifyOptions o;
        o.coordinate_evidence = false;
        const auto v = classify(parse_spec(s), c.sweep, o);
        verdicts.push_back({{"spec", s},
                            {"decay_class", decay_class_name(v.decay_class)},
                            {"compact", v.compact},
                            {"alpha", v.alpha},
                            {"sqrt_r_squared", v.sqrt_r2},
                            {"counts_above_tau", v.counts_above_tau}});
    }
    j["verdicts"] = verdicts;

    json gram = json::array();
    for (long p : {2L, 3L}) {
        const auto g = gram_zeta(p, -20, 20);
        gram.push_back({{"p", p}, {"max_diff", g.max_diff}, {"max_tail_bound", g.max_tail_bound}});
    }
    j["gram_zeta"] = gram;

    const auto b = blaschke_identity(2, 10000, 200);
    j["blaschke_identity"] = {{"p", 2}, {"max_residual", b.max_residual}, {"max_bound", b.max_bound},
                              {"below_bound", b.below_bound}};
    return {j.dump(2) + "\n", "json"};
}

int run(const RunConfig& c) {
    try {
        Output out;
        if (c.command == "eval") out = cmd_eval(c);
        else if (c.command == "coeffs") out = cmd_coeffs(c);
        else if (c.command == "spectrum") out = cmd_spectrum(c);
        else if (c.command == "classify") out = cmd_classify(c);
        else if (c.command == "sonin") out = cmd_sonin(c);
        else if (c.command == "figure") out = cmd_figure(c);
        else if (c.command == "report") out = cmd_report(c);
        else throw Error("parse", "unknown command '" + c.command + "'");

        if (c.output.empty()) {
            std::cout << out.payload;
            return 0;
        }
        std::ofstream f(c.output, std::ios::binary);
        if (!f) throw Error("io", "cannot write " + c.output);
        f << out.payload;
        std::ofstream meta(c.output + ".meta.json", std::ios::binary);
        meta << json{{"schema_version", schema_version},
                     {"config_hash", config_hash(c)},
                     {"command", c.command},
                     {"timestamp", utc_timestamp()},
                     {"output", c.output}}
                    .dump(2)
             << "\n";
        return 0;
    } catch (const Error& e) {
        json err = {{"code", e.code()}, {"message", e.what()}};
        if (const auto* pe = dynamic_cast<const PoleError*>(&e)) err["location"] = cjson(pe->datum().location);
        if (const auto* ze = dynamic_cast<const ZeroError*>(&e)) err["location"] = cjson(ze->location());
        std::cout << json{{"schema_version", schema_version}, {"error", err}}.dump(2) << "\n";
        return e.code() == "parse" || e.code() == "resource" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cout << json{{"schema_version", schema_version}, {"error", {{"code", "internal"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 1;
    }
}

}  // namespace qh::cli
