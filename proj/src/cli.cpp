#include "dpplab/cli.hpp"

#include "dpplab/bandop.hpp"
#include "dpplab/curve.hpp"
#include "dpplab/error.hpp"
#include "dpplab/freeprob.hpp"
#include "dpplab/io.hpp"
#include "dpplab/mop.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/rmt.hpp"
#include "dpplab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace dpplab {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    require(obj.is_object(), where + ": expected a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key)) throw InvalidArgument(where + ": unknown key '" + key + "'");
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw InvalidArgument(where + ": missing key '" + key + "'");
    return obj.at(key);
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
    const json& v = need(obj, key, where);
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(where + ": key '" + key + "' has the wrong type");
    }
}

template <class T>
T get_or(const json& obj, const std::string& key, T fallback, const std::string& where) {
    return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

std::vector<long> n_list(const json& config, const std::string& where) {
    const json& v = need(config, "n", where);
    std::vector<long> out;
    if (v.is_array()) {
        for (const json& x : v) {
            require(x.is_number_integer(), where + ": key 'n' must hold integers");
            out.push_back(x.get<long>());
        }
    } else {
        require(v.is_number_integer(), where + ": key 'n' must be an integer or a list of integers");
        out.push_back(v.get<long>());
    }
    require(!out.empty(), where + ": key 'n' is empty");
    for (long N : out) require(N >= 1, where + ": N must be >= 1");
    return out;
}

std::vector<double> doubles(const json& obj, const std::string& key, const std::string& where) {
    const json& v = need(obj, key, where);
    if (v.is_number()) return {v.get<double>()};
    require(v.is_array(), where + ": key '" + key + "' must be a number or a list of numbers");
    std::vector<double> out;
    for (const json& x : v) {
        require(x.is_number(), where + ": key '" + key + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void emit_csv(const json& config, const CsvTable& table, std::ostream& out) {
    const json header = artifact_header(config);
    if (config.contains("output")) {
        std::ofstream file(config.at("output").get<std::string>());
        if (!file) throw InvalidArgument("cannot open output file '" + config.at("output").get<std::string>() + "'");
        table.write(file, header);
    } else {
        table.write(out, header);
    }
}

void emit_json(const json& config, json body, std::ostream& out) {
    const json header = artifact_header(config);
    if (config.contains("output")) {
        std::ofstream file(config.at("output").get<std::string>());
        if (!file) throw InvalidArgument("cannot open output file '" + config.at("output").get<std::string>() + "'");
        write_json(file, header, std::move(body));
    } else {
        write_json(out, header, std::move(body));
    }
}

const std::set<std::string> kCommon = {"command", "output"};

std::set<std::string> with_common(std::set<std::string> keys) {
    keys.insert(kCommon.begin(), kCommon.end());
    return keys;
}

json scheme_json(const json& config, const std::string& where) {
    json s = need(config, "scheme", where);
    if (s.is_string()) s = json{{"name", s}};
    return s;
}

// Computes rows in parallel over N and returns them in input order.
std::vector<std::vector<std::vector<double>>> per_n(const std::vector<long>& ns,
                                                    const std::function<std::vector<std::vector<double>>(long)>& f) {
    std::vector<std::vector<std::vector<double>>> out(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) { out[i] = f(ns[i]); });
    return out;
}

long max_n(const std::vector<long>& ns) { return *std::max_element(ns.begin(), ns.end()); }

void cmd_traces(const json& config, std::ostream& out) {
    const std::string where = "traces";
    check_keys(config, with_common({"scheme", "n", "moments"}), where);
    const std::vector<long> ns = n_list(config, where);
    const int L = get<int>(config, "moments", where);
    require(L >= 0, where + ": moments must be >= 0");
    const RecurrenceScheme scheme = scheme_from_json(scheme_json(config, where), max_n(ns) + 4L * L + 16);
    CsvTable table({"N", "ell", "mean", "zero_side", "gap", "gap_bound", "variance", "variance_bound"});
    for (const auto& rows : per_n(ns, [&](long N) {
             std::vector<std::vector<double>> rows;
             for (int l = 0; l <= L; ++l) {
                 const double mean = mean_moment(scheme, N, l);
                 const double zero = zero_moment_trace(scheme, N, l);
                 rows.push_back({double(N), double(l), mean, zero, mean - zero, gap_bound(scheme, N, l),
                                 variance_moment(scheme, N, l), variance_bound(scheme, N, l)});
             }
             return rows;
         }))
        for (const auto& row : rows) table.add_row(row);
    emit_csv(config, table, out);
}

void cmd_zeros(const json& config, std::ostream& out, bool mop) {
    const std::string where = mop ? "mop-zeros" : "zeros";
    RecurrenceScheme scheme = [&] {
        if (!mop) {
            check_keys(config, with_common({"scheme", "n", "moments"}), where);
            return scheme_from_json(scheme_json(config, where), max_n(n_list(config, where)) + 8);
        }
        check_keys(config, with_common({"kind", "a", "q", "alpha", "path", "n", "moments"}), where);
        json s{{"name", "multiple-" + get<std::string>(config, "kind", where)}};
        for (const char* key : {"a", "q", "alpha", "path"})
            if (config.contains(key)) s[key] = config.at(key);
        return scheme_from_json(s, max_n(n_list(config, where)) + 8);
    }();
    const std::vector<long> ns = n_list(config, where);
    const int L = get<int>(config, "moments", where);
    require(L >= 0, where + ": moments must be >= 0");
    CsvTable table({"N", "ell", "moment", "imag_residual", "max_imag"});
    for (const auto& rows : per_n(ns, [&](long N) {
             const SpectralMeasure sm = spectrum(build_truncation(scheme, N, 0));
             const ZeroMoments zm = zero_moments(sm, L);
             const double max_imag = reality_check(sm, 0.0).max_imag;
             std::vector<std::vector<double>> rows;
             for (int l = 0; l <= L; ++l)
                 rows.push_back({double(N), double(l), zm.moments[l], zm.imag_residual[l], max_imag});
             return rows;
         }))
        for (const auto& row : rows) table.add_row(row);
    emit_csv(config, table, out);
}

void cmd_sweep(const json& config, std::ostream& out, bool variance) {
    const std::string where = variance ? "variance-sweep" : "gap-sweep";
    check_keys(config, with_common({"scheme", "n", "moments"}), where);
    const std::vector<long> ns = n_list(config, where);
    require(std::is_sorted(ns.begin(), ns.end()) && std::adjacent_find(ns.begin(), ns.end()) == ns.end(),
            where + ": N list must be strictly ascending");
    const int L = get<int>(config, "moments", where);
    require(L >= 0, where + ": moments must be >= 0");
    const RecurrenceScheme scheme = scheme_from_json(scheme_json(config, where), 2 * max_n(ns) + 4L * L + 16);
    const auto blocks = per_n(ns, [&](long N) {
        std::vector<std::vector<double>> rows;
        for (int l = 0; l <= L; ++l) {
            if (variance) {
                rows.push_back({double(N), double(l), variance_moment(scheme, N, l), variance_bound(scheme, N, l)});
            } else {
                const double mean = mean_moment(scheme, N, l);
                const double zero = zero_moment_trace(scheme, N, l);
                rows.push_back({double(N), double(l), mean, zero, std::abs(mean - zero), gap_bound(scheme, N, l)});
            }
        }
        return rows;
    });
    const std::size_t value_col = variance ? 2 : 4;
    std::vector<double> slopes(L + 1);
    for (int l = 0; l <= L; ++l) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            x.push_back(double(ns[i]));
            y.push_back(blocks[i][l][value_col]);
        }
        slopes[l] = loglog_slope(x, y);
    }
    CsvTable table(variance ? std::vector<std::string>{"N", "ell", "variance", "variance_bound", "slope"}
                            : std::vector<std::string>{"N", "ell", "mean", "zero_side", "abs_gap", "gap_bound", "slope"});
    for (const auto& rows : blocks)
        for (auto row : rows) {
            row.push_back(slopes[static_cast<std::size_t>(row[1])]);
            table.add_row(row);
        }
    emit_csv(config, table, out);
}

void cmd_kva(const json& config, std::ostream& out) {
    const std::string where = "kva";
    check_keys(config, with_common({"scheme", "moments", "density", "order"}), where);
    const json s = scheme_json(config, where);
    check_keys(s, {"name", "alpha", "beta"}, where + ".scheme");
    ClassicalEnsembleId id{classical_kind_from_name(get<std::string>(s, "name", where)),
                           get_or<double>(s, "alpha", 0.0, where), get_or<double>(s, "beta", 0.0, where)};
    validate(id);
    KVAMixture mix = kva_functions(id);
    mix.quadrature_order = get_or<int>(config, "order", 200, where);
    require(mix.quadrature_order >= 2, where + ": order must be >= 2");
    if (config.contains("density")) {
        require(!config.contains("moments"), where + ": give either 'moments' or 'density', not both");
        CsvTable table({"x", "density"});
        for (double x : doubles(config, "density", where)) table.add_row({x, density_eval(mix, x)});
        emit_csv(config, table, out);
        return;
    }
    const int L = get<int>(config, "moments", where);
    require(L >= 0, where + ": moments must be >= 0");
    const MomentSequence m = kva_moments(mix, L);
    CsvTable table({"ell", "moment"});
    for (int l = 0; l <= L; ++l) table.add_row({double(l), m[l]});
    emit_csv(config, table, out);
}

void cmd_free_conv(const json& config, std::ostream& out) {
    const std::string where = "free-conv";
    check_keys(config, with_common({"op", "mu", "nu", "moments"}), where);
    const int L = get<int>(config, "moments", where);
    require(L >= 1, where + ": moments must be >= 1");
    const std::string op = get<std::string>(config, "op", where);
    const MomentSequence mu = measure_from_json(need(config, "mu", where), L);
    const MomentSequence nu = measure_from_json(need(config, "nu", where), L);
    MomentSequence m;
    if (op == "add")
        m = free_add(mu, nu);
    else if (op == "mul")
        m = free_mul(mu, nu);
    else
        throw InvalidArgument(where + ": op must be 'add' or 'mul'");
    CsvTable table({"ell", "moment"});
    for (int l = 0; l <= L; ++l) table.add_row({double(l), m[l]});
    emit_csv(config, table, out);
}

void cmd_curve(const json& config, std::ostream& out) {
    const std::string where = "curve";
    check_keys(config, with_common({"kind", "q", "a", "alpha", "reading", "moments", "density", "eps", "richardson"}),
               where);
    const std::string kind = get<std::string>(config, "kind", where);
    const std::vector<double> q = doubles(config, "q", where);
    const std::vector<double> a = doubles(config, "a", where);
    const std::string reading_name = get_or<std::string>(config, "reading", "j-indexed", where);
    IndexReading reading;
    if (reading_name == "j-indexed")
        reading = IndexReading::JIndexed;
    else if (reading_name == "verbatim")
        reading = IndexReading::Verbatim;
    else
        throw InvalidArgument(where + ": reading must be 'j-indexed' or 'verbatim'");
    AlgebraicCurve curve;
    if (kind == "hermite")
        curve = curve_hermite(q, a, reading);
    else if (kind == "laguerre")
        curve = curve_laguerre(q, a, get_or<double>(config, "alpha", 0.0, where), reading);
    else
        throw InvalidArgument(where + ": kind must be 'hermite' or 'laguerre'");
    if (config.contains("density")) {
        require(!config.contains("moments"), where + ": give either 'moments' or 'density', not both");
        const double eps = get_or<double>(config, "eps", 1e-6, where);
        const bool richardson = get_or<bool>(config, "richardson", false, where);
        CsvTable table({"x", "density"});
        for (double x : doubles(config, "density", where))
            table.add_row({x, stieltjes_density(curve, x, eps, richardson)});
        emit_csv(config, table, out);
        return;
    }
    const int L = get<int>(config, "moments", where);
    require(L >= 0, where + ": moments must be >= 0");
    const MomentSequence m = curve_moments(curve, L);
    CsvTable table({"ell", "moment"});
    for (int l = 0; l <= L; ++l) table.add_row({double(l), m[l]});
    emit_csv(config, table, out);
}

void cmd_sample(const json& config, std::ostream& out) {
    const std::string where = "sample";
    check_keys(config, with_common({"model", "n", "alpha", "ratios", "atoms", "samples", "seed", "moments"}), where);
    MatrixModelSpec spec;
    spec.kind = matrix_model_from_name(get<std::string>(config, "model", where));
    spec.N = get<long>(config, "n", where);
    spec.alpha = get_or<double>(config, "alpha", 0.0, where);
    if (spec.kind == MatrixModelKind::GueSource || spec.kind == MatrixModelKind::WishartCov) {
        const std::vector<double> atoms = doubles(config, "atoms", where);
        const std::vector<double> ratios =
            config.contains("ratios") ? doubles(config, "ratios", where) : std::vector<double>{1.0};
        spec.source = source_diagonal(AtomicMeasure(atoms, ratios), spec.N);
    } else {
        require(!config.contains("atoms") && !config.contains("ratios"),
                where + ": 'atoms' and 'ratios' apply to gue_source and wishart_cov only");
    }
    const int L = get<int>(config, "moments", where);
    const long samples = get<long>(config, "samples", where);
    const std::uint64_t seed = get_or<std::uint64_t>(config, "seed", 0, where);
    require(L >= 0, where + ": moments must be >= 0");
    const McMoments mc = mc_moments(spec, L, samples, seed);
    emit_json(config,
              json{{"mean", std::vector<double>(mc.mean.values().begin(), mc.mean.values().end())},
                   {"var", mc.variance},
                   {"se", mc.standard_error}},
              out);
}

}  // namespace

RecurrenceScheme scheme_from_json(const json& raw, long max_index) {
    const std::string where = "scheme";
    require(raw.is_object(), where + ": expected an object or a name");
    json spec = raw;
    if (raw.contains("ensemble")) {
        check_keys(raw, {"ensemble", "params"}, where);
        spec = json{{"name", raw.at("ensemble")}};
        if (raw.contains("params")) {
            require(raw.at("params").is_object(), where + ".params: expected an object");
            for (const auto& [key, value] : raw.at("params").items()) spec[key] = value;
        }
    }
    const std::string name = get<std::string>(spec, "name", where);
    if (name == "multiple-hermite" || name == "multiple-laguerre") {
        check_keys(spec, {"name", "a", "q", "alpha", "path"}, where);
        const MopKind kind = mop_kind_from_name(name);
        MopParams params{doubles(spec, "a", where), get_or<double>(spec, "alpha", 0.0, where)};
        const std::vector<double> q = doubles(spec, "q", where);
        require(q.size() == params.a.size(), where + ": 'a' and 'q' must have equal length");
        const std::string path_kind = get_or<std::string>(spec, "path", "greedy", where);
        if (path_kind == "greedy")
            return mop_scheme(kind, params, path_from_ratios(q, max_index));
        if (path_kind == "round-robin") {
            const MultiIndexPath path = path_round_robin(static_cast<int>(q.size()), max_index);
            for (std::size_t d = 0; d < q.size(); ++d)
                require(std::abs(q[d] - path.ratios()[d]) <= 1e-12, where + ": round-robin path needs equal ratios");
            return mop_scheme(kind, params, path);
        }
        throw InvalidArgument(where + ": path must be 'greedy' or 'round-robin'");
    }
    check_keys(spec, {"name", "alpha", "beta"}, where);
    ClassicalEnsembleId id{classical_kind_from_name(name), get_or<double>(spec, "alpha", 0.0, where),
                           get_or<double>(spec, "beta", 0.0, where)};
    return classical_scheme(id);
}

MomentSequence measure_from_json(const json& spec, int L) {
    const std::string where = "measure";
    const std::string type = get<std::string>(spec, "type", where);
    if (type == "semicircle") {
        check_keys(spec, {"type"}, where);
        return semicircle_moments(L);
    }
    if (type == "mp") {
        check_keys(spec, {"type", "alpha"}, where);
        return mp_moments(get<double>(spec, "alpha", where), L);
    }
    if (type == "arcsine") {
        check_keys(spec, {"type", "alpha", "beta"}, where);
        return arcsine_moments({get<double>(spec, "alpha", where), get<double>(spec, "beta", where)}, L);
    }
    if (type == "atoms") {
        check_keys(spec, {"type", "atoms", "weights"}, where);
        const std::vector<double> locations = doubles(spec, "atoms", where);
        const std::vector<double> weights = doubles(spec, "weights", where);
        return AtomicMeasure(locations, weights).moments(L);
    }
    if (type == "moments") {
        check_keys(spec, {"type", "values"}, where);
        std::vector<double> values = doubles(spec, "values", where);
        require(static_cast<int>(values.size()) > L, where + ": fewer moments than requested");
        values.resize(L + 1);
        return MomentSequence(std::move(values));
    }
    throw InvalidArgument(where + ": unknown type '" + type + "'");
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

int run(const json& config, std::ostream& out, std::ostream& err) {
    try {
        require(config.is_object(), "config: expected a JSON object");
        const std::string command = get<std::string>(config, "command", "config");
        if (config.contains("output")) require(config.at("output").is_string(), "config: key 'output' must be a string");
        if (command == "traces")
            cmd_traces(config, out);
        else if (command == "zeros")
            cmd_zeros(config, out, false);
        else if (command == "mop-zeros")
            cmd_zeros(config, out, true);
        else if (command == "gap-sweep")
            cmd_sweep(config, out, false);
        else if (command == "variance-sweep")
            cmd_sweep(config, out, true);
        else if (command == "kva")
            cmd_kva(config, out);
        else if (command == "free-conv")
            cmd_free_conv(config, out);
        else if (command == "curve")
            cmd_curve(config, out);
        else if (command == "sample")
            cmd_sample(config, out);
        else
            throw InvalidArgument("config: unknown command '" + command + "'");
        return kExitOk;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int run_text(const std::string& text, std::ostream& out, std::ostream& err) {
    json config;
    try {
        config = json::parse(text);
    } catch (const json::parse_error& e) {
        err << "error: malformed JSON: " << e.what() << '\n';
        return kExitValidation;
    }
    return run(config, out, err);
}

}  // namespace dpplab
