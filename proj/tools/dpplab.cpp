#include "dpplab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;

struct Flags {
    std::string scheme, kind, reading, path, op, mu, nu, model, output;
    std::optional<double> alpha, beta, eps;
    std::vector<double> a, q, density, ratios, atoms;
    std::vector<long> n;
    std::optional<int> moments, order;
    std::optional<long> samples;
    std::optional<std::uint64_t> seed;
    bool richardson = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--output,-o", f.output, "Output file (default: stdout)");
}

json scheme_object(const Flags& f) {
    json s{{"name", f.scheme}};
    if (f.alpha) s["alpha"] = *f.alpha;
    if (f.beta) s["beta"] = *f.beta;
    if (!f.a.empty()) s["a"] = f.a;
    if (!f.q.empty()) s["q"] = f.q;
    if (!f.path.empty()) s["path"] = f.path;
    return s;
}

json parse_inline(const std::string& text, const std::string& flag) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        throw CLI::ValidationError(flag, "expected a JSON object");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moments, zeros and limits of determinantal ensembles from their recurrence coefficients"};
    app.require_subcommand(1);
    Flags f;
    std::string config_path;

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config file");
    run->add_option("config", config_path, "Config file")->required();

    auto scheme_flags = [&](CLI::App* sub) {
        sub->add_option("--scheme", f.scheme, "gue | wishart | jacobi | charlier | meixner | multiple-hermite | multiple-laguerre")
            ->required();
        sub->add_option("--alpha", f.alpha);
        sub->add_option("--beta", f.beta);
        sub->add_option("--a", f.a, "MOP parameters a_d");
        sub->add_option("--q", f.q, "MOP ratios q_d");
        sub->add_option("--path", f.path, "greedy | round-robin");
        sub->add_option("--n", f.n, "Matrix sizes")->required();
        sub->add_option("--moments", f.moments, "Highest moment L")->required();
        add_common(sub, f);
    };
    auto* traces = app.add_subcommand("traces", "Mean, zero-side and variance moments");
    scheme_flags(traces);
    auto* zeros = app.add_subcommand("zeros", "Moments of the zeros of the average characteristic polynomial");
    scheme_flags(zeros);
    auto* gap = app.add_subcommand("gap-sweep", "Moment gap and its bound over N");
    scheme_flags(gap);
    auto* var = app.add_subcommand("variance-sweep", "Variance of empirical moments and its bound over N");
    scheme_flags(var);

    auto* kva = app.add_subcommand("kva", "Limiting zero distribution of a classical ensemble");
    kva->add_option("--scheme", f.scheme)->required();
    kva->add_option("--alpha", f.alpha);
    kva->add_option("--beta", f.beta);
    kva->add_option("--moments", f.moments);
    kva->add_option("--density", f.density, "Points at which to evaluate the density");
    kva->add_option("--order", f.order, "Gauss-Legendre order");
    add_common(kva, f);

    auto* mop = app.add_subcommand("mop-zeros", "Zero moments of multiple Hermite or Laguerre polynomials");
    mop->add_option("--kind", f.kind, "hermite | laguerre")->required();
    mop->add_option("--a", f.a)->required();
    mop->add_option("--q", f.q)->required();
    mop->add_option("--alpha", f.alpha);
    mop->add_option("--path", f.path);
    mop->add_option("--n", f.n)->required();
    mop->add_option("--moments", f.moments)->required();
    add_common(mop, f);

    auto* conv = app.add_subcommand("free-conv", "Free additive or multiplicative convolution of moments");
    conv->add_option("--op", f.op, "add | mul")->required();
    conv->add_option("--mu", f.mu, "Measure as JSON, e.g. {\"type\":\"semicircle\"}")->required();
    conv->add_option("--nu", f.nu, "Measure as JSON")->required();
    conv->add_option("--moments", f.moments)->required();
    add_common(conv, f);

    auto* curve = app.add_subcommand("curve", "Cauchy transform from the algebraic equation");
    curve->add_option("--kind", f.kind, "hermite | laguerre")->required();
    curve->add_option("--q", f.q)->required();
    curve->add_option("--a", f.a)->required();
    curve->add_option("--alpha", f.alpha);
    curve->add_option("--reading", f.reading, "j-indexed | verbatim");
    curve->add_option("--moments", f.moments);
    curve->add_option("--density", f.density);
    curve->add_option("--eps", f.eps);
    curve->add_flag("--richardson", f.richardson);
    add_common(curve, f);

    auto* sample = app.add_subcommand("sample", "Monte-Carlo moments of a matrix model");
    sample->add_option("--model", f.model, "gue | wishart | gue_source | wishart_cov")->required();
    sample->add_option("--n", f.n)->required()->expected(1);
    sample->add_option("--alpha", f.alpha);
    sample->add_option("--ratios", f.ratios);
    sample->add_option("--atoms", f.atoms);
    sample->add_option("--samples", f.samples)->required();
    sample->add_option("--seed", f.seed);
    sample->add_option("--moments", f.moments)->required();
    add_common(sample, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dpplab::kExitValidation;
    }

    if (run->parsed()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config file '" << config_path << "'\n";
            return dpplab::kExitValidation;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        return dpplab::run_text(buf.str(), std::cout, std::cerr);
    }

    CLI::App* sub = app.get_subcommands().front();
    json config{{"command", sub->get_name()}};
    if (!f.output.empty()) config["output"] = f.output;
    if (f.moments) config["moments"] = *f.moments;
    const std::string name = sub->get_name();
    if (name == "traces" || name == "zeros" || name == "gap-sweep" || name == "variance-sweep") {
        config["scheme"] = scheme_object(f);
        config["n"] = f.n;
    } else if (name == "kva") {
        config["scheme"] = scheme_object(f);
        if (!f.density.empty()) config["density"] = f.density;
        if (f.order) config["order"] = *f.order;
    } else if (name == "mop-zeros") {
        config["kind"] = f.kind;
        config["a"] = f.a;
        config["q"] = f.q;
        if (f.alpha) config["alpha"] = *f.alpha;
        if (!f.path.empty()) config["path"] = f.path;
        config["n"] = f.n;
    } else if (name == "free-conv") {
        config["op"] = f.op;
        try {
            config["mu"] = parse_inline(f.mu, "--mu");
            config["nu"] = parse_inline(f.nu, "--nu");
        } catch (const CLI::ValidationError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return dpplab::kExitValidation;
        }
    } else if (name == "curve") {
        config["kind"] = f.kind;
        config["q"] = f.q;
        config["a"] = f.a;
        if (f.alpha) config["alpha"] = *f.alpha;
        if (!f.reading.empty()) config["reading"] = f.reading;
        if (!f.density.empty()) config["density"] = f.density;
        if (f.eps) config["eps"] = *f.eps;
        if (f.richardson) config["richardson"] = true;
    } else if (name == "sample") {
        config["model"] = f.model;
        config["n"] = f.n.front();
        if (f.alpha) config["alpha"] = *f.alpha;
        if (!f.ratios.empty()) config["ratios"] = f.ratios;
        if (!f.atoms.empty()) config["atoms"] = f.atoms;
        config["samples"] = *f.samples;
        if (f.seed) config["seed"] = *f.seed;
    }
    return dpplab::run(config, std::cout, std::cerr);
}
