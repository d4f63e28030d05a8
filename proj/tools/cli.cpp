#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>

#include "commands.hpp"
#include "strichartz/errors.hpp"
#include "strichartz/parallel.hpp"

namespace strichartz::cli {

namespace {

constexpr int kSchemaVersion = 1;

struct Binding {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> set;
};

using Bindings = std::vector<Binding>;

template <class T>
void bind_option(CLI::App* sub, Bindings& bs, const std::string& key, T& var, const std::string& desc,
                 bool comma_list = true) {
    CLI::Option* o = sub->add_option("--" + key, var, desc)->capture_default_str();
    if constexpr (std::is_same_v<T, std::vector<std::string>> || std::is_same_v<T, std::vector<std::uint64_t>>)
        if (comma_list) o->delimiter(',');
    bs.push_back({key, o, [&var](const json& j) { var = j.get<T>(); }});
}

void bind_switch(CLI::App* sub, Bindings& bs, const std::string& key, bool& var, const std::string& desc) {
    CLI::Option* o = sub->add_flag("--" + key, var, desc);
    bs.push_back({key, o, [&var](const json& j) { var = j.get<bool>(); }});
}

void apply_config(const std::string& path, const std::string& command, const Bindings& bs) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("config " + path + " is not valid JSON: " + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
        throw InvalidArgument("config schema_version must be " + std::to_string(kSchemaVersion));
    if (!j.contains(command)) return;
    const json& block = j[command];
    if (!block.is_object()) throw InvalidArgument("config block '" + command + "' must be an object");
    for (auto it = block.begin(); it != block.end(); ++it) {
        const auto b = std::find_if(bs.begin(), bs.end(), [&](const Binding& x) { return x.key == it.key(); });
        if (b == bs.end()) throw InvalidArgument("unknown key '" + it.key() + "' in config block '" + command + "'");
        if (b->opt->count() == 0) {
            try {
                b->set(it.value());
            } catch (const json::exception& e) {
                throw InvalidArgument("bad value for '" + it.key() + "': " + e.what());
            }
        }
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sharp Strichartz constants: evaluation, oracles, ascent, symmetry and functional-equation checks",
                 "strichartz"};
    app.require_subcommand(1);
    std::string config;
    int threads = 0;
    app.add_option("--config", config, "JSON config file (schema_version 1); flags override its values");
    app.add_option("--threads", threads, "worker threads (overrides STRICHARTZ_THREADS)");

    VerifyConfig vc;
    MeasureConfig mc;
    MaximizeConfig xc;
    FeqConfig fc;
    OrbitConfig oc;
    QuotientConfig qc;
    std::map<std::string, Bindings> binds;

    auto* v = app.add_subcommand("verify-constants", "evaluate the four sharp constants at their maximizers");
    bind_option(v, binds["verify-constants"], "case", vc.cases, "cases: schr1, schr2, wave3, wave2");
    bind_option(v, binds["verify-constants"], "tol", vc.tol, "absolute tolerance for every case (< 0 keeps per-case values)");
    bind_switch(v, binds["verify-constants"], "fft-check", vc.fft_check, "add the 96^3 FFT cross-check for wave3");
    bind_option(v, binds["verify-constants"], "out", vc.out, "report path (stdout if empty)");

    auto* m = app.add_subcommand("measure-conv", "surface-measure convolutions: closed form against oracle");
    bind_option(m, binds["measure-conv"], "case", mc.cases,
         "cases: parabolic_pair, parabolic_triple, cone3_pair, cone2_pair, cone2_triple");
    bind_option(m, binds["measure-conv"], "point", mc.points, "evaluation point tau,xi_1,..; repeatable, one case only",
                false);
    bind_switch(m, binds["measure-conv"], "sweep", mc.sweep, "add a constancy sweep per case");
    bind_option(m, binds["measure-conv"], "sweep-points", mc.sweep_points, "points per sweep");
    bind_option(m, binds["measure-conv"], "seed", mc.seed, "sweep seed");
    bind_option(m, binds["measure-conv"], "tol", mc.tol, "relative tolerance");
    bind_option(m, binds["measure-conv"], "out", mc.out, "report path (stdout if empty)");

    auto* x = app.add_subcommand("maximize", "gradient ascent on the quotient from random seeds");
    bind_option(x, binds["maximize"], "case", xc.cases, "cases: schr1, schr2, wave2, wave3");
    bind_option(x, binds["maximize"], "seeds", xc.seeds, "seed list");
    bind_option(x, binds["maximize"], "iters", xc.iters, "iteration cap per run");
    bind_option(x, binds["maximize"], "method", xc.method, "lens or window (Schrodinger; wave runs use the window)");
    bind_option(x, binds["maximize"], "degree", xc.degree, "Hermite degree for the lens method (0 = default)");
    bind_option(x, binds["maximize"], "tol", xc.tol, "allowed gap to the sharp constant");
    bind_option(x, binds["maximize"], "fit-tol", xc.fit_tol, "allowed family-fit residual");
    bind_option(x, binds["maximize"], "out-dir", xc.out_dir, "directory for traces and summary.json");
    bind_option(x, binds["maximize"], "workers", xc.workers, "concurrent runs");

    auto* f = app.add_subcommand("feq-check", "functional-equation residuals and map identities");
    bind_option(f, binds["feq-check"], "kind", fc.kinds, "kinds: schr1, schr2, wave2, wave3");
    bind_option(f, binds["feq-check"], "fixture", fc.fixtures, "fixtures: exponential, nonmember, line_pair, maps");
    bind_option(f, binds["feq-check"], "samples", fc.samples, "random inputs for the map identities");
    bind_option(f, binds["feq-check"], "seed", fc.seed, "fixture seed");
    bind_option(f, binds["feq-check"], "out", fc.out, "report path (stdout if empty)");

    auto* o = app.add_subcommand("orbit", "canonical forms and orbit equivalence of maximizer parameters");
    bind_option(o, binds["orbit"], "equation", oc.equation, "schrodinger or wave");
    bind_option(o, binds["orbit"], "dim", oc.dim, "spatial dimension");
    bind_option(o, binds["orbit"], "a", oc.a, "first params as JSON");
    bind_option(o, binds["orbit"], "b", oc.b, "second params as JSON");
    bind_option(o, binds["orbit"], "tol", oc.tol, "coefficient tolerance");
    bind_option(o, binds["orbit"], "out", oc.out, "report path (stdout if empty)");

    auto* q = app.add_subcommand("quotient", "FFT quotient of a maximizer or random field");
    bind_option(q, binds["quotient"], "equation", qc.equation, "schrodinger or wave");
    bind_option(q, binds["quotient"], "dim", qc.dim, "spatial dimension");
    bind_option(q, binds["quotient"], "points", qc.points, "points per axis");
    bind_option(q, binds["quotient"], "extent", qc.extent, "half-width of the spatial box");
    bind_option(q, binds["quotient"], "slices", qc.slices, "time slices");
    bind_option(q, binds["quotient"], "half-width", qc.half_width, "time window half-width");
    bind_option(q, binds["quotient"], "data", qc.data, "maximizer or random");
    bind_option(q, binds["quotient"], "seed", qc.seed, "seed for random data");
    bind_option(q, binds["quotient"], "boundary", qc.boundary, "boundary mass threshold");
    bind_option(q, binds["quotient"], "out", qc.out, "report path (stdout if empty)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (threads > 0) set_worker_count(threads);
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (!config.empty()) apply_config(config, name, binds[name]);
        if (name == "verify-constants") return cmd_verify_constants(vc, out, err);
        if (name == "measure-conv") return cmd_measure_conv(mc, out, err);
        if (name == "maximize") return cmd_maximize(xc, out, err);
        if (name == "feq-check") return cmd_feq_check(fc, out, err);
        if (name == "orbit") return cmd_orbit(oc, out, err);
        return cmd_quotient(qc, out, err);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsupportedCase& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}

}  // namespace strichartz::cli
