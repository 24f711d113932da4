#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "lecert/admissibility.hpp"
#include "lecert/certifier.hpp"
#include "lecert/errors.hpp"
#include "lecert/le.hpp"
#include "lecert/newton.hpp"
#include "lecert/nondegen.hpp"
#include "lecert/probe.hpp"
#include "lecert/version.hpp"

namespace lecert::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals
{
    std::uint64_t seed = 42;
    std::string json_path;
    bool quiet = false;
    int threads = 1;
    bool verbose = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write '" + path + "'");
        out << content;
        out.flush();
        if (!out)
            throw Error("cannot write '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        throw Error("cannot write '" + path + "'");
    }
}

std::vector<Rational> parse_samples(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty())
            throw Error("empty entry in t-sample list '" + text + "'");
        out.push_back(parse_rational(item));
    }
    return out;
}

std::string samples_text(const std::vector<Rational>& samples)
{
    std::string s;
    for (std::size_t i = 0; i < samples.size(); ++i)
        s += (i ? "," : "") + to_string(samples[i]);
    return s;
}

/// f_t when t is given, f itself when it is already t-free.
PolyFamily fixed_germ(const PolyFamily& f, const std::optional<std::string>& t, const char* what)
{
    if (t)
        return specialize_t(f, parse_rational(*t));
    if (!f.is_t_free())
        throw Error(std::string(what) + " needs a t-free polynomial; pass --t");
    return f;
}

/// Coefficients of c(t) from t^0 upwards.
json coefficient_json(const UniPoly& c)
{
    json out = json::array();
    for (const auto& q : c.coefficients())
        out.push_back(to_string(q));
    return out;
}

}   // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certifier for equisingularity of families of line singularities", "lecert"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Globals g;
    app.add_option("--seed", g.seed, "Random seed for all numeric checks")->default_val(42);
    app.add_option("--json", g.json_path, "Write the JSON result to this file");
    app.add_flag("--quiet", g.quiet, "Suppress human-readable output");
    app.add_option("--threads", g.threads, "Worker threads (computations are single-threaded)")
        ->check(CLI::PositiveNumber)
        ->default_val(1);
    app.add_flag("--verbose", g.verbose, "Timing information on stderr");

    std::string file;
    std::optional<std::string> t_opt;
    std::string t_samples = "0,1,1/2,-2";
    std::string mode = "per-vertex";
    int tier = 3;
    std::optional<int> a_opt;
    bool cross_check = false;
    ProbeConfig probe;
    std::string csv_path;
    std::string axis = "line";

    auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Polynomial input file")->required(); };
    auto add_t = [&](CLI::App* sub) { sub->add_option("--t", t_opt, "Parameter value t (rational)"); };
    auto add_tier = [&](CLI::App* sub) {
        sub->add_option("--nondegen-tier", tier, "Non-degeneracy effort tier")->check(CLI::Range(1, 3))->default_val(3);
    };
    auto add_samples = [&](CLI::App* sub) {
        sub->add_option("--t-samples", t_samples, "Comma-separated rational t-samples")->default_val("0,1,1/2,-2");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "Condition (iii) mode")
            ->check(CLI::IsMember({"per-vertex", "strict"}))
            ->default_val("per-vertex");
    };

    auto* parse_cmd = app.add_subcommand("parse", "Parse and print the canonical form");
    add_file(parse_cmd);
    auto* newton_cmd = app.add_subcommand("newton", "Newton polyhedron and compact faces");
    add_file(newton_cmd);
    add_t(newton_cmd);
    auto* nu_cmd = app.add_subcommand("nu", "Newton number of a convenient polynomial");
    add_file(nu_cmd);
    add_t(nu_cmd);
    auto* nondegen_cmd = app.add_subcommand("nondegen", "Newton non-degeneracy");
    add_file(nondegen_cmd);
    add_t(nondegen_cmd);
    add_tier(nondegen_cmd);
    auto* adm_cmd = app.add_subcommand("admissible", "Admissibility report");
    add_file(adm_cmd);
    add_samples(adm_cmd);
    add_mode(adm_cmd);
    add_tier(adm_cmd);
    auto* le_cmd = app.add_subcommand("le", "Le numbers of f_t");
    add_file(le_cmd);
    add_t(le_cmd);
    add_tier(le_cmd);
    le_cmd->add_option("--a", a_opt, "Exponent a of the z1-power")->check(CLI::Range(2, 1000));
    le_cmd->add_flag("--cross-check", cross_check, "Compare lambda1 with generic slice Milnor numbers");
    auto* cert_cmd = app.add_subcommand("certify", "Full certificate");
    add_file(cert_cmd);
    add_samples(cert_cmd);
    add_mode(cert_cmd);
    add_tier(cert_cmd);
    auto* probe_cmd = app.add_subcommand("probe", "Numerical arc probe of the regularity inequalities");
    add_file(probe_cmd);
    probe_cmd->add_option("--arcs", probe.arcs, "Number of arcs")->check(CLI::PositiveNumber)->default_val(20);
    probe_cmd->add_option("--s0", probe.s0, "First grid parameter")->check(CLI::PositiveNumber)->default_val(0.1);
    probe_cmd->add_option("--ratio", probe.ratio, "Grid ratio")->check(CLI::Range(1e-6, 0.999))->default_val(0.5);
    probe_cmd->add_option("--steps", probe.steps, "Grid steps K (K+1 points)")->check(CLI::Range(1, 200))->default_val(14);
    probe_cmd->add_option("--csv", csv_path, "Write per-point ratios as CSV");
    probe_cmd->add_option("--axis", axis, "Singular stratum: line or isolated")
        ->check(CLI::IsMember({"line", "isolated"}))
        ->default_val("line");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    const std::string sub = app.get_subcommands().front()->get_name();
    int exit_code = 0;
    try
    {
        const PolyFamily f = parse_family(read_file(file));
        json result;
        json config = {{"subcommand", sub}, {"input_file", file}, {"seed", g.seed}, {"threads", g.threads}};
        std::string human;

        if (sub == "parse")
        {
            json terms = json::array();
            for (const auto& [b, c] : f.terms())
                terms.push_back({{"exponent", b}, {"coefficient", coefficient_json(c)}});
            result = {{"nvars", f.nvars()}, {"canonical", unparse(f)}, {"terms", terms}};
            human = unparse(f);
        }
        else if (sub == "newton")
        {
            const PolyFamily germ = t_opt ? specialize_t(f, parse_rational(*t_opt)) : f;
            config["t"] = t_opt ? json(*t_opt) : json(nullptr);
            NewtonPolyhedron np = newton_polyhedron(germ);
            result = to_json(np);
            human = result.dump(2) + "\n";
        }
        else if (sub == "nu")
        {
            const PolyFamily germ = t_opt ? specialize_t(f, parse_rational(*t_opt)) : f;
            config["t"] = t_opt ? json(*t_opt) : json(nullptr);
            const long long nu = newton_number(newton_polyhedron(germ));
            result = {{"nu", nu}};
            human = std::to_string(nu) + "\n";
        }
        else if (sub == "nondegen")
        {
            const PolyFamily germ = fixed_germ(f, t_opt, "nondegen");
            config["t"] = t_opt ? json(*t_opt) : json(nullptr);
            config["nondegen_tier"] = tier;
            NondegeneracyVerdict v = is_newton_nondegenerate(germ, tier, g.seed);
            result = to_json(v);
            human = to_string(v.status) + "\n";
        }
        else if (sub == "admissible")
        {
            AdmissibilityOptions opts;
            opts.t_samples = parse_samples(t_samples);
            opts.mode = parse_mode(mode);
            opts.tier = tier;
            opts.seed = g.seed;
            config["t_samples"] = samples_text(opts.t_samples);
            config["mode"] = mode;
            config["nondegen_tier"] = tier;
            AdmissibilityReport r = check_admissible(f, opts);
            result = to_json(r);
            human = to_string(r.overall) + (r.reason.empty() ? "" : ": " + r.reason) + "\n" +
                    "condition (iii): " + to_string(r.condition_iii.status) + "\n";
        }
        else if (sub == "le")
        {
            const Rational t = t_opt ? parse_rational(*t_opt) : Rational(0);
            const PolyFamily f_t = specialize_t(f, t);
            config["t"] = to_string(t);
            config["nondegen_tier"] = tier;
            const int a = a_opt ? *a_opt : choose_exponent_a(f, {t}, tier, g.seed);
            LeNumbers le = le_numbers(f_t, a, tier, g.seed);
            if (cross_check)
                le.slice_mu = generic_slice_milnor(f_t, 3, g.seed);
            result = to_json(le);
            human = "lambda0 = " + std::to_string(le.lambda0) + "\nlambda1 = " + std::to_string(le.lambda1) +
                    "\na = " + std::to_string(a) + "\n";
            if (le.slice_mu)
                human += "slice mu = " + std::to_string(*le.slice_mu) + "\n";
        }
        else if (sub == "certify")
        {
            CertifyOptions opts;
            opts.admissibility.t_samples = parse_samples(t_samples);
            opts.admissibility.mode = parse_mode(mode);
            opts.admissibility.tier = tier;
            opts.admissibility.seed = g.seed;
            Certificate c = certify_family(f, opts);
            result = to_json(c);
            human = "verdict: " + to_string(c.verdict) + "\nadmissibility: " + to_string(c.admissibility.overall) +
                    "\n";
            for (const auto& row : result["le_table"])
            {
                human += "t = " + row["t"].get<std::string>() + ": ";
                human += row["le"].is_null() ? "error: " + row["error"].get<std::string>()
                                             : "lambda0 = " + row["le"]["lambda0"].dump() +
                                                   ", lambda1 = " + row["le"]["lambda1"].dump();
                human += "\n";
            }
            for (const auto& r : c.reasons)
                human += "reason: " + r + "\n";
            exit_code = c.verdict == Verdict::Equisingular ? 0 : 2;
        }
        else if (sub == "probe")
        {
            probe.seed = g.seed;
            probe.axis = parse_axis_mode(axis);
            ArcProbeReport r = run_probe(f, probe);
            result = to_json(r);
            if (!csv_path.empty())
                write_atomic(csv_path, to_csv(r));
            char buf[160];
            std::snprintf(buf, sizeof buf, "arcs %zu: R1 %d, R2 %d, C1 %d, C2 %d passing; max identity error %.3g\n",
                          r.arcs.size(), r.pass_R1, r.pass_R2, r.pass_C1, r.pass_C2, r.max_identity_error);
            human = buf;
        }

        json doc;
        doc["config"] = config;
        doc["version"] = kVersion;
        for (auto it = result.begin(); it != result.end(); ++it)
        {
            if (it.key() != "config" && it.key() != "version")
                doc[it.key()] = it.value();
            else if (it.key() == "config")
                doc["config"].update(it.value());
        }
        if (!g.json_path.empty())
            write_atomic(g.json_path, doc.dump(2) + "\n");
        if (!g.quiet)
            out << human;
    }
    catch (const std::exception& e)
    {
        err << "lecert: " << e.what() << "\n";
        return 1;
    }
    if (g.verbose)
    {
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        err << "lecert: " << sub << " finished in " << ms << " ms\n";
    }
    return exit_code;
}

}   // namespace lecert::cli
