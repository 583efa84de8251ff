#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/sha.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weyltail/acceptance.hpp"
#include "weyltail/constants.hpp"
#include "weyltail/error.hpp"
#include "weyltail/experiments.hpp"
#include "weyltail/measures.hpp"
#include "weyltail/parallel.hpp"
#include "weyltail/theta.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 1;
    int threads = 1;
    long samples = 100000;
    long N = 0;
    double b = 1, c = 0, alpha = 0, eta = 1.5, eps = 0.5;
    double d_irr = -1;
    std::string case_name = "rational";
    std::string trunc = "default";
    std::string out;
    int bins = 100;
    double r_max = -1, p_exp = -1, r_step = 0.25;
    std::vector<double> t_ladder = {4, 8, 12, 16};
    bool quick = false;
    bool alpha_set = false;
};

// failures the caller can fix by changing flags
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg)
{
    if (!ok) throw ValidationError(msg);
}

std::string sha1_hex(const std::string& data)
{
    unsigned char md[SHA_DIGEST_LENGTH];
    SHA1(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    char hex[2 * SHA_DIGEST_LENGTH + 1];
    for (int i = 0; i < SHA_DIGEST_LENGTH; ++i) std::snprintf(hex + 2 * i, 3, "%02x", md[i]);
    return hex;
}

// same id git gives the file as a blob
std::string git_blob_hash(const std::string& content)
{
    return sha1_hex("blob " + std::to_string(content.size()) + '\0' + content);
}

wt::MeasureTag parse_case(const std::string& s)
{
    return s == "rational" ? wt::MeasureTag::Rational : wt::MeasureTag::Irrational;
}

wt::TruncationPolicy parse_trunc(const std::string& s)
{
    return s == "paper-repro" ? wt::TruncationPolicy::paper_repro() : wt::TruncationPolicy::standard();
}

std::ostringstream csv_stream()
{
    std::ostringstream os;
    os.precision(17);
    return os;
}

class Artifacts {
public:
    explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}
    void write(const std::string& name, const std::string& content)
    {
        fs::create_directories(dir_);
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        f << content;
        files_.push_back({{"file", name}, {"bytes", content.size()}, {"blob", git_blob_hash(content)}});
    }
    const json& files() const { return files_; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    json files_ = json::array();
};

void validate(const RunConfig& c)
{
    require(c.threads >= 1, "--threads must be >= 1");
    require(c.samples >= 1, "--samples must be >= 1");
    require(c.case_name == "rational" || c.case_name == "irrational", "--case must be rational or irrational");
    require(c.trunc == "default" || c.trunc == "paper-repro", "--trunc must be default or paper-repro");
    require(std::isfinite(c.c) && std::isfinite(c.alpha), "--c and --alpha must be finite");
    const auto& s = c.subcommand;
    if (s == "constants") {
        require(c.b >= 1 && std::isfinite(c.b), "--b must be >= 1");
        require(c.eta > 1 && c.eta <= 2, "--eta must lie in (1, 2]");
        require(c.eps > 0 && c.eps <= 1, "--eps must lie in (0, 1]");
    }
    if (s == "histogram") {
        require(c.N >= 1, "--N must be >= 1");
        require(c.bins >= 1, "--bins must be >= 1");
    }
    if (s == "tails" || s == "fluctuation") {
        require(c.N >= 0, "--N must be >= 0 (0 samples the limit law)");
        require(c.r_max < 0 || c.r_max >= 1, "--r-max must be >= 1");
        require(c.r_step > 0, "--r-step must be positive");
    }
    if (s == "equidist") {
        require(c.samples >= 2, "--samples must be >= 2");
        require(!c.t_ladder.empty() && std::is_sorted(c.t_ladder.begin(), c.t_ladder.end()),
                "--t must be a non-empty increasing list");
    }
}

void run_constants(const RunConfig& c, Artifacts& out)
{
    std::optional<double> dirr;
    if (c.d_irr > 0) dirr = c.d_irr;
    auto e = wt::explicit_constants(c.b, c.eta, c.eps, dirr);
    std::vector<std::pair<const char*, double>> rows = {
        {"b", e.b}, {"eta", e.eta}, {"eps", e.eps}, {"C_eta", e.C_eta}, {"K", e.K}, {"K_L", e.K_L},
        {"sp_chi_b", e.sp_chi_b}, {"sp_chi_b_left", e.sp_chi_b_left}, {"D_rat", e.D_rat}, {"D_irr", e.D_irr},
        {"R0_rat", e.R0_rat}, {"P_rat", e.P_rat}, {"R_rat", e.R_rat}, {"implied_rat", e.implied_rat},
        {"R0_irr", e.R0_irr}, {"P_irr", e.P_irr}, {"R_irr", e.R_irr}, {"implied_irr", e.implied_irr},
        {"eta_rat_of_eps", e.eta_rat_of_eps}, {"eta_irr_of_eps", e.eta_irr_of_eps}};
    auto os = csv_stream();
    os << "name,value\n";
    for (auto& [k, v] : rows) {
        os << k << ',' << v << '\n';
        std::printf("%-16s %.10g\n", k, v);
    }
    if (!e.d_irr_conjecture_holds) std::printf("note: D_irr < 3 here, the irrational constants rest on it\n");
    out.write("constants.csv", os.str());
}

void run_sample(const RunConfig& c, Artifacts& out)
{
    std::vector<wt::MeasureSample> s(c.samples);
    auto tag = parse_case(c.case_name);
    wt::parallel_for(s.size(), c.threads, [&](std::size_t i) {
        wt::RngStream rng(c.seed, i);
        s[i] = wt::sample(rng, tag);
    });
    std::ostringstream os;
    wt::write_samples_csv(os, s);
    out.write("samples.csv", os.str());
}

void run_histogram(const RunConfig& c, Artifacts& out)
{
    auto h = wt::run_weyl_histogram(c.N, c.samples, c.c, c.alpha, c.bins, {c.seed, c.threads});
    auto os = csv_stream();
    os << "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < h.hist.counts.size(); ++i)
        os << h.hist.bin_edges[i] << ',' << h.hist.bin_edges[i + 1] << ',' << h.hist.counts[i] << '\n';
    out.write("histogram.csv", os.str());
}

// |Theta|^2 samples, or (|S_N|/sqrt N)^2 when N > 0
std::vector<double> squared_values(const RunConfig& c)
{
    auto tag = parse_case(c.case_name);
    if (c.N > 0) {
        double alpha = c.alpha_set || tag == wt::MeasureTag::Rational ? c.alpha : std::sqrt(2.0);
        auto h = wt::run_weyl_histogram(c.N, c.samples, c.c, alpha, 1, {c.seed, c.threads});
        for (double& v : h.values) v *= v;
        return h.values;
    }
    wt::Window chi = wt::Window::indicator(1.0);
    return wt::run_limit_law_sampling(tag, chi, chi, c.samples, parse_trunc(c.trunc), {c.seed, c.threads}).values;
}

void write_curve(const wt::TailCurve& t, const std::string& name, Artifacts& out)
{
    auto os = csv_stream();
    os << "R,empirical,asymptotic,stderr,fluct,fluct_se\n";
    for (std::size_t i = 0; i < t.R.size(); ++i)
        os << t.R[i] << ',' << t.empirical[i] << ',' << t.asymptotic[i] << ',' << t.stderr_[i] << ',' << t.fluct[i]
           << ',' << t.fluct_se[i] << '\n';
    out.write(name, os.str());
}

void run_tails(const RunConfig& c, Artifacts& out, json& summary, bool band)
{
    auto tag = parse_case(c.case_name);
    bool rat = tag == wt::MeasureTag::Rational;
    double r_max = c.r_max > 0 ? c.r_max : (rat ? 16 : 7);
    double p = c.p_exp > 0 ? c.p_exp : (rat ? 5.5 : 7.5);
    auto t = wt::tail_curve(squared_values(c), tag, 1.0, r_max, c.r_step, p);
    write_curve(t, band ? "fluctuation.csv" : "tails.csv", out);
    if (band) {
        double lo = rat ? 4 : 2.5, hi = rat ? 12 : 5.5;
        bool ok = wt::fluctuation_band_ok(t, lo, hi);
        std::printf("fluctuation band (5 SE) on [%g, %g]: %s\n", lo, hi, ok ? "bounded" : "broken");
        summary["band"] = {{"lo", lo}, {"hi", hi}, {"bounded", ok}};
    }
}

void run_equidist(const RunConfig& c, Artifacts& out)
{
    auto rows = wt::run_equidistribution_check(c.t_ladder, c.samples, parse_case(c.case_name), {c.seed, c.threads},
                                               c.c, c.alpha);
    auto os = csv_stream();
    os << "t,atom_00,atom_h0,atom_0h,off_atom,ks_x,ks_y,ks_phi,ks_phi_self\n";
    for (auto& r : rows)
        os << r.t << ',' << r.atom_freq[0] << ',' << r.atom_freq[1] << ',' << r.atom_freq[2] << ',' << r.off_atom_freq
           << ',' << r.ks_x << ',' << r.ks_y << ',' << r.ks_phi << ',' << r.ks_phi_self << '\n';
    out.write("equidist.csv", os.str());
}

bool run_verify(const RunConfig& c, Artifacts& out, json& summary)
{
    wt::AcceptanceOptions opt;
    opt.quick = c.quick;
    opt.threads = c.threads;
    opt.seed = c.seed;
    bool ok = true;
    std::ostringstream log;
    json res = json::array();
    wt::run_acceptance(opt, [&](const wt::CriterionResult& r) {
        std::string line = wt::format_result(r);
        std::printf("%s\n", line.c_str());
        std::fflush(stdout);
        log << line << '\n';
        res.push_back({{"id", r.id}, {"pass", r.pass}, {"reproducible", r.reproducible}, {"seconds", r.seconds}});
        ok = ok && r.pass;
    });
    out.write("verify.txt", log.str());
    summary["criteria"] = res;
    return ok;
}

json config_json(const RunConfig& c)
{
    auto tp = parse_trunc(c.trunc);
    return {{"subcommand", c.subcommand}, {"seed", c.seed}, {"threads", c.threads}, {"samples", c.samples},
            {"N", c.N}, {"b", c.b}, {"c", c.c}, {"alpha", c.alpha}, {"eta", c.eta}, {"eps", c.eps},
            {"case", c.case_name}, {"bins", c.bins}, {"r_max", c.r_max}, {"p", c.p_exp}, {"r_step", c.r_step},
            {"t", c.t_ladder}, {"quick", c.quick},
            {"truncation",
             {{"preset", c.trunc}, {"u_max", tp.u_max}, {"n_max", tp.n_max}, {"tol", tp.tol},
              {"max_terms", tp.max_terms}}}};
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    const char* env_out = std::getenv("WEYLTAIL_OUT_DIR");
    cfg.out = env_out && *env_out ? env_out : "weyltail_out";

    CLI::App app{"weyltail: theta sums, tail laws and explicit constants"};
    app.require_subcommand(1, 1);
    auto common = [&](CLI::App* s) {
        s->add_option("--seed", cfg.seed, "64-bit seed");
        s->add_option("--threads", cfg.threads, "worker threads; output does not depend on it");
        s->add_option("--out", cfg.out, "output directory (default $WEYLTAIL_OUT_DIR or ./weyltail_out)");
    };
    auto casef = [&](CLI::App* s) {
        s->add_option("--case", cfg.case_name, "rational | irrational");
        s->add_option("--samples", cfg.samples, "Monte Carlo sample count M");
    };
    auto weylf = [&](CLI::App* s) {
        s->add_option("--c", cfg.c);
        s->add_option("--alpha", cfg.alpha)->each([&](const std::string&) { cfg.alpha_set = true; });
    };

    auto* constants = app.add_subcommand("constants", "explicit constants for (b, eta, eps)");
    common(constants);
    constants->add_option("--b", cfg.b);
    constants->add_option("--eta", cfg.eta);
    constants->add_option("--eps", cfg.eps);
    constants->add_option("--d-irr", cfg.d_irr, "use this D_irr(b) instead of the 2-D quadrature");

    auto* sample = app.add_subcommand("sample", "draw points from the limit measures");
    common(sample);
    casef(sample);

    auto* histogram = app.add_subcommand("histogram", "histogram of |S_N|/sqrt N over uniform x");
    common(histogram);
    histogram->add_option("--N", cfg.N)->required();
    histogram->add_option("--samples", cfg.samples);
    histogram->add_option("--bins", cfg.bins);
    weylf(histogram);

    auto* tails = app.add_subcommand("tails", "empirical tail against the leading law");
    common(tails);
    casef(tails);
    tails->add_option("--N", cfg.N, "0: sample the limit law; > 0: direct Weyl sums");
    tails->add_option("--r-max", cfg.r_max);
    tails->add_option("--r-step", cfg.r_step);
    tails->add_option("--p", cfg.p_exp, "exponent of the fluctuation statistic");
    tails->add_option("--trunc", cfg.trunc, "default | paper-repro");
    weylf(tails);

    auto* fluct = app.add_subcommand("fluctuation", "fluctuation statistic and band check");
    common(fluct);
    casef(fluct);
    fluct->add_option("--N", cfg.N, "0: sample the limit law; > 0: direct Weyl sums");
    fluct->add_option("--r-max", cfg.r_max);
    fluct->add_option("--r-step", cfg.r_step);
    fluct->add_option("--p", cfg.p_exp);
    fluct->add_option("--trunc", cfg.trunc);
    weylf(fluct);

    auto* equi = app.add_subcommand("equidist", "horocycle lifts against direct samples");
    common(equi);
    casef(equi);
    equi->add_option("--t", cfg.t_ladder, "increasing geodesic times");
    weylf(equi);

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    common(verify);
    verify->add_flag("--quick", cfg.quick, "smaller sample sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    const auto t0 = std::chrono::steady_clock::now();
    json summary = json::object();
    bool ok = true;
    try {
        validate(cfg);
        Artifacts out(cfg.out);
        const auto& s = cfg.subcommand;
        if (s == "constants") run_constants(cfg, out);
        else if (s == "sample") run_sample(cfg, out);
        else if (s == "histogram") run_histogram(cfg, out);
        else if (s == "tails") run_tails(cfg, out, summary, false);
        else if (s == "fluctuation") run_tails(cfg, out, summary, true);
        else if (s == "equidist") run_equidist(cfg, out);
        else if (s == "verify") ok = run_verify(cfg, out, summary);

        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string hashes;
        for (auto& f : out.files()) hashes += f["blob"].get<std::string>() + ' ' + f["file"].get<std::string>() + '\n';
        json manifest = {{"tool", "weyltail"},
                         {"config", config_json(cfg)},
                         {"outputs", out.files()},
                         {"content_hash", sha1_hex(hashes)},
                         {"summary", summary},
                         {"timings", {{"total_seconds", sec}}}};
        std::ofstream(out.dir() / (s + "_manifest.json")) << manifest.dump(2) << '\n';
        std::fprintf(stderr, "wrote %s (%.2f s)\n", out.dir().string().c_str(), sec);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "invalid arguments: %s\n", e.what());
        return 2;
    } catch (const wt::Error& e) {
        std::fprintf(stderr, "%s failed: %s\n", cfg.subcommand.c_str(), e.what());
        return wt::is_validation_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s failed: %s\n", cfg.subcommand.c_str(), e.what());
        return 1;
    }
    return ok ? 0 : 1;
}
