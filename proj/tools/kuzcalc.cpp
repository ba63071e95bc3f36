// kuzcalc: exact invariants of graded matrix-factorization categories of
// (weighted-)homogeneous hypersurfaces, from the command line.
//
// Variables are x0..xn (the usual 1-indexed x_1..x_{n+1} shifts down by one).
// Exit codes: 0 success, 1 usage error, 2 mathematical precondition failure,
// 3 internal inconsistency.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kuzcalc/kuzcalc.hpp"

namespace {

struct CommonFlags {
    std::string poly, poly2;
    std::string weights_text;
    long degree = 0;
    bool json = false, csv = false;
    std::uint64_t seed = 0;
    std::string job_file;
};

std::vector<int> parse_weights(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_poly) {
    if (needs_poly)
        cmd->add_option("--poly", flags.poly, "polynomial in x0..xn, e.g. \"x0^3+x1^3+x2^3\"");
    cmd->add_option("--weights", flags.weights_text, "comma-separated positive weights, e.g. 1,1,1");
    cmd->add_option("--degree", flags.degree, "weighted degree d");
    cmd->add_flag("--json", flags.json, "machine-readable JSON on stdout");
    cmd->add_flag("--csv", flags.csv, "CSV on stdout (grid commands)");
    cmd->add_option("--seed", flags.seed, "seed echoed into the job (used by search strategies)");
}

void fill_common(kuzcalc::JobSpec& job, const CommonFlags& flags) {
    job.poly = flags.poly;
    job.poly2 = flags.poly2;
    job.weights = parse_weights(flags.weights_text);
    job.degree = flags.degree;
    job.seed = flags.seed;
    if (flags.json) job.format = "json";
    if (flags.csv) job.format = "csv";
}

int run_and_render(const kuzcalc::JobSpec& job) {
    auto started = std::chrono::steady_clock::now();
    kuzcalc::ProgressFn progress = [](const std::string& line) { std::cerr << line << "\n"; };
    kuzcalc::RunResult rr = kuzcalc::run_job(job, progress);
    std::cout << kuzcalc::render(rr.report);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "kuzcalc: " << job.command << " finished in " << elapsed << " ms\n";
    return rr.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "kuzcalc: Jacobian rings, Hochschild-Serre tables, Koszul cohomology and projective\n"
        "equivalence witnesses for (weighted-)homogeneous hypersurface potentials"};
    app.require_subcommand(0, 1);

    kuzcalc::JobSpec job;

    // run a serialized job file directly
    std::string job_file;
    auto* run = app.add_subcommand("run", "run a job file (flat key = value lines)");
    run->add_option("file", job_file, "job file path")->required();

    CommonFlags jac_f;
    long jac_tmax = -1;
    bool jac_bases = false;
    auto* jac = app.add_subcommand("jac", "Jacobian ring: Hilbert vector, socle, certificate");
    add_common(jac, jac_f, true);
    jac->add_option("--t-max", jac_tmax, "top degree (default: socle degree)");
    jac->add_flag("--bases", jac_bases, "include per-degree monomial bases");

    CommonFlags hil_f;
    long hil_tmax = -1;
    auto* hil = app.add_subcommand("hilbert", "Hilbert function vs the Poincare-series oracle");
    add_common(hil, hil_f, true);
    hil->add_option("--t-max", hil_tmax, "top degree (default: socle degree)");

    CommonFlags sec_f;
    auto* sec = app.add_subcommand("sectors", "mu_d sector table: fixed locus, rk W_g, k_g");
    add_common(sec, sec_f, false);

    CommonFlags hsd_f;
    long hsd_t = 0, hsd_m = 0;
    auto* hsd = app.add_subcommand("hs-dim", "one cell Hom(D, D(t)[m]) with sector breakdown");
    add_common(hsd, hsd_f, true);
    hsd->add_option("--t", hsd_t, "twist t")->required();
    hsd->add_option("--m", hsd_m, "shift m")->required();

    CommonFlags hst_f;
    long hst_tmin = 0, hst_tmax = -1;
    std::string hst_mrange = "0..0";
    bool hst_audit = false, hst_slices = false;
    auto* hst = app.add_subcommand("hs-table", "grid of Hom(D, D(t)[m]) dimensions");
    add_common(hst, hst_f, true);
    hst->add_option("--t-min", hst_tmin, "first twist (default 0)");
    hst->add_option("--t-max", hst_tmax, "last twist (default socle + d)");
    hst->add_option("--m-range", hst_mrange, "shift range a..b (default 0..0)");
    hst->add_flag("--audit", hst_audit, "verify entries(t,m) = entries(t-d,m+2) over the grid");
    hst->add_flag("--slices", hst_slices, "also report HH^m and HH_m over the m range");

    CommonFlags sub_f;
    long sub_tmax = -1;
    bool sub_structure = false;
    auto* sub = app.add_subcommand("subalgebra", "Hom(D, D(t)) pieces split into Jacobian and "
                                                 "exceptional parts");
    add_common(sub, sub_f, true);
    sub->add_option("--t-max", sub_tmax, "top degree (default: socle degree)");
    sub->add_flag("--structure-constants", sub_structure, "emit Jacobian-part products");

    CommonFlags kos_f;
    long kos_tmax = -1;
    bool kos_audit = false;
    auto* kos = app.add_subcommand("koszul", "graded Koszul cohomology ranks of the partials");
    add_common(kos, kos_f, true);
    kos->add_option("--t-max", kos_tmax, "top internal degree (default socle + 2 max q)");
    kos->add_flag("--audit", kos_audit, "check d o d = 0 formally and blockwise");

    auto* tor = app.add_subcommand("torelli", "compare two potentials");
    tor->require_subcommand(1);

    CommonFlags tv_f;
    std::string tv_matrix, tv_scalar = "1", tv_mode = "exact-pullback";
    auto* tv = tor->add_subcommand("verify", "verify a substitution witness exactly");
    add_common(tv, tv_f, true);
    tv->add_option("--poly2", tv_f.poly2, "second polynomial");
    tv->add_option("--matrix", tv_matrix, "rows ';'-separated, entries ','-separated")->required();
    tv->add_option("--scalar", tv_scalar, "scalar c with omega(Ax) = c*omega'(x)");
    tv->add_option("--mode", tv_mode, "exact-pullback | ideal-equality");

    CommonFlags ts_f;
    std::string ts_strategy = "solve";
    auto* ts = tor->add_subcommand("search", "search for a witness (sound, not complete)");
    add_common(ts, ts_f, true);
    ts->add_option("--poly2", ts_f.poly2, "second polynomial");
    ts->add_option("--strategy", ts_strategy, "bounded | solve | random");

    CommonFlags tf_f;
    auto* tf = tor->add_subcommand("fingerprint", "substitution-invariant fingerprint");
    add_common(tf, tf_f, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        if (run->parsed()) {
            std::ifstream in(job_file);
            if (!in) {
                std::cerr << "kuzcalc: cannot open job file '" << job_file << "'\n";
                return 1;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            job = kuzcalc::JobSpec::from_jobfile(buf.str());
        } else if (jac->parsed()) {
            job.command = "jac";
            fill_common(job, jac_f);
            if (jac_tmax >= 0) job.t_max = jac_tmax;
            job.bases = jac_bases;
        } else if (hil->parsed()) {
            job.command = "hilbert";
            fill_common(job, hil_f);
            if (hil_tmax >= 0) job.t_max = hil_tmax;
        } else if (sec->parsed()) {
            job.command = "sectors";
            fill_common(job, sec_f);
        } else if (hsd->parsed()) {
            job.command = "hs-dim";
            fill_common(job, hsd_f);
            job.t_cell = hsd_t;
            job.m_cell = hsd_m;
        } else if (hst->parsed()) {
            job.command = "hs-table";
            fill_common(job, hst_f);
            job.t_min = hst_tmin;
            if (hst_tmax >= 0) job.t_max = hst_tmax;
            auto dots = hst_mrange.find("..");
            if (dots == std::string::npos) {
                std::cerr << "kuzcalc: --m-range wants a..b\n";
                return 1;
            }
            job.m_min = std::stol(hst_mrange.substr(0, dots));
            job.m_max = std::stol(hst_mrange.substr(dots + 2));
            job.audit = hst_audit;
            job.slices = hst_slices;
        } else if (sub->parsed()) {
            job.command = "subalgebra";
            fill_common(job, sub_f);
            if (sub_tmax >= 0) job.t_max = sub_tmax;
            job.structure = sub_structure;
        } else if (kos->parsed()) {
            job.command = "koszul";
            fill_common(job, kos_f);
            if (kos_tmax >= 0) job.t_max = kos_tmax;
            job.audit = kos_audit;
        } else if (tv->parsed()) {
            job.command = "torelli-verify";
            fill_common(job, tv_f);
            job.matrix = tv_matrix;
            job.scalar = tv_scalar;
            job.mode = tv_mode;
        } else if (ts->parsed()) {
            job.command = "torelli-search";
            fill_common(job, ts_f);
            job.strategy = ts_strategy;
        } else if (tf->parsed()) {
            job.command = "torelli-fingerprint";
            fill_common(job, tf_f);
        } else {
            std::cerr << app.help();
            return 1;
        }
        return run_and_render(job);
    } catch (const kuzcalc::internal_error& e) {
        std::cerr << "kuzcalc: internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const kuzcalc::parse_error& e) {
        std::cerr << "kuzcalc: " << e.what() << "\n";
        return 2;
    } catch (const kuzcalc::math_error& e) {
        std::cerr << "kuzcalc: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "kuzcalc: " << e.what() << "\n";
        return 1;
    }
}
