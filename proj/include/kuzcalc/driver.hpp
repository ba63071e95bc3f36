#pragma once

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/hsalgebra.hpp"
#include "kuzcalc/jobspec.hpp"
#include "kuzcalc/koszul.hpp"
#include "kuzcalc/milnor.hpp"
#include "kuzcalc/orbifold.hpp"
#include "kuzcalc/parse.hpp"
#include "kuzcalc/torelli.hpp"

namespace kuzcalc {

struct RunResult {
    Report report;
    int exit_code = 0;
};

using ProgressFn = std::function<void(const std::string&)>;

inline RatMatrix parse_matrix(const std::string& text, std::size_t n) {
    RatMatrix A(n, n);
    std::istringstream rows(text);
    std::string row;
    std::size_t i = 0;
    while (std::getline(rows, row, ';')) {
        if (i >= n) throw math_error("matrix has too many rows (need " + std::to_string(n) + ")");
        std::istringstream cells(row);
        std::string cell;
        std::size_t j = 0;
        while (std::getline(cells, cell, ',')) {
            if (j >= n) throw math_error("matrix row has too many entries");
            auto b = cell.find_first_not_of(" \t");
            auto e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) throw math_error("empty matrix entry");
            A(i, j) = rat_from_string(cell.substr(b, e - b + 1));
            ++j;
        }
        if (j != n) throw math_error("matrix row " + std::to_string(i) + " has " +
                                     std::to_string(j) + " entries, need " + std::to_string(n));
        ++i;
    }
    if (i != n) throw math_error("matrix has " + std::to_string(i) + " rows, need " +
                                 std::to_string(n));
    return A;
}

inline Json matrix_to_json(const RatMatrix& A) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < A.cols(); ++j) row.push_back(rat_to_string(A(i, j)));
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline Json certificate_json(const IsolatedCertificate& cert) {
    Json j;
    j["isolated"] = cert.isolated;
    j["socle_degree"] = cert.socle_degree;
    if (!cert.isolated) {
        j["mismatch_degree"] = cert.mismatch_degree;
        j["expected_dim"] = cert.expected_dim;
        j["actual_dim"] = cert.actual_dim;
    }
    j["description"] = cert.describe();
    return j;
}

inline Json cell_json(const HSCell& cell) {
    Json j;
    j["t"] = cell.t;
    j["m"] = cell.m;
    j["total"] = cell.total;
    Json per = Json::array();
    for (const auto& s : cell.per_sector) {
        Json e;
        e["g_index"] = s.g_index;
        e["parity_ok"] = s.parity_ok;
        if (s.parity_ok) e["eval_degree"] = s.eval_degree;
        e["dim"] = s.dim;
        per.push_back(e);
    }
    j["per_sector"] = per;
    return j;
}

inline WeightedPolynomial job_poly(const JobSpec& job) {
    if (job.poly.empty()) throw math_error("missing polynomial");
    return parse_poly(job.poly, job.weights.size(), job.weights, job.degree);
}

inline WeightedPolynomial job_poly2(const JobSpec& job) {
    if (job.poly2.empty()) throw math_error("missing second polynomial");
    return parse_poly(job.poly2, job.weights.size(), job.weights, job.degree);
}

inline long default_socle_top(const JacobianAlgebra& J) { return std::max(J.socle_degree(), 0L); }

inline void cmd_jac(const JobSpec& job, Report& out, int& exit_code, const ProgressFn& progress) {
    JacobianAlgebra J(job_poly(job));
    const IsolatedCertificate& cert = J.certify();
    long t_max = job.t_max.value_or(default_socle_top(J));
    Json r;
    r["weights"] = job.weights;
    r["degree"] = J.degree();
    r["socle_degree"] = J.socle_degree();
    r["certificate"] = certificate_json(cert);
    Json hv = Json::array();
    for (long t = 0; t <= t_max; ++t) {
        if (progress) progress("jac: degree " + std::to_string(t));
        hv.push_back(J.dim(t));
    }
    r["t_max"] = t_max;
    r["hilbert"] = hv;
    if (job.bases) {
        Json bases;
        for (long t = 0; t <= t_max; ++t) {
            Json reps = Json::array();
            for (const Monomial& m : J.basis(t).representatives()) reps.push_back(m.str());
            bases[std::to_string(t)] = reps;
        }
        r["bases"] = bases;
    }
    out.result = r;
    if (!cert.isolated) {
        out.status = "singularity-certificate-failed";
        exit_code = 2;
    }
}

inline void cmd_hilbert(const JobSpec& job, Report& out, int& exit_code,
                        const ProgressFn& progress) {
    JacobianAlgebra J(job_poly(job));
    const IsolatedCertificate& cert = J.certify();
    long t_max = job.t_max.value_or(default_socle_top(J));
    auto oracle = poincare_oracle(J.weights(), J.degree(), static_cast<std::size_t>(t_max) + 1);
    Json r;
    r["weights"] = job.weights;
    r["degree"] = J.degree();
    r["socle_degree"] = J.socle_degree();
    r["t_max"] = t_max;
    Json hv = Json::array(), ov = Json::array();
    bool match = true;
    for (long t = 0; t <= t_max; ++t) {
        if (progress) progress("hilbert: degree " + std::to_string(t));
        long h = J.dim(t);
        long o = static_cast<long>(oracle[static_cast<std::size_t>(t)]);
        hv.push_back(h);
        ov.push_back(o);
        if (h != o) match = false;
    }
    r["hilbert"] = hv;
    r["poincare_oracle"] = ov;
    r["matches_oracle"] = match;
    r["certificate"] = certificate_json(cert);
    out.result = r;
    if (!cert.isolated) {
        out.status = "singularity-certificate-failed";
        exit_code = 2;
    }
}

inline void cmd_sectors(const JobSpec& job, Report& out) {
    auto secs = sectors(job.weights, job.degree);
    Json r;
    r["weights"] = job.weights;
    r["degree"] = job.degree;
    Json arr = Json::array();
    for (const auto& s : secs) {
        Json e;
        e["i"] = s.g_index;
        e["identity"] = s.is_identity(static_cast<int>(job.degree));
        e["fixed_vars"] = s.fixed_vars;
        e["rkW"] = s.rkW;
        e["k"] = s.k_g;
        arr.push_back(e);
    }
    r["sectors"] = arr;
    out.result = r;
}

inline void cmd_hs_dim(const JobSpec& job, Report& out) {
    if (!job.t_cell || !job.m_cell) throw math_error("hs-dim needs --t and --m");
    SerreAlgebra alg(job_poly(job));
    out.result = cell_json(alg.hs_dim(*job.t_cell, *job.m_cell));
    out.result["certificate"] = certificate_json(alg.jac().certify());
}

inline void cmd_hs_table(const JobSpec& job, Report& out, const ProgressFn& progress) {
    SerreAlgebra alg(job_poly(job));
    long top = std::max(alg.jac().socle_degree(), 0L);
    long t_min = job.t_min.value_or(0);
    long t_max = job.t_max.value_or(top + alg.d());
    long m_min = job.m_min.value_or(0);
    long m_max = job.m_max.value_or(0);
    if (t_min > t_max || m_min > m_max) throw math_error("hs-table: empty range");
    HSTable table;
    table.t_min = t_min;
    table.t_max = t_max;
    table.m_min = m_min;
    table.m_max = m_max;
    table.d = alg.d();
    for (long t = t_min; t <= t_max; ++t) {
        if (progress) progress("hs-table: row t=" + std::to_string(t));
        for (long m = m_min; m <= m_max; ++m)
            table.entries.emplace(std::make_pair(t, m), alg.hs_dim(t, m));
    }
    Json r;
    r["weights"] = job.weights;
    r["degree"] = alg.d();
    r["certificate"] = certificate_json(alg.jac().certify());
    r["t_min"] = t_min;
    r["t_max"] = t_max;
    r["m_min"] = m_min;
    r["m_max"] = m_max;
    Json cells = Json::array();
    for (const auto& [key, cell] : table.entries) cells.push_back(cell_json(cell));
    r["cells"] = cells;
    if (job.audit) {
        if (!table.audit_relation())
            throw internal_error("hs-table: functor relation entries(t,m) = entries(t-d,m+2) failed");
        r["relation_audit"] = "pass";
    }
    if (job.slices) {
        Json hhc, hhh;
        for (long m = m_min; m <= m_max; ++m) {
            hhc[std::to_string(m)] = alg.hh_cohomology(m);
            hhh[std::to_string(m)] = alg.hh_homology(m);
        }
        r["hh_cohomology"] = hhc;
        r["hh_homology"] = hhh;
    }
    out.result = r;
}

inline void cmd_subalgebra(const JobSpec& job, Report& out, const ProgressFn& progress) {
    SerreAlgebra alg(job_poly(job));
    long t_max = job.t_max.value_or(std::max(alg.jac().socle_degree(), 0L));
    SubalgebraPresentation pres = alg.subalgebra(t_max);
    Json r;
    r["weights"] = job.weights;
    r["degree"] = alg.d();
    r["certificate"] = certificate_json(alg.jac().certify());
    r["t_max"] = t_max;
    r["closed_form_split"] = pres.closed_form_split;
    if (!pres.closed_form_split)
        r["warning"] = "gcd(sum of weights, degree) != 1: dims are reported from the sector "
                       "formula without the closed-form subalgebra interpretation";
    Json pieces = Json::array();
    for (const auto& p : pres.pieces) {
        Json e;
        e["t"] = p.t;
        e["jac_dim"] = p.jac_dim;
        e["exceptional"] = p.exceptional;
        e["total"] = p.jac_dim + p.exceptional;
        pieces.push_back(e);
    }
    r["pieces"] = pieces;
    if (job.structure) {
        // products of jacobian-part basis elements; exceptional summands have
        // no representatives and their products stay undefined
        Json prods = Json::array();
        for (long t1 = 0; t1 <= t_max; ++t1) {
            if (progress) progress("subalgebra: products from degree " + std::to_string(t1));
            for (long t2 = t1; t2 <= t_max - t1; ++t2) {
                const auto& b1 = alg.jac().basis(t1);
                const auto& b2 = alg.jac().basis(t2);
                for (std::size_t i = 0; i < b1.size(); ++i)
                    for (std::size_t j = 0; j < b2.size(); ++j) {
                        Json e;
                        e["t1"] = t1;
                        e["i"] = b1.representatives()[i].str();
                        e["t2"] = t2;
                        e["j"] = b2.representatives()[j].str();
                        Json coords = Json::array();
                        for (const Rat& c : alg.product(t1, i, t2, j))
                            coords.push_back(rat_to_string(c));
                        e["coords"] = coords;
                        prods.push_back(e);
                    }
            }
        }
        r["structure_constants"] = prods;
    }
    out.result = r;
}

inline void cmd_koszul(const JobSpec& job, Report& out, const ProgressFn& progress) {
    WeightedPolynomial omega = job_poly(job);
    KoszulComplex K(omega);
    long socle = 0, maxq = 0;
    for (int q : omega.weights()) {
        socle += job.degree - 2 * q;
        maxq = std::max(maxq, static_cast<long>(q));
    }
    long t_max = job.t_max.value_or(std::max(socle, 0L) + 2 * maxq);
    Json r;
    r["weights"] = job.weights;
    r["degree"] = job.degree;
    r["length"] = K.length();
    r["t_max"] = t_max;
    Json rows = Json::array();
    for (int p = 0; p <= K.length(); ++p) {
        if (progress) progress("koszul: homological degree " + std::to_string(p));
        for (long t = 0; t <= t_max; ++t) {
            Json e;
            e["p"] = p;
            e["t"] = t;
            e["module_dim"] = K.module_dim(p, t);
            e["h"] = K.cohomology_rank(p, t);
            rows.push_back(e);
        }
    }
    r["table"] = rows;
    if (job.audit) {
        bool ok = K.audit_d_squared();
        for (int p = 2; ok && p <= K.length(); ++p)
            for (long t = 0; ok && t <= t_max; ++t) ok = K.audit_d_squared_block(p, t);
        if (!ok) throw internal_error("koszul: d o d != 0");
        r["d_squared_audit"] = "pass";
    }
    out.result = r;
}

inline void cmd_torelli_fingerprint(const JobSpec& job, Report& out) {
    Fingerprint fp = fingerprint(job_poly(job));
    Json r;
    r["weights"] = fp.weights;
    r["degree"] = fp.d;
    r["socle_degree"] = fp.socle;
    r["hilbert"] = fp.hilbert;
    r["hom_delta_delta"] = fp.hom;
    Json exc = Json::array();
    for (auto [t, mult] : fp.exceptional) {
        Json e;
        e["t"] = t;
        e["multiplicity"] = mult;
        exc.push_back(e);
    }
    r["exceptional"] = exc;
    out.result = r;
}

inline void cmd_torelli_verify(const JobSpec& job, Report& out) {
    WeightedPolynomial omega = job_poly(job);
    WeightedPolynomial omega2 = job_poly2(job);
    if (job.matrix.empty()) throw math_error("torelli verify needs --matrix");
    RatMatrix A = parse_matrix(job.matrix, omega.n_vars());
    Rat c = rat_from_string(job.scalar);
    WitnessMode mode;
    if (job.mode == "exact-pullback")
        mode = WitnessMode::ExactPullback;
    else if (job.mode == "ideal-equality")
        mode = WitnessMode::IdealEquality;
    else
        throw math_error("unknown mode '" + job.mode + "' (exact-pullback | ideal-equality)");
    bool ok = verify_equivalence(A, c, omega, omega2, mode);
    Json r;
    r["mode"] = witness_mode_name(mode);
    r["matrix"] = matrix_to_json(A);
    r["scalar"] = rat_to_string(c);
    r["verified"] = ok;
    out.result = r;
}

inline void cmd_torelli_search(const JobSpec& job, Report& out) {
    WeightedPolynomial omega = job_poly(job);
    WeightedPolynomial omega2 = job_poly2(job);
    SearchStrategy strategy;
    if (job.strategy == "bounded")
        strategy = SearchStrategy::PermDiagBounded;
    else if (job.strategy == "solve")
        strategy = SearchStrategy::PermDiagSolve;
    else if (job.strategy == "random")
        strategy = SearchStrategy::Randomized;
    else
        throw math_error("unknown strategy '" + job.strategy + "' (bounded | solve | random)");
    SearchOptions opts;
    opts.seed = job.seed;
    SearchOutcome outcome = search_equivalence(omega, omega2, strategy, opts);
    Json r;
    r["strategy"] = strategy_name(strategy);
    r["seed"] = job.seed;
    r["found"] = outcome.witness.has_value();
    if (outcome.witness) {
        Json w;
        w["matrix"] = matrix_to_json(outcome.witness->A);
        w["scalar"] = rat_to_string(outcome.witness->c);
        w["mode"] = witness_mode_name(outcome.witness->mode);
        w["verified"] = outcome.witness->verified;
        r["witness"] = w;
    } else {
        r["witness"] = nullptr;
        r["completeness"] = outcome.completeness;
    }
    out.result = r;
}

}  // namespace detail

/// Execute a job. Throws parse_error / math_error (exit 2 material) and
/// internal_error (exit 3 material); usage problems are the caller's job.
inline RunResult run_job(const JobSpec& job, const ProgressFn& progress = nullptr) {
    RunResult rr;
    rr.report.job = job;
    const std::string& cmd = job.command;
    if (cmd == "jac")
        detail::cmd_jac(job, rr.report, rr.exit_code, progress);
    else if (cmd == "hilbert")
        detail::cmd_hilbert(job, rr.report, rr.exit_code, progress);
    else if (cmd == "sectors")
        detail::cmd_sectors(job, rr.report);
    else if (cmd == "hs-dim")
        detail::cmd_hs_dim(job, rr.report);
    else if (cmd == "hs-table")
        detail::cmd_hs_table(job, rr.report, progress);
    else if (cmd == "subalgebra")
        detail::cmd_subalgebra(job, rr.report, progress);
    else if (cmd == "koszul")
        detail::cmd_koszul(job, rr.report, progress);
    else if (cmd == "torelli-fingerprint")
        detail::cmd_torelli_fingerprint(job, rr.report);
    else if (cmd == "torelli-verify")
        detail::cmd_torelli_verify(job, rr.report);
    else if (cmd == "torelli-search")
        detail::cmd_torelli_search(job, rr.report);
    else
        throw math_error("unknown command '" + cmd + "'");
    return rr;
}

/// CSV is defined for the grid commands.
inline std::string render_csv(const Report& report) {
    std::ostringstream out;
    const Json& r = report.result;
    if (report.job.command == "hs-table") {
        out << "t,m,total";
        if (!r["cells"].empty())
            for (const auto& s : r["cells"][0]["per_sector"]) out << ",g" << s["g_index"].get<int>();
        out << "\n";
        for (const auto& cell : r["cells"]) {
            out << cell["t"].get<long>() << "," << cell["m"].get<long>() << ","
                << cell["total"].get<long>();
            for (const auto& s : cell["per_sector"]) out << "," << s["dim"].get<long>();
            out << "\n";
        }
        return out.str();
    }
    if (report.job.command == "koszul") {
        out << "p,t,module_dim,h\n";
        for (const auto& e : r["table"])
            out << e["p"].get<int>() << "," << e["t"].get<long>() << ","
                << e["module_dim"].get<long>() << "," << e["h"].get<long>() << "\n";
        return out.str();
    }
    throw math_error("csv output is only defined for grid commands (hs-table, koszul)");
}

inline std::string render_human(const Report& report);

/// Render a report in the format requested by its JobSpec.
inline std::string render(const Report& report) {
    if (report.job.format == "json") return report.to_json_string();
    if (report.job.format == "csv") return render_csv(report);
    if (report.job.format == "human") return render_human(report);
    throw math_error("unknown format '" + report.job.format + "'");
}

inline std::string render_human(const Report& report) {
    std::ostringstream out;
    const Json& r = report.result;
    const std::string& cmd = report.job.command;
    auto vec_line = [&](const char* label, const Json& arr) {
        out << label << ":";
        for (const auto& v : arr) out << " " << v.get<long>();
        out << "\n";
    };
    if (cmd == "jac" || cmd == "hilbert") {
        out << "weights: ";
        for (std::size_t i = 0; i < report.job.weights.size(); ++i)
            out << (i ? "," : "") << report.job.weights[i];
        out << "  degree: " << r["degree"].get<long>() << "\n";
        out << "socle degree: " << r["socle_degree"].get<long>() << "\n";
        vec_line("hilbert", r["hilbert"]);
        if (cmd == "hilbert") {
            vec_line("oracle ", r["poincare_oracle"]);
            out << "matches oracle: " << (r["matches_oracle"].get<bool>() ? "yes" : "no") << "\n";
        }
        out << "certificate: " << r["certificate"]["description"].get<std::string>() << "\n";
        if (r.contains("bases"))
            for (const auto& [t, reps] : r["bases"].items()) {
                out << "basis t=" << t << ":";
                for (const auto& m : reps) out << " " << m.get<std::string>();
                out << "\n";
            }
        return out.str();
    }
    if (cmd == "sectors") {
        out << "  i  fixed          rkW     k\n";
        for (const auto& e : r["sectors"]) {
            std::string fixed;
            for (const auto& v : e["fixed_vars"]) fixed += (fixed.empty() ? "x" : ",x") + std::to_string(v.get<int>());
            if (fixed.empty()) fixed = "-";
            out << std::setw(3) << e["i"].get<int>() << "  " << std::setw(12) << std::left << fixed
                << std::right << std::setw(4) << e["rkW"].get<int>() << std::setw(6)
                << e["k"].get<long>() << (e["identity"].get<bool>() ? "   (identity)" : "") << "\n";
        }
        return out.str();
    }
    if (cmd == "hs-dim") {
        out << "Hom(D,D(" << r["t"].get<long>() << ")[" << r["m"].get<long>()
            << "]) = " << r["total"].get<long>() << "\n";
        out << "per sector (identity first):";
        for (const auto& s : r["per_sector"]) out << " " << s["dim"].get<long>();
        out << "\n";
        return out.str();
    }
    if (cmd == "hs-table") {
        long m_min = r["m_min"].get<long>(), m_max = r["m_max"].get<long>();
        out << "    t\\m";
        for (long m = m_min; m <= m_max; ++m) out << std::setw(7) << m;
        out << "\n";
        std::map<std::pair<long, long>, long> totals;
        for (const auto& cell : r["cells"])
            totals[{cell["t"].get<long>(), cell["m"].get<long>()}] = cell["total"].get<long>();
        for (long t = r["t_min"].get<long>(); t <= r["t_max"].get<long>(); ++t) {
            out << std::setw(7) << t;
            for (long m = m_min; m <= m_max; ++m) out << std::setw(7) << totals[{t, m}];
            out << "\n";
        }
        if (r.contains("relation_audit"))
            out << "relation audit: " << r["relation_audit"].get<std::string>() << "\n";
        if (r.contains("hh_cohomology")) {
            out << "HH^m:";
            for (const auto& [m, v] : r["hh_cohomology"].items())
                out << " " << m << ":" << v.get<long>();
            out << "\nHH_m:";
            for (const auto& [m, v] : r["hh_homology"].items())
                out << " " << m << ":" << v.get<long>();
            out << "\n";
        }
        return out.str();
    }
    if (cmd == "subalgebra") {
        if (r.contains("warning")) out << "warning: " << r["warning"].get<std::string>() << "\n";
        out << "    t   Jac_t  exceptional  total\n";
        for (const auto& e : r["pieces"])
            out << std::setw(5) << e["t"].get<long>() << std::setw(8) << e["jac_dim"].get<long>()
                << std::setw(13) << e["exceptional"].get<long>() << std::setw(7)
                << e["total"].get<long>() << "\n";
        if (r.contains("structure_constants"))
            out << "structure constants: " << r["structure_constants"].size() << " products\n";
        return out.str();
    }
    if (cmd == "koszul") {
        out << "    p     t   dim     h\n";
        for (const auto& e : r["table"])
            out << std::setw(5) << e["p"].get<int>() << std::setw(6) << e["t"].get<long>()
                << std::setw(6) << e["module_dim"].get<long>() << std::setw(6)
                << e["h"].get<long>() << "\n";
        if (r.contains("d_squared_audit"))
            out << "d^2 audit: " << r["d_squared_audit"].get<std::string>() << "\n";
        return out.str();
    }
    if (cmd == "torelli-fingerprint") {
        out << "socle degree: " << r["socle_degree"].get<long>() << "\n";
        vec_line("hilbert", r["hilbert"]);
        vec_line("hom(D,D(t))", r["hom_delta_delta"]);
        out << "exceptional:";
        if (r["exceptional"].empty()) out << " none";
        for (const auto& e : r["exceptional"])
            out << " t=" << e["t"].get<long>() << " (+" << e["multiplicity"].get<long>() << ")";
        out << "\n";
        return out.str();
    }
    if (cmd == "torelli-verify") {
        out << "mode: " << r["mode"].get<std::string>() << "\n";
        out << "verified: " << (r["verified"].get<bool>() ? "yes" : "no") << "\n";
        return out.str();
    }
    if (cmd == "torelli-search") {
        out << "strategy: " << r["strategy"].get<std::string>() << "\n";
        if (r["found"].get<bool>()) {
            out << "witness found, scalar c = " << r["witness"]["scalar"].get<std::string>() << "\n";
            for (const auto& row : r["witness"]["matrix"]) {
                out << " ";
                for (const auto& v : row) out << " " << v.get<std::string>();
                out << "\n";
            }
        } else {
            out << "no witness found within strategy\n";
            out << "completeness: " << r["completeness"].get<std::string>() << "\n";
        }
        return out.str();
    }
    return report.to_json_string();  // fallback
}

}  // namespace kuzcalc
