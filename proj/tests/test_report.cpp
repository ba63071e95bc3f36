#include <catch2/catch_amalgamated.hpp>

#include "kuzcalc/driver.hpp"
#include "kuzcalc/jobspec.hpp"

using namespace kuzcalc;

namespace {
JobSpec sextic_table_job() {
    JobSpec job;
    job.command = "hs-table";
    job.poly = "x4^2 + x0^6 + x1^6 + x2^6 + x3^6";
    job.weights = {1, 1, 1, 1, 3};
    job.degree = 6;
    job.t_min = 0;
    job.t_max = 10;
    job.m_min = 0;
    job.m_max = 2;
    job.format = "json";
    job.audit = true;
    return job;
}
}  // namespace

TEST_CASE("JobSpec round-trips through JSON and the job file format") {
    JobSpec job = sextic_table_job();
    job.seed = 99;
    job.strategy = "bounded";
    CHECK(JobSpec::from_json(job.to_json()) == job);
    CHECK(JobSpec::from_jobfile(job.to_jobfile()) == job);

    JobSpec search;
    search.command = "torelli-search";
    search.poly = "x0^3+x1^3+x2^3";
    search.poly2 = "x0^3+8x1^3+x2^3";
    search.weights = {1, 1, 1};
    search.degree = 3;
    CHECK(JobSpec::from_jobfile(search.to_jobfile()) == search);
}

TEST_CASE("job file parser: comments, blanks, errors") {
    auto job = JobSpec::from_jobfile("# a comment\n\ncommand = sectors\nweights = 1,1\ndegree = 2\n");
    CHECK(job.command == "sectors");
    CHECK(job.weights == std::vector<int>{1, 1});
    CHECK_THROWS_AS(JobSpec::from_jobfile("command sectors\n"), parse_error);
    CHECK_THROWS_AS(JobSpec::from_jobfile("nonsense = 1\n"), parse_error);
}

TEST_CASE("Report round-trips: parse(emit(r)) = r") {
    RunResult rr = run_job(sextic_table_job());
    Report back = Report::from_json(Json::parse(rr.report.to_json_string()));
    CHECK(back == rr.report);
}

TEST_CASE("identical JobSpec produces identical bytes") {
    auto a = run_job(sextic_table_job());
    auto b = run_job(sextic_table_job());
    CHECK(render(a.report) == render(b.report));

    JobSpec csv = sextic_table_job();
    csv.format = "csv";
    CHECK(render(run_job(csv).report) == render(run_job(csv).report));
}

TEST_CASE("csv rendering of grid commands") {
    JobSpec job = sextic_table_job();
    job.format = "csv";
    std::string csv = render(run_job(job).report);
    CHECK(csv.rfind("t,m,total,g6,g1,g2,g3,g4,g5\n", 0) == 0);
    CHECK(csv.find("8,0,87,85,0,1,0,1,0") != std::string::npos);

    JobSpec bad = job;
    bad.command = "jac";
    bad.poly = "x0^3+x1^3";
    bad.weights = {1, 1};
    bad.degree = 3;
    bad.t_min.reset();
    bad.t_max.reset();
    bad.m_min.reset();
    bad.m_max.reset();
    CHECK_THROWS_AS(render(run_job(bad).report), math_error);
}

TEST_CASE("relation audit over the requested grid reports pass") {
    auto rr = run_job(sextic_table_job());
    CHECK(rr.report.result.at("relation_audit") == "pass");
}

TEST_CASE("jac on a singular form reports the certificate and exit code 2") {
    JobSpec job;
    job.command = "jac";
    job.poly = "x0^3";
    job.weights = {1, 1};
    job.degree = 3;
    job.format = "json";
    auto rr = run_job(job);
    CHECK(rr.exit_code == 2);
    CHECK(rr.report.status == "singularity-certificate-failed");
    CHECK(rr.report.result.at("certificate").at("isolated") == false);
    CHECK(rr.report.result.at("certificate").at("mismatch_degree") == 2);
}

TEST_CASE("hs commands refuse singular input") {
    JobSpec job;
    job.command = "hs-dim";
    job.poly = "x0^3";
    job.weights = {1, 1};
    job.degree = 3;
    job.t_cell = 0;
    job.m_cell = 0;
    CHECK_THROWS_AS(run_job(job), math_error);
}

TEST_CASE("parse errors carry the position and unknown commands are rejected") {
    JobSpec job;
    job.command = "jac";
    job.poly = "x0^3 +";
    job.weights = {1, 1};
    job.degree = 3;
    CHECK_THROWS_AS(run_job(job), parse_error);
    job.command = "fly";
    CHECK_THROWS_AS(run_job(job), math_error);
}

TEST_CASE("matrix text parsing") {
    auto A = parse_matrix("1,0;1/2,-3", 2);
    CHECK(A(0, 0) == 1);
    CHECK(A(1, 0) == Rat(1, 2));
    CHECK(A(1, 1) == -3);
    CHECK_THROWS_AS(parse_matrix("1,0;0", 2), math_error);      // short row
    CHECK_THROWS_AS(parse_matrix("1,0", 2), math_error);        // missing row
    CHECK_THROWS_AS(parse_matrix("1,0,0;0,1,0", 2), math_error);  // long row
    CHECK_THROWS_AS(parse_matrix("1,x;0,1", 2), math_error);    // junk entry
}

TEST_CASE("torelli verify through the driver") {
    JobSpec job;
    job.command = "torelli-verify";
    job.poly = "x0^3+x1^3+x2^3";
    job.poly2 = "x0^3+x1^3+x2^3";
    job.weights = {1, 1, 1};
    job.degree = 3;
    job.matrix = "0,1,0;1,0,0;0,0,1";
    job.scalar = "1";
    job.mode = "ideal-equality";
    auto rr = run_job(job);
    CHECK(rr.report.result.at("verified") == true);
}

TEST_CASE("torelli search through the driver is seed-deterministic") {
    JobSpec job;
    job.command = "torelli-search";
    job.poly = "x0^3+x1^3+x2^3";
    job.poly2 = "x0^3+8x1^3+x2^3";
    job.weights = {1, 1, 1};
    job.degree = 3;
    job.strategy = "solve";
    job.format = "json";
    auto a = run_job(job);
    auto b = run_job(job);
    CHECK(a.report.to_json_string() == b.report.to_json_string());
    CHECK(a.report.result.at("found") == true);
}

TEST_CASE("sectors command payload") {
    JobSpec job;
    job.command = "sectors";
    job.weights = {1, 1, 1, 1, 3};
    job.degree = 6;
    auto rr = run_job(job);
    const auto& secs = rr.report.result.at("sectors");
    REQUIRE(secs.size() == 6);
    CHECK(secs[0].at("rkW") == 5);
    CHECK(secs[0].at("k") == -7);
    CHECK(secs[1].at("rkW") == 4);
    CHECK(secs[1].at("k") == -4);
    CHECK(secs[5].at("identity") == true);
}

TEST_CASE("hs-table slices report HH^m and HH_m") {
    JobSpec job;
    job.command = "hs-table";
    job.poly = "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3";
    job.weights = std::vector<int>(6, 1);
    job.degree = 3;
    job.t_min = 0;
    job.t_max = 3;
    job.m_min = 0;
    job.m_max = 4;
    job.slices = true;
    auto rr = run_job(job);
    const auto& hhc = rr.report.result.at("hh_cohomology");
    CHECK(hhc.at("0") == 1);
    CHECK(hhc.at("2") == 22);
    CHECK(hhc.at("4") == 1);
    CHECK(rr.report.result.at("hh_homology").at("0") == 22);
}

TEST_CASE("subalgebra structure constants through the driver") {
    JobSpec job;
    job.command = "subalgebra";
    job.poly = "x0^3+x1^3+x2^3";
    job.weights = {1, 1, 1};
    job.degree = 3;
    job.t_max = 3;
    job.structure = true;
    auto rr = run_job(job);
    const auto& prods = rr.report.result.at("structure_constants");
    CHECK(!prods.empty());
    // x0 * x1 lands on the standard monomial x0*x1
    bool found = false;
    for (const auto& e : prods)
        if (e.at("t1") == 1 && e.at("t2") == 1 && e.at("i") == "x0" && e.at("j") == "x1") {
            found = true;
            CHECK(e.at("coords") == Json::array({"1", "0", "0"}));
        }
    CHECK(found);
}

TEST_CASE("subalgebra warns when the gcd condition fails") {
    JobSpec job;
    job.command = "subalgebra";
    job.poly = "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3";
    job.weights = std::vector<int>(6, 1);
    job.degree = 3;
    job.t_max = 4;
    auto rr = run_job(job);
    CHECK(rr.report.result.at("closed_form_split") == false);
    CHECK(rr.report.result.contains("warning"));
    CHECK(rr.report.result.at("pieces")[3].at("jac_dim") == 20);
}

TEST_CASE("torelli fingerprint through the driver") {
    JobSpec job;
    job.command = "torelli-fingerprint";
    job.poly = "x0^3+x1^3+x2^3+x3^3";
    job.weights = {1, 1, 1, 1};
    job.degree = 3;
    auto rr = run_job(job);
    CHECK(rr.report.result.at("hilbert") == Json::array({1, 4, 6, 4, 1}));
    REQUIRE(rr.report.result.at("exceptional").size() == 1);
    CHECK(rr.report.result.at("exceptional")[0].at("t") == 2);
    CHECK(rr.report.result.at("exceptional")[0].at("multiplicity") == 2);
}

TEST_CASE("hilbert command compares against the oracle") {
    JobSpec job;
    job.command = "hilbert";
    job.poly = "x0^3+x1^3+x2^3+x3^3";
    job.weights = {1, 1, 1, 1};
    job.degree = 3;
    auto rr = run_job(job);
    CHECK(rr.report.result.at("matches_oracle") == true);
    CHECK(rr.report.result.at("hilbert") == Json::array({1, 4, 6, 4, 1}));
    CHECK(rr.report.result.at("poincare_oracle") == rr.report.result.at("hilbert"));
}

TEST_CASE("koszul command emits the rank grid and the audit") {
    JobSpec job;
    job.command = "koszul";
    job.poly = "x0^3+x1^3";
    job.weights = {1, 1};
    job.degree = 3;
    job.audit = true;
    job.format = "csv";
    auto rr = run_job(job);
    CHECK(rr.report.result.at("d_squared_audit") == "pass");
    std::string csv = render(rr.report);
    CHECK(csv.rfind("p,t,module_dim,h\n", 0) == 0);
    // H^0 row at t = 0 is the unit class
    CHECK(csv.find("0,0,1,1") != std::string::npos);
}
