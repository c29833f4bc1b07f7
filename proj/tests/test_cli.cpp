#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace qswap;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string stdout_text;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "qswap_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

CliResult run_cli(const std::string& args, const std::string& extra_env = "") {
    static int counter = 0;
    const fs::path out = work_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    const std::string command = extra_env + (extra_env.empty() ? "" : " ") + QSWAP_CLI_PATH + " " +
                                args + " > " + out.string() + " 2> /dev/null";
    const int status = std::system(command.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    res.stdout_text = ss.str();
    return res;
}

std::string write_fixture(const std::string& name, const Json& j) {
    const fs::path p = work_dir() / name;
    save_json(p.string(), j);
    return p.string();
}

Json parse_output(const CliResult& res) { return Json::parse(res.stdout_text); }

std::string mixed_qubit_path() {
    static const std::string p = write_fixture("mixed_qubit.json", density_to_json(maximally_mixed(2)));
    return p;
}

std::string pure_qubit_path() {
    static const std::string p =
        write_fixture("pure_qubit.json", density_to_json(pure_density(PureState{basis_ket(2, 0)})));
    return p;
}

}  // namespace

TEST_CASE("cli overlap on maximally mixed qubits") {
    const CliResult res =
        run_cli("overlap --a " + mixed_qubit_path() + " --b " + mixed_qubit_path() + " --shots 0");
    REQUIRE(res.exit_code == 0);
    const Json doc = parse_output(res);
    REQUIRE(doc.at("estimate").at("v").get<double>() == Catch::Approx(0.5).margin(1e-13));
    REQUIRE(doc.at("version") == kVersion);
    REQUIRE(doc.at("config").at("shots") == 0);
}

TEST_CASE("cli purity of a pure state") {
    const CliResult res = run_cli("purity --state " + pure_qubit_path() + " --shots 0");
    REQUIRE(res.exit_code == 0);
    REQUIRE(parse_output(res).at("estimate").at("v").get<double>() ==
            Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("cli bloch length") {
    const CliResult res = run_cli("bloch --state " + pure_qubit_path() + " --shots 0");
    REQUIRE(res.exit_code == 0);
    const Json doc = parse_output(res);
    REQUIRE(doc.at("estimate").at("length").get<double>() == Catch::Approx(1.0).margin(1e-12));
    REQUIRE_FALSE(doc.at("estimate").at("clamped").get<bool>());
}

TEST_CASE("cli expectation") {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    const std::string obs = write_fixture("pauli_z.json", matrix_to_json(z));
    const CliResult res =
        run_cli("expectation --observable " + obs + " --state " + pure_qubit_path() + " --shots 0");
    REQUIRE(res.exit_code == 0);
    REQUIRE(parse_output(res).at("estimate").at("value").get<double>() ==
            Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("cli tomography") {
    RandomStream rs(901);
    const DensityOperator rho = random_density(2, rs);
    const std::string state = write_fixture("tomo_state.json", density_to_json(rho));
    const CliResult res = run_cli("tomography --state " + state + " --shots 0");
    REQUIRE(res.exit_code == 0);
    const Json doc = parse_output(res);
    const DensityOperator recon = density_from_json(doc.at("estimate").at("state"));
    REQUIRE(trace_distance(recon.matrix, rho.matrix) <= 1e-10);
}

TEST_CASE("cli sampled runs report uncertainty fields") {
    const CliResult overlap_res = run_cli("overlap --a " + mixed_qubit_path() + " --b " +
                                          mixed_qubit_path() + " --shots 5000 --seed 2");
    REQUIRE(parse_output(overlap_res).at("estimate").at("stderr_v").get<double>() > 0.0);

    const CliResult tomo_res =
        run_cli("tomography --state " + mixed_qubit_path() + " --shots 5000 --seed 2");
    const Json tomo_doc = parse_output(tomo_res);
    const Json stderrs = tomo_doc.at("estimate").at("per_probe_stderr_v");
    REQUIRE(stderrs.size() == 4);
    for (const Json& s : stderrs) REQUIRE(s.get<double>() > 0.0);

    const CliResult eigen_res = run_cli("eigen --state " + mixed_qubit_path() +
                                        " --shots 2000 --seed 2 --max-iters 30 --restarts 2");
    const Json eigen_doc = parse_output(eigen_res);
    REQUIRE(eigen_doc.at("estimate").contains("stderr_eigenvalue"));
    REQUIRE(eigen_doc.at("estimate").at("stderr_eigenvalue").get<double>() > 0.0);
}

TEST_CASE("cli eigen exact converges") {
    RandomStream rs(902);
    const std::string state = write_fixture("eigen_state.json", density_to_json(random_density(3, rs)));
    const CliResult res = run_cli("eigen --state " + state + " --which max --shots 0 --seed 5");
    REQUIRE(res.exit_code == 0);
    const Json doc = parse_output(res);
    REQUIRE(doc.at("estimate").at("converged").get<bool>());
    REQUIRE(doc.at("estimate").at("eigenvalue").get<double>() > 1.0 / 3.0 - 1e-9);
}

TEST_CASE("cli eigen reports non-convergence with exit 5 and still emits") {
    RandomStream rs(903);
    const std::string state =
        write_fixture("eigen_hard.json", density_to_json(random_density(4, rs)));
    const CliResult res = run_cli("eigen --state " + state +
                                  " --which max --shots 0 --seed 5 --max-iters 1 --restarts 1 "
                                  "--grad-tol 1e-300 --value-tol 1e-300");
    REQUIRE(res.exit_code == 5);
    const Json doc = parse_output(res);
    REQUIRE_FALSE(doc.at("estimate").at("converged").get<bool>());
    REQUIRE(doc.at("estimate").contains("eigenvalue"));
}

TEST_CASE("cli channel tomography and capacity test") {
    const std::string depol =
        write_fixture("depol_half.json", kraus_to_json(depolarizing_channel(0.5)));

    const CliResult tomo = run_cli("channel-tomography --channel " + depol + " --shots 0");
    REQUIRE(tomo.exit_code == 0);
    const Json tomo_doc = parse_output(tomo);
    REQUIRE(tomo_doc.at("estimate").at("a_marginal_deviation").get<double>() <= 1e-9);

    const CliResult cap = run_cli("capacity-test --channel " + depol + " --shots 0 --seed 7");
    REQUIRE(cap.exit_code == 0);
    const Json cap_doc = parse_output(cap);
    REQUIRE(cap_doc.at("estimate").at("verdict").get<bool>());
    REQUIRE(cap_doc.at("estimate").at("lambda_max").get<double>() ==
            Catch::Approx(0.625).margin(1e-6));
}

TEST_CASE("cli distill test") {
    const std::string bell =
        write_fixture("bell.json", density_to_json(pure_density(max_entangled_state(2))));
    const CliResult res = run_cli("distill-test --state " + bell);
    REQUIRE(res.exit_code == 0);
    const Json doc = parse_output(res);
    REQUIRE(doc.at("estimate").at("verdict").get<bool>());
    REQUIRE(doc.at("estimate").at("min_eig").get<double>() == Catch::Approx(-0.5).margin(1e-10));
}

TEST_CASE("cli exit codes for bad input") {
    REQUIRE(run_cli("no-such-command").exit_code == 2);
    REQUIRE(run_cli("overlap --a /nonexistent.json --b " + mixed_qubit_path()).exit_code == 3);

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 0.6;
    bad(1, 1) = 0.6;
    const std::string bad_state = write_fixture("bad_trace.json", matrix_to_json(bad));
    REQUIRE(run_cli("purity --state " + bad_state).exit_code == 4);

    const std::string not_json = (work_dir() / "garbage.json").string();
    {
        std::ofstream out(not_json);
        out << "not json at all {";
    }
    REQUIRE(run_cli("purity --state " + not_json).exit_code == 3);

    // qutrit state into the qubit-only bloch command
    const std::string qutrit = write_fixture("qutrit.json", density_to_json(maximally_mixed(3)));
    REQUIRE(run_cli("bloch --state " + qutrit).exit_code == 4);
}

TEST_CASE("cli sampled runs are reproducible and env seed works") {
    const std::string a = mixed_qubit_path();
    const CliResult r1 = run_cli("overlap --a " + a + " --b " + a + " --shots 10000 --seed 11");
    const CliResult r2 = run_cli("overlap --a " + a + " --b " + a + " --shots 10000 --seed 11");
    Json d1 = parse_output(r1), d2 = parse_output(r2);
    d1.erase("timestamp");
    d2.erase("timestamp");
    REQUIRE(d1.dump() == d2.dump());

    // env var sets the default seed; the flag overrides it
    const CliResult env_run =
        run_cli("overlap --a " + a + " --b " + a + " --shots 10000", "QSWAP_SEED=11");
    Json denv = parse_output(env_run);
    REQUIRE(denv.at("config").at("seed") == 11);
    denv.erase("timestamp");
    REQUIRE(denv.dump() == d1.dump());

    const CliResult flag_wins =
        run_cli("overlap --a " + a + " --b " + a + " --shots 10000 --seed 12", "QSWAP_SEED=11");
    REQUIRE(parse_output(flag_wins).at("config").at("seed") == 12);
}

TEST_CASE("cli --out writes the document to a file") {
    const std::string target = (work_dir() / "result.json").string();
    const CliResult res = run_cli("purity --state " + pure_qubit_path() + " --out " + target);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.stdout_text.empty());
    const Json doc = load_json(target);
    REQUIRE(doc.at("estimate").at("v").get<double>() == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("cli --pretty renders a summary") {
    const CliResult res = run_cli("purity --state " + pure_qubit_path() + " --pretty");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.stdout_text.find("purity") != std::string::npos);
    REQUIRE(res.stdout_text.find('{') == std::string::npos);
}
