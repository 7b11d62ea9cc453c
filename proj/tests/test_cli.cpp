#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(MNLAB_BIN) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream f(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage and validation errors exit with 2") {
    CHECK(run("") == 2);
    CHECK(run("solve --p 3 --h 0.5") == 2);                    // missing lambda
    CHECK(run("solve --lambda 9.9 --p 3 --h 0.5 --out /tmp/mnlab_cli_rej") == 2);
    CHECK(run("solve --lambda 0 --p 0.5 --h 0.5 --out /tmp/mnlab_cli_rej") == 2);
    CHECK(run("solve --lambda 6 --p 3 --match --out /tmp/mnlab_cli_rej") == 2);  // missing R
}

TEST_CASE("numerical failures exit with 3") {
    CHECK(run("solve --lambda 6 --p 3 --match --R 4 --out /tmp/mnlab_cli_r4") == 3);
}

TEST_CASE("solve --all emits records, trajectories and plots") {
    const std::string dir = "/tmp/mnlab_cli_solve";
    REQUIRE(run("solve --lambda 0 --p 3 --h 0.5 --all --n-scan 400 --format json --plot --out " +
                dir) == 0);
    const auto doc = nlohmann::json::parse(slurp(dir + "/solutions.json"));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 3);
    bool has_symmetric = false;
    for (const auto& rec : doc) {
        if (rec["symmetry"] == "symmetric") has_symmetric = true;
        CHECK(rec.contains("residuals"));
        CHECK(rec["residuals"]["shoot"].get<double>() < 1e-8);
        CHECK(rec["residuals"]["fixed_point"].get<double>() < 1e-6);
        CHECK(rec["warn"] == false);
    }
    CHECK(has_symmetric);

    const auto traj = read_csv(dir + "/trajectory_0.csv");
    REQUIRE(traj.size() > 100);
    CHECK(traj[0] == std::vector<std::string>{"x", "u", "v", "regime"});
    CHECK(slurp(dir + "/phase_0.svg").find("<svg") == 0);
}

TEST_CASE("identical arguments produce byte-identical output") {
    REQUIRE(run("solve --lambda -1 --p 3 --h 0.5 --out /tmp/mnlab_cli_det1") == 0);
    REQUIRE(run("solve --lambda -1 --p 3 --h 0.5 --out /tmp/mnlab_cli_det2") == 0);
    CHECK(slurp("/tmp/mnlab_cli_det1/solutions.csv") ==
          slurp("/tmp/mnlab_cli_det2/solutions.csv"));
}

TEST_CASE("matching subcommand reports the asymmetric pair") {
    const std::string dir = "/tmp/mnlab_cli_match";
    REQUIRE(run("solve --lambda 6 --p 3 --match --R 300 --out " + dir) == 0);
    const auto rows = read_csv(dir + "/solutions.csv");
    REQUIRE(rows.size() == 3);  // header + swapped pair
    CHECK(rows[1][6] != "symmetric");
    CHECK(rows[2][6] != "symmetric");
    const double h1 = std::stod(rows[1][2]);
    CHECK(h1 > 0.9);
    CHECK(h1 < 1.0);
}

TEST_CASE("landscape curves reproduce the small- and large-R shapes") {
    const std::string dir = "/tmp/mnlab_cli_land";
    REQUIRE(run("landscape --lambda 6 --p 3 --R 4,20,80 --theta-points 64 --plot --out " + dir) ==
            0);
    const auto rows = read_csv(dir + "/landscape.csv");
    REQUIRE(rows.size() == 65);
    // R = 4: decreasing over the grid; R = 80: interior maximum
    std::vector<double> r4, r80;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        r4.push_back(std::stod(rows[i][1]));
        r80.push_back(std::stod(rows[i][3]));
    }
    for (std::size_t i = 1; i < r4.size(); ++i) CHECK(r4[i] <= r4[i - 1] + 1e-12);
    std::size_t arg_max = 0;
    for (std::size_t i = 0; i < r80.size(); ++i)
        if (r80[i] > r80[arg_max]) arg_max = i;
    CHECK(arg_max > 0);
    CHECK(arg_max < r80.size() - 1);
    CHECK(slurp(dir + "/landscape.svg").find("<svg") == 0);
}

TEST_CASE("blowup column grows monotonically") {
    const std::string dir = "/tmp/mnlab_cli_blow";
    REQUIRE(run("blowup --lambda 0 --p 3 --h 0.5,0.9,0.99 --probes 0.5 --out " + dir) == 0);
    const auto rows = read_csv(dir + "/blowup.csv");
    REQUIRE(rows.size() == 4);
    CHECK(std::stod(rows[2][2]) > std::stod(rows[1][2]));
    CHECK(std::stod(rows[3][2]) > std::stod(rows[2][2]));
}

TEST_CASE("sequence subcommand emits increasing lambdas") {
    const std::string dir = "/tmp/mnlab_cli_seq";
    REQUIRE(run("sequence --alpha 1 --p 3 --n 3 --out " + dir) == 0);
    const auto rows = read_csv(dir + "/sequence.csv");
    REQUIRE(rows.size() == 4);
    CHECK(std::stod(rows[2][2]) > std::stod(rows[1][2]));
    CHECK(std::stod(rows[3][2]) > std::stod(rows[2][2]));
}

}  // TEST_SUITE
