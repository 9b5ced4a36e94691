// End-to-end checks of the perioda binary: command grammar, file formats,
// byte-identical reruns, and the exit-code contract. The binary path comes
// from the PERIODA_BIN environment variable.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::cout << (ok ? "[ok] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

int main() {
    const char* bin = std::getenv("PERIODA_BIN");
    if (!bin) {
        std::cerr << "PERIODA_BIN not set\n";
        return 1;
    }
    std::string perioda = bin;
    std::string dir = "cli_scratch";
    run("rm -rf " + dir + " && mkdir -p " + dir);

    {
        std::ofstream spec(dir + "/yp21.json");
        spec << R"({"p": 2, "ells": [0, 1], "b0": 1, "w0": 1})";
    }

    // exact distribution reproduces the n=3 history weights
    expect(run(perioda + " urn exact-dist --spec " + dir + "/yp21.json --n 3 --out " + dir +
               "/dist.csv") == 0,
           "urn exact-dist exits 0");
    expect(slurp(dir + "/dist.csv") ==
               "black,weight,probability\n"
               "1,8,0.266666666666667\n"
               "2,8,0.266666666666667\n"
               "3,8,0.266666666666667\n"
               "4,6,0.2\n",
           "exact-dist CSV content");

    // byte-identical reruns for a seeded command
    std::string corner = perioda +
                         " tableau corner --shape " + dir + "/tri.json --runs 60 --seed 7 --out ";
    {
        std::ofstream shape(dir + "/tri.json");
        shape << R"({"pattern": {"ells": [0, 1], "n": 12}})";
    }
    expect(run(corner + dir + "/c1.csv 2>/dev/null") == 0, "tableau corner exits 0");
    expect(run(corner + dir + "/c2.csv 2>/dev/null") == 0, "tableau corner rerun exits 0");
    expect(!slurp(dir + "/c1.csv").empty() && slurp(dir + "/c1.csv") == slurp(dir + "/c2.csv"),
           "seeded corner output is byte-identical");

    // guessing round trip through files
    expect(run(perioda + " enum histories --spec " + dir + "/yp21.json --n 29 --out " + dir +
               "/seq.txt") == 0,
           "enum histories exits 0");
    expect(run(perioda + " enum guess --input " + dir + "/seq.txt --max-order 2 --max-degree 2"
               " --out " + dir + "/rec.json") == 0,
           "enum guess exits 0");
    {
        std::string rec = slurp(dir + "/rec.json");
        expect(rec.find("\"order\": 2") != std::string::npos &&
                   rec.find("-21") != std::string::npos,
               "guessed recurrence JSON has order 2 with the quadratic coefficient");
    }

    // density corner law of the 2x2 square
    {
        std::ofstream shape(dir + "/sq.json");
        shape << R"({"columns": [2, 2]})";
    }
    expect(run(perioda + " density corner-law --shape " + dir + "/sq.json --out " + dir +
               "/law.csv") == 0,
           "density corner-law exits 0");
    expect(slurp(dir + "/law.csv") == "k,prob_num,prob_den\n2,1,2\n3,1,2\n",
           "density corner-law CSV content");

    // exit-code contract: validation errors exit 1
    {
        std::ofstream bad(dir + "/bad.json");
        bad << R"({"p": 2, "ells": [0, 1], "b0": 0, "w0": 1})";
    }
    expect(run(perioda + " urn validate --spec " + dir + "/bad.json 2>/dev/null") == 1,
           "degenerate spec exits 1");
    expect(run(perioda + " urn nonsense 2>/dev/null") == 1, "unknown command exits 1");
    expect(run(perioda + " urn exact-dist --spec " + dir + "/yp21.json --n 5000 2>/dev/null") ==
               1,
           "step-limit violation exits 1");

    // deterministic simulate output with explicit seed
    expect(run(perioda + " urn simulate --spec " + dir + "/yp21.json --steps 6 --seed 3 --out " +
               dir + "/t1.csv") == 0 &&
               run(perioda + " urn simulate --spec " + dir +
                   "/yp21.json --steps 6 --seed 3 --out " + dir + "/t2.csv") == 0 &&
               slurp(dir + "/t1.csv") == slurp(dir + "/t2.csv"),
           "seeded trajectories are byte-identical");

    std::cout << (failures == 0 ? "cli checks passed\n" : "cli checks FAILED\n");
    return failures == 0 ? 0 : 1;
}
