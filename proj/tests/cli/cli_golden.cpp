// Golden tests for the command-line surface: byte-stable JSON out, exact
// exit codes.  argv[1] is the binary under test, argv[2] the fixture dir.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

int failures = 0;

#define CHECK(cond)                                                          \
    do {                                                                     \
        if (!(cond)) {                                                       \
            ++failures;                                                      \
            std::cerr << "FAILED at line " << __LINE__ << ": " #cond "\n";   \
        }                                                                    \
    } while (0)

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: cli_golden <hroot-binary> <fixture-dir>\n";
        return 2;
    }
    std::string bin = argv[1], fix = argv[2];
    std::string tmpdir = "cli_golden_work";
    std::system(("rm -rf " + tmpdir + " && mkdir -p " + tmpdir).c_str());

    const std::string qfield = R"({"min_poly":["-1","1"],"var":"t"})";

    { // a perfect square recovers its root with stable bytes
        RunResult r = run(bin + " root --d 2 --in " + fix + "/square.json");
        CHECK(r.code == 0);
        CHECK(r.out ==
              "{\"a\":{\"corrections\":[],\"field\":" + qfield +
                  ",\"terms\":[{\"base\":{\"coords\":[\"2\"]},\"poly\":[{\"coords\":[\"1\"]}]},"
                  "{\"base\":{\"coords\":[\"3\"]},\"poly\":[{\"coords\":[\"1\"]}]}]},"
                  "\"field\":" + qfield + ",\"status\":\"root\"}\n");
    }
    { // the same root lands at --out atomically
        std::string out = tmpdir + "/root_out.json";
        RunResult r = run(bin + " root --d 2 --in " + fix + "/square.json --out " + out);
        CHECK(r.code == 0);
        CHECK(slurp(out) == r.out);
    }
    { // no identical root: witness slice is reported, exit distinguishes "no"
        RunResult r = run(bin + " root --d 2 --in " + fix + "/four_nine.json");
        CHECK(r.code == 3);
        CHECK(r.out ==
              "{\"field\":" + qfield +
                  ",\"slice\":0,\"status\":\"no_root\",\"witness\":{\"terms\":["
                  "{\"coef\":{\"coords\":[\"1\"]},\"exp\":[0,0,4]},"
                  "{\"coef\":{\"coords\":[\"1\"]},\"exp\":[0,4,0]}],"
                  "\"vars\":[\"X0\",\"X1\",\"X2\"]}}\n");
    }
    { // certificate fixture with pinned bytes
        std::string out = tmpdir + "/cert.json";
        RunResult r = run(bin + " certify --d 2 --in " + fix + "/six.json --out " + out);
        CHECK(r.code == 0);
        CHECK(r.out ==
              "{\"a\":1,\"d\":2,\"m\":2,\"min_poly_root\":0,\"n_min\":0,\"p\":7,\"period\":2}\n");

        // anything certify emits must re-verify
        nlohmann::json combined;
        combined["sequence"] = nlohmann::json::parse(slurp(fix + "/six.json"));
        combined["certificate"] = nlohmann::json::parse(slurp(out));
        std::string cpath = tmpdir + "/combined.json";
        std::ofstream(cpath) << combined.dump() << "\n";
        RunResult v = run(bin + " check-cert --in " + cpath);
        CHECK(v.code == 0);
        CHECK(v.out == "{\"status\":\"valid\"}\n");

        // tampering flips the verdict and the exit code
        combined["certificate"]["a"] = 0;
        std::ofstream(cpath) << combined.dump() << "\n";
        RunResult t = run(bin + " check-cert --in " + cpath);
        CHECK(t.code == 3);
        CHECK(t.out == "{\"status\":\"invalid\"}\n");
    }
    { // inconclusive search is exit 4, distinct from a negative answer
        RunResult r = run(bin + " certify --d 2 --in " + fix + "/four.json");
        CHECK(r.code == 4);
        CHECK(r.out == "{\"scanned\":25,\"skipped_period_cap\":[],\"status\":\"not_found\"}\n");
    }
    { // exact evaluation across a range
        RunResult r = run(bin + " eval --in " + fix + "/six.json --n 0..4");
        CHECK(r.code == 0);
        CHECK(r.out ==
              "{\"values\":[{\"coords\":[\"1\"]},{\"coords\":[\"6\"]},{\"coords\":[\"36\"]},"
              "{\"coords\":[\"216\"]},{\"coords\":[\"1296\"]}]}\n");
    }
    { // conversions in both directions
        RunResult r = run(bin + " convert --in " + fix + "/six.json");
        CHECK(r.code == 0);
        CHECK(r.out ==
              "{\"den\":[{\"coords\":[\"1\"]},{\"coords\":[\"-6\"]}],\"field\":" + qfield +
                  ",\"num\":[{\"coords\":[\"1\"]}]}\n");

        std::string rf = tmpdir + "/sixrf.json";
        std::ofstream(rf) << r.out;
        RunResult back = run(bin + " convert --in " + rf);
        CHECK(back.code == 0);
        CHECK(back.out ==
              "{\"corrections\":[],\"field\":" + qfield +
                  ",\"terms\":[{\"base\":{\"coords\":[\"6\"]},\"poly\":[{\"coords\":[\"1\"]}]}]}\n");
    }
    { // usage errors: exit 2, nothing on standard output
        RunResult r = run(bin + " root --in " + fix + "/six.json 2>/dev/null");
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        RunResult s = run(bin + " root --d 1 --in " + fix + "/six.json 2>/dev/null");
        CHECK(s.code == 2);
        CHECK(s.out.empty());
        RunResult t = run(bin + " eval --in " + fix + "/six.json --n 4..0 2>/dev/null");
        CHECK(t.code == 2);
        CHECK(t.out.empty());
        RunResult u = run(bin + " eval --in /nonexistent.json --n 0 2>/dev/null");
        CHECK(u.code == 2);
        CHECK(u.out.empty());
    }

    if (failures) {
        std::cerr << failures << " golden check(s) failed\n";
        return 1;
    }
    std::puts("all golden checks passed");
    return 0;
}
