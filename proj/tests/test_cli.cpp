#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + VRES_LAB_BIN + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "vres-lab-cli-test";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::filesystem::remove(p);
    return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("points --N 5").code == 2);
    CHECK(run("hilbert --N 5 --seed 1 --window 3").code == 2);
    CHECK(run("vres-pair --N 5 --seed 1 --d x,1").code == 2);
    CHECK(run("mrc --nmin 5 --nmax 3 --seed 1").code == 2);
    CHECK(run("regress sideways").code == 2);
    CHECK(run("points --N 5 --seed 1 --trials 3").code == 2);
}

TEST_CASE("help exits cleanly") { CHECK(run("--help").code == 0); }

TEST_CASE("successful commands exit with 0") {
    const auto pts = run("points --N 4 --seed 9");
    CHECK(pts.code == 0);
    CHECK(json_of(pts).at("points").size() == 4);

    const auto h = run("hilbert --N 3 --seed 2 --window 2,2");
    CHECK(h.code == 0);
    CHECK(h.out == "i\\j,0,1,2\n0,1,3,3\n1,2,3,3\n2,3,3,3\n");

    CHECK(run("dh --N 12 --seed 1").code == 0);
    const auto bt = run("betti --N 6 --seed 4");
    CHECK(bt.code == 0);
    CHECK(json_of(bt).at("boundary_clean") == true);
    CHECK(run("vres-intersect --N 5 --seed 2").code == 0);
    CHECK(run("regress appendix").code == 0);
}

TEST_CASE("the final example from the command line") {
    const auto r = run("vres-pair --N 31 --d 2,4 --seed 1");
    REQUIRE(r.code == 0);
    const auto j = json_of(r);
    CHECK(j.at("totals") == nlohmann::json{1, 34, 66, 39, 6});
    CHECK(j.at("pretty") ==
          "S <- S(-1,-5)^11 + S(-2,-4)^14 + S(-3,-3)^9 <- S(-1,-6)^8 + S(-2,-5)^32 + S(-3,-4)^26 <- "
          "S(-2,-6)^15 + S(-3,-5)^24 <- S(-3,-6)^6 <- 0");
}

TEST_CASE("property failures exit with 1 and a JSON report") {
    const auto r = run("vres-pair --N 10 --seed 1 --d 2,0");
    CHECK(r.code == 1);
    CHECK(json_of(r).at("ok") == false);
    // a dirty explicit window is reported, not silently enlarged
    const auto b = run("betti --N 8 --seed 1 --window 3,3");
    CHECK(b.code == 1);
    CHECK(json_of(b).at("boundary_clean") == false);
}

TEST_CASE("replay determinism") {
    for (const char* args : {"points --N 7 --seed 5 --n 2 --m 1", "betti --N 9 --seed 11",
                             "mrc --nmin 2 --nmax 8 --trials 2 --seed 7 --jobs 2"}) {
        const auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    CHECK(run("points --N 7 --seed 5").out != run("points --N 7 --seed 6").out);
}

TEST_CASE("prime selection by flag and environment") {
    CHECK(json_of(run("points --N 3 --seed 1 --prime 10007")).at("p") == 10007);
    CHECK(json_of(run("points --N 3 --seed 1", "VRES_PRIME=101")).at("p") == 101);
    CHECK(json_of(run("points --N 3 --seed 1 --prime 103", "VRES_PRIME=101")).at("p") == 103);
    CHECK(run("points --N 3 --seed 1 --prime 100").code == 1);
}

TEST_CASE("output files, point files and logs") {
    const auto out = scratch("pts.json");
    const auto log = scratch("log.jsonl");
    REQUIRE(run("points --N 6 --seed 3 --out " + out.string() + " --log " + log.string()).code == 0);
    CHECK(std::filesystem::exists(out));

    const auto a = run("betti --N 6 --seed 3 --log " + log.string());
    const auto b = run("betti --points " + out.string());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    std::ifstream in(log);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        const auto rec = nlohmann::json::parse(line);
        CHECK(rec.at("seed") == 3);
        CHECK(rec.at("N") == 6);
        CHECK(rec.contains("runtime_ms"));
        ++lines;
    }
    CHECK(lines == 2);
}
