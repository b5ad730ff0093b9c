#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " '" ASNP_CLI_PATH "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string x3 = R"('{"field":{"m":1},"coeffs":[0,0,1]}')";
const std::string x9_x7 = R"('{"field":{"m":1},"coeffs":[0,0,0,0,0,0,1,0,1]}')";
const std::string x7 = R"('{"field":{"m":1},"coeffs":[0,0,0,0,0,0,1]}')";

} // namespace

TEST_CASE("cli: np")
{
    const auto r = run("np " + x3);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["L"]["b"] == nlohmann::json({1, 0, 2}));
    CHECK(j["supersingular"] == true);
    CHECK(j["slopes"] == nlohmann::json({"1/2", "1/2"}));
    // non-reduced input is brought to normal form first
    const auto r2 = run(R"(np '{"field":{"m":1},"coeffs":[0,0,1,1]}')");
    CHECK(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out)["curve"]["coeffs"] == nlohmann::json({1, 0, 1}));
}

TEST_CASE("cli: usage errors exit 2")
{
    CHECK(run("").code == 2);
    CHECK(run("np").code == 2);
    CHECK(run("np '{not json'").code == 2);
    CHECK(run("np /nonexistent/curve.json").code == 2);
    CHECK(run("classify --genus 0 --ext 1").code == 2);
    CHECK(run("bound --genus 2").code == 2);
    CHECK(run("verify keylemma --curve " + x9_x7 + " --lambda 3/5").code == 2);
    CHECK(run("verify miracle --d 2 --r 6").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("cli: violations exit 1")
{
    CHECK(run("verify keylemma --curve " + x9_x7 + " --lambda 1/2").code == 1);
    CHECK(run("verify lemma-b --curve " + x7 + " --bmax 1 --bpmax 1 --ring-power").code == 1);
    CHECK(run("verify lemma-b --curve " + x7 + " --bmax 1 --bpmax 1").code == 0);
}

TEST_CASE("cli: verify subcommands pass")
{
    CHECK(run("verify miracle --d 7 --r 12 --upto").code == 0);
    CHECK(run("verify lemma-c --curve " + x9_x7 + " --bmax 3 --lifts 3").code == 0);
    CHECK(run("verify geer --n 1 --ext 2 --samples 4").code == 0);
    CHECK(run("verify thm1 --ext 1").code == 0);
    CHECK(run("verify thm2 --ext 1").code == 0);
    const auto b = run("bound --genus 6");
    CHECK(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["bound"] == 3);
}

TEST_CASE("cli: output is byte-identical across runs and thread counts")
{
    const auto a = run("classify --genus 3 --ext 2");
    const auto b = run("--threads 1 classify --genus 3 --ext 2");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::size_t lines = 0;
    for (char ch : a.out)
        lines += ch == '\n';
    CHECK(lines == 64);
    CHECK(run("cseries " + x7 + " --N 10 --R 63 --K 4").out == run("cseries " + x7 + " --N 10 --R 63 --K 4 --recurrence").out);
}

TEST_CASE("cli: the cache directory comes from the environment")
{
    const auto dir = std::filesystem::temp_directory_path() / "asnp-cli-cache-test";
    std::filesystem::remove_all(dir);
    const std::string env = "ASNP_CACHE_DIR='" + dir.string() + "'";
    const auto cold = run("classify --genus 3 --ext 1", env);
    const auto warm = run("classify --genus 3 --ext 1", env);
    CHECK(cold.code == 0);
    CHECK(cold.out == warm.out);
    CHECK(cold.out == run("classify --genus 3 --ext 1").out);
    CHECK(std::filesystem::file_size(dir / "counts.txt") > 0);
    std::filesystem::remove_all(dir);
}
