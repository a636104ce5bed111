#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "catmt/io.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stderr is folded into the captured text.
Run run(const std::string& args) {
    std::string cmd = std::string(CATMT_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(CATMT_SAMPLES) + "/" + name; }

catmt::json report(const Run& r) {
    auto j = catmt::json::parse(r.out);
    j.erase("elapsed_ms");
    return j;
}

const catmt::json* check(const catmt::json& j, const std::string& name) {
    for (const auto& c : j["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Cli, OrderPropertyOnLinearOrder) {
    auto r = run("fo order-property --structure " + sample("lin5.json") + " --formula 'lt(x,y)' --length 5");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = report(r);
    EXPECT_EQ(j["version"], "0.1.0");
    EXPECT_EQ((*check(j, "order-property"))["witness"], catmt::json::parse("[[0],[1],[2],[3],[4]]"));
}

TEST(Cli, TypesOverBase) {
    auto r = run("fo types --structure " + sample("eq6.json") + " --base 0,1,2");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(report(r)["result"]["types"], 4);
}

TEST(Cli, SetTypesOverTwoPoints) {
    auto r = run("amalg types --category set-mono --base-size 2 --bound 3");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(report(r)["result"]["types"], 3);
}

TEST(Cli, ClubIndices) {
    auto r = run("exhaust club --filtration " + sample("filtration.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = report(r);
    EXPECT_EQ(j["result"]["full_indices"], catmt::json::parse("[4]"));
    EXPECT_EQ(j["result"]["strict_indices"], catmt::json::parse("[0,1,4]"));
}

TEST(Cli, ZornOnChain) {
    auto r = run("exhaust run --demo zorn --poset " + sample("chain3.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(report(r)["result"]["full_object"], "2");
}

TEST(Cli, SuitePassesForSets) {
    auto r = run("indep suite --category set-mono --predicate effective --bound 3");
    EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, ControlPredicateFails) {
    auto r = run("indep suite --category set-mono --predicate never --bound 3");
    EXPECT_EQ(r.code, 1);
    auto j = report(r);
    const auto* c = check(j, "never/existence");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ((*c)["verdict"], "fail");
}

TEST(Cli, RivalsDisagree) {
    auto r = run("indep canonicity --category graph-full --bound 3");
    EXPECT_EQ(r.code, 1);
    auto j = report(r);
    const auto* c = check(j, "rivals-agree");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ((*c)["verdict"], "fail");
}

TEST(Cli, EmbedChecks) {
    EXPECT_EQ(run("cat embed --poset " + sample("diamond.json")).code, 0);
    auto bad = run("cat embed --category " + sample("corrupted.json"));
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("\"fail\""), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    auto typo = run("indep suit");
    EXPECT_EQ(typo.code, 2);
    EXPECT_NE(typo.out.find("suite"), std::string::npos);
    EXPECT_EQ(run("fo types --structure " + sample("eq6.json") + " --arity x").code, 2);
    EXPECT_EQ(run("indep suite --category sets").code, 2);
    EXPECT_EQ(run("fo types --structure /nonexistent.json").code, 2);
}

TEST(Cli, ParseErrorsCarryPosition) {
    auto f = run("fo order-property --structure " + sample("lin5.json") + " --formula 'lt(x,'");
    EXPECT_EQ(f.code, 2);
    EXPECT_NE(f.out.find("line 1"), std::string::npos) << f.out;
    std::string bad = ::testing::TempDir() + "catmt_bad.json";
    if (FILE* fp = fopen(bad.c_str(), "w")) {
        fputs("{\"universe\": 3,\n \"relations\": {\"lt\": [[0,1]]\n", fp);
        fclose(fp);
    }
    auto j = run("fo types --structure " + bad);
    EXPECT_EQ(j.code, 2);
    EXPECT_NE(j.out.find(bad + ":"), std::string::npos) << j.out;
}

TEST(Cli, DeterministicReports) {
    for (const std::string args : {"amalg types --category graph-sub --base-size 1 --bound 3",
                                   "fo axiomatize --family triangle-free --k 3 --cap 5",
                                   "exhaust run --demo generic --size 6 --seed 11"}) {
        auto a = run(args), b = run(args);
        ASSERT_EQ(a.code, b.code) << args;
        EXPECT_EQ(report(a), report(b)) << args;
        if (args.find("--seed") != std::string::npos) {
            EXPECT_EQ(report(a)["seed"], 11);
        }
    }
}

TEST(Cli, TableOutput) {
    auto r = run("fo types --structure " + sample("eq6.json") + " --base 0,1,2 --table");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("types-counted"), std::string::npos);
    EXPECT_THROW(catmt::json::parse(r.out), catmt::json::parse_error);
}
