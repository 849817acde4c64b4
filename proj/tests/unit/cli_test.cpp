#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "indmodel/cli.hpp"

using indmodel::cli::run;

namespace {

std::string fx(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, AnalyzeReportsMissingElements) {
    auto r = run({"analyze", fx("base2-succ.json")});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_TRUE(has(r.out, "missing: [1]")) << r.out;
    EXPECT_TRUE(has(r.out, "covered: no"));

    auto ok = run({"analyze", fx("ex-equiv-third.json")});
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_TRUE(has(ok.out, "step count: 2")) << ok.out;
    EXPECT_TRUE(has(ok.out, "D_1 = [2]"));
}

TEST(Cli, AnalyzeJson) {
    auto r = run({"--format", "json", "analyze", fx("first-principle.json")});
    EXPECT_EQ(r.exit_code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["step_count"]["finite"].get<bool>());
    EXPECT_TRUE(j["covered"].get<bool>());
    EXPECT_EQ(j["bound"]["cap"], 136);
}

TEST(Cli, ReduceBothDirections) {
    auto yes = run({"reduce", fx("ex-equiv-third.json"), fx("first-principle.json")});
    EXPECT_EQ(yes.exit_code, 0);
    EXPECT_TRUE(has(yes.out, "reducible: yes")) << yes.out;
    EXPECT_TRUE(has(yes.out, "R(2) = "));
    EXPECT_TRUE(has(yes.out, "verified: yes"));

    auto no = run({"reduce", fx("first-principle.json"), fx("ex-equiv-third.json")});
    EXPECT_EQ(no.exit_code, 1);
    EXPECT_TRUE(has(no.out, "reducible: no (n(m1) presumed ω > n(m2)=2)")) << no.out;
}

TEST(Cli, VerifyWorkedRelations) {
    struct Case {
        std::string m1, m2, rel;
        std::vector<std::string> extra;
    };
    std::vector<Case> cases{
        {"base2-step2.json", "first-principle.json", "rel-evens.json", {}},
        {"first-principle.json", "base2-step2.json", "rel-halves.json", {}},
        {"ex-equiv-third.json", "first-principle.json", "rel-cl-prev.json", {}},
        {"backward-primes.json", "block-five.json", "rel-blocks.json", {"--cap", "140"}},
        {"block-five.json", "backward-primes.json", "rel-blocks-back.json", {"--cap", "140"}},
    };
    for (const Case& c : cases) {
        std::vector<std::string> args = c.extra;
        args.insert(args.end(), {"verify-reduction", fx(c.m1), fx(c.m2), fx(c.rel)});
        auto r = run(args);
        EXPECT_EQ(r.exit_code, 0) << c.rel << "\n" << r.out << r.err;
        EXPECT_TRUE(has(r.out, "verified: yes")) << c.rel;
    }
}

TEST(Cli, OmegaRelationStrictFailure) {
    auto r = run({"--bound", "6", "--cap", "128", "verify-reduction", fx("first-principle.json"),
                  fx("prime-induction.json"), fx("rel-omega.json")});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_TRUE(has(r.out, "x = 16 from (4, 4)")) << r.out;
    EXPECT_TRUE(has(r.out, "verified: no"));

    auto p = run({"--bound", "6", "--cap", "128", "plan", fx("first-principle.json"), fx("prime-induction.json"),
                  fx("rel-omega.json")});
    EXPECT_EQ(p.exit_code, 0) << p.out << p.err;
    EXPECT_TRUE(has(p.out, "(several S1 steps)"));
}

TEST(Cli, PlanWithoutRelation) {
    auto p = run({"plan", fx("ex-equiv-third.json"), fx("first-principle.json")});
    EXPECT_EQ(p.exit_code, 0) << p.err;
    EXPECT_TRUE(has(p.out, "theorem-recipe"));
    EXPECT_TRUE(has(p.out, "⇒ Q(2), new P on [2]")) << p.out;

    auto refused = run({"plan", fx("first-principle.json"), fx("ex-equiv-third.json")});
    EXPECT_EQ(refused.exit_code, 1);
    EXPECT_TRUE(has(refused.out, "refused:"));
}

TEST(Cli, ClassifyAndConstruct) {
    auto c = run({"classify", fx("xy-plus-3.json")});
    EXPECT_EQ(c.exit_code, 0);
    EXPECT_TRUE(has(c.out, "multiplicative: yes")) << c.out;
    EXPECT_TRUE(has(c.out, "analytic witness (multiplicative): (2, 2) -> 7"));

    auto id = run({"classify", fx("identity.json")});
    EXPECT_EQ(id.exit_code, 1);
    EXPECT_TRUE(has(id.out, "known self-loop: yes"));

    auto s = run({"construct-s", fx("base-3-7.json"), "--structure", "multiplicative", "--arity", "3"});
    EXPECT_EQ(s.exit_code, 0) << s.out << s.err;
    EXPECT_TRUE(has(s.out, "covered: yes"));

    auto refused = run({"construct-s", fx("base-3-7.json"), "--structure", "additive"});
    EXPECT_EQ(refused.exit_code, 1);
    EXPECT_TRUE(has(refused.out, "refused:"));

    auto b = run({"construct-b", fx("first-principle.json")});
    EXPECT_EQ(b.exit_code, 0);
    EXPECT_TRUE(has(b.out, "step count: 2"));
}

TEST(Cli, ErrorsExitWithUsageCode) {
    auto bad = run({"analyze", fx("malformed.json")});
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_TRUE(has(bad.err, "malformed.json")) << bad.err;
    EXPECT_TRUE(has(bad.err, "/base/elements/1"));

    EXPECT_EQ(run({}).exit_code, 2);
    EXPECT_EQ(run({"analyze", fx("nope.json")}).exit_code, 2);
    EXPECT_EQ(run({"--format", "xml", "analyze", fx("first-principle.json")}).exit_code, 2);
    EXPECT_EQ(run({"--help"}).exit_code, 0);
}

TEST(Cli, OutWritesLoadableDocuments) {
    auto dir = std::filesystem::temp_directory_path() / "indmodel_cli_test";
    std::filesystem::create_directories(dir);
    auto model_path = (dir / "built.json").string();
    auto r = run({"--out", model_path, "construct-s", fx("base-3-7.json"), "--structure", "multiplicative",
                  "--arity", "2"});
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(run({"analyze", model_path}).exit_code, 0);

    auto rel_path = (dir / "rel.json").string();
    ASSERT_EQ(run({"--out", rel_path, "reduce", fx("ex-equiv-third.json"), fx("first-principle.json")}).exit_code, 0);
    auto v = run({"verify-reduction", fx("ex-equiv-third.json"), fx("first-principle.json"), rel_path});
    EXPECT_EQ(v.exit_code, 0) << v.out;
    EXPECT_TRUE(has(slurp(rel_path), "theorem-recipe"));
    std::filesystem::remove_all(dir);
}
