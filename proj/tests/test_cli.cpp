// SPDX-License-Identifier: Apache-2.0
// Runs the trpq binary and checks output and exit codes.
#include "trpq/hardness.hpp"
#include "trpq/io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace trpq;
namespace fs = std::filesystem;

namespace {

const std::string kFixture = TRPQ_DATA_DIR "/contact_tracing_example";

struct Outcome {
	int code = -1;
	std::string out;
};

Outcome run(const std::string &args) {
	std::string cmd = std::string(TRPQ_CLI) + " " + args + " 2>/dev/null";
	Outcome r;
	FILE *pipe = ::popen(cmd.c_str(), "r");
	if (!pipe)
		return r;
	std::array<char, 4096> buf;
	std::size_t n;
	while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
		r.out.append(buf.data(), n);
	int status = ::pclose(pipe);
	r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	return r;
}

std::string quote(const std::string &s) {
	return "'" + s + "'";
}

class TempDir {
public:
	TempDir() {
		static int counter = 0;
		path_ = fs::temp_directory_path() /
		        ("trpq-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
		fs::remove_all(path_);
		fs::create_directories(path_);
	}
	~TempDir() { fs::remove_all(path_); }
	std::string str() const { return path_.string(); }
	fs::path operator/(const std::string &name) const { return path_ / name; }

private:
	fs::path path_;
};

std::string slurp(const fs::path &p) {
	std::ifstream in(p, std::ios::binary);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

} // namespace

TEST(Cli, IntroQuery) {
	Outcome r = run("query " + kFixture + " --file " TRPQ_DOCS_DIR "/queries/intro.match");
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "x,x_time,y,y_time\nn3,4,n6,9\nn7,5,n6,9\nn7,6,n6,9\n");
	Outcome oracle = run("query " + kFixture + " --algo oracle --file " TRPQ_DOCS_DIR "/queries/intro.trpq");
	EXPECT_EQ(oracle.out, r.out);
}

TEST(Cli, ForcedAlgorithmOutsideFragment) {
	EXPECT_EQ(run("query " + kFixture + " --algo pc " + quote("(?(N))[0,3]")).code, 4);
	EXPECT_EQ(run("query " + kFixture + " --algo anoi " + quote("?(N)")).code, 4);
}

TEST(Cli, TupleCheck) {
	TempDir dir;
	auto inst = gen_subset_sum({2, 3}, 5);
	save_bundle(inst.graph, dir.str());
	std::string expr = quote("(N[2,2] + N[0,0]) / (N[3,3] + N[0,0])");
	Outcome yes = run("query " + dir.str() + " --tuple v,0,v,5 " + expr);
	EXPECT_EQ(yes.code, 0);
	EXPECT_EQ(yes.out, "true\n");
	EXPECT_EQ(run("query " + dir.str() + " --tuple v,0,v,4 " + expr).out, "false\n");
	EXPECT_EQ(run("query " + dir.str() + " --tuple v,0,w,4 " + expr).code, 2);
}

TEST(Cli, Classify) {
	Outcome r = run("classify " + quote("?(N/exists)"));
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "PC_ONLY\n");
	EXPECT_EQ(run("classify " + quote("F / N[1,2]")).out, "ANOI\n");
	EXPECT_EQ(run("classify --syntax match " + quote("MATCH (x:Person {test='pos'})-/PREV/-(y)")).out, "PC_ONLY\n");
	EXPECT_EQ(run("classify " + quote("N[2,1]")).code, 2);
}

TEST(Cli, Validate) {
	EXPECT_EQ(run("validate " + kFixture).code, 0);
	TempDir dir;
	fs::copy(kFixture, dir.str());
	std::string text = slurp(dir / "existence.csv");
	text.replace(text.find("e2,1,2"), 6, "e2,1,8");
	std::ofstream(dir / "existence.csv", std::ios::binary) << text;
	EXPECT_EQ(run("validate " + dir.str()).code, 3);
	EXPECT_EQ(run("validate " + dir.str() + "/missing").code, 3);
}

TEST(Cli, GenIsDeterministic) {
	TempDir a, b;
	std::string args = " --persons 40 --rooms 4 --timepoints 24 --seed 9 --out ";
	ASSERT_EQ(run("gen" + args + a.str()).code, 0);
	ASSERT_EQ(run("gen" + args + b.str()).code, 0);
	for (const char *f : {"meta.toml", "objects.csv", "existence.csv", "properties.csv"})
		EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
	EXPECT_EQ(run("validate " + a.str()).code, 0);
	EXPECT_EQ(run("gen --positivity 2 --out " + a.str()).code, 2);
}

TEST(Cli, Expand) {
	Outcome r = run("expand " + kFixture);
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out.rfind("id,time,prop,value\n", 0), 0u);
	EXPECT_NE(r.out.find("n2,5,risk,high\n"), std::string::npos);
	TempDir dir;
	ItpgBuilder wide;
	wide.omega({0, TimePoint{1} << 60}).node("v", "V").exists("v", {0, 3});
	save_bundle(wide.build(), dir.str());
	EXPECT_EQ(run("expand " + dir.str()).code, 5);
}

TEST(Cli, BadArguments) {
	EXPECT_EQ(run("query " + kFixture + " --algo fastest N").code, 2);
	EXPECT_EQ(run("frobnicate").code, 2);
	EXPECT_EQ(run("query " + kFixture + " " + quote("N / / F")).code, 2);
}
