#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(MAUTO_DATA_DIR) + "/" + name; }

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("mauto-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::vector<std::string>& args) {
  const fs::path err = scratch() / "stderr.txt";
  std::string cmd = quote(MAUTO_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>" + quote(err.string());
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}


const char* kContradiction =
    "tracks 1\ntheory presburger pad fresh\nstates q0 q1\ninitial q0\nfinal q1\nq0 -> q1 : (not (= t1 t1))\n";
const char* kUniversal = "tracks 1\ntheory presburger pad fresh\nstates q0\ninitial q0\nfinal q0\nq0 -> q0 : true\n";

}  // namespace

TEST_CASE("member") {
  auto r = run({"member", data("fig1.aut"), "1,0,0"});
  CHECK(r.code == 0);
  CHECK(r.out == "accept q0 q1 q1 q1\n");
  r = run({"member", data("fig1.aut"), "0"});
  CHECK(r.code == 1);
  CHECK(r.out == "reject\n");
  CHECK(run({"member", data("fig1.aut"), ""}).code == 1);
  CHECK(run({"member", data("add3.aut"), "1,2", "3,4", "4,6"}).code == 0);
  CHECK(run({"member", data("add3.aut"), "1", "1", "3"}).code == 1);
}

TEST_CASE("member errors") {
  auto r = run({"member", data("fig1.aut"), "1,0", "2"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  CHECK(run({"member", data("fig1.aut"), "x"}).code == 2);
  CHECK(run({"member", data("fig1.aut"), "-1"}).code == 2);
  CHECK(run({"member", "/no/such/file.aut", "1"}).code == 2);
  r = run({"member", data("fig1.aut"), "--theory", data("two.fin"), "a"});
  CHECK(r.code == 2);
  CHECK(r.err.find("does not match") != std::string::npos);
  CHECK(run({"member", data("fig1.aut"), "--theory", "presburger", "1"}).code == 0);
}

TEST_CASE("empty") {
  auto r = run({"empty", data("fig1.aut")});
  CHECK(r.code == 1);
  CHECK(r.out == "1\n");
  r = run({"empty", write("contra.aut", kContradiction)});
  CHECK(r.code == 0);
  CHECK(r.out == "empty\n");
  r = run({"empty", write("eps.aut", "tracks 2\ntheory presburger\nstates q\ninitial q\nfinal q\n")});
  CHECK(r.code == 1);
  CHECK(r.out == "\"\" \"\"\n");
}

TEST_CASE("closure commands") {
  const std::string comp = (scratch() / "comp.aut").string();
  CHECK(run({"complement", write("univ.aut", kUniversal), "-o", comp}).code == 0);
  CHECK(run({"empty", comp}).code == 0);

  const std::string proj = (scratch() / "proj.aut").string();
  CHECK(run({"project", data("add3.aut"), "--track", "3", "-o", proj}).code == 0);
  CHECK(run({"member", proj, "1,2", "3,4"}).code == 0);
  CHECK(run({"project", data("fig1.aut"), "--track", "1"}).code == 2);

  auto r = run({"cylindrify", data("fig1.aut"), "--position", "2"});
  CHECK(r.code == 0);
  const std::string cyl = write("cyl.aut", r.out);
  CHECK(run({"member", cyl, "1,0", "5,7,9"}).code == 0);
  CHECK(run({"member", cyl, "1,1", "5"}).code == 1);

  r = run({"product", data("fig1.aut"), comp});
  CHECK(r.code == 0);
  CHECK(run({"empty", write("prod.aut", r.out)}).code == 0);
  r = run({"product", data("fig1.aut"), write("univ.aut", kUniversal)});
  CHECK(r.code == 0);
  CHECK(run({"empty", write("prod2.aut", r.out)}).code == 1);
  r = run({"union", data("fig1.aut"), write("contra.aut", kContradiction)});
  CHECK(r.code == 0);
  CHECK(run({"member", write("union.aut", r.out), "1,0"}).code == 0);

  CHECK(run({"product", data("fig1.aut"), data("add3.aut")}).code == 2);
}

TEST_CASE("emitted automata are canonical and round-trip") {
  auto first = run({"complement", data("fig1.aut")});
  REQUIRE(first.code == 0);
  auto again = run({"union", write("c1.aut", first.out), write("contra.aut", kContradiction)});
  REQUIRE(again.code == 0);
  const std::string path = write("c2.aut", again.out);
  auto twice = run({"product", path, path});
  CHECK(twice.code == 0);
  auto r = run({"complement", write("c3.aut", first.out)});
  CHECK(r.code == 0);
  CHECK(run({"member", write("c4.aut", r.out), "1,0,0"}).code == 0);
  CHECK(run({"member", write("c5.aut", first.out), "1,0,0"}).code == 1);
}

TEST_CASE("compile-mso") {
  const std::string out = (scratch() / "even.aut").string();
  CHECK(run({"compile-mso", "(forallP y (alpha (exists z (rel plus z z t1)) y))", "--theory", "presburger", "-o", out}).code == 0);
  CHECK(run({"member", out, "2,4"}).code == 0);
  CHECK(run({"member", out, "3"}).code == 1);
  CHECK(run({"compile-mso", "(forallP y (lt y z))", "--theory", "presburger"}).code == 2);
  CHECK(run({"compile-mso", "(forallP y (alpha (= t1 t1) y))"}).code == 2);
}

TEST_CASE("decide") {
  auto r = run({"decide", "presburger", "(forall x (exists y (rel plus x y x)))"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = run({"decide", "presburger", "(forall x (exists y (rel plus y y x)))"});
  CHECK(r.code == 1);
  CHECK(r.out == "false\n");
  CHECK(run({"decide", "presburger", "(rel plus x x x)"}).code == 2);
  CHECK(run({"decide", "fo", "ordinal-omega-omega",
             "(exists a (exists b (exists s (exists t (and (rel plusO a b s) (rel plusO b a t) (not (= s t)))))))"})
            .code == 0);
  CHECK(run({"decide", "fo", "ordinal-omega-omega", "(forall a (forall b (forall s (implies (rel plusO a b s) (rel plusO b a s)))))"})
            .code == 1);
  CHECK(run({"decide", "fo", "skolem", "(exists x (forall y (rel times x y y)))"}).code == 0);
  CHECK(run({"decide", "satplus", data("repeated.msoplus"), "--theory", "presburger"}).code == 0);
  CHECK(run({"decide", "satplus", data("repeated.msoplus")}).code == 2);
  CHECK(run({"decide", "mso", "(existsP y (alpha (rel plus t1 t1 t1) y))", "--theory", "presburger"}).code == 0);
  CHECK(run({"decide", "mso", "(existsP y (alpha (not (= t1 t1)) y))", "--theory", "presburger"}).code == 1);
  CHECK(run({"decide", "sql", "x"}).code == 2);
}

TEST_CASE("ordinal calculator") {
  auto r = run({"ordinal", "add", "11,2,0,3,4,0,5", "0,2,6,17"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("0,2,6,20,4,0,5\n", 0) == 0);
  r = run({"ordinal", "add", "", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1\n", 0) == 0);
  r = run({"ordinal", "add", "1", "0,1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("0,1\n", 0) == 0);
  r = run({"ordinal", "cmp", "1", "0,1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 < w\n");
  CHECK(run({"ordinal", "add", "1,0", "1"}).code == 2);
}

TEST_CASE("skolem-encode") {
  auto r = run({"skolem-encode", "12"});
  CHECK(r.code == 0);
  CHECK(r.out == "2,1\n");
  CHECK(run({"skolem-encode", "1"}).out == "\n");
  CHECK(run({"skolem-encode", "0"}).code == 2);
}

TEST_CASE("usage errors") {
  auto r = run({});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(run({"member"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cleanup") { fs::remove_all(scratch()); }
