#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "atomspec/dsl.hpp"
#include "atomspec/spectrum.hpp"
#include "atomspec/triangular.hpp"
#include "json.hpp"

// ATOMSPEC_CLI_PATH is injected by the build and points at the binary.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("atomspec_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

RunResult run_cli(const std::vector<std::string>& args) {
  static int serial = 0;
  fs::path out = scratch_dir() / ("stdout_" + std::to_string(serial));
  fs::path err = scratch_dir() / ("stderr_" + std::to_string(serial));
  ++serial;
  std::string cmd = quoted(ATOMSPEC_CLI_PATH);
  for (const auto& a : args) cmd += " " + quoted(a);
  cmd += " > " + quoted(out.string()) + " 2> " + quoted(err.string());
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const char* kSigma2 = "vertices 1 2;\narrows a: 1 -> 2;\nring F2;\n";
const char* kJordanX3 = "vertices v;\narrows x: v -> v;\nrelations x^3;\n";
const char* kJordanFree = "vertices v;\narrows x: v -> v;\nring F2;\n";

}  // namespace

TEST_CASE("spectrum emits the library's json byte for byte") {
  auto in = write_file("sigma2.q", kSigma2);
  RunResult r = run_cli({"spectrum", in.string()});
  CHECK(r.status == 0);
  CHECK(r.err.empty());
  atomspec::LoadedInput loaded = atomspec::load_input(kSigma2);
  atomspec::AtomSpectrum S =
      atomspec::atom_spectrum(loaded.algebra, loaded.relations);
  CHECK(r.out == atomspec::emit(S, "json", {2, 3, 5}));
}

TEST_CASE("spectrum respects --format dot and --primes") {
  auto in = write_file("jordan_x3.q", kJordanX3);
  RunResult r =
      run_cli({"spectrum", in.string(), "--format", "dot", "--primes", "2,7"});
  CHECK(r.status == 0);
  atomspec::LoadedInput loaded = atomspec::load_input(kJordanX3);
  atomspec::AtomSpectrum S =
      atomspec::atom_spectrum(loaded.algebra, loaded.relations);
  CHECK(r.out == atomspec::emit(S, "dot", {2, 7}));
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("spectrum forwards the embedding warning to stderr") {
  auto in = write_file("jordan_free.q", kJordanFree);
  RunResult r = run_cli({"spectrum", in.string()});
  CHECK(r.status == 0);
  CHECK(r.err.find("warning:") != std::string::npos);
  CHECK(r.err.find("not right rooted") != std::string::npos);
}

TEST_CASE("check reports admissibility and rootedness in text form") {
  auto in = write_file("check_sigma2.q", kSigma2);
  RunResult r = run_cli({"check", in.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("ring: F2") != std::string::npos);
  CHECK(r.out.find("vertices: 2") != std::string::npos);
  CHECK(r.out.find("right-rooted: yes") != std::string::npos);
}

TEST_CASE("check rejects inadmissible relations after printing the report") {
  auto in = write_file("bad_unit.q",
                       "vertices v;\narrows x: v -> v;\nrelations x^3, 2;\n");
  RunResult r = run_cli({"check", in.string()});
  CHECK(r.status == 1);
  CHECK(r.out.find("x^3: admissible") != std::string::npos);
  CHECK(r.out.find("2: not admissible") != std::string::npos);
  CHECK(r.err.find("relation is not admissible: 2") != std::string::npos);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("check --format json is machine readable") {
  auto in = write_file("check_jordan.q", kJordanX3);
  RunResult r = run_cli({"check", in.string(), "--format", "json"});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["ring"] == "Z");
  CHECK(j["vertices"] == 1);
  CHECK(j["arrows"] == 1);
  CHECK(j["relations"][0]["text"] == "x^3");
  CHECK(j["relations"][0]["admissible"] == true);
  CHECK(j["right_rooted"] == "yes");
}

TEST_CASE("ideal lists the generators at a vertex and prime") {
  auto in = write_file("ideal_jordan.q", kJordanX3);
  RunResult r = run_cli({"ideal", in.string(), "--vertex", "v", "--prime",
                         "2", "--format", "json"});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["label"] == "<kQ/p~(v,(2))>");
  CHECK(j["vertex"] == "v");
  CHECK(j["prime"] == "(2)");
  CHECK(j["generators"].size() == 2);
  CHECK(!j.contains("generators_verified"));
}

TEST_CASE("ideal verifies the generator list over a prime field") {
  auto in = write_file("ideal_jordan_f2.q",
                       "vertices v;\narrows x: v -> v;\nrelations x^2;\n"
                       "ring F2;\n");
  RunResult r = run_cli({"ideal", in.string(), "--vertex", "v", "--format",
                         "json", "--check-gens", "3"});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["label"] == "<kQ/p~(v,(0))>");
  CHECK(j["generators"].size() == 1);
  CHECK(j["generators_verified"] == true);
  CHECK(j["verification_degree"] == 3);

  // exact-span verification needs field coefficients
  auto z = write_file("ideal_jordan_z.q", kJordanX3);
  RunResult rz = run_cli({"ideal", z.string(), "--vertex", "v", "--prime",
                          "2", "--check-gens", "2"});
  CHECK(rz.status == 1);
  CHECK(rz.err.find("prime fields only") != std::string::npos);
}

TEST_CASE("ideal rejects an unknown vertex and a prime outside the model") {
  auto in = write_file("ideal_sigma2.q", kSigma2);
  RunResult bad_vertex =
      run_cli({"ideal", in.string(), "--vertex", "nope"});
  CHECK(bad_vertex.status == 1);
  CHECK(bad_vertex.err.find("unknown vertex") != std::string::npos);

  RunResult bad_prime =
      run_cli({"ideal", in.string(), "--vertex", "1", "--prime", "2"});
  CHECK(bad_prime.status == 1);
  CHECK(bad_prime.err.find("only the point (0)") != std::string::npos);

  RunResult field_zero =
      run_cli({"ideal", in.string(), "--vertex", "1", "--prime", "0"});
  CHECK(field_zero.status == 0);
  CHECK(field_zero.out.find("generators:") != std::string::npos);
}

TEST_CASE("verify emits a machine readable report") {
  auto in = write_file("verify_free.q", kJordanFree);
  RunResult r = run_cli({"verify", in.string(), "--dim-bound", "1"});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(r.out.find("non_surjectivity_witnesses") != std::string::npos);
  CHECK(j.contains("checks"));
}

TEST_CASE("verify stops at the enumeration guard with exit code 2") {
  auto in = write_file("verify_big.q", kJordanFree);
  RunResult r = run_cli({"verify", in.string(), "--dim-bound", "6"});
  CHECK(r.status == 2);
  CHECK(r.err.find("exceeds limit") != std::string::npos);
}

TEST_CASE("syntax errors exit with code 3 and cite the location") {
  auto in = write_file("syntax.q", "vertices ;\n");
  RunResult r = run_cli({"check", in.string()});
  CHECK(r.status == 3);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("usage problems exit with code 1") {
  RunResult missing = run_cli({"spectrum", "/nonexistent/input.q"});
  CHECK(missing.status == 1);
  CHECK(missing.err.find("cannot read input file") != std::string::npos);

  auto in = write_file("flag.q", kSigma2);
  RunResult unknown_flag = run_cli({"spectrum", in.string(), "--nope"});
  CHECK(unknown_flag.status == 1);

  RunResult no_subcommand = run_cli({});
  CHECK(no_subcommand.status == 1);

  RunResult bad_format =
      run_cli({"spectrum", in.string(), "--format", "svg"});
  CHECK(bad_format.status == 1);
}

TEST_CASE("help is not an error") {
  RunResult r = run_cli({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("spectrum") != std::string::npos);
}

TEST_CASE("triangular subcommand matches the library output") {
  auto m = write_file("m.json", "{\"group\": \"F2\"}\n");
  RunResult r =
      run_cli({"triangular", "--A", "F2", "--B", "F2", "--M", m.string()});
  CHECK(r.status == 0);
  atomspec::AtomSpectrum S = atomspec::triangular_spectrum(
      atomspec::make_triangular(atomspec::BaseRing::prime_field(2),
                                atomspec::BaseRing::prime_field(2),
                                atomspec::BimoduleDescriptor::vector_space(2, 1)));
  CHECK(r.out == atomspec::emit(S, "json", {2, 3, 5}));

  auto bad = write_file("m_bad.json", "not json\n");
  RunResult rb =
      run_cli({"triangular", "--A", "F2", "--B", "F2", "--M", bad.string()});
  CHECK(rb.status == 3);
  CHECK(rb.err.find("bad bimodule JSON") != std::string::npos);
}

TEST_CASE("--out writes the same bytes on repeated runs") {
  auto in = write_file("det.q", kJordanX3);
  fs::path out1 = scratch_dir() / "det1.json";
  fs::path out2 = scratch_dir() / "det2.json";
  RunResult r1 = run_cli({"spectrum", in.string(), "--out", out1.string()});
  RunResult r2 = run_cli({"spectrum", in.string(), "--out", out2.string()});
  CHECK(r1.status == 0);
  CHECK(r2.status == 0);
  CHECK(r1.out.empty());
  std::string a = slurp(out1);
  std::string b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
}
