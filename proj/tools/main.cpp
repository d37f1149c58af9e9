#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atomspec/dsl.hpp"
#include "atomspec/errors.hpp"
#include "atomspec/finite_oracle.hpp"
#include "atomspec/path_algebra.hpp"
#include "atomspec/spectrum.hpp"
#include "atomspec/triangular.hpp"
#include "json.hpp"

namespace {

using namespace atomspec;

struct RunConfig {
  std::string input;
  std::string format;
  std::string out;
  int degree_bound = 12;
  int mmax = 12;
  int dim_bound = 2;
  int check_gens = 0;
  std::vector<long long> primes = {2, 3, 5};
  long long guard_submodules = 1'000'000;
  long long guard_hom = 100'000;
  std::string vertex;
  long long prime = 0;
  bool prime_given = false;
  std::string ring_a, ring_b, m_table;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read input file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw UsageError("cannot write output file \"" + cfg.out + "\"");
  out << text;
}

// Admissibility with source spans; throws UsageError citing the first
// offender so rejections always point at the DSL text.
void require_admissible(const PathAlgebra& alg,
                        const std::vector<Relation>& rels) {
  for (const auto& rel : rels) {
    if (is_admissible(alg, rel)) continue;
    std::string where;
    if (rel.line > 0)
      where = "line " + std::to_string(rel.line) + ", col " +
              std::to_string(rel.col) + ": ";
    throw UsageError(where + "relation is not admissible: " +
                     relation_display(alg, rel));
  }
}

std::string tri_text(Tri t) { return to_string(t); }

int run_check(RunConfig cfg) {
  if (cfg.format.empty()) cfg.format = "text";
  LoadedInput in = load_input(read_file(cfg.input));
  const PathAlgebra& alg = in.algebra;

  bool all_admissible = true;
  for (const auto& rel : in.relations)
    if (!is_admissible(alg, rel)) all_admissible = false;

  std::string rooted_text;
  if (all_admissible) {
    RootedOptions opts{cfg.mmax, cfg.degree_bound};
    rooted_text = tri_text(is_right_rooted(alg, in.relations, opts));
  }

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["ring"] = alg.ring().display();
    j["vertices"] = alg.quiver().vertex_count();
    j["arrows"] = alg.quiver().arrow_count();
    j["relations"] = nlohmann::ordered_json::array();
    for (const auto& rel : in.relations) {
      nlohmann::ordered_json rj;
      rj["text"] = relation_display(alg, rel);
      rj["line"] = rel.line;
      rj["col"] = rel.col;
      rj["admissible"] = is_admissible(alg, rel);
      j["relations"].push_back(std::move(rj));
    }
    if (all_admissible)
      j["right_rooted"] = rooted_text;
    else
      j["right_rooted"] = nullptr;
    write_output(cfg, j.dump(2) + "\n");
  } else {
    std::string out;
    out += "ring: " + alg.ring().display() + "\n";
    out += "vertices: " + std::to_string(alg.quiver().vertex_count()) + "\n";
    out += "arrows: " + std::to_string(alg.quiver().arrow_count()) + "\n";
    out += "relations: " + std::to_string(in.relations.size()) + "\n";
    for (const auto& rel : in.relations) {
      out += "  " + relation_display(alg, rel) + ": ";
      out += is_admissible(alg, rel) ? "admissible" : "not admissible";
      out += "\n";
    }
    if (all_admissible) out += "right-rooted: " + rooted_text + "\n";
    write_output(cfg, out);
  }

  if (!all_admissible) {
    require_admissible(alg, in.relations);  // throws, citing the span
  }
  return 0;
}

int run_spectrum(RunConfig cfg) {
  if (cfg.format.empty()) cfg.format = "json";
  LoadedInput in = load_input(read_file(cfg.input));
  require_admissible(in.algebra, in.relations);
  RootedOptions opts{cfg.mmax, cfg.degree_bound};
  AtomSpectrum S = atom_spectrum(in.algebra, in.relations, opts);
  if (!S.warning.empty()) std::cerr << "warning: " << S.warning << "\n";
  write_output(cfg, emit(S, cfg.format, cfg.primes));
  return 0;
}

PrimePoint resolve_prime(const BaseRing& ring, long long p, bool given) {
  SpectrumModel model = spectrum_of(ring);
  PrimePoint pt;
  if (ring.is_field()) {
    if (given && p != 0)
      throw UsageError("Spec " + ring.display() +
                       " has only the point (0); use --prime 0 or omit it");
    pt = PrimePoint::unique();
  } else if (p == 0) {
    pt = PrimePoint::zero();
  } else {
    pt = PrimePoint::prime(p);
  }
  if (!model.contains(pt))
    throw UsageError("(" + std::to_string(p) + ") is not a point of Spec " +
                     ring.display());
  return pt;
}

int run_ideal(RunConfig cfg) {
  if (cfg.format.empty()) cfg.format = "text";
  LoadedInput in = load_input(read_file(cfg.input));
  const PathAlgebra& alg = in.algebra;
  auto vi = alg.quiver().vertex_index(cfg.vertex);
  if (!vi) throw UsageError("unknown vertex \"" + cfg.vertex + "\"");
  PrimePoint pt = resolve_prime(alg.ring(), cfg.prime, cfg.prime_given);
  ComonoformIdeal C = comonoform_ideal(alg, *vi, pt);

  bool verified = false;
  if (cfg.check_gens > 0)
    verified = verify_ideal_generators(alg, C, cfg.check_gens);

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["label"] = ideal_label(alg, C);
    j["vertex"] = alg.quiver().vertex(C.vertex);
    j["prime"] = C.prime.display();
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : C.generators)
      j["generators"].push_back(alg.to_string(g));
    if (cfg.check_gens > 0) {
      j["generators_verified"] = verified;
      j["verification_degree"] = cfg.check_gens;
    }
    write_output(cfg, j.dump(2) + "\n");
  } else {
    std::string out;
    out += "ideal: " + ideal_label(alg, C) + "\n";
    out += "vertex: " + alg.quiver().vertex(C.vertex) + "\n";
    out += "prime: " + C.prime.display() + "\n";
    out += "generators:\n";
    for (const auto& g : C.generators) out += "  " + alg.to_string(g) + "\n";
    if (cfg.check_gens > 0) {
      out += "generators verified to degree " +
             std::to_string(cfg.check_gens) + ": ";
      out += verified ? "yes" : "NO";
      out += "\n";
    }
    write_output(cfg, out);
  }
  if (cfg.check_gens > 0 && !verified)
    throw UsageError("generator list failed verification to degree " +
                     std::to_string(cfg.check_gens));
  return 0;
}

int run_verify(const RunConfig& cfg) {
  LoadedInput in = load_input(read_file(cfg.input));
  require_admissible(in.algebra, in.relations);
  OracleGuards guards;
  guards.submodule_product = cfg.guard_submodules;
  guards.hom_space = cfg.guard_hom;
  FiniteOracle oracle(in.algebra, in.relations, guards);
  RootedOptions opts{cfg.mmax, cfg.degree_bound};
  OracleReport rep = verify_spectrum_description(oracle, cfg.dim_bound, opts);
  write_output(cfg, report_json(oracle, rep));
  return 0;
}

int run_triangular(RunConfig cfg) {
  if (cfg.format.empty()) cfg.format = "json";
  BaseRing A = parse_ring_descriptor(cfg.ring_a);
  BaseRing B = parse_ring_descriptor(cfg.ring_b);
  BimoduleDescriptor M = parse_bimodule_json(read_file(cfg.m_table));
  TriangularRing T = make_triangular(A, B, M);
  AtomSpectrum S = triangular_spectrum(T);
  write_output(cfg, emit(S, cfg.format, cfg.primes));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atom spectra of quiver algebras with admissible relations"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--degree-bound", cfg.degree_bound,
                    "rewriting completion degree cutoff")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mmax", cfg.mmax,
                    "largest arrow-ideal power tried for rootedness")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out, "write the output to a file");
  };
  auto add_primes = [&](CLI::App* cmd) {
    cmd->add_option("--primes", cfg.primes,
                    "prime sample for symbolic Spec Z")
        ->delimiter(',');
  };

  CLI::App* check = app.add_subcommand(
      "check", "admissibility and right-rootedness of a presentation");
  check->add_option("input", cfg.input, "DSL input file")->required();
  check->add_option("--format", cfg.format, "text or json (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  add_bounds(check);
  add_out(check);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "compute the atom spectrum of the input presentation");
  spectrum->add_option("input", cfg.input, "DSL input file")->required();
  spectrum->add_option("--format", cfg.format, "json or dot (default json)")
      ->check(CLI::IsMember({"json", "dot"}));
  add_bounds(spectrum);
  add_primes(spectrum);
  add_out(spectrum);

  CLI::App* ideal = app.add_subcommand(
      "ideal", "list the comonoform ideal generators at a vertex and prime");
  ideal->add_option("input", cfg.input, "DSL input file")->required();
  ideal->add_option("--vertex", cfg.vertex, "vertex name")->required();
  ideal->add_option("--prime", cfg.prime, "prime p, or 0 for the zero ideal")
      ->check(CLI::NonNegativeNumber);
  ideal->add_option("--format", cfg.format, "text or json (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  ideal->add_option("--check-gens", cfg.check_gens,
                    "verify the generator list up to this degree")
      ->check(CLI::NonNegativeNumber);
  add_out(ideal);

  CLI::App* verify = app.add_subcommand(
      "verify", "exhaustive small-instance verification over F_p");
  verify->add_option("input", cfg.input, "DSL input file")->required();
  verify->add_option("--dim-bound", cfg.dim_bound,
                     "total dimension bound for enumeration")
      ->check(CLI::PositiveNumber);
  verify->add_option("--guard-submodules", cfg.guard_submodules,
                     "submodule enumeration guard")
      ->check(CLI::PositiveNumber);
  verify->add_option("--guard-hom", cfg.guard_hom,
                     "hom space enumeration guard")
      ->check(CLI::PositiveNumber);
  add_bounds(verify);
  add_out(verify);

  CLI::App* triangular = app.add_subcommand(
      "triangular", "spectrum of a triangular matrix ring [[A,0],[M,B]]");
  triangular->add_option("--A", cfg.ring_a, "ring descriptor for A")
      ->required();
  triangular->add_option("--B", cfg.ring_b, "ring descriptor for B")
      ->required();
  triangular->add_option("--M", cfg.m_table, "bimodule table JSON file")
      ->required();
  triangular
      ->add_option("--format", cfg.format, "json or dot (default json)")
      ->check(CLI::IsMember({"json", "dot"}));
  add_primes(triangular);
  add_out(triangular);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    cfg.prime_given = ideal->count("--prime") > 0;
    if (app.got_subcommand(check)) return run_check(cfg);
    if (app.got_subcommand(spectrum)) return run_spectrum(cfg);
    if (app.got_subcommand(ideal)) return run_ideal(cfg);
    if (app.got_subcommand(verify)) return run_verify(cfg);
    if (app.got_subcommand(triangular)) return run_triangular(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
