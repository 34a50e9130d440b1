#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncfem/mesh.hpp"
#include "ncfem/study.hpp"

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// levels must be strictly increasing and of the form 4*2^k unless overridden
void validate_levels(const std::vector<int>& levels, bool allow_any) {
  if (levels.empty()) throw CLI::ValidationError("--levels", "needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0 && levels[i] <= levels[i - 1])
      throw CLI::ValidationError("--levels", "levels must be strictly increasing");
    if (!allow_any && (levels[i] < 4 || !power_of_two(levels[i])))
      throw CLI::ValidationError(
          "--levels", "level " + std::to_string(levels[i]) +
                          " is not 4*2^k; pass --allow-any-n to override");
    if (allow_any && levels[i] < 1)
      throw CLI::ValidationError("--levels", "levels must be positive");
  }
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  os << text;
}

std::string render_report(const ncfem::IdentityReport& report) {
  std::string out;
  char line[256];
  for (const ncfem::IdentityCheck& item : report.items) {
    std::snprintf(line, sizeof line, "[%s] %-62s value %.6E  bound %.6E\n",
                  item.pass ? "PASS" : "FAIL", item.name.c_str(), item.magnitude,
                  item.threshold);
    out += line;
  }
  if (report.all_pass) {
    out += "all identities passed\n";
  } else {
    int failed = 0;
    for (const ncfem::IdentityCheck& item : report.items)
      if (!item.pass) ++failed;
    out += std::to_string(failed) + " identity check(s) failed\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonconforming FEM studies: membrane and plate benchmarks, "
               "identity verification, mesh dumps"};
  app.require_subcommand(1);

  std::vector<int> levels{4, 8, 16, 32, 64, 128};
  std::string format = "markdown";
  std::string out_path;
  double tol = 1e-12;
  bool quick = false;
  bool allow_any = false;
  unsigned seed = 42;
  std::string domain = "square";
  int dump_n = 4;

  CLI::App* poisson = app.add_subcommand("poisson", "membrane convergence study");
  CLI::App* plate = app.add_subcommand("plate", "plate-bending convergence study");
  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  CLI::App* dump = app.add_subcommand("mesh-dump", "print a mesh in a plain format");

  for (CLI::App* cmd : {poisson, plate, verify}) {
    cmd->add_option("--levels", levels, "mesh levels n (cells per direction)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--tol", tol, "linear solver tolerance")->capture_default_str();
    cmd->add_option("--out", out_path, "output file (default: stdout)");
    cmd->add_flag("--quick", quick, "drop levels above n=32");
    cmd->add_flag("--allow-any-n", allow_any, "accept arbitrary positive levels");
  }
  for (CLI::App* cmd : {poisson, plate}) {
    cmd->add_option("--format", format, "table format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
  }
  verify->add_option("--seed", seed, "seed for randomized property checks")
      ->capture_default_str();
  dump->add_option("--domain", domain, "mesh domain")
      ->check(CLI::IsMember({"square", "parallelogram"}))
      ->capture_default_str();
  dump->add_option("--n", dump_n, "cells per direction")->capture_default_str();
  dump->add_option("--out", out_path, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dump->parsed()) {
      const ncfem::Domain dom = domain == "square" ? ncfem::Domain::square
                                                   : ncfem::Domain::parallelogram;
      write_out(ncfem::dump_mesh(ncfem::build_domain_mesh(dom, dump_n)), out_path);
      return 0;
    }

    validate_levels(levels, allow_any);
    if (quick) {
      std::vector<int> kept;
      for (int n : levels)
        if (n <= 32) kept.push_back(n);
      levels = kept;
      if (levels.empty()) throw std::runtime_error("--quick removed every level");
    }
    ncfem::StudyOptions options;
    options.solver_tol = tol;
    const ncfem::TableFormat tf =
        format == "csv" ? ncfem::TableFormat::csv : ncfem::TableFormat::markdown;

    if (poisson->parsed()) {
      write_out(ncfem::emit_table(ncfem::run_poisson_study(levels, options), tf),
                out_path);
      return 0;
    }
    if (plate->parsed()) {
      write_out(ncfem::emit_table(ncfem::run_plate_study(levels, options), tf),
                out_path);
      return 0;
    }
    const ncfem::IdentityReport report =
        ncfem::run_identity_suite(levels, seed, options);
    write_out(render_report(report), out_path);
    return report.all_pass ? 0 : 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
