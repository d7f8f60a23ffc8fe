// Command line driver: validate tables, query superclasses, refine
// partitions, enumerate theories, inspect automorphisms, print the
// refinement lattice and the step-count histogram.
//
// Exit codes: 0 success, 1 domain failure (invalid table, not a
// superclass, verification failure), 2 usage or IO error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sct/character_table.hpp"
#include "sct/enumerate.hpp"
#include "sct/table_automorphisms.hpp"
#include "sct/theory.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct CommonArgs {
  std::string table_path;
  std::string format = "text";
  bool no_validate = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_validate_flag = true) {
  cmd->add_option("table", args.table_path, "character table JSON file")->required();
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  if (with_validate_flag) {
    cmd->add_flag("--no-validate", args.no_validate, "skip the exact table validation");
  }
}

// Loads and (by default) validates; on failure prints to stderr and returns
// the exit code to use instead.
std::optional<sct::CharacterTable> load_table(const CommonArgs& args, int& exit_code) {
  std::optional<sct::CharacterTable> table;
  try {
    table.emplace(sct::CharacterTable::load(args.table_path));
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    exit_code = kUsageError;
    return std::nullopt;
  } catch (const sct::TableError& e) {
    std::cerr << "error: " << args.table_path << ": " << e.what() << "\n";
    exit_code = kDomainError;
    return std::nullopt;
  }
  if (!args.no_validate) {
    const sct::ValidationReport report = table->validate();
    if (!report.ok()) {
      std::cerr << "error: " << args.table_path << " is not a valid character table:\n";
      for (const std::string& f : report.failures) std::cerr << "  - " << f << "\n";
      exit_code = kDomainError;
      return std::nullopt;
    }
  }
  return table;
}

json partition_json(const sct::Partition& p) {
  json blocks = json::array();
  for (const sct::IndexSet& b : p.blocks()) {
    json block = json::array();
    b.for_each([&](unsigned i) { block.push_back(i); });
    blocks.push_back(std::move(block));
  }
  return blocks;
}

json theory_json(const sct::SuperTheory& theory) {
  return json{{"chars", partition_json(theory.chars)}, {"classes", partition_json(theory.classes)}};
}

json integer_json(const sct::Integer& z) {
  if (z.fits_ulong_p()) return json(z.get_ui());
  return json(sct::to_string(z));
}

void print_theory_line(std::ostream& out, const std::string& label,
                       const sct::SuperTheory& theory) {
  out << label << " (blocks=" << theory.classes.block_count()
      << "): chars=" << theory.chars.str() << " classes=" << theory.classes.str() << "\n";
}

json table_header_json(const sct::CharacterTable& t) {
  return json{{"name", t.name()},
              {"k", t.k()},
              {"order", integer_json(t.order())},
              {"conductor", t.conductor()}};
}

void print_table_header(std::ostream& out, const sct::CharacterTable& t) {
  out << "table: " << t.name() << "\n"
      << "k: " << t.k() << "\n"
      << "order: " << sct::to_string(t.order()) << "\n"
      << "conductor: " << t.conductor() << "\n";
}

int run_validate(const CommonArgs& args) {
  std::optional<sct::CharacterTable> table;
  try {
    table.emplace(sct::CharacterTable::load(args.table_path));
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const sct::TableError& e) {
    if (args.format == "json") {
      std::cout << json{{"valid", false}, {"failures", {e.what()}}}.dump(2) << "\n";
    } else {
      std::cout << "validation: parse failed\n- " << e.what() << "\n";
    }
    return kDomainError;
  }
  const sct::ValidationReport report = table->validate();
  if (args.format == "json") {
    json doc = table_header_json(*table);
    doc["valid"] = report.ok();
    doc["failures"] = report.failures;
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table_header(std::cout, *table);
    if (report.ok()) {
      std::cout << "validation: ok\n";
    } else {
      std::cout << "validation: " << report.failures.size() << " failures\n";
      for (const std::string& f : report.failures) std::cout << "- " << f << "\n";
    }
  }
  return report.ok() ? kOk : kDomainError;
}

int run_superclass(const CommonArgs& args, const std::string& classes_csv) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;

  sct::IndexSet s(table->k());
  try {
    std::size_t pos = 0;
    while (pos < classes_csv.size()) {
      std::size_t next = classes_csv.find(',', pos);
      if (next == std::string::npos) next = classes_csv.size();
      const unsigned long j = std::stoul(classes_csv.substr(pos, next - pos));
      if (j >= table->k()) throw std::out_of_range("class index");
      s.set(static_cast<unsigned>(j));
      pos = next + 1;
    }
    if (s.empty()) throw std::invalid_argument("empty class list");
  } catch (const std::exception&) {
    std::cerr << "error: --classes expects a comma-separated list of class indices below "
              << table->k() << "\n";
    return kUsageError;
  }

  std::optional<sct::SuperTheory> theory;
  try {
    theory = sct::coarsest_theory_with_superclass(*table, s);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (args.format == "json") {
    json doc = table_header_json(*table);
    doc["classes"] = json::parse(s.str());
    doc["superclass"] = theory.has_value();
    if (theory) doc["theory"] = theory_json(*theory);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "classes: " << s.str() << "\n";
    std::cout << "superclass: " << (theory ? "yes" : "no") << "\n";
    if (theory) print_theory_line(std::cout, "theory", *theory);
  }
  return theory ? kOk : kDomainError;
}

int run_refine(const CommonArgs& args, const std::string& classes_text,
               const std::string& chars_text) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;
  if (classes_text.empty() == chars_text.empty()) {
    std::cerr << "error: refine needs exactly one of --classes or --chars\n";
    return kUsageError;
  }

  sct::SuperTheory theory;
  try {
    if (!classes_text.empty()) {
      theory = sct::refine_classes_to_theory(
          *table, sct::Partition::parse(classes_text, table->k()));
    } else {
      theory = sct::refine_chars_to_theory(*table, sct::Partition::parse(chars_text, table->k()));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (args.format == "json") {
    json doc = table_header_json(*table);
    doc["theory"] = theory_json(theory);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_theory_line(std::cout, "theory", theory);
  }
  return kOk;
}

int run_all(const CommonArgs& args, unsigned workers, bool no_auts, bool verify, bool progress) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;

  sct::EnumerationOptions opt;
  opt.use_automorphisms = !no_auts;
  opt.workers = workers;
  const auto started = std::chrono::steady_clock::now();
  if (progress) {
    opt.progress = [started](std::uint64_t done, std::uint64_t total) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      std::fprintf(stderr, "\rscanned %llu/%llu subsets (%.0f/s)",
                   static_cast<unsigned long long>(done), static_cast<unsigned long long>(total),
                   secs > 0 ? static_cast<double>(done) / secs : 0.0);
      if (done == total) std::fprintf(stderr, "\n");
    };
  }

  const sct::EnumerationResult result = sct::all_theories(*table, opt);

  if (verify) {
    std::size_t failures = 0;
    const std::vector<sct::TableAutomorphism> auts = sct::automorphism_group(*table);
    for (const sct::SuperTheory& th : result.theories) {
      if (!sct::is_supercharacter_theory(*table, th.chars, th.classes)) ++failures;
      failures += sct::verify_schur_closure(*table, th).failures.size();
      failures += sct::verify_supercharacter_products(*table, th).failures.size();
      for (const sct::TableAutomorphism& a : auts) {
        const sct::SuperTheory image = sct::apply_automorphism(a, th);
        if (std::find(result.theories.begin(), result.theories.end(), image) ==
            result.theories.end()) {
          ++failures;
        }
      }
    }
    if (failures != 0) {
      std::cerr << "verification failed: " << failures << " issues\n";
      return kDomainError;
    }
    std::cerr << "verification: ok (" << result.theories.size() << " theories)\n";
  }

  if (args.format == "json") {
    json doc = table_header_json(*table);
    doc["count"] = result.theories.size();
    json list = json::array();
    for (const sct::SuperTheory& th : result.theories) list.push_back(theory_json(th));
    doc["theories"] = std::move(list);
    doc["stats"] = json{{"subsets_scanned", result.stats.subsets_scanned},
                        {"step1_theories", result.stats.step1_theories},
                        {"meets_computed", result.stats.meets_computed}};
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table_header(std::cout, *table);
    std::cout << "theories: " << result.theories.size() << "\n";
    for (std::size_t i = 0; i < result.theories.size(); ++i) {
      print_theory_line(std::cout, "theory " + std::to_string(i + 1), result.theories[i]);
    }
    std::cout << "stats: subsets=" << result.stats.subsets_scanned
              << " step1=" << result.stats.step1_theories
              << " meets=" << result.stats.meets_computed << "\n";
  }
  std::cerr << "wall time: " << result.stats.wall_seconds << "s\n";
  return kOk;
}

int run_auts(const CommonArgs& args, bool power_maps) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;

  const std::vector<sct::TableAutomorphism> group =
      sct::automorphism_group(*table, power_maps);
  const auto invariants = sct::abelian_invariants(group);
  std::string structure;
  if (invariants) {
    if (invariants->empty()) {
      structure = "C1";
    } else {
      for (std::size_t i = 0; i < invariants->size(); ++i) {
        if (i) structure += " x ";
        structure += "C" + std::to_string((*invariants)[i]);
      }
    }
  }

  if (args.format == "json") {
    json doc = table_header_json(*table);
    json list = json::array();
    for (const sct::TableAutomorphism& a : group) {
      list.push_back(json{{"rows", a.row_perm}, {"cols", a.col_perm}});
    }
    doc["automorphisms"] = std::move(list);
    doc["group_order"] = group.size();
    if (invariants) doc["abelian_structure"] = structure;
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table_header(std::cout, *table);
    std::cout << "automorphisms: " << group.size() << "\n";
    for (std::size_t i = 0; i < group.size(); ++i) {
      std::cout << "aut " << (i + 1) << ": rows=[";
      for (std::size_t j = 0; j < group[i].row_perm.size(); ++j) {
        std::cout << (j ? "," : "") << group[i].row_perm[j];
      }
      std::cout << "] cols=[";
      for (std::size_t j = 0; j < group[i].col_perm.size(); ++j) {
        std::cout << (j ? "," : "") << group[i].col_perm[j];
      }
      std::cout << "]\n";
    }
    std::cout << "group order: " << group.size() << "\n";
    if (invariants) std::cout << "structure: " << structure << "\n";
  }
  return kOk;
}

int run_lattice(const CommonArgs& args) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;

  const sct::EnumerationResult result = sct::all_theories(*table);
  const auto edges = sct::refinement_edges(result.theories);

  if (args.format == "json") {
    json doc = table_header_json(*table);
    json list = json::array();
    for (const sct::SuperTheory& th : result.theories) list.push_back(theory_json(th));
    doc["theories"] = std::move(list);
    json edge_list = json::array();
    for (const auto& [a, b] : edges) edge_list.push_back(json::array({a, b}));
    doc["edges"] = std::move(edge_list);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table_header(std::cout, *table);
    std::cout << "theories: " << result.theories.size() << "\n";
    for (std::size_t i = 0; i < result.theories.size(); ++i) {
      print_theory_line(std::cout, "theory " + std::to_string(i + 1), result.theories[i]);
    }
    std::cout << "edges (a -> b when theory a directly refines theory b): " << edges.size()
              << "\n";
    for (const auto& [a, b] : edges) {
      std::cout << "edge: " << (a + 1) << " -> " << (b + 1) << "\n";
    }
  }
  return kOk;
}

int run_histogram(const CommonArgs& args, unsigned max_k) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;

  std::map<unsigned, std::uint64_t> histogram;
  try {
    histogram = sct::refinement_step_histogram(*table, max_k);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  std::uint64_t total = 0;
  for (const auto& [steps, count] : histogram) total += count;

  if (args.format == "json") {
    json doc = table_header_json(*table);
    doc["partitions"] = total;
    json h = json::object();
    for (const auto& [steps, count] : histogram) h[std::to_string(steps)] = count;
    doc["histogram"] = std::move(h);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table_header(std::cout, *table);
    std::cout << "partitions: " << total << "\n";
    for (const auto& [steps, count] : histogram) {
      std::cout << "steps " << steps << ": " << count << "\n";
    }
  }
  return kOk;
}

int run_oracle(const CommonArgs& args, unsigned max_k) {
  int code = kOk;
  const auto table = load_table(args, code);
  if (!table) return code;

  std::vector<sct::SuperTheory> theories;
  try {
    theories = sct::brute_force_all_theories(*table, max_k);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (args.format == "json") {
    json doc = table_header_json(*table);
    doc["count"] = theories.size();
    json list = json::array();
    for (const sct::SuperTheory& th : theories) list.push_back(theory_json(th));
    doc["theories"] = std::move(list);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table_header(std::cout, *table);
    std::cout << "theories: " << theories.size() << "\n";
    for (std::size_t i = 0; i < theories.size(); ++i) {
      print_theory_line(std::cout, "theory " + std::to_string(i + 1), theories[i]);
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supercharacter theories on character tables"};
  app.require_subcommand(1);

  CommonArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "check the exact table invariants");
  add_common(validate, validate_args, false);

  CommonArgs superclass_args;
  std::string superclass_csv;
  CLI::App* superclass =
      app.add_subcommand("superclass", "decide whether a union of classes is a superclass");
  add_common(superclass, superclass_args);
  superclass->add_option("--classes", superclass_csv, "comma-separated class indices")
      ->required();

  CommonArgs refine_args;
  std::string refine_classes, refine_chars;
  CLI::App* refine =
      app.add_subcommand("refine", "coarsest theory refining a partition");
  add_common(refine, refine_args);
  refine->add_option("--classes", refine_classes, "class partition, e.g. [[0],[1,2]]");
  refine->add_option("--chars", refine_chars, "character partition, e.g. [[0],[1,2]]");

  CommonArgs all_args;
  unsigned workers = 1;
  bool no_auts = false, verify = false, progress = false;
  CLI::App* all = app.add_subcommand("all", "enumerate every supercharacter theory");
  add_common(all, all_args);
  all->add_option("--workers", workers, "worker threads for the subset scan")
      ->check(CLI::Range(1u, 256u));
  all->add_flag("--no-auts", no_auts, "disable the automorphism shortcut");
  all->add_flag("--verify", verify, "run the closure verifications on every theory");
  all->add_flag("--progress", progress, "report scan progress on stderr");

  CommonArgs auts_args;
  bool power_maps = false;
  CLI::App* auts = app.add_subcommand("auts", "table automorphism group");
  add_common(auts, auts_args);
  auts->add_flag("--power-maps", power_maps,
                 "keep only automorphisms preserving the stored power maps");

  CommonArgs lattice_args;
  CLI::App* lattice = app.add_subcommand("lattice", "refinement order among all theories");
  add_common(lattice, lattice_args);

  CommonArgs histogram_args;
  unsigned histogram_max_k = 12;
  CLI::App* histogram =
      app.add_subcommand("histogram", "refinement step counts over all class partitions");
  add_common(histogram, histogram_args);
  histogram->add_option("--max-k", histogram_max_k, "refuse tables with more classes");

  CommonArgs oracle_args;
  unsigned oracle_max_k = 8;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force enumeration for small tables");
  add_common(oracle, oracle_args);
  oracle->add_option("--max-k", oracle_max_k, "refuse tables with more classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (validate->parsed()) return run_validate(validate_args);
    if (superclass->parsed()) return run_superclass(superclass_args, superclass_csv);
    if (refine->parsed()) return run_refine(refine_args, refine_classes, refine_chars);
    if (all->parsed()) return run_all(all_args, workers, no_auts, verify, progress);
    if (auts->parsed()) return run_auts(auts_args, power_maps);
    if (lattice->parsed()) return run_lattice(lattice_args);
    if (histogram->parsed()) return run_histogram(histogram_args, histogram_max_k);
    if (oracle->parsed()) return run_oracle(oracle_args, oracle_max_k);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}
