#include <prelie/forest.hpp>
#include <prelie/freeprelie.hpp>
#include <prelie/io.hpp>
#include <prelie/nc.hpp>
#include <prelie/trees.hpp>
#include <prelie/verify.hpp>
#include <prelie/words.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kTreeCap = 12;
constexpr int kForestCap = 8;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_cap(int value, int cap, bool uncapped, const std::string& what) {
  if (value > cap && !uncapped)
    throw InputError(what + " " + std::to_string(value) + " exceeds the cap of " + std::to_string(cap) +
                     "; pass --unsafe-uncapped to override");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << text;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

prelie::CoproductFlavor parse_flavor(const std::string& s) {
  if (s == "reduced") return prelie::CoproductFlavor::reduced;
  if (s == "full") return prelie::CoproductFlavor::full;
  if (s == "irr") return prelie::CoproductFlavor::irr;
  throw InputError("unknown flavor '" + s + "'");
}

/// "grade:position" selects the 0-based position in the enumeration of that grade.
std::optional<std::pair<int, std::size_t>> split_ordinal(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const int grade = std::stoi(s.substr(0, colon), &used);
    if (used != colon) throw InputError("bad index '" + s + "'");
    const auto rest = s.substr(colon + 1);
    const auto position = std::stoul(rest, &used);
    if (used != rest.size()) throw InputError("bad index '" + s + "'");
    return std::pair{grade, static_cast<std::size_t>(position)};
  } catch (const std::logic_error&) {
    throw InputError("bad index '" + s + "'");
  }
}

std::string distinct_letters(const std::string& s) {
  std::string out;
  for (char c : s)
    if (out.find(c) == std::string::npos) out.push_back(c);
  return out;
}

template <class T>
const T& pick(const std::vector<T>& items, std::size_t position, const std::string& text) {
  if (position >= items.size())
    throw InputError("index '" + text + "' is out of range (" + std::to_string(items.size()) + " elements)");
  return items[position];
}

prelie::RootedTree resolve_tree(const std::string& text) {
  if (auto ord = split_ordinal(text)) {
    if (ord->first < 1) throw InputError("bad index '" + text + "'");
    return pick(prelie::enumerate_trees(ord->first), ord->second, text);
  }
  return prelie::parse_tree(text);
}

prelie::Word resolve_word(const std::string& text, const std::string& alphabet) {
  if (auto ord = split_ordinal(text)) {
    if (ord->first < 1) throw InputError("bad index '" + text + "'");
    return pick(prelie::enumerate_words(alphabet, ord->first), ord->second, text);
  }
  prelie::Word w(text);
  if (w.letters().find_first_not_of(alphabet) != std::string::npos)
    throw InputError("word '" + text + "' uses letters outside the alphabet '" + alphabet + "'");
  return w;
}

template <class Engine, class Index>
int dump_forest(const Engine& engine, const Index& i, int k, prelie::CoproductFlavor flavor, bool check,
                const std::string& output) {
  std::ostringstream os;
  for (const auto& term : engine.terms(i, k, flavor)) os << prelie::io::forest_term_json(term).dump() << "\n";
  write_output(os.str(), output);
  if (check && engine.formula(i, k, flavor) != prelie::direct_iterated_coproduct(i, k, flavor, engine.basis())) {
    std::cerr << "forest formula disagrees with the directly iterated coproduct\n";
    return kExitVerification;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pre-Lie, Hopf-algebraic and cumulant computations"};
  app.require_subcommand(1);

  int trees_order = 6;
  std::string trees_format = "json";
  std::string trees_output;
  bool trees_uncapped = false;
  auto* trees = app.add_subcommand("trees", "Tree statistics: sigma, factorial, linearizations, CM, omega");
  trees->add_option("--max-order", trees_order, "Largest tree size")->check(CLI::PositiveNumber);
  trees->add_option("--format", trees_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  trees->add_option("--output", trees_output, "Output file (default stdout)");
  trees->add_flag("--unsafe-uncapped", trees_uncapped, "Allow --max-order above 12");

  std::string series_which = "magnus";
  int series_order = 6;
  std::string series_method = "closed";
  bool series_check = false;
  std::string series_output;
  auto* series = app.add_subcommand("series", "exp or Magnus series of the single-vertex tree");
  series->add_option("--which", series_which, "Series")->check(CLI::IsMember({"exp", "magnus"}));
  series->add_option("--order", series_order, "Truncation order")->check(CLI::PositiveNumber);
  series->add_option("--method", series_method, "closed | fixed-point | sol1 (sol1 is magnus only)")
      ->check(CLI::IsMember({"closed", "fixed-point", "sol1"}));
  series->add_flag("--check", series_check, "Compute every method and require agreement");
  series->add_option("--output", series_output, "Output file (default stdout)");

  std::string cum_from, cum_to, cum_input, cum_output, cum_route = "direct";
  auto* cumulants = app.add_subcommand("cumulants", "Convert a moment or cumulant table");
  cumulants->add_option("--from", cum_from, "Source brand (must match the table)");
  cumulants->add_option("--to", cum_to, "Target brand")->required();
  cumulants->add_option("--input", cum_input, "Input table JSON (default stdin)");
  cumulants->add_option("--output", cum_output, "Output file (default stdout)");
  cumulants->add_option("--route", cum_route, "Conversion route")->check(CLI::IsMember({"direct", "via-moments"}));

  prelie::verify::Config verify_config;
  std::string verify_suite = "all";
  std::string verify_output;
  auto* verify = app.add_subcommand("verify", "Run the identity checks");
  verify->add_option("--suite", verify_suite, "trees | hopf | forest | magnus | words | cumulants | all");
  verify->add_option("--max-order,--order", verify_config.tree_order, "Largest tree size")
      ->check(CLI::PositiveNumber);
  verify->add_option("--max-k", verify_config.max_k, "Largest tensor arity for forest formulas")
      ->check(CLI::Range(2, 8));
  verify->add_option("--max-len", verify_config.word_length, "Largest word length")->check(CLI::PositiveNumber);
  verify->add_option("--cumulant-len", verify_config.cumulant_length, "Cumulant table length")
      ->check(CLI::PositiveNumber);
  verify->add_option("--alphabet", verify_config.alphabet, "Letters for word checks");
  verify->add_option("--seed", verify_config.seed, "Seed for random cumulant tables");
  verify->add_option("--output", verify_output, "Report file (default stdout)");
  bool verify_uncapped = false;
  verify->add_flag("--unsafe-uncapped", verify_uncapped, "Allow orders above the caps");

  std::string forest_basis = "ck";
  std::string forest_index;
  int forest_k = 2;
  std::string forest_flavor = "reduced";
  std::string forest_alphabet;
  std::string forest_output;
  bool forest_check = false;
  bool forest_uncapped = false;
  auto* forest = app.add_subcommand("forest", "Dump the forest-formula terms of an iterated coproduct");
  forest->add_option("--basis", forest_basis, "ck | words")->check(CLI::IsMember({"ck", "words"}));
  forest->add_option("--index", forest_index, "Bracket tree, word, or grade:position")->required();
  forest->add_option("--k", forest_k, "Tensor arity")->check(CLI::Range(2, 16));
  forest->add_option("--flavor", forest_flavor, "reduced | full | irr")
      ->check(CLI::IsMember({"reduced", "full", "irr"}));
  forest->add_option("--alphabet", forest_alphabet, "Alphabet for the word basis (default: letters of the index, or ab)");
  forest->add_option("--output", forest_output, "Output file (default stdout)");
  forest->add_flag("--check", forest_check, "Also compare with the directly iterated coproduct");
  forest->add_flag("--unsafe-uncapped", forest_uncapped, "Allow index grades above 8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*trees) {
      require_cap(trees_order, kTreeCap, trees_uncapped, "--max-order");
      std::vector<prelie::io::TreeRow> rows;
      for (const auto& t : prelie::enumerate_trees_up_to(trees_order)) rows.push_back(prelie::io::tree_row(t));
      write_output(trees_format == "csv" ? prelie::io::tree_rows_csv(rows)
                                         : prelie::io::tree_rows_json(rows).dump(2) + "\n",
                   trees_output);
      return kExitOk;
    }

    if (*series) {
      require_cap(series_order, kTreeCap, false, "--order");
      const bool exp = series_which == "exp";
      if (exp && series_method == "sol1") throw InputError("method sol1 only applies to --which magnus");
      auto compute = [&](const std::string& method) {
        if (exp) return method == "closed" ? prelie::exp_closed_form(series_order) : prelie::exp_of_generator(series_order);
        if (method == "closed") return prelie::magnus_closed_form(series_order);
        if (method == "sol1") return prelie::magnus_via_sol1(series_order);
        return prelie::magnus_of_generator(series_order);
      };
      const auto result = compute(series_method);
      if (series_check) {
        std::vector<std::string> methods{"closed", "fixed-point"};
        if (!exp) methods.push_back("sol1");
        for (const auto& m : methods) {
          const auto other = compute(m);
          for (const auto& t : prelie::enumerate_trees_up_to(series_order))
            if (other.coefficient(t) != result.coefficient(t)) {
              std::cerr << "methods disagree at " << t.key() << ": " << series_method << " gives "
                        << result.coefficient(t) << ", " << m << " gives " << other.coefficient(t) << "\n";
              return kExitVerification;
            }
        }
      }
      write_output(prelie::io::series_json(result).dump(2) + "\n", series_output);
      return kExitOk;
    }

    if (*cumulants) {
      const auto table = prelie::io::parse_cumulant_table(read_input(cum_input));
      if (!cum_from.empty() && prelie::parse_brand(cum_from) != table.brand())
        throw InputError("--from " + cum_from + " does not match the table brand " + prelie::to_string(table.brand()));
      const auto route = cum_route == "direct" ? prelie::Route::direct : prelie::Route::via_moments;
      const auto result = prelie::convert(table, prelie::parse_brand(cum_to), route);
      write_output(prelie::io::cumulant_table_json(result).dump(2) + "\n", cum_output);
      return kExitOk;
    }

    if (*verify) {
      require_cap(verify_config.tree_order, kForestCap, verify_uncapped, "--max-order");
      require_cap(verify_config.word_length, kForestCap, verify_uncapped, "--max-len");
      require_cap(verify_config.cumulant_length, kForestCap, verify_uncapped, "--cumulant-len");
      if (verify_config.alphabet.empty()) throw InputError("--alphabet must not be empty");
      const auto checks = prelie::verify::run_suite(verify_suite, verify_config);
      const auto report = prelie::verify::report_json(checks);
      write_output(report.dump(2) + "\n", verify_output);
      return report.at("passed").get<bool>() ? kExitOk : kExitVerification;
    }

    if (*forest) {
      const auto flavor = parse_flavor(forest_flavor);
      if (forest_basis == "ck") {
        const auto t = resolve_tree(forest_index);
        require_cap(t.size(), kForestCap, forest_uncapped, "index grade");
        return dump_forest(prelie::ForestEngine<prelie::CKBasis>{prelie::CKBasis{}}, t, forest_k, flavor,
                           forest_check, forest_output);
      }
      if (forest_alphabet.empty()) forest_alphabet = split_ordinal(forest_index) ? "ab" : distinct_letters(forest_index);
      const auto w = resolve_word(forest_index, forest_alphabet);
      require_cap(w.size(), kForestCap, forest_uncapped, "index grade");
      return dump_forest(prelie::ForestEngine<prelie::WordBasis>{prelie::WordBasis{forest_alphabet}}, w, forest_k,
                         flavor, forest_check, forest_output);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
