// epiworks: command-line workbench for finite epigroups and unary-semigroup
// identities.  Subcommands cover model checking, pseudoinversion reports,
// word normalization, identity classification, deduction checking, and the
// structure catalog.  Every command has a --json twin of its text output.
//
// Exit codes: 0 success, 1 property failure (a witness was found or a
// deduction is invalid), 2 input error, 3 resource guard tripped.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epiworks/epiworks.hpp"

namespace ew = epiworks;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

struct GlobalOpts {
  bool as_json = false;
  std::uint64_t bound = ew::kDefaultAssignmentBound;
};

void emit(const GlobalOpts& g, const std::string& text, const json& j) {
  if (g.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

ew::RawTable load_table(const std::string& path) {
  return ew::parse_table(ew::read_text_file(path));
}

// Declared unary when the table carries one, derived pseudoinversion
// otherwise.
ew::FiniteUnarySemigroup model_for(const ew::RawTable& raw) {
  if (raw.unary) {
    return ew::validate_table(raw);
  }
  return ew::derive_epigroup(raw).epigroup.table();
}

// An argument containing '=' is an inline identity; anything else names a
// file with one identity per line.
ew::IdentitySystem load_system_arg(const std::string& arg) {
  if (arg.find('=') != std::string::npos) {
    return ew::parse_system(arg);
  }
  return ew::parse_system_file(arg);
}

std::string render_assignment(const ew::FiniteUnarySemigroup& s,
                              const ew::Assignment& a) {
  std::string out;
  for (const auto& [letter, value] : a) {
    if (!out.empty()) out += ' ';
    out += letter.name() + ":=" + s.name(value);
  }
  return out;
}

json json_assignment(const ew::FiniteUnarySemigroup& s,
                     const ew::Assignment& a) {
  json j = json::object();
  for (const auto& [letter, value] : a) {
    j[letter.name()] = s.name(value);
  }
  return j;
}

json json_trace(const ew::RewriteTrace& trace) {
  json arr = json::array();
  for (const ew::RewriteStep& step : trace) {
    arr.push_back({{"before", ew::render_word(step.before)},
                   {"after", ew::render_word(step.after)},
                   {"rule", step.rule}});
  }
  return arr;
}

int cmd_check(const GlobalOpts& g, const std::string& table_path,
              const std::string& ids_arg) {
  ew::FiniteUnarySemigroup s = model_for(load_table(table_path));
  ew::IdentitySystem sys = load_system_arg(ids_arg);
  ew::SystemSatisfaction r = ew::satisfies_system(s, sys, g.bound);
  json j{{"schema", 1}, {"command", "check"}, {"holds", r.holds}};
  std::string text;
  if (r.holds) {
    text = "holds\n";
  } else {
    const ew::Identity& bad = sys.identities[*r.failed_index];
    text = "fails identity " + std::to_string(*r.failed_index) + ": " +
           ew::render_identity(bad) + "\n";
    text += "witness: " + render_assignment(s, r.witness->assignment) +
            " lhs=" + s.name(r.witness->lhs_value) +
            " rhs=" + s.name(r.witness->rhs_value) + "\n";
    j["failed_identity"] = *r.failed_index;
    j["identity"] = ew::render_identity(bad);
    j["witness"] = {{"assignment", json_assignment(s, r.witness->assignment)},
                    {"lhs", s.name(r.witness->lhs_value)},
                    {"rhs", s.name(r.witness->rhs_value)}};
  }
  emit(g, text, j);
  return r.holds ? kExitOk : kExitPropertyFailure;
}

int cmd_pinv(const GlobalOpts& g, const std::string& table_path) {
  ew::Derivation d = ew::derive_epigroup(load_table(table_path));
  const ew::FiniteEpigroup& e = d.epigroup;
  std::string text;
  json elems = json::array();
  for (int x = 0; x < e.size(); ++x) {
    const ew::CyclicData& c = e.cyclic(x);
    text += e.name(x) + ": omega=" + e.name(c.omega) +
            " pinv=" + e.name(c.pseudoinverse) +
            " index=" + std::to_string(c.index) +
            " period=" + std::to_string(c.period) + "\n";
    elems.push_back({{"name", e.name(x)},
                     {"omega", e.name(c.omega)},
                     {"pinv", e.name(c.pseudoinverse)},
                     {"index", c.index},
                     {"period", c.period}});
  }
  json mm = json::array();
  for (const ew::UnaryMismatch& m : d.mismatches) {
    text += "declared unary differs at " + e.name(m.element) + ": declared " +
            e.name(m.declared) + ", derived " + e.name(m.derived) + "\n";
    mm.push_back({{"element", e.name(m.element)},
                  {"declared", e.name(m.declared)},
                  {"derived", e.name(m.derived)}});
  }
  json j{{"schema", 1},
         {"command", "pinv"},
         {"elements", elems},
         {"mismatches", mm}};
  emit(g, text, j);
  return kExitOk;
}

int cmd_profile(const GlobalOpts& g, const std::string& table_path) {
  ew::FiniteEpigroup e = ew::derive_epigroup(load_table(table_path)).epigroup;
  ew::EpigroupProfile p = ew::epigroup_profile(e);
  ew::NilProfile np = ew::nil_profile(e);
  ew::RightIdealCheck ri = ew::gr_right_ideal(e);

  std::string group_names;
  json group = json::array();
  for (int x : p.group_elements) {
    if (!group_names.empty()) group_names += ' ';
    group_names += e.name(x);
    group.push_back(e.name(x));
  }
  std::string text = "size: " + std::to_string(e.size()) + "\n";
  text += "group elements: " + group_names + "\n";
  text += "index: " + std::to_string(p.index) + "\n";
  text += std::string("completely regular: ") +
          (p.completely_regular ? "yes" : "no") + "\n";
  text += np.is_nil ? "nil: yes (degree " + std::to_string(*np.degree) + ")\n"
                    : "nil: no\n";
  if (ri.holds) {
    text += "gr right ideal: yes\n";
  } else {
    text += "gr right ideal: no (witness " + e.name(ri.witness->first) + " " +
            e.name(ri.witness->second) + ")\n";
  }

  json j{{"schema", 1},
         {"command", "profile"},
         {"size", e.size()},
         {"group_elements", group},
         {"index", p.index},
         {"completely_regular", p.completely_regular},
         {"nil", np.is_nil},
         {"right_ideal", ri.holds}};
  if (np.is_nil) j["nil_degree"] = *np.degree;
  if (!ri.holds) {
    j["right_ideal_witness"] = {e.name(ri.witness->first),
                                e.name(ri.witness->second)};
  }
  emit(g, text, j);
  return kExitOk;
}

int cmd_degree(const GlobalOpts& g, const std::string& table_path, int max_n) {
  ew::FiniteEpigroup e = ew::derive_epigroup(load_table(table_path)).epigroup;
  std::optional<ew::DegreeWitness> w =
      ew::find_degree_witness(e, max_n, g.bound);
  json j{{"schema", 1},
         {"command", "degree"},
         {"max", max_n},
         {"found", w.has_value()}};
  std::string text;
  if (w) {
    text = "n=" + std::to_string(w->n) + " i=" + std::to_string(w->i) +
           " j=" + std::to_string(w->j) + "\n";
    j["n"] = w->n;
    j["i"] = w->i;
    j["j"] = w->j;
  } else {
    text = "none\n";
  }
  emit(g, text, j);
  return kExitOk;
}

int cmd_normalize(const GlobalOpts& g, const std::string& word_arg) {
  ew::Word w = ew::parse_word(word_arg);
  auto [nf, trace] = ew::normalize_one_letter(w);
  std::string text = ew::render_nf(nf) + "\n" + ew::render_trace(trace);
  json j{{"schema", 1},
         {"command", "normalize"},
         {"input", ew::render_word(w)},
         {"p", nf.p},
         {"q", nf.q},
         {"normal_form", ew::render_nf(nf)},
         {"trace", json_trace(trace)}};
  emit(g, text, j);
  return kExitOk;
}

int cmd_factor(const GlobalOpts& g, const std::string& word_arg) {
  ew::Word w = ew::parse_word(word_arg);
  ew::TailFactorization f = ew::factor_tail(w);
  std::string text =
      "prefix: " + (f.prefix ? ew::render_word(*f.prefix) : "(empty)") + "\n";
  text += "tail: " + f.tail.name() + "\n";
  text += ew::render_trace(f.trace);
  json j{{"schema", 1},
         {"command", "factor"},
         {"input", ew::render_word(w)},
         {"prefix", f.prefix ? json(ew::render_word(*f.prefix)) : json()},
         {"tail", f.tail.name()},
         {"trace", json_trace(f.trace)}};
  emit(g, text, j);
  return kExitOk;
}

json json_verdict(const ew::VarietyVerdict& v) {
  json j{{"verdict", v.verdict}, {"category", v.category}};
  if (v.witness) j["witness_identity"] = *v.witness;
  return j;
}

int cmd_classify(const GlobalOpts& g, const std::string& ids_arg) {
  ew::IdentitySystem sys = load_system_arg(ids_arg);
  std::string text;
  json ids = json::array();
  for (std::size_t i = 0; i < sys.identities.size(); ++i) {
    const ew::Identity& id = sys.identities[i];
    ew::IdentityFlags f = ew::classify_identity(id);
    const std::pair<const char*, bool> flags[] = {
        {"semigroup", f.is_semigroup},
        {"balanced", f.is_balanced},
        {"homotypical", f.is_homotypical},
        {"heterotypical", f.is_heterotypical},
        {"mixed", f.is_mixed},
        {"strictly-unary", f.is_strictly_unary},
        {"permutational", f.is_permutational},
        {"linear-lhs", f.is_linear_lhs},
        {"linear-rhs", f.is_linear_rhs},
    };
    std::string set;
    json jflags = json::object();
    for (const auto& [name, on] : flags) {
      if (on) {
        if (!set.empty()) set += ' ';
        set += name;
      }
      jflags[name] = on;
    }
    text += "identity " + std::to_string(i) + ": " + ew::render_identity(id) +
            "\n";
    text += "  flags: " + set + "\n";
    ids.push_back({{"identity", ew::render_identity(id)}, {"flags", jflags}});
  }
  ew::VarietyVerdict variety = ew::is_variety_class(sys);
  ew::VarietyVerdict var_e = ew::equals_varE(sys);
  text += std::string("variety: ") + (variety.verdict ? "yes" : "no") +
          "; equals varE: " + (var_e.verdict ? "yes" : "no") + "\n";
  text += "variety reason: " + variety.category +
          (variety.witness ? " (identity " + std::to_string(*variety.witness) +
                                 ")"
                           : "") +
          "\n";
  text += "varE reason: " + var_e.category +
          (var_e.witness ? " (identity " + std::to_string(*var_e.witness) + ")"
                         : "") +
          "\n";
  json j{{"schema", 1},
         {"command", "classify"},
         {"identities", ids},
         {"variety", json_verdict(variety)},
         {"equals_varE", json_verdict(var_e)}};
  // A non-balanced semigroup axiom pins down a power identity and with it a
  // mixed consequence; report it when one exists.
  for (const ew::Identity& id : sys.identities) {
    if (auto pc = ew::periodic_consequence(id)) {
      text += "periodic consequence: p=" + std::to_string(pc->p) +
              " q=" + std::to_string(pc->q) + "; " +
              ew::render_identity(pc->mixed) + "\n";
      j["periodic"] = {{"p", pc->p},
                       {"q", pc->q},
                       {"power", ew::render_identity(pc->power_identity)},
                       {"mixed", ew::render_identity(pc->mixed)}};
      break;
    }
  }
  emit(g, text, j);
  return kExitOk;
}

int cmd_transform(const GlobalOpts& g, const std::string& ids_arg, int m,
                  int n) {
  ew::IdentitySystem sys = load_system_arg(ids_arg);
  ew::IdentitySystem out = ew::transform_mn(sys, m, n);
  std::string text = ew::render_system(out);
  json arr = json::array();
  for (const ew::Identity& id : out.identities) {
    arr.push_back(ew::render_identity(id));
  }
  json j{{"schema", 1},
         {"command", "transform"},
         {"m", m},
         {"n", n},
         {"identities", arr}};
  emit(g, text, j);
  return kExitOk;
}

int cmd_deduce(const GlobalOpts& g, const std::string& script_path,
               const std::string& models_dir, bool strict_axioms,
               std::optional<int> delta_override) {
  ew::ProofScript script =
      ew::parse_proof_script(ew::read_text_file(script_path));
  ew::IdentitySystem axioms;
  if (script.axioms_path) {
    fs::path p{*script.axioms_path};
    if (p.is_relative()) {
      p = fs::path(script_path).parent_path() / p;
    }
    axioms = ew::parse_system_file(p.string());
  }
  ew::Deduction d = ew::to_deduction(script, std::move(axioms));
  if (delta_override) d.delta_bound = *delta_override;
  ew::DeductionOptions opts;
  opts.axioms_up_to_renaming = !strict_axioms;
  ew::VerificationResult r = ew::verify_deduction(d, opts);

  json j{{"schema", 1},
         {"command", "deduce"},
         {"valid", r.valid},
         {"delta_bound", d.delta_bound},
         {"steps", d.steps.size()}};
  if (!r.valid) {
    std::string text;
    if (r.failed_step) {
      text = "invalid at step " + std::to_string(*r.failed_step) + ": " +
             r.reason + "\n";
      j["failed_step"] = *r.failed_step;
    } else {
      text = "invalid: " + r.reason + "\n";
    }
    j["reason"] = r.reason;
    emit(g, text, j);
    return kExitPropertyFailure;
  }

  std::string text = "valid\n";
  j["conclusion"] = ew::render_identity(d.conclusion());
  if (!models_dir.empty()) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(models_dir)) {
      if (entry.path().extension() == ".tbl") {
        paths.push_back(entry.path().string());
      }
    }
    std::sort(paths.begin(), paths.end());
    int checked = 0;
    int skipped = 0;
    std::optional<std::string> bad_model;
    std::string bad_witness;
    json failures = json::array();
    for (const std::string& path : paths) {
      // Cross-checks always run on derived pseudoinversion so that the
      // conclusion is evaluated in an epigroup.
      ew::FiniteEpigroup e = ew::derive_epigroup(load_table(path)).epigroup;
      if (!ew::satisfies_system(e, d.axioms, g.bound).holds) {
        ++skipped;
        continue;
      }
      ++checked;
      ew::SatisfactionResult cr = ew::satisfies(e, d.conclusion(), g.bound);
      if (!cr.holds && !bad_model) {
        bad_model = fs::path(path).stem().string();
        bad_witness =
            render_assignment(e.table(), cr.witness->assignment) +
            " lhs=" + e.name(cr.witness->lhs_value) +
            " rhs=" + e.name(cr.witness->rhs_value);
        failures.push_back(
            {{"model", *bad_model},
             {"assignment", json_assignment(e.table(), cr.witness->assignment)},
             {"lhs", e.name(cr.witness->lhs_value)},
             {"rhs", e.name(cr.witness->rhs_value)}});
      }
    }
    j["models_checked"] = checked;
    j["models_skipped"] = skipped;
    j["failures"] = failures;
    if (bad_model) {
      text += "conclusion fails in " + *bad_model + "\n";
      text += "witness: " + bad_witness + "\n";
      emit(g, text, j);
      return kExitPropertyFailure;
    }
    text += "conclusion holds in all " + std::to_string(checked) + " models\n";
  }
  emit(g, text, j);
  return kExitOk;
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += c;
    } else if (c == ',') {
      out += '_';
    }
  }
  return out;
}

int cmd_catalog(const GlobalOpts& g, const std::string& name, bool enumerate,
                int order, bool iso, const std::string& out_dir) {
  if (enumerate == !name.empty()) {
    throw std::invalid_argument(
        "catalog needs either a structure name or --enumerate");
  }
  if (!name.empty()) {
    ew::RawTable t = ew::named_table(name);
    std::string formatted = ew::format_table(t.names, t.mult, t.unary);
    json j{{"schema", 1},
           {"command", "catalog"},
           {"name", name},
           {"table", formatted}};
    if (out_dir.empty()) {
      emit(g, formatted, j);
    } else {
      fs::create_directories(out_dir);
      fs::path file = fs::path(out_dir) / (sanitize_name(name) + ".tbl");
      std::ofstream out(file);
      out << formatted;
      j["path"] = file.string();
      emit(g, "wrote " + file.string() + "\n", j);
    }
    return kExitOk;
  }

  std::vector<ew::RawTable> tables = ew::enumerate_semigroup_tables(order, iso);
  json j{{"schema", 1},
         {"command", "catalog"},
         {"order", order},
         {"up_to_iso", iso},
         {"count", tables.size()}};
  if (out_dir.empty()) {
    std::string text;
    json arr = json::array();
    for (const ew::RawTable& t : tables) {
      std::string formatted = ew::format_table(t.names, t.mult, t.unary);
      if (!text.empty()) text += "\n";
      text += formatted;
      arr.push_back(formatted);
    }
    j["tables"] = arr;
    emit(g, text, j);
  } else {
    fs::create_directories(out_dir);
    int idx = 0;
    for (const ew::RawTable& t : tables) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "s%d_%04d.tbl", order, idx++);
      std::ofstream out(fs::path(out_dir) / buf);
      out << ew::format_table(t.names, t.mult, t.unary);
    }
    j["dir"] = out_dir;
    emit(g,
         "wrote " + std::to_string(tables.size()) + " tables to " + out_dir +
             "\n",
         j);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "workbench for finite epigroups and unary-semigroup identities"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_flag("--json", g.as_json, "emit a JSON report instead of text");
  app.add_option("--bound", g.bound,
                 "assignment budget for exhaustive identity checks");

  auto* check = app.add_subcommand(
      "check", "test an identity or system against a finite model");
  std::string check_table, check_ids;
  check->add_option("table", check_table, "multiplication table file")
      ->required();
  check->add_option("identities", check_ids,
                    "inline identity (contains '=') or system file")
      ->required();

  auto* pinv =
      app.add_subcommand("pinv", "per-element pseudoinversion report");
  std::string pinv_table;
  pinv->add_option("table", pinv_table, "multiplication table file")
      ->required();

  auto* profile =
      app.add_subcommand("profile", "structure report for a finite model");
  std::string profile_table;
  profile->add_option("table", profile_table, "multiplication table file")
      ->required();

  auto* degree = app.add_subcommand(
      "degree", "search for a satisfied double-bar segment identity");
  std::string degree_table;
  int degree_max = 3;
  degree->add_option("table", degree_table, "multiplication table file")
      ->required();
  degree->add_option("--max", degree_max, "largest level to try (default 3)");

  auto* normalize = app.add_subcommand(
      "normalize", "normalize a one-letter word to x^p x'^q with a trace");
  std::string normalize_word;
  normalize->add_option("word", normalize_word, "word in one letter")
      ->required();

  auto* factor = app.add_subcommand(
      "factor", "split a word into a prefix and its trailing letter");
  std::string factor_word;
  factor->add_option("word", factor_word, "word to factor")->required();

  auto* classify = app.add_subcommand(
      "classify", "identity flags and variety verdicts for a system");
  std::string classify_ids;
  classify
      ->add_option("identities", classify_ids,
                   "inline identity (contains '=') or system file")
      ->required();

  auto* transform = app.add_subcommand(
      "transform", "pad every identity with fresh letters on both ends");
  std::string transform_ids;
  int transform_m = 0, transform_n = 0;
  transform
      ->add_option("identities", transform_ids,
                   "inline identity (contains '=') or system file")
      ->required();
  transform->add_option("-m", transform_m, "letters prepended (default 0)");
  transform->add_option("-n", transform_n, "letters appended (default 0)");

  auto* deduce =
      app.add_subcommand("deduce", "verify a proof script step by step");
  std::string deduce_script, deduce_models;
  bool deduce_strict = false;
  int deduce_delta = 0;
  deduce->add_option("script", deduce_script, "proof script file")->required();
  deduce->add_option("--check-models", deduce_models,
                     "directory of .tbl files to cross-check the conclusion");
  deduce->add_flag("--strict-axioms", deduce_strict,
                   "match axioms syntactically instead of up to renaming");
  auto* delta_opt = deduce->add_option(
      "--delta-bound", deduce_delta,
      "override the script's prime bound for the auxiliary basis");

  auto* catalog = app.add_subcommand(
      "catalog", "emit stock structures or enumerate small semigroups");
  std::string catalog_name, catalog_out;
  bool catalog_enum = false, catalog_iso = false;
  int catalog_order = 3;
  catalog->add_option("name", catalog_name,
                      "P, C, T, N(k), Z(n), cyclic(i,p), or free(k,m)");
  catalog->add_flag("--enumerate", catalog_enum,
                    "enumerate all tables of a given order");
  catalog->add_option("--order", catalog_order,
                      "enumeration order, 1..4 (default 3)");
  catalog->add_flag("--iso", catalog_iso,
                    "only isomorphism-class representatives");
  catalog->add_option("--out", catalog_out, "write tables into a directory");

  for (CLI::App* sub : {check, pinv, profile, degree, normalize, factor,
                        classify, transform, deduce, catalog}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*check) return cmd_check(g, check_table, check_ids);
    if (*pinv) return cmd_pinv(g, pinv_table);
    if (*profile) return cmd_profile(g, profile_table);
    if (*degree) return cmd_degree(g, degree_table, degree_max);
    if (*normalize) return cmd_normalize(g, normalize_word);
    if (*factor) return cmd_factor(g, factor_word);
    if (*classify) return cmd_classify(g, classify_ids);
    if (*transform) return cmd_transform(g, transform_ids, transform_m,
                                         transform_n);
    if (*deduce) {
      std::optional<int> delta;
      if (delta_opt->count() > 0) delta = deduce_delta;
      return cmd_deduce(g, deduce_script, deduce_models, deduce_strict, delta);
    }
    if (*catalog) {
      return cmd_catalog(g, catalog_name, catalog_enum, catalog_order,
                         catalog_iso, catalog_out);
    }
  } catch (const ew::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;  // unreachable: a subcommand is required
}
