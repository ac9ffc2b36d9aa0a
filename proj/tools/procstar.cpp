#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "procstar/verify.hpp"

using namespace procstar;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kPrecision = 3 };

struct Options {
  Config cfg;
  std::string format = "json";
  std::string output;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON when the argument starts with '{', otherwise a file path.
Json load_json(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
  return parse_json(inline_json ? arg : read_text(arg), what);
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    // Reuse the canonical float formatting, minus the trailing newline.
    std::string v = canonical_dump(j);
    v.pop_back();
    out += path + ": " + v + "\n";
  }
}

void emit(const Options& o, const Json& j) {
  std::string text;
  if (o.format == "text")
    flatten(j, "", text);
  else
    text = canonical_dump(j);
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw UsageError("cannot write " + o.output);
  out << text;
}

void validate(const Options& o) {
  const auto& t = o.cfg.tol;
  if (!(t.alg > 0 && t.spec > 0 && t.norm > 0 && t.group > 0)) throw UsageError("tolerances must be positive");
  const auto& c = o.cfg.caps;
  if (c.group_order == 0 || c.closure_size == 0 || c.word_length <= 0)
    throw UsageError("caps must be positive");
  if (o.format != "json" && o.format != "text") throw UsageError("format must be json or text");
}

GroupDescriptor descriptor_from_flags(const std::string& family, const std::vector<int>& params,
                                      const std::string& descriptor) {
  if (!descriptor.empty()) return descriptor_from_json(load_json(descriptor, "descriptor"));
  if (family.empty()) throw UsageError("give --family/--params or --descriptor");
  std::string f = family;
  std::replace(f.begin(), f.end(), '-', '_');
  return {f, params, {}};
}

FiniteQuotient quotient_from_flags(const GroupAlgebraElement& a, const std::string& quotient,
                                   const std::string& kind, const Json& params, const Config& cfg) {
  if (!quotient.empty()) {
    auto q = quotient_from_json(load_json(quotient, "quotient"), cfg);
    if (!(q.source() == a.group())) throw UsageError("quotient and element are over different groups");
    return q;
  }
  if (kind.empty()) throw UsageError("give --quotient or --kind/--params");
  return quotient_from_json(a.group(), kind, params, cfg);
}

Json params_json(const std::vector<std::int64_t>& moduli, const std::string& raw) {
  if (!raw.empty()) return parse_json(raw, "params");
  return moduli;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Profinite C*-seminorms of group algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "json or text")->envname("PROCSTAR_FORMAT");
  app.add_option("--output", o.output, "write the report to a file")->envname("PROCSTAR_OUTPUT");
  app.add_option("--seed", o.cfg.seed)->envname("PROCSTAR_SEED");
  app.add_option("--tol-alg", o.cfg.tol.alg)->envname("PROCSTAR_TOL_ALG");
  app.add_option("--tol-spec", o.cfg.tol.spec)->envname("PROCSTAR_TOL_SPEC");
  app.add_option("--tol-norm", o.cfg.tol.norm)->envname("PROCSTAR_TOL_NORM");
  app.add_option("--tol-group", o.cfg.tol.group)->envname("PROCSTAR_TOL_GROUP");
  app.add_option("--max-order", o.cfg.caps.group_order, "group order cap")->envname("PROCSTAR_MAX_ORDER");
  app.add_option("--closure-size", o.cfg.caps.closure_size)->envname("PROCSTAR_CLOSURE_SIZE");
  app.add_option("--word-length", o.cfg.caps.word_length)->envname("PROCSTAR_WORD_LENGTH");

  std::string family, descriptor, element, quotient, kind, raw_params, xi, method = "regular", suite;
  std::vector<int> params;
  std::vector<std::int64_t> moduli;
  SeparationSearch search;
  int max_length = 8;

  const auto group_flags = [&](CLI::App* c) {
    c->add_option("--family", family);
    c->add_option("--params", params)->delimiter(',');
    c->add_option("--descriptor", descriptor, "descriptor JSON or file");
  };
  const auto quotient_flags = [&](CLI::App* c) {
    c->add_option("--quotient", quotient, "quotient descriptor JSON or file");
    c->add_option("--kind", kind, "mod, catalog or normal");
    c->add_option("--params", moduli, "moduli or kernel generators")->delimiter(',');
    c->add_option("--params-json", raw_params, "params as JSON");
  };

  auto* group_info = app.add_subcommand("group-info", "order, conjugacy classes, irrep dimensions");
  group_flags(group_info);
  auto* decompose = app.add_subcommand("decompose", "irreducible blocks of the regular representation");
  group_flags(decompose);
  auto* seminorm_cmd = app.add_subcommand("seminorm", "seminorm of an element at a finite quotient");
  seminorm_cmd->add_option("--element", element, "element JSON file, '-' for stdin")->required();
  quotient_flags(seminorm_cmd);
  seminorm_cmd->add_option("--method", method, "regular or irrep_blocks");
  auto* sup_cmd = app.add_subcommand("sup-seminorm", "seminorms along a chain of moduli");
  sup_cmd->add_option("--element", element)->required();
  sup_cmd->add_option("--moduli", moduli)->delimiter(',')->required();
  auto* kappa_cmd = app.add_subcommand("kappa", "pushforward of an element to a quotient");
  kappa_cmd->add_option("--element", element)->required();
  quotient_flags(kappa_cmd);
  auto* witness_cmd = app.add_subcommand("witness", "separation witness for Z^d and Heisenberg elements");
  witness_cmd->add_option("--element", element)->required();
  witness_cmd->add_option("--xi", xi, "vector element JSON file");
  auto* sep_cmd = app.add_subcommand("separate-heisenberg", "finite-range representation separating an element");
  sep_cmd->add_option("--element", element)->required();
  sep_cmd->add_option("--max-n", search.max_n);
  sep_cmd->add_option("--max-root-order", search.max_root_order);
  sep_cmd->add_option("--min-norm", search.min_norm);
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite, "suite name or all")->required();
  auto* u3_cmd = app.add_subcommand("u3-check", "reduced words in the U(3) pair");
  u3_cmd->add_option("--max-length", max_length);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    validate(o);
    const Config& cfg = o.cfg;
    if (*group_info || *decompose) {
      const auto d = descriptor_from_flags(family, params, descriptor);
      const auto g = build_finite_group(d, cfg.caps.group_order);
      const auto dec = decompose_regular(g, cfg.seed, cfg);
      Json j{{"group", to_json(d)}, {"order", g->order()}};
      if (*group_info) {
        std::vector<std::size_t> sizes;
        for (const auto& c : g->conjugacy_classes()) sizes.push_back(c.size());
        j["classes"] = sizes.size();
        j["class_sizes"] = sizes;
        j["irrep_dims"] = dec.dims();
      } else {
        j["decomposition"] = to_json(dec);
        bool ok = true;
        double inner = 0.0;
        for (const auto& b : dec.blocks) {
          ok = ok && is_unitary_representation(b, cfg.tol.alg) && is_homomorphism(*g, b, cfg.tol.alg * std::max(1.0, std::sqrt(b.dim)));
          inner = std::max(inner, std::abs(character_inner(*g, b, b) - 1.0));
        }
        int sum = 0;
        for (int d2 : dec.dims()) sum += d2 * d2;
        j["certified"] = ok && inner <= cfg.tol.alg && sum == g->order();
        emit(o, j);
        return j["certified"].get<bool>() ? kOk : kViolation;
      }
      emit(o, j);
      return kOk;
    }
    if (*seminorm_cmd || *kappa_cmd) {
      const auto a = algebra_element_from_json(load_json(element, "element"), cfg);
      const auto q = quotient_from_flags(a, quotient, kind, params_json(moduli, raw_params), cfg);
      if (*kappa_cmd) {
        emit(o, {{"quotient", to_json(q)}, {"image", to_json(kappa(q, a))}});
        return kOk;
      }
      if (method != "regular" && method != "irrep_blocks") throw UsageError("method must be regular or irrep_blocks");
      emit(o, to_json(method == "regular" ? seminorm(q, a, cfg) : seminorm_via_irreps(q, a, cfg)));
      return kOk;
    }
    if (*sup_cmd) {
      const auto a = algebra_element_from_json(load_json(element, "element"), cfg);
      const auto r = sup_seminorm(a, modulus_schedule(a.group(), moduli, cfg.caps.group_order), cfg);
      emit(o, to_json(r));
      return r.monotone ? kOk : kViolation;
    }
    if (*witness_cmd) {
      const auto b = algebra_element_from_json(load_json(element, "element"), cfg);
      std::optional<GroupAlgebraElement> x;
      if (!xi.empty()) x = algebra_element_from_json(load_json(xi, "xi"), cfg);
      const auto w = rf_amen_witness(b, x, cfg);
      const double value = seminorm(w.quotient, b, cfg).value;
      Json j = to_json(w);
      j["seminorm"] = value;
      j["certified"] = w.injective_on_st && value >= w.lower_bound - cfg.tol.norm;
      emit(o, j);
      return j["certified"].get<bool>() ? kOk : kViolation;
    }
    if (*sep_cmd) {
      const auto a = algebra_element_from_json(load_json(element, "element"), cfg);
      const auto s = heisenberg_separation(a, search, cfg);
      if (!s) {
        emit(o, {{"found", false}, {"max_n", search.max_n}, {"max_root_order", search.max_root_order}});
        return kViolation;
      }
      Json j = to_json(*s);
      j["found"] = true;
      emit(o, j);
      return kOk;
    }
    if (*verify_cmd) {
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      Json out = Json::array();
      bool pass = true;
      for (const auto& n : names) {
        const auto r = run_suite(n, cfg);
        pass = pass && r.pass;
        out.push_back(to_json(r));
      }
      emit(o, names.size() == 1 ? out[0] : Json{{"pass", pass}, {"suites", out}});
      return pass ? kOk : kViolation;
    }
    if (*u3_cmd) {
      const auto r = free_group_u3_check(max_length, cfg);
      emit(o, to_json(r));
      return r.all_separated ? kOk : kViolation;
    }
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return kPrecision;
  } catch (const NotFound& e) {
    std::cerr << "not found: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
