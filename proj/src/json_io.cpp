#include "procstar/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace procstar {

namespace {

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {  // std::map storage: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(k).dump() + ": ";
        write(v, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",\n";
        if (!flat) out += inner;
        write(j[i], out, indent + 1);
      }
      out += flat ? "]" : "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d == 0.0 ? 0.0 : d);
      std::string s = buf;
      if (s.find_first_of(".en") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string normalise_family(std::string f) {
  std::replace(f.begin(), f.end(), '-', '_');
  return f;
}

template <typename T>
T get_field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw UsageError(what + ": bad \"" + key + "\": " + e.what());
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  write(j, out, 0);
  return out + "\n";
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json to_json(const GroupDescriptor& d) {
  Json j{{"family", d.family}, {"params", d.params}};
  if (d.family == "direct_product") {
    j["factors"] = Json::array();
    for (const auto& f : d.factors) j["factors"].push_back(to_json(f));
  }
  return j;
}

GroupDescriptor descriptor_from_json(const Json& j) {
  GroupDescriptor d;
  d.family = normalise_family(get_field<std::string>(j, "family", "group descriptor"));
  if (j.contains("params")) d.params = get_field<std::vector<int>>(j, "params", "group descriptor");
  if (j.contains("factors")) {
    if (!j["factors"].is_array()) throw UsageError("group descriptor: \"factors\" must be a list");
    for (const auto& f : j["factors"]) d.factors.push_back(descriptor_from_json(f));
  }
  return d;
}

std::optional<GroupDescriptor> parse_descriptor_label(const std::string& label) {
  std::size_t pos = 0;
  std::function<std::optional<GroupDescriptor>()> parse = [&]() -> std::optional<GroupDescriptor> {
    const std::size_t open = label.find('(', pos);
    if (open == std::string::npos) return std::nullopt;
    GroupDescriptor d;
    d.family = label.substr(pos, open - pos);
    pos = open + 1;
    while (pos < label.size() && label[pos] != ')') {
      if (d.family == "direct_product") {
        auto f = parse();
        if (!f) return std::nullopt;
        d.factors.push_back(std::move(*f));
      } else {
        std::size_t used = 0;
        try {
          d.params.push_back(std::stoi(label.substr(pos), &used));
        } catch (const std::exception&) {
          return std::nullopt;
        }
        pos += used;
      }
      if (pos < label.size() && label[pos] == ',') ++pos;
    }
    if (pos >= label.size()) return std::nullopt;
    ++pos;
    return d;
  };
  auto d = parse();
  if (!d || pos != label.size()) return std::nullopt;
  try {
    family_order(*d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return d;
}

DiscreteGroup group_from_json(const Json& j, const Config& cfg) {
  const auto family = normalise_family(get_field<std::string>(j, "family", "group"));
  if (family == "integers" || family == "z" || family == "zd") {
    const auto params = j.contains("params") ? get_field<std::vector<int>>(j, "params", "group") : std::vector<int>{1};
    if (params.size() != 1 || params[0] < 1) throw UsageError("group: integers takes one positive rank");
    return DiscreteGroup::integers(params[0]);
  }
  if (family == "heisenberg") return DiscreteGroup::heisenberg();
  if (family == "free2" || family == "f2") return DiscreteGroup::free2();
  return DiscreteGroup::finite(build_finite_group(descriptor_from_json(j), cfg.caps.group_order));
}

Json group_to_json(const DiscreteGroup& g) {
  switch (g.family()) {
    case Family::ZPower: return {{"family", "integers"}, {"params", {g.rank()}}};
    case Family::Heisenberg: return {{"family", "heisenberg"}, {"params", Json::array()}};
    case Family::Free2: return {{"family", "free2"}, {"params", Json::array()}};
    case Family::Finite:
      if (auto d = parse_descriptor_label(g.label())) return to_json(*d);
      return {{"label", g.label()}, {"order", g.finite_group()->order()}};
  }
  return {};
}

Element element_from_json(const DiscreteGroup& g, const Json& j) {
  Element e;
  try {
    switch (g.family()) {
      case Family::ZPower:
      case Family::Heisenberg:
        if (j.is_number_integer() && g.family() == Family::ZPower && g.rank() == 1)
          e.coords = {j.get<std::int64_t>()};
        else
          e.coords = j.get<std::vector<std::int64_t>>();
        break;
      case Family::Free2: e = free_word(j.get<std::string>()); break;
      case Family::Finite: e = finite_element(j.get<int>()); break;
    }
  } catch (const Json::exception&) {
    throw UsageError("bad element literal " + j.dump() + " for " + g.label());
  }
  g.validate(e);
  return e;
}

Json element_to_json(const DiscreteGroup& g, const Element& e) {
  switch (g.family()) {
    case Family::ZPower:
    case Family::Heisenberg: return e.coords;
    case Family::Free2: return free_word_string(e);
    case Family::Finite: return e.coords.at(0);
  }
  return {};
}

GroupAlgebraElement algebra_element_from_json(const Json& j, const Config& cfg) {
  if (!j.is_object() || !j.contains("group")) throw UsageError("element: missing \"group\"");
  GroupAlgebraElement a(group_from_json(j["group"], cfg));
  if (!j.contains("terms") || !j["terms"].is_array()) throw UsageError("element: \"terms\" must be a list");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("g")) throw UsageError("element: each term needs \"g\" and \"c\"");
    const Complex c = t.contains("c") ? complex_from_json(t["c"]) : Complex(1.0);
    a.add(element_from_json(a.group(), t["g"]), c);
  }
  return a;
}

Json to_json(const GroupAlgebraElement& a) {
  Json terms = Json::array();
  for (const auto& [g, c] : a.terms())
    terms.push_back({{"g", element_to_json(a.group(), g)}, {"c", complex_to_json(c)}});
  return {{"group", group_to_json(a.group())}, {"terms", terms}};
}

FiniteQuotient quotient_from_json(const DiscreteGroup& g, const std::string& kind, const Json& params,
                                  const Config& cfg) {
  try {
    if (kind == "mod") {
      auto moduli = params.is_number_integer() ? std::vector<std::int64_t>{params.get<std::int64_t>()}
                                               : params.get<std::vector<std::int64_t>>();
      if (g.family() == Family::ZPower && moduli.size() == 1 && g.rank() > 1)
        moduli.assign(g.rank(), moduli[0]);
      return mod_quotient(g, std::move(moduli), cfg.caps.group_order);
    }
    if (kind == "catalog") {
      auto target = build_finite_group(descriptor_from_json(get_field<Json>(params, "target", "catalog params")),
                                       cfg.caps.group_order);
      return catalog_quotient(g, std::move(target), get_field<std::vector<int>>(params, "images", "catalog params"));
    }
    if (kind == "normal") return normal_quotient(g, params.get<std::vector<int>>(), cfg.caps.group_order);
  } catch (const Json::exception& e) {
    throw UsageError("quotient params: " + std::string(e.what()));
  }
  throw UsageError("unknown quotient kind \"" + kind + "\" (mod, catalog, normal)");
}

FiniteQuotient quotient_from_json(const Json& j, const Config& cfg) {
  const auto g = group_from_json(get_field<Json>(j, "group", "quotient"), cfg);
  return quotient_from_json(g, get_field<std::string>(j, "kind", "quotient"),
                            j.contains("params") ? j["params"] : Json::array(), cfg);
}

Json to_json(const FiniteQuotient& q) {
  Json j{{"group", group_to_json(q.source())}, {"kind", to_string(q.kind())}, {"target_order", q.target_order()}};
  switch (q.kind()) {
    case QuotientKind::Mod: j["params"] = q.moduli(); break;
    case QuotientKind::Catalog: {
      Json target;
      if (auto d = parse_descriptor_label(q.target()->label()))
        target = to_json(*d);
      else
        target = {{"label", q.target()->label()}, {"order", q.target_order()}};
      j["params"] = {{"target", target}, {"images", q.generator_images()}};
      break;
    }
    case QuotientKind::Normal: j["params"] = q.kernel_generators(); break;
  }
  return j;
}

Json to_json(const SeminormValue& v) {
  return {{"quotient", to_json(v.quotient)}, {"value", v.value}, {"method", to_string(v.method)},
          {"l1_bound", v.l1_bound}};
}

Json to_json(const SupSeminormReport& r) {
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(to_json(v));
  return {{"values", values},
          {"running_sup", r.running_sup},
          {"sup", r.sup},
          {"l1_bound", r.l1_bound},
          {"monotone", r.monotone},
          {"norm_certified", r.norm_certified}};
}

Json to_json(const IrrepDecomposition& d) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    Json chi = Json::array();
    for (const auto& c : d.blocks[i].character()) chi.push_back(complex_to_json(c));
    blocks.push_back({{"dim", d.blocks[i].dim}, {"multiplicity", d.multiplicities[i]}, {"character", chi}});
  }
  return {{"dims", d.dims()}, {"blocks", blocks}, {"attempts", d.attempts}};
}

Json to_json(const SeparationWitness& w) {
  Json st = Json::array();
  for (const auto& e : w.st_set) st.push_back(element_to_json(w.quotient.source(), e));
  Json vec = Json::array();
  for (Eigen::Index x = 0; x < w.vector.size(); ++x)
    if (w.vector(x) != Complex(0.0)) vec.push_back({{"coset", x}, {"c", complex_to_json(w.vector(x))}});
  return {{"quotient", to_json(w.quotient)}, {"st_set", st},       {"injective_on_st", w.injective_on_st},
          {"vector", vec},                   {"lower_bound", w.lower_bound}, {"achieved", w.achieved}};
}

Json to_json(const GeneratorRep& r) {
  Json gens = Json::array();
  for (const auto& m : r.generators) gens.push_back(matrix_to_json(m));
  Json j{{"group", group_to_json(r.group)}, {"dim", r.dim}, {"generator_matrices", gens}};
  if (r.heisenberg)
    j["parameters"] = {{"n", r.heisenberg->n},
                       {"k", r.heisenberg->k},
                       {"alpha", complex_to_json(r.heisenberg->alpha)},
                       {"beta", complex_to_json(r.heisenberg->beta)}};
  return j;
}

Json to_json(const HeisenbergSeparation& s) {
  const auto root = [](const RootOfUnity& r) { return Json{{"numerator", r.numerator}, {"order", r.order}}; };
  return {{"n", s.n},         {"k", s.k},
          {"alpha", root(s.alpha)}, {"beta", root(s.beta)},
          {"norm", s.norm},   {"image_order", s.image_order},
          {"tuples_tried", s.tuples_tried}, {"rep", to_json(s.rep)}};
}

Json to_json(const Factorization& f) {
  return {{"quotient", to_json(f.quotient)}, {"image_order", f.quotient.target_order()},
          {"max_error", f.max_error}, {"verified", f.verified}};
}

Json to_json(const U3Report& r) {
  return {{"u", matrix_to_json(r.u)},
          {"v", matrix_to_json(r.v)},
          {"a", matrix_to_json(r.a)},
          {"b", matrix_to_json(r.b)},
          {"max_word_length", r.max_word_length},
          {"words_checked", r.words_checked},
          {"min_distance", r.min_distance},
          {"argmin_word", r.argmin_word},
          {"all_separated", r.all_separated}};
}

Json to_json(const ConsistencyReport& r) {
  return {{"pass", r.pass}, {"max_defect", r.max_defect}, {"pairs_checked", r.pairs_checked}, {"scope", "at truncation"}};
}

Json to_json(const BoundedFamilyReport& r) {
  return {{"node_norms", r.node_norms}, {"sup_norm", r.sup_norm}, {"is_bounded", r.is_bounded}};
}

Json to_json(const FullnessReport& r) {
  return {{"has_maximum", r.has_maximum},
          {"reconstructs_exactly", r.reconstructs_exactly},
          {"top_norm", r.top_norm},
          {"scope", "at truncation"}};
}

}  // namespace procstar
