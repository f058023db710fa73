#include "hylo/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace hylo {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<std::size_t> Carrier::index_of(std::string_view elem) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == elem) return i;
  return std::nullopt;
}

namespace {

void check_carrier_names(const Carrier& c) {
  std::unordered_set<std::string_view> seen;
  for (const std::string& e : c.elements) {
    if (e.empty())
      throw ValidationError("carrier '" + c.name + "' has an empty element name");
    if (!seen.insert(e).second)
      throw ValidationError("duplicate element '" + e + "' in carrier '" +
                            c.name + "'");
  }
}

}  // namespace

EquationInstance::EquationInstance(ContainerSpec functor, Carrier domain,
                                   Carrier codomain,
                                   std::vector<FStructure> alpha,
                                   std::vector<std::size_t> beta)
    : functor_(std::move(functor)),
      domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)) {
  check_carrier_names(domain_);
  check_carrier_names(codomain_);
  if (codomain_.size() == 0 && domain_.size() > 0)
    throw ValidationError("empty codomain with nonempty domain");

  if (alpha_.size() != domain_.size())
    throw ValidationError("alpha not total: " + std::to_string(alpha_.size()) +
                          " entries for " + std::to_string(domain_.size()) +
                          " domain elements");
  for (const FStructure& fs : alpha_) check_structure(functor_, domain_.size(), fs);

  const std::size_t fbc = fstructure_count(functor_, codomain_.size());
  if (codomain_.size() == 0 && fbc > 0)
    throw ValidationError(
        "empty codomain but the functor has nullary shapes demanding an image");
  if (beta_.size() != fbc)
    throw ValidationError("beta not total: " + std::to_string(beta_.size()) +
                          " entries for " + std::to_string(fbc) +
                          " structures");
  for (std::size_t out : beta_)
    if (out >= codomain_.size())
      throw ValidationError("beta output index out of codomain range");

  fb_ = enumerate_fstructures(functor_, codomain_.size());
}

const FStructure& EquationInstance::apply_alpha(std::size_t a) const {
  if (a >= alpha_.size())
    throw UnknownElement("domain element index out of range");
  return alpha_[a];
}

std::size_t EquationInstance::apply_beta(const FStructure& fs) const {
  check_structure(functor_, codomain_.size(), fs);
  return beta_[fstructure_index(functor_, codomain_.size(), fs)];
}

std::string EquationInstance::describe_domain_structure(
    const FStructure& fs) const {
  return format_structure(functor_, domain_, fs);
}

std::string EquationInstance::describe_codomain_structure(
    const FStructure& fs) const {
  return format_structure(functor_, codomain_, fs);
}

bool operator==(const EquationInstance& a, const EquationInstance& b) {
  return a.functor_ == b.functor_ && a.domain_.elements == b.domain_.elements &&
         a.codomain_.elements == b.codomain_.elements && a.alpha_ == b.alpha_ &&
         a.beta_ == b.beta_;
}

std::string format_structure(const ContainerSpec& functor,
                             const Carrier& carrier, const FStructure& fs) {
  std::string out = functor.shape(fs.shape).name + "(";
  for (std::size_t i = 0; i < fs.args.size(); ++i) {
    if (i > 0) out += ",";
    out += carrier.element(fs.args[i]);
  }
  out += ")";
  return out;
}

namespace {

const json& require_field(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw SyntaxError(std::string("missing field '") + key + "' in " + where);
  return *it;
}

Carrier parse_carrier(const json& j, const std::string& name) {
  const json& elems = require_field(j, "elements", name.c_str());
  if (!elems.is_array())
    throw SyntaxError("'elements' of " + name + " must be an array");
  Carrier c;
  c.name = name;
  for (const json& e : elems) {
    if (!e.is_string())
      throw SyntaxError("element names in " + name + " must be strings");
    c.elements.push_back(e.get<std::string>());
  }
  return c;
}

FStructure parse_structure(const json& j, const ContainerSpec& functor,
                           const std::unordered_map<std::string, std::size_t>& idx,
                           const std::string& where) {
  if (!j.is_object())
    throw SyntaxError("structure in " + where + " must be an object");
  const json& shape = require_field(j, "shape", where.c_str());
  const json& args = require_field(j, "args", where.c_str());
  if (!shape.is_string() || !args.is_array())
    throw SyntaxError("malformed structure in " + where);
  auto s = functor.find_shape(shape.get<std::string>());
  if (!s)
    throw ValidationError("unknown shape '" + shape.get<std::string>() +
                          "' in " + where);
  FStructure fs;
  fs.shape = *s;
  for (const json& a : args) {
    if (!a.is_string())
      throw SyntaxError("structure args in " + where + " must be strings");
    auto it = idx.find(a.get<std::string>());
    if (it == idx.end())
      throw ValidationError("unknown element '" + a.get<std::string>() +
                            "' in " + where);
    fs.args.push_back(it->second);
  }
  if (fs.args.size() != functor.shape(fs.shape).arity)
    throw ValidationError("structure for shape '" + shape.get<std::string>() +
                          "' in " + where + " has wrong arity");
  return fs;
}

std::unordered_map<std::string, std::size_t> index_map(const Carrier& c) {
  std::unordered_map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < c.elements.size(); ++i) out[c.elements[i]] = i;
  return out;
}

}  // namespace

EquationInstance parse_instance(const std::string& text,
                                const ValidationLimits& limits) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.what());
  }
  if (!doc.is_object()) throw SyntaxError("instance document must be an object");

  const json& jf = require_field(doc, "functor", "instance");
  const json& jshapes = require_field(jf, "shapes", "functor");
  if (!jshapes.is_array()) throw SyntaxError("'shapes' must be an array");
  std::vector<Shape> shapes;
  for (const json& js : jshapes) {
    const json& name = require_field(js, "name", "shape");
    const json& arity = require_field(js, "arity", "shape");
    if (!name.is_string() || !arity.is_number_unsigned())
      throw SyntaxError("shape entries need a string name and unsigned arity");
    shapes.push_back({name.get<std::string>(), arity.get<std::size_t>()});
  }
  ContainerSpec functor(std::move(shapes), limits);

  Carrier domain = parse_carrier(require_field(doc, "domain", "instance"), "A");
  Carrier codomain =
      parse_carrier(require_field(doc, "codomain", "instance"), "B");
  check_carrier_names(domain);
  check_carrier_names(codomain);
  if (domain.size() > limits.max_elements || codomain.size() > limits.max_elements)
    throw ValidationError("carrier exceeds the element cap of " +
                          std::to_string(limits.max_elements));
  auto a_idx = index_map(domain);
  auto b_idx = index_map(codomain);

  const json& jalpha = require_field(doc, "alpha", "instance");
  if (!jalpha.is_object()) throw SyntaxError("'alpha' must be an object");
  for (auto it = jalpha.begin(); it != jalpha.end(); ++it)
    if (!a_idx.count(it.key()))
      throw ValidationError("alpha entry for unknown element '" + it.key() + "'");
  std::vector<FStructure> alpha;
  for (const std::string& e : domain.elements) {
    auto it = jalpha.find(e);
    if (it == jalpha.end())
      throw ValidationError("alpha not total: missing entry for '" + e + "'");
    alpha.push_back(
        parse_structure(*it, functor, a_idx, "alpha entry for '" + e + "'"));
  }

  const json& jbeta = require_field(doc, "beta", "instance");
  if (!jbeta.is_array()) throw SyntaxError("'beta' must be an array");
  const std::size_t fbc = fstructure_count(functor, codomain.size());
  std::vector<std::size_t> beta(fbc, npos);
  for (const json& entry : jbeta) {
    FStructure fs = parse_structure(entry, functor, b_idx, "beta entry");
    const json& out = require_field(entry, "out", "beta entry");
    if (!out.is_string()) throw SyntaxError("beta 'out' must be a string");
    auto oit = b_idx.find(out.get<std::string>());
    if (oit == b_idx.end())
      throw ValidationError("unknown element '" + out.get<std::string>() +
                            "' as beta output");
    std::size_t idx = fstructure_index(functor, codomain.size(), fs);
    if (beta[idx] != npos)
      throw ValidationError("duplicate beta entry for " +
                            format_structure(functor, codomain, fs));
    beta[idx] = oit->second;
  }
  for (std::size_t i = 0; i < fbc; ++i)
    if (beta[i] == npos)
      throw ValidationError(
          "beta not total: missing entry for " +
          format_structure(functor, codomain,
                           fstructure_at(functor, codomain.size(), i)));

  return EquationInstance(std::move(functor), std::move(domain),
                          std::move(codomain), std::move(alpha), std::move(beta));
}

EquationInstance load_instance(const std::string& path,
                               const ValidationLimits& limits) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), limits);
}

std::string emit_instance(const EquationInstance& inst) {
  ordered_json doc;
  ordered_json shapes = ordered_json::array();
  for (const Shape& s : inst.functor().shapes())
    shapes.push_back({{"name", s.name}, {"arity", s.arity}});
  doc["functor"] = {{"shapes", shapes}};
  doc["domain"] = {{"elements", inst.domain().elements}};
  doc["codomain"] = {{"elements", inst.codomain().elements}};

  ordered_json alpha = ordered_json::object();
  for (std::size_t a = 0; a < inst.domain_size(); ++a) {
    const FStructure& fs = inst.apply_alpha(a);
    ordered_json args = ordered_json::array();
    for (std::size_t x : fs.args) args.push_back(inst.domain().element(x));
    alpha[inst.domain().element(a)] = {
        {"shape", inst.functor().shape(fs.shape).name}, {"args", args}};
  }
  doc["alpha"] = std::move(alpha);

  ordered_json beta = ordered_json::array();
  for (std::size_t i = 0; i < inst.fb_count(); ++i) {
    const FStructure& fs = inst.fb_structures()[i];
    ordered_json args = ordered_json::array();
    for (std::size_t x : fs.args) args.push_back(inst.codomain().element(x));
    beta.push_back({{"shape", inst.functor().shape(fs.shape).name},
                    {"args", args},
                    {"out", inst.codomain().element(inst.beta_at(i))}});
  }
  doc["beta"] = std::move(beta);
  return doc.dump(2) + "\n";
}

std::vector<std::vector<int>> bounded_lists(std::size_t alphabet_size,
                                            std::size_t max_len) {
  std::vector<std::vector<int>> out;
  out.push_back({});
  std::vector<std::vector<int>> frontier = {{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& xs : frontier)
      for (std::size_t e = 0; e < alphabet_size; ++e) {
        std::vector<int> ys = xs;
        ys.push_back(static_cast<int>(e));
        next.push_back(std::move(ys));
      }
    for (const auto& xs : next) out.push_back(xs);
    frontier = std::move(next);
  }
  return out;
}

std::string list_element_name(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(xs[i]);
  }
  out += "]";
  return out;
}

namespace {

struct ListUniverse {
  std::vector<std::vector<int>> lists;
  std::unordered_map<std::string, std::size_t> index;

  explicit ListUniverse(std::size_t k, std::size_t n) : lists(bounded_lists(k, n)) {
    for (std::size_t i = 0; i < lists.size(); ++i)
      index[list_element_name(lists[i])] = i;
  }

  std::size_t of(const std::vector<int>& xs) const {
    return index.at(list_element_name(xs));
  }
};

Carrier list_carrier(const std::string& name, const ListUniverse& u) {
  Carrier c;
  c.name = name;
  for (const auto& xs : u.lists) c.elements.push_back(list_element_name(xs));
  return c;
}

void check_list_params(std::size_t k, std::size_t n,
                       const ValidationLimits& limits) {
  if (k == 0) throw ValidationError("alphabet size must be at least 1");
  unsigned __int128 total = 0, block = 1;
  for (std::size_t len = 0; len <= n; ++len) {
    total += block;
    block *= k;
    if (total > limits.max_elements)
      throw ParamsTooLarge("list carrier would exceed the element cap of " +
                           std::to_string(limits.max_elements));
  }
}

std::vector<int> truncate_to(std::vector<int> xs, std::size_t n) {
  if (xs.size() > n) xs.resize(n);
  return xs;
}

std::vector<int> insert_sorted(int e, const std::vector<int>& ys) {
  std::vector<int> out;
  out.reserve(ys.size() + 1);
  std::size_t i = 0;
  while (i < ys.size() && ys[i] <= e) out.push_back(ys[i++]);
  out.push_back(e);
  while (i < ys.size()) out.push_back(ys[i++]);
  return out;
}

}  // namespace

EquationInstance make_isort(std::size_t alphabet_size, std::size_t max_len,
                            const ValidationLimits& limits) {
  check_list_params(alphabet_size, max_len, limits);
  ListUniverse u(alphabet_size, max_len);

  std::vector<Shape> shapes;
  shapes.push_back({"nil", 0});
  for (std::size_t e = 0; e < alphabet_size; ++e)
    shapes.push_back({"cons" + std::to_string(e), 1});
  ContainerSpec functor(std::move(shapes), limits);

  Carrier a = list_carrier("A", u);
  Carrier b = list_carrier("B", u);

  // alpha peels the head: [] -> nil(), e:xs -> cons_e(xs).
  std::vector<FStructure> alpha;
  for (const auto& xs : u.lists) {
    if (xs.empty()) {
      alpha.push_back({0, {}});
    } else {
      std::vector<int> tail(xs.begin() + 1, xs.end());
      alpha.push_back({1 + static_cast<std::size_t>(xs[0]), {u.of(tail)}});
    }
  }

  // beta inserts the head element into the (recursively sorted) tail;
  // results past the length bound are truncated, which only affects table
  // rows no reachable recursive call ever uses.
  std::vector<std::size_t> beta;
  for (const FStructure& fs : enumerate_fstructures(functor, b.size())) {
    if (fs.shape == 0) {
      beta.push_back(u.of({}));
    } else {
      int e = static_cast<int>(fs.shape - 1);
      beta.push_back(u.of(truncate_to(insert_sorted(e, u.lists[fs.args[0]]), max_len)));
    }
  }

  return EquationInstance(std::move(functor), std::move(a), std::move(b),
                          std::move(alpha), std::move(beta));
}

EquationInstance make_qsort(std::size_t alphabet_size, std::size_t max_len,
                            const ValidationLimits& limits) {
  check_list_params(alphabet_size, max_len, limits);
  ListUniverse u(alphabet_size, max_len);

  std::vector<Shape> shapes;
  shapes.push_back({"nil", 0});
  for (std::size_t e = 0; e < alphabet_size; ++e)
    shapes.push_back({"node" + std::to_string(e), 2});
  ContainerSpec functor(std::move(shapes), limits);

  Carrier a = list_carrier("A", u);
  Carrier b = list_carrier("B", u);

  // alpha splits around the head pivot; elements equal to the pivot go left.
  std::vector<FStructure> alpha;
  for (const auto& xs : u.lists) {
    if (xs.empty()) {
      alpha.push_back({0, {}});
    } else {
      int pivot = xs[0];
      std::vector<int> le, gt;
      for (std::size_t i = 1; i < xs.size(); ++i)
        (xs[i] <= pivot ? le : gt).push_back(xs[i]);
      alpha.push_back(
          {1 + static_cast<std::size_t>(pivot), {u.of(le), u.of(gt)}});
    }
  }

  // beta concatenates left ++ [pivot] ++ right, truncated to the bound.
  std::vector<std::size_t> beta;
  for (const FStructure& fs : enumerate_fstructures(functor, b.size())) {
    if (fs.shape == 0) {
      beta.push_back(u.of({}));
    } else {
      int pivot = static_cast<int>(fs.shape - 1);
      std::vector<int> out = u.lists[fs.args[0]];
      out.push_back(pivot);
      const auto& right = u.lists[fs.args[1]];
      out.insert(out.end(), right.begin(), right.end());
      beta.push_back(u.of(truncate_to(std::move(out), max_len)));
    }
  }

  return EquationInstance(std::move(functor), std::move(a), std::move(b),
                          std::move(alpha), std::move(beta));
}

EquationInstance make_modsucc(std::size_t modulus,
                              const ValidationLimits& limits) {
  if (modulus == 0) throw ValidationError("modulus must be at least 1");
  if (modulus > limits.max_elements)
    throw ParamsTooLarge("modulus exceeds the element cap");
  ContainerSpec functor({{"s", 1}}, limits);
  Carrier a{"A", {"a"}};
  Carrier b{"B", {}};
  for (std::size_t i = 0; i < modulus; ++i)
    b.elements.push_back(std::to_string(i));
  std::vector<FStructure> alpha = {{0, {0}}};
  std::vector<std::size_t> beta;
  for (std::size_t i = 0; i < modulus; ++i) beta.push_back((i + 1) % modulus);
  return EquationInstance(std::move(functor), std::move(a), std::move(b),
                          std::move(alpha), std::move(beta));
}

EquationInstance make_identity(std::size_t size_a, std::size_t size_b,
                               const ValidationLimits& limits) {
  if (size_a > limits.max_elements || size_b > limits.max_elements)
    throw ParamsTooLarge("carrier size exceeds the element cap");
  ContainerSpec functor({{"id", 1}}, limits);
  Carrier a{"A", {}};
  for (std::size_t i = 0; i < size_a; ++i)
    a.elements.push_back("a" + std::to_string(i));
  Carrier b{"B", {}};
  for (std::size_t i = 0; i < size_b; ++i)
    b.elements.push_back("b" + std::to_string(i));
  std::vector<FStructure> alpha;
  for (std::size_t i = 0; i < size_a; ++i) alpha.push_back({0, {i}});
  std::vector<std::size_t> beta;
  for (std::size_t i = 0; i < size_b; ++i) beta.push_back(i);
  return EquationInstance(std::move(functor), std::move(a), std::move(b),
                          std::move(alpha), std::move(beta));
}

}  // namespace hylo
