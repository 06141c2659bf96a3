#include "normform/io.hpp"

#include <fstream>

#include "normform/errors.hpp"

namespace normform {
namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > kMaxExponent) throw ParseError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::vector<int> exponents(const Json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError(std::string(what) + " must be an array of length " + std::to_string(n));
  }
  std::vector<int> out;
  for (const auto& e : j) out.push_back(int_from_json(e, what));
  return out;
}

Gaussian coef_from_json(const Json& t) {
  return {rational_from_json(field(t, "re")), t.contains("im") ? rational_from_json(t.at("im")) : Rational(0)};
}

MonoKey checked_key(MonoKey key, int total) {
  if (total >= kMaxExponent) throw ParseError("monomial degree out of range");
  return key;
}

}  // namespace

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    const Monomial m = Monomial::from_key(t.key, p.n());
    out.push_back({{"re", t.coef.re.str()}, {"im", t.coef.im.str()}, {"ez", m.ez}, {"ezb", m.ezb}, {"ex", m.ex}});
  }
  return out;
}

Json to_json(const HoloPoly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    const HoloMonomial m = HoloMonomial::from_key(t.key, p.n());
    out.push_back({{"re", t.coef.re.str()}, {"im", t.coef.im.str()}, {"ez", m.ez}, {"ew", m.ew}});
  }
  return out;
}

Json to_json(const ModelSpec& m) { return {{"N", m.n}, {"s", m.s}, {"k0", m.k0}, {"P", to_json(m.P)}}; }

Json to_json(const DefiningSeries& m) {
  Json tail = Json::object();
  for (const auto& [k, p] : m.tail) {
    if (!p.is_zero()) tail[std::to_string(k)] = to_json(p);
  }
  return {{"model", to_json(m.model)}, {"tail", tail}, {"order", m.order}};
}

Json to_json(const FormalMap& map) {
  Json f = Json::array();
  for (const auto& c : map.F) f.push_back(to_json(c));
  return {{"F", f}, {"G", to_json(map.G)}, {"order", map.order}};
}

Json to_json(const ClassRecord& r) {
  return {{"class", r.weight_class},
          {"rows", r.rows},
          {"unknowns", r.unknowns},
          {"jet_pinned", r.jet_pinned},
          {"rank", r.rank},
          {"kernel_after_jets", r.kernel_after_jets},
          {"deferred", r.deferred},
          {"symmetries", r.symmetries},
          {"iterations", r.iterations},
          {"sweep", r.sweep},
          {"seconds", r.seconds},
          {"triangular", r.triangular},
          {"normal", r.normal}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("bad rational \"" + j.get<std::string>() + "\": " + e.what());
  }
}

Poly poly_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    Monomial m{exponents(field(t, "ez"), n, "ez"), exponents(field(t, "ezb"), n, "ezb"),
               int_from_json(field(t, "ex"), "ex")};
    terms.push_back({checked_key(m.key(), m.degree()), coef_from_json(t)});
  }
  return Poly::from_terms(n, std::move(terms));
}

HoloPoly holo_poly_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    HoloMonomial m{exponents(field(t, "ez"), n, "ez"), int_from_json(field(t, "ew"), "ew")};
    terms.push_back({checked_key(m.key(), m.z_degree() + m.ew), coef_from_json(t)});
  }
  return HoloPoly::from_terms(n, std::move(terms));
}

ModelSpec model_from_json(const Json& j) {
  const int n = int_from_json(field(j, "N"), "N");
  if (n < 1 || n > kMaxN) throw ValidationError("N in [1, 3]", "N = " + std::to_string(n));
  const int s = int_from_json(field(j, "s"), "s");
  const int k0 = int_from_json(field(j, "k0"), "k0");
  return make_model(n, s, k0, poly_from_json(field(j, "P"), n));
}

DefiningSeries defining_from_json(const Json& j) {
  DefiningSeries m{model_from_json(field(j, "model")), {}, int_from_json(field(j, "order"), "order")};
  const Json& tail = j.contains("tail") ? j.at("tail") : Json::object();
  if (!tail.is_object()) throw ParseError("tail must be an object keyed by weight");
  for (const auto& [key, value] : tail.items()) {
    int w = 0;
    try {
      std::size_t used = 0;
      w = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("tail key \"" + key + "\" is not an integer weight");
    }
    Poly p = poly_from_json(value, m.model.n);
    if (!p.is_zero()) m.tail[w] += p;
  }
  return m;
}

FormalMap map_from_json(const Json& j, int n) {
  FormalMap map;
  const Json& f = field(j, "F");
  if (!f.is_array()) throw ParseError("F must be an array of polynomials");
  for (const auto& c : f) map.F.push_back(holo_poly_from_json(c, n));
  map.G = holo_poly_from_json(field(j, "G"), n);
  map.order = int_from_json(field(j, "order"), "order");
  return map;
}

Monomial monomial_from_json(const Json& j, int n) {
  Monomial m{exponents(field(j, "ez"), n, "ez"), exponents(field(j, "ezb"), n, "ezb"),
             int_from_json(field(j, "ex"), "ex")};
  checked_key(m.key(), m.degree());
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace normform
