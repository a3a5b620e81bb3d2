#include "symlra/io.hpp"

#include <fstream>
#include <set>

namespace symlra::io {

using nlohmann::json;

namespace {

int int_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    throw FormatError(std::string("missing or non-integer field \"") + key + "\"");
  return j.at(key).get<int>();
}

std::vector<int> int_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw FormatError(std::string("missing array \"") + key + "\"");
  std::vector<int> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) throw FormatError(std::string("non-integer value in \"") + key + "\"");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("complex value must be an object with \"re\" and \"im\"");
  double re = 0.0;
  double im = 0.0;
  if (j.contains("re")) {
    if (!j.at("re").is_number()) throw FormatError("\"re\" must be a number");
    re = j.at("re").get<double>();
  }
  if (j.contains("im")) {
    if (!j.at("im").is_number()) throw FormatError("\"im\" must be a number");
    im = j.at("im").get<double>();
  }
  return {re, im};
}

json tensor_to_json(const SymTensor& f, bool full) {
  json out{{"n", f.dim()}, {"m", f.order()}, {"format", full ? "full" : "compact"}};
  json entries = json::array();
  if (full) {
    const FullTensor ft = full_from_compact(f);
    for (std::size_t k = 0; k < ft.data.size(); ++k) {
      if (ft.data[k] == Complex(0.0, 0.0)) continue;
      std::vector<int> idx = ft.tuple(k);
      for (int& i : idx) ++i;
      json e = complex_to_json(ft.data[k]);
      e["index"] = idx;
      entries.push_back(std::move(e));
    }
  } else {
    for (std::size_t a = 0; a < f.size(); ++a) {
      json e = complex_to_json(f.at(a));
      e["alpha"] = f.monomials()[a].powers;
      entries.push_back(std::move(e));
    }
  }
  out["entries"] = std::move(entries);
  return out;
}

SymTensor tensor_from_json(const json& j) {
  const int n = int_field(j, "n");
  const int m = int_field(j, "m");
  if (n < 1 || m < 1) throw FormatError("n and m must be positive");
  std::string format = "compact";
  if (j.contains("format")) {
    if (!j.at("format").is_string()) throw FormatError("\"format\" must be a string");
    format = j.at("format").get<std::string>();
  }
  if (!j.contains("entries") || !j.at("entries").is_array()) throw FormatError("missing array \"entries\"");
  try {
    if (format == "compact") {
      const SymTensor shape(n, m);
      CVector values = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
      std::set<std::size_t> seen;
      for (const auto& e : j.at("entries")) {
        const Exponent alpha(int_array(e, "alpha"));
        if (alpha.nvars() != n - 1) throw FormatError("\"alpha\" must have n - 1 entries");
        for (int p : alpha.powers)
          if (p < 0) throw FormatError("negative power in \"alpha\"");
        if (alpha.total() > m) throw FormatError("\"alpha\" " + alpha.to_string() + " has degree above m");
        const std::size_t pos = shape.monomials().rank(alpha);
        if (!seen.insert(pos).second) throw FormatError("duplicate entry " + alpha.to_string());
        values[static_cast<Eigen::Index>(pos)] = complex_from_json(e);
      }
      return SymTensor(n, m, std::move(values));
    }
    if (format == "full") {
      FullTensor ft(n, m);
      std::set<std::size_t> seen;
      for (const auto& e : j.at("entries")) {
        std::vector<int> idx = int_array(e, "index");
        if (static_cast<int>(idx.size()) != m) throw FormatError("\"index\" must have m entries");
        for (int& i : idx) {
          if (i < 1 || i > n) throw FormatError("index out of range 1..n");
          --i;
        }
        const std::size_t pos = ft.flat_index(idx);
        if (!seen.insert(pos).second) throw FormatError("duplicate full index");
        ft.data[pos] = complex_from_json(e);
      }
      return compact_from_full(ft);
    }
  } catch (const std::invalid_argument& err) {
    throw FormatError(err.what());
  }
  throw FormatError("unknown tensor format \"" + format + "\"");
}

json decomposition_to_json(const Decomposition& d) {
  json vecs = json::array();
  for (const auto& u : d.vectors) {
    json v = json::array();
    for (Eigen::Index k = 0; k < u.size(); ++k) v.push_back(complex_to_json(u[k]));
    vecs.push_back(std::move(v));
  }
  return json{{"n", d.n}, {"m", d.order}, {"rank", d.rank()}, {"vectors", std::move(vecs)}};
}

Decomposition decomposition_from_json(const json& j) {
  const int n = int_field(j, "n");
  const int m = int_field(j, "m");
  if (n < 1 || m < 1) throw FormatError("n and m must be positive");
  if (!j.contains("vectors") || !j.at("vectors").is_array()) throw FormatError("missing array \"vectors\"");
  Decomposition d(n, m);
  for (const auto& v : j.at("vectors")) {
    if (!v.is_array() || static_cast<int>(v.size()) != n) throw FormatError("each vector must have n entries");
    CVector u(n);
    for (int k = 0; k < n; ++k) u[k] = complex_from_json(v[static_cast<std::size_t>(k)]);
    d.vectors.push_back(std::move(u));
  }
  if (j.contains("rank") && (!j.at("rank").is_number_integer() || j.at("rank").get<std::size_t>() != d.rank()))
    throw FormatError("\"rank\" does not match the number of vectors");
  return d;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

SymTensor read_tensor_file(const std::filesystem::path& path) { return tensor_from_json(read_json_file(path)); }

}  // namespace symlra::io
