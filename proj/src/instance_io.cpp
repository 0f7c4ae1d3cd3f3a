#include "toricmld/instance_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace toricmld {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Parse, path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t read_size(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Rat read_rat(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rat(BigInt(v.dump()));
  if (!v.is_string()) fail(path, "expected a rational string \"p/q\" or an integer");
  try {
    return parse_rat(v.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

RatVec read_vector(const json& v, const std::string& path, std::optional<std::size_t> len) {
  if (!v.is_array()) fail(path, "expected an array");
  if (len && v.size() != *len) fail(path, "expected " + std::to_string(*len) + " entries, got " + std::to_string(v.size()));
  RatVec out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_rat(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<RatVec> read_vectors(const json& obj, const std::string& path, const char* key, std::size_t len,
                                 bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) fail(path, std::string("missing \"") + key + "\"");
    return {};
  }
  const std::string p = path + "." + key;
  if (!it->is_array()) fail(p, "expected an array");
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < it->size(); ++i) out.push_back(read_vector((*it)[i], p + "[" + std::to_string(i) + "]", len));
  return out;
}

std::vector<std::vector<std::size_t>> read_cones(const json& obj, const std::string& path) {
  const std::string p = path + ".max_cones";
  const json& v = member(obj, path, "max_cones");
  if (!v.is_array()) fail(p, "expected an array");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string pi = p + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail(pi, "expected an array of ray indices");
    std::vector<std::size_t> cone;
    for (std::size_t j = 0; j < v[i].size(); ++j) cone.push_back(read_size(v[i][j], pi + "[" + std::to_string(j) + "]"));
    out.push_back(std::move(cone));
  }
  return out;
}

// Construction errors (rays outside the lattice, bad cones) are reported
// against the document root.
template <class F>
auto build(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, std::string("$: ") + e.what());
  }
}

ToricVariety parse_toric(const json& doc) {
  const std::size_t d = read_size(member(doc, "$", "dim"), "$.dim");
  if (d == 0) fail("$.dim", "dimension must be positive");
  auto gens = read_vectors(doc, "$", "lattice_generators", d, false);
  auto rays = read_vectors(doc, "$", "rays", d, true);
  auto cones = read_cones(doc, "$");
  return build([&] { return ToricVariety(Lattice::from_generators(d, gens), Fan(d, std::move(rays), cones)); });
}

ToricMfs parse_mfs(const json& doc) {
  const std::size_t m = read_size(member(doc, "$", "m"), "$.m");
  const std::size_t n = read_size(member(doc, "$", "n"), "$.n");
  if (m == 0) fail("$.m", "fiber dimension must be positive");
  if (n == 0) fail("$.n", "base dimension must be positive");
  const std::size_t d = m + n;
  if (doc.contains("rays")) {
    auto gens = read_vectors(doc, "$", "lattice_generators", d, false);
    auto rays = read_vectors(doc, "$", "rays", d, true);
    auto cones = read_cones(doc, "$");
    std::optional<std::vector<RatVec>> base_gens;
    if (doc.contains("base_lattice_generators")) base_gens = read_vectors(doc, "$", "base_lattice_generators", n, true);
    return build([&] {
      std::optional<Lattice> base;
      if (base_gens) base = Lattice::from_generators(n, *base_gens);
      return mfs_from_fan(m, n, Lattice::from_generators(d, gens), std::move(rays), cones, std::move(base));
    });
  }
  auto fiber = read_vectors(doc, "$", "fiber_rays", m, true);
  auto extra = read_vectors(doc, "$", "extra_generators", d, false);
  auto more = read_vectors(doc, "$", "lattice_generators", d, false);
  extra.insert(extra.end(), more.begin(), more.end());
  std::vector<BigInt> multiples;
  if (auto it = doc.find("base_multiples"); it != doc.end()) {
    RatVec v = read_vector(*it, "$.base_multiples", n);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].get_den() != 1) fail("$.base_multiples[" + std::to_string(k) + "]", "expected an integer");
      multiples.push_back(v[k].get_num());
    }
  }
  return build([&] { return make_mfs(m, n, fiber, multiples, extra); });
}

json rat_json(const Rat& v) { return v.get_str(); }

json vectors_json(const std::vector<RatVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const auto& c : v) row.push_back(rat_json(c));
    out.push_back(std::move(row));
  }
  return out;
}

json cones_json(const Fan& fan) {
  json out = json::array();
  for (const auto& c : fan.cone_indices()) out.push_back(c);
  return out;
}

}  // namespace

std::vector<RatVec> lattice_generators(const Lattice& lattice) {
  std::vector<RatVec> out;
  for (std::size_t r = 0; r < lattice.dim(); ++r) {
    RatVec row = lattice.basis().row_vector(r);
    if (!to_integer(row)) out.push_back(std::move(row));
  }
  return out;
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("$: malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) fail("$", "expected an object");
  const json& kind = member(doc, "$", "kind");
  if (!kind.is_string()) fail("$.kind", "expected \"toric\" or \"mfs\"");
  if (kind == "toric") return parse_toric(doc);
  if (kind == "mfs") return parse_mfs(doc);
  fail("$.kind", "expected \"toric\" or \"mfs\", got " + kind.dump());
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize(const ToricVariety& x) {
  json doc;
  doc["kind"] = "toric";
  doc["dim"] = x.dim();
  doc["lattice_generators"] = vectors_json(lattice_generators(x.lattice()));
  doc["rays"] = vectors_json(x.fan().rays());
  doc["max_cones"] = cones_json(x.fan());
  return doc.dump(2) + "\n";
}

std::string serialize(const ToricMfs& mfs) {
  json doc;
  doc["kind"] = "mfs";
  doc["m"] = mfs.fiber_dim;
  doc["n"] = mfs.base_dim;
  doc["lattice_generators"] = vectors_json(lattice_generators(mfs.total.lattice()));
  doc["rays"] = vectors_json(mfs.total.fan().rays());
  doc["max_cones"] = cones_json(mfs.total.fan());
  if (!(mfs.base.lattice() == image_lattice(mfs.total.lattice(), mfs.fiber_dim)))
    doc["base_lattice_generators"] = vectors_json(lattice_generators(mfs.base.lattice()));
  return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    out << row.l << ',' << row.r.get_str() << ',' << row.mld_total.get_str() << ',' << row.mld_base.get_str() << ',';
    out << std::setprecision(10) << row.ratio_approx << ',';
    std::vector<SweepRow> prefix(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(i + 1));
    if (auto s = loglog_slope(prefix, prefix.front().l, row.l)) out << std::setprecision(6) << *s;
    out << '\n';
  }
}

}  // namespace toricmld
