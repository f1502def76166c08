#include "fracperim/io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fracperim {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
}

namespace {

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + where + ": " + e.what());
  }
}

std::vector<std::vector<double>> rows_of(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of arrays");
  try {
    return j.get<std::vector<std::vector<double>>>();
  } catch (const json::exception&) {
    throw InputError(std::string(what) + " must contain numbers only");
  }
}

}  // namespace

Space space_from_json(const json& j) {
  if (!j.is_object()) throw InputError("space file must hold a JSON object");
  if (!j.contains("dist") || !j["dist"].is_object()) throw InputError("space file lacks a \"dist\" object");
  const std::string label = j.value("label", std::string{});
  const json& dist = j["dist"];
  const std::string type = dist.value("type", std::string{});
  std::vector<double> mu;
  if (j.contains("mu")) {
    try {
      mu = j["mu"].get<std::vector<double>>();
    } catch (const json::exception&) {
      throw InputError("\"mu\" must be an array of numbers");
    }
  }
  try {
    if (type == "matrix") {
      if (!dist.contains("data")) throw InputError("matrix distance needs \"data\"");
      if (mu.empty()) throw InputError("matrix spaces need an explicit \"mu\" array");
      Space sp = build_from_matrix(rows_of(dist["data"], "dist.data"), mu, label);
      if (auto bad = sp.triangle_violation()) {
        const auto [x, y, z] = *bad;
        std::ostringstream os;
        os << "triangle inequality fails for points (" << x << "," << y << "," << z << "): d(" << x << ","
           << z << ")=" << sp.dist(x, z) << " > d(" << x << "," << y << ")+d(" << y << "," << z
           << ")=" << sp.dist(x, y) + sp.dist(y, z);
        throw InputError(os.str());
      }
      return sp;
    }
    if (type == "euclidean") {
      if (!dist.contains("coords")) throw InputError("euclidean distance needs \"coords\"");
      const auto coords = rows_of(dist["coords"], "dist.coords");
      const json w = j.value("weight", json{{"type", "constant"}});
      const std::string wtype = w.value("type", std::string{"constant"});
      const double delta = wtype == "power" ? w.value("delta", 0.0) : 0.0;
      if (wtype != "power" && wtype != "constant") throw InputError("unknown weight type: " + wtype);
      std::vector<double> volumes(coords.size(), 1.0);
      if (w.contains("cell_volume")) {
        const json& cv = w["cell_volume"];
        if (cv.is_number()) volumes.assign(coords.size(), cv.get<double>());
        else if (cv.is_array()) volumes = cv.get<std::vector<double>>();
        else throw InputError("cell_volume must be a number or an array");
      }
      Space sp = build_euclidean_cells(coords, delta, volumes, label);
      if (mu.empty()) return sp;
      // Explicit masses override the weight model.
      Space out(std::vector<double>(sp.distances().begin(), sp.distances().end()), mu, label);
      out.set_coords(coords);
      return out;
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("invalid space: ") + e.what());
  }
  throw InputError("unknown distance type: \"" + type + "\"");
}

Space load_space(const std::string& path) {
  try {
    return space_from_json(parse_json(read_text(path), path));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.find(path) != std::string::npos) throw;
    throw InputError(path + ": " + msg);
  }
}

json space_to_json(const Space& space) {
  json j;
  j["label"] = space.label();
  j["mu"] = std::vector<double>(space.masses().begin(), space.masses().end());
  const std::size_t n = space.size();
  if (!space.coords().empty()) {
    j["dist"] = {{"type", "euclidean"}, {"coords", space.coords()}};
  } else {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) rows[x][y] = space.dist(x, y);
    j["dist"] = {{"type", "matrix"}, {"data", rows}};
  }
  if (!space.notes().empty()) j["notes"] = space.notes();
  return j;
}

void save_space(const Space& space, const std::string& path) { write_text(path, space_to_json(space).dump(1) + "\n"); }

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == '\n' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_value(const std::string& tok) {
  if (tok == "-inf" || tok == "null") return kUnconstrained;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw InputError("not a number: " + tok);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("not a number: " + tok);
  }
}

}  // namespace

SetMask parse_mask(const std::string& spec, std::size_t n) {
  if (spec.empty() || spec == "none") return SetMask(n);
  if (spec == "all") return SetMask::full(n);
  std::vector<std::string> tokens;
  if (spec.front() == '@') {
    const std::string path = spec.substr(1);
    const std::string text = read_text(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      const json j = parse_json(text, path);
      if (!j.is_array()) throw InputError(path + ": mask file must hold an id array");
      SetMask m(n);
      for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || static_cast<std::size_t>(v.get<long long>()) >= n)
          throw InputError(path + ": mask ids must be integers in [0," + std::to_string(n) + ")");
        m.set(v.get<std::size_t>());
      }
      return m;
    }
    tokens = split_commas(text);
  } else {
    tokens = split_commas(spec);
  }
  SetMask m(n);
  for (const auto& t : tokens) {
    std::size_t used = 0;
    unsigned long long id = 0;
    try {
      id = std::stoull(t, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != t.size() || t.front() == '-') throw InputError("mask entry is not a point id: " + t);
    if (id >= n) throw InputError("mask id " + t + " out of range for " + std::to_string(n) + " points");
    m.set(static_cast<std::size_t>(id));
  }
  return m;
}

Field parse_field(const std::string& spec, std::size_t n) {
  Field u;
  if (!spec.empty() && spec.front() == '@') {
    const std::string path = spec.substr(1);
    const json j = parse_json(read_text(path), path);
    if (!j.is_array()) throw InputError(path + ": field file must hold an array");
    for (const auto& v : j) {
      if (v.is_null()) u.push_back(kUnconstrained);
      else if (v.is_string()) u.push_back(parse_value(v.get<std::string>()));
      else if (v.is_number()) u.push_back(v.get<double>());
      else throw InputError(path + ": field entries must be numbers, null or \"-inf\"");
    }
  } else {
    for (const auto& t : split_commas(spec)) u.push_back(parse_value(t));
  }
  if (u.size() != n)
    throw InputError("field has " + std::to_string(u.size()) + " entries, space has " + std::to_string(n));
  return u;
}

Field parse_field_or_constant(const std::string& spec, std::size_t n) {
  if (!spec.empty() && spec.front() != '@' && spec.find(',') == std::string::npos)
    return Field(n, parse_value(spec));
  return parse_field(spec, n);
}

json mask_to_json(const SetMask& m) { return m.ids(); }

json field_to_json(std::span<const double> u) {
  json out = json::array();
  for (double v : u) {
    if (std::isfinite(v)) out.push_back(v);
    else out.push_back(v < 0 ? "-inf" : "inf");
  }
  return out;
}

json to_json(const CutSolution& sol) {
  json j;
  if (!sol.field.empty()) j["field"] = field_to_json(sol.field);
  else j["mask"] = mask_to_json(sol.mask);
  j["energy"] = sol.energy;
  j["certificate"] = sol.certificate;
  j["certificate_error"] = sol.certificate_error();
  j["degenerate"] = sol.degenerate;
  j["tie_break"] = "inclusion-minimal minimiser";
  j["iterations"] = sol.iterations;
  if (!sol.levels.empty()) {
    json levels = json::array();
    for (const auto& l : sol.levels)
      levels.push_back({{"threshold", l.threshold}, {"weight", l.weight}, {"flow", l.flow}, {"members", l.members}});
    j["levels"] = levels;
  }
  if (sol.duality_gap != 0.0) j["duality_gap"] = sol.duality_gap;
  return j;
}

json to_json(const ScaleProfile& p) {
  return {{"center", p.center}, {"kind", p.kind}, {"radii", p.radii}, {"values", p.values}, {"flags", p.flags}};
}

std::uint64_t kernel_key(const Space& space, double s) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t n = space.size();
  mix(&n, sizeof n);
  mix(&s, sizeof s);
  mix(space.distances().data(), space.distances().size_bytes());
  mix(space.masses().data(), space.masses().size_bytes());
  return h;
}

namespace {
constexpr char kMagic[8] = {'F', 'P', 'K', 'E', 'R', 'N', '1', '\0'};
}

Kernel cached_kernel(std::shared_ptr<const Space> space, double s, const std::string& path) {
  if (path.empty()) return assemble(std::move(space), s);
  const std::uint64_t key = kernel_key(*space, s);
  const std::size_t n = space->size();
  {
    std::ifstream in(path, std::ios::binary);
    char magic[8];
    std::uint64_t stored_key = 0, stored_n = 0;
    if (in && in.read(magic, 8) && std::memcmp(magic, kMagic, 8) == 0 &&
        in.read(reinterpret_cast<char*>(&stored_key), sizeof stored_key) &&
        in.read(reinterpret_cast<char*>(&stored_n), sizeof stored_n) && stored_key == key && stored_n == n) {
      std::vector<double> upper(n * (n - 1) / 2);
      if (in.read(reinterpret_cast<char*>(upper.data()), static_cast<std::streamsize>(upper.size() * sizeof(double)))) {
        std::vector<double> w(n * n, 0.0);
        std::size_t i = 0;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = x + 1; y < n; ++y, ++i) w[x * n + y] = w[y * n + x] = upper[i];
        return Kernel(std::move(space), s, std::move(w));
      }
    }
  }
  Kernel k = assemble(space, s);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write kernel cache: " + path);
  out.write(kMagic, 8);
  const std::uint64_t n64 = n;
  out.write(reinterpret_cast<const char*>(&key), sizeof key);
  out.write(reinterpret_cast<const char*>(&n64), sizeof n64);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double v = k(x, y);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  return k;
}

}  // namespace fracperim
