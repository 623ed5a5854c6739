#include "udp6/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace udp6 {

using nlohmann::json;

json rational_to_json(const Rational& v) {
  if (is_integer(v) && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return to_string(v);
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

namespace {

Sign sign_from_json(const json& j) {
  if (!j.is_number_integer()) throw ParseError("sign must be +1 or -1, got " + j.dump());
  return sign_from_int(j.get<long>());
}

const std::array<const char*, 4> kA{"a1", "a2", "a3", "a4"};
const std::array<const char*, 4> kB{"b1", "b2", "b3", "b4"};
const std::array<const char*, 4> kSA{"sa1", "sa2", "sa3", "sa4"};
const std::array<const char*, 4> kSB{"sb1", "sb2", "sb3", "sb4"};

}  // namespace

json params_to_json(const Params& p) {
  json j;
  j["q"] = rational_to_json(p.q);
  for (std::size_t i = 0; i < 4; ++i) {
    j[kA[i]] = rational_to_json(p.a[i]);
    j[kB[i]] = rational_to_json(p.b[i]);
  }
  if (!p.all_signs_positive())
    for (std::size_t i = 0; i < 4; ++i) {
      j[kSA[i]] = to_int(p.a_sign[i]);
      j[kSB[i]] = to_int(p.b_sign[i]);
    }
  return j;
}

Params params_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("params must be a JSON object");
  std::set<std::string> known{"q"};
  for (std::size_t i = 0; i < 4; ++i) known.insert({kA[i], kB[i], kSA[i], kSB[i]});
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ParseError("unknown params key '" + key + "'");

  const auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw ParseError(std::string("missing params key '") + key + "'");
    return j.at(key);
  };

  Params p;
  p.q = rational_from_json(need("q"));
  for (std::size_t i = 0; i < 4; ++i) {
    p.a[i] = rational_from_json(need(kA[i]));
    p.b[i] = rational_from_json(need(kB[i]));
    if (j.contains(kSA[i])) p.a_sign[i] = sign_from_json(j.at(kSA[i]));
    if (j.contains(kSB[i])) p.b_sign[i] = sign_from_json(j.at(kSB[i]));
  }
  return p;
}

Params load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open params file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("params file '" + path + "': " + e.what());
  }
  return params_from_json(j);
}

// ---------------------------------------------------------------------------

json table_to_json(const SolutionTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows())
    rows.push_back({{"m", r.m},
                    {"sy", to_int(r.y.sign)},
                    {"Y", rational_to_json(r.y.amp)},
                    {"sz", to_int(r.z.sign)},
                    {"Z", rational_to_json(r.z.amp)}});
  return rows;
}

SolutionTable table_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("table rows must be a JSON array");
  std::vector<StatePair> rows;
  try {
    for (const auto& r : j)
      rows.push_back({r.at("m").get<Index>(),
                      {sign_from_json(r.at("sy")), rational_from_json(r.at("Y"))},
                      {sign_from_json(r.at("sz")), rational_from_json(r.at("Z"))}});
    return SolutionTable(std::move(rows));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed table row: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_tables_csv(std::ostream& out, const std::vector<SolutionTable>& tables) {
  const bool labelled = tables.size() > 1;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    if (labelled) out << "# branch " << k << '\n';
    out << "m,sy,Y,sz,Z\n";
    for (const auto& r : tables[k].rows())
      out << r.m << ',' << to_int(r.y.sign) << ',' << to_string(r.y.amp) << ',' << to_int(r.z.sign) << ','
          << to_string(r.z.amp) << '\n';
  }
}

void write_tables_json(std::ostream& out, const std::vector<SolutionTable>& tables, bool truncated) {
  json branches = json::array();
  for (std::size_t k = 0; k < tables.size(); ++k) branches.push_back({{"id", k}, {"rows", table_to_json(tables[k])}});
  out << json{{"branches", branches}, {"truncated", truncated}}.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

long parse_long(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
}

std::vector<SolutionTable> read_csv(std::istream& in) {
  std::vector<SolutionTable> tables;
  std::vector<StatePair> rows;
  const auto flush = [&]() {
    if (rows.empty()) return;
    try {
      tables.emplace_back(std::move(rows));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    rows.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') {
      flush();
      continue;
    }
    if (line.rfind("m,", 0) == 0) continue;
    const auto f = split_csv(line);
    if (f.size() != 5) throw ParseError("line " + std::to_string(line_no) + ": expected 5 fields m,sy,Y,sz,Z");
    rows.push_back({parse_long(f[0], line_no),
                    {sign_from_int(parse_long(f[1], line_no)), parse_rational(f[2])},
                    {sign_from_int(parse_long(f[3], line_no)), parse_rational(f[4])}});
  }
  flush();
  return tables;
}

}  // namespace

std::vector<SolutionTable> read_tables(std::istream& in) {
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::exception& e) {
      throw ParseError(std::string("table JSON: ") + e.what());
    }
    if (!j.contains("branches") || !j.at("branches").is_array()) throw ParseError("table JSON lacks 'branches'");
    std::vector<SolutionTable> tables;
    for (const auto& b : j.at("branches")) {
      if (!b.contains("rows")) throw ParseError("branch without 'rows'");
      tables.push_back(table_from_json(b.at("rows")));
    }
    return tables;
  }
  std::istringstream ss(content);
  return read_csv(ss);
}

std::vector<SolutionTable> load_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file '" + path + "'");
  return read_tables(in);
}

json solution_set_to_json(const SolutionSet& s) {
  json intervals = json::array();
  for (const auto& i : s.intervals())
    intervals.push_back({i.lo ? rational_to_json(*i.lo) : json(nullptr), i.hi ? rational_to_json(*i.hi) : json(nullptr)});
  return intervals;
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw Error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace udp6
